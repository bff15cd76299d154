//! Locates the λ maximizing `C_q(λ)` for fixed (κ, g): a coarse grid pass
//! followed by golden-section refinement, assuming the unimodality observed
//! across the parameter box. If refinement fails to beat the grid (the
//! unimodality assumption broke), the dense-grid argmax wins.

use qem_core::{cloud_machine, quantum_complexity, CloudParams, Error};

use crate::error::CliError;

const COARSE_STEP: f64 = 0.01;
const FLAT_THRESHOLD: f64 = 1e-12;
const GOLDEN: f64 = 0.618_033_988_749_894_9;

#[derive(Debug, Clone, Copy)]
pub struct Peak {
    pub lambda: f64,
    pub c_q: f64,
}

/// `C_q(λ)` for the cloud at fixed (κ, g); `None` where the machine has no
/// unique stationary distribution (only the g = 0, κ = 0 degeneracy).
fn c_q_at(lambda: f64, kappa: f64, g: f64, merge_tol: f64) -> Result<Option<f64>, CliError> {
    let params = CloudParams::new(lambda, kappa, g)
        .map_err(|e| CliError::Usage(e.to_string()))?;
    match quantum_complexity(&cloud_machine(&params), merge_tol) {
        Ok(c) => Ok(Some(c)),
        Err(Error::NonUniqueStationary(_)) => Ok(None),
        Err(e) => Err(CliError::Check(format!("C_q evaluation failed: {e}"))),
    }
}

/// Finds `λ* ∈ (0, 1)` maximizing `C_q`, to a bracket width of `tol`.
///
/// Fails with a flat-function check error when `C_q` never rises above
/// 1e-12 on the coarse grid (no dynamics to peak, e.g. g = 0 and κ = 0).
pub fn find_peak(g: f64, kappa: f64, tol: f64, merge_tol: f64) -> Result<Peak, CliError> {
    if !(0.0..=1.0).contains(&g) {
        return Err(CliError::Usage(format!("g = {g} outside [0, 1]")));
    }
    if !(0.0..=std::f64::consts::FRAC_PI_2).contains(&kappa) {
        return Err(CliError::Usage(format!("kappa = {kappa} outside [0, π/2]")));
    }
    if !tol.is_finite() || tol <= 0.0 {
        return Err(CliError::Usage(format!("tol = {tol} must be positive")));
    }

    let mut coarse: Vec<(f64, f64)> = Vec::with_capacity(99);
    for i in 1..100 {
        let lambda = i as f64 * COARSE_STEP;
        if let Some(c) = c_q_at(lambda, kappa, g, merge_tol)? {
            coarse.push((lambda, c));
        }
    }
    let best = coarse
        .iter()
        .copied()
        .max_by(|a, b| a.1.partial_cmp(&b.1).unwrap());
    let (coarse_lambda, coarse_value) = match best {
        Some((l, c)) if c > FLAT_THRESHOLD => (l, c),
        _ => {
            return Err(CliError::Check(format!(
                "flat function: C_q <= {FLAT_THRESHOLD} across (0, 1) for g = {g}, kappa = {kappa}"
            )))
        }
    };

    // Golden-section maximization on the bracket around the coarse argmax.
    let eval = |lambda: f64| -> Result<f64, CliError> {
        Ok(c_q_at(lambda, kappa, g, merge_tol)?.unwrap_or(f64::NEG_INFINITY))
    };
    let mut lo = (coarse_lambda - COARSE_STEP).max(1e-6);
    let mut hi = (coarse_lambda + COARSE_STEP).min(1.0 - 1e-6);
    let mut c = hi - GOLDEN * (hi - lo);
    let mut d = lo + GOLDEN * (hi - lo);
    let mut fc = eval(c)?;
    let mut fd = eval(d)?;
    while hi - lo > tol {
        if fc > fd {
            hi = d;
            d = c;
            fd = fc;
            c = hi - GOLDEN * (hi - lo);
            fc = eval(c)?;
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + GOLDEN * (hi - lo);
            fd = eval(d)?;
        }
    }
    let refined_lambda = 0.5 * (lo + hi);
    let refined_value = eval(refined_lambda)?;

    if refined_value >= coarse_value {
        Ok(Peak { lambda: refined_lambda, c_q: refined_value })
    } else {
        // Refinement lost to the dense grid: non-unimodal bracket.
        Ok(Peak { lambda: coarse_lambda, c_q: coarse_value })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_2;

    #[test]
    fn cnot_half_swap_peak_is_near_one_fifth() {
        let peak = find_peak(0.5, FRAC_PI_2, 1e-6, 1e-9).unwrap();
        assert!((0.1..=0.35).contains(&peak.lambda), "λ* = {}", peak.lambda);
        assert!((peak.lambda - 0.2).abs() < 5e-3);
        assert!((peak.c_q - 0.18729859856877245).abs() < 1e-6);
    }

    #[test]
    fn returned_point_is_a_local_max() {
        for (g, kappa) in [(0.25, FRAC_PI_2), (0.75, FRAC_PI_2), (0.5, 1.0)] {
            let peak = find_peak(g, kappa, 1e-6, 1e-9).unwrap();
            for offset in [-0.01, 0.01] {
                let lambda = (peak.lambda + offset).clamp(1e-6, 1.0 - 1e-6);
                let c = c_q_at(lambda, kappa, g, 1e-9).unwrap().unwrap();
                assert!(peak.c_q >= c - 1e-12);
            }
        }
    }

    #[test]
    fn degenerate_process_reports_flat_function() {
        let err = find_peak(0.0, 0.0, 1e-6, 1e-9).unwrap_err();
        assert!(matches!(err, CliError::Check(_)));
        assert_eq!(err.exit_code(), 1);
    }

    #[test]
    fn bad_parameters_are_usage_errors() {
        assert!(matches!(find_peak(1.5, 0.0, 1e-6, 1e-9), Err(CliError::Usage(_))));
        assert!(matches!(find_peak(0.5, 3.0, 1e-6, 1e-9), Err(CliError::Usage(_))));
        assert!(matches!(find_peak(0.5, 1.0, 0.0, 1e-9), Err(CliError::Usage(_))));
    }
}
