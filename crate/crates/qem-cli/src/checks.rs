//! Consistency check between the density-matrix circuit simulation and the
//! closed-form flip rates, including the CNOT-regime transition forms.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, FRAC_PI_8};

use qem_core::{
    cloud_rates, cnot_cloud_transitions, step_flip_probability, CloudParams, ObserverStep,
};

use crate::error::CliError;

/// Outcome of an oracle check run.
#[derive(Debug, Clone, Copy)]
pub struct OracleReport {
    pub rate_points: usize,
    pub max_rate_dev: f64,
    pub cnot_points: usize,
    pub max_cnot_dev: f64,
    pub tol: f64,
}

impl OracleReport {
    pub fn pass(&self) -> bool {
        self.max_rate_dev <= self.tol && self.max_cnot_dev <= self.tol
    }

    pub fn render(&self) -> String {
        format!(
            "rates: max |simulated - closed form| = {:e} over {} points\n\
             cnot transitions: max deviation = {:e} over {} points\n\
             tolerance {:e}: {}\n",
            self.max_rate_dev,
            self.rate_points,
            self.max_cnot_dev,
            self.cnot_points,
            self.tol,
            if self.pass() { "PASS" } else { "FAIL" }
        )
    }
}

/// Runs the simulation against the closed-form rates over the full
/// (λ, κ, g, k) grid and against the CNOT-regime transition forms over a
/// denser (λ, g) grid.
///
/// `perturb_q0` biases the closed-form q0 and exists to exercise the
/// comparator from tests; it is zero in normal operation.
pub fn oracle_check(tol: f64, perturb_q0: f64) -> Result<OracleReport, CliError> {
    if !tol.is_finite() || tol <= 0.0 {
        return Err(CliError::Usage(format!("tol = {tol} must be positive")));
    }

    let lambdas: Vec<f64> = (0..=10).map(|i| i as f64 / 10.0).collect();
    let kappas = [0.0, FRAC_PI_8, FRAC_PI_4, 3.0 * FRAC_PI_8, FRAC_PI_2];
    let gs = [0.0, 0.25, 0.5, 0.75, 1.0];

    let mut max_rate_dev = 0.0f64;
    let mut rate_points = 0usize;
    for &lambda in &lambdas {
        for &kappa in &kappas {
            for &g in &gs {
                let params = CloudParams::new(lambda, kappa, g)
                    .map_err(|e| CliError::Usage(e.to_string()))?;
                let (q0, q1) = cloud_rates(&params);
                for (k, expected) in [(0u8, q0 + perturb_q0), (1u8, q1)] {
                    let step = ObserverStep::new(k, params)
                        .map_err(|e| CliError::Usage(e.to_string()))?;
                    let simulated = step_flip_probability(&step)
                        .map_err(|e| CliError::Check(format!("simulation failed: {e}")))?;
                    max_rate_dev = max_rate_dev.max((simulated - expected).abs());
                    rate_points += 1;
                }
            }
        }
    }

    // CNOT regime: the simulated flips determine all four state-to-state
    // probabilities, compared against the closed transition forms.
    let mut max_cnot_dev = 0.0f64;
    let mut cnot_points = 0usize;
    for i in 0..=20 {
        for j in 0..=10 {
            let lambda = i as f64 / 20.0;
            let g = j as f64 / 10.0;
            let params = CloudParams::new(lambda, FRAC_PI_2, g)
                .map_err(|e| CliError::Usage(e.to_string()))?;
            let q0 = step_flip_probability(&ObserverStep::new(0, params).unwrap())
                .map_err(|e| CliError::Check(format!("simulation failed: {e}")))?;
            let q1 = step_flip_probability(&ObserverStep::new(1, params).unwrap())
                .map_err(|e| CliError::Check(format!("simulation failed: {e}")))?;
            let simulated = [[1.0 - q0, q0], [q1, 1.0 - q1]];
            let closed = cnot_cloud_transitions(lambda, g)
                .map_err(|e| CliError::Usage(e.to_string()))?;
            for (sim_row, closed_row) in simulated.iter().zip(&closed) {
                for (sim, reference) in sim_row.iter().zip(closed_row) {
                    max_cnot_dev = max_cnot_dev.max((sim - reference).abs());
                    cnot_points += 1;
                }
            }
        }
    }

    Ok(OracleReport {
        rate_points,
        max_rate_dev,
        cnot_points,
        max_cnot_dev,
        tol,
    })
}
