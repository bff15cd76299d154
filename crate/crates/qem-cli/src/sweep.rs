//! Parameter sweeps over the coin and cloud families, rendered as CSV.
//!
//! Rows are emitted in deterministic grid order (lexicographic in the column
//! order) and every value is printed with 12 significant digits, so repeated
//! runs with identical flags are byte-identical.

use qem_core::{
    cloud_machine, cloud_rates, perturbed_coin_machine, quantum_complexity,
    statistical_complexity, stationary, CloudParams, CoinParams,
};

use crate::error::CliError;
use crate::format::sig12;

/// Guard asserted on every emitted row.
const QUANTUM_BOUND_SLACK: f64 = 1e-9;

/// Sweep request: either the coin family over q or the cloud family over
/// (λ, κ, g).
#[derive(Debug, Clone)]
pub enum SweepSpec {
    Coin(CoinSweepSpec),
    Cloud(CloudSweepSpec),
}

#[derive(Debug, Clone)]
pub struct CoinSweepSpec {
    pub q_min: f64,
    pub q_max: f64,
    pub steps: usize,
    pub merge_tol: f64,
}

#[derive(Debug, Clone)]
pub struct CloudSweepSpec {
    pub lambda_min: f64,
    pub lambda_max: f64,
    pub lambda_steps: usize,
    pub kappas: Vec<f64>,
    pub gs: Vec<f64>,
    pub merge_tol: f64,
}

#[derive(Debug, Clone, Copy)]
pub struct CoinRow {
    pub q: f64,
    pub c_mu: f64,
    pub c_q: f64,
}

#[derive(Debug, Clone, Copy)]
pub struct CloudRow {
    pub lambda: f64,
    pub kappa: f64,
    pub g: f64,
    pub q0: f64,
    pub q1: f64,
    pub p0: f64,
    pub p1: f64,
    pub c_mu: f64,
    pub c_q: f64,
}

/// Renders a sweep request as its CSV document.
pub fn sweep_csv(spec: &SweepSpec) -> Result<String, CliError> {
    match spec {
        SweepSpec::Coin(spec) => Ok(coin_csv(&coin_sweep(spec)?)),
        SweepSpec::Cloud(spec) => Ok(cloud_csv(&cloud_sweep(spec)?)),
    }
}

/// Uniform grid of `steps ≥ 2` points over `[min, max]`, endpoints exact.
pub fn grid(min: f64, max: f64, steps: usize) -> Vec<f64> {
    let mut points: Vec<f64> = (0..steps)
        .map(|i| min + (max - min) * i as f64 / (steps - 1) as f64)
        .collect();
    points[0] = min;
    points[steps - 1] = max;
    points
}

fn check_range(name: &str, min: f64, max: f64, lo: f64, hi: f64) -> Result<(), CliError> {
    if !min.is_finite() || !max.is_finite() || min < lo || max > hi || min > max {
        return Err(CliError::Usage(format!(
            "{name} range [{min}, {max}] invalid: need {lo} <= min <= max <= {hi}"
        )));
    }
    Ok(())
}

fn check_steps(name: &str, steps: usize) -> Result<(), CliError> {
    if steps < 2 {
        return Err(CliError::Usage(format!("{name} = {steps}, need at least 2")));
    }
    Ok(())
}

pub fn coin_sweep(spec: &CoinSweepSpec) -> Result<Vec<CoinRow>, CliError> {
    check_range("q", spec.q_min, spec.q_max, 0.0, 1.0)?;
    check_steps("steps", spec.steps)?;
    grid(spec.q_min, spec.q_max, spec.steps)
        .into_iter()
        .map(|q| {
            let params = CoinParams::new(q, q)
                .map_err(|e| CliError::Usage(format!("q = {q}: {e}")))?;
            let machine = perturbed_coin_machine(&params);
            let c_mu = statistical_complexity(&machine, spec.merge_tol)
                .map_err(|e| CliError::Usage(format!("grid point q = {q} is degenerate: {e}")))?;
            let c_q = quantum_complexity(&machine, spec.merge_tol)
                .map_err(|e| CliError::Usage(format!("grid point q = {q} is degenerate: {e}")))?;
            assert!(c_q <= c_mu + QUANTUM_BOUND_SLACK);
            Ok(CoinRow { q, c_mu, c_q })
        })
        .collect()
}

pub fn coin_csv(rows: &[CoinRow]) -> String {
    let mut out = String::from("q,c_mu,c_q\n");
    for row in rows {
        out.push_str(&format!(
            "{},{},{}\n",
            sig12(row.q),
            sig12(row.c_mu),
            sig12(row.c_q)
        ));
    }
    out
}

pub fn cloud_sweep(spec: &CloudSweepSpec) -> Result<Vec<CloudRow>, CliError> {
    check_range("lambda", spec.lambda_min, spec.lambda_max, 0.0, 1.0)?;
    check_steps("lambda-steps", spec.lambda_steps)?;
    if spec.kappas.is_empty() || spec.gs.is_empty() {
        return Err(CliError::Usage("kappa and g lists must be non-empty".into()));
    }
    for &kappa in &spec.kappas {
        if !(0.0..=std::f64::consts::FRAC_PI_2).contains(&kappa) {
            return Err(CliError::Usage(format!("kappa = {kappa} outside [0, π/2]")));
        }
    }
    for &g in &spec.gs {
        if !(0.0..=1.0).contains(&g) {
            return Err(CliError::Usage(format!("g = {g} outside [0, 1]")));
        }
    }

    let mut rows = Vec::with_capacity(spec.lambda_steps * spec.kappas.len() * spec.gs.len());
    for lambda in grid(spec.lambda_min, spec.lambda_max, spec.lambda_steps) {
        for &kappa in &spec.kappas {
            for &g in &spec.gs {
                rows.push(cloud_row(lambda, kappa, g, spec.merge_tol)?);
            }
        }
    }
    Ok(rows)
}

fn cloud_row(lambda: f64, kappa: f64, g: f64, merge_tol: f64) -> Result<CloudRow, CliError> {
    let point = format!("(lambda={lambda}, kappa={kappa}, g={g})");
    let params = CloudParams::new(lambda, kappa, g)
        .map_err(|e| CliError::Usage(format!("{point}: {e}")))?;
    let (q0, q1) = cloud_rates(&params);
    let machine = cloud_machine(&params);
    // Pre-merge stationary weights, so λ = 1 reports (1/2, 1/2) rather than
    // the single merged state.
    let dist = stationary(&machine)
        .map_err(|e| CliError::Usage(format!("grid point {point} is degenerate: {e}")))?;
    let c_mu = statistical_complexity(&machine, merge_tol)
        .map_err(|e| CliError::Usage(format!("grid point {point} is degenerate: {e}")))?;
    let c_q = quantum_complexity(&machine, merge_tol)
        .map_err(|e| CliError::Usage(format!("grid point {point} is degenerate: {e}")))?;
    assert!(c_q <= c_mu + QUANTUM_BOUND_SLACK);
    Ok(CloudRow {
        lambda,
        kappa,
        g,
        q0,
        q1,
        p0: dist.weights()[0],
        p1: dist.weights()[1],
        c_mu,
        c_q,
    })
}

pub fn cloud_csv(rows: &[CloudRow]) -> String {
    let mut out = String::from("lambda,kappa,g,q0,q1,p0,p1,c_mu,c_q\n");
    for row in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{}\n",
            sig12(row.lambda),
            sig12(row.kappa),
            sig12(row.g),
            sig12(row.q0),
            sig12(row.q1),
            sig12(row.p0),
            sig12(row.p1),
            sig12(row.c_mu),
            sig12(row.c_q)
        ));
    }
    out
}
