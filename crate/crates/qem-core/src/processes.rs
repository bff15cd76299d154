//! The two parametric processes studied by this crate: the perturbed coin
//! and the thermalizing qubit cloud, plus the closed forms used to
//! cross-check the generic pipeline.
//!
//! The perturbed coin is a two-state binary Markov process: a coin in state
//! `k` flips with probability `q_k`, and the emitted symbol equals the new
//! state. The qubit cloud reduces to the same machine with rates
//!
//! ```text
//! q0(λ) = g·λ/2 + (1−g)·(λ/2)·sin²κ
//! q1(λ) = (1−g)·(λ/2)·sin²κ + g·(1−λ/2)
//! ```
//!
//! where λ is the thermalization parameter, κ the interaction strength and
//! g the swap probability. At κ = π/2 the controlled interaction is a CNOT
//! (up to phase) and the transition probabilities and stationary weights
//! have simple closed forms, exposed here as the `cnot_cloud_*` functions.

use std::f64::consts::FRAC_PI_2;

use crate::error::{Error, Result};
use crate::machine::{Alphabet, EpsilonMachine};

/// Flip probabilities of the perturbed coin.
///
/// Both rates live in `[0, 1]`; the boundary values 0 and 1 are accepted but
/// flagged degenerate, since the generic two-causal-state analysis assumes
/// `0 < q_k < 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoinParams {
    q0: f64,
    q1: f64,
}

impl CoinParams {
    pub fn new(q0: f64, q1: f64) -> Result<Self> {
        for (name, v) in [("q0", q0), ("q1", q1)] {
            if !(0.0..=1.0).contains(&v) || !v.is_finite() {
                return Err(Error::OutOfRange(format!("{name} = {v} outside [0, 1]")));
            }
        }
        Ok(Self { q0, q1 })
    }

    pub fn q0(&self) -> f64 {
        self.q0
    }

    pub fn q1(&self) -> f64 {
        self.q1
    }

    /// True when either rate sits on the boundary of `(0, 1)`.
    pub fn is_degenerate(&self) -> bool {
        [self.q0, self.q1].iter().any(|&q| q == 0.0 || q == 1.0)
    }
}

/// Parameters of the thermalizing qubit cloud.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CloudParams {
    lambda: f64,
    kappa: f64,
    g: f64,
}

impl CloudParams {
    pub fn new(lambda: f64, kappa: f64, g: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&lambda) || !lambda.is_finite() {
            return Err(Error::OutOfRange(format!("lambda = {lambda} outside [0, 1]")));
        }
        if !(0.0..=FRAC_PI_2).contains(&kappa) || !kappa.is_finite() {
            return Err(Error::OutOfRange(format!("kappa = {kappa} outside [0, π/2]")));
        }
        if !(0.0..=1.0).contains(&g) || !g.is_finite() {
            return Err(Error::OutOfRange(format!("g = {g} outside [0, 1]")));
        }
        Ok(Self { lambda, kappa, g })
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn kappa(&self) -> f64 {
        self.kappa
    }

    pub fn g(&self) -> f64 {
        self.g
    }
}

/// Two-state, binary-alphabet, unifilar machine of the perturbed coin:
/// emitting `r` always moves to state `k = r`.
pub fn perturbed_coin_machine(params: &CoinParams) -> EpsilonMachine {
    let (q0, q1) = (params.q0, params.q1);
    EpsilonMachine::from_triples(
        Alphabet::binary(),
        2,
        &[
            (0, 0, 0, 1.0 - q0),
            (0, 1, 1, q0),
            (1, 0, 0, q1),
            (1, 1, 1, 1.0 - q1),
        ],
    )
    .expect("coin rows sum to one")
}

/// Closed-form statistical complexity of the two-state coin:
/// `H2(q1/(q0+q1))` in bits.
///
/// Evaluates the two-state formula as written, so it reports 1 bit at
/// `q0 = q1 = 0.5` where the merged pipeline reports 0; callers comparing
/// against the pipeline must exclude that point.
pub fn coin_complexity_closed_form(params: &CoinParams) -> Result<f64> {
    let sum = params.q0 + params.q1;
    if sum == 0.0 {
        return Err(Error::Degenerate("q0 + q1 = 0".into()));
    }
    let p0 = params.q1 / sum;
    let p1 = params.q0 / sum;
    let term = |p: f64| if p > 0.0 { -p * p.log2() } else { 0.0 };
    Ok(term(p0) + term(p1))
}

/// Effective flip rates `(q0, q1)` of the qubit cloud.
pub fn cloud_rates(params: &CloudParams) -> (f64, f64) {
    let sin2 = params.kappa.sin().powi(2);
    let half_lambda = params.lambda / 2.0;
    let q0 = params.g * half_lambda + (1.0 - params.g) * half_lambda * sin2;
    let q1 = (1.0 - params.g) * half_lambda * sin2 + params.g * (1.0 - half_lambda);
    (q0, q1)
}

/// The ε-machine of the qubit cloud: a perturbed coin with λ-dependent rates.
pub fn cloud_machine(params: &CloudParams) -> EpsilonMachine {
    let (q0, q1) = cloud_rates(params);
    perturbed_coin_machine(&CoinParams::new(q0, q1).expect("cloud rates stay in [0, 1]"))
}

/// State-to-state transition matrix of the cloud at κ = π/2 (CNOT regime),
/// indexed `[from][to]`.
pub fn cnot_cloud_transitions(lambda: f64, g: f64) -> Result<[[f64; 2]; 2]> {
    check_unit("lambda", lambda)?;
    check_unit("g", g)?;
    let half = lambda / 2.0;
    Ok([
        [1.0 - half, half],
        [g * (1.0 - half) + (1.0 - g) * half, g * half + (1.0 - g) * (1.0 - half)],
    ])
}

/// Closed-form stationary weights of the cloud at κ = π/2:
/// `p0 = (−2g(λ−1)+λ) / (2(g+λ−gλ))`, `p1 = λ / (2(g+λ−gλ))`.
pub fn cnot_cloud_stationary(lambda: f64, g: f64) -> Result<(f64, f64)> {
    check_unit("lambda", lambda)?;
    check_unit("g", g)?;
    let denom = g + lambda - g * lambda;
    if denom == 0.0 {
        return Err(Error::Degenerate("g + λ − gλ = 0".into()));
    }
    let p0 = (-2.0 * g * (lambda - 1.0) + lambda) / (2.0 * denom);
    let p1 = lambda / (2.0 * denom);
    Ok((p0, p1))
}

fn check_unit(name: &str, v: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&v) || !v.is_finite() {
        return Err(Error::OutOfRange(format!("{name} = {v} outside [0, 1]")));
    }
    Ok(())
}
