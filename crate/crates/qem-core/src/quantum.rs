//! Quantum causal states and the quantum ε-machine complexity `C_q`.
//!
//! Each causal state `S_j` maps to a unit vector with amplitude
//! `sqrt(T[j][r][k])` on the basis label `(r, k)`. The amplitudes are real
//! and nonnegative by construction, so everything here runs on real
//! symmetric algebra. `C_q` is the von Neumann entropy (base 2) of
//! `ρ = Σ_i p_i |S_i⟩⟨S_i|` with `p` the stationary distribution of the
//! merged machine.
//!
//! Two interchangeable routes compute the entropy: the `|Σ|N`-dimensional
//! density operator itself, and the N×N weighted Gram matrix
//! `M_ij = sqrt(p_i p_j) ⟨S_i|S_j⟩`, which shares the nonzero spectrum of ρ
//! (`ρ = AAᵀ`, `M = AᵀA` for `A` the column matrix of weighted states).

use crate::error::{Error, Result};
use crate::linalg::{jacobi_eigen, SymMatrix};
use crate::machine::{
    merge_equivalent_states, stationary, EpsilonMachine, StationaryDistribution,
};

/// Quantum causal states must be normalized within this tolerance.
pub const STATE_NORM_TOL: f64 = 1e-12;
/// Trace-one and positivity violations beyond this are rejected.
pub const DENSITY_TOL: f64 = 1e-9;

/// Amplitude vector of one quantum causal state, indexed `(r, k) -> r·N + k`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantumCausalState {
    amplitudes: Vec<f64>,
}

impl QuantumCausalState {
    pub fn amplitudes(&self) -> &[f64] {
        &self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.iter().map(|a| a * a).sum::<f64>().sqrt()
    }

    /// Inner product with another state of the same dimension.
    pub fn inner(&self, other: &Self) -> Result<f64> {
        if self.amplitudes.len() != other.amplitudes.len() {
            return Err(Error::DimensionMismatch(format!(
                "amplitude lengths {} vs {}",
                self.amplitudes.len(),
                other.amplitudes.len()
            )));
        }
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a * b)
            .sum())
    }
}

/// Pairwise overlaps `G_ij = ⟨S_i|S_j⟩` of the quantum causal states.
#[derive(Debug, Clone, PartialEq)]
pub struct GramMatrix {
    n: usize,
    entries: Vec<f64>,
}

impl GramMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.n + j]
    }
}

/// A real symmetric trace-one operator: either the full density operator of
/// dimension `|Σ|N` or its N×N weighted-Gram form.
#[derive(Debug, Clone, PartialEq)]
pub struct MixedStateOperator {
    matrix: SymMatrix,
}

impl MixedStateOperator {
    /// `M_ij = sqrt(p_i p_j) G_ij`.
    pub fn weighted_gram(gram: &GramMatrix, dist: &StationaryDistribution) -> Result<Self> {
        if gram.n() != dist.len() {
            return Err(Error::DimensionMismatch(format!(
                "gram is {}×{} but distribution has {} entries",
                gram.n(),
                gram.n(),
                dist.len()
            )));
        }
        let p = dist.weights();
        let matrix = SymMatrix::from_fn(gram.n(), |i, j| (p[i] * p[j]).sqrt() * gram.get(i, j));
        Ok(Self { matrix })
    }

    /// `ρ = Σ_i p_i |S_i⟩⟨S_i|` in the full `(r, k)` basis.
    pub fn full_density(
        states: &[QuantumCausalState],
        dist: &StationaryDistribution,
    ) -> Result<Self> {
        if states.len() != dist.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} states but {} weights",
                states.len(),
                dist.len()
            )));
        }
        let dim = states
            .first()
            .map(|s| s.amplitudes().len())
            .ok_or_else(|| Error::DimensionMismatch("no states".into()))?;
        if states.iter().any(|s| s.amplitudes().len() != dim) {
            return Err(Error::DimensionMismatch("unequal amplitude lengths".into()));
        }
        let p = dist.weights();
        let matrix = SymMatrix::from_fn(dim, |a, b| {
            states
                .iter()
                .zip(p)
                .map(|(s, &w)| w * s.amplitudes()[a] * s.amplitudes()[b])
                .sum()
        });
        Ok(Self { matrix })
    }

    pub fn matrix(&self) -> &SymMatrix {
        &self.matrix
    }

    pub fn trace(&self) -> f64 {
        self.matrix.trace()
    }
}

/// Builds the quantum causal states of a machine: unit vectors with
/// amplitude `sqrt(T[j][r][k])` at index `(r, k)`.
pub fn quantum_causal_states(machine: &EpsilonMachine) -> Vec<QuantumCausalState> {
    let n = machine.num_states();
    let a = machine.alphabet().len();
    (0..n)
        .map(|j| {
            let mut amplitudes = vec![0.0; a * n];
            for r in 0..a {
                for k in 0..n {
                    amplitudes[r * n + k] = machine.prob(j, r, k).sqrt();
                }
            }
            QuantumCausalState { amplitudes }
        })
        .collect()
}

/// Gram matrix of pairwise overlaps. All states must share one dimension.
pub fn gram(states: &[QuantumCausalState]) -> Result<GramMatrix> {
    let n = states.len();
    let mut entries = vec![0.0; n * n];
    for i in 0..n {
        for j in i..n {
            let g = states[i].inner(&states[j])?;
            entries[i * n + j] = g;
            entries[j * n + i] = g;
        }
    }
    Ok(GramMatrix { n, entries })
}

/// Von Neumann entropy `−Σ λ_i log2 λ_i` of a trace-one PSD operator.
///
/// Rejects operators whose trace deviates from one or whose spectrum dips
/// below `−1e-9`; smaller negative eigenvalues are clamped to zero.
pub fn von_neumann_entropy(op: &MixedStateOperator) -> Result<f64> {
    let trace = op.trace();
    if (trace - 1.0).abs() > DENSITY_TOL {
        return Err(Error::NotDensityOperator(format!("trace = {trace}")));
    }
    let eigenvalues = jacobi_eigen(op.matrix())?.values;
    if let Some(&worst) = eigenvalues.iter().find(|&&l| l < -DENSITY_TOL) {
        return Err(Error::NotDensityOperator(format!(
            "eigenvalue {worst} below -{DENSITY_TOL}"
        )));
    }
    Ok(eigenvalues
        .iter()
        .map(|&l| l.clamp(0.0, 1.0))
        .filter(|&l| l > 0.0)
        .fold(0.0, |acc, l| acc - l * l.log2()))
}

/// Quantum ε-machine complexity `C_q` in bits, via the weighted-Gram route.
///
/// Equivalent states are merged first so that analytically identical rows
/// contribute a single state rather than a duplicated rank-one direction.
pub fn quantum_complexity(machine: &EpsilonMachine, tol: f64) -> Result<f64> {
    let merged = merge_equivalent_states(machine, tol);
    let dist = stationary(&merged)?;
    let states = quantum_causal_states(&merged);
    let op = MixedStateOperator::weighted_gram(&gram(&states)?, &dist)?;
    von_neumann_entropy(&op)
}

/// `C_q` via the full `|Σ|N`-dimensional density operator; agrees with
/// [`quantum_complexity`] and serves as its cross-check.
pub fn quantum_complexity_via_density(machine: &EpsilonMachine, tol: f64) -> Result<f64> {
    let merged = merge_equivalent_states(machine, tol);
    let dist = stationary(&merged)?;
    let states = quantum_causal_states(&merged);
    let op = MixedStateOperator::full_density(&states, &dist)?;
    von_neumann_entropy(&op)
}
