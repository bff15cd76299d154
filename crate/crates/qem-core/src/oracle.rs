//! Independent density-matrix simulation of the single-step measurement
//! circuit behind the qubit cloud, used as ground truth for the closed-form
//! rates in [`crate::processes::cloud_rates`].
//!
//! One step: the observer qubit starts in `|k⟩⟨k|` (the last outcome), the
//! fresh environment qubit in `ρ_e(λ) = diag(1−λ/2, λ/2)`. The pair passes
//! through the controlled unitary `C_Xκ = 1 ⊗ |0⟩_e⟨0|_e + Xκ ⊗ |1⟩_e⟨1|_e`
//! with `Xκ = cos κ·I + i sin κ·X`, then the probabilistic swap channel
//! `ρ → g·U_S ρ U_S† + (1−g)·ρ`, and finally the environment is traced out.
//! The Z-basis probability of reading `1−k` is the flip rate `q_k`.
//!
//! Tensor index convention throughout: first factor = observer qubit,
//! second factor = environment qubit, i.e. basis index `2·obs + env`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::processes::CloudParams;

/// Unitarity and Hermiticity are enforced within this bound.
pub const UNITARY_TOL: f64 = 1e-12;
/// Density-matrix validation bound (Hermiticity, trace, diagonal).
pub const DENSITY_CHECK_TOL: f64 = 1e-10;

/// Small dense complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self { dim, data: vec![Complex64::new(0.0, 0.0); dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.set(i, i, Complex64::new(1.0, 0.0));
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Complex64) {
        self.data[i * self.dim + j] = v;
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "matrix product dimension mismatch");
        let d = self.dim;
        let mut out = Self::zeros(d);
        for i in 0..d {
            for k in 0..d {
                let a = self.get(i, k);
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..d {
                    let v = out.get(i, j) + a * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let d = self.dim;
        let mut out = Self::zeros(d);
        for i in 0..d {
            for j in 0..d {
                out.set(i, j, self.get(j, i).conj());
            }
        }
        out
    }

    /// Kronecker product; `self` is the first (observer) factor.
    pub fn kron(&self, other: &Self) -> Self {
        let (da, db) = (self.dim, other.dim);
        let mut out = Self::zeros(da * db);
        for i1 in 0..da {
            for j1 in 0..da {
                let a = self.get(i1, j1);
                for i2 in 0..db {
                    for j2 in 0..db {
                        out.set(i1 * db + i2, j1 * db + j2, a * other.get(i2, j2));
                    }
                }
            }
        }
        out
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    /// Conjugation `U self U†`.
    pub fn conjugate_by(&self, u: &Self) -> Self {
        u.mul(self).mul(&u.adjoint())
    }

    pub fn scale(&self, f: f64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|v| v * f).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "matrix sum dimension mismatch");
        Self {
            dim: self.dim,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        for i in 0..self.dim {
            for j in i..self.dim {
                if (self.get(i, j) - self.get(j, i).conj()).norm() > tol {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.adjoint().mul(self).max_abs_diff(&Self::identity(self.dim)) <= tol
    }

    /// Validates the cheap necessary density-matrix conditions: Hermitian,
    /// unit trace, real nonnegative diagonal.
    pub fn check_density(&self, tol: f64) -> Result<()> {
        if !self.is_hermitian(tol) {
            return Err(Error::InvalidDensity("not Hermitian".into()));
        }
        let tr = self.trace();
        if (tr.re - 1.0).abs() > tol || tr.im.abs() > tol {
            return Err(Error::InvalidDensity(format!("trace = {tr}")));
        }
        for i in 0..self.dim {
            if self.get(i, i).re < -tol {
                return Err(Error::InvalidDensity(format!(
                    "diagonal entry {i} = {}",
                    self.get(i, i)
                )));
            }
        }
        Ok(())
    }
}

/// Environment qubit `ρ_e(λ) = (1−λ)|0⟩⟨0| + (λ/2)·I = diag(1−λ/2, λ/2)`.
pub fn env_qubit(lambda: f64) -> Result<ComplexMatrix> {
    if !(0.0..=1.0).contains(&lambda) || !lambda.is_finite() {
        return Err(Error::OutOfRange(format!("lambda = {lambda} outside [0, 1]")));
    }
    let mut m = ComplexMatrix::zeros(2);
    m.set(0, 0, Complex64::new(1.0 - lambda / 2.0, 0.0));
    m.set(1, 1, Complex64::new(lambda / 2.0, 0.0));
    Ok(m)
}

/// The controlled interaction `C_Xκ`: identity when the environment qubit is
/// `|0⟩`, `Xκ = cos κ·I + i sin κ·X` on the observer when it is `|1⟩`.
///
/// The exponential `exp(iX̂κ)` is expanded analytically, so no general
/// matrix exponential is involved.
pub fn cx_kappa_unitary(kappa: f64) -> Result<ComplexMatrix> {
    if !(0.0..=std::f64::consts::FRAC_PI_2).contains(&kappa) || !kappa.is_finite() {
        return Err(Error::OutOfRange(format!("kappa = {kappa} outside [0, π/2]")));
    }
    let (c, s) = (kappa.cos(), kappa.sin());
    let mut x_kappa = ComplexMatrix::zeros(2);
    x_kappa.set(0, 0, Complex64::new(c, 0.0));
    x_kappa.set(1, 1, Complex64::new(c, 0.0));
    x_kappa.set(0, 1, Complex64::new(0.0, s));
    x_kappa.set(1, 0, Complex64::new(0.0, s));

    let mut p0 = ComplexMatrix::zeros(2);
    p0.set(0, 0, Complex64::new(1.0, 0.0));
    let mut p1 = ComplexMatrix::zeros(2);
    p1.set(1, 1, Complex64::new(1.0, 0.0));

    let u = ComplexMatrix::identity(2).kron(&p0).add(&x_kappa.kron(&p1));
    debug_assert!(u.is_unitary(UNITARY_TOL));
    Ok(u)
}

/// The two-qubit SWAP `U_S |φ⟩|ψ⟩ = |ψ⟩|φ⟩`.
pub fn swap_unitary() -> ComplexMatrix {
    let mut u = ComplexMatrix::zeros(4);
    let one = Complex64::new(1.0, 0.0);
    u.set(0, 0, one);
    u.set(1, 2, one);
    u.set(2, 1, one);
    u.set(3, 3, one);
    u
}

/// Probabilistic swap channel `ρ → g·U_S ρ U_S† + (1−g)·ρ`.
pub fn pswap_channel(rho: &ComplexMatrix, g: f64) -> Result<ComplexMatrix> {
    if !(0.0..=1.0).contains(&g) || !g.is_finite() {
        return Err(Error::OutOfRange(format!("g = {g} outside [0, 1]")));
    }
    if rho.dim() != 4 {
        return Err(Error::InvalidDensity(format!("expected 4×4, got {}×{}", rho.dim(), rho.dim())));
    }
    rho.check_density(DENSITY_CHECK_TOL)?;
    let swapped = rho.conjugate_by(&swap_unitary());
    Ok(swapped.scale(g).add(&rho.scale(1.0 - g)))
}

/// Partial trace over the environment (second) qubit of a 4×4 density matrix.
pub fn partial_trace_env(rho: &ComplexMatrix) -> Result<ComplexMatrix> {
    if rho.dim() != 4 {
        return Err(Error::InvalidDensity(format!("expected 4×4, got {}×{}", rho.dim(), rho.dim())));
    }
    rho.check_density(DENSITY_CHECK_TOL)?;
    let mut out = ComplexMatrix::zeros(2);
    for o in 0..2 {
        for o2 in 0..2 {
            let v = rho.get(2 * o, 2 * o2) + rho.get(2 * o + 1, 2 * o2 + 1);
            out.set(o, o2, v);
        }
    }
    Ok(out)
}

/// One step of the observer's protocol: last outcome plus cloud parameters.
#[derive(Debug, Clone, Copy)]
pub struct ObserverStep {
    pub last_outcome: u8,
    pub params: CloudParams,
}

impl ObserverStep {
    pub fn new(last_outcome: u8, params: CloudParams) -> Result<Self> {
        if last_outcome > 1 {
            return Err(Error::OutOfRange(format!(
                "last outcome {last_outcome} not a bit"
            )));
        }
        Ok(Self { last_outcome, params })
    }
}

/// Simulates one circuit step and returns the probability of measuring the
/// opposite of the last outcome — the flip rate `q_k`.
pub fn step_flip_probability(step: &ObserverStep) -> Result<f64> {
    let k = step.last_outcome as usize;
    let mut observer = ComplexMatrix::zeros(2);
    observer.set(k, k, Complex64::new(1.0, 0.0));
    let joint = observer.kron(&env_qubit(step.params.lambda())?);

    let interacted = joint.conjugate_by(&cx_kappa_unitary(step.params.kappa())?);
    let swapped = pswap_channel(&interacted, step.params.g())?;
    let reduced = partial_trace_env(&swapped)?;

    let p = reduced.get(1 - k, 1 - k);
    debug_assert!(p.im.abs() <= UNITARY_TOL);
    Ok(p.re.clamp(0.0, 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::processes::cloud_rates;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, FRAC_PI_8};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn env_qubit_examples() {
        let m = env_qubit(0.0).unwrap();
        assert_eq!(m.get(0, 0), c(1.0, 0.0));
        assert_eq!(m.get(1, 1), c(0.0, 0.0));
        let m = env_qubit(1.0).unwrap();
        assert_eq!(m.get(0, 0), c(0.5, 0.0));
        assert_eq!(m.get(1, 1), c(0.5, 0.0));
        let m = env_qubit(0.5).unwrap();
        assert_eq!(m.get(0, 0), c(0.75, 0.0));
        assert_eq!(m.get(1, 1), c(0.25, 0.0));
        assert!(env_qubit(1.1).is_err());
        assert!(env_qubit(-0.1).is_err());
    }

    #[test]
    fn cx_kappa_zero_is_identity() {
        let u = cx_kappa_unitary(0.0).unwrap();
        assert!(u.max_abs_diff(&ComplexMatrix::identity(4)) <= 1e-15);
    }

    #[test]
    fn cx_kappa_max_is_controlled_ix() {
        // At κ = π/2 the controlled block is iX: |o,1⟩ → i|1−o,1⟩, i.e. the
        // entries (obs=0,env=1) ↔ (obs=1,env=1) at indices 1 and 3.
        let u = cx_kappa_unitary(FRAC_PI_2).unwrap();
        assert!((u.get(1, 3) - c(0.0, 1.0)).norm() < 1e-15);
        assert!((u.get(3, 1) - c(0.0, 1.0)).norm() < 1e-15);
        // Uncontrolled block untouched.
        assert_eq!(u.get(0, 0), c(1.0, 0.0));
        assert_eq!(u.get(2, 2), c(1.0, 0.0));
        // Diagonal of controlled block is cos κ ≈ 0.
        assert!(u.get(1, 1).norm() < 1e-15);
    }

    #[test]
    fn cx_kappa_quarter_turn_block() {
        let u = cx_kappa_unitary(FRAC_PI_4).unwrap();
        let r = std::f64::consts::FRAC_1_SQRT_2;
        assert!((u.get(1, 1) - c(r, 0.0)).norm() < 1e-15);
        assert!((u.get(1, 3) - c(0.0, r)).norm() < 1e-15);
    }

    #[test]
    fn cx_kappa_is_unitary_across_domain() {
        for i in 0..=16 {
            let kappa = i as f64 / 16.0 * FRAC_PI_2;
            assert!(cx_kappa_unitary(kappa).unwrap().is_unitary(UNITARY_TOL));
        }
        assert!(cx_kappa_unitary(2.0).is_err());
    }

    #[test]
    fn pswap_examples() {
        // |01⟩⟨01|.
        let mut rho = ComplexMatrix::zeros(4);
        rho.set(1, 1, c(1.0, 0.0));

        let out = pswap_channel(&rho, 0.0).unwrap();
        assert!(out.max_abs_diff(&rho) <= 1e-15);

        let out = pswap_channel(&rho, 1.0).unwrap();
        let mut expected = ComplexMatrix::zeros(4);
        expected.set(2, 2, c(1.0, 0.0));
        assert!(out.max_abs_diff(&expected) <= 1e-15);

        let out = pswap_channel(&rho, 0.5).unwrap();
        assert_eq!(out.get(1, 1), c(0.5, 0.0));
        assert_eq!(out.get(2, 2), c(0.5, 0.0));
        assert!((out.trace().re - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn pswap_rejects_invalid_input() {
        let junk = ComplexMatrix::identity(4); // trace 4
        assert!(matches!(
            pswap_channel(&junk, 0.5),
            Err(Error::InvalidDensity(_))
        ));
        let mut rho = ComplexMatrix::zeros(4);
        rho.set(0, 0, c(1.0, 0.0));
        assert!(matches!(
            pswap_channel(&rho, 1.5),
            Err(Error::OutOfRange(_))
        ));
    }

    #[test]
    fn partial_trace_examples() {
        // |00⟩⟨00| → |0⟩⟨0|.
        let mut rho = ComplexMatrix::zeros(4);
        rho.set(0, 0, c(1.0, 0.0));
        let out = partial_trace_env(&rho).unwrap();
        assert_eq!(out.get(0, 0), c(1.0, 0.0));
        assert_eq!(out.get(1, 1), c(0.0, 0.0));

        // Bell projector → I/2.
        let mut bell = ComplexMatrix::zeros(4);
        for (i, j) in [(0, 0), (0, 3), (3, 0), (3, 3)] {
            bell.set(i, j, c(0.5, 0.0));
        }
        let out = partial_trace_env(&bell).unwrap();
        assert!((out.get(0, 0).re - 0.5).abs() < 1e-15);
        assert!((out.get(1, 1).re - 0.5).abs() < 1e-15);
        assert!(out.get(0, 1).norm() < 1e-15);
    }

    #[test]
    fn partial_trace_recovers_product_factor() {
        // Asserts the observer ⊗ environment index convention.
        let mut obs = ComplexMatrix::zeros(2);
        obs.set(0, 0, c(0.7, 0.0));
        obs.set(1, 1, c(0.3, 0.0));
        obs.set(0, 1, c(0.1, 0.2));
        obs.set(1, 0, c(0.1, -0.2));
        let env = env_qubit(0.6).unwrap();
        let out = partial_trace_env(&obs.kron(&env)).unwrap();
        assert!(out.max_abs_diff(&obs) <= 1e-14);
    }

    #[test]
    fn flip_probability_examples() {
        // Pure |0⟩ environment, k = 0: nothing can flip.
        for (kappa, g) in [(0.0, 0.3), (FRAC_PI_4, 0.8), (FRAC_PI_2, 1.0)] {
            let step = ObserverStep::new(0, CloudParams::new(0.0, kappa, g).unwrap()).unwrap();
            assert!(step_flip_probability(&step).unwrap().abs() <= 1e-15);
        }
        // Pure |0⟩ environment, k = 1: only the swap flips, rate g.
        for (kappa, g) in [(0.0, 0.3), (FRAC_PI_8, 0.45), (FRAC_PI_2, 0.9)] {
            let step = ObserverStep::new(1, CloudParams::new(0.0, kappa, g).unwrap()).unwrap();
            assert!((step_flip_probability(&step).unwrap() - g).abs() <= 1e-14);
        }
        // Fully mixed environment, CNOT regime: q0 = λ/2.
        let step =
            ObserverStep::new(0, CloudParams::new(1.0, FRAC_PI_2, 0.5).unwrap()).unwrap();
        assert!((step_flip_probability(&step).unwrap() - 0.5).abs() <= 1e-14);
    }

    #[test]
    fn channel_stages_preserve_trace_and_hermiticity() {
        let params = CloudParams::new(0.7, FRAC_PI_4, 0.35).unwrap();
        let mut obs = ComplexMatrix::zeros(2);
        obs.set(1, 1, c(1.0, 0.0));
        let joint = obs.kron(&env_qubit(params.lambda()).unwrap());

        let stage1 = joint.conjugate_by(&cx_kappa_unitary(params.kappa()).unwrap());
        let stage2 = pswap_channel(&stage1, params.g()).unwrap();
        let stage3 = partial_trace_env(&stage2).unwrap();
        for (tr, herm) in [
            (stage1.trace(), stage1.is_hermitian(1e-12)),
            (stage2.trace(), stage2.is_hermitian(1e-12)),
            (stage3.trace(), stage3.is_hermitian(1e-12)),
        ] {
            assert!((tr.re - 1.0).abs() <= 1e-12 && tr.im.abs() <= 1e-12);
            assert!(herm);
        }
    }

    #[test]
    fn simulated_rates_match_closed_form_on_spot_grid() {
        for lambda in [0.0, 0.3, 0.8, 1.0] {
            for kappa in [0.0, FRAC_PI_8, FRAC_PI_4, FRAC_PI_2] {
                for g in [0.0, 0.4, 1.0] {
                    let params = CloudParams::new(lambda, kappa, g).unwrap();
                    let (q0, q1) = cloud_rates(&params);
                    for (k, expected) in [(0u8, q0), (1u8, q1)] {
                        let sim =
                            step_flip_probability(&ObserverStep::new(k, params).unwrap()).unwrap();
                        assert!(
                            (sim - expected).abs() <= 1e-10,
                            "λ={lambda} κ={kappa} g={g} k={k}: {sim} vs {expected}"
                        );
                    }
                }
            }
        }
    }
}
