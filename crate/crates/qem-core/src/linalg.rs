//! Small dense real symmetric matrices and a cyclic Jacobi eigensolver.
//!
//! The matrices in this crate are at most a few tens of rows, so plain
//! row-major storage and Jacobi sweeps are exact enough and keep the crate
//! free of heavyweight linear-algebra dependencies.

use crate::error::{Error, Result};

/// Off-diagonal Frobenius norm below which Jacobi sweeps stop.
pub const JACOBI_OFF_TOL: f64 = 1e-13;
/// Hard cap on Jacobi sweeps.
pub const JACOBI_MAX_SWEEPS: usize = 200;
/// Maximum allowed asymmetry `|a_ij − a_ji|` of an input matrix.
pub const SYMMETRY_TOL: f64 = 1e-10;

/// Dense square matrix stored row-major, intended to hold symmetric data.
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix {
    n: usize,
    data: Vec<f64>,
}

impl SymMatrix {
    pub fn zeros(n: usize) -> Self {
        Self { n, data: vec![0.0; n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.set(i, i, 1.0);
        }
        m
    }

    /// Builds an n×n matrix from an entry function.
    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> f64) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.n + j] = v;
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    /// Largest `|a_ij − a_ji|`.
    pub fn max_asymmetry(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.n {
            for j in i + 1..self.n {
                worst = worst.max((self.get(i, j) - self.get(j, i)).abs());
            }
        }
        worst
    }
}

/// Eigendecomposition of a symmetric matrix: `values` in descending order,
/// `vectors` row-major with column `c` the unit eigenvector of `values[c]`.
#[derive(Debug, Clone)]
pub struct SymEigen {
    pub n: usize,
    pub values: Vec<f64>,
    pub vectors: Vec<f64>,
}

impl SymEigen {
    pub fn vector_entry(&self, row: usize, col: usize) -> f64 {
        self.vectors[row * self.n + col]
    }

    /// `‖A − QΛQᵀ‖max` against the given matrix.
    pub fn reconstruction_residual(&self, a: &SymMatrix) -> f64 {
        let n = self.n;
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                let mut acc = 0.0;
                for c in 0..n {
                    acc += self.vector_entry(i, c) * self.values[c] * self.vector_entry(j, c);
                }
                worst = worst.max((a.get(i, j) - acc).abs());
            }
        }
        worst
    }
}

/// Full eigendecomposition by cyclic Jacobi sweeps.
///
/// Rejects matrices whose asymmetry exceeds [`SYMMETRY_TOL`]. Sweeps stop
/// once the off-diagonal Frobenius norm drops below [`JACOBI_OFF_TOL`] or
/// after [`JACOBI_MAX_SWEEPS`] sweeps.
pub fn jacobi_eigen(matrix: &SymMatrix) -> Result<SymEigen> {
    let asym = matrix.max_asymmetry();
    if asym > SYMMETRY_TOL {
        return Err(Error::NotSymmetric(format!(
            "max |a_ij - a_ji| = {asym}"
        )));
    }
    let n = matrix.n();
    // Work on the symmetrized copy so the iteration is exactly symmetric.
    let mut a = SymMatrix::from_fn(n, |i, j| 0.5 * (matrix.get(i, j) + matrix.get(j, i)));
    let mut v = SymMatrix::identity(n);

    for _sweep in 0..JACOBI_MAX_SWEEPS {
        let off: f64 = {
            let mut s = 0.0;
            for p in 0..n {
                for q in p + 1..n {
                    s += 2.0 * a.get(p, q) * a.get(p, q);
                }
            }
            s.sqrt()
        };
        if off <= JACOBI_OFF_TOL {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a.get(p, q);
                if apq == 0.0 {
                    continue;
                }
                let theta = (a.get(q, q) - a.get(p, p)) / (2.0 * apq);
                // tan of the rotation angle, smaller root for stability
                let t = if theta >= 0.0 {
                    1.0 / (theta + (1.0 + theta * theta).sqrt())
                } else {
                    -1.0 / (-theta + (1.0 + theta * theta).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                let tau = s / (1.0 + c);

                let app = a.get(p, p);
                let aqq = a.get(q, q);
                a.set(p, p, app - t * apq);
                a.set(q, q, aqq + t * apq);
                a.set(p, q, 0.0);
                a.set(q, p, 0.0);
                for i in 0..n {
                    if i == p || i == q {
                        continue;
                    }
                    let aip = a.get(i, p);
                    let aiq = a.get(i, q);
                    a.set(i, p, aip - s * (aiq + tau * aip));
                    a.set(p, i, a.get(i, p));
                    a.set(i, q, aiq + s * (aip - tau * aiq));
                    a.set(q, i, a.get(i, q));
                }
                for i in 0..n {
                    let vip = v.get(i, p);
                    let viq = v.get(i, q);
                    v.set(i, p, vip - s * (viq + tau * vip));
                    v.set(i, q, viq + s * (vip - tau * viq));
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| a.get(y, y).partial_cmp(&a.get(x, x)).unwrap());
    let values: Vec<f64> = order.iter().map(|&c| a.get(c, c)).collect();
    let mut vectors = vec![0.0; n * n];
    for (new_col, &old_col) in order.iter().enumerate() {
        for row in 0..n {
            vectors[row * n + new_col] = v.get(row, old_col);
        }
    }
    Ok(SymEigen { n, values, vectors })
}

/// Eigenvalues of a symmetric matrix in descending order.
pub fn symmetric_eigenvalues(matrix: &SymMatrix) -> Result<Vec<f64>> {
    Ok(jacobi_eigen(matrix)?.values)
}
