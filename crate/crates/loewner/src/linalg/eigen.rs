//! Cyclic Jacobi eigensolver for dense symmetric matrices.
//!
//! Sweeps annihilate every off-diagonal entry in a fixed row-major order and
//! accumulate the rotations, which makes the result deterministic for
//! identical input. Robust for the matrix sizes this crate works with
//! (n up to ~100).

use crate::error::{Error, Result};

use super::{SymmetricMatrix, Vector};

/// Convergence: off-diagonal Frobenius norm at or below 1e-13·(1 + ‖A‖_F).
const OFF_DIAGONAL_TOL: f64 = 1e-13;
const MAX_SWEEPS: usize = 100;

/// Eigenvalues sorted ascending with matching orthonormal eigenvectors.
#[derive(Clone, Debug, PartialEq)]
pub struct EigenDecomposition {
    eigenvalues: Vec<f64>,
    eigenvectors: Vec<Vector>,
}

impl EigenDecomposition {
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    /// Unit eigenvector paired with `eigenvalues()[i]`.
    pub fn eigenvector(&self, i: usize) -> &Vector {
        &self.eigenvectors[i]
    }

    pub fn n(&self) -> usize {
        self.eigenvalues.len()
    }

    /// VΛVᵀ, for reconstruction checks.
    pub fn reconstruct(&self) -> Result<SymmetricMatrix> {
        let n = self.n();
        SymmetricMatrix::from_fn(n, |i, j| {
            (0..n)
                .map(|k| self.eigenvalues[k] * self.eigenvectors[k][i] * self.eigenvectors[k][j])
                .sum()
        })
    }

    /// max |(VᵀV - I)_{ij}|, for orthogonality checks.
    pub fn orthogonality_defect(&self) -> f64 {
        let n = self.n();
        let mut worst = 0.0f64;
        for a in 0..n {
            for b in a..n {
                let dot = self.eigenvectors[a].dot(&self.eigenvectors[b]);
                let target = if a == b { 1.0 } else { 0.0 };
                worst = worst.max((dot - target).abs());
            }
        }
        worst
    }
}

fn off_diagonal_norm(m: &[f64], n: usize) -> f64 {
    let mut acc = 0.0;
    for i in 0..n {
        for j in (i + 1)..n {
            let x = m[i * n + j];
            acc += 2.0 * x * x;
        }
    }
    acc.sqrt()
}

/// Full eigendecomposition of a symmetric matrix by cyclic Jacobi rotations.
pub fn eigen_sym(a: &SymmetricMatrix) -> Result<EigenDecomposition> {
    let n = a.n();
    let mut m: Vec<f64> = (0..n * n).map(|k| a.get(k / n, k % n)).collect();
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }

    let threshold = OFF_DIAGONAL_TOL * (1.0 + a.frobenius_norm());
    let mut converged = n == 1;
    for _sweep in 0..MAX_SWEEPS {
        if off_diagonal_norm(&m, n) <= threshold {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = m[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let theta = 0.5 * (m[q * n + q] - m[p * n + p]) / apq;
                let t = if theta.abs() > 1e150 {
                    // avoid theta^2 overflow; rotation is then negligible anyway
                    0.5 / theta
                } else {
                    let t = 1.0 / (theta.abs() + (1.0 + theta * theta).sqrt());
                    if theta < 0.0 {
                        -t
                    } else {
                        t
                    }
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                let tau = s / (1.0 + c);
                let h = t * apq;
                m[p * n + p] -= h;
                m[q * n + q] += h;
                m[p * n + q] = 0.0;
                m[q * n + p] = 0.0;
                for j in 0..n {
                    if j == p || j == q {
                        continue;
                    }
                    let g = m[j * n + p];
                    let h = m[j * n + q];
                    let gp = g - s * (h + g * tau);
                    let gq = h + s * (g - h * tau);
                    m[j * n + p] = gp;
                    m[p * n + j] = gp;
                    m[j * n + q] = gq;
                    m[q * n + j] = gq;
                }
                for j in 0..n {
                    let g = v[j * n + p];
                    let h = v[j * n + q];
                    v[j * n + p] = g - s * (h + g * tau);
                    v[j * n + q] = h + s * (g - h * tau);
                }
            }
        }
    }
    if !converged && off_diagonal_norm(&m, n) > threshold {
        return Err(Error::NoConvergence(MAX_SWEEPS));
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        m[i * n + i]
            .partial_cmp(&m[j * n + j])
            .expect("eigenvalues are finite")
            .then(i.cmp(&j))
    });
    let eigenvalues: Vec<f64> = order.iter().map(|&i| m[i * n + i]).collect();
    let eigenvectors: Vec<Vector> = order
        .iter()
        .map(|&col| Vector::new((0..n).map(|row| v[row * n + col]).collect()).expect("rotations stay finite"))
        .collect();
    Ok(EigenDecomposition { eigenvalues, eigenvectors })
}
