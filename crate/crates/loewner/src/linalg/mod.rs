//! Dense symmetric linear algebra: vectors, exactly-symmetric matrices,
//! eigendecomposition, PSD tests, Loewner comparisons, Hadamard products,
//! numeric rank, and zero-padding.

mod eigen;
mod io;

pub use eigen::{eigen_sym, EigenDecomposition};

use crate::error::{Error, Result};

/// Relative asymmetry tolerated when constructing a matrix from raw rows.
const SYMMETRY_TOL: f64 = 1e-12;

/// Default relative PSD tolerance. Entrywise powers amplify rounding, so the
/// default is loose; certificates report the raw minimal eigenvalue so callers
/// can tighten.
pub const DEFAULT_TOL: f64 = 1e-9;

/// A finite real vector.
#[derive(Clone, Debug, PartialEq)]
pub struct Vector(Vec<f64>);

impl Vector {
    pub fn new(entries: Vec<f64>) -> Result<Self> {
        if let Some(i) = entries.iter().position(|x| !x.is_finite()) {
            return Err(Error::NonFiniteEntry { row: i, col: i });
        }
        Ok(Vector(entries))
    }

    pub fn from_slice(entries: &[f64]) -> Result<Self> {
        Self::new(entries.to_vec())
    }

    pub fn zeros(n: usize) -> Self {
        Vector(vec![0.0; n])
    }

    /// The alternating vector (1, -1, 1, ..., ±1).
    pub fn alternating(n: usize) -> Self {
        Vector((0..n).map(|i| if i % 2 == 0 { 1.0 } else { -1.0 }).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, f64> {
        self.0.iter()
    }

    pub fn dot(&self, other: &Vector) -> f64 {
        debug_assert_eq!(self.len(), other.len());
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn norm(&self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn scale(&self, s: f64) -> Vector {
        Vector(self.0.iter().map(|x| s * x).collect())
    }

    /// Entrywise product u ∘ v.
    pub fn hadamard(&self, other: &Vector) -> Result<Vector> {
        if self.len() != other.len() {
            return Err(Error::DimensionMismatch { left: self.len(), right: other.len() });
        }
        Ok(Vector(self.0.iter().zip(&other.0).map(|(a, b)| a * b).collect()))
    }

    /// Entrywise reciprocal; every entry must be nonzero.
    pub fn reciprocal(&self) -> Result<Vector> {
        if self.0.contains(&0.0) {
            return Err(Error::Domain("reciprocal of a vector with a zero entry".into()));
        }
        Vector::new(self.0.iter().map(|x| 1.0 / x).collect())
    }

    /// Appends `m` zero entries.
    pub fn pad(&self, m: usize) -> Vector {
        let mut data = self.0.clone();
        data.extend(std::iter::repeat_n(0.0, m));
        Vector(data)
    }
}

impl std::ops::Index<usize> for Vector {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

/// A dense real symmetric n×n matrix. Entries are stored row-major and the
/// two triangles are kept bit-identical, so `get(i, j) == get(j, i)` exactly.
#[derive(Clone, Debug, PartialEq)]
pub struct SymmetricMatrix {
    n: usize,
    data: Vec<f64>,
}

impl SymmetricMatrix {
    /// Builds a matrix from full rows. Inputs are symmetrized as (A + Aᵀ)/2;
    /// asymmetry beyond 1e-12 relative to (1 + max|entry|) is rejected rather
    /// than silently averaged away.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::EmptyInput("matrix rows"));
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::DimensionMismatch { left: n, right: row.len() });
            }
            for (j, &x) in row.iter().enumerate() {
                if !x.is_finite() {
                    return Err(Error::NonFiniteEntry { row: i, col: j });
                }
            }
        }
        let scale = 1.0 + rows.iter().flatten().fold(0.0f64, |m, &x| m.max(x.abs()));
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            for j in i..n {
                let delta = (rows[i][j] - rows[j][i]).abs();
                if delta > SYMMETRY_TOL * scale {
                    return Err(Error::Asymmetric { row: i, col: j, delta });
                }
                let v = 0.5 * (rows[i][j] + rows[j][i]);
                data[i * n + j] = v;
                data[j * n + i] = v;
            }
        }
        Ok(SymmetricMatrix { n, data })
    }

    /// Builds a matrix by evaluating `f` on the upper triangle (0-based
    /// indices, i ≤ j) and mirroring, so symmetry holds bit-exactly.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyInput("matrix dimension"));
        }
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            for j in i..n {
                let v = f(i, j);
                if !v.is_finite() {
                    return Err(Error::NonFiniteEntry { row: i, col: j });
                }
                data[i * n + j] = v;
                data[j * n + i] = v;
            }
        }
        Ok(SymmetricMatrix { n, data })
    }

    pub fn zeros(n: usize) -> Self {
        SymmetricMatrix { n, data: vec![0.0; n * n] }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, |i, j| if i == j { 1.0 } else { 0.0 }).expect("identity is finite")
    }

    /// The all-ones matrix.
    pub fn ones(n: usize) -> Self {
        SymmetricMatrix { n, data: vec![1.0; n * n] }
    }

    pub fn diagonal(entries: &[f64]) -> Result<Self> {
        let n = entries.len();
        if n == 0 {
            return Err(Error::EmptyInput("diagonal entries"));
        }
        Self::from_fn(n, |i, j| if i == j { entries[i] } else { 0.0 })
    }

    /// The rank-one Gram matrix vvᵀ.
    pub fn outer(v: &Vector) -> Result<Self> {
        if v.is_empty() {
            return Err(Error::EmptyInput("outer-product vector"));
        }
        Self::from_fn(v.len(), |i, j| v[i] * v[j])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        (0..self.n).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    pub fn max_norm(&self) -> f64 {
        self.data.iter().fold(0.0f64, |m, &x| m.max(x.abs()))
    }

    pub fn min_entry(&self) -> f64 {
        self.data.iter().fold(f64::INFINITY, |m, &x| m.min(x))
    }

    fn zip_with(&self, other: &SymmetricMatrix, f: impl Fn(f64, f64) -> f64) -> Result<SymmetricMatrix> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch { left: self.n, right: other.n });
        }
        let data: Vec<f64> = self.data.iter().zip(&other.data).map(|(&a, &b)| f(a, b)).collect();
        if let Some(k) = data.iter().position(|x| !x.is_finite()) {
            return Err(Error::NonFiniteEntry { row: k / self.n, col: k % self.n });
        }
        Ok(SymmetricMatrix { n: self.n, data })
    }

    pub fn add(&self, other: &SymmetricMatrix) -> Result<SymmetricMatrix> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &SymmetricMatrix) -> Result<SymmetricMatrix> {
        self.zip_with(other, |a, b| a - b)
    }

    /// Entrywise (Hadamard, Schur) product.
    pub fn hadamard(&self, other: &SymmetricMatrix) -> Result<SymmetricMatrix> {
        self.zip_with(other, |a, b| a * b)
    }

    pub fn scale(&self, s: f64) -> SymmetricMatrix {
        SymmetricMatrix { n: self.n, data: self.data.iter().map(|x| s * x).collect() }
    }

    /// xᵀ A x.
    pub fn quadratic_form(&self, x: &Vector) -> f64 {
        debug_assert_eq!(self.n, x.len());
        let mut acc = 0.0;
        for i in 0..self.n {
            let mut row = 0.0;
            for j in 0..self.n {
                row += self.get(i, j) * x[j];
            }
            acc += x[i] * row;
        }
        acc
    }

    pub fn mat_vec(&self, x: &Vector) -> Vector {
        debug_assert_eq!(self.n, x.len());
        Vector(
            (0..self.n)
                .map(|i| (0..self.n).map(|j| self.get(i, j) * x[j]).sum())
                .collect(),
        )
    }

    /// Block-diagonal A ⊕ 0_{m×m}. The spectrum gains m zeros and nothing else.
    pub fn pad_direct_sum(&self, m: usize) -> SymmetricMatrix {
        let n = self.n + m;
        let mut data = vec![0.0; n * n];
        for i in 0..self.n {
            for j in 0..self.n {
                data[i * n + j] = self.get(i, j);
            }
        }
        SymmetricMatrix { n, data }
    }
}

/// Verdict of a positive-semidefiniteness test. `witness` is a unit
/// eigenvector for the minimal eigenvalue, so `witnessᵀ A witness`
/// reproduces `min_eigenvalue`.
#[derive(Clone, Debug, PartialEq)]
pub struct PsdVerdict {
    pub is_psd: bool,
    pub min_eigenvalue: f64,
    pub witness: Vector,
}

/// Tests A ⪰ 0 up to `tol` relative to (1 + ‖A‖_F).
pub fn is_psd(a: &SymmetricMatrix, tol: f64) -> Result<PsdVerdict> {
    if tol < 0.0 || !tol.is_finite() {
        return Err(Error::InvalidParameter(format!("tolerance must be finite and >= 0, got {tol}")));
    }
    let eig = eigen_sym(a)?;
    let min_eigenvalue = eig.eigenvalues()[0];
    let witness = eig.eigenvector(0).clone();
    let scale = 1.0 + a.frobenius_norm();
    Ok(PsdVerdict { is_psd: min_eigenvalue >= -tol * scale, min_eigenvalue, witness })
}

/// Tests A ⪰ B in the Loewner order, i.e. A − B ⪰ 0.
pub fn loewner_geq(a: &SymmetricMatrix, b: &SymmetricMatrix, tol: f64) -> Result<PsdVerdict> {
    is_psd(&a.sub(b)?, tol)
}

/// Number of eigenvalues with |λ| > tol·(1 + ‖A‖_F).
pub fn numeric_rank(a: &SymmetricMatrix, tol: f64) -> Result<usize> {
    if tol <= 0.0 || !tol.is_finite() {
        return Err(Error::InvalidParameter(format!("rank tolerance must be finite and > 0, got {tol}")));
    }
    let eig = eigen_sym(a)?;
    let cutoff = tol * (1.0 + a.frobenius_norm());
    Ok(eig.eigenvalues().iter().filter(|l| l.abs() > cutoff).count())
}

/// Σᵢ vᵢvᵢᵀ. The result is PSD with rank at most the number of vectors.
/// An empty list is rejected because the dimension would be unspecified.
pub fn gram(vectors: &[Vector]) -> Result<SymmetricMatrix> {
    let first = vectors.first().ok_or(Error::EmptyInput("gram vectors"))?;
    let n = first.len();
    if n == 0 {
        return Err(Error::EmptyInput("gram vector entries"));
    }
    for v in vectors {
        if v.len() != n {
            return Err(Error::DimensionMismatch { left: n, right: v.len() });
        }
    }
    SymmetricMatrix::from_fn(n, |i, j| vectors.iter().map(|v| v[i] * v[j]).sum())
}
