//! Rectangular matrices, LU factorization with partial pivoting, determinants,
//! and linear solves with one step of iterative refinement. Vandermonde-type
//! systems show up throughout this crate and are ill-conditioned, hence the
//! refinement step.

use crate::error::{Error, Result};
use crate::linalg::SymmetricMatrix;

/// A dense rows×cols real matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct GeneralMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl GeneralMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        GeneralMatrix { rows, cols, data: vec![0.0; rows * cols] }
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let r = rows.len();
        if r == 0 {
            return Err(Error::EmptyInput("matrix rows"));
        }
        let c = rows[0].len();
        let mut data = Vec::with_capacity(r * c);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != c {
                return Err(Error::DimensionMismatch { left: c, right: row.len() });
            }
            for (j, &x) in row.iter().enumerate() {
                if !x.is_finite() {
                    return Err(Error::NonFiniteEntry { row: i, col: j });
                }
                data.push(x);
            }
        }
        Ok(GeneralMatrix { rows: r, cols: c, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        debug_assert_eq!(self.cols, x.len());
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j) * x[j]).sum())
            .collect()
    }

    /// AᵀA, used to form normal equations.
    pub fn gram_transpose(&self) -> GeneralMatrix {
        let m = self.cols;
        let mut out = GeneralMatrix::zeros(m, m);
        for a in 0..m {
            for b in 0..m {
                let mut acc = 0.0;
                for i in 0..self.rows {
                    acc += self.get(i, a) * self.get(i, b);
                }
                out.set(a, b, acc);
            }
        }
        out
    }
}

impl From<&SymmetricMatrix> for GeneralMatrix {
    fn from(a: &SymmetricMatrix) -> Self {
        let n = a.n();
        let mut out = GeneralMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, a.get(i, j));
            }
        }
        out
    }
}

/// Packed LU factors of a square matrix with row permutation.
pub struct LuFactors {
    lu: GeneralMatrix,
    perm: Vec<usize>,
    sign: f64,
}

/// Factors a square matrix; singular pivots are reported, not patched.
pub fn lu_factor(a: &GeneralMatrix) -> Result<LuFactors> {
    if a.rows != a.cols {
        return Err(Error::DimensionMismatch { left: a.rows, right: a.cols });
    }
    let n = a.rows;
    let mut lu = a.clone();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut sign = 1.0;
    for col in 0..n {
        let mut pivot_row = col;
        let mut pivot_mag = lu.get(col, col).abs();
        for r in (col + 1)..n {
            let mag = lu.get(r, col).abs();
            if mag > pivot_mag {
                pivot_mag = mag;
                pivot_row = r;
            }
        }
        if pivot_mag == 0.0 {
            return Err(Error::SearchFailure(format!("singular matrix: zero pivot in column {col}")));
        }
        if pivot_row != col {
            for j in 0..n {
                let tmp = lu.get(col, j);
                lu.set(col, j, lu.get(pivot_row, j));
                lu.set(pivot_row, j, tmp);
            }
            perm.swap(col, pivot_row);
            sign = -sign;
        }
        let pivot = lu.get(col, col);
        for r in (col + 1)..n {
            let factor = lu.get(r, col) / pivot;
            lu.set(r, col, factor);
            for j in (col + 1)..n {
                lu.set(r, j, lu.get(r, j) - factor * lu.get(col, j));
            }
        }
    }
    Ok(LuFactors { lu, perm, sign })
}

impl LuFactors {
    pub fn solve(&self, b: &[f64]) -> Vec<f64> {
        let n = self.lu.rows;
        debug_assert_eq!(b.len(), n);
        let mut x: Vec<f64> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 1..n {
            for j in 0..i {
                x[i] -= self.lu.get(i, j) * x[j];
            }
        }
        for i in (0..n).rev() {
            for j in (i + 1)..n {
                x[i] -= self.lu.get(i, j) * x[j];
            }
            x[i] /= self.lu.get(i, i);
        }
        x
    }

    pub fn determinant(&self) -> f64 {
        let n = self.lu.rows;
        (0..n).fold(self.sign, |acc, i| acc * self.lu.get(i, i))
    }
}

/// Solves A x = b by LU with partial pivoting plus one refinement step.
pub fn solve_refined(a: &GeneralMatrix, b: &[f64]) -> Result<Vec<f64>> {
    if a.rows != b.len() {
        return Err(Error::DimensionMismatch { left: a.rows, right: b.len() });
    }
    let factors = lu_factor(a)?;
    let mut x = factors.solve(b);
    let ax = a.mul_vec(&x);
    let residual: Vec<f64> = b.iter().zip(&ax).map(|(bi, axi)| bi - axi).collect();
    let correction = factors.solve(&residual);
    for (xi, ci) in x.iter_mut().zip(&correction) {
        *xi += ci;
    }
    Ok(x)
}

/// Determinant of a square matrix via LU. Zero for singular input.
pub fn determinant(a: &GeneralMatrix) -> Result<f64> {
    match lu_factor(a) {
        Ok(f) => Ok(f.determinant()),
        Err(Error::SearchFailure(_)) => Ok(0.0),
        Err(e) => Err(e),
    }
}

/// Determinant of a symmetric matrix.
pub fn determinant_sym(a: &SymmetricMatrix) -> Result<f64> {
    determinant(&GeneralMatrix::from(a))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solves_a_known_system() {
        let a = GeneralMatrix::from_rows(&[vec![2.0, 1.0], vec![5.0, 3.0]]).unwrap();
        let x = solve_refined(&a, &[4.0, 11.0]).unwrap();
        assert!((x[0] - 1.0).abs() <= 1e-12);
        assert!((x[1] - 2.0).abs() <= 1e-12);
    }

    #[test]
    fn determinant_examples() {
        let a = GeneralMatrix::from_rows(&[vec![2.0, 1.0], vec![5.0, 3.0]]).unwrap();
        assert!((determinant(&a).unwrap() - 1.0).abs() <= 1e-12);

        let s = GeneralMatrix::from_rows(&[vec![1.0, 2.0], vec![2.0, 4.0]]).unwrap();
        assert_eq!(determinant(&s).unwrap(), 0.0);

        // permutation parity
        let p = GeneralMatrix::from_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        assert!((determinant(&p).unwrap() + 1.0).abs() <= 1e-15);
    }

    #[test]
    fn refinement_handles_an_ill_conditioned_vandermonde() {
        // nodes close together make this nearly singular
        let nodes = [0.50f64, 0.52, 0.54, 0.56];
        let a = GeneralMatrix::from_rows(
            &nodes
                .iter()
                .map(|&x| (0..4).map(|k| x.powi(k)).collect())
                .collect::<Vec<_>>(),
        )
        .unwrap();
        // b = A * [1, -2, 3, -4]
        let truth = [1.0, -2.0, 3.0, -4.0];
        let b = a.mul_vec(&truth);
        let x = solve_refined(&a, &b).unwrap();
        for (xi, ti) in x.iter().zip(&truth) {
            assert!((xi - ti).abs() <= 1e-8, "{x:?}");
        }
    }
}
