//! Composite Simpson quadrature for matrix-valued integrands on [0, 1].

use crate::error::{Error, Result};
use crate::linalg::SymmetricMatrix;

/// Integrates a matrix-valued function over [lo, hi] with composite Simpson
/// on `intervals` subintervals (rounded up to an even count ≥ 2).
pub fn simpson_matrix<F>(mut integrand: F, lo: f64, hi: f64, intervals: usize) -> Result<SymmetricMatrix>
where
    F: FnMut(f64) -> Result<SymmetricMatrix>,
{
    if !(lo.is_finite() && hi.is_finite()) || lo >= hi {
        return Err(Error::InvalidParameter(format!("bad quadrature range [{lo}, {hi}]")));
    }
    let m = intervals.max(2).next_multiple_of(2);
    let h = (hi - lo) / m as f64;
    let mut acc = integrand(lo)?.add(&integrand(hi)?)?;
    for k in 1..m {
        let t = lo + h * k as f64;
        let weight = if k % 2 == 1 { 4.0 } else { 2.0 };
        acc = acc.add(&integrand(t)?.scale(weight))?;
    }
    let out = acc.scale(h / 3.0);
    if !out.max_norm().is_finite() {
        return Err(Error::Range("quadrature diverged to non-finite values".into()));
    }
    Ok(out)
}
