//! Analytic machinery: generalized Dirichlet polynomials, the two-sided power
//! Vandermonde block matrix, witness-vector construction for linear
//! combinations of power functions, the super-additivity integral identity,
//! and the two-variable log-convexity gap of negative powers.

pub mod quad;
pub mod solve;

pub use quad::simpson_matrix;
pub use solve::{determinant, determinant_sym, solve_refined, GeneralMatrix};

use crate::error::{Error, Result};
use crate::linalg::{SymmetricMatrix, Vector};
use crate::powers::{PowerFamily, PowerMap};

/// f(x) = Σᵢ aᵢ·λᵢ^x with strictly decreasing positive bases and a₀ ≠ 0.
/// Such a sum has at most (terms − 1) real zeros.
#[derive(Clone, Debug, PartialEq)]
pub struct DirichletPolynomial {
    coefficients: Vec<f64>,
    bases: Vec<f64>,
}

impl DirichletPolynomial {
    pub fn new(coefficients: Vec<f64>, bases: Vec<f64>) -> Result<Self> {
        if coefficients.is_empty() {
            return Err(Error::EmptyInput("dirichlet coefficients"));
        }
        if coefficients.len() != bases.len() {
            return Err(Error::DimensionMismatch { left: coefficients.len(), right: bases.len() });
        }
        if coefficients[0] == 0.0 {
            return Err(Error::InvalidParameter("leading dirichlet coefficient must be nonzero".into()));
        }
        if coefficients.iter().chain(bases.iter()).any(|x| !x.is_finite()) {
            return Err(Error::InvalidParameter("dirichlet data must be finite".into()));
        }
        for w in bases.windows(2) {
            if w[0] <= w[1] {
                return Err(Error::InvalidParameter("dirichlet bases must be strictly decreasing".into()));
            }
        }
        if *bases.last().unwrap() <= 0.0 {
            return Err(Error::InvalidParameter("dirichlet bases must be positive".into()));
        }
        Ok(DirichletPolynomial { coefficients, bases })
    }

    pub fn terms(&self) -> usize {
        self.coefficients.len()
    }

    pub fn eval(&self, x: f64) -> Result<f64> {
        let mut acc = 0.0;
        for (a, l) in self.coefficients.iter().zip(&self.bases) {
            acc += a * (x * l.ln()).exp();
        }
        if !acc.is_finite() {
            return Err(Error::Range(format!("dirichlet polynomial overflows at x = {x}")));
        }
        Ok(acc)
    }

    /// Strict sign changes over a uniform grid of `grid` points on [lo, hi].
    /// Exact zeros on the grid are skipped, so the count never exceeds the
    /// true number of zeros.
    pub fn sign_changes(&self, lo: f64, hi: f64, grid: usize) -> Result<usize> {
        if lo >= hi || !lo.is_finite() || !hi.is_finite() {
            return Err(Error::InvalidParameter(format!("bad grid range [{lo}, {hi}]")));
        }
        if grid < 2 {
            return Err(Error::InvalidParameter("grid needs at least 2 points".into()));
        }
        let step = (hi - lo) / (grid - 1) as f64;
        let mut changes = 0;
        let mut last_sign = 0i8;
        for k in 0..grid {
            let value = self.eval(lo + step * k as f64)?;
            let sign = if value > 0.0 {
                1
            } else if value < 0.0 {
                -1
            } else {
                0
            };
            if sign != 0 {
                if last_sign != 0 && sign != last_sign {
                    changes += 1;
                }
                last_sign = sign;
            }
        }
        Ok(changes)
    }
}

/// The 2n×2n block matrix pairing the even and odd powers |x|^αᵢ and
/// sign(x)|x|^αᵢ against the nodes ±xⱼ:
///
/// ```text
/// Ψ = | even(α_i, x_j)   even(α_i, -x_j) |   =  | M  M |
///     | odd(α_i, x_j)    odd(α_i, -x_j)  |      | M -M |
/// ```
///
/// with M = (xⱼ^αᵢ); nonsingular for distinct positive nodes and distinct
/// exponents.
pub fn psi_vandermonde(x: &Vector, alphas: &Vector) -> Result<GeneralMatrix> {
    let n = x.len();
    if n == 0 {
        return Err(Error::EmptyInput("vandermonde nodes"));
    }
    if alphas.len() != n {
        return Err(Error::DimensionMismatch { left: n, right: alphas.len() });
    }
    for w in x.as_slice().windows(2) {
        if w[0] >= w[1] {
            return Err(Error::InvalidParameter("nodes must be strictly increasing".into()));
        }
    }
    if x[0] <= 0.0 {
        return Err(Error::InvalidParameter("nodes must be positive".into()));
    }
    for w in alphas.as_slice().windows(2) {
        if w[0] >= w[1] {
            return Err(Error::InvalidParameter("exponents must be strictly increasing".into()));
        }
    }
    let mut out = GeneralMatrix::zeros(2 * n, 2 * n);
    for i in 0..n {
        let even = PowerMap::even(alphas[i]);
        let odd = PowerMap::odd(alphas[i]);
        for j in 0..n {
            out.set(i, j, even.eval(x[j])?);
            out.set(i, n + j, even.eval(-x[j])?);
            out.set(n + i, j, odd.eval(x[j])?);
            out.set(n + i, n + j, odd.eval(-x[j])?);
        }
    }
    Ok(out)
}

/// Maximum number of sign patterns tried while hunting a nonsingular node
/// matrix.
const MAX_SIGN_PATTERNS: u64 = 1 << 20;
const NODE_DET_TOL: f64 = 1e-8;

/// For functions g₁…g_m drawn from the plain/even/odd power families (all
/// multiplicative), produces a node vector u and vectors vᵢ with
/// vᵢᵀ gⱼ[u] = δᵢⱼ. Then for F = Σ cᵢgᵢ, the quadratic form vᵢᵀ F[uuᵀ] vᵢ
/// equals cᵢ — the vᵢ do not depend on the coefficients at all.
///
/// Nodes come from the fixed grid xⱼ = (2j−1)/(2n+1); signs are enumerated in
/// Gray-code order until the leading m×m node matrix (gᵢ(uⱼ)) is comfortably
/// nonsingular. All-plain inputs keep u inside (0,1)ⁿ.
pub fn witness_vectors(gs: &[PowerMap], cs: &[f64], n: usize) -> Result<(Vector, Vec<Vector>)> {
    let m = gs.len();
    if m == 0 {
        return Err(Error::EmptyInput("witness functions"));
    }
    if cs.len() != m {
        return Err(Error::DimensionMismatch { left: m, right: cs.len() });
    }
    if m > n {
        return Err(Error::InvalidParameter(format!(
            "need at least as many nodes as functions: m = {m} > n = {n}"
        )));
    }
    let mut any_plain = false;
    let mut any_signed = false;
    for g in gs {
        match g.family() {
            PowerFamily::Plain => any_plain = true,
            PowerFamily::Even | PowerFamily::Odd => any_signed = true,
            other => {
                return Err(Error::InvalidParameter(format!(
                    "witness functions must be plain/even/odd powers, got {}",
                    other.label()
                )))
            }
        }
    }
    if any_plain && any_signed {
        return Err(Error::InvalidParameter(
            "plain powers cannot mix with even/odd ones: the sign search leaves their domain".into(),
        ));
    }
    let all_plain = any_plain;
    for (i, a) in gs.iter().enumerate() {
        for b in gs.iter().skip(i + 1) {
            if a == b {
                return Err(Error::InvalidParameter(format!("duplicate witness function {a}")));
            }
        }
    }

    let nodes: Vec<f64> = (1..=n).map(|j| (2 * j - 1) as f64 / (2 * n + 1) as f64).collect();
    let patterns = if all_plain { 1 } else { MAX_SIGN_PATTERNS.min(1u64 << n.min(20)) };

    for k in 0..patterns {
        let gray = k ^ (k >> 1);
        let u_entries: Vec<f64> = nodes
            .iter()
            .enumerate()
            .map(|(j, &x)| if (gray >> j) & 1 == 1 { -x } else { x })
            .collect();

        let mut node_matrix = GeneralMatrix::zeros(m, m);
        let mut scale = 1.0f64;
        for (i, g) in gs.iter().enumerate() {
            let mut row_max = 0.0f64;
            for (j, &u_j) in u_entries.iter().take(m).enumerate() {
                let v = g.eval(u_j)?;
                node_matrix.set(i, j, v);
                row_max = row_max.max(v.abs());
            }
            scale *= row_max.max(f64::MIN_POSITIVE);
        }
        let det = determinant(&node_matrix)?;
        if det.abs() <= NODE_DET_TOL * scale {
            continue;
        }

        // g_i[u] as columns of the n×m matrix G; solve GᵀG y = e_i and take
        // v_i = G y, which satisfies Gᵀ v_i = e_i.
        let u = Vector::new(u_entries)?;
        let mut g_cols = GeneralMatrix::zeros(n, m);
        for (i, g) in gs.iter().enumerate() {
            let gi = g.apply_vec(&u)?;
            for j in 0..n {
                g_cols.set(j, i, gi[j]);
            }
        }
        let normal = g_cols.gram_transpose();
        let mut vs = Vec::with_capacity(m);
        for i in 0..m {
            let mut rhs = vec![0.0; m];
            rhs[i] = 1.0;
            let y = solve_refined(&normal, &rhs)?;
            let v = (0..n)
                .map(|j| (0..m).map(|c| g_cols.get(j, c) * y[c]).sum())
                .collect::<Vec<f64>>();
            vs.push(Vector::new(v)?);
        }
        return Ok((u, vs));
    }
    Err(Error::SearchFailure(
        "no sign pattern produced a nonsingular node matrix for the witness functions".into(),
    ))
}

/// Residual of the additive integral identity
/// `f[A+B] = f[A] + α ∫₀¹ B ∘ f'[A + tB] dt`, where f' is the formal
/// derivative family (plain ↦ plain, even ↦ odd, odd ↦ even, exponent α−1).
///
/// Evaluated with composite Simpson starting from `quad_points` intervals and
/// doubling until two successive residuals differ by less than 1e-10 or the
/// point budget 2¹⁵ is reached. Returns the max-norm of the final residual.
pub fn superadd_integral_residual(
    p: &PowerMap,
    a: &SymmetricMatrix,
    b: &SymmetricMatrix,
    quad_points: usize,
) -> Result<f64> {
    if p.alpha() <= 1.0 {
        return Err(Error::InvalidParameter(format!(
            "integral identity needs exponent > 1, got {}",
            p.alpha()
        )));
    }
    if quad_points < 8 {
        return Err(Error::InvalidParameter("need at least 8 quadrature points".into()));
    }
    if a.n() != b.n() {
        return Err(Error::DimensionMismatch { left: a.n(), right: b.n() });
    }
    let derivative = p.derivative()?;
    let lhs = p.apply(&a.add(b)?)?;
    let base = p.apply(a)?;
    let target = lhs.sub(&base)?;

    let residual_for = |intervals: usize| -> Result<f64> {
        let integral = simpson_matrix(
            |t| b.hadamard(&derivative.map.apply(&a.add(&b.scale(t))?)?),
            0.0,
            1.0,
            intervals,
        )?;
        Ok(target.sub(&integral.scale(derivative.coefficient))?.max_norm())
    };

    let mut intervals = quad_points.next_multiple_of(2);
    let mut residual = residual_for(intervals)?;
    while intervals < (1 << 15) {
        intervals *= 2;
        let next = residual_for(intervals)?;
        let settled = (next - residual).abs() < 1e-10;
        residual = next;
        if settled {
            break;
        }
    }
    Ok(residual)
}

/// The sub-additivity gap of a negative power on a rank-one 2×2 cone, in log
/// coordinates: f(x, y) = e^{αx} + e^{αy} − (e^x + e^y)^α and g = ln f.
/// For α < 0 the gap is strictly positive, and g is midpoint-convex.
pub fn subadd_gap_2x2(alpha: f64, x: f64, y: f64) -> Result<(f64, f64)> {
    if alpha >= 0.0 || !alpha.is_finite() {
        return Err(Error::InvalidParameter(format!("gap is defined for negative exponents, got {alpha}")));
    }
    if !x.is_finite() || !y.is_finite() {
        return Err(Error::Domain("gap arguments must be finite".into()));
    }
    // ln(e^x + e^y) computed stably
    let hi = x.max(y);
    let lo = x.min(y);
    let log_sum = hi + (1.0 + (lo - hi).exp()).ln();
    let f_val = (alpha * x).exp() + (alpha * y).exp() - (alpha * log_sum).exp();
    if !f_val.is_finite() {
        return Err(Error::Range(format!("gap overflows at ({x}, {y})")));
    }
    if f_val <= 0.0 {
        return Err(Error::Range(format!("gap unexpectedly non-positive at ({x}, {y})")));
    }
    Ok((f_val, f_val.ln()))
}
