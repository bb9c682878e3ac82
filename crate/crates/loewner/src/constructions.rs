//! Deterministic generators for the explicit matrix families that witness
//! every failure of a Loewner property, together with the closed-form
//! certificate each family carries (a determinant, an eigenvalue, or a
//! quadratic-form value that is provably negative).
//!
//! Formula evaluations are 1-based to match the published determinants, e.g.
//! entries 1 + ε·i·j for i, j = 1..n.

use std::collections::BTreeMap;

use crate::analysis::{determinant_sym, witness_vectors};
use crate::classifier::LoewnerProperty;
use crate::error::{Error, Result};
use crate::linalg::{eigen_sym, gram, numeric_rank, SymmetricMatrix, Vector, DEFAULT_TOL};
use crate::powers::{PowerFamily, PowerMap};

/// Matrices plus the certificate quantity proving a property failure.
#[derive(Clone, Debug, PartialEq)]
pub struct ConstructionOutput {
    /// Named roles: "A", "B" for the cone elements, "C" for the
    /// certificate-defining difference matrix.
    pub matrices: BTreeMap<String, SymmetricMatrix>,
    /// A determinant or eigenvalue that recomputes from `matrices`.
    pub certificate_value: Option<f64>,
    pub witness: Option<Vector>,
}

impl ConstructionOutput {
    fn new() -> Self {
        ConstructionOutput { matrices: BTreeMap::new(), certificate_value: None, witness: None }
    }

    fn with(mut self, role: &str, m: SymmetricMatrix) -> Self {
        self.matrices.insert(role.to_string(), m);
        self
    }

    pub fn matrix(&self, role: &str) -> Option<&SymmetricMatrix> {
        self.matrices.get(role)
    }
}

/// The ε search grid: powers of two descending from 1 to 2⁻⁴⁰, spanning the
/// "sufficiently small ε" regimes reproducibly.
pub fn epsilon_grid() -> impl Iterator<Item = f64> {
    (0..=40).map(|j| 2.0f64.powi(-j))
}

/// The matrix whose non-positivity (after applying `p`) certifies that the
/// property fails at the pair (A, B):
///
/// * positivity:       f[A]                      (B unused)
/// * monotonicity:     f[A] − f[B]               for A ⪰ B ⪰ 0
/// * convexity:        λf[A] + (1−λ)f[B] − f[λA + (1−λ)B], λ defaults to ½
/// * super-additivity: f[A+B] − f[A] − f[B]
/// * sub-additivity:   f[A] + f[B] − f[A+B]
pub fn property_difference(
    property: LoewnerProperty,
    p: &PowerMap,
    a: &SymmetricMatrix,
    b: Option<&SymmetricMatrix>,
    lambda: Option<f64>,
) -> Result<SymmetricMatrix> {
    let need_b = || b.ok_or_else(|| Error::InvalidParameter(format!("{property} needs a second matrix")));
    match property {
        LoewnerProperty::Positivity => p.apply(a),
        LoewnerProperty::Monotonicity => p.apply(a)?.sub(&p.apply(need_b()?)?),
        LoewnerProperty::Convexity => {
            let b = need_b()?;
            let lambda = lambda.unwrap_or(0.5);
            if !(0.0..=1.0).contains(&lambda) {
                return Err(Error::InvalidParameter(format!("mixing weight must lie in [0, 1], got {lambda}")));
            }
            let mix = a.scale(lambda).add(&b.scale(1.0 - lambda))?;
            p.apply(a)?
                .scale(lambda)
                .add(&p.apply(b)?.scale(1.0 - lambda))?
                .sub(&p.apply(&mix)?)
        }
        LoewnerProperty::SuperAdditivity => {
            let b = need_b()?;
            p.apply(&a.add(b)?)?.sub(&p.apply(a)?)?.sub(&p.apply(b)?)
        }
        LoewnerProperty::SubAdditivity => {
            let b = need_b()?;
            p.apply(a)?.add(&p.apply(b)?)?.sub(&p.apply(&a.add(b)?)?)
        }
    }
}

/// The rank-two matrix with entries 1 + ε·i·j (1-based indices): equals
/// 1_{n×n} + ε·wwᵀ with w = (1, …, n). Its fractional entrywise powers below
/// n−2 are not positive semidefinite for small ε.
pub fn fh_matrix(n: usize, eps: f64) -> Result<SymmetricMatrix> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("need n >= 2, got {n}")));
    }
    if eps <= 0.0 || !eps.is_finite() {
        return Err(Error::InvalidParameter(format!("need eps > 0, got {eps}")));
    }
    SymmetricMatrix::from_fn(n, |i, j| 1.0 + eps * ((i + 1) * (j + 1)) as f64)
}

/// The r×r matrix of cosines cos((i−j)π/r): rank two, since it equals
/// uuᵀ + vvᵀ for u = (cos(jπ/r))ⱼ and v = (sin(jπ/r))ⱼ.
pub fn cosine_matrix(r: usize) -> Result<SymmetricMatrix> {
    if r < 2 {
        return Err(Error::InvalidParameter(format!("need r >= 2, got {r}")));
    }
    let step = std::f64::consts::PI / r as f64;
    SymmetricMatrix::from_fn(r, |i, j| ((i as f64 - j as f64) * step).cos())
}

/// The eigenvalue of sign(x)|x|^p applied to the cosine matrix of size α+3
/// along the alternating vector (1, −1, …, 1):
/// f(p) = 1 + 2·Σ_{j=1}^{α/2+1} (−1)^j cos(jπ/(α+3))^p.
/// Zero at every odd integer p in (0, α+3) and negative on (α−1, α+1).
pub fn alternating_eigenvalue(alpha: u32, p: f64) -> Result<f64> {
    if alpha < 2 || !alpha.is_multiple_of(2) {
        return Err(Error::InvalidParameter(format!("need an even exponent >= 2, got {alpha}")));
    }
    if p <= 0.0 || !p.is_finite() {
        return Err(Error::InvalidParameter(format!("need p > 0, got {p}")));
    }
    let r = (alpha + 3) as f64;
    let plain = PowerMap::plain(p);
    let mut acc = 1.0;
    let mut sign = -1.0;
    for j in 1..=(alpha / 2 + 1) {
        let base = (j as f64 * std::f64::consts::PI / r).cos();
        acc += 2.0 * sign * plain.eval(base)?;
        sign = -sign;
    }
    Ok(acc)
}

fn checked_params(pairs: &[(&str, f64)]) -> Result<()> {
    for (name, v) in pairs {
        if !v.is_finite() {
            return Err(Error::InvalidParameter(format!("{name} must be finite, got {v}")));
        }
    }
    Ok(())
}

fn min_eig_certificate(c: &SymmetricMatrix) -> Result<(f64, Vector)> {
    let eig = eigen_sym(c)?;
    Ok((eig.eigenvalues()[0], eig.eigenvector(0).clone()))
}

/// Three-parameter family showing |x| is not Loewner monotone on 3×3 rank-two
/// matrices: B = 1_{3×3}, A = B + vvᵀ with v = (a, b, −c). Then A ⪰ B ⪰ 0 yet
/// det(|A| − |B|) = −4b²(ac−1)² < 0. Requires a > b > 0 and 1/a < c < 1/b.
pub fn mono_phi_family(a: f64, b: f64, c: f64) -> Result<ConstructionOutput> {
    checked_params(&[("a", a), ("b", b), ("c", c)])?;
    if !(a > b && b > 0.0) {
        return Err(Error::InvalidParameter(format!("need a > b > 0, got a = {a}, b = {b}")));
    }
    if !(c > 1.0 / a && c < 1.0 / b) {
        return Err(Error::InvalidParameter(format!("need 1/a < c < 1/b, got c = {c}")));
    }
    let v = Vector::new(vec![a, b, -c])?;
    let big = SymmetricMatrix::ones(3).add(&SymmetricMatrix::outer(&v)?)?;
    let small = SymmetricMatrix::ones(3);
    let diff = property_difference(LoewnerProperty::Monotonicity, &PowerMap::even(1.0), &big, Some(&small), None)?;
    let certificate = determinant_sym(&diff)?;
    let (_, witness) = min_eig_certificate(&diff)?;
    Ok(ConstructionOutput {
        certificate_value: Some(certificate),
        witness: Some(witness),
        ..ConstructionOutput::new()
    }
    .with("A", big)
    .with("B", small)
    .with("C", diff))
}

/// Three-parameter family showing sign(x)x² is not Loewner convex on 3×3
/// rank-two matrices: B = 1_{3×3}, A = B + vvᵀ, v = (a, b, −c), midpoint mix.
/// The certificate is det C = −4⁻³·[2b(ac−1)]⁴ < 0 for
/// C = ½(ψ₂[A] + ψ₂[B]) − ψ₂[(A+B)/2]. Requires 0 < b < a and
/// 1/a < c < min(1/b, 2/a).
pub fn convex_psi2_family(a: f64, b: f64, c: f64) -> Result<ConstructionOutput> {
    checked_params(&[("a", a), ("b", b), ("c", c)])?;
    if !(b > 0.0 && a > b) {
        return Err(Error::InvalidParameter(format!("need 0 < b < a, got a = {a}, b = {b}")));
    }
    if !(c > 1.0 / a && c < (1.0 / b).min(2.0 / a)) {
        return Err(Error::InvalidParameter(format!("need 1/a < c < min(1/b, 2/a), got c = {c}")));
    }
    let v = Vector::new(vec![a, b, -c])?;
    let big = SymmetricMatrix::ones(3).add(&SymmetricMatrix::outer(&v)?)?;
    let small = SymmetricMatrix::ones(3);
    let diff = property_difference(LoewnerProperty::Convexity, &PowerMap::odd(2.0), &big, Some(&small), Some(0.5))?;
    let certificate = determinant_sym(&diff)?;
    let (_, witness) = min_eig_certificate(&diff)?;
    Ok(ConstructionOutput {
        certificate_value: Some(certificate),
        witness: Some(witness),
        ..ConstructionOutput::new()
    }
    .with("A", big)
    .with("B", small)
    .with("C", diff))
}

/// Rank-one 2×2 pair showing sign(x)|x|^α is not Loewner sub-additive for any
/// α < 0: A = (1,−1)ᵀ(1,−1), B = (1,½)ᵀ(1,½),
/// C = ψ_α[A] + ψ_α[B] − ψ_α[A+B].
///
/// The certificate is the determinant of C normalized by its leading entry,
/// det(C / C₁₁); on that scale it satisfies the identity
/// 4^α·(2−2^α)·cert = 4^α + 2^α − 1 − 5^α exactly, and is negative for α < 0.
pub fn subadd_psi_2x2(alpha: f64) -> Result<ConstructionOutput> {
    if alpha >= 0.0 || !alpha.is_finite() {
        return Err(Error::InvalidParameter(format!("need alpha < 0, got {alpha}")));
    }
    let a = SymmetricMatrix::outer(&Vector::new(vec![1.0, -1.0])?)?;
    let b = SymmetricMatrix::outer(&Vector::new(vec![1.0, 0.5])?)?;
    let psi = PowerMap::odd(alpha);
    let diff = property_difference(LoewnerProperty::SubAdditivity, &psi, &a, Some(&b), None)?;
    let leading = diff.get(0, 0);
    let certificate = determinant_sym(&diff.scale(1.0 / leading))?;
    let (_, witness) = min_eig_certificate(&diff)?;
    Ok(ConstructionOutput {
        certificate_value: Some(certificate),
        witness: Some(witness),
        ..ConstructionOutput::new()
    }
    .with("A", a)
    .with("B", b)
    .with("C", diff))
}

/// Rank-one 3×3 pair showing the sign map (zeroth odd power) is not Loewner
/// sub-additive beyond 2×2: A = (−a, c, c)ᵀ(−a, c, c), B = (c, −b, c)ᵀ(c, −b, c)
/// for 0 < a < b < c. The certificate is the minimal eigenvalue of
/// sign[A] + sign[B] − sign[A+B], which is negative.
pub fn subadd_psi0_family(a: f64, b: f64, c: f64) -> Result<ConstructionOutput> {
    checked_params(&[("a", a), ("b", b), ("c", c)])?;
    if !(a > 0.0 && b > a && c > b) {
        return Err(Error::InvalidParameter(format!("need 0 < a < b < c, got {a}, {b}, {c}")));
    }
    let big = SymmetricMatrix::outer(&Vector::new(vec![-a, c, c])?)?;
    let small = SymmetricMatrix::outer(&Vector::new(vec![c, -b, c])?)?;
    let diff = property_difference(LoewnerProperty::SubAdditivity, &PowerMap::odd(0.0), &big, Some(&small), None)?;
    let (certificate, witness) = min_eig_certificate(&diff)?;
    Ok(ConstructionOutput {
        certificate_value: Some(certificate),
        witness: Some(witness),
        ..ConstructionOutput::new()
    }
    .with("A", big)
    .with("B", small)
    .with("C", diff))
}

/// Rank-one pair showing a proper blend of the even and odd first powers is
/// not sub-additive: A = 1_{2×2} ⊕ 0, B = [[1,−1],[−1,1]] ⊕ 0. The attached
/// certificate uses the midpoint blend (λ = ½, α = 1).
pub fn blend_subadd_counterexample(n: usize) -> Result<ConstructionOutput> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("need n >= 2, got {n}")));
    }
    let a = SymmetricMatrix::ones(2).pad_direct_sum(n - 2);
    let b = SymmetricMatrix::outer(&Vector::new(vec![1.0, -1.0])?)?.pad_direct_sum(n - 2);
    let midpoint = PowerMap::blend(0.5, 1.0)?;
    let diff = property_difference(LoewnerProperty::SubAdditivity, &midpoint, &a, Some(&b), None)?;
    let (certificate, witness) = min_eig_certificate(&diff)?;
    Ok(ConstructionOutput {
        certificate_value: Some(certificate),
        witness: Some(witness),
        ..ConstructionOutput::new()
    }
    .with("A", a)
    .with("B", b)
    .with("C", diff))
}

/// Generalized binomial coefficient (α over i).
fn binomial(alpha: f64, i: u32) -> f64 {
    (0..i).fold(1.0, |acc, j| acc * (alpha - j as f64) / (j as f64 + 1.0))
}

fn integer_exponent(alpha: f64) -> Option<i64> {
    let r = alpha.round();
    ((alpha - r).abs() <= crate::classifier::LATTICE_TOL).then_some(r as i64)
}

/// x^i on the reals, expressed in the even/odd families so it stays
/// multiplicative on mixed-sign vectors.
fn integer_power_map(i: u32) -> PowerMap {
    if i.is_multiple_of(2) {
        PowerMap::even(i as f64)
    } else {
        PowerMap::odd(i as f64)
    }
}

/// A rank-one super-additivity violation: vectors u, x and (for fractional
/// plain powers) a shift ε₀ with xᵀ(f[1 + ε₀uuᵀ] − 1 − f[ε₀uuᵀ])x < 0.
///
/// Supported exponents: plain α ∈ (1, n) non-integer (certificate negative
/// for some ε₀ in the power-of-two grid), even family with α an odd integer
/// in [1, n), and odd family with α an even integer in [2, n) (certificate
/// −1 up to solver roundoff, with ε₀ = 1).
pub fn superadd_witness(p: &PowerMap, n: usize) -> Result<ConstructionOutput> {
    let alpha = p.alpha();
    let unsupported = || {
        Error::Unsupported(format!(
            "super-additivity witness is defined for plain non-integers in (1, n), \
             even odd-integers in [1, n), odd even-integers in [2, n); got {p} at n = {n}"
        ))
    };

    // gs: the multiplicative pieces of f[1 + uuᵀ] − 1 − f[uuᵀ]; the witness is
    // the vector dual to the final piece, whose coefficient is −1 (times ε^α).
    let gs: Vec<PowerMap> = match p.family() {
        PowerFamily::Plain => {
            if integer_exponent(alpha).is_some() || alpha <= 1.0 || alpha >= n as f64 {
                return Err(unsupported());
            }
            let floor = alpha.floor() as u32;
            (1..=floor)
                .map(|i| PowerMap::plain(i as f64))
                .chain(std::iter::once(PowerMap::plain(alpha)))
                .collect()
        }
        PowerFamily::Even => match integer_exponent(alpha) {
            Some(m) if m % 2 == 1 && m >= 1 && (m as f64) < n as f64 => (1..m as u32)
                .map(integer_power_map)
                .chain([PowerMap::odd(m as f64), PowerMap::even(m as f64)])
                .collect(),
            _ => return Err(unsupported()),
        },
        PowerFamily::Odd => match integer_exponent(alpha) {
            Some(m) if m % 2 == 0 && m >= 2 && (m as f64) < n as f64 => (1..m as u32)
                .map(integer_power_map)
                .chain([PowerMap::even(m as f64), PowerMap::odd(m as f64)])
                .collect(),
            _ => return Err(unsupported()),
        },
        _ => return Err(unsupported()),
    };
    let m = gs.len();
    if m > n {
        return Err(unsupported());
    }
    let mut cs: Vec<f64> = (1..m as u32).map(|i| binomial(alpha, i)).collect();
    cs.push(-1.0);
    let (u, vs) = witness_vectors(&gs, &cs, n)?;
    let x = vs[m - 1].clone();

    let ones = SymmetricMatrix::ones(n);
    let grid: Vec<f64> = if p.family() == PowerFamily::Plain {
        epsilon_grid().collect()
    } else {
        vec![1.0]
    };
    for eps in grid {
        let shift = SymmetricMatrix::outer(&u)?.scale(eps);
        let diff = property_difference(LoewnerProperty::SuperAdditivity, p, &ones, Some(&shift), None)?;
        let value = diff.quadratic_form(&x);
        if value < 0.0 {
            return Ok(ConstructionOutput {
                certificate_value: Some(value),
                witness: Some(x),
                ..ConstructionOutput::new()
            }
            .with("A", ones)
            .with("B", shift)
            .with("C", diff));
        }
    }
    Err(Error::SearchFailure(format!(
        "no epsilon in the power-of-two grid made the super-additivity form negative for {p}, n = {n}"
    )))
}

/// Extends an orthonormal set to `extra` more orthonormal vectors by
/// Gram–Schmidt over the standard basis, re-orthogonalizing each candidate
/// twice.
fn orthonormal_completion(existing: &[Vector], extra: usize, n: usize) -> Result<Vec<Vector>> {
    let mut accepted: Vec<Vector> = existing.to_vec();
    let mut fresh = Vec::new();
    for seed in 0..n {
        if fresh.len() == extra {
            break;
        }
        let mut w: Vec<f64> = (0..n).map(|i| if i == seed { 1.0 } else { 0.0 }).collect();
        for _ in 0..2 {
            for b in &accepted {
                let proj: f64 = w.iter().zip(b.iter()).map(|(x, y)| x * y).sum();
                for (wi, bi) in w.iter_mut().zip(b.iter()) {
                    *wi -= proj * bi;
                }
            }
        }
        let norm = w.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-6 {
            let unit = Vector::new(w.into_iter().map(|x| x / norm).collect())?;
            accepted.push(unit.clone());
            fresh.push(unit);
        }
    }
    if fresh.len() < extra {
        return Err(Error::SearchFailure(format!(
            "could not extend the eigenbasis by {extra} orthonormal directions"
        )));
    }
    Ok(fresh)
}

/// Lifts a rank-l violation to rank exactly k by shifting both matrices with
/// ε₀·C, where C sums k−l rank-one blocks orthogonal to the range of A. The
/// shift ε₀ is halved from 1 until A + ε₀C has numeric rank k and the original
/// witness still produces a negative quadratic form (convexity certificates
/// are rechecked at the midpoint mix).
pub fn rank_lift(
    out: &ConstructionOutput,
    k: usize,
    p: &PowerMap,
    property: LoewnerProperty,
) -> Result<ConstructionOutput> {
    let a = out
        .matrix("A")
        .ok_or_else(|| Error::InvalidParameter("rank_lift needs a matrix in role \"A\"".into()))?;
    let witness = out
        .witness
        .as_ref()
        .ok_or_else(|| Error::InvalidParameter("rank_lift needs the violation witness".into()))?;
    let b = out.matrix("B");
    let n = a.n();
    if k > n {
        return Err(Error::InvalidParameter(format!("target rank {k} exceeds dimension {n}")));
    }
    let l = numeric_rank(a, DEFAULT_TOL)?;
    if l >= k {
        return Err(Error::InvalidParameter(format!("matrix already has rank {l} >= target {k}")));
    }

    let eig = eigen_sym(a)?;
    let cutoff = DEFAULT_TOL * (1.0 + a.frobenius_norm());
    let range_basis: Vec<Vector> = (0..n)
        .filter(|&i| eig.eigenvalues()[i].abs() > cutoff)
        .map(|i| eig.eigenvector(i).clone())
        .collect();
    let completion = orthonormal_completion(&range_basis, k - l, n)?;
    let shift = gram(&completion)?;

    for eps in epsilon_grid() {
        let lifted_a = a.add(&shift.scale(eps))?;
        let lifted_b = match b {
            Some(b) => Some(b.add(&shift.scale(eps))?),
            None => None,
        };
        if numeric_rank(&lifted_a, DEFAULT_TOL)? != k {
            continue;
        }
        let diff = property_difference(property, p, &lifted_a, lifted_b.as_ref(), Some(0.5))?;
        let value = diff.quadratic_form(witness);
        if value < 0.0 {
            let mut result = ConstructionOutput {
                certificate_value: Some(value),
                witness: Some(witness.clone()),
                ..ConstructionOutput::new()
            }
            .with("A", lifted_a)
            .with("C", diff);
            if let Some(lb) = lifted_b {
                result = result.with("B", lb);
            }
            return Ok(result);
        }
    }
    Err(Error::SearchFailure(format!(
        "no epsilon >= 2^-40 kept the {property} certificate negative at rank {k}"
    )))
}
