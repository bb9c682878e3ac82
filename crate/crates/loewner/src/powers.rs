//! The entrywise power families and their formal derivatives.
//!
//! Four user-facing families share the exponent α:
//!
//! * `Plain`:  x^α on nonnegative arguments, with 0 ↦ 0;
//! * `Even`:   |x|^α, with 0 ↦ 0;
//! * `Odd`:    sign(x)·|x|^α, with 0 ↦ 0;
//! * `Blend`:  λ·Even + (1−λ)·Odd for λ ∈ [0, 1].
//!
//! A fifth internal tag, `BlendSwapped` (λ·Odd + (1−λ)·Even), keeps the
//! derivative rule closed: differentiating a blend swaps the even and odd
//! parts, d/dx [λ|x|^α + (1−λ)·sign(x)|x|^α] = α·[λ·sign(x)|x|^{α−1} + (1−λ)|x|^{α−1}].

use crate::error::{Error, Result};
use crate::linalg::{SymmetricMatrix, Vector};

/// Entries whose image would exceed this magnitude are a range error rather
/// than ±∞; the eigensolver downstream requires finite input.
pub const OVERFLOW_LIMIT: f64 = 1e300;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum PowerFamily {
    Plain,
    Even,
    Odd,
    Blend { lambda: f64 },
    BlendSwapped { lambda: f64 },
}

impl PowerFamily {
    pub fn label(&self) -> &'static str {
        match self {
            PowerFamily::Plain => "plain",
            PowerFamily::Even => "even",
            PowerFamily::Odd => "odd",
            PowerFamily::Blend { .. } => "blend",
            PowerFamily::BlendSwapped { .. } => "blend-swapped",
        }
    }

    /// Normalizes degenerate blends: a swapped blend with weight λ is the
    /// plain blend with weight 1−λ, and weights 0 and 1 reduce to the pure
    /// odd/even families.
    pub fn canonical(self) -> PowerFamily {
        let family = match self {
            PowerFamily::BlendSwapped { lambda } => PowerFamily::Blend { lambda: 1.0 - lambda },
            f => f,
        };
        #[allow(clippy::redundant_guards)] // float literal patterns are rejected
        match family {
            PowerFamily::Blend { lambda } if lambda == 0.0 => PowerFamily::Odd,
            PowerFamily::Blend { lambda } if lambda == 1.0 => PowerFamily::Even,
            f => f,
        }
    }
}

/// One power map: a family tag plus the exponent α.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PowerMap {
    family: PowerFamily,
    alpha: f64,
}

/// Formal derivative `coefficient · map`, e.g. d/dx |x|^α = α·sign(x)|x|^{α−1}.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DerivativeResult {
    pub coefficient: f64,
    pub map: PowerMap,
}

impl PowerMap {
    pub fn new(family: PowerFamily, alpha: f64) -> Result<Self> {
        if !alpha.is_finite() {
            return Err(Error::InvalidParameter(format!("exponent must be finite, got {alpha}")));
        }
        if let PowerFamily::Blend { lambda } | PowerFamily::BlendSwapped { lambda } = family {
            if !(0.0..=1.0).contains(&lambda) {
                return Err(Error::InvalidParameter(format!(
                    "blend weight must lie in [0, 1], got {lambda}"
                )));
            }
        }
        Ok(PowerMap { family, alpha })
    }

    pub fn plain(alpha: f64) -> Self {
        PowerMap { family: PowerFamily::Plain, alpha }
    }

    pub fn even(alpha: f64) -> Self {
        PowerMap { family: PowerFamily::Even, alpha }
    }

    pub fn odd(alpha: f64) -> Self {
        PowerMap { family: PowerFamily::Odd, alpha }
    }

    pub fn blend(lambda: f64, alpha: f64) -> Result<Self> {
        Self::new(PowerFamily::Blend { lambda }, alpha)
    }

    pub fn family(&self) -> PowerFamily {
        self.family
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// Evaluates the map at a scalar.
    pub fn eval(&self, x: f64) -> Result<f64> {
        if !x.is_finite() {
            return Err(Error::Domain(format!("power map applied to non-finite value {x}")));
        }
        match self.family {
            PowerFamily::Plain => {
                if x < 0.0 {
                    Err(Error::Domain(format!(
                        "plain power x^{} is undefined at negative x = {x}",
                        self.alpha
                    )))
                } else {
                    abs_pow(x, self.alpha)
                }
            }
            PowerFamily::Even => abs_pow(x.abs(), self.alpha),
            PowerFamily::Odd => Ok(signum0(x) * abs_pow(x.abs(), self.alpha)?),
            PowerFamily::Blend { lambda } => {
                let even = abs_pow(x.abs(), self.alpha)?;
                Ok(lambda * even + (1.0 - lambda) * signum0(x) * even)
            }
            PowerFamily::BlendSwapped { lambda } => {
                let even = abs_pow(x.abs(), self.alpha)?;
                Ok(lambda * signum0(x) * even + (1.0 - lambda) * even)
            }
        }
    }

    /// Applies the map to every entry; symmetry is preserved. Scalar errors
    /// carry the offending entry's indices.
    pub fn apply(&self, a: &SymmetricMatrix) -> Result<SymmetricMatrix> {
        let n = a.n();
        let mut failure = None;
        let result = SymmetricMatrix::from_fn(n, |i, j| match self.eval(a.get(i, j)) {
            Ok(v) => v,
            Err(e) => {
                if failure.is_none() {
                    failure = Some(annotate(e, i, j));
                }
                0.0
            }
        });
        match failure {
            Some(e) => Err(e),
            None => result,
        }
    }

    /// Applies the map to every entry of a vector.
    pub fn apply_vec(&self, u: &Vector) -> Result<Vector> {
        let entries: Result<Vec<f64>> = u.iter().map(|&x| self.eval(x)).collect();
        Vector::new(entries?)
    }

    /// Formal derivative. Undefined for the constant-on-rays map α = 0.
    pub fn derivative(&self) -> Result<DerivativeResult> {
        if self.alpha == 0.0 {
            return Err(Error::Unsupported("derivative of a zeroth power".into()));
        }
        let family = match self.family {
            PowerFamily::Plain => PowerFamily::Plain,
            PowerFamily::Even => PowerFamily::Odd,
            PowerFamily::Odd => PowerFamily::Even,
            PowerFamily::Blend { lambda } => PowerFamily::BlendSwapped { lambda },
            PowerFamily::BlendSwapped { lambda } => PowerFamily::Blend { lambda },
        };
        Ok(DerivativeResult {
            coefficient: self.alpha,
            map: PowerMap { family, alpha: self.alpha - 1.0 },
        })
    }
}

fn signum0(x: f64) -> f64 {
    if x > 0.0 {
        1.0
    } else if x < 0.0 {
        -1.0
    } else {
        0.0
    }
}

/// |x|^α as exp(α·ln|x|), with 0 ↦ 0 and 1 ↦ 1 exact. The exp/ln route keeps
/// negative-base handling out of the platform `powf`.
fn abs_pow(x_abs: f64, alpha: f64) -> Result<f64> {
    debug_assert!(x_abs >= 0.0);
    if x_abs == 0.0 {
        return Ok(0.0);
    }
    if x_abs == 1.0 {
        return Ok(1.0);
    }
    let v = (alpha * x_abs.ln()).exp();
    if !v.is_finite() || v.abs() > OVERFLOW_LIMIT {
        return Err(Error::Range(format!("|{x_abs}|^{alpha} overflows")));
    }
    Ok(v)
}

fn annotate(e: Error, i: usize, j: usize) -> Error {
    match e {
        Error::Domain(msg) => Error::Domain(format!("entry ({i},{j}): {msg}")),
        Error::Range(msg) => Error::Range(format!("entry ({i},{j}): {msg}")),
        other => other,
    }
}

/// Textual syntax used by the CLI: `family:α`, or `blend:λ:α`.
impl std::str::FromStr for PowerMap {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let bad = |msg: &str| Error::Parse(format!("power map {s:?}: {msg}"));
        let num = |t: &str| t.trim().parse::<f64>().map_err(|e| bad(&format!("bad number {t:?} ({e})")));
        match parts.as_slice() {
            [fam, alpha] => {
                let alpha = num(alpha)?;
                match fam.trim() {
                    "plain" => Ok(PowerMap::plain(alpha)),
                    "even" => Ok(PowerMap::even(alpha)),
                    "odd" => Ok(PowerMap::odd(alpha)),
                    "blend" => Err(bad("blend takes two numbers, blend:lambda:alpha")),
                    other => Err(bad(&format!("unknown family {other:?} (plain, even, odd, blend)"))),
                }
            }
            [fam, lambda, alpha] if fam.trim() == "blend" => {
                PowerMap::blend(num(lambda)?, num(alpha)?)
            }
            _ => Err(bad("expected family:alpha or blend:lambda:alpha")),
        }
    }
}

impl std::fmt::Display for PowerMap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.family {
            PowerFamily::Blend { lambda } => write!(f, "blend:{}:{}", lambda, self.alpha),
            PowerFamily::BlendSwapped { lambda } => {
                write!(f, "blend-swapped:{}:{}", lambda, self.alpha)
            }
            fam => write!(f, "{}:{}", fam.label(), self.alpha),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() <= 1e-12 * (1.0 + b.abs())
    }

    #[test]
    fn scalar_examples() {
        assert!(close(PowerMap::odd(3.0).eval(-2.0).unwrap(), -8.0));
        assert!(close(PowerMap::even(2.0).eval(-3.0).unwrap(), 9.0));
        assert_eq!(PowerMap::plain(-1.0).eval(0.0).unwrap(), 0.0);
        assert_eq!(PowerMap::even(0.0).eval(-5.0).unwrap(), 1.0);
        assert_eq!(PowerMap::odd(0.0).eval(-5.0).unwrap(), -1.0);
    }

    #[test]
    fn plain_rejects_negatives() {
        assert!(matches!(PowerMap::plain(1.5).eval(-0.1), Err(Error::Domain(_))));
    }

    #[test]
    fn overflow_is_a_range_error() {
        assert!(matches!(PowerMap::plain(-400.0).eval(1e-3), Err(Error::Range(_))));
    }

    #[test]
    fn blend_is_the_convex_combination() {
        let b = PowerMap::blend(0.25, 1.5).unwrap();
        let even = PowerMap::even(1.5).eval(-0.7).unwrap();
        let odd = PowerMap::odd(1.5).eval(-0.7).unwrap();
        let expect = 0.25 * even + 0.75 * odd;
        assert!((b.eval(-0.7).unwrap() - expect).abs() <= 1e-15);
        assert!(PowerMap::blend(1.5, 1.0).is_err());
    }

    #[test]
    fn apply_examples() {
        let a = SymmetricMatrix::from_rows(&[vec![0.5, 0.25], vec![0.25, 1.0]]).unwrap();
        assert_eq!(PowerMap::plain(1.0).apply(&a).unwrap(), a);
        assert_eq!(
            PowerMap::plain(2.0).apply(&SymmetricMatrix::ones(3)).unwrap(),
            SymmetricMatrix::ones(3)
        );
        let flip = SymmetricMatrix::from_rows(&[vec![1.0, -1.0], vec![-1.0, 1.0]]).unwrap();
        assert_eq!(PowerMap::even(1.0).apply(&flip).unwrap(), SymmetricMatrix::ones(2));
    }

    #[test]
    fn apply_annotates_the_entry() {
        let a = SymmetricMatrix::from_rows(&[vec![1.0, -1.0], vec![-1.0, 1.0]]).unwrap();
        match PowerMap::plain(2.0).apply(&a) {
            Err(Error::Domain(msg)) => assert!(msg.contains("(0,1)"), "message: {msg}"),
            other => panic!("expected a domain error, got {other:?}"),
        }
    }

    #[test]
    fn derivative_rules() {
        let d = PowerMap::even(5.0).derivative().unwrap();
        assert_eq!(d.coefficient, 5.0);
        assert_eq!(d.map, PowerMap::odd(4.0));

        let d = PowerMap::odd(2.0).derivative().unwrap();
        assert_eq!(d.coefficient, 2.0);
        assert_eq!(d.map, PowerMap::even(1.0));

        let d = PowerMap::plain(5.0).derivative().unwrap();
        assert_eq!(d.map, PowerMap::plain(4.0));

        assert!(PowerMap::even(0.0).derivative().is_err());

        let b = PowerMap::blend(0.3, 2.0).unwrap();
        let db = b.derivative().unwrap();
        assert_eq!(db.map.family(), PowerFamily::BlendSwapped { lambda: 0.3 });
        let ddb = db.map.derivative().unwrap();
        assert_eq!(ddb.map.family(), PowerFamily::Blend { lambda: 0.3 });
    }

    #[test]
    fn finite_difference_matches_derivative() {
        let h = 1e-5;
        for &alpha in &[1.5, 2.0, 3.7] {
            for &x in &[0.3, 1.2, -0.3, -1.2] {
                for map in [PowerMap::even(alpha), PowerMap::odd(alpha), PowerMap::blend(0.4, alpha).unwrap()] {
                    let d = map.derivative().unwrap();
                    let numeric = (map.eval(x + h).unwrap() - map.eval(x - h).unwrap()) / (2.0 * h);
                    let formal = d.coefficient * d.map.eval(x).unwrap();
                    assert!(
                        (numeric - formal).abs() <= 1e-6 * (1.0 + formal.abs()),
                        "{map} at {x}: {numeric} vs {formal}"
                    );
                }
                if x > 0.0 {
                    let map = PowerMap::plain(alpha);
                    let d = map.derivative().unwrap();
                    let numeric = (map.eval(x + h).unwrap() - map.eval(x - h).unwrap()) / (2.0 * h);
                    let formal = d.coefficient * d.map.eval(x).unwrap();
                    assert!((numeric - formal).abs() <= 1e-6 * (1.0 + formal.abs()));
                }
            }
        }
    }

    #[test]
    fn parse_and_display_round_trip() {
        for text in ["plain:1.5", "even:3", "odd:2", "blend:0.5:2.5"] {
            let map: PowerMap = text.parse().unwrap();
            let again: PowerMap = map.to_string().parse().unwrap();
            assert_eq!(map, again);
        }
        assert!("cubic:2".parse::<PowerMap>().is_err());
        assert!("blend:0.5".parse::<PowerMap>().is_err());
        assert!("plain".parse::<PowerMap>().is_err());
    }
}
