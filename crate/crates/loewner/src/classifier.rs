//! Exact classification: for each Loewner property, power family, and
//! rank-constrained cone, the set of exponents preserving the property, the
//! critical exponents, and the minimal dimension at which an even/odd power
//! first breaks positivity.

use crate::error::{Error, Result};
use crate::powers::PowerFamily;

/// Exactness tolerance for integer-lattice membership; CLI inputs are decimal.
pub const LATTICE_TOL: f64 = 1e-12;

/// The five Loewner properties of entrywise maps.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LoewnerProperty {
    Positivity,
    Monotonicity,
    Convexity,
    SuperAdditivity,
    SubAdditivity,
}

impl LoewnerProperty {
    pub const ALL: [LoewnerProperty; 5] = [
        LoewnerProperty::Positivity,
        LoewnerProperty::Monotonicity,
        LoewnerProperty::Convexity,
        LoewnerProperty::SuperAdditivity,
        LoewnerProperty::SubAdditivity,
    ];

    pub fn label(&self) -> &'static str {
        match self {
            LoewnerProperty::Positivity => "positivity",
            LoewnerProperty::Monotonicity => "monotonicity",
            LoewnerProperty::Convexity => "convexity",
            LoewnerProperty::SuperAdditivity => "super-additivity",
            LoewnerProperty::SubAdditivity => "sub-additivity",
        }
    }
}

impl std::str::FromStr for LoewnerProperty {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "positivity" | "pos" => Ok(LoewnerProperty::Positivity),
            "monotonicity" | "mono" => Ok(LoewnerProperty::Monotonicity),
            "convexity" | "conv" => Ok(LoewnerProperty::Convexity),
            "super-additivity" | "superadditivity" | "super" => Ok(LoewnerProperty::SuperAdditivity),
            "sub-additivity" | "subadditivity" | "sub" => Ok(LoewnerProperty::SubAdditivity),
            other => Err(Error::Parse(format!("unknown property {other:?}"))),
        }
    }
}

impl std::fmt::Display for LoewnerProperty {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

/// Entry domain of the cone: nonnegative entries (plain powers) or all reals.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EntryDomain {
    Nonneg,
    Real,
}

impl EntryDomain {
    pub fn label(&self) -> &'static str {
        match self {
            EntryDomain::Nonneg => "nonneg",
            EntryDomain::Real => "real",
        }
    }
}

/// The cone of n×n positive semidefinite matrices of rank at most k with
/// entries in the given domain.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Cone {
    n: usize,
    k: usize,
    domain: EntryDomain,
}

impl Cone {
    pub fn new(n: usize, k: usize, domain: EntryDomain) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidParameter(format!("cone dimension must be >= 2, got {n}")));
        }
        if k < 1 || k > n {
            return Err(Error::InvalidParameter(format!("rank bound must satisfy 1 <= k <= n, got k = {k}, n = {n}")));
        }
        Ok(Cone { n, k, domain })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn domain(&self) -> EntryDomain {
        self.domain
    }
}

/// Three-valued membership: blends are only partially classified.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Membership {
    In,
    Out,
    Unknown,
}

/// One piece of a classification set.
#[derive(Clone, Debug, PartialEq)]
pub enum SetComponent {
    /// [start, ∞) when closed, (start, ∞) otherwise. `start
    /// = -∞` encodes the whole real line.
    Ray { start: f64, closed: bool },
    /// start, start + step, start + 2·step, ... (an arithmetic set of
    /// integers, e.g. the naturals or the odd naturals).
    IntegerProgression { start: i64, step: i64 },
    /// A bounded or half-bounded interval.
    Interval { lo: f64, hi: f64, lo_closed: bool, hi_closed: bool },
    /// Finitely many points.
    FinitePoints(Vec<f64>),
}

impl SetComponent {
    fn contains(&self, alpha: f64) -> bool {
        match self {
            SetComponent::Ray { start, closed } => {
                if *start == f64::NEG_INFINITY {
                    true
                } else if *closed {
                    alpha >= *start
                } else {
                    alpha > *start
                }
            }
            SetComponent::IntegerProgression { start, step } => {
                let offset = (alpha - *start as f64) / *step as f64;
                let j = offset.round();
                j >= 0.0 && (alpha - (*start as f64 + j * *step as f64)).abs() <= LATTICE_TOL
            }
            SetComponent::Interval { lo, hi, lo_closed, hi_closed } => {
                let above = if *lo_closed { alpha >= *lo } else { alpha > *lo };
                let below = if *hi_closed { alpha <= *hi } else { alpha < *hi };
                above && below
            }
            SetComponent::FinitePoints(points) => points.iter().any(|p| (alpha - p).abs() <= LATTICE_TOL),
        }
    }
}

fn fmt_bound(x: f64) -> String {
    if x == x.trunc() && x.abs() < 1e15 {
        format!("{}", x as i64)
    } else {
        format!("{x}")
    }
}

impl std::fmt::Display for SetComponent {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SetComponent::Ray { start, closed } => {
                if *start == f64::NEG_INFINITY {
                    write!(f, "ℝ")
                } else if *closed {
                    write!(f, "[{}, ∞)", fmt_bound(*start))
                } else {
                    write!(f, "({}, ∞)", fmt_bound(*start))
                }
            }
            SetComponent::IntegerProgression { start: 1, step: 1 } => write!(f, "ℕ"),
            SetComponent::IntegerProgression { start: 2, step: 2 } => write!(f, "2ℕ"),
            SetComponent::IntegerProgression { start: 1, step: 2 } => write!(f, "(−1+2ℕ)"),
            SetComponent::IntegerProgression { start, step } => {
                write!(f, "{{{start} + {step}j : j ≥ 0}}")
            }
            SetComponent::Interval { lo, hi, lo_closed, hi_closed } => {
                let open = if *lo == f64::NEG_INFINITY { "(−∞".to_string() } else {
                    format!("{}{}", if *lo_closed { "[" } else { "(" }, fmt_bound(*lo))
                };
                let close = if *hi == f64::INFINITY { "∞)".to_string() } else {
                    format!("{}{}", fmt_bound(*hi), if *hi_closed { "]" } else { ")" })
                };
                write!(f, "{open}, {close}")
            }
            SetComponent::FinitePoints(points) => {
                let body: Vec<String> = points.iter().map(|&p| fmt_bound(p)).collect();
                write!(f, "{{{}}}", body.join(", "))
            }
        }
    }
}

/// An exact classification set: a union of components, plus regions where
/// membership is genuinely undetermined (blend families below their critical
/// exponent).
#[derive(Clone, Debug, PartialEq)]
pub struct PowerSet {
    components: Vec<SetComponent>,
    unknown: Vec<SetComponent>,
}

impl PowerSet {
    pub fn new(components: Vec<SetComponent>) -> Self {
        PowerSet { components, unknown: Vec::new() }
    }

    pub fn with_unknown(components: Vec<SetComponent>, unknown: Vec<SetComponent>) -> Self {
        PowerSet { components, unknown }
    }

    pub fn components(&self) -> &[SetComponent] {
        &self.components
    }

    pub fn unknown_components(&self) -> &[SetComponent] {
        &self.unknown
    }

    pub fn contains(&self, alpha: f64) -> Membership {
        if self.components.iter().any(|c| c.contains(alpha)) {
            Membership::In
        } else if self.unknown.iter().any(|c| c.contains(alpha)) {
            Membership::Unknown
        } else {
            Membership::Out
        }
    }

    /// Infimum of the ray component, when the set has one.
    pub fn ray_start(&self) -> Option<f64> {
        self.components.iter().find_map(|c| match c {
            SetComponent::Ray { start, .. } => Some(*start),
            _ => None,
        })
    }
}

impl std::fmt::Display for PowerSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.components.is_empty() {
            write!(f, "∅")?;
        } else {
            let body: Vec<String> = self.components.iter().map(|c| c.to_string()).collect();
            write!(f, "{}", body.join(" ∪ "))?;
        }
        if !self.unknown.is_empty() {
            let body: Vec<String> = self.unknown.iter().map(|c| c.to_string()).collect();
            write!(f, " (unknown on {})", body.join(" ∪ "))?;
        }
        Ok(())
    }
}

/// Lattice of integers preserved by each family: every natural for plain
/// powers, the even naturals for even extensions, the odd naturals for odd.
fn family_lattice(family: PowerFamily) -> Result<SetComponent> {
    match family {
        PowerFamily::Plain => Ok(SetComponent::IntegerProgression { start: 1, step: 1 }),
        PowerFamily::Even => Ok(SetComponent::IntegerProgression { start: 2, step: 2 }),
        PowerFamily::Odd => Ok(SetComponent::IntegerProgression { start: 1, step: 2 }),
        other => Err(Error::Unsupported(format!(
            "no full classification set for the {} family",
            other.label()
        ))),
    }
}

/// The set of real exponents whose power map preserves the given Loewner
/// property on the cone.
///
/// Proper blends (0 < λ < 1) are only classified for sub-additivity, where no
/// positive exponent works and the nonpositive exponents are undetermined;
/// other properties are an unsupported query for blends.
pub fn power_set(property: LoewnerProperty, family: PowerFamily, cone: Cone) -> Result<PowerSet> {
    let family = family.canonical();
    let n = cone.n() as f64;
    let k = cone.k();

    if let PowerFamily::Blend { .. } = family {
        return match property {
            LoewnerProperty::SubAdditivity => Ok(PowerSet::with_unknown(
                Vec::new(),
                vec![SetComponent::Interval {
                    lo: f64::NEG_INFINITY,
                    hi: 0.0,
                    lo_closed: false,
                    hi_closed: true,
                }],
            )),
            other => Err(Error::Unsupported(format!(
                "blend families are only classified for sub-additivity, not {other}"
            ))),
        };
    }

    let lattice = family_lattice(family);
    match property {
        LoewnerProperty::Positivity => {
            if k == 1 {
                Ok(PowerSet::new(vec![SetComponent::Ray { start: f64::NEG_INFINITY, closed: false }]))
            } else {
                Ok(PowerSet::new(vec![lattice?, SetComponent::Ray { start: n - 2.0, closed: true }]))
            }
        }
        LoewnerProperty::Monotonicity => {
            if k == 1 {
                Ok(PowerSet::new(vec![SetComponent::Ray { start: 0.0, closed: true }]))
            } else {
                Ok(PowerSet::new(vec![lattice?, SetComponent::Ray { start: n - 1.0, closed: true }]))
            }
        }
        LoewnerProperty::Convexity => {
            if k == 1 {
                Ok(PowerSet::new(vec![SetComponent::Ray { start: 1.0, closed: true }]))
            } else {
                Ok(PowerSet::new(vec![lattice?, SetComponent::Ray { start: n, closed: true }]))
            }
        }
        LoewnerProperty::SuperAdditivity => {
            Ok(PowerSet::new(vec![lattice?, SetComponent::Ray { start: n, closed: true }]))
        }
        LoewnerProperty::SubAdditivity => match family {
            PowerFamily::Plain => {
                if k >= 2 {
                    Ok(PowerSet::new(vec![SetComponent::FinitePoints(vec![1.0])]))
                } else if cone.n() == 2 {
                    Ok(PowerSet::new(vec![
                        SetComponent::Interval {
                            lo: f64::NEG_INFINITY,
                            hi: 0.0,
                            lo_closed: false,
                            hi_closed: true,
                        },
                        SetComponent::FinitePoints(vec![1.0]),
                    ]))
                } else {
                    Ok(PowerSet::new(vec![SetComponent::FinitePoints(vec![0.0, 1.0])]))
                }
            }
            PowerFamily::Even => Ok(PowerSet::new(Vec::new())),
            PowerFamily::Odd => {
                if cone.n() == 2 && k == 1 {
                    Ok(PowerSet::new(vec![SetComponent::FinitePoints(vec![0.0, 1.0])]))
                } else {
                    Ok(PowerSet::new(vec![SetComponent::FinitePoints(vec![1.0])]))
                }
            }
            _ => unreachable!("blend handled above"),
        },
    }
}

/// The Hadamard critical exponent: the threshold above which every power of
/// the family preserves the property. Identical across plain, even, odd, and
/// blend families. Sub-additive sets have no ray, hence no critical exponent.
pub fn critical_exponent(property: LoewnerProperty, family: PowerFamily, cone: Cone) -> Result<f64> {
    if let PowerFamily::Blend { lambda } | PowerFamily::BlendSwapped { lambda } = family {
        if !(0.0..=1.0).contains(&lambda) {
            return Err(Error::InvalidParameter(format!("blend weight must lie in [0, 1], got {lambda}")));
        }
    }
    let n = cone.n() as f64;
    let rank_constrained = cone.k() >= 2;
    match property {
        LoewnerProperty::Positivity => Ok(if rank_constrained { n - 2.0 } else { 0.0 }),
        LoewnerProperty::Monotonicity => Ok(if rank_constrained { n - 1.0 } else { 0.0 }),
        LoewnerProperty::Convexity => Ok(if rank_constrained { n } else { 1.0 }),
        LoewnerProperty::SuperAdditivity => Ok(n),
        LoewnerProperty::SubAdditivity => Err(Error::Unsupported(
            "sub-additive power sets have no ray structure, hence no critical exponent".into(),
        )),
    }
}

/// Smallest matrix dimension at which the even (resp. odd) extension of x^p
/// fails to preserve positivity: ⌊p⌋ + 3. Powers on the family's own integer
/// lattice preserve positivity in every dimension and are rejected.
pub fn bhatia_elsner_min_n(p: f64, family: PowerFamily) -> Result<usize> {
    if !p.is_finite() || p <= 0.0 {
        return Err(Error::InvalidParameter(format!("exponent must be positive, got {p}")));
    }
    let rounded = p.round();
    let is_integer = (p - rounded).abs() <= LATTICE_TOL;
    match family {
        PowerFamily::Even => {
            if is_integer && (rounded as i64) % 2 == 0 {
                return Err(Error::InvalidParameter(format!(
                    "|x|^{rounded} is an even integer power and preserves positivity in every dimension"
                )));
            }
        }
        PowerFamily::Odd => {
            if is_integer && (rounded as i64) % 2 == 1 {
                return Err(Error::InvalidParameter(format!(
                    "sign(x)|x|^{rounded} is an odd integer power and preserves positivity in every dimension"
                )));
            }
        }
        other => {
            return Err(Error::InvalidParameter(format!(
                "minimal dimension is defined for the even/odd families, not {}",
                other.label()
            )))
        }
    }
    let floor = if is_integer { rounded } else { p.floor() };
    Ok(floor as usize + 3)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cone(n: usize, k: usize) -> Cone {
        Cone::new(n, k, EntryDomain::Real).unwrap()
    }

    #[test]
    fn cone_validation() {
        assert!(Cone::new(1, 1, EntryDomain::Real).is_err());
        assert!(Cone::new(3, 0, EntryDomain::Real).is_err());
        assert!(Cone::new(3, 4, EntryDomain::Real).is_err());
    }

    #[test]
    fn positivity_sets() {
        let s = power_set(LoewnerProperty::Positivity, PowerFamily::Plain, cone(5, 3)).unwrap();
        assert_eq!(s.to_string(), "ℕ ∪ [3, ∞)");
        assert_eq!(s.contains(2.0), Membership::In);
        assert_eq!(s.contains(2.5), Membership::Out);
        assert_eq!(s.contains(3.0), Membership::In);
        assert_eq!(s.contains(-1.0), Membership::Out);

        let k1 = power_set(LoewnerProperty::Positivity, PowerFamily::Odd, cone(5, 1)).unwrap();
        assert_eq!(k1.to_string(), "ℝ");
        assert_eq!(k1.contains(-7.3), Membership::In);
    }

    #[test]
    fn convexity_sets() {
        let s = power_set(LoewnerProperty::Convexity, PowerFamily::Odd, cone(4, 2)).unwrap();
        assert_eq!(s.to_string(), "(−1+2ℕ) ∪ [4, ∞)");
        assert_eq!(s.contains(3.0), Membership::In);
        assert_eq!(s.contains(2.0), Membership::Out);
        assert_eq!(s.contains(4.0), Membership::In);
    }

    #[test]
    fn sub_additivity_sets() {
        let even = power_set(LoewnerProperty::SubAdditivity, PowerFamily::Even, cone(4, 2)).unwrap();
        assert_eq!(even.to_string(), "∅");
        assert_eq!(even.contains(2.0), Membership::Out);

        let plain21 = power_set(LoewnerProperty::SubAdditivity, PowerFamily::Plain, cone(2, 1)).unwrap();
        assert_eq!(plain21.to_string(), "(−∞, 0] ∪ {1}");
        assert_eq!(plain21.contains(-3.0), Membership::In);
        assert_eq!(plain21.contains(0.5), Membership::Out);
        assert_eq!(plain21.contains(1.0), Membership::In);

        let plain31 = power_set(LoewnerProperty::SubAdditivity, PowerFamily::Plain, cone(3, 1)).unwrap();
        assert_eq!(plain31.to_string(), "{0, 1}");

        let odd21 = power_set(LoewnerProperty::SubAdditivity, PowerFamily::Odd, cone(2, 1)).unwrap();
        assert_eq!(odd21.to_string(), "{0, 1}");
        let odd42 = power_set(LoewnerProperty::SubAdditivity, PowerFamily::Odd, cone(4, 2)).unwrap();
        assert_eq!(odd42.to_string(), "{1}");
    }

    #[test]
    fn blend_queries() {
        let blend = PowerFamily::Blend { lambda: 0.5 };
        assert!(power_set(LoewnerProperty::Positivity, blend, cone(4, 2)).is_err());

        let sub = power_set(LoewnerProperty::SubAdditivity, blend, cone(4, 2)).unwrap();
        assert_eq!(sub.contains(1.0), Membership::Out);
        assert_eq!(sub.contains(-1.0), Membership::Unknown);

        // weight 0 and 1 reduce to the pure families
        let as_odd = power_set(LoewnerProperty::Positivity, PowerFamily::Blend { lambda: 0.0 }, cone(5, 2)).unwrap();
        assert_eq!(as_odd, power_set(LoewnerProperty::Positivity, PowerFamily::Odd, cone(5, 2)).unwrap());
    }

    #[test]
    fn critical_exponents() {
        let blend = PowerFamily::Blend { lambda: 0.5 };
        assert_eq!(critical_exponent(LoewnerProperty::Convexity, PowerFamily::Plain, cone(4, 2)).unwrap(), 4.0);
        assert_eq!(critical_exponent(LoewnerProperty::Positivity, blend, cone(6, 3)).unwrap(), 4.0);
        assert_eq!(critical_exponent(LoewnerProperty::SuperAdditivity, PowerFamily::Plain, cone(5, 1)).unwrap(), 5.0);
        assert_eq!(critical_exponent(LoewnerProperty::Monotonicity, PowerFamily::Even, cone(5, 1)).unwrap(), 0.0);
        assert!(critical_exponent(LoewnerProperty::SubAdditivity, PowerFamily::Plain, cone(4, 2)).is_err());
    }

    #[test]
    fn critical_exponent_is_the_ray_infimum() {
        for property in [
            LoewnerProperty::Positivity,
            LoewnerProperty::Monotonicity,
            LoewnerProperty::Convexity,
            LoewnerProperty::SuperAdditivity,
        ] {
            for family in [PowerFamily::Plain, PowerFamily::Even, PowerFamily::Odd] {
                for n in 2..=6 {
                    for k in 1..=n {
                        let c = cone(n, k);
                        let ce = critical_exponent(property, family, c).unwrap();
                        let set = power_set(property, family, c).unwrap();
                        if let Some(start) = set.ray_start() {
                            if start == f64::NEG_INFINITY {
                                // k = 1 positivity: every real power works
                                assert_eq!(ce, 0.0);
                            } else {
                                assert_eq!(ce, start, "{property} {family:?} n={n} k={k}");
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn minimal_dimension_examples() {
        assert_eq!(bhatia_elsner_min_n(2.5, PowerFamily::Even).unwrap(), 5);
        assert_eq!(bhatia_elsner_min_n(1.0, PowerFamily::Even).unwrap(), 4);
        assert_eq!(bhatia_elsner_min_n(2.0, PowerFamily::Odd).unwrap(), 5);
        assert!(bhatia_elsner_min_n(3.0, PowerFamily::Odd).is_err());
        assert!(bhatia_elsner_min_n(2.0, PowerFamily::Even).is_err());
        assert!(bhatia_elsner_min_n(-1.0, PowerFamily::Even).is_err());
        assert!(bhatia_elsner_min_n(1.5, PowerFamily::Plain).is_err());
    }

    #[test]
    fn nesting_and_k_independence_on_a_grid() {
        for family in [PowerFamily::Plain, PowerFamily::Even, PowerFamily::Odd] {
            for n in 2..=6usize {
                for k in 2..=n {
                    let c = cone(n, k);
                    let pos = power_set(LoewnerProperty::Positivity, family, c).unwrap();
                    let mono = power_set(LoewnerProperty::Monotonicity, family, c).unwrap();
                    let conv = power_set(LoewnerProperty::Convexity, family, c).unwrap();
                    let sup = power_set(LoewnerProperty::SuperAdditivity, family, c).unwrap();
                    let base = power_set(LoewnerProperty::Positivity, family, cone(n, 2)).unwrap();
                    for j in 1..=4 * (n + 2) {
                        let alpha = 0.25 * j as f64;
                        // convex ⊆ monotone ⊆ positive
                        if conv.contains(alpha) == Membership::In {
                            assert_eq!(mono.contains(alpha), Membership::In);
                        }
                        if mono.contains(alpha) == Membership::In {
                            assert_eq!(pos.contains(alpha), Membership::In);
                        }
                        // the sets do not depend on k once k >= 2
                        assert_eq!(pos.contains(alpha), base.contains(alpha));
                        // convexity coincides with super-additivity
                        assert_eq!(conv.contains(alpha), sup.contains(alpha));
                    }
                }
            }
        }
    }
}
