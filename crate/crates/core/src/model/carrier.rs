use num::Signed;
use serde::{Deserialize, Serialize};

use super::value::{is_dyadic, qi, Value, Q};

pub const DEFAULT_SEED: u64 = 0x6d6f_6269_2d73_6565;
pub const DEFAULT_COUNT: usize = 1000;
pub const DEFAULT_BOUND: u64 = 64;

/// Deterministic sampling recipe for rational-domain carriers.
///
/// Rationals are drawn as `p/q` with `1 <= q <= bound` and a numerator range
/// chosen so the draw already lies in the domain; identical specs always give
/// identical tuple sequences.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SampleSpec {
    pub seed: u64,
    pub count: usize,
    #[serde(default = "default_bound")]
    pub bound: u64,
}

fn default_bound() -> u64 {
    DEFAULT_BOUND
}

impl SampleSpec {
    pub fn new(seed: u64, count: usize) -> Self {
        SampleSpec { seed, count, bound: DEFAULT_BOUND }
    }
}

impl Default for SampleSpec {
    fn default() -> Self {
        SampleSpec::new(DEFAULT_SEED, DEFAULT_COUNT)
    }
}

/// Exactly decidable subsets of ℚ or ℚ² used as infinite carriers.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Domain {
    /// Closed interval `[lo, hi]`.
    Interval { lo: Q, hi: Q },
    /// Dyadic rationals in `[0, 1]`.
    Dyadic,
    /// All of ℚ.
    Rationals,
    /// `[1, +∞]` including the projective point at infinity.
    ProjectiveHalfLine,
    /// `{(x, y) : √K|y| ≤ x ≤ 1 − √K|y|}` for `K ≥ 0`, decided through
    /// `x ≥ 0`, `1 − x ≥ 0`, `K·y² ≤ x²` and `K·y² ≤ (1 − x)²`.
    Region { k: Q },
    /// All of ℚ².
    Plane,
}

impl Domain {
    pub fn unit_interval() -> Domain {
        Domain::Interval { lo: qi(0), hi: qi(1) }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Domain::Interval { .. } => "interval",
            Domain::Dyadic => "dyadic",
            Domain::Rationals => "rationals",
            Domain::ProjectiveHalfLine => "projective-half-line",
            Domain::Region { .. } => "region",
            Domain::Plane => "plane",
        }
    }

    pub fn dimension(&self) -> usize {
        match self {
            Domain::Region { .. } | Domain::Plane => 2,
            _ => 1,
        }
    }

    pub fn contains(&self, v: &Value) -> bool {
        match (self, v) {
            (Domain::Interval { lo, hi }, Value::Rat(x)) => lo <= x && x <= hi,
            (Domain::Dyadic, Value::Rat(x)) => {
                !x.is_negative() && *x <= qi(1) && is_dyadic(x)
            }
            (Domain::Rationals, Value::Rat(_)) => true,
            (Domain::ProjectiveHalfLine, Value::Infinity) => true,
            (Domain::ProjectiveHalfLine, Value::Rat(x)) => *x >= qi(1),
            (Domain::Region { k }, Value::Pair(x, y)) => {
                let rest = qi(1) - x;
                if x.is_negative() || rest.is_negative() {
                    return false;
                }
                let ky2 = k * y * y;
                ky2 <= x * x && ky2 <= &rest * &rest
            }
            (Domain::Plane, Value::Pair(..)) => true,
            _ => false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Carrier {
    /// Distinct labels in declaration order; elements are positions.
    Finite(Vec<String>),
    Rational { domain: Domain, sampling: Option<SampleSpec> },
}

impl Carrier {
    pub fn finite<S: Into<String>>(labels: impl IntoIterator<Item = S>) -> Carrier {
        Carrier::Finite(labels.into_iter().map(Into::into).collect())
    }

    pub fn rational(domain: Domain) -> Carrier {
        Carrier::Rational { domain, sampling: Some(SampleSpec::default()) }
    }

    pub fn size(&self) -> Option<usize> {
        match self {
            Carrier::Finite(labels) => Some(labels.len()),
            Carrier::Rational { .. } => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Carrier::Finite(_))
    }

    pub fn labels(&self) -> Option<&[String]> {
        match self {
            Carrier::Finite(labels) => Some(labels),
            Carrier::Rational { .. } => None,
        }
    }

    pub fn domain(&self) -> Option<&Domain> {
        match self {
            Carrier::Finite(_) => None,
            Carrier::Rational { domain, .. } => Some(domain),
        }
    }

    pub fn sampling(&self) -> Option<&SampleSpec> {
        match self {
            Carrier::Finite(_) => None,
            Carrier::Rational { sampling, .. } => sampling.as_ref(),
        }
    }

    pub fn contains(&self, v: &Value) -> bool {
        match (self, v) {
            (Carrier::Finite(labels), Value::Label(i)) => *i < labels.len(),
            (Carrier::Finite(_), _) => false,
            (Carrier::Rational { domain, .. }, v) => domain.contains(v),
        }
    }

    pub fn elements(&self) -> Option<impl Iterator<Item = Value>> {
        self.size().map(|n| (0..n).map(Value::Label))
    }

    pub fn position(&self, label: &str) -> Option<usize> {
        self.labels()?.iter().position(|l| l == label)
    }

    /// Text used in reports and documents.
    pub fn render(&self, v: &Value) -> String {
        match (self, v) {
            (Carrier::Finite(labels), Value::Label(i)) => {
                labels.get(*i).cloned().unwrap_or_else(|| format!("#{i}"))
            }
            (_, v) => v.to_string(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::value::q;

    #[test]
    fn region_membership_uses_squared_bounds() {
        let region = Domain::Region { k: qi(2) };
        // √2·(1/4) ≈ 0.354 ≤ 1/2 ≤ 1 − 0.354
        assert!(region.contains(&Value::pair(q(1, 2), q(1, 4))));
        // √2·(2/5) ≈ 0.566 > 1/2
        assert!(!region.contains(&Value::pair(q(1, 2), q(2, 5))));
        assert!(!region.contains(&Value::pair(q(-1, 8), qi(0))));
        assert!(Domain::Region { k: qi(0) }.contains(&Value::pair(q(1, 3), qi(40))));
    }

    #[test]
    fn half_line_admits_infinity_only_there() {
        assert!(Domain::ProjectiveHalfLine.contains(&Value::Infinity));
        assert!(Domain::ProjectiveHalfLine.contains(&Value::int(3)));
        assert!(!Domain::ProjectiveHalfLine.contains(&Value::ratio(1, 2)));
        assert!(!Domain::Rationals.contains(&Value::Infinity));
    }

    #[test]
    fn dyadic_domain() {
        assert!(Domain::Dyadic.contains(&Value::ratio(5, 8)));
        assert!(!Domain::Dyadic.contains(&Value::ratio(1, 3)));
        assert!(!Domain::Dyadic.contains(&Value::ratio(9, 8)));
    }
}
