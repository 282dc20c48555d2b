use std::fmt;

use num::{BigInt, BigRational, One, Signed, Zero};

use super::ModelError;

/// Exact rational scalar.
pub type Q = BigRational;

/// An element of a carrier.
///
/// Finite carriers address elements by position (`Label`), never by label
/// text. Rational domains use exact rationals, the projective point `Infinity`
/// (only meaningful for the reciprocal half-line), or rational pairs for the
/// planar domains.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Value {
    Label(usize),
    Rat(Q),
    Infinity,
    Pair(Q, Q),
}

impl Value {
    pub fn int(n: i64) -> Value {
        Value::Rat(Q::from_integer(BigInt::from(n)))
    }

    pub fn ratio(num: i64, den: i64) -> Value {
        Value::Rat(Q::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn pair(x: Q, y: Q) -> Value {
        Value::Pair(x, y)
    }

    pub fn label(&self) -> Option<usize> {
        match self {
            Value::Label(i) => Some(*i),
            _ => None,
        }
    }

    pub fn as_rat(&self) -> Option<&Q> {
        match self {
            Value::Rat(q) => Some(q),
            _ => None,
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Label(i) => write!(f, "#{i}"),
            Value::Rat(q) => f.write_str(&format_rational(q)),
            Value::Infinity => f.write_str("1/0"),
            Value::Pair(x, y) => write!(f, "({},{})", format_rational(x), format_rational(y)),
        }
    }
}

pub fn q(num: i64, den: i64) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// `p/q` in lowest terms with the sign on the numerator; integers keep `/1`.
pub fn format_rational(r: &Q) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `p/q` or a bare integer. `1/0` (any positive numerator over zero)
/// is the projective infinity.
pub fn parse_scalar(text: &str) -> Result<Value, ModelError> {
    let text = text.trim();
    let bad = || ModelError::Schema(format!("invalid rational literal {text:?}"));
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (
            n.trim().parse::<BigInt>().map_err(|_| bad())?,
            d.trim().parse::<BigInt>().map_err(|_| bad())?,
        ),
        None => (text.parse::<BigInt>().map_err(|_| bad())?, BigInt::one()),
    };
    if den.is_zero() {
        return if num.is_positive() { Ok(Value::Infinity) } else { Err(bad()) };
    }
    Ok(Value::Rat(Q::new(num, den)))
}

pub fn parse_rational(text: &str) -> Result<Q, ModelError> {
    match parse_scalar(text)? {
        Value::Rat(r) => Ok(r),
        _ => Err(ModelError::Schema(format!("expected a finite rational, got {text:?}"))),
    }
}

/// True when the denominator of `r` is a power of two.
pub fn is_dyadic(r: &Q) -> bool {
    let d = r.denom();
    let two = BigInt::from(2);
    let mut d = d.clone();
    while (&d % &two).is_zero() {
        d /= &two;
    }
    d.is_one()
}

pub fn is_dyadic_value(v: &Value) -> bool {
    matches!(v, Value::Rat(r) if is_dyadic(r))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_print_in_lowest_terms() {
        assert_eq!(format_rational(&q(2, 4)), "1/2");
        assert_eq!(format_rational(&q(3, -6)), "-1/2");
        assert_eq!(format_rational(&qi(0)), "0/1");
        assert_eq!(format_rational(&qi(7)), "7/1");
    }

    #[test]
    fn scalar_parsing() {
        assert_eq!(parse_scalar("1/0").unwrap(), Value::Infinity);
        assert_eq!(parse_scalar("-6/4").unwrap(), Value::ratio(-3, 2));
        assert_eq!(parse_scalar("5").unwrap(), Value::int(5));
        assert!(parse_scalar("-1/0").is_err());
        assert!(parse_scalar("a/2").is_err());
    }

    #[test]
    fn dyadic_detection() {
        assert!(is_dyadic(&q(3, 8)));
        assert!(is_dyadic(&qi(1)));
        assert!(!is_dyadic(&q(1, 3)));
        assert!(!is_dyadic(&q(5, 12)));
    }
}
