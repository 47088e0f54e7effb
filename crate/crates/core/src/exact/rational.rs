use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serializer};

/// Arbitrary-precision rational, always kept in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid rational `{input}`: {reason}")]
pub struct ParseRationalError {
    pub input: String,
    pub reason: &'static str,
}

pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `p`, `-p`, `p/q` or `-p/q` where `q > 0`.
pub fn parse_rational(input: &str) -> Result<Rational, ParseRationalError> {
    let s = input.trim();
    let err = |reason| ParseRationalError {
        input: input.to_string(),
        reason,
    };
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (s, None),
    };
    let digits = num.strip_prefix('-').or_else(|| num.strip_prefix('+')).unwrap_or(num);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(err("numerator is not an integer"));
    }
    let numer = BigInt::from_str(num).map_err(|_| err("numerator is not an integer"))?;
    let denom = match den {
        None => BigInt::one(),
        Some(d) => {
            if d.is_empty() || !d.bytes().all(|b| b.is_ascii_digit()) {
                return Err(err("denominator is not a positive integer"));
            }
            let d = BigInt::from_str(d).map_err(|_| err("denominator is not a positive integer"))?;
            if d.is_zero() {
                return Err(err("zero denominator"));
            }
            d
        }
    };
    Ok(Rational::new(numer, denom))
}

/// Renders as `p/q`, or `p` when the denominator is one.
pub fn render(q: &Rational) -> String {
    q.to_string()
}

/// Pretty form used in human-readable output, e.g. `1/2T + 1/2B`.
pub fn render_mixture(weights: &[Rational], labels: &[String]) -> String {
    let mut parts = Vec::new();
    for (w, l) in weights.iter().zip(labels) {
        if w.is_zero() {
            continue;
        }
        if w.is_one() {
            parts.push(l.clone());
        } else {
            parts.push(format!("{}{}", w, l));
        }
    }
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join("+")
    }
}

pub fn abs(q: &Rational) -> Rational {
    q.abs()
}

/// Serde adapter storing a rational as its `p/q` string.
pub mod serde_rational {
    use super::*;

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&render(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

/// Wrapper used where a `Display` of a rational list is convenient.
pub struct RationalList<'a>(pub &'a [Rational]);

impl fmt::Display for RationalList<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, q) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", q)?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_canonical_forms() {
        assert_eq!(parse_rational("1/3").unwrap(), rat(1, 3));
        assert_eq!(parse_rational("-2/4").unwrap(), rat(-1, 2));
        assert_eq!(parse_rational(" 7 ").unwrap(), int(7));
        assert_eq!(parse_rational("0/5").unwrap(), int(0));
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("1/-2").is_err());
        assert!(parse_rational("0.5").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn renders_integers_without_denominator() {
        assert_eq!(render(&rat(4, 2)), "2");
        assert_eq!(render(&rat(-1, 3)), "-1/3");
    }

    #[test]
    fn mixture_rendering() {
        let labels = vec!["T".to_string(), "B".to_string()];
        assert_eq!(render_mixture(&[rat(1, 2), rat(1, 2)], &labels), "1/2T+1/2B");
        assert_eq!(render_mixture(&[int(1), int(0)], &labels), "T");
    }
}
