//! Exact rational scalars and their string form.
//!
//! Rationals are written `p/q` (or `p` when the denominator is 1) wherever
//! they cross a serialization boundary.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Q = BigRational;

pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Parse `p`, `-p` or `p/q`. Surrounding whitespace and quotes are ignored.
pub fn parse_q(s: &str) -> Result<Q> {
    let t = s.trim().trim_matches('"').trim();
    let bad = || Error::Invalid(format!("not a rational: {s:?}"));
    if let Some((a, b)) = t.split_once('/') {
        let n: BigInt = a.trim().parse().map_err(|_| bad())?;
        let d: BigInt = b.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(Error::Invalid(format!("zero denominator in {s:?}")));
        }
        Ok(Q::new(n, d))
    } else {
        let n: BigInt = t.parse().map_err(|_| bad())?;
        Ok(Q::from_integer(n))
    }
}

pub fn fmt_q(x: &Q) -> String {
    x.to_string()
}

pub fn to_f64(x: &Q) -> f64 {
    x.to_f64().unwrap_or_else(|| {
        if x.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

/// Integer power, negative exponents allowed for nonzero base.
pub fn pow(x: &Q, e: i64) -> Q {
    if e >= 0 {
        num_traits::pow(x.clone(), e as usize)
    } else {
        num_traits::pow(x.recip(), (-e) as usize)
    }
}

/// Rising factorial g(g+1)...(g+n-1).
pub fn rising(g: &Q, n: usize) -> Q {
    let mut acc = Q::one();
    for i in 0..n {
        acc *= g + qi(i as i64);
    }
    acc
}

pub fn factorial(n: usize) -> Q {
    let mut acc = Q::one();
    for i in 2..=n {
        acc *= qi(i as i64);
    }
    acc
}

pub fn binomial(n: usize, k: usize) -> Q {
    if k > n {
        return Q::zero();
    }
    let mut acc = Q::one();
    for i in 0..k {
        acc = acc * qi((n - i) as i64) / qi((i + 1) as i64);
    }
    acc
}

/// Serde adapter writing a rational as a `"p/q"` string.
pub mod serde_q {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &Q, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&fmt_q(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Q, D::Error> {
        let s = String::deserialize(d)?;
        parse_q(&s).map_err(serde::de::Error::custom)
    }
}

/// Serde adapter for `Vec<Q>` as a list of strings.
pub mod serde_qvec {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &[Q], s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(x.iter().map(fmt_q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Q>, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        v.iter()
            .map(|s| parse_q(s).map_err(serde::de::Error::custom))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!(parse_q("3/6").unwrap(), q(1, 2));
        assert_eq!(parse_q(" -4 ").unwrap(), qi(-4));
        assert_eq!(parse_q("\"2/3\"").unwrap(), q(2, 3));
        assert!(parse_q("1/0").is_err());
        assert!(parse_q("0.5").is_err());
        assert_eq!(fmt_q(&q(-6, 4)), "-3/2");
        assert_eq!(fmt_q(&qi(5)), "5");
    }

    #[test]
    fn rising_and_binomial() {
        assert_eq!(rising(&qi(1), 3), qi(6));
        assert_eq!(rising(&q(1, 2), 0), qi(1));
        assert_eq!(binomial(6, 2), qi(15));
        assert_eq!(pow(&q(2, 3), -2), q(9, 4));
    }
}
