//! Exact rational scalars.
//!
//! Every coefficient in the crate is a [`Q`], an arbitrary precision
//! rational kept in lowest terms with a positive denominator.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn sign(positive: bool) -> Q {
    if positive {
        Q::one()
    } else {
        -Q::one()
    }
}

/// Parses `p`, `-p` or `p/q` with a nonzero denominator.
pub fn parse_q(s: &str) -> Result<Q, String> {
    let s = s.trim();
    if s.is_empty() {
        return Err("empty rational literal".into());
    }
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    let parse_int = |t: &str| -> Result<BigInt, String> {
        let body = t.strip_prefix(['-', '+']).unwrap_or(t);
        if body.is_empty() || !body.bytes().all(|b| b.is_ascii_digit()) {
            return Err(format!("malformed rational literal {s:?}"));
        }
        t.parse::<BigInt>().map_err(|_| format!("malformed rational literal {s:?}"))
    };
    let n = parse_int(num)?;
    let d = match den {
        Some(d) => parse_int(d)?,
        None => BigInt::one(),
    };
    if d.is_zero() {
        return Err(format!("zero denominator in {s:?}"));
    }
    Ok(Q::new(n, d))
}

/// Canonical `p/q` rendering (`p` when the denominator is one).
pub fn fmt_q(x: &Q) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn is_negative(x: &Q) -> bool {
    x.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_reduces() {
        assert_eq!(parse_q("6/4").unwrap(), frac(3, 2));
        assert_eq!(parse_q("-3").unwrap(), q(-3));
        assert_eq!(parse_q("2/-4").unwrap(), frac(-1, 2));
        assert_eq!(fmt_q(&frac(-6, 4)), "-3/2");
        assert_eq!(fmt_q(&q(5)), "5");
    }

    #[test]
    fn rejects_bad_literals() {
        assert!(parse_q("1/0").unwrap_err().contains("zero denominator"));
        assert!(parse_q("0.5").is_err());
        assert!(parse_q("").is_err());
        assert!(parse_q("1/").is_err());
        assert!(parse_q("--1").is_err());
    }
}
