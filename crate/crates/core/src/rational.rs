//! Exact rational arithmetic.
//!
//! `Rational` is always stored reduced with a positive denominator, so
//! structural equality is numeric equality.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// Parses `"p/q"` or `"p"`. Decimal and exponent notation are rejected so
/// that parameters never pass through a float.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    let bad = || Error::Parse(text.to_string());
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let valid = |s: &str| {
        let digits = s.strip_prefix(['-', '+']).unwrap_or(s);
        !digits.is_empty() && digits.bytes().all(|c| c.is_ascii_digit())
    };
    if !valid(num) || !valid(den) || den.starts_with('-') {
        return Err(bad());
    }
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

/// Canonical `p/q` string, or `p` for integers.
pub fn to_fraction_string(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn pow(q: &Rational, exp: u32) -> Rational {
    let mut acc = Rational::one();
    for _ in 0..exp {
        acc *= q;
    }
    acc
}

/// Floor of log2 |q| for nonzero `q`.
pub(crate) fn floor_log2(q: &Rational) -> i64 {
    debug_assert!(!q.is_zero());
    let num = q.numer().abs();
    let den = q.denom();
    let mut e = num.bits() as i64 - den.bits() as i64;
    // |q| lies in [2^(e-1), 2^(e+1)); settle which side of 2^e it is on.
    let lhs = num.clone();
    let at = |e: i64| -> bool {
        // |q| >= 2^e ?
        if e >= 0 {
            lhs >= (den << e as u64)
        } else {
            (&lhs << (-e) as u64) >= *den
        }
    };
    if !at(e) {
        e -= 1;
    }
    e
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rational("3/2").unwrap(), rat(3, 2));
        assert_eq!(parse_rational("-5/12").unwrap(), rat(-5, 12));
        assert_eq!(parse_rational("10/4").unwrap(), rat(5, 2));
        assert_eq!(parse_rational("7").unwrap(), int(7));
        assert!(parse_rational("0.5").is_err());
        assert!(parse_rational("1e3").is_err());
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("1/-2").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn fraction_strings() {
        assert_eq!(to_fraction_string(&rat(-5, 12)), "-5/12");
        assert_eq!(to_fraction_string(&int(4)), "4");
    }

    #[test]
    fn log2_floor() {
        assert_eq!(floor_log2(&int(1)), 0);
        assert_eq!(floor_log2(&int(8)), 3);
        assert_eq!(floor_log2(&int(9)), 3);
        assert_eq!(floor_log2(&rat(1, 3)), -2);
        assert_eq!(floor_log2(&rat(-1, 4)), -2);
        assert_eq!(floor_log2(&rat(7, 8)), -1);
    }
}
