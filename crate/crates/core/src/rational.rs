//! Exact rational helpers shared by every module.
//!
//! Rationals are written as `"p/q"` in lowest terms with `q > 0`; integral
//! values are written without the denominator (`"3"`, `"-1"`, `"0"`).

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

pub fn frac(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn format(value: &Rational) -> String {
    if value.denom().is_one() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

pub fn format_vec(values: &[Rational]) -> String {
    let parts: Vec<String> = values.iter().map(format).collect();
    format!("({})", parts.join(", "))
}

pub fn parse(text: &str) -> Result<Rational> {
    let bad = || Error::SchemaViolation {
        path: String::new(),
        message: format!("`{text}` is not a rational of the form p/q"),
    };
    let text = text.trim();
    let (numer, denom) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let numer: BigInt = numer.parse().map_err(|_| bad())?;
    let denom: BigInt = denom.parse().map_err(|_| bad())?;
    if denom.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(numer, denom))
}

/// Representative of `value` modulo 1 in `[0, 1)`.
pub fn mod_one(value: &Rational) -> Rational {
    value - value.floor()
}

pub fn mod_one_vec(values: &[Rational]) -> Vec<Rational> {
    values.iter().map(mod_one).collect()
}

pub fn is_integral(value: &Rational) -> bool {
    value.denom().is_one()
}

/// Least common multiple of the denominators, at least 1.
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

/// `value * scale` as an `i64`, for values known to lie in `(1/scale)Z`.
pub(crate) fn scaled_numerator(value: &Rational, scale: i64) -> i64 {
    let scaled = value * int(scale);
    debug_assert!(scaled.is_integer(), "{value} is not in (1/{scale})Z");
    scaled
        .to_integer()
        .to_i64()
        .expect("scaled exponent exceeds i64")
}

pub(crate) fn to_i64(value: &BigInt) -> i64 {
    value.to_i64().expect("denominator exceeds i64")
}

/// Smallest integer `k` with `k >= value * scale`.
pub(crate) fn ceil_scaled(value: &Rational, scale: i64) -> i64 {
    to_i64(&(value * int(scale)).ceil().to_integer())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse("6/-4").unwrap(), frac(-3, 2));
        assert_eq!(format(&parse("-6/4").unwrap()), "-3/2");
        assert_eq!(format(&parse(" 8 ").unwrap()), "8");
        assert_eq!(format(&parse("0/5").unwrap()), "0");
        assert!(parse("1/0").is_err());
        assert!(parse("x").is_err());
    }

    #[test]
    fn reduction_mod_one() {
        assert_eq!(mod_one(&frac(-1, 8)), frac(7, 8));
        assert_eq!(mod_one(&frac(169, 24)), frac(1, 24));
        assert_eq!(mod_one(&int(-3)), int(0));
    }

    #[test]
    fn denominators() {
        let v = [frac(1, 12), frac(5, 24), int(2)];
        assert_eq!(common_denominator(&v), BigInt::from(24));
        assert_eq!(ceil_scaled(&frac(25, 8), 8), 25);
        assert_eq!(ceil_scaled(&frac(1, 3), 8), 3);
    }
}
