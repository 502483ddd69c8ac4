//! Helpers for arbitrary-precision rationals: parsing, formatting, exact
//! square roots and conversion to `f64`.

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Parses an integer (`-12`), a decimal (`0.125`, `-3.5e2` is rejected) or a
/// fraction (`7/3`) into an exact rational. Decimals are converted exactly.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let err = |m: &str| Error::Parse {
        line: 0,
        message: format!("{m}: {text:?}"),
    };
    let t = text.trim();
    if t.is_empty() {
        return Err(err("empty number"));
    }
    if let Some((num, den)) = t.split_once('/') {
        let num: BigInt = num.trim().parse().map_err(|_| err("bad numerator"))?;
        let den: BigInt = den.trim().parse().map_err(|_| err("bad denominator"))?;
        if den.is_zero() {
            return Err(err("zero denominator"));
        }
        return Ok(BigRational::new(num, den));
    }
    let (negative, body) = match t.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, t.strip_prefix('+').unwrap_or(t)),
    };
    let (int_part, frac_part) = match body.split_once('.') {
        Some((i, f)) => (i, f),
        None => (body, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(err("bad number"));
    }
    let all_digits = |s: &str| s.bytes().all(|b| b.is_ascii_digit());
    if !all_digits(int_part) || !all_digits(frac_part) {
        return Err(err("bad number"));
    }
    let digits = format!("{int_part}{frac_part}");
    let numer: BigInt = if digits.is_empty() {
        BigInt::zero()
    } else {
        digits.parse().map_err(|_| err("bad number"))?
    };
    let denom = num_traits::pow(BigInt::from(10u32), frac_part.len());
    let value = BigRational::new(numer, denom);
    Ok(if negative { -value } else { value })
}

/// Integer form when the denominator is 1, else `p/q`.
pub fn format_rational(value: &BigRational) -> String {
    if value.is_integer() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

pub fn to_f64(value: &BigRational) -> f64 {
    value.to_f64().unwrap_or(f64::NAN)
}

/// Exact rational for a finite double. Non-finite values map to `None`.
pub fn from_f64(value: f64) -> Option<BigRational> {
    BigRational::from_float(value)
}

pub fn from_int(value: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(value))
}

fn int_sqrt_exact(value: &BigInt) -> Option<BigInt> {
    if value.sign() == Sign::Minus {
        return None;
    }
    let root = num_integer::Roots::sqrt(value);
    (&root * &root == *value).then_some(root)
}

/// The rational square root of a non-negative rational, if it is rational.
pub fn sqrt_exact(value: &BigRational) -> Option<BigRational> {
    if value.is_negative() {
        return None;
    }
    let num = int_sqrt_exact(value.numer())?;
    let den = int_sqrt_exact(value.denom())?;
    Some(BigRational::new(num, den))
}

/// `base^exp` for a natural exponent.
pub fn pow(base: &BigRational, exp: usize) -> BigRational {
    let mut acc = BigRational::one();
    for _ in 0..exp {
        acc *= base;
    }
    acc
}

/// `value^(k/2)`: exact when `k` is even or the square root is rational.
pub fn half_power_exact(value: &BigRational, k: usize) -> Option<BigRational> {
    if k.is_multiple_of(2) {
        Some(pow(value, k / 2))
    } else {
        sqrt_exact(value).map(|root| pow(&root, k))
    }
}

/// Least common multiple of the denominators.
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a BigRational>) -> BigInt {
    use num_integer::Integer;
    values
        .into_iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}
