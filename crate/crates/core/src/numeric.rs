//! Small numeric helpers: logarithms of huge integers and exact parsing of
//! decimal or fractional literals.

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Natural log of a positive big integer, accurate to f64 precision at any
/// size. Returns `-inf` for zero and NaN for negative input.
pub fn ln_bigint(x: &BigInt) -> f64 {
    match x.sign() {
        Sign::NoSign => f64::NEG_INFINITY,
        Sign::Minus => f64::NAN,
        Sign::Plus => {
            let bits = x.bits();
            if bits <= 1000 {
                return x.to_f64().map_or(f64::NAN, f64::ln);
            }
            let shift = bits - 64;
            let top = (x >> shift).to_f64().unwrap_or(f64::NAN);
            top.ln() + shift as f64 * std::f64::consts::LN_2
        }
    }
}

/// `ln(num / den)` for a positive rational.
pub fn ln_ratio(v: &BigRational) -> f64 {
    ln_bigint(v.numer()) - ln_bigint(v.denom())
}

/// Parses `"-12"`, `"0.25"`, `"3/7"` or `"1.5e-3"` into an exact rational.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let s = text.trim();
    let bad = || Error::Parse(format!("not a number: {text:?}"));
    if let Some((num, den)) = s.split_once('/') {
        let num: BigInt = num.trim().parse().map_err(|_| bad())?;
        let den: BigInt = den.trim().parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {text:?}")));
        }
        return Ok(BigRational::new(num, den));
    }
    let (mantissa, exp10) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    let all_digits = |p: &str| p.bytes().all(|b| b.is_ascii_digit());
    if int_part.is_empty() && frac_part.is_empty()
        || !all_digits(int_part)
        || !all_digits(frac_part)
    {
        return Err(bad());
    }
    let joined = format!("{int_part}{frac_part}");
    let mut value = BigRational::from_integer(joined.parse::<BigInt>().map_err(|_| bad())?);
    let scale = exp10 - frac_part.len() as i32;
    let ten = BigInt::from(10u32);
    if scale >= 0 {
        value *= BigRational::from_integer(ten.pow(scale as u32));
    } else {
        value /= BigRational::from_integer(ten.pow(scale.unsigned_abs()));
    }
    Ok(if negative { -value } else { value })
}

/// Rational to f64, robust to numerators and denominators beyond f64 range.
pub fn ratio_to_f64(v: &BigRational) -> f64 {
    if let (Some(n), Some(d)) = (v.numer().to_f64(), v.denom().to_f64()) {
        if n.is_finite() && d.is_finite() {
            return n / d;
        }
    }
    if v.is_zero() {
        return 0.0;
    }
    let sign = if v.numer().sign() == Sign::Minus { -1.0 } else { 1.0 };
    sign * (ln_bigint(&v.numer().magnitude().clone().into()) - ln_bigint(v.denom())).exp()
}

pub(crate) fn is_probability(p: &BigRational) -> bool {
    !p.numer().sign().eq(&Sign::Minus) && p <= &BigRational::one()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn ln_of_large_integers() {
        assert_eq!(ln_bigint(&BigInt::zero()), f64::NEG_INFINITY);
        assert!((ln_bigint(&BigInt::from(1000)) - 1000f64.ln()).abs() < 1e-13);
        let big = BigInt::from(3).pow(5000);
        let expected = 5000.0 * 3f64.ln();
        assert!((ln_bigint(&big) - expected).abs() < 1e-12 * expected);
    }

    #[test]
    fn parses_literals() {
        assert_eq!(parse_rational("0.25").unwrap(), q(1, 4));
        assert_eq!(parse_rational("-3").unwrap(), q(-3, 1));
        assert_eq!(parse_rational("3/7").unwrap(), q(3, 7));
        assert_eq!(parse_rational(" 1.5e-3 ").unwrap(), q(3, 2000));
        assert_eq!(parse_rational(".5").unwrap(), q(1, 2));
        assert_eq!(parse_rational("2E2").unwrap(), q(200, 1));
        for bad in ["", "abc", "1/0", "1..2", "-", "1e", "0x10"] {
            assert!(parse_rational(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn ratio_conversion() {
        assert_eq!(ratio_to_f64(&q(1, 4)), 0.25);
        let tiny = BigRational::new((BigInt::one() << 1100) + 1, BigInt::one() << 2100);
        assert!((ratio_to_f64(&tiny).ln() + 1000.0 * 2f64.ln()).abs() < 1e-9);
        assert!(is_probability(&q(0, 1)) && is_probability(&q(1, 1)));
        assert!(!is_probability(&q(-1, 3)) && !is_probability(&q(4, 3)));
    }
}
