//! Exact rational scalars.
//!
//! [`Rat`] is an alias for [`BigRational`], which keeps every value in
//! canonical form: `gcd(|num|, den) = 1`, `den > 0`, and zero is `0/1`.
//! Its `Display` prints `num/den`, or just `num` when the denominator is 1,
//! which is also the wire format used by the JSON schemas.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact rational number in canonical reduced form.
pub type Rat = BigRational;

/// `n / d` as a canonical rational. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// The integer `n` as a rational.
pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn uint(n: usize) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Parses `"n"` or `"n/d"` (optional leading sign). Rejects zero denominators.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let t = s.trim();
    if let Some((n, d)) = t.split_once('/') {
        let n = BigInt::from_str(n.trim()).map_err(|_| Error::ParseRat(s.to_string()))?;
        let d = BigInt::from_str(d.trim()).map_err(|_| Error::ParseRat(s.to_string()))?;
        if d.is_zero() {
            return Err(Error::ParseRat(s.to_string()));
        }
        Ok(Rat::new(n, d))
    } else {
        let n = BigInt::from_str(t).map_err(|_| Error::ParseRat(s.to_string()))?;
        Ok(Rat::from_integer(n))
    }
}

/// `n!` as a rational.
pub fn factorial(n: usize) -> Rat {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= i;
    }
    Rat::from_integer(acc)
}

/// Ordinary binomial coefficient `C(n, k)`, zero when `k > n`.
pub fn binom(n: usize, k: usize) -> Rat {
    if k > n {
        return Rat::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    Rat::from_integer(acc)
}

/// Generalized binomial coefficient `r(r-1)...(r-k+1)/k!` for rational `r`.
pub fn binom_rat(r: &Rat, k: usize) -> Rat {
    let mut acc = Rat::one();
    for i in 0..k {
        acc = acc * (r - uint(i)) / uint(i + 1);
    }
    acc
}

/// Integer power with a possibly negative exponent. `0^0 = 1`.
pub fn pow_i(base: &Rat, e: i64) -> Rat {
    if e >= 0 {
        num_traits::pow::pow(base.clone(), e as usize)
    } else {
        num_traits::pow::pow(base.recip(), (-e) as usize)
    }
}

/// Returns the value as an `i64` if it is an integer that fits.
pub fn as_i64(r: &Rat) -> Option<i64> {
    if r.is_integer() {
        r.to_integer().to_i64()
    } else {
        None
    }
}

/// Fixed-point decimal rendering, truncated toward zero after `digits`
/// fractional digits. Lossy; prefixed with `~` when the expansion was cut.
pub fn to_decimal(r: &Rat, digits: usize) -> String {
    let neg = r.is_negative();
    let a = r.abs();
    let num = a.numer();
    let den = a.denom();
    let int_part = num / den;
    let mut rem = num % den;
    let mut frac = String::new();
    for _ in 0..digits {
        rem *= 10;
        let d = &rem / den;
        rem %= den;
        frac.push_str(&d.to_string());
    }
    let exact = rem.is_zero();
    let frac = frac.trim_end_matches('0');
    let mut out = String::new();
    if !exact {
        out.push('~');
    }
    if neg {
        out.push('-');
    }
    out.push_str(&int_part.to_string());
    if !frac.is_empty() {
        out.push('.');
        out.push_str(frac);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form() {
        let r = rat(6, -4);
        assert_eq!(r.numer(), &BigInt::from(-3));
        assert_eq!(r.denom(), &BigInt::from(2));
        assert_eq!(rat(0, 5).denom(), &BigInt::from(1));
        assert_eq!(r.to_string(), "-3/2");
        assert_eq!(int(7).to_string(), "7");
    }

    #[test]
    fn parse_round_trip() {
        assert_eq!(parse_rat("-3/6").unwrap(), rat(-1, 2));
        assert_eq!(parse_rat(" 12 ").unwrap(), int(12));
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
    }

    #[test]
    fn binomials() {
        assert_eq!(binom(5, 2), int(10));
        assert_eq!(binom(2, 5), int(0));
        assert_eq!(binom_rat(&int(5), 2), int(10));
        assert_eq!(binom_rat(&rat(1, 2), 2), rat(-1, 8));
        assert_eq!(binom_rat(&int(-1), 3), int(-1));
        assert_eq!(binom_rat(&int(3), 0), int(1));
    }

    #[test]
    fn decimals() {
        assert_eq!(to_decimal(&rat(1, 4), 6), "0.25");
        assert_eq!(to_decimal(&rat(-1, 3), 4), "~-0.3333");
        assert_eq!(to_decimal(&int(3), 4), "3");
    }
}
