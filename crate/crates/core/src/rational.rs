//! Exact rationals and their `num/den` text form.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn ratio(num: u128, den: u128) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn one() -> Rational {
    Rational::one()
}

pub fn zero() -> Rational {
    Rational::zero()
}

/// `num/den` in lowest terms (`den` always printed).
pub fn to_text(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `a/b`, an integer, or a finite decimal such as `0.3`.
pub fn parse(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = |msg: &str| Error::parse(0, format!("{msg} in rational {s:?}"));
    let int = |t: &str| -> Result<BigInt> {
        let t = t.trim();
        let digits = t.strip_prefix('-').unwrap_or(t);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) || digits.len() > 4096 {
            return Err(bad("expected digits"));
        }
        t.parse::<BigInt>().map_err(|_| bad("bad integer"))
    };
    if let Some((n, d)) = s.split_once('/') {
        let d = int(d)?;
        if d.is_zero() {
            return Err(bad("zero denominator"));
        }
        return Ok(Rational::new(int(n)?, d));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        let neg = whole.trim_start().starts_with('-');
        let w = if whole.is_empty() || whole == "-" { BigInt::zero() } else { int(whole)? };
        if frac.is_empty() || frac.len() > 4096 || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad("expected fraction digits"));
        }
        let scale = num_traits::pow(BigInt::from(10), frac.len());
        let f = Rational::new(frac.parse::<BigInt>().map_err(|_| bad("bad fraction"))?, scale);
        let mag = Rational::from_integer(w.abs()) + f;
        return Ok(if neg { -mag } else { mag });
    }
    Ok(Rational::from_integer(int(s)?))
}
