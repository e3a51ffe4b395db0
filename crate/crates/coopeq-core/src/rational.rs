//! Exact rational arithmetic helpers.
//!
//! All money values, probabilities, and mixture weights in this crate are
//! `BigRational`. Predictions of the model are exact fractions (1/2, 1/4,
//! (k-1)/k, 99.2, ...) and the test suite asserts them exactly, so nothing
//! here goes through floating point except for display convenience and the
//! final bisection fallback when a root is irrational.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Exact rational number used for payoffs, probabilities, and weights.
pub type Rat = BigRational;

/// Builds `n/d`. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Builds the integer rational `n`.
pub fn rat_i(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseMoneyError {
    #[error("empty money literal")]
    Empty,
    #[error("invalid money literal `{0}`")]
    Invalid(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
}

/// Parses a money literal: integer (`"300"`), exact decimal (`"0.15"`),
/// or fraction (`"2/3"`). Decimals are read exactly, not via f64.
pub fn parse_money(text: &str) -> Result<Rat, ParseMoneyError> {
    let s = text.trim();
    if s.is_empty() {
        return Err(ParseMoneyError::Empty);
    }
    if let Some((num, den)) = s.split_once('/') {
        let n: BigInt = num
            .trim()
            .parse()
            .map_err(|_| ParseMoneyError::Invalid(text.to_string()))?;
        let d: BigInt = den
            .trim()
            .parse()
            .map_err(|_| ParseMoneyError::Invalid(text.to_string()))?;
        if d.is_zero() {
            return Err(ParseMoneyError::ZeroDenominator(text.to_string()));
        }
        return Ok(Rat::new(n, d));
    }
    let (sign, body) = match s.strip_prefix('-') {
        Some(rest) => (-1, rest),
        None => (1, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int_part, frac_part) = match body.split_once('.') {
        Some((i, f)) => (i, f),
        None => (body, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(ParseMoneyError::Invalid(text.to_string()));
    }
    let digits_ok = |s: &str| !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit());
    if !(int_part.is_empty() || digits_ok(int_part)) || !(frac_part.is_empty() || digits_ok(frac_part)) {
        return Err(ParseMoneyError::Invalid(text.to_string()));
    }
    let mut numer: BigInt = if int_part.is_empty() {
        BigInt::zero()
    } else {
        int_part.parse().unwrap()
    };
    let mut denom = BigInt::one();
    for b in frac_part.bytes() {
        numer = numer * 10 + (b - b'0');
        denom *= 10;
    }
    Ok(Rat::new(numer * sign, denom))
}

/// Renders the exact value: `"3/20"`, or just `"3"` for integers.
pub fn fmt_exact(x: &Rat) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Renders the value as a decimal with `places` digits, rounding half away
/// from zero. Exact integer arithmetic, so output is platform independent.
pub fn fmt_decimal(x: &Rat, places: u32) -> String {
    let scale = BigInt::from(10u32).pow(places);
    let abs = x.abs();
    // round(|x| * scale) with ties away from zero
    let scaled_num = abs.numer() * &scale;
    let q = (BigInt::from(2) * &scaled_num + abs.denom()) / (BigInt::from(2) * abs.denom());
    let int = &q / &scale;
    let frac = &q % &scale;
    let sign = if x.is_negative() && !q.is_zero() { "-" } else { "" };
    if places == 0 {
        format!("{sign}{int}")
    } else {
        format!("{sign}{int}.{frac:0>width$}", width = places as usize)
    }
}

/// `fmt_exact` plus a 6-place decimal, e.g. `"1/2 (0.500000)"`.
pub fn fmt_full(x: &Rat) -> String {
    format!("{} ({})", fmt_exact(x), fmt_decimal(x, 6))
}

/// Lossy conversion for diagnostics only.
pub fn to_f64(x: &Rat) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Exact square root when the reduced fraction is a perfect square of a
/// rational, `None` otherwise.
pub fn rational_sqrt(x: &Rat) -> Option<Rat> {
    if x.is_negative() {
        return None;
    }
    if x.is_zero() {
        return Some(Rat::zero());
    }
    let sn = x.numer().sqrt();
    let sd = x.denom().sqrt();
    if &(&sn * &sn) == x.numer() && &(&sd * &sd) == x.denom() {
        Some(Rat::new(sn, sd))
    } else {
        None
    }
}

/// Smallest `x` in `[lo, hi]` satisfying `feasible`, to within `tol`, given
/// that the feasible set is `[x*, hi]` with `feasible(hi)` and `!feasible(lo)`.
/// Returns a feasible point, so callers keep exact lower-bound guarantees.
pub fn bisect_feasible_boundary<F>(mut lo: Rat, mut hi: Rat, tol: &Rat, feasible: F) -> Rat
where
    F: Fn(&Rat) -> bool,
{
    debug_assert!(feasible(&hi) && !feasible(&lo));
    let half = rat(1, 2);
    while &hi - &lo > *tol {
        let mid = (&lo + &hi) * &half;
        if feasible(&mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

/// Default tolerance for bisection fallbacks: 1e-12.
pub fn bisection_tolerance() -> Rat {
    Rat::new(BigInt::one(), BigInt::from(10u64).pow(12))
}
