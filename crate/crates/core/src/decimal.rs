//! Exact decimal rendering of big rationals: no floats, digits come from
//! integer long division and agree with the rational to the stated place.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::bigmath::LogMag;

fn pow10_int(places: usize) -> BigInt {
    BigInt::from(num_traits::pow::Pow::pow(&BigUint::from(10u32), places as u64))
}

/// Round to `places` decimal places, half-to-even.
pub fn round_to_places(r: &BigRational, places: usize) -> BigRational {
    let scale = BigRational::from_integer(pow10_int(places));
    let scaled = r * &scale;
    let floor = scaled.floor();
    let frac = &scaled - &floor;
    let half = BigRational::new(BigInt::from(1), BigInt::from(2));
    let mut n = floor.to_integer();
    if frac > half || (frac == half && n.is_odd()) {
        n += 1;
    }
    BigRational::new(n, pow10_int(places))
}

/// Render with at most `places` fractional digits (half-even rounding,
/// trailing zeros trimmed).
pub fn to_decimal_string(r: &BigRational, places: usize) -> String {
    let rounded = round_to_places(r, places);
    let neg = rounded.is_negative();
    let scaled = (rounded * BigRational::from_integer(pow10_int(places)))
        .to_integer()
        .abs();
    let (int_part, frac_part) = scaled.div_rem(&pow10_int(places));
    let mut frac = format!("{:0width$}", frac_part, width = places);
    while frac.ends_with('0') {
        frac.pop();
    }
    let sign = if neg { "-" } else { "" };
    if frac.is_empty() {
        format!("{sign}{int_part}")
    } else {
        format!("{sign}{int_part}.{frac}")
    }
}

/// Render with exactly `places` fractional digits (no trimming).
pub fn to_decimal_string_fixed(r: &BigRational, places: usize) -> String {
    let rounded = round_to_places(r, places);
    let neg = rounded.is_negative();
    let scaled = (rounded * BigRational::from_integer(pow10_int(places)))
        .to_integer()
        .abs();
    let (int_part, frac_part) = scaled.div_rem(&pow10_int(places));
    let sign = if neg { "-" } else { "" };
    if places == 0 {
        format!("{sign}{int_part}")
    } else {
        format!("{sign}{int_part}.{frac_part:0width$}", width = places)
    }
}

/// Compact rigorous upper bound for a tiny positive radius: "< 1e{k}".
///
/// Returns "exact" for zero radius. The exponent comes from a log enclosure,
/// so the printed bound always dominates the true radius.
pub fn radius_bound_string(radius: &BigRational) -> String {
    if radius.is_zero() {
        return "exact".to_string();
    }
    let eps = BigRational::new(BigInt::from(1), BigInt::from(1000));
    match LogMag::from_ratio(radius, &eps) {
        Ok(lm) => {
            let e = lm.hi().floor().to_integer();
            let e1 = e + 1;
            format!("< 1e{}", e1)
        }
        Err(_) => "unbounded".to_string(),
    }
}

/// Midpoint rendering plus a rigorous radius bound for an enclosure.
pub fn render_enclosure(lo: &BigRational, hi: &BigRational, places: usize) -> String {
    let two = BigRational::from_integer(BigInt::from(2));
    let mid = (lo + hi) / &two;
    let radius = (hi - lo) / &two;
    format!(
        "{} (+/- {})",
        to_decimal_string_fixed(&mid, places),
        radius_bound_string(&radius)
    )
}
