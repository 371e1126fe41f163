//! Rigorous enclosures of log10(m!): exact term-by-term summation below a
//! configurable threshold, two-sided Stirling bounds (Robbins' form) above.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::sync::{Mutex, OnceLock};

use super::constants::{consts, round_down, round_up};
use super::logmag::LogMag;
use crate::error::{Error, Result};

/// Default crossover from exact summation to the Robbins bounds.
pub const EXACT_SUM_THRESHOLD: u64 = 100_000;

/// Fixed-point scale for the prefix-sum cache: units of 2^-ACC_BITS.
const ACC_BITS: u64 = 200;

/// Prefix sums of log10 j plus the running log10 of the last index, kept as
/// dyadic integers (numerators at scale 2^-ACC_BITS) so each fill step is a
/// handful of integer operations.
struct FactCache {
    sums: Vec<(BigInt, BigInt)>,
    log_last: (BigInt, BigInt),
}

fn cache() -> &'static Mutex<FactCache> {
    static CACHE: OnceLock<Mutex<FactCache>> = OnceLock::new();
    CACHE.get_or_init(|| {
        Mutex::new(FactCache {
            sums: vec![
                (BigInt::zero(), BigInt::zero()),
                (BigInt::zero(), BigInt::zero()),
            ],
            log_last: (BigInt::zero(), BigInt::zero()),
        })
    })
}

/// log10(e) as dyadic integers at scale 2^-ACC_BITS (lower, upper).
fn log10_e_dyadic() -> &'static (BigInt, BigInt) {
    static LE: OnceLock<(BigInt, BigInt)> = OnceLock::new();
    LE.get_or_init(|| {
        let c = consts();
        let scale = BigRational::from_integer(BigInt::one() << ACC_BITS);
        let lo = (&c.log10_e.0 * &scale).floor().to_integer();
        let hi = (&c.log10_e.1 * &scale).ceil().to_integer();
        (lo, hi)
    })
}

/// Enclosure of log10(m!), width <= eps.
///
/// `m = 0` returns the exact point 0 (the empty product: 0! = 1).
/// For `1 <= m <= exact_threshold` the result is the cached interval sum of
/// `log10 j` over `j <= m`; above the threshold the Robbins bounds
/// `sqrt(2 pi m) (m/e)^m e^(1/(12m+1)) < m! < sqrt(2 pi m) (m/e)^m e^(1/(12m))`
/// are converted to base 10 with the cached constant enclosures.
pub fn logmag_factorial(m: &BigUint, eps: &BigRational, exact_threshold: u64) -> Result<LogMag> {
    if !eps.is_positive() {
        return Err(Error::NonpositiveValue);
    }
    if m.is_zero() {
        return Ok(LogMag::point(BigRational::zero()));
    }
    match m.to_u64() {
        Some(small) if small <= exact_threshold => {
            let lm = exact_sum(small)?;
            if lm.width() <= *eps {
                Ok(lm)
            } else {
                // requested precision finer than the cache grid: sum afresh
                fresh_sum(small, eps)
            }
        }
        _ => logmag_factorial_robbins(m, eps),
    }
}

/// ln(j/(j-1)) = 2 atanh(1/(2j-1)) in dyadic units of 2^-ACC_BITS:
/// term-by-term floor division with a two-unit tail allowance.
fn ln_ratio_dyadic(j: u64) -> (BigInt, BigInt) {
    let w = BigInt::from(2 * j - 1);
    let w2 = &w * &w;
    let unit = BigInt::one() << ACC_BITS;
    let mut denom_pow = w.clone(); // w^(2i+1)
    let mut sum_lo = BigInt::zero();
    let mut terms = 0u32;
    let mut odd = 1u64;
    loop {
        let term = &unit / (&denom_pow * BigInt::from(odd));
        if term.is_zero() {
            break;
        }
        sum_lo += term;
        terms += 1;
        denom_pow *= &w2;
        odd += 2;
    }
    // each floor lost under one unit; the omitted tail is below
    // 1/((odd) w^odd (1 - 1/w^2)) <= 2 units once the terms vanish
    let hi = &sum_lo + BigInt::from(terms + 2);
    (sum_lo << 1, hi << 1)
}

fn exact_sum(m: u64) -> Result<LogMag> {
    let mut guard = cache().lock().expect("factorial cache poisoned");
    let (le_lo, le_hi) = log10_e_dyadic();
    while (guard.sums.len() as u64) <= m {
        let j = guard.sums.len() as u64;
        let (dln_lo, dln_hi) = ln_ratio_dyadic(j);
        // ln units * log10(e) units, rescaled back to ACC_BITS
        let dlog_lo = (dln_lo * le_lo) >> ACC_BITS;
        let dlog_hi = ((dln_hi * le_hi) >> ACC_BITS) + BigInt::one();
        let log_j = (&guard.log_last.0 + dlog_lo, &guard.log_last.1 + dlog_hi);
        let prev = guard.sums.last().expect("cache never empty");
        let entry = (&prev.0 + &log_j.0, &prev.1 + &log_j.1);
        guard.sums.push(entry);
        guard.log_last = log_j;
    }
    let (lo, hi) = guard.sums[m as usize].clone();
    let scale = BigInt::one() << ACC_BITS;
    LogMag::new(
        BigRational::new(lo, scale.clone()),
        BigRational::new(hi, scale),
    )
}

fn fresh_sum(m: u64, eps: &BigRational) -> Result<LogMag> {
    let term_eps = eps / BigRational::from_integer(BigInt::from(2 * (m + 1)));
    let mut lo = BigRational::zero();
    let mut hi = BigRational::zero();
    for j in 2..=m {
        let t = LogMag::from_int(&BigUint::from(j), &term_eps)?;
        lo += t.lo();
        hi += t.hi();
    }
    LogMag::new(lo, hi)
}

/// Robbins' two-sided Stirling bounds, in base 10, for any m >= 1.
pub fn logmag_factorial_robbins(m: &BigUint, eps: &BigRational) -> Result<LogMag> {
    if m.is_zero() {
        return Err(Error::NonpositiveValue);
    }
    let c = consts();
    let m_int = BigInt::from(m.clone());
    let m_rat = BigRational::from_integer(m_int.clone());
    // budget the width contributed by m * log10(m)
    let term_eps = eps / (BigRational::from_integer(BigInt::from(8)) * (&m_rat + BigRational::one()));
    let lm = LogMag::from_int(m, &term_eps)?;
    let two = BigRational::from_integer(BigInt::from(2));
    let twelve_m = &m_rat * BigRational::from_integer(BigInt::from(12));
    let corr_lo = &c.log10_e.0 / (&twelve_m + BigRational::one());
    let corr_hi = &c.log10_e.1 / &twelve_m;
    let lo = (&c.log10_2pi.0 + lm.lo()) / &two + &m_rat * lm.lo() - &m_rat * &c.log10_e.1 + corr_lo;
    let hi = (&c.log10_2pi.1 + lm.hi()) / &two + &m_rat * lm.hi() - &m_rat * &c.log10_e.0 + corr_hi;
    LogMag::new(round_down(&lo, 200), round_up(&hi, 200))
}

/// Exact factorial as a big integer; guarded because the result has about
/// m log10(m) digits.
pub fn factorial_exact(m: u64) -> Result<BigUint> {
    const LIMIT: u64 = 2_000_000;
    if m > LIMIT {
        return Err(Error::BudgetExceeded {
            what: "exact factorial".into(),
            exponent: m.to_string(),
            budget: LIMIT,
        });
    }
    let mut acc = BigUint::one();
    for j in 2..=m {
        acc *= BigUint::from(j);
    }
    Ok(acc)
}

/// 10^e as a big integer.
pub fn pow10(e: u64) -> BigUint {
    num_traits::pow::Pow::pow(&BigUint::from(10u32), e)
}

/// Exact number of decimal digits of a positive integer, computed from the
/// binary length plus at most three exact comparisons with powers of ten.
pub fn decimal_digit_count(x: &BigUint) -> u64 {
    assert!(!x.is_zero(), "digit count of zero is undefined here");
    if x.is_one() {
        return 1;
    }
    let c = consts();
    let b = x.bits(); // 2^(b-1) <= x < 2^b
    let lo_est = (&c.log10_2.0 * BigRational::from_integer(BigInt::from(b - 1)))
        .floor()
        .to_integer()
        .to_u64()
        .unwrap_or(0);
    let hi_est = (&c.log10_2.1 * BigRational::from_integer(BigInt::from(b)))
        .floor()
        .to_integer()
        .to_u64()
        .unwrap_or(0);
    // floor(log10 x) lies in [lo_est, hi_est]; settle it exactly
    let mut e = hi_est;
    let mut p = pow10(e);
    while p > *x {
        debug_assert!(e > lo_est.saturating_sub(1));
        e -= 1;
        p /= BigUint::from(10u32);
    }
    debug_assert!(p <= *x && *x < &p * BigUint::from(10u32));
    e + 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bigmath::constants::rat_int;

    fn eps12() -> BigRational {
        BigRational::new(BigInt::one(), BigInt::from(10u64).pow(12))
    }

    #[test]
    fn factorial_of_zero_and_one_is_log_zero() {
        let z = logmag_factorial(&BigUint::zero(), &eps12(), EXACT_SUM_THRESHOLD).unwrap();
        assert_eq!(z.lo(), &BigRational::zero());
        let o = logmag_factorial(&BigUint::one(), &eps12(), EXACT_SUM_THRESHOLD).unwrap();
        assert_eq!(o.lo(), &BigRational::zero());
        assert_eq!(o.hi(), &BigRational::zero());
    }

    #[test]
    fn factorial_of_five_matches_direct_log_of_120() {
        // Oracle: 5! = 120 computed exactly, then enclosed directly.
        let f = logmag_factorial(&BigUint::from(5u32), &eps12(), EXACT_SUM_THRESHOLD).unwrap();
        let direct = LogMag::from_int(&BigUint::from(120u32), &eps12()).unwrap();
        assert!(f.lo() <= direct.hi() && direct.lo() <= f.hi());
        assert!(f.width() <= eps12());
    }

    #[test]
    fn factorial_digit_counts_bracket_the_interval() {
        // digits(m!) - 1 <= lo and hi < digits(m!) for a spread of m,
        // with the exact factorial as the oracle.
        let mut acc = BigUint::one();
        for m in 2u64..=400 {
            acc *= BigUint::from(m);
            let d = decimal_digit_count(&acc);
            let f = logmag_factorial(&BigUint::from(m), &eps12(), EXACT_SUM_THRESHOLD).unwrap();
            let d_minus_1 = rat_int(d as i64 - 1);
            let d_rat = rat_int(d as i64);
            assert!(f.lo() >= &d_minus_1, "m = {m}");
            assert!(f.hi() < &d_rat, "m = {m}");
        }
    }

    #[test]
    fn robbins_contains_exact_value_at_100() {
        // 100! has 158 digits; oracle via exact product.
        let exact = factorial_exact(100).unwrap();
        let d = decimal_digit_count(&exact);
        assert_eq!(d, 158);
        let r = logmag_factorial_robbins(&BigUint::from(100u32), &eps12()).unwrap();
        assert!(r.lo() >= &rat_int(157) && r.hi() < &rat_int(158));
        // independent route agreement: exact-sum tier and Robbins tier overlap
        let s = logmag_factorial(&BigUint::from(100u32), &eps12(), EXACT_SUM_THRESHOLD).unwrap();
        assert!(r.lo() <= s.hi() && s.lo() <= r.hi());
    }

    #[test]
    fn monotone_in_m() {
        let mut prev = logmag_factorial(&BigUint::from(1u32), &eps12(), EXACT_SUM_THRESHOLD).unwrap();
        for m in 2u64..=60 {
            let cur = logmag_factorial(&BigUint::from(m), &eps12(), EXACT_SUM_THRESHOLD).unwrap();
            assert!(
                prev.hi() < cur.lo(),
                "factorial logs must strictly increase at m = {m}"
            );
            prev = cur;
        }
    }

    #[test]
    fn factorial_100_sits_below_ten_to_158() {
        // 100! has 158 digits, so log10(100!) < 158: the comparison against
        // 10^158 (as 158 * log10(10)) must decide Less
        let f = logmag_factorial(&BigUint::from(100u32), &eps12(), EXACT_SUM_THRESHOLD).unwrap();
        let bound = LogMag::point(rat_int(158));
        assert_eq!(LogMag::verify_strict_less(&f, &bound), super::super::logmag::Cmp3::Less);
    }

    #[test]
    fn digit_count_exact_boundaries() {
        assert_eq!(decimal_digit_count(&BigUint::from(1u32)), 1);
        assert_eq!(decimal_digit_count(&BigUint::from(9u32)), 1);
        assert_eq!(decimal_digit_count(&BigUint::from(10u32)), 2);
        assert_eq!(decimal_digit_count(&BigUint::from(999u32)), 3);
        assert_eq!(decimal_digit_count(&BigUint::from(1000u32)), 4);
        let big = pow10(500);
        assert_eq!(decimal_digit_count(&big), 501);
        assert_eq!(decimal_digit_count(&(&big - BigUint::one())), 500);
        assert_eq!(decimal_digit_count(&(&big + BigUint::one())), 501);
    }
}
