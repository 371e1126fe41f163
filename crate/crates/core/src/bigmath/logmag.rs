//! `LogMag`: a closed rational interval rigorously enclosing log10 of a
//! positive quantity. This is the only workable representation for numbers
//! like 10^(64!) whose digits can never be materialized.
//!
//! Endpoints are exact `BigRational`s; directed rounding onto a dyadic grid
//! keeps them small. No floating point anywhere.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::constants::{consts, eps_to_bits, ln_rational_enclosure, round_down, round_up};
use crate::error::{Error, Result};

/// Outcome of a sound interval comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Cmp3 {
    Less,
    Greater,
    Undecided,
}

/// Closed interval [lo, hi] containing log10(x) for some real x > 0.
#[derive(Debug, Clone, PartialEq)]
pub struct LogMag {
    lo: BigRational,
    hi: BigRational,
}

impl LogMag {
    pub fn new(lo: BigRational, hi: BigRational) -> Result<Self> {
        if lo > hi {
            return Err(Error::Parse("interval endpoints out of order".into()));
        }
        Ok(LogMag { lo, hi })
    }

    /// Degenerate interval for an exactly known log10.
    pub fn point(v: BigRational) -> Self {
        LogMag { lo: v.clone(), hi: v }
    }

    pub fn lo(&self) -> &BigRational {
        &self.lo
    }

    pub fn hi(&self) -> &BigRational {
        &self.hi
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / BigRational::from_integer(BigInt::from(2))
    }

    /// Enclosure of log10(x) for a positive integer, width <= eps.
    ///
    /// Exact powers of ten yield a degenerate (width 0) interval. Everything
    /// else goes through a leading-bits reduction: with M the top T bits of x
    /// at binary exponent e, M*2^e <= x < (M+1)*2^e, and ln M is enclosed by
    /// argument reduction to [1,2) plus the atanh series with an explicit
    /// remainder bound.
    pub fn from_int(x: &BigUint, eps: &BigRational) -> Result<Self> {
        if x.is_zero() {
            return Err(Error::NonpositiveValue);
        }
        if !eps.is_positive() {
            return Err(Error::NonpositiveValue);
        }
        if x.is_one() {
            return Ok(LogMag::point(BigRational::zero()));
        }
        if let Some(e) = exact_pow10_exponent(x) {
            return Ok(LogMag::point(BigRational::from_integer(BigInt::from(e))));
        }
        let eps_bits = eps_to_bits(eps);
        let mut mant_bits = (eps_bits + 6).max(64);
        loop {
            let lm = from_int_with_mantissa(x, mant_bits, eps_bits + 10);
            if lm.width() <= *eps {
                return Ok(lm);
            }
            mant_bits *= 2;
        }
    }

    /// Enclosure of log10(r) for a positive rational, width <= eps.
    pub fn from_ratio(r: &BigRational, eps: &BigRational) -> Result<Self> {
        if !r.is_positive() {
            return Err(Error::NonpositiveValue);
        }
        let half = eps / BigRational::from_integer(BigInt::from(2));
        let num = LogMag::from_int(r.numer().magnitude(), &half)?;
        let den = LogMag::from_int(r.denom().magnitude(), &half)?;
        Ok(num.quotient(&den))
    }

    /// log10(x*y): endpoint addition, exact.
    pub fn product(&self, other: &Self) -> Self {
        LogMag {
            lo: &self.lo + &other.lo,
            hi: &self.hi + &other.hi,
        }
    }

    /// log10(x/y): endpoint subtraction, exact.
    pub fn quotient(&self, other: &Self) -> Self {
        LogMag {
            lo: &self.lo - &other.hi,
            hi: &self.hi - &other.lo,
        }
    }

    /// log10(x^k) for integer k (endpoint scaling; k < 0 swaps endpoints).
    pub fn int_power(&self, k: &BigInt) -> Self {
        let kr = BigRational::from_integer(k.clone());
        if k.is_negative() {
            LogMag {
                lo: &self.hi * &kr,
                hi: &self.lo * &kr,
            }
        } else {
            LogMag {
                lo: &self.lo * &kr,
                hi: &self.hi * &kr,
            }
        }
    }

    /// log10(sqrt(x)).
    pub fn half(&self) -> Self {
        let two = BigRational::from_integer(BigInt::from(2));
        LogMag {
            lo: &self.lo / &two,
            hi: &self.hi / &two,
        }
    }

    /// Shift by an exact rational: log10(x * 10^r).
    pub fn shift_exact(&self, r: &BigRational) -> Self {
        LogMag {
            lo: &self.lo + r,
            hi: &self.hi + r,
        }
    }

    /// Enclosure of log10(x + y) for positive x, y.
    ///
    /// Lower bound: max of the lower endpoints (x + y >= max(x, y)).
    /// Upper bound: max(hi) + log10(1 + 10^(min_hi - max_hi)), where the
    /// correction is capped by log10(2) and tightened to
    /// 10^-floor(d) * log10(e) when the magnitudes are separated by d.
    pub fn sum_upper(&self, other: &Self) -> Self {
        let c = consts();
        let (hi_max, hi_min) = if self.hi >= other.hi {
            (&self.hi, &other.hi)
        } else {
            (&other.hi, &self.hi)
        };
        let d = hi_max - hi_min; // >= 0
        let mut extra = c.log10_2.1.clone();
        let d_floor = d.floor().to_integer();
        if d_floor >= BigInt::one() {
            let dcap = d_floor.to_u64().unwrap_or(64).min(64);
            let pow = BigRational::new(BigInt::one(), BigInt::from(10u32).pow(dcap as u32));
            let tight = pow * &c.log10_e.1;
            if tight < extra {
                extra = tight;
            }
        }
        let lo = if self.lo >= other.lo {
            self.lo.clone()
        } else {
            other.lo.clone()
        };
        LogMag {
            lo,
            hi: hi_max + extra,
        }
    }

    /// Sound strict comparison of the enclosed quantities.
    ///
    /// `Less` is only reported when every x in self is below every y in
    /// other, and symmetrically for `Greater`; overlapping intervals are
    /// `Undecided`.
    pub fn verify_strict_less(a: &Self, b: &Self) -> Cmp3 {
        if a.hi < b.lo {
            Cmp3::Less
        } else if b.hi < a.lo {
            Cmp3::Greater
        } else {
            Cmp3::Undecided
        }
    }
}

/// If x is exactly 10^e, returns e.
fn exact_pow10_exponent(x: &BigUint) -> Option<u64> {
    let ten = BigUint::from(10u32);
    if x.is_one() {
        return Some(0);
    }
    if (x % &ten) != BigUint::zero() {
        return None;
    }
    // strip factors of ten
    let mut y = x.clone();
    let mut e = 0u64;
    while (&y % &ten).is_zero() {
        y /= &ten;
        e += 1;
    }
    if y.is_one() {
        Some(e)
    } else {
        None
    }
}

fn from_int_with_mantissa(x: &BigUint, mant_bits: u64, out_bits: u64) -> LogMag {
    let c = consts();
    let b = x.bits();
    let tail_bits = out_bits + 16;
    let (ln_lo, ln_hi) = if b <= mant_bits {
        let r = BigRational::from_integer(BigInt::from(x.clone()));
        ln_rational_enclosure(&r, &c.ln2, tail_bits)
    } else {
        let e2 = b - mant_bits;
        let m = x >> e2;
        let m1 = &m + BigUint::one();
        let lo = ln_rational_enclosure(
            &BigRational::from_integer(BigInt::from(m)),
            &c.ln2,
            tail_bits,
        )
        .0;
        let hi = ln_rational_enclosure(
            &BigRational::from_integer(BigInt::from(m1)),
            &c.ln2,
            tail_bits,
        )
        .1;
        let e2r = BigRational::from_integer(BigInt::from(e2));
        (lo + &e2r * &c.ln2.0, hi + &e2r * &c.ln2.1)
    };
    // x >= 2 here, so ln x > 0 and multiplying by the positive enclosure of
    // 1/ln10 keeps the bounds directed.
    debug_assert!(ln_lo.is_positive());
    let lo = &ln_lo * &c.log10_e.0;
    let hi = &ln_hi * &c.log10_e.1;
    LogMag {
        lo: round_down(&lo, out_bits),
        hi: round_up(&hi, out_bits),
    }
}

/// Rigorous upper bound for a sum of positive terms dominated by a geometric
/// ratio: given an enclosure of the first term's log10 and a certified upper
/// bound `ratio_hi` on log10 of every successive term ratio, returns an
/// enclosure of log10 of the whole sum.
///
/// Precondition: ratio_hi <= -log10(2), i.e. each term is at most half the
/// previous one; the correction then never exceeds log10(2).
pub fn geometric_tail_upper(first_log: &LogMag, ratio_hi: &BigRational) -> Result<LogMag> {
    let c = consts();
    let neg_log2_hi = -&c.log10_2.1;
    if *ratio_hi > neg_log2_hi {
        return Err(Error::DominationMarginInsufficient {
            ratio: crate::decimal::to_decimal_string(ratio_hi, 6),
        });
    }
    // r = 10^ratio_hi <= 1/2. Bound r from above by an exact rational:
    // with d = -ratio_hi = D + f, 10^-d <= 10^-D * 2^-floor(f*log2(10)).
    let d = -ratio_hi;
    let d_floor = d.floor().to_integer();
    let f = &d - BigRational::from_integer(d_floor.clone());
    let g = (&f * &c.log2_10.0).floor().to_integer().to_u64().unwrap_or(0);
    let dcap = d_floor.to_u64().unwrap_or(1000).min(1000);
    let mut r_upper = BigRational::new(BigInt::one(), BigInt::from(10u32).pow(dcap as u32));
    if g > 0 {
        r_upper /= BigRational::from_integer(BigInt::one() << g.min(64));
    }
    // the precondition already guarantees r <= 1/2; cap the rational bound
    // there in case the floor computations above both came out zero
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    if r_upper > half {
        r_upper = half;
    }
    let factor = (BigRational::one() - r_upper).recip();
    let eps = BigRational::new(BigInt::one(), BigInt::one() << 80);
    let extra = LogMag::from_ratio(&factor, &eps)?;
    Ok(LogMag {
        lo: first_log.lo.clone(),
        hi: &first_log.hi + extra.hi(),
    })
}
