//! Shared comparison helpers: sound decisions plus reported margins.
//!
//! Margin convention: for a claim "A < B" (or "A <= B"), the reported margin
//! is log10(B) - log10(A). On the exact tier it is the midpoint of a tight
//! enclosure of the true ratio's log; on the log tier it is the certified
//! slack at the decided bounds. Margins are rounded to 12 decimal places.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::bigmath::{Cmp3, LogMag};
use crate::decimal::round_to_places;
use crate::report::{Status, Tier};

#[derive(Debug, Clone)]
pub struct CheckOutcome {
    pub status: Status,
    pub margin: Option<BigRational>,
    pub tier: Tier,
}

pub(crate) fn margin_round(r: &BigRational) -> BigRational {
    round_to_places(r, 12)
}

fn small_eps() -> BigRational {
    BigRational::new(num_bigint::BigInt::from(1), num_bigint::BigInt::from(10u64).pow(13))
}

/// Midpoint of log10(b/a) for positive rationals; None when either is zero.
pub(crate) fn ratio_log_margin(a: &BigRational, b: &BigRational) -> Option<BigRational> {
    if a.is_zero() || b.is_zero() {
        return None;
    }
    let ratio = (b / a).abs();
    let lm = LogMag::from_ratio(&ratio, &small_eps()).ok()?;
    Some(margin_round(&lm.midpoint()))
}

pub(crate) fn ratio_log_margin_uint(a: &BigUint, b: &BigUint) -> Option<BigRational> {
    if a.is_zero() || b.is_zero() {
        return None;
    }
    if a == b {
        return Some(BigRational::zero());
    }
    let ar = BigRational::from_integer(a.clone().into());
    let br = BigRational::from_integer(b.clone().into());
    ratio_log_margin(&ar, &br)
}

/// Exact comparison of big integers under the claim `a < b` (strict) or
/// `a <= b`.
pub(crate) fn compare_uint(a: &BigUint, b: &BigUint, strict: bool) -> CheckOutcome {
    let holds = if strict { a < b } else { a <= b };
    CheckOutcome {
        status: if holds { Status::Verified } else { Status::Failed },
        margin: ratio_log_margin_uint(a, b),
        tier: Tier::Exact,
    }
}

/// Sound log-tier comparison under the claim `a < b` / `a <= b`.
///
/// Verified and Failed are only reported when the intervals separate; the
/// margin is the certified slack at the deciding endpoints.
pub(crate) fn compare_log(a: &LogMag, b: &LogMag, strict: bool) -> CheckOutcome {
    match LogMag::verify_strict_less(a, b) {
        Cmp3::Less => CheckOutcome {
            status: Status::Verified,
            margin: Some(margin_round(&(b.lo() - a.hi()))),
            tier: Tier::Log,
        },
        Cmp3::Greater => CheckOutcome {
            status: Status::Failed,
            margin: Some(margin_round(&(b.hi() - a.lo()))),
            tier: Tier::Log,
        },
        Cmp3::Undecided => {
            // a <= b can still be certified at a shared endpoint
            if !strict && a.hi() <= b.lo() {
                CheckOutcome {
                    status: Status::Verified,
                    margin: Some(margin_round(&(b.lo() - a.hi()))),
                    tier: Tier::Log,
                }
            } else {
                CheckOutcome {
                    status: Status::Undecided,
                    margin: None,
                    tier: Tier::Log,
                }
            }
        }
    }
}
