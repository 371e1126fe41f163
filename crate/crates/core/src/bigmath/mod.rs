//! Two-tier rigorous number system: exact big rationals where digits can be
//! materialized, verified log10-interval magnitudes everywhere else.

mod constants;
mod factorial;
mod logmag;

pub(crate) use constants::consts;
pub use factorial::{
    decimal_digit_count, factorial_exact, logmag_factorial, logmag_factorial_robbins, pow10,
    EXACT_SUM_THRESHOLD,
};
pub use logmag::{geometric_tail_upper, Cmp3, LogMag};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

/// Default interval width target: 10^-12.
pub fn default_epsilon() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(10u64).pow(12))
}
