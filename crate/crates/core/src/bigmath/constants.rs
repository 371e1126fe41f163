//! Cached rational enclosures of ln 2, ln 10, pi and the derived base-10
//! constants. Everything is computed once from alternating / atanh-type
//! series with explicit remainder bounds; no floating point is involved.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::sync::OnceLock;

/// (lower bound, upper bound) pair of exact rationals.
pub(crate) type RatPair = (BigRational, BigRational);

/// Target width 2^-WORK_BITS for every cached constant.
const WORK_BITS: u64 = 256;
/// Dyadic grid the cached endpoints are rounded onto.
const OUT_BITS: u64 = 288;

pub(crate) fn rat_int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub(crate) fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn pow2_rat(bits: u64) -> BigRational {
    BigRational::from_integer(BigInt::one() << bits)
}

/// Largest multiple of 2^-bits that is <= r.
pub(crate) fn round_down(r: &BigRational, bits: u64) -> BigRational {
    let scale = pow2_rat(bits);
    let floored = (r * &scale).floor();
    floored / scale
}

/// Smallest multiple of 2^-bits that is >= r.
pub(crate) fn round_up(r: &BigRational, bits: u64) -> BigRational {
    let scale = pow2_rat(bits);
    let ceiled = (r * &scale).ceil();
    ceiled / scale
}

/// Enclosure of atanh(x) = sum_{i>=0} x^(2i+1)/(2i+1) for 0 <= x <= 1/2.
///
/// Runs in fixed-point units of 2^-(tail_bits+16) with directional
/// floor/ceil chains for the powers, so every step is plain integer
/// arithmetic. Once the next term falls under one unit, the remaining tail
/// is below 1/(1 - x^2) <= 4/3 of it, covered by a two-unit allowance.
pub(crate) fn atanh_enclosure(x: &BigRational, tail_bits: u64) -> RatPair {
    assert!(!x.is_negative() && *x <= rat(1, 2), "atanh argument out of range");
    if x.is_zero() {
        return (BigRational::zero(), BigRational::zero());
    }
    let w = tail_bits + 16;
    let scale = BigInt::one() << w;
    let xn2 = x.numer() * x.numer();
    let xd2 = x.denom() * x.denom();
    // floor/ceil chains bracketing x^(2i+1) * 2^w
    let mut p_lo = (&scale * x.numer()) / x.denom();
    let mut p_hi = &p_lo + BigInt::one();
    let mut sum_lo = BigInt::zero();
    let mut sum_hi = BigInt::zero();
    let mut odd: u64 = 1;
    loop {
        sum_lo += &p_lo / BigInt::from(odd);
        sum_hi += &p_hi / BigInt::from(odd) + BigInt::one();
        p_lo = (&p_lo * &xn2) / &xd2;
        p_hi = (&p_hi * &xn2) / &xd2 + BigInt::one();
        odd += 2;
        if &p_hi / BigInt::from(odd) == BigInt::zero() {
            sum_hi += BigInt::from(2u32);
            break;
        }
    }
    (
        BigRational::new(sum_lo, scale.clone()),
        BigRational::new(sum_hi, scale),
    )
}

/// Enclosure of atan(1/inv) via its alternating series; the error after
/// stopping is at most the first omitted term.
fn atan_recip_enclosure(inv: i64, tail_bits: u64) -> RatPair {
    let cutoff = BigRational::new(BigInt::one(), BigInt::one() << tail_bits);
    let x = rat(1, inv);
    let x2 = &x * &x;
    let mut power = x.clone();
    let mut sum = BigRational::zero();
    let mut odd = 1i64;
    let mut sign = true;
    loop {
        let term = &power / rat_int(odd);
        if sign {
            sum += &term;
        } else {
            sum -= &term;
        }
        power *= &x2;
        odd += 2;
        sign = !sign;
        let next = &power / rat_int(odd);
        if next <= cutoff {
            return (&sum - &next, sum + next);
        }
    }
}

fn add(a: &RatPair, b: &RatPair) -> RatPair {
    (&a.0 + &b.0, &a.1 + &b.1)
}

fn scale_int(a: &RatPair, k: i64) -> RatPair {
    assert!(k > 0);
    (&a.0 * rat_int(k), &a.1 * rat_int(k))
}

/// Divide a nonnegative pair by a positive pair.
fn div_pos(a: &RatPair, b: &RatPair) -> RatPair {
    assert!(!a.0.is_negative() && b.0.is_positive());
    (&a.0 / &b.1, &a.1 / &b.0)
}

fn round_pair(a: &RatPair) -> RatPair {
    (round_down(&a.0, OUT_BITS), round_up(&a.1, OUT_BITS))
}

/// ln of a positive rational, reduced to s*ln2 + 2*atanh(t) with the
/// mantissa in [1, 2) and t = (u-1)/(u+1) in [0, 1/3].
///
/// t is rounded onto a dyadic grid before the series (atanh is increasing,
/// so evaluating at the rounded-down and rounded-up arguments brackets it);
/// power-of-two denominators keep the series reductions cheap no matter how
/// wide the caller's rational is.
pub(crate) fn ln_rational_enclosure(r: &BigRational, ln2: &RatPair, tail_bits: u64) -> RatPair {
    assert!(r.is_positive());
    // binary exponent: largest s with 2^s <= r
    let num_bits = r.numer().bits() as i64;
    let den_bits = r.denom().bits() as i64;
    let mut s = num_bits - den_bits;
    let mut pow = if s >= 0 {
        BigRational::from_integer(BigInt::one() << s as u64)
    } else {
        BigRational::new(BigInt::one(), BigInt::one() << (-s) as u64)
    };
    if &pow > r {
        s -= 1;
        pow /= rat_int(2);
    } else if &pow * rat_int(2) <= *r {
        s += 1;
        pow *= rat_int(2);
    }
    let u = r / &pow; // in [1, 2)
    debug_assert!(u >= rat_int(1) && u < rat_int(2));
    let t = (&u - rat_int(1)) / (&u + rat_int(1));
    let t_lo = round_down(&t, tail_bits + 8).max(BigRational::zero());
    let t_hi = round_up(&t, tail_bits + 8);
    let alo = atanh_enclosure(&t_lo, tail_bits).0;
    let ahi = atanh_enclosure(&t_hi, tail_bits).1;
    let (slo, shi) = if s >= 0 {
        (&ln2.0 * rat_int(s), &ln2.1 * rat_int(s))
    } else {
        (&ln2.1 * rat_int(s), &ln2.0 * rat_int(s))
    };
    (slo + alo * rat_int(2), shi + ahi * rat_int(2))
}

/// All cached constant enclosures, width <= 2^-256 each.
pub(crate) struct Consts {
    pub ln2: RatPair,
    /// log10(e) = 1/ln 10
    pub log10_e: RatPair,
    pub log10_2: RatPair,
    pub log10_3: RatPair,
    pub log2_10: RatPair,
    /// log10(2*pi), for the Stirling-type factorial bounds
    pub log10_2pi: RatPair,
}

fn build_consts() -> Consts {
    let w = WORK_BITS + 16;
    let ln2 = scale_int(&atanh_enclosure(&rat(1, 3), w), 2);
    // 10 = 8 * 5/4, ln(5/4) = 2*atanh(1/9)
    let ln54 = scale_int(&atanh_enclosure(&rat(1, 9), w), 2);
    let ln10 = add(&scale_int(&ln2, 3), &ln54);
    // 3 = 2 * 3/2, ln(3/2) = 2*atanh(1/5)
    let ln32 = scale_int(&atanh_enclosure(&rat(1, 5), w), 2);
    let ln3 = add(&ln2, &ln32);
    // Machin: pi = 16*atan(1/5) - 4*atan(1/239); endpoints rounded onto the
    // dyadic grid before any further use
    let a5 = atan_recip_enclosure(5, w + 4);
    let a239 = atan_recip_enclosure(239, w + 4);
    let pi = (
        round_down(&(&a5.0 * rat_int(16) - &a239.1 * rat_int(4)), OUT_BITS),
        round_up(&(&a5.1 * rat_int(16) - &a239.0 * rat_int(4)), OUT_BITS),
    );
    // ln pi via the generic reduction, evaluated at both endpoints
    let lnpi = (
        ln_rational_enclosure(&pi.0, &ln2, w).0,
        ln_rational_enclosure(&pi.1, &ln2, w).1,
    );
    let ln2pi = add(&ln2, &lnpi);
    let one = (rat_int(1), rat_int(1));
    let log10_e = div_pos(&one, &ln10);
    let log10_2 = div_pos(&ln2, &ln10);
    let log10_3 = div_pos(&ln3, &ln10);
    let log2_10 = div_pos(&ln10, &ln2);
    let log10_2pi = div_pos(&ln2pi, &ln10);
    Consts {
        ln2: round_pair(&ln2),
        log10_e: round_pair(&log10_e),
        log10_2: round_pair(&log10_2),
        log10_3: round_pair(&log10_3),
        log2_10: round_pair(&log2_10),
        log10_2pi: round_pair(&log10_2pi),
    }
}

pub(crate) fn consts() -> &'static Consts {
    static CONSTS: OnceLock<Consts> = OnceLock::new();
    CONSTS.get_or_init(build_consts)
}

/// Convert an epsilon to "bits of precision": smallest b with 2^-b <= eps.
pub(crate) fn eps_to_bits(eps: &BigRational) -> u64 {
    assert!(eps.is_positive());
    // 1/eps <= 2^b
    let inv = eps.recip();
    let bits = (inv.numer().bits() as i64 - inv.denom().bits() as i64).max(0) as u64;
    (bits + 2).max(8)
}

#[allow(dead_code)]
pub(crate) fn rat_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}
