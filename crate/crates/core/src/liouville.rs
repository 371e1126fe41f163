//! The branch-choice construction of ultra-strong Liouville numbers and the
//! witness checks behind the Liouville property.
//!
//! A number xi = [0; a_1, a_2, ...] is ultra-strong when its own convergents
//! satisfy |xi - p_n/q_n| < 1/q_n^n for every n >= 1. The family built here
//! fixes a_1 = a_2 = a_3 = 1 and, for j >= 4, takes
//! a_j = v_(j-1) + bit_j with v_(j-1) = (prod_(k<j) (a_k + 1))^(j-3),
//! one free bit per level.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::bigmath::{decimal_digit_count, pow10};
use crate::budget::Budget;
use crate::cf::{compare_power, convergents, Convergent, PartialQuotients};
use crate::checks::ratio_log_margin_uint;
use crate::error::{Error, Result};
use crate::report::{AuditReport, AuditRow, IndexRef, Status};

/// One branch bit per level j >= 4.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BranchChoices {
    bits: Vec<bool>,
}

impl BranchChoices {
    pub fn new(bits: Vec<bool>) -> Self {
        BranchChoices { bits }
    }

    /// Parse a string over {0,1}; empty is allowed.
    pub fn from_bit_str(s: &str) -> Result<Self> {
        let mut bits = Vec::with_capacity(s.len());
        for ch in s.chars() {
            match ch {
                '0' => bits.push(false),
                '1' => bits.push(true),
                _ => return Err(Error::Parse(format!("branch bits must be 0/1, got {ch:?}"))),
            }
        }
        Ok(BranchChoices { bits })
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }
}

/// Build the partial quotients a_1..a_depth from branch bits.
///
/// The first three quotients are pinned to 1, so `depth >= 3` and the
/// choices must supply a bit for each 4 <= j <= depth. The running product
/// P_j = prod_(k<=j) (a_k + 1) is kept exactly; the bit budget guards the
/// doubly-exponential blowup of v_(j-1) = P_(j-1)^(j-3).
pub fn generate_ultra_strong(
    choices: &BranchChoices,
    depth: usize,
    budget: &Budget,
) -> Result<PartialQuotients> {
    if depth < 3 {
        return Err(Error::DepthTooSmall { depth });
    }
    let needed = depth - 3;
    if choices.len() < needed {
        return Err(Error::InsufficientBits {
            needed,
            got: choices.len(),
            depth,
        });
    }
    let mut terms: Vec<BigUint> = vec![BigUint::one(), BigUint::one(), BigUint::one()];
    let mut prod = BigUint::from(8u32); // (1+1)^3
    for j in 4..=depth {
        let exp = (j - 3) as u64;
        let v_bits = prod.bits().saturating_mul(exp);
        if v_bits > budget.max_int_bits {
            return Err(Error::BudgetExceeded {
                what: format!("partial quotient a_{j}"),
                exponent: format!("~{v_bits} bits"),
                budget: budget.max_int_bits,
            });
        }
        let v = num_traits::pow::Pow::pow(&prod, exp);
        let bit = choices.bits[j - 4];
        let a_j = if bit { &v + BigUint::one() } else { v };
        prod *= &a_j + BigUint::one();
        terms.push(a_j);
    }
    PartialQuotients::new(terms)
}

/// Per-index verification that the convergents satisfy the ultra-strong
/// definition at finite depth.
///
/// For each n the uniform sufficient condition q_(n+1) >= q_n^(n-1) is
/// checked (it gives 1/(q_n q_(n+1)) <= 1/q_n^n, and the gap bound does the
/// rest); for n >= 3 the construction's own chain a_(n+1) > q_n^(n-2) is
/// reported as a second row.
pub fn verify_ultra_strong(
    cf: &PartialQuotients,
    up_to: usize,
    eps: &BigRational,
    budget: &Budget,
) -> Result<AuditReport> {
    if up_to + 1 > cf.len() {
        return Err(Error::IndexOutOfRange {
            index: up_to,
            max: cf.len().saturating_sub(1),
        });
    }
    let convs = convergents(cf);
    let mut report = AuditReport::new();
    for n in 1..=up_to {
        let out = compare_power(&convs[n].q, (n - 1) as u64, &convs[n + 1].q, false, eps, budget)?;
        // claim was q_n^(n-1) <= q_(n+1)
        report.push(
            AuditRow::new("U.suff", IndexRef::N(n), out.status, out.tier)
                .with_margin(out.margin)
                .with_note("q_(n+1) >= q_n^(n-1)"),
        );
        if n >= 3 {
            let out = compare_power(&convs[n].q, (n - 2) as u64, cf.term(n + 1), true, eps, budget)?;
            report.push(
                AuditRow::new("U.chain", IndexRef::N(n), out.status, out.tier)
                    .with_margin(out.margin)
                    .with_note("a_(n+1) > q_n^(n-2)"),
            );
        }
    }
    report.sort();
    Ok(report)
}

/// phi(q): the smallest positive integer k with q <= 10^(k!), computed from
/// the exact decimal digit count.
pub fn phi(q: &BigUint) -> Result<u64> {
    if q.is_zero() {
        return Err(Error::NonpositiveValue);
    }
    let d = decimal_digit_count(q); // 10^(d-1) <= q < 10^d
    let d_big = BigUint::from(d);
    let mut fact = BigUint::one();
    for k in 1u64.. {
        fact *= BigUint::from(k);
        if fact >= d_big {
            return Ok(k);
        }
        if &fact + BigUint::one() == d_big {
            // q has exactly k!+1 digits; q <= 10^(k!) only at equality
            if let Some(e) = fact.to_u64() {
                if *q == pow10(e) {
                    return Ok(k);
                }
            }
        }
    }
    unreachable!("factorials are unbounded")
}

/// phi at one convergent index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhiValue {
    pub n: usize,
    pub phi: u64,
}

/// Compute phi over a contiguous index window of convergents.
pub fn phi_window(convs: &[Convergent], from: usize, to: usize) -> Result<Vec<PhiValue>> {
    if from == 0 || to < from || to >= convs.len() {
        return Err(Error::IndexOutOfRange {
            index: to,
            max: convs.len().saturating_sub(1),
        });
    }
    (from..=to)
        .map(|n| Ok(PhiValue { n, phi: phi(&convs[n].q)? }))
        .collect()
}

/// Window-scoped classification of the phi growth dichotomy for a given k.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Classification {
    /// phi_n <= n^k throughout the window.
    Case1Evidence,
    /// Transition pairs (n_j, k): phi_(n_j) <= n_j^k while
    /// phi_(n_j+1) > (n_j+1)^k. May be empty when the window starts beyond
    /// a transition.
    Case2Pairs(Vec<(usize, u32)>),
}

pub fn classify_case(phis: &[PhiValue], k: u32) -> Result<Classification> {
    if phis.is_empty() {
        return Err(Error::EmptyWindow);
    }
    for w in phis.windows(2) {
        if w[1].n != w[0].n + 1 {
            return Err(Error::Parse("phi window must be contiguous".into()));
        }
    }
    let holds: Vec<bool> = phis
        .iter()
        .map(|pv| {
            let nk = num_traits::pow::Pow::pow(&BigUint::from(pv.n), k as u64);
            BigUint::from(pv.phi) <= nk
        })
        .collect();
    if holds.iter().all(|&h| h) {
        return Ok(Classification::Case1Evidence);
    }
    let mut pairs = Vec::new();
    for (i, w) in holds.windows(2).enumerate() {
        if w[0] && !w[1] {
            pairs.push((phis[i].n, k));
        }
    }
    Ok(Classification::Case2Pairs(pairs))
}

/// A rational witness p/q with exponent n for the inequality
/// 0 < |xi - p/q| < 1/q^n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiouvilleWitness {
    pub p: BigInt,
    pub q: BigUint,
    pub exponent: u32,
}

impl LiouvilleWitness {
    pub fn value(&self) -> BigRational {
        BigRational::new(self.p.clone(), BigInt::from(self.q.clone()))
    }
}

/// Check a witness against an enclosure of xi, entirely in exact rational
/// arithmetic. The enclosure is a closed interval known to contain xi with
/// xi strictly interior (as continued-fraction enclosures are).
///
/// Verified: p/q is outside the open interval (so |xi - p/q| > 0
/// structurally) and the distance to the farther endpoint is below 1/q^n.
/// Undecided: p/q lies strictly inside the interval.
pub fn verify_witness(enclosure: &(BigRational, BigRational), w: &LiouvilleWitness) -> Status {
    let (lo, hi) = enclosure;
    let r = w.value();
    if &r > lo && &r < hi {
        return Status::Undecided;
    }
    let d_lo = (lo - &r).abs();
    let d_hi = (hi - &r).abs();
    let dist_max = if d_lo >= d_hi { d_lo } else { d_hi };
    let qn = num_traits::pow::Pow::pow(&w.q, w.exponent as u64);
    let bound = BigRational::new(BigInt::one(), BigInt::from(qn));
    if dist_max < bound {
        Status::Verified
    } else {
        Status::Failed
    }
}

/// Margin helper for witness checks: log10((1/q^n) / dist).
pub fn witness_margin(
    enclosure: &(BigRational, BigRational),
    w: &LiouvilleWitness,
) -> Option<BigRational> {
    let (lo, hi) = enclosure;
    let r = w.value();
    let d_lo = (lo - &r).abs();
    let d_hi = (hi - &r).abs();
    let dist_max = if d_lo >= d_hi { d_lo } else { d_hi };
    if dist_max.is_zero() {
        return None;
    }
    let qn = num_traits::pow::Pow::pow(&w.q, w.exponent as u64);
    // log10(bound/dist) = log10(dist_den / (dist_num * q^n))
    let scaled_num = dist_max.numer().magnitude() * qn;
    ratio_log_margin_uint(&scaled_num, dist_max.denom().magnitude())
}
