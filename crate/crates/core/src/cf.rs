//! Finite continued fractions [0; a_1, ..., a_N], their convergents, and the
//! standard approximation sandwiches.
//!
//! The leading term is fixed to 0: every number here lies in (0, 1].

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::bigmath::{factorial_exact, LogMag};
use crate::budget::Budget;
use crate::checks::{compare_log, compare_uint, CheckOutcome};
use crate::error::{Error, Result};

/// Partial quotients a_1..a_N of [0; a_1, ..., a_N]; every a_i >= 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialQuotients {
    terms: Vec<BigUint>,
}

impl PartialQuotients {
    pub fn new(terms: Vec<BigUint>) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::EmptyPartialQuotients);
        }
        for (i, t) in terms.iter().enumerate() {
            if t.is_zero() {
                return Err(Error::ZeroPartialQuotient { position: i + 1 });
            }
        }
        Ok(PartialQuotients { terms })
    }

    pub fn from_decimal_strings<S: AsRef<str>>(strs: &[S]) -> Result<Self> {
        let mut terms = Vec::with_capacity(strs.len());
        for s in strs {
            let t = BigUint::parse_bytes(s.as_ref().as_bytes(), 10)
                .ok_or_else(|| Error::Parse(format!("bad partial quotient {:?}", s.as_ref())))?;
            terms.push(t);
        }
        PartialQuotients::new(terms)
    }

    pub fn to_decimal_strings(&self) -> Vec<String> {
        self.terms.iter().map(|t| t.to_string()).collect()
    }

    /// Number of partial quotients N.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// a_j, 1-based.
    pub fn term(&self, j: usize) -> &BigUint {
        &self.terms[j - 1]
    }

    pub fn terms(&self) -> &[BigUint] {
        &self.terms
    }
}

/// Exact convergent p_n/q_n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Convergent {
    pub n: usize,
    pub p: BigUint,
    pub q: BigUint,
}

impl Convergent {
    pub fn value(&self) -> BigRational {
        BigRational::new(BigInt::from(self.p.clone()), BigInt::from(self.q.clone()))
    }
}

/// All convergents p_0/q_0 .. p_N/q_N by the standard recurrence
/// p_n = a_n p_(n-1) + p_(n-2), q_n = a_n q_(n-1) + q_(n-2), seeded with
/// p_0/q_0 = 0/1. The recurrence output is already in lowest terms
/// (p_n q_(n-1) - p_(n-1) q_n = +/-1), so nothing is reduced afterwards.
pub fn convergents(cf: &PartialQuotients) -> Vec<Convergent> {
    let n = cf.len();
    let mut out = Vec::with_capacity(n + 1);
    out.push(Convergent {
        n: 0,
        p: BigUint::zero(),
        q: BigUint::one(),
    });
    let (mut p_prev, mut q_prev) = (BigUint::one(), BigUint::zero());
    for (i, a) in cf.terms().iter().enumerate() {
        let last = out.last().expect("seeded");
        let p = a * &last.p + &p_prev;
        let q = a * &last.q + &q_prev;
        p_prev = last.p.clone();
        q_prev = last.q.clone();
        out.push(Convergent { n: i + 1, p, q });
    }
    out
}

/// Exact value of the finite fraction, folded from the back; independent of
/// the convergent recurrence.
pub fn exact_value(cf: &PartialQuotients) -> BigRational {
    let mut x = BigRational::from_integer(BigInt::from(cf.terms().last().expect("nonempty").clone()));
    for a in cf.terms().iter().rev().skip(1) {
        x = BigRational::from_integer(BigInt::from(a.clone())) + x.recip();
    }
    x.recip()
}

/// Closed interval with endpoints p_n/q_n and p_(n+1)/q_(n+1), sorted.
/// Every infinite extension of the fraction lies strictly inside.
pub fn enclosure(cf: &PartialQuotients, n: usize) -> Result<(BigRational, BigRational)> {
    let convs = convergents(cf);
    enclosure_from(&convs, n)
}

pub(crate) fn enclosure_from(
    convs: &[Convergent],
    n: usize,
) -> Result<(BigRational, BigRational)> {
    if n + 1 >= convs.len() {
        return Err(Error::IndexOutOfRange {
            index: n,
            max: convs.len().saturating_sub(2),
        });
    }
    let a = convs[n].value();
    let b = convs[n + 1].value();
    if a <= b {
        Ok((a, b))
    } else {
        Ok((b, a))
    }
}

/// Tight enclosure of every infinite extension of the whole fraction: the
/// open interval between p_N/q_N and (p_N + p_(N-1))/(q_N + q_(N-1)),
/// returned sorted. Distinct finite prefixes give intervals with disjoint
/// interiors (adjacent branch choices share one excluded endpoint).
pub fn extension_enclosure(cf: &PartialQuotients) -> (BigRational, BigRational) {
    let convs = convergents(cf);
    let last = &convs[convs.len() - 1];
    let prev = &convs[convs.len() - 2];
    let a = last.value();
    let b = BigRational::new(
        BigInt::from(&last.p + &prev.p),
        BigInt::from(&last.q + &prev.q),
    );
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// The standard two-sided gap bounds: for any infinite extension xi,
/// 1/(q_n (q_(n+1) + q_n)) < |xi - p_n/q_n| < 1/(q_n q_(n+1)).
pub fn gap_bounds(cf: &PartialQuotients, n: usize) -> Result<(BigRational, BigRational)> {
    let convs = convergents(cf);
    gap_bounds_from(&convs, n)
}

pub(crate) fn gap_bounds_from(
    convs: &[Convergent],
    n: usize,
) -> Result<(BigRational, BigRational)> {
    if n + 1 >= convs.len() {
        return Err(Error::IndexOutOfRange {
            index: n,
            max: convs.len().saturating_sub(2),
        });
    }
    let qn = BigInt::from(convs[n].q.clone());
    let qn1 = BigInt::from(convs[n + 1].q.clone());
    let lower = BigRational::new(BigInt::one(), &qn * (&qn1 + &qn));
    let upper = BigRational::new(BigInt::one(), &qn * &qn1);
    Ok((lower, upper))
}

/// Exact check of (a_1 + 1)(a_2 + 1) ... (a_n + 1) > q_n.
pub fn check_quotient_product(cf: &PartialQuotients, n: usize) -> Result<CheckOutcome> {
    if n > cf.len() {
        return Err(Error::IndexOutOfRange { index: n, max: cf.len() });
    }
    let convs = convergents(cf);
    let mut prod = BigUint::one();
    for a in cf.terms().iter().take(n) {
        prod *= a + BigUint::one();
    }
    // claim q_n < prod
    Ok(compare_uint(&convs[n].q, &prod, true))
}

/// Growth check q_m > e^((m-3)!), decided through the log10 algebra:
/// log10(q_m) > (m-3)! * log10(e).
pub fn check_q_growth(cf: &PartialQuotients, m: usize, eps: &BigRational) -> Result<CheckOutcome> {
    if m < 3 {
        return Err(Error::GrowthIndexTooSmall { m });
    }
    if m > cf.len() {
        return Err(Error::IndexOutOfRange { index: m, max: cf.len() });
    }
    let convs = convergents(cf);
    check_q_growth_from(&convs, m, eps)
}

pub(crate) fn check_q_growth_from(
    convs: &[Convergent],
    m: usize,
    eps: &BigRational,
) -> Result<CheckOutcome> {
    if m < 3 {
        return Err(Error::GrowthIndexTooSmall { m });
    }
    let c = crate::bigmath::consts();
    let e_exp = factorial_exact((m - 3) as u64)?;
    let e_exp_rat = BigRational::from_integer(BigInt::from(e_exp));
    let rhs = LogMag::new(&e_exp_rat * &c.log10_e.0, &e_exp_rat * &c.log10_e.1)
        .expect("ordered by construction");
    let lhs = LogMag::from_int(&convs[m].q, eps)?;
    // claim rhs < lhs, i.e. e^((m-3)!) < q_m
    Ok(compare_log(&rhs, &lhs, true))
}

/// Exact-or-log comparison of q_(n+1) against q_n^(n-1); used by the
/// ultra-strong verification. Exact powering is used while the result stays
/// inside the bit budget, the log tier otherwise.
pub(crate) fn compare_power(
    base: &BigUint,
    exp: u64,
    rhs: &BigUint,
    strict: bool,
    eps: &BigRational,
    budget: &Budget,
) -> Result<CheckOutcome> {
    if exp == 0 {
        // base^0 = 1
        return Ok(compare_uint(&BigUint::one(), rhs, strict));
    }
    let bits_needed = base.bits().saturating_mul(exp);
    if bits_needed <= budget.max_int_bits {
        let power = num_traits::pow::Pow::pow(base, exp);
        Ok(compare_uint(&power, rhs, strict))
    } else {
        let lm_base = LogMag::from_int(base, eps)?;
        let lhs = lm_base.int_power(&BigInt::from(exp));
        let lm_rhs = LogMag::from_int(rhs, eps)?;
        Ok(compare_log(&lhs, &lm_rhs, strict))
    }
}

/// Serialize as a list of decimal strings (arbitrary size).
impl serde::Serialize for PartialQuotients {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_decimal_strings().serialize(s)
    }
}

impl<'de> serde::Deserialize<'de> for PartialQuotients {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let strs = Vec::<String>::deserialize(d)?;
        PartialQuotients::from_decimal_strings(&strs).map_err(serde::de::Error::custom)
    }
}
