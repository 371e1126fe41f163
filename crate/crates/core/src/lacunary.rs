//! Gap sequences s_1 < s_2 < ..., the series F(z) = sum_k alpha_k z^k/10^(k!)
//! with alpha_k = 1 exactly at the gap indices, exact truncation evaluation,
//! rigorous tail bounds, and the canonical-denominator approximants.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::bigmath::{consts, factorial_exact, logmag_factorial, pow10, LogMag};
use crate::budget::{Budget, CancelToken};
use crate::cf::{convergents, PartialQuotients};
use crate::checks::{compare_log, margin_round, CheckOutcome};
use crate::error::{Error, Result};
use crate::liouville::phi;
use crate::report::{AuditRow, IndexRef, Status, Tier};

/// One gap index: either base^(n!) kept symbolically (with the value
/// materialized while affordable) or an explicit integer from a custom
/// sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
enum GapTerm {
    Power {
        base: u8,
        n: usize,
        fact_exp: BigUint,
        value: Option<BigUint>,
    },
    Explicit(BigUint),
}

/// The indices of the nonzero series coefficients.
///
/// Standard sequences take s_n = base_n^(n!) with base_n in {2, 3}; custom
/// strictly increasing sequences are allowed for test oracles, in which case
/// the growth hypothesis is the caller's responsibility.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GapSequence {
    terms: Vec<GapTerm>,
}

/// Materialize base^(n!) only while n stays at or below this.
const MATERIALIZE_N_LIMIT: usize = 8;

impl GapSequence {
    /// Standard sequence from bases over {2, 3}.
    pub fn standard(bases: &[u8]) -> Result<Self> {
        if bases.is_empty() {
            return Err(Error::EmptyWindow);
        }
        let mut terms = Vec::with_capacity(bases.len());
        let mut fact = BigUint::one();
        for (i, &b) in bases.iter().enumerate() {
            let n = i + 1;
            if b != 2 && b != 3 {
                return Err(Error::GapBaseOutOfRange { base: b as u64 });
            }
            fact *= BigUint::from(n as u64);
            let value = if n <= MATERIALIZE_N_LIMIT {
                let e = fact.to_u64().expect("small factorial");
                Some(num_traits::pow::Pow::pow(&BigUint::from(b), e))
            } else {
                None
            };
            terms.push(GapTerm::Power {
                base: b,
                n,
                fact_exp: fact.clone(),
                value,
            });
        }
        Ok(GapSequence { terms })
    }

    /// Parse bases from a string like "2322".
    pub fn from_base_str(s: &str) -> Result<Self> {
        let mut bases = Vec::with_capacity(s.len());
        for ch in s.chars() {
            match ch {
                '2' => bases.push(2),
                '3' => bases.push(3),
                _ => return Err(Error::Parse(format!("gap bases must be 2/3, got {ch:?}"))),
            }
        }
        GapSequence::standard(&bases)
    }

    /// Custom strictly increasing sequence with s_1 >= 2.
    pub fn custom(values: Vec<BigUint>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptyWindow);
        }
        if values[0] < BigUint::from(2u32) {
            return Err(Error::GapTermsNotIncreasing);
        }
        for w in values.windows(2) {
            if w[1] <= w[0] {
                return Err(Error::GapTermsNotIncreasing);
            }
        }
        Ok(GapSequence {
            terms: values.into_iter().map(GapTerm::Explicit).collect(),
        })
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// True for explicitly listed sequences, whose series are polynomials
    /// with no tail beyond the last term.
    pub fn is_custom(&self) -> bool {
        self.terms.iter().all(|t| matches!(t, GapTerm::Explicit(_)))
    }

    /// Materialized value of s_i (1-based), when available.
    pub fn term_value(&self, i: usize) -> Option<&BigUint> {
        match &self.terms[i - 1] {
            GapTerm::Power { value, .. } => value.as_ref(),
            GapTerm::Explicit(v) => Some(v),
        }
    }

    pub fn term_u64(&self, i: usize) -> Option<u64> {
        self.term_value(i).and_then(|v| v.to_u64())
    }

    /// Enclosure of log10(s_i). For base-power terms this is
    /// n! * (cached log10 of the base), so terms sharing a base share the
    /// same underlying enclosure and exponent differences cancel exactly.
    pub fn log10_term(&self, i: usize, eps: &BigRational) -> Result<LogMag> {
        match &self.terms[i - 1] {
            GapTerm::Power { base, fact_exp, .. } => {
                let c = consts();
                let l = match base {
                    2 => &c.log10_2,
                    _ => &c.log10_3,
                };
                let e = BigRational::from_integer(BigInt::from(fact_exp.clone()));
                Ok(LogMag::new(&l.0 * &e, &l.1 * &e).expect("ordered"))
            }
            GapTerm::Explicit(v) => LogMag::from_int(v, eps),
        }
    }

    /// Sound comparison s_i <= bound without materializing huge terms.
    fn term_leq(&self, i: usize, bound: &BigUint) -> Result<bool> {
        if let Some(v) = self.term_value(i) {
            return Ok(v <= bound);
        }
        // symbolic base^(n!): compare bit lengths rigorously
        if let GapTerm::Power { base, fact_exp, .. } = &self.terms[i - 1] {
            let c = consts();
            let l = match base {
                2 => &c.log10_2,
                _ => &c.log10_3,
            };
            let e = BigRational::from_integer(BigInt::from(fact_exp.clone()));
            let log_term_lo = &l.0 * &e;
            let bound_log_hi = LogMag::from_int(bound, &crate::bigmath::default_epsilon())?;
            if &log_term_lo > bound_log_hi.hi() {
                return Ok(false);
            }
            // A symbolic term that small would have been materialized.
            Err(Error::InsufficientGapTerms {
                index: format!("{base}^{fact_exp}"),
            })
        } else {
            unreachable!("explicit terms always materialize")
        }
    }

    /// alpha_k: 1 exactly when k is a gap term. Errors when the sequence is
    /// too short to decide membership (never guesses).
    pub fn alpha(&self, k: &BigUint) -> Result<bool> {
        if k.is_zero() {
            return Ok(false);
        }
        for i in 1..=self.len() {
            if let Some(v) = self.term_value(i) {
                if v == k {
                    return Ok(true);
                }
                if v > k {
                    return Ok(false);
                }
            } else if let GapTerm::Power { base, n, fact_exp, .. } = &self.terms[i - 1] {
                // exact power test without materializing: k = base^(n!)?
                let e = fact_exp
                    .to_u64()
                    .ok_or_else(|| Error::InsufficientGapTerms { index: format!("s_{n}") })?;
                match base {
                    2 => {
                        let is_pow2 = k.count_ones() == 1;
                        if is_pow2 && k.bits() - 1 == e {
                            return Ok(true);
                        }
                        if k.bits() <= e {
                            return Ok(false);
                        }
                    }
                    _ => {
                        // compare against 3^(n!) via digit-length bracket,
                        // settling ties exactly
                        let c = consts();
                        let er = BigRational::from_integer(BigInt::from(e));
                        let lo = &c.log10_3.0 * &er;
                        let k_log = LogMag::from_int(k, &crate::bigmath::default_epsilon())?;
                        if k_log.hi() < &lo {
                            return Ok(false);
                        }
                        let hi = &c.log10_3.1 * &er;
                        if k_log.lo() > &hi {
                            continue;
                        }
                        return Err(Error::InsufficientGapTerms {
                            index: format!("3^{e} tie"),
                        });
                    }
                }
            }
        }
        // k beyond the last known term: membership is undecidable
        let last = self.len();
        match self.term_value(last) {
            Some(v) if k <= v => Ok(false),
            _ => Err(Error::InsufficientGapTerms { index: k.to_string() }),
        }
    }

    /// Smallest index t with s_t > m, scanning the known terms.
    pub fn first_index_above(&self, m: &BigUint) -> Result<usize> {
        for i in 1..=self.len() {
            if !self.term_leq(i, m)? {
                return Ok(i);
            }
        }
        Err(Error::NoGapTermBeyond { m: m.to_string() })
    }

    /// s_i! as an exact integer (for exponent arithmetic); errors when the
    /// term is symbolic or the factorial is out of reach.
    pub fn term_factorial_exact(&self, i: usize) -> Result<BigUint> {
        let v = self
            .term_value(i)
            .ok_or_else(|| Error::InsufficientGapTerms { index: format!("s_{i}") })?;
        let small = v.to_u64().ok_or_else(|| Error::BudgetExceeded {
            what: format!("factorial of gap term s_{i}"),
            exponent: v.to_string(),
            budget: 2_000_000,
        })?;
        factorial_exact(small)
    }

    /// Enclosure of log10(s_i!).
    pub fn log10_term_factorial(
        &self,
        i: usize,
        eps: &BigRational,
        fact_threshold: u64,
    ) -> Result<LogMag> {
        match &self.terms[i - 1] {
            GapTerm::Power { base, fact_exp, value, .. } => {
                if let Some(v) = value {
                    logmag_factorial(v, eps, fact_threshold)
                } else {
                    // materialize just for the Robbins bound if affordable
                    let e = fact_exp.to_u64().ok_or_else(|| Error::BudgetExceeded {
                        what: "gap term exponent".into(),
                        exponent: fact_exp.to_string(),
                        budget: u64::MAX,
                    })?;
                    if e <= 40_000_000 {
                        let v = num_traits::pow::Pow::pow(&BigUint::from(*base), e);
                        logmag_factorial(&v, eps, fact_threshold)
                    } else {
                        Err(Error::BudgetExceeded {
                            what: "gap term for factorial bound".into(),
                            exponent: e.to_string(),
                            budget: 40_000_000,
                        })
                    }
                }
            }
            GapTerm::Explicit(v) => logmag_factorial(v, eps, fact_threshold),
        }
    }
}

/// Growth-hypothesis audit: s_n > s_(n-1)^k per index, plus strict
/// increase of the log margins log10(s_n) - k*log10(s_(n-1)) across the
/// window (the finite stand-in for s_n/s_(n-1)^k -> infinity).
///
/// Returns the per-index rows and the monotonicity row. The window is
/// 1-based over term indices and must span at least three terms.
pub fn check_gap_growth(
    gaps: &GapSequence,
    k: u32,
    window: (usize, usize),
    eps: &BigRational,
) -> Result<(Vec<AuditRow>, AuditRow)> {
    let (lo, hi) = window;
    if lo < 1 || hi > gaps.len() {
        return Err(Error::IndexOutOfRange { index: hi, max: gaps.len() });
    }
    if hi - lo < 2 {
        return Err(Error::WindowTooShort { min: 3, got: hi.saturating_sub(lo) + 1 });
    }
    let id = format!("GAP.growth.k={k}");
    let mut rows = Vec::new();
    let mut margins: Vec<LogMag> = Vec::new();
    for n in (lo + 1)..=hi {
        let (outcome, margin_ival) = gap_margin(gaps, k, n, eps)?;
        margins.push(margin_ival);
        rows.push(
            AuditRow::new(&id, IndexRef::N(n), outcome.status, outcome.tier)
                .with_margin(outcome.margin),
        );
    }
    // strict increase, decided soundly on the margin intervals
    let mut status = Status::Verified;
    let mut min_gap: Option<BigRational> = None;
    for w in margins.windows(2) {
        let (a, b) = (&w[0], &w[1]);
        if b.lo() > a.hi() {
            let gap = b.lo() - a.hi();
            if min_gap.as_ref().map(|g| &gap < g).unwrap_or(true) {
                min_gap = Some(gap);
            }
        } else if b.hi() <= a.lo() {
            status = Status::Failed;
            min_gap = Some(b.hi() - a.lo());
            break;
        } else {
            status = Status::Undecided;
            min_gap = None;
            break;
        }
    }
    let mono = AuditRow::new(
        &format!("GAP.monotone.k={k}"),
        IndexRef::None,
        status,
        Tier::Log,
    )
    .with_margin(min_gap.map(|g| margin_round(&g)))
    .with_note("log margins strictly increase across the window");
    Ok((rows, mono))
}

/// Margin interval for log10(s_n) - k*log10(s_(n-1)), with the same-base
/// power case handled exactly (shared base enclosure, integer coefficient).
fn gap_margin(
    gaps: &GapSequence,
    k: u32,
    n: usize,
    eps: &BigRational,
) -> Result<(CheckOutcome, LogMag)> {
    let c = consts();
    if let (
        GapTerm::Power { base: b1, fact_exp: e1, .. },
        GapTerm::Power { base: b0, fact_exp: e0, .. },
    ) = (&gaps.terms[n - 1], &gaps.terms[n - 2])
    {
        if b1 == b0 {
            // margin = (n! - k*(n-1)!) * log10(base), exact coefficient
            let coeff = BigInt::from(e1.clone()) - BigInt::from(k) * BigInt::from(e0.clone());
            let l = match b1 {
                2 => &c.log10_2,
                _ => &c.log10_3,
            };
            let coeff_rat = BigRational::from_integer(coeff.clone());
            let ival = if coeff.is_negative() {
                LogMag::new(&l.1 * &coeff_rat, &l.0 * &coeff_rat).expect("ordered")
            } else {
                LogMag::new(&l.0 * &coeff_rat, &l.1 * &coeff_rat).expect("ordered")
            };
            let status = match coeff.sign() {
                num_bigint::Sign::Plus => Status::Verified,
                _ => Status::Failed, // zero coefficient: equality, not strict
            };
            let margin = if coeff.is_zero() {
                Some(BigRational::zero())
            } else {
                Some(margin_round(&ival.midpoint()))
            };
            return Ok((
                CheckOutcome { status, margin, tier: Tier::Exact },
                ival,
            ));
        }
    }
    let l_n = gaps.log10_term(n, eps)?;
    let l_prev = gaps.log10_term(n - 1, eps)?;
    let rhs = l_prev.int_power(&BigInt::from(k));
    let outcome = compare_log(&rhs, &l_n, true);
    let ival = l_n.quotient(&rhs);
    Ok((outcome, ival))
}

/// How an approximant arose.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ApproximantSource {
    /// F_n at the convergent p_(2n^2)/q_(2n^2).
    PolyPhi { n: usize },
    /// F_(s_(t_j - 1)) at the convergent p_(n_j)/q_(n_j).
    PhiJump { n_j: usize, t_j: usize },
    /// Direct evaluation at a supplied rational.
    Eval,
}

/// The canonical (unreduced) denominator 10^E * q^e, kept factored because E
/// may be far beyond materialization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalDen {
    pub pow10_exp: BigUint,
    pub q: BigUint,
    pub q_exp: BigUint,
}

impl CanonicalDen {
    pub fn log10(&self, eps: &BigRational) -> Result<LogMag> {
        let base = LogMag::from_int(&self.q, eps)?;
        let powered = base.int_power(&BigInt::from(self.q_exp.clone()));
        let shift = BigRational::from_integer(BigInt::from(self.pow10_exp.clone()));
        Ok(powered.shift_exact(&shift))
    }

    /// Materialize 10^E * q^e when it fits the budget.
    pub fn materialize(&self, budget: &Budget) -> Result<BigUint> {
        let e10 = self.pow10_exp.to_u64().ok_or_else(|| self.budget_err(budget))?;
        let eq = self.q_exp.to_u64().ok_or_else(|| self.budget_err(budget))?;
        let bits = 4u64
            .saturating_mul(e10)
            .saturating_add(self.q.bits().saturating_mul(eq));
        if e10 > budget.max_pow10_exp || bits > budget.max_int_bits {
            return Err(self.budget_err(budget));
        }
        Ok(pow10(e10) * num_traits::pow::Pow::pow(&self.q, eq))
    }

    fn budget_err(&self, budget: &Budget) -> Error {
        Error::BudgetExceeded {
            what: "canonical denominator".into(),
            exponent: self.pow10_exp.to_string(),
            budget: budget.max_pow10_exp,
        }
    }

    /// Does d divide 10^E * q^e? Decided by repeated gcd stripping, capped
    /// by the exponents, without materializing the power.
    pub fn divides(&self, d: &BigUint) -> bool {
        let mut rem = d.clone();
        strip(&mut rem, &self.q, &self.q_exp);
        strip(&mut rem, &BigUint::from(10u32), &self.pow10_exp);
        rem.is_one()
    }
}

fn strip(rem: &mut BigUint, base: &BigUint, max_rounds: &BigUint) {
    if base.is_one() {
        return;
    }
    let cap = max_rounds.to_u64().unwrap_or(u64::MAX);
    let mut rounds = 0u64;
    while rounds < cap && !rem.is_one() {
        let g = rem.gcd(base);
        if g.is_one() {
            break;
        }
        *rem /= g;
        rounds += 1;
    }
}

/// An exact truncation value together with its canonical denominator.
#[derive(Debug, Clone)]
pub struct Approximant {
    pub value: BigRational,
    pub canonical_den: CanonicalDen,
    pub truncation: BigUint,
    pub source: ApproximantSource,
}

impl Approximant {
    /// Reduced denominator of the exact value.
    pub fn reduced_den(&self) -> BigUint {
        self.value.denom().magnitude().clone()
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::json!({
            "numerator": self.value.numer().to_string(),
            "canonical_den": {
                "pow10_exp": self.canonical_den.pow10_exp.to_string(),
                "q": self.canonical_den.q.to_string(),
                "q_exp": self.canonical_den.q_exp.to_string(),
            },
            "reduced_den": self.reduced_den().to_string(),
            "truncation": self.truncation.to_string(),
        })
    }
}

/// Exact F_trunc(z) = sum over gap terms s_i <= trunc of z^(s_i)/10^(s_i!).
///
/// Every nonzero term needs its exponent s_i! at or below the power-of-ten
/// budget; the canonical denominator 10^(trunc!) * den(z)^trunc is recorded
/// in factored form.
pub fn eval_truncation_exact(
    z: &BigRational,
    trunc: &BigUint,
    gaps: &GapSequence,
    budget: &Budget,
    cancel: &CancelToken,
) -> Result<Approximant> {
    let mut value = BigRational::zero();
    for i in 1..=gaps.len() {
        cancel.check()?;
        if !gaps.term_leq(i, trunc)? {
            break;
        }
        let s = gaps.term_u64(i).ok_or_else(|| Error::BudgetExceeded {
            what: format!("series exponent s_{i}"),
            exponent: "symbolic".into(),
            budget: budget.max_pow10_exp,
        })?;
        let s_fact = factorial_exact(s)?;
        let s_fact_u64 = s_fact.to_u64().filter(|&f| f <= budget.max_pow10_exp).ok_or(
            Error::BudgetExceeded {
                what: format!("term exponent {s}!"),
                exponent: s_fact.to_string(),
                budget: budget.max_pow10_exp,
            },
        )?;
        if z.is_zero() {
            continue;
        }
        let zk = num_traits::pow::Pow::pow(z, s);
        let term = zk / BigRational::from_integer(BigInt::from(pow10(s_fact_u64)));
        value += term;
    }
    let trunc_fact = trunc
        .to_u64()
        .map(factorial_exact)
        .transpose()?
        .ok_or_else(|| Error::BudgetExceeded {
            what: "canonical denominator exponent".into(),
            exponent: trunc.to_string(),
            budget: 2_000_000,
        })?;
    Ok(Approximant {
        value,
        canonical_den: CanonicalDen {
            pow10_exp: trunc_fact,
            q: z.denom().magnitude().clone(),
            q_exp: trunc.clone(),
        },
        truncation: trunc.clone(),
        source: ApproximantSource::Eval,
    })
}

/// Rigorous upper bound for log10 |F(z) - F_m(z)| given a certified upper
/// bound on log10 |z|.
///
/// The first omitted gap term s_J > m contributes at most
/// s_J * z_log_hi - s_J!; the remaining terms are geometrically dominated
/// once z_log_hi <= s_J! - 1 (each successive ratio is then at most 10^-1),
/// so the sum is the first bound plus at most log10(10/9) < log10(2).
/// The returned interval is a point at the upper bound.
pub fn tail_bound(
    z_abs_log_hi: &BigRational,
    m: &BigUint,
    gaps: &GapSequence,
    _eps: &BigRational,
) -> Result<LogMag> {
    let j = gaps.first_index_above(m)?;
    let s_j = gaps.term_value(j).ok_or_else(|| Error::BudgetExceeded {
        what: format!("first omitted gap term s_{j}"),
        exponent: "symbolic".into(),
        budget: 0,
    })?;
    let s_j_rat = BigRational::from_integer(BigInt::from(s_j.clone()));
    let s_j_fact = gaps.term_factorial_exact(j)?;
    let s_j_fact_rat = BigRational::from_integer(BigInt::from(s_j_fact));
    // domination: z_log_hi <= s_J! - 1 makes every successive term ratio
    // at most 10^-1
    if z_abs_log_hi > &(&s_j_fact_rat - BigRational::one()) {
        return Err(Error::DominationMarginInsufficient {
            ratio: crate::decimal::to_decimal_string(z_abs_log_hi, 4),
        });
    }
    let first_hi = &s_j_rat * z_abs_log_hi - &s_j_fact_rat;
    let first = LogMag::point(first_hi);
    crate::bigmath::geometric_tail_upper(&first, &BigRational::from_integer(BigInt::from(-1)))
}

/// Upper bound for log10 |xi^k - z^k| from the telescoping factorization:
/// delta_log_hi + log10(k) + (k-1) * max(xi_abs_log_hi, log10 |z|).
pub fn power_difference_bound(
    xi_abs_log_hi: &BigRational,
    z: &BigRational,
    delta_log_hi: &BigRational,
    k: u64,
    eps: &BigRational,
) -> Result<LogMag> {
    if k == 0 {
        return Err(Error::NonpositiveValue);
    }
    let mut max_log = xi_abs_log_hi.clone();
    if !z.is_zero() {
        let z_log = LogMag::from_ratio(&z.abs(), eps)?;
        if z_log.hi() > &max_log {
            max_log = z_log.hi().clone();
        }
    }
    let log_k = if k == 1 {
        BigRational::zero()
    } else {
        LogMag::from_int(&BigUint::from(k), eps)?.hi().clone()
    };
    let bound =
        delta_log_hi + log_k + BigRational::from_integer(BigInt::from(k - 1)) * max_log;
    Ok(LogMag::point(bound))
}

/// gamma_n = F_n(p_(2n^2)/q_(2n^2)), the polynomially-bounded-phi
/// approximant; needs convergents through index 2n^2.
pub fn build_case1_approximant(
    cf: &PartialQuotients,
    n: usize,
    gaps: &GapSequence,
    budget: &Budget,
    cancel: &CancelToken,
) -> Result<Approximant> {
    let idx = 2 * n * n;
    if idx > cf.len() {
        let max_n = ((cf.len() / 2) as f64).sqrt() as usize;
        return Err(Error::InsufficientConvergents {
            needed: idx + 1,
            have: cf.len() + 1,
            max_n,
        });
    }
    let convs = convergents(cf);
    let z = convs[idx].value();
    let mut approx = eval_truncation_exact(&z, &BigUint::from(n), gaps, budget, cancel)?;
    approx.source = ApproximantSource::PolyPhi { n };
    Ok(approx)
}

/// gamma_j = F_(s_(t_j-1))(p_(n_j)/q_(n_j)) where t_j is the smallest index
/// with s_(t_j) > phi(q_(n_j)); returns the approximant and t_j.
///
/// t_j = 1 (phi below every gap term's reach) has no previous term and is a
/// domain error, reported rather than guessed around.
pub fn build_case2_approximant(
    cf: &PartialQuotients,
    n_j: usize,
    gaps: &GapSequence,
    budget: &Budget,
    cancel: &CancelToken,
) -> Result<(Approximant, usize)> {
    if n_j > cf.len() {
        return Err(Error::IndexOutOfRange { index: n_j, max: cf.len() });
    }
    let convs = convergents(cf);
    let phi_n = phi(&convs[n_j].q)?;
    let t_j = gaps.first_index_above(&BigUint::from(phi_n))?;
    if t_j == 1 {
        return Err(Error::TjUndefined { phi: phi_n });
    }
    let trunc = gaps
        .term_value(t_j - 1)
        .ok_or_else(|| Error::InsufficientGapTerms { index: format!("s_{}", t_j - 1) })?
        .clone();
    let z = convs[n_j].value();
    let mut approx = eval_truncation_exact(&z, &trunc, gaps, budget, cancel)?;
    approx.source = ApproximantSource::PhiJump { n_j, t_j };
    Ok((approx, t_j))
}
