//! The proof audit: assemble enclosures, approximants and bounds, decide
//! every named inequality at concrete indices, and report log10 margins.
//!
//! Statuses are sound in both directions: Verified means the inequality
//! holds for every candidate value in the enclosures, Failed means it fails
//! for every candidate, and Undecided means the working precision (or the
//! available data) cannot separate the sides. Small-index failures are
//! expected findings, not suppressed: the underlying claims are asymptotic.

mod case1;
mod case2;

pub use case1::{audit_case1, Case1Config};
pub use case2::{audit_case2, case2_fact_rows};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::bigmath::{pow10, LogMag};
use crate::budget::{Budget, CancelToken};
use crate::cf::{convergents, Convergent, PartialQuotients};
use crate::checks::margin_round;
use crate::error::{Error, Result};
use crate::lacunary::{eval_truncation_exact, GapSequence};
use crate::liouville::{generate_ultra_strong, BranchChoices};
use crate::report::{AuditReport, AuditRow, IndexRef, Status, Tier};

/// Shared knobs for every audit pass.
#[derive(Debug, Clone)]
pub struct AuditOptions {
    /// Interval width target for log enclosures.
    pub eps: BigRational,
    pub budget: Budget,
    /// Crossover for exact factorial-log summation.
    pub fact_threshold: u64,
    pub cancel: CancelToken,
}

impl Default for AuditOptions {
    fn default() -> Self {
        AuditOptions {
            eps: crate::bigmath::default_epsilon(),
            budget: Budget::default(),
            fact_threshold: crate::bigmath::EXACT_SUM_THRESHOLD,
            cancel: CancelToken::new(),
        }
    }
}

/// Convergent data shared by the audit passes.
pub(crate) struct CfCtx<'a> {
    pub cf: &'a PartialQuotients,
    pub convs: Vec<Convergent>,
}

impl<'a> CfCtx<'a> {
    pub fn new(cf: &'a PartialQuotients) -> Self {
        CfCtx { cf, convs: convergents(cf) }
    }

    pub fn max_index(&self) -> usize {
        self.convs.len() - 1
    }

    pub fn log_q(&self, n: usize, eps: &BigRational) -> Result<LogMag> {
        LogMag::from_int(&self.convs[n].q, eps)
    }

    pub fn enclosure(&self, n: usize) -> Result<(BigRational, BigRational)> {
        crate::cf::enclosure_from(&self.convs, n)
    }

    pub fn gap(&self, n: usize) -> Result<(BigRational, BigRational)> {
        crate::cf::gap_bounds_from(&self.convs, n)
    }

    /// Certified upper bound on log10(hi) of the enclosure at n.
    pub fn xi_abs_log_hi(&self, n: usize, eps: &BigRational) -> Result<BigRational> {
        let (_, hi) = self.enclosure(n)?;
        Ok(LogMag::from_ratio(&hi, eps)?.hi().clone())
    }

}

/// Exact two-sided enclosure of F(xi) for xi ranging over [lo, hi] inside
/// (0, 1]: F(xi) lies in [f_lo, f_hi + tail], where f_lo/f_hi are the exact
/// partial sums at the endpoints through the last affordable gap term and
/// the omitted tail is bounded in the log domain only (its exponent may be
/// far beyond materialization).
pub(crate) struct FEnclosure {
    pub f_lo: BigRational,
    pub f_hi: BigRational,
    /// log10 upper bound of the omitted tail; None means no tail at all.
    pub tail_cap_log: Option<BigRational>,
}

pub(crate) fn f_enclosure(
    gaps: &GapSequence,
    lo: &BigRational,
    hi: &BigRational,
    opts: &AuditOptions,
) -> Result<FEnclosure> {
    assert!(lo.is_positive() && hi <= &BigRational::one(), "enclosure must sit in (0, 1]");
    // last gap term whose factorial exponent fits the budget
    let mut m_idx = 0usize;
    for i in 1..=gaps.len() {
        match gaps.term_u64(i) {
            Some(s) => {
                let fact_fits = (1..=s).try_fold(1u64, |acc, j| {
                    acc.checked_mul(j).filter(|&f| f <= opts.budget.max_pow10_exp)
                });
                if fact_fits.is_some() {
                    m_idx = i;
                } else {
                    break;
                }
            }
            None => break,
        }
    }
    let (f_lo, f_hi) = if m_idx == 0 {
        (BigRational::zero(), BigRational::zero())
    } else {
        let m = BigUint::from(gaps.term_u64(m_idx).expect("just checked"));
        let a_lo = eval_truncation_exact(lo, &m, gaps, &opts.budget, &opts.cancel)?;
        let a_hi = eval_truncation_exact(hi, &m, gaps, &opts.budget, &opts.cancel)?;
        (a_lo.value, a_hi.value)
    };
    let tail_cap_log = tail_cap_log(gaps, m_idx)?;
    Ok(FEnclosure { f_lo, f_hi, tail_cap_log })
}

/// log10(2 * 10^-s_(m+1)!) bounds the tail beyond gap index m for |xi| <= 1
/// (successive factorial exponents fall by 10x or more); None when a custom
/// sequence ends there, making the series a polynomial.
fn tail_cap_log(gaps: &GapSequence, m_idx: usize) -> Result<Option<BigRational>> {
    let next = m_idx + 1;
    if next > gaps.len() {
        if gaps.is_custom() {
            return Ok(None);
        }
        return Err(Error::NoGapTermBeyond { m: format!("index {m_idx}") });
    }
    let c = crate::bigmath::consts();
    let exp = match gaps.term_u64(next) {
        Some(s) if s <= 1_000_000 => {
            crate::bigmath::logmag_factorial(
                &BigUint::from(s),
                &crate::bigmath::default_epsilon(),
                crate::bigmath::EXACT_SUM_THRESHOLD,
            )?
            .lo()
            .floor()
        }
        // the exponent of the first omitted term is at least 10^5 here
        _ => BigRational::from_integer(BigInt::from(100_000u64)),
    };
    Ok(Some(&c.log10_2.1 - exp))
}

/// Sound log10 bounds for |F(xi) - gamma| from an F-enclosure:
/// (lower, upper), each None when unavailable (lower: the distance can
/// shrink to zero; upper: the distance is exactly zero).
pub(crate) fn dist_log_bounds(
    gamma: &BigRational,
    fe: &FEnclosure,
    eps: &BigRational,
) -> Result<(Option<BigRational>, Option<BigRational>)> {
    let c = crate::bigmath::consts();
    let (_d_lo, d_hi) = dist_interval(gamma, &fe.f_lo, &fe.f_hi);
    let upper = match (&fe.tail_cap_log, d_hi.is_zero()) {
        (None, true) => None,
        (None, false) => Some(LogMag::from_ratio(&d_hi, eps)?.hi().clone()),
        (Some(cap), true) => Some(cap.clone()),
        (Some(cap), false) => {
            let d_log = LogMag::from_ratio(&d_hi, eps)?;
            let a = LogMag::point(d_log.hi().clone());
            let b = LogMag::point(cap.clone());
            Some(a.sum_upper(&b).hi().clone())
        }
    };
    let lower = if gamma < &fe.f_lo {
        // below the lower partial sum: the tail only pushes F upward
        Some(LogMag::from_ratio(&(&fe.f_lo - gamma), eps)?.lo().clone())
    } else if gamma > &fe.f_hi {
        let d = gamma - &fe.f_hi;
        let d_log = LogMag::from_ratio(&d, eps)?;
        match &fe.tail_cap_log {
            None => Some(d_log.lo().clone()),
            // d - tail >= d/2 once the cap sits below d/2
            Some(cap) if d_log.lo() >= &(cap + &c.log10_2.1) => {
                Some(d_log.lo() - &c.log10_2.1)
            }
            _ => None,
        }
    } else {
        None
    };
    Ok((lower, upper))
}

/// Decide "dist < 10^rhs" given optional certified log10 bounds on the
/// distance (None lower: may be zero; None upper: exactly zero).
pub(crate) fn decide_log_bounds_vs(
    lower: Option<BigRational>,
    upper: Option<BigRational>,
    rhs: &LogMag,
) -> (Status, Option<BigRational>) {
    match upper {
        None => return (Status::Verified, None),
        Some(u) if &u < rhs.lo() => {
            return (Status::Verified, Some(margin_round(&(rhs.lo() - u))));
        }
        _ => {}
    }
    if let Some(l) = lower {
        if &l > rhs.hi() {
            return (Status::Failed, Some(margin_round(&(rhs.hi() - l))));
        }
    }
    (Status::Undecided, None)
}

/// Sum over the gap terms k <= limit of k * point^(k-1) / 10^(k!): the
/// telescoping factor bounding |F_s(xi) - F_s(z)| / |xi - z| from either
/// side (evaluate at the interval's min for a lower bound, max for upper).
pub(crate) fn series_diff_factor(
    gaps: &GapSequence,
    limit: u64,
    point: &BigRational,
) -> Result<BigRational> {
    use num_traits::{Pow, ToPrimitive};
    let mut factor = BigRational::zero();
    for i in 1..=gaps.len() {
        match gaps.term_u64(i) {
            Some(k) if k <= limit => {
                let kf = crate::bigmath::factorial_exact(k)?
                    .to_u64()
                    .ok_or_else(|| Error::BudgetExceeded {
                        what: "series term exponent".into(),
                        exponent: format!("{k}!"),
                        budget: u64::MAX,
                    })?;
                factor += BigRational::from_integer(BigInt::from(k))
                    * Pow::pow(point, k - 1)
                    / BigRational::from_integer(BigInt::from(pow10(kf)));
            }
            _ => break,
        }
    }
    Ok(factor)
}

/// Two-sided log10 bounds on |F(xi) - F_s(z)| when z is an endpoint of the
/// enclosure [lo, hi] and gamma = F_s(z): combines the series-enclosure
/// route (tail-dominant regimes) with the gap-bound route (width-dominant
/// regimes), taking the best certified bound from each side.
#[allow(clippy::too_many_arguments)]
pub(crate) fn approximant_dist_bounds(
    gamma: &BigRational,
    trunc: u64,
    z_is_lower_endpoint: bool,
    gaps: &GapSequence,
    enc: &(BigRational, BigRational),
    gap_bounds: &(BigRational, BigRational),
    fe: &FEnclosure,
    eps: &BigRational,
) -> Result<(Option<BigRational>, Option<BigRational>)> {
    let c = crate::bigmath::consts();
    let (mut lower, mut upper) = dist_log_bounds(gamma, fe, eps)?;
    let (enc_lo, enc_hi) = enc;
    let (gap_lo, gap_hi) = gap_bounds;
    let d_lo2 = gap_lo * series_diff_factor(gaps, trunc, enc_lo)?;
    let d_hi2 = gap_hi * series_diff_factor(gaps, trunc, enc_hi)?;
    // lower via the gap route: |F_s(xi) - F_s(z)| >= d_lo2; for z at the
    // lower endpoint the omitted tail adds with the same sign, otherwise it
    // must first be dominated
    if !d_lo2.is_zero() {
        let d2_log = LogMag::from_ratio(&d_lo2, eps)?;
        let candidate = if z_is_lower_endpoint {
            Some(d2_log.lo().clone())
        } else {
            match &fe.tail_cap_log {
                None => Some(d2_log.lo().clone()),
                Some(cap) if d2_log.lo() >= &(cap + &c.log10_2.1) => {
                    Some(d2_log.lo() - &c.log10_2.1)
                }
                _ => None,
            }
        };
        if let Some(cand) = candidate {
            if lower.as_ref().map(|l| &cand > l).unwrap_or(true) {
                lower = Some(cand);
            }
        }
    }
    // upper via the gap route: d_hi2 plus the tail
    let u2 = if d_hi2.is_zero() {
        fe.tail_cap_log.clone()
    } else {
        let d2_log = LogMag::point(LogMag::from_ratio(&d_hi2, eps)?.hi().clone());
        match &fe.tail_cap_log {
            None => Some(d2_log.hi().clone()),
            Some(cap) => Some(d2_log.sum_upper(&LogMag::point(cap.clone())).hi().clone()),
        }
    };
    match (&mut upper, u2) {
        (Some(u), Some(cand)) if cand < *u => *u = cand,
        (u @ None, Some(_)) => {
            // the enclosure route said exactly zero; keep that
            let _ = u;
        }
        _ => {}
    }
    Ok((lower, upper))
}

/// Distance interval from a point to a value interval: [d_lo, d_hi] with
/// d_lo = 0 when the point lies inside.
pub(crate) fn dist_interval(
    point: &BigRational,
    v_lo: &BigRational,
    v_hi: &BigRational,
) -> (BigRational, BigRational) {
    let d_lo = if point < v_lo {
        v_lo - point
    } else if point > v_hi {
        point - v_hi
    } else {
        BigRational::zero()
    };
    let a = (point - v_lo).abs();
    let b = (point - v_hi).abs();
    let d_hi = if a >= b { a } else { b };
    (d_lo, d_hi)
}

/// Decide "value < 10^rhs" where the value is known exactly to lie in
/// [v_lo, v_hi] and rhs is a log10 interval. Sound in both directions;
/// v_hi = 0 verifies trivially with no margin.
pub(crate) fn decide_value_vs_log(
    v_lo: &BigRational,
    v_hi: &BigRational,
    rhs: &LogMag,
    eps: &BigRational,
    tier: Tier,
) -> Result<(Status, Option<BigRational>, Tier)> {
    if v_hi.is_zero() {
        return Ok((Status::Verified, None, tier));
    }
    let hi_log = LogMag::from_ratio(v_hi, eps)?;
    if hi_log.hi() < rhs.lo() {
        return Ok((
            Status::Verified,
            Some(margin_round(&(rhs.lo() - hi_log.hi()))),
            tier,
        ));
    }
    if !v_lo.is_zero() {
        let lo_log = LogMag::from_ratio(v_lo, eps)?;
        if lo_log.lo() > rhs.hi() {
            return Ok((
                Status::Failed,
                Some(margin_round(&(rhs.hi() - lo_log.lo()))),
                tier,
            ));
        }
    }
    Ok((Status::Undecided, None, tier))
}

/// log10 of the canonical denominator power den^e = 10^(E*e) * q^(q_exp*e).
pub(crate) fn den_power_log(
    den: &crate::lacunary::CanonicalDen,
    e: u64,
    ctx_log_q: &LogMag,
) -> LogMag {
    let e_big = BigInt::from(e);
    let pow_exp = BigRational::from_integer(BigInt::from(den.pow10_exp.clone()) * &e_big);
    let q_exp = BigInt::from(den.q_exp.clone()) * &e_big;
    ctx_log_q.int_power(&q_exp).shift_exact(&pow_exp)
}

/// Configuration of the merged default report.
#[derive(Debug, Clone)]
pub struct FullReportConfig {
    /// Branch bits for the ultra-strong number under audit.
    pub bits: String,
    pub depth: usize,
    /// Gap bases over {2,3}.
    pub gap_bases: String,
    /// Ultra-strong rows for n = 1..=ultra_upto (0 skips them).
    pub ultra_upto: usize,
    /// Quotient-product rows for n = 1..=quotient_upto (0 skips them).
    pub quotient_upto: usize,
    /// q_m > e^((m-3)!) rows over this index window.
    pub growth_window: Option<(usize, usize)>,
    /// Gap growth exponents to audit.
    pub gap_growth_ks: Vec<u32>,
    /// Term window for the gap growth rows.
    pub gap_window: Option<(usize, usize)>,
    pub case1: Option<Case1Config>,
    /// Standalone factorial-chain rows: (n_j range, k_j).
    pub fact_rows: Option<((usize, usize), u32)>,
    /// Include the synthetic phi-jump demonstration block.
    pub include_jump_demo: bool,
    pub options: AuditOptions,
}

impl Default for FullReportConfig {
    fn default() -> Self {
        FullReportConfig {
            bits: "000000".into(),
            depth: 9,
            gap_bases: "222222".into(),
            ultra_upto: 6,
            quotient_upto: 6,
            growth_window: Some((3, 6)),
            gap_growth_ks: vec![1, 2],
            gap_window: Some((1, 6)),
            case1: Some(Case1Config { k: 1, n_window: (1, 2) }),
            fact_rows: Some(((2, 6), 5)),
            include_jump_demo: true,
            options: AuditOptions::default(),
        }
    }
}

/// The synthetic continued fraction used for the phi-jump demonstration:
/// one huge partial quotient makes phi jump across the window, giving the
/// transition pair (3, 1).
pub fn jump_demo_cf() -> PartialQuotients {
    let huge = pow10(25);
    PartialQuotients::new(vec![
        BigUint::one(),
        BigUint::one(),
        BigUint::from(17u32),
        huge,
        BigUint::one(),
    ])
    .expect("static data")
}

/// Build the merged report: ultra-strong rows, quotient products, growth,
/// gap growth, the full polynomially-bounded-phi audit, the standalone
/// factorial-chain window, and the synthetic phi-jump block. Deterministic
/// row order (check id, then index).
pub fn full_report(cfg: &FullReportConfig) -> Result<AuditReport> {
    let opts = &cfg.options;
    let choices = BranchChoices::from_bit_str(&cfg.bits)?;
    let cf = generate_ultra_strong(&choices, cfg.depth, &opts.budget)?;
    let gaps = GapSequence::from_base_str(&cfg.gap_bases)?;

    let mut report = AuditReport::new();

    report.extend(crate::liouville::verify_ultra_strong(
        &cf,
        cfg.ultra_upto.min(cf.len().saturating_sub(1)),
        &opts.eps,
        &opts.budget,
    )?);

    for n in 1..=cfg.quotient_upto.min(cf.len()) {
        let out = crate::cf::check_quotient_product(&cf, n)?;
        report.push(
            AuditRow::new("QP.prod", IndexRef::N(n), out.status, out.tier)
                .with_margin(out.margin)
                .with_note("(a_1+1)...(a_n+1) > q_n"),
        );
    }

    if let Some((g_lo, g_hi)) = cfg.growth_window {
        if g_lo > g_hi {
            return Err(Error::ConflictingWindow { lo: g_lo, hi: g_hi });
        }
        for m in g_lo.max(3)..=g_hi.min(cf.len()) {
            let out = crate::cf::check_q_growth(&cf, m, &opts.eps)?;
            report.push(
                AuditRow::new("C1.growth", IndexRef::N(m), out.status, out.tier)
                    .with_margin(out.margin)
                    .with_note("q_m > e^((m-3)!)"),
            );
        }
    }

    if let Some((w_lo, w_hi)) = cfg.gap_window {
        if w_lo > w_hi {
            return Err(Error::ConflictingWindow { lo: w_lo, hi: w_hi });
        }
        for &k in &cfg.gap_growth_ks {
            let window = (w_lo, w_hi.min(gaps.len()));
            let (rows, mono) = crate::lacunary::check_gap_growth(&gaps, k, window, &opts.eps)?;
            for r in rows {
                report.push(r);
            }
            report.push(mono);
        }
    }

    if let Some(case1) = &cfg.case1 {
        if case1.n_window.0 > case1.n_window.1 {
            return Err(Error::ConflictingWindow { lo: case1.n_window.0, hi: case1.n_window.1 });
        }
        report.extend(audit_case1(&cf, &gaps, case1, opts)?);
    }

    if let Some(((n_lo, n_hi), k_j)) = cfg.fact_rows {
        for n_j in n_lo..=n_hi {
            for row in case2_fact_rows(n_j, k_j, opts)? {
                report.push(row);
            }
        }
    }

    if cfg.include_jump_demo {
        let demo = jump_demo_cf();
        report.extend(audit_case2(&demo, &gaps, (3, 1), opts)?);
    }

    report.sort();
    report.dedupe();
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::Status;

    fn count(rep: &AuditReport, status: Status) -> usize {
        rep.rows().iter().filter(|r| r.status == status).count()
    }

    fn margins_of<'r>(rep: &'r AuditReport, id: &str) -> Vec<&'r BigRational> {
        rep.rows()
            .iter()
            .filter(|r| r.check_id == id)
            .map(|r| r.margin_log10.as_ref().expect("margin present"))
            .collect()
    }

    #[test]
    fn default_report_is_deterministic_and_decided() {
        let cfg = FullReportConfig::default();
        let a = full_report(&cfg).unwrap();
        let b = full_report(&cfg).unwrap();
        assert_eq!(a.to_json(), b.to_json());
        assert_eq!(a.to_table(), b.to_table());
        assert!(a.rows().len() >= 30, "got {} rows", a.rows().len());
        assert_eq!(count(&a, Status::Undecided), 0);
        // every failed row carries a finite margin or is a structural row
        for r in a.rows() {
            if r.status == Status::Failed {
                assert!(r.margin_log10.is_some(), "failed row without margin: {r:?}");
            }
        }
    }

    #[test]
    fn default_report_failures_are_the_expected_findings() {
        // Hand-derived beforehand: the asymptotic rows that genuinely fail
        // at desk indices, plus the literal-exponent diagnostics.
        let rep = full_report(&FullReportConfig::default()).unwrap();
        let failed: Vec<(String, String)> = rep
            .rows()
            .iter()
            .filter(|r| r.status == Status::Failed)
            .map(|r| (r.check_id.clone(), r.index.to_string()))
            .collect();
        let expected: Vec<(&str, &str)> = vec![
            ("C1.combined", "2"),
            ("C1.qbound-pow", "2"),
            ("C1.sgrow", "2"),
            ("C1.tail", "2"),
            ("C1.tail-literal", "2"),
            ("C2.fact.b", "(3,1)"),
            ("C2.powdiff", "(3,1)"),
            ("C2.support-max", "(3,1)"),
            ("C2.tail-literal", "(3,1)"),
            ("GAP.growth.k=2", "2"),
        ];
        let expected: Vec<(String, String)> = expected
            .into_iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect();
        assert_eq!(failed, expected);
    }

    #[test]
    fn growth_and_fact_margins_increase_along_windows() {
        let rep = full_report(&FullReportConfig::default()).unwrap();
        let growth = margins_of(&rep, "C1.growth");
        assert!(growth.len() >= 3);
        assert!(growth.windows(2).all(|w| w[0] < w[1]));
        for id in ["C2.fact.a", "C2.fact.b"] {
            let ms: Vec<&BigRational> = rep
                .rows()
                .iter()
                .filter(|r| r.check_id == id && matches!(r.index, IndexRef::Pair(_, 5)))
                .map(|r| r.margin_log10.as_ref().unwrap())
                .collect();
            assert!(ms.len() >= 4, "{id}");
            assert!(ms.windows(2).all(|w| w[0] < w[1]), "{id} margins not increasing");
        }
    }

    #[test]
    fn empty_config_gives_empty_report() {
        let cfg = FullReportConfig {
            ultra_upto: 0,
            quotient_upto: 0,
            growth_window: None,
            gap_growth_ks: vec![],
            gap_window: None,
            case1: None,
            fact_rows: None,
            include_jump_demo: false,
            ..FullReportConfig::default()
        };
        let rep = full_report(&cfg).unwrap();
        assert!(rep.is_empty());
        assert_eq!(rep.exit_code(), 0);
    }

    #[test]
    fn conflicting_window_bounds_error() {
        let cfg = FullReportConfig {
            growth_window: Some((6, 3)),
            ..FullReportConfig::default()
        };
        assert!(matches!(
            full_report(&cfg),
            Err(Error::ConflictingWindow { lo: 6, hi: 3 })
        ));
    }

    #[test]
    fn case1_window_exceeding_supply_names_max_feasible() {
        let cf = crate::liouville::generate_ultra_strong(
            &crate::liouville::BranchChoices::from_bit_str("000000").unwrap(),
            9,
            &Budget::default(),
        )
        .unwrap();
        let gaps = GapSequence::from_base_str("222222").unwrap();
        let err = audit_case1(
            &cf,
            &gaps,
            &Case1Config { k: 1, n_window: (1, 3) },
            &AuditOptions::default(),
        )
        .unwrap_err();
        match err {
            Error::InsufficientConvergents { max_n, .. } => assert_eq!(max_n, 2),
            other => panic!("wrong error: {other:?}"),
        }
    }

    #[test]
    fn case1_longer_window_on_slow_fraction() {
        // An all-ones fraction has tiny convergents, so deep windows are
        // cheap; growth rows fail from m = 6 on, which is a legitimate
        // finding, and margins for C1.main stay decided.
        let terms = vec![BigUint::one(); 80];
        let cf = PartialQuotients::new(terms).unwrap();
        let gaps = GapSequence::from_base_str("2222").unwrap();
        let rep = audit_case1(
            &cf,
            &gaps,
            &Case1Config { k: 2, n_window: (1, 6) },
            &AuditOptions::default(),
        )
        .unwrap();
        assert!(rep.rows().iter().any(|r| r.check_id == "C1.main"));
        assert_eq!(count(&rep, Status::Undecided), 0);
        let growth6: Vec<_> = rep
            .rows()
            .iter()
            .filter(|r| r.check_id == "C1.growth" && r.status == Status::Failed)
            .collect();
        assert!(!growth6.is_empty(), "slow growth must fail somewhere");
    }

    #[test]
    fn t_index_of_one_propagates_as_error() {
        // phi = 1 sits below every gap term's reach: no previous term
        let demo = jump_demo_cf();
        let gaps = GapSequence::from_base_str("222222").unwrap();
        let err = audit_case2(&demo, &gaps, (2, 1), &AuditOptions::default()).unwrap_err();
        assert!(matches!(err, Error::TjUndefined { phi: 1 }));
    }

    #[test]
    fn invalid_pair_is_a_failed_row_not_an_error() {
        let demo = jump_demo_cf();
        let gaps = GapSequence::from_base_str("222222").unwrap();
        let rep = audit_case2(&demo, &gaps, (3, 2), &AuditOptions::default()).unwrap();
        let pair_row = rep
            .rows()
            .iter()
            .find(|r| r.check_id == "C2.pair")
            .expect("pair row present");
        assert_eq!(pair_row.status, Status::Failed);
        assert!(rep.rows().len() > 5, "diagnostics still evaluated");
    }

    #[test]
    fn demo_pair_is_validated_by_classification() {
        let demo = jump_demo_cf();
        let convs = crate::cf::convergents(&demo);
        let phis = crate::liouville::phi_window(&convs, 1, 4).unwrap();
        let cls = crate::liouville::classify_case(&phis, 1).unwrap();
        assert_eq!(cls, crate::liouville::Classification::Case2Pairs(vec![(3, 1)]));
    }

    #[test]
    fn refinement_never_flips_decisions() {
        let coarse = FullReportConfig {
            options: AuditOptions {
                eps: BigRational::new(BigInt::one(), BigInt::from(10u64).pow(6)),
                ..AuditOptions::default()
            },
            ..FullReportConfig::default()
        };
        let fine = FullReportConfig {
            options: AuditOptions {
                eps: BigRational::new(BigInt::one(), BigInt::from(10u64).pow(18)),
                ..AuditOptions::default()
            },
            ..FullReportConfig::default()
        };
        let a = full_report(&coarse).unwrap();
        let b = full_report(&fine).unwrap();
        assert_eq!(a.rows().len(), b.rows().len());
        for (ra, rb) in a.rows().iter().zip(b.rows()) {
            assert_eq!(ra.check_id, rb.check_id);
            assert_eq!(ra.index, rb.index);
            if ra.status != Status::Undecided {
                assert_eq!(ra.status, rb.status, "refinement flipped {}", ra.check_id);
            }
        }
    }

    #[test]
    fn fact_rows_decided_via_robbins_above_threshold() {
        // n_j = 10, k_j = 5: (11^5)! = 161051! sits beyond the exact
        // summation threshold, so the decision runs on the Robbins tier.
        let rows = case2_fact_rows(10, 5, &AuditOptions::default()).unwrap();
        let a = rows.iter().find(|r| r.check_id == "C2.fact.a").unwrap();
        assert_eq!(a.status, Status::Verified);
        assert_eq!(a.tier, crate::report::Tier::Log);
        let b = rows.iter().find(|r| r.check_id == "C2.fact.b").unwrap();
        assert_eq!(b.status, Status::Verified);
    }

    #[test]
    fn fact_standalone_example_at_2_5() {
        // 243! >= 112! and 112! >= 3 * 32! * 2^10, both with comfortable
        // margins; the arguments are exact factorial logs on the sum tier.
        let rows = case2_fact_rows(2, 5, &AuditOptions::default()).unwrap();
        for r in &rows {
            assert_eq!(r.status, Status::Verified, "{r:?}");
        }
    }

    #[test]
    fn tier_consistency_between_exact_and_log_routes() {
        // q_(n+1) >= q_n^(n-1) decided exactly must agree with the log
        // route when the exact tier is forced off by a zero bit budget.
        let cf = crate::liouville::generate_ultra_strong(
            &crate::liouville::BranchChoices::from_bit_str("00000").unwrap(),
            8,
            &Budget::default(),
        )
        .unwrap();
        let eps = crate::bigmath::default_epsilon();
        let exact = crate::liouville::verify_ultra_strong(&cf, 7, &eps, &Budget::default()).unwrap();
        let log_only = crate::liouville::verify_ultra_strong(
            &cf,
            7,
            &eps,
            &Budget { max_int_bits: 0, ..Budget::default() },
        )
        .unwrap();
        for (re, rl) in exact.rows().iter().zip(log_only.rows()) {
            assert_eq!(re.check_id, rl.check_id);
            if rl.status != Status::Undecided {
                assert_eq!(re.status, rl.status, "log tier contradicts exact at {}", re.check_id);
            }
        }
    }
}
