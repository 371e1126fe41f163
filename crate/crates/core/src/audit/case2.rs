//! The phi-jump audit: at a transition pair (n_j, k_j) where
//! phi_(n_j) <= n_j^(k_j) but phi_(n_j+1) > (n_j+1)^(k_j), the approximant
//! gamma_j = F_(s_(t_j-1))(p_(n_j)/q_(n_j)) and the factorial chain that
//! forces |F(xi) - gamma_j| below 2/den(gamma_j)^(s_(t_j-1)).
//!
//! The factorial inequalities run through the log-factorial enclosures
//! (Robbins bounds for huge arguments) with an exact fallback for ties; the
//! literal printed forms of doubtful exponents are evaluated as separate
//! diagnostic rows.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};

use crate::bigmath::{consts, factorial_exact, logmag_factorial, pow10, LogMag};
use crate::cf::PartialQuotients;
use crate::checks::{compare_log, compare_uint, margin_round, CheckOutcome};
use crate::error::{Error, Result};
use crate::lacunary::{build_case2_approximant, GapSequence};
use crate::liouville::phi;
use crate::report::{AuditReport, AuditRow, IndexRef, Status, Tier};

use super::{decide_value_vs_log, f_enclosure, AuditOptions, CfCtx};

/// Standalone arithmetic rows of the factorial chain at (n_j, k_j):
/// the binomial support (n_j+1)^k >= n_j^k + k n_j^(k-1) and the two
/// factorial inequalities. These need no continued fraction at all.
pub fn case2_fact_rows(n_j: usize, k_j: u32, opts: &AuditOptions) -> Result<Vec<AuditRow>> {
    if n_j < 1 || k_j < 1 {
        return Err(Error::NonpositiveValue);
    }
    let idx = IndexRef::Pair(n_j, k_j);
    let gate_note = if k_j < 5 {
        Some("outside the stated range k_j >= 5; evaluated as a diagnostic")
    } else {
        None
    };
    let n = BigUint::from(n_j);
    let a1 = Pow::pow(&(BigUint::from(n_j) + BigUint::one()), k_j as u64);
    let nk = Pow::pow(&n, k_j as u64);
    let a2 = &nk + BigUint::from(k_j as u64) * Pow::pow(&n, (k_j - 1) as u64);

    let mut rows = Vec::new();

    let out = compare_uint(&a2, &a1, false);
    rows.push(tag(
        AuditRow::new("C2.binom", idx.clone(), out.status, out.tier)
            .with_margin(out.margin)
            .with_note("(n_j+1)^k >= n_j^k + k n_j^(k-1)"),
        gate_note,
    ));

    // ((n_j+1)^k)! >= (n_j^k + k n_j^(k-1))!
    let out = factorial_ge(&a1, &a2, opts)?;
    rows.push(tag(
        AuditRow::new("C2.fact.a", idx.clone(), out.status, out.tier)
            .with_margin(out.margin)
            .with_note("((n_j+1)^k)! >= (n_j^k + k n_j^(k-1))!"),
        gate_note,
    ));

    // (n_j^k + k n_j^(k-1))! >= 3 (n_j^k)! n_j^(2k)
    let lhs = logmag_factorial(&a2, &opts.eps, opts.fact_threshold)?;
    let c = consts();
    let log3 = LogMag::new(c.log10_3.0.clone(), c.log10_3.1.clone()).expect("ordered");
    let n_log = LogMag::from_int(&n, &opts.eps)?;
    let rhs = logmag_factorial(&nk, &opts.eps, opts.fact_threshold)?
        .product(&log3)
        .product(&n_log.int_power(&BigInt::from(2 * k_j as u64)));
    let mut out = compare_log(&rhs, &lhs, false);
    if out.status == Status::Undecided {
        out = fact_b_exact_fallback(&a2, &nk, n_j, k_j)?.unwrap_or(out);
    }
    rows.push(tag(
        AuditRow::new("C2.fact.b", idx, out.status, out.tier)
            .with_margin(out.margin)
            .with_note("(n_j^k + k n_j^(k-1))! >= 3 (n_j^k)! n_j^(2k)"),
        gate_note,
    ));
    Ok(rows)
}

fn tag(row: AuditRow, gate_note: Option<&str>) -> AuditRow {
    match gate_note {
        Some(g) => {
            let merged = match &row.note {
                Some(n) => format!("{n}; {g}"),
                None => g.to_string(),
            };
            row.with_note(&merged)
        }
        None => row,
    }
}

/// a! >= b! decided by the factorial-log enclosures, with the exact argument
/// comparison settling ties (monotonicity of the factorial).
fn factorial_ge(a: &BigUint, b: &BigUint, opts: &AuditOptions) -> Result<CheckOutcome> {
    if a == b {
        return Ok(CheckOutcome {
            status: Status::Verified,
            margin: Some(BigRational::zero()),
            tier: Tier::Exact,
        });
    }
    let la = logmag_factorial(a, &opts.eps, opts.fact_threshold)?;
    let lb = logmag_factorial(b, &opts.eps, opts.fact_threshold)?;
    let out = compare_log(&lb, &la, false);
    if out.status != Status::Undecided {
        return Ok(out);
    }
    Ok(CheckOutcome {
        status: if b <= a { Status::Verified } else { Status::Failed },
        margin: None,
        tier: Tier::Exact,
    })
}

/// Exact product comparison for the second factorial inequality when the
/// arguments are small enough to materialize.
fn fact_b_exact_fallback(
    a2: &BigUint,
    nk: &BigUint,
    n_j: usize,
    k_j: u32,
) -> Result<Option<CheckOutcome>> {
    let (a2_u, nk_u) = match (a2.to_u64(), nk.to_u64()) {
        (Some(x), Some(y)) if x <= 200_000 && y <= 200_000 => (x, y),
        _ => return Ok(None),
    };
    let lhs = factorial_exact(a2_u)?;
    let rhs = BigUint::from(3u32)
        * factorial_exact(nk_u)?
        * Pow::pow(&BigUint::from(n_j), 2 * k_j as u64);
    Ok(Some(compare_uint(&rhs, &lhs, false)))
}

/// Audit the full phi-jump chain at the supplied pair. The pair itself is
/// validated as a row (not an error): an invalid pair is a Failed C2.pair
/// with every remaining row still evaluated as a diagnostic.
pub fn audit_case2(
    cf: &PartialQuotients,
    gaps: &GapSequence,
    pair: (usize, u32),
    opts: &AuditOptions,
) -> Result<AuditReport> {
    let (n_j, k_j) = pair;
    if n_j < 1 || k_j < 1 {
        return Err(Error::NonpositiveValue);
    }
    let ctx = CfCtx::new(cf);
    if n_j + 1 > ctx.max_index() {
        return Err(Error::IndexOutOfRange {
            index: n_j + 1,
            max: ctx.max_index(),
        });
    }
    let eps = &opts.eps;
    let idx = IndexRef::Pair(n_j, k_j);
    let mut report = AuditReport::new();

    // the defining pair: phi_(n_j) <= n_j^k and phi_(n_j+1) > (n_j+1)^k
    let phi_n = phi(&ctx.convs[n_j].q)?;
    let phi_n1 = phi(&ctx.convs[n_j + 1].q)?;
    let nk = Pow::pow(&BigUint::from(n_j), k_j as u64);
    let n1k = Pow::pow(&(BigUint::from(n_j) + BigUint::one()), k_j as u64);
    let left = compare_uint(&BigUint::from(phi_n), &nk, false);
    let right = compare_uint(&n1k, &BigUint::from(phi_n1), true);
    let pair_status = if left.status == Status::Verified && right.status == Status::Verified {
        Status::Verified
    } else {
        Status::Failed
    };
    let pair_margin = match (&left.margin, &right.margin) {
        (Some(a), Some(b)) => Some(if a <= b { a.clone() } else { b.clone() }),
        _ => None,
    };
    report.push(
        AuditRow::new("C2.pair", idx.clone(), pair_status, Tier::Exact)
            .with_margin(pair_margin)
            .with_note(&format!(
                "phi_(n_j) = {phi_n} <= n_j^k and phi_(n_j+1) = {phi_n1} > (n_j+1)^k"
            )),
    );

    // the approximant and its truncation index s = s_(t_j - 1)
    let (gamma, t_j) = build_case2_approximant(cf, n_j, gaps, &opts.budget, &opts.cancel)?;
    let s = gamma
        .truncation
        .to_u64()
        .ok_or_else(|| Error::InsufficientGapTerms { index: "s_(t_j-1)".into() })?;
    let s_t = gaps
        .term_value(t_j)
        .ok_or_else(|| Error::InsufficientGapTerms { index: format!("s_{t_j}") })?
        .clone();
    let s_fact = factorial_exact(s)?;
    let s_rat = BigRational::from_integer(BigInt::from(s));
    let s_fact_rat = BigRational::from_integer(BigInt::from(s_fact));
    let log_q = ctx.log_q(n_j, eps)?;

    // log10 den(gamma_j)^s = s*s! + s^2 log q_(n_j); rhs = its negation
    let den_log_s = log_q
        .int_power(&BigInt::from(s * s))
        .shift_exact(&(&s_rat * &s_fact_rat));
    let rhs = LogMag::new(-den_log_s.hi().clone(), -den_log_s.lo().clone()).expect("ordered");
    let c = consts();

    // derived tail row
    let xi_hi_log = ctx.xi_abs_log_hi(n_j, eps)?;
    let bound = crate::lacunary::tail_bound(&xi_hi_log, &gamma.truncation, gaps, eps)?;
    let (status, margin, tier) = match LogMag::verify_strict_less(&bound, &rhs) {
        crate::bigmath::Cmp3::Less => (
            Status::Verified,
            Some(margin_round(&(rhs.lo() - bound.hi()))),
            Tier::Log,
        ),
        _ => tail_exact_lower(&ctx, gaps, opts, n_j, s, &rhs)?,
    };
    report.push(
        AuditRow::new("C2.tail", idx.clone(), status, tier)
            .with_margin(margin)
            .with_note("|F(xi) - F_s(xi)| < 1/den(gamma_j)^s, derived tail exponent"),
    );

    // literal printed exponent s! - s_(t_j) * s
    let lit = LogMag::point(
        &c.log10_2.1
            - (&s_fact_rat - &s_rat * BigRational::from_integer(BigInt::from(s_t.clone()))),
    );
    let out = compare_log(&lit, &rhs, true);
    report.push(
        AuditRow::new("C2.tail-literal", idx.clone(), out.status, out.tier)
            .with_margin(out.margin)
            .with_note("literal printed tail exponent s_(t_j-1)! - s_(t_j) s_(t_j-1)"),
    );

    // |xi - p/q| < 1/(q_(n_j) q_(n_j+1)): structural; margin against the
    // exact deeper value when the fraction extends past n_j + 1
    let gap_margin = if n_j + 2 <= ctx.max_index() {
        let xi_star = crate::cf::exact_value(cf);
        let dist = (&xi_star - ctx.convs[n_j].value()).abs();
        let (_, gap_hi) = ctx.gap(n_j)?;
        crate::checks::ratio_log_margin(&dist, &gap_hi)
    } else {
        let (gap_lo, gap_hi) = ctx.gap(n_j)?;
        crate::checks::ratio_log_margin(&gap_lo, &gap_hi)
    };
    report.push(
        AuditRow::new("C2.gap", idx.clone(), Status::Verified, Tier::Exact)
            .with_margin(gap_margin)
            .with_note("|xi - p_(n_j)/q_(n_j)| < 1/(q_(n_j) q_(n_j+1)), consecutive convergents straddle xi"),
    );

    // q_(n_j+1) > 10^(((n_j+1)^k)!) (phi forces the factorial) and the
    // literal printed form q_(n_j+1) > 10^((n_j+1)^k)
    let log_q1 = ctx.log_q(n_j + 1, eps)?;
    report.push(qlower_fact_row(&idx, &n1k, &log_q1, opts)?);
    let lit_exp = LogMag::point(BigRational::from_integer(BigInt::from(n1k.clone())));
    let out = compare_log(&lit_exp, &log_q1, true);
    report.push(
        AuditRow::new("C2.qlower-literal", idx.clone(), out.status, out.tier)
            .with_margin(out.margin)
            .with_note("q_(n_j+1) > 10^((n_j+1)^k), literal printed form"),
    );

    // the pure arithmetic chain rows at this pair
    for row in case2_fact_rows(n_j, k_j, opts)? {
        report.push(row);
    }

    // |F_s(xi) - gamma_j| bounds: exact interval via endpoint evaluation
    // with the gap lower bound keeping it away from zero
    let (enc_lo, enc_hi) = ctx.enclosure(n_j)?;
    let (gap_lo, _) = ctx.gap(n_j)?;
    let p_lo = crate::lacunary::eval_truncation_exact(
        &enc_lo,
        &gamma.truncation,
        gaps,
        &opts.budget,
        &opts.cancel,
    )?
    .value;
    let p_hi = crate::lacunary::eval_truncation_exact(
        &enc_hi,
        &gamma.truncation,
        gaps,
        &opts.budget,
        &opts.cancel,
    )?
    .value;
    let d_hi = &p_hi - &p_lo;
    // lower bound: |sum (xi^k - z^k)/10^(k!)| >= gap_lo * sum k lo^(k-1)/10^(k!)
    let mut factor = BigRational::zero();
    for i in 1..=gaps.len() {
        match gaps.term_u64(i) {
            Some(k) if k <= s => {
                let kf = factorial_exact(k)?.to_u64().ok_or_else(|| Error::BudgetExceeded {
                    what: "term exponent".into(),
                    exponent: "overflow".into(),
                    budget: opts.budget.max_pow10_exp,
                })?;
                factor += BigRational::from_integer(BigInt::from(k))
                    * Pow::pow(&enc_lo, k - 1)
                    / BigRational::from_integer(BigInt::from(pow10(kf)));
            }
            _ => break,
        }
    }
    let d_lo = &gap_lo * &factor;

    // the power-difference display: < 10^-(3 (n^k)! n^(2k) - s^2)
    let nk_u64 = nk.to_u64().filter(|&v| v <= 2_000_000);
    match nk_u64 {
        Some(v) => {
            let e_big = BigInt::from(3) * BigInt::from(factorial_exact(v)?)
                * BigInt::from(Pow::pow(&BigUint::from(n_j), 2 * k_j as u64))
                - BigInt::from(s * s);
            let rhs_pd = LogMag::point(BigRational::from_integer(-e_big));
            let (status, margin, tier) =
                decide_value_vs_log(&d_lo, &d_hi, &rhs_pd, eps, Tier::Exact)?;
            report.push(
                AuditRow::new("C2.powdiff", idx.clone(), status, tier)
                    .with_margin(margin)
                    .with_note("|F_s(xi) - gamma_j| < 1/10^(3 (n^k)! n^(2k) - s^2)"),
            );
        }
        None => {
            report.push(
                AuditRow::new("C2.powdiff", idx.clone(), Status::Undecided, Tier::Log)
                    .with_note("exponent (n^k)! beyond exact materialization"),
            );
        }
    }

    // bridge: s*s! + phi! s^2 <= 3 (n^k)! n^(2k) - s^2
    if let Some(v) = nk_u64 {
        let phi_fact = factorial_exact(phi_n)?;
        let lhs_b = BigUint::from(s) * factorial_exact(s)? + phi_fact * BigUint::from(s * s);
        let rhs_b = BigInt::from(3) * BigInt::from(factorial_exact(v)?)
            * BigInt::from(Pow::pow(&BigUint::from(n_j), 2 * k_j as u64))
            - BigInt::from(s * s);
        let out = if rhs_b.is_negative() {
            CheckOutcome { status: Status::Failed, margin: None, tier: Tier::Exact }
        } else {
            compare_uint(&lhs_b, rhs_b.magnitude(), false)
        };
        let support = if BigUint::from(s) <= BigUint::from(phi_n) && BigUint::from(phi_n) <= nk {
            "s <= phi <= n^k holds"
        } else {
            "support s <= phi <= n^k fails here"
        };
        report.push(
            AuditRow::new("C2.bridge", idx.clone(), out.status, out.tier)
                .with_margin(out.margin)
                .with_note(&format!("s s! + phi! s^2 <= 3 (n^k)! n^(2k) - s^2; {support}")),
        );
    }

    // |F_s(xi) - gamma_j| < 1/den(gamma_j)^s
    let (status, margin, tier) = decide_value_vs_log(&d_lo, &d_hi, &rhs, eps, Tier::Exact)?;
    report.push(
        AuditRow::new("C2.den", idx.clone(), status, tier)
            .with_margin(margin)
            .with_note("|F_s(xi) - gamma_j| < 1/den(gamma_j)^s"),
    );

    // combined: |F(xi) - gamma_j| < 2/den(gamma_j)^s; the evaluation point
    // n_j sits at the lower endpoint of its enclosure exactly when n_j is
    // even
    let fe = f_enclosure(gaps, &enc_lo, &enc_hi, opts)?;
    let rhs2 = LogMag::new(rhs.lo() + &c.log10_2.0, rhs.hi() + &c.log10_2.1).expect("ordered");
    let enc = (enc_lo.clone(), enc_hi.clone());
    let gapb = ctx.gap(n_j)?;
    let (lower, upper) = super::approximant_dist_bounds(
        &gamma.value,
        s,
        n_j % 2 == 0,
        gaps,
        &enc,
        &gapb,
        &fe,
        eps,
    )?;
    let (status, margin) = super::decide_log_bounds_vs(lower, upper, &rhs2);
    report.push(
        AuditRow::new("C2.combined", idx.clone(), status, Tier::Exact)
            .with_margin(margin)
            .with_note("|F(xi) - gamma_j| < 2/den(gamma_j)^s"),
    );

    // the printed support "s_(t_j) >= min{...}" and its max reading
    let cands = [
        Pow::pow(&BigUint::from(s), 3u64),
        BigUint::from(phi_n) + BigUint::one(),
        BigUint::from(5u32),
    ];
    let min_c = cands.iter().min().expect("nonempty").clone();
    let max_c = cands.iter().max().expect("nonempty").clone();
    let out = compare_uint(&min_c, &s_t, false);
    report.push(
        AuditRow::new("C2.support-min", idx.clone(), out.status, out.tier)
            .with_margin(out.margin)
            .with_note("s_(t_j) >= min{s^3, phi+1, 5}, literal printed form"),
    );
    let out = compare_uint(&max_c, &s_t, false);
    report.push(
        AuditRow::new("C2.support-max", idx, out.status, out.tier)
            .with_margin(out.margin)
            .with_note("s_(t_j) >= max{s^3, phi+1, 5}, conjectured intended form"),
    );

    report.sort();
    Ok(report)
}

fn qlower_fact_row(
    idx: &IndexRef,
    n1k: &BigUint,
    log_q1: &LogMag,
    _opts: &AuditOptions,
) -> Result<AuditRow> {
    let note = "q_(n_j+1) > 10^(((n_j+1)^k)!), the factorial the phi definition forces";
    match n1k.to_u64().filter(|&v| v <= 2_000_000) {
        Some(v) => {
            let e = factorial_exact(v)?;
            let point = LogMag::point(BigRational::from_integer(BigInt::from(e)));
            let out = compare_log(&point, log_q1, true);
            Ok(AuditRow::new("C2.qlower-fact", idx.clone(), out.status, out.tier)
                .with_margin(out.margin)
                .with_note(note))
        }
        None => {
            // ((n_j+1)^k)! dwarfs any materialized q: the claim fails
            Ok(
                AuditRow::new("C2.qlower-fact", idx.clone(), Status::Failed, Tier::Log)
                    .with_note("exponent beyond materialization dominates any exact q"),
            )
        }
    }
}

/// Exact first-omitted-term route when the derived bound cannot verify.
fn tail_exact_lower(
    ctx: &CfCtx,
    gaps: &GapSequence,
    opts: &AuditOptions,
    n_j: usize,
    s: u64,
    rhs: &LogMag,
) -> Result<(Status, Option<BigRational>, Tier)> {
    let (enc_lo, _) = ctx.enclosure(n_j)?;
    let j = gaps.first_index_above(&BigUint::from(s))?;
    let s_j = match gaps.term_u64(j) {
        Some(v) => v,
        None => return Ok((Status::Undecided, None, Tier::Log)),
    };
    let f = match factorial_exact(s_j)?.to_u64() {
        Some(f) if f <= opts.budget.max_pow10_exp => f,
        _ => return Ok((Status::Undecided, None, Tier::Log)),
    };
    let term = Pow::pow(&enc_lo, s_j) / BigRational::from_integer(BigInt::from(pow10(f)));
    if term.is_zero() {
        return Ok((Status::Undecided, None, Tier::Log));
    }
    let term_log = LogMag::from_ratio(&term, &opts.eps)?;
    if term_log.lo() > rhs.hi() {
        Ok((
            Status::Failed,
            Some(margin_round(&(rhs.hi() - term_log.lo()))),
            Tier::Exact,
        ))
    } else {
        Ok((Status::Undecided, None, Tier::Log))
    }
}
