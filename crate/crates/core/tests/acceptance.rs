//! Acceptance gate: one test per criterion, each printing a PASS line with
//! its measured runtime (run with `--nocapture` to see them). Tolerances
//! and thresholds are pinned in code.

use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use liouville_core::audit::{full_report, FullReportConfig};
use liouville_core::bigmath::{
    decimal_digit_count, default_epsilon, logmag_factorial, logmag_factorial_robbins, pow10,
    LogMag, EXACT_SUM_THRESHOLD,
};
use liouville_core::budget::{Budget, CancelToken};
use liouville_core::cf::{convergents, PartialQuotients};
use liouville_core::decimal::to_decimal_string_fixed;
use liouville_core::lacunary::{build_case1_approximant, tail_bound, GapSequence};
use liouville_core::liouville::{
    generate_ultra_strong, verify_ultra_strong, BranchChoices, LiouvilleWitness,
};
use liouville_core::report::{IndexRef, Status, Tier};

fn finish(name: &str, t0: Instant, budget: Duration) {
    let elapsed = t0.elapsed();
    assert!(
        elapsed < budget,
        "FAIL {name}: runtime {elapsed:?} >= budget {budget:?}"
    );
    println!("PASS {name}: {elapsed:?} (budget {budget:?})");
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Criterion 1: the determinant identity p_n q_(n-1) - p_(n-1) q_n =
/// (-1)^(n-1) holds exactly for 200 randomized fractions of depth <= 40.
#[test]
fn criterion_1_determinant_identity() {
    let t0 = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x1DE7);
    for _ in 0..200 {
        let depth = rng.gen_range(1..=40);
        let terms: Vec<BigUint> = (0..depth)
            .map(|_| {
                let wild: u64 = if rng.gen_bool(0.2) {
                    rng.gen_range(1..=u64::MAX / 2)
                } else {
                    rng.gen_range(1..=1_000_000)
                };
                BigUint::from(wild)
            })
            .collect();
        let cf = PartialQuotients::new(terms).unwrap();
        let convs = convergents(&cf);
        for n in 1..convs.len() {
            let det = BigInt::from(convs[n].p.clone()) * BigInt::from(convs[n - 1].q.clone())
                - BigInt::from(convs[n - 1].p.clone()) * BigInt::from(convs[n].q.clone());
            let expected = if (n - 1) % 2 == 0 {
                BigInt::one()
            } else {
                -BigInt::one()
            };
            assert_eq!(det, expected, "determinant at n = {n}");
        }
    }
    finish("criterion 1 (determinant identity)", t0, Duration::from_secs(5));
}

/// Criterion 2: every branch string of length 5 (depth 8) verifies the
/// ultra-strong rows for n <= 7 on the exact tier.
#[test]
fn criterion_2_ultra_strong_all_branches() {
    let t0 = Instant::now();
    let eps = default_epsilon();
    let budget = Budget::default();
    for mask in 0u32..32 {
        let bits: String = (0..5)
            .map(|i| if mask & (1 << i) != 0 { '1' } else { '0' })
            .collect();
        let choices = BranchChoices::from_bit_str(&bits).unwrap();
        let cf = generate_ultra_strong(&choices, 8, &budget).unwrap();
        let report = verify_ultra_strong(&cf, 7, &eps, &budget).unwrap();
        assert!(!report.is_empty());
        for row in report.rows() {
            assert_eq!(row.status, Status::Verified, "bits {bits}, row {row:?}");
            assert_eq!(row.tier, Tier::Exact, "bits {bits}: exact arithmetic required");
        }
    }
    finish("criterion 2 (ultra-strong, 32 branches)", t0, Duration::from_secs(30));
}

/// Criterion 3: sum_(k=1..4) k/10^(k!) printed to 7 places is exactly
/// 0.1200030.
#[test]
fn criterion_3_series_constant() {
    let t0 = Instant::now();
    let mut s = BigRational::zero();
    for k in 1u64..=4 {
        let f: u64 = (1..=k).product();
        s += BigRational::new(BigInt::from(k), BigInt::from(pow10(f)));
    }
    assert_eq!(to_decimal_string_fixed(&s, 7), "0.1200030");
    finish("criterion 3 (series constant 0.1200030)", t0, Duration::from_secs(5));
}

/// Criterion 4: witnesses on the truncated factorial series sum 10^-k!:
/// with the enclosure from partial sums through k = 5, the witness
/// (sum through m, 10^(m!), exponent m) verifies for m = 2, 3, 4.
#[test]
fn criterion_4_factorial_series_witnesses() {
    let t0 = Instant::now();
    let partial = |upto: u64| -> BigRational {
        let mut s = BigRational::zero();
        for k in 1..=upto {
            let f: u64 = (1..=k).product();
            s += BigRational::new(BigInt::one(), BigInt::from(pow10(f)));
        }
        s
    };
    let s5 = partial(5);
    let pad = BigRational::new(BigInt::from(2), BigInt::from(pow10(720)));
    let enclosure = (s5.clone(), &s5 + &pad);
    for m in 2u64..=4 {
        let f: u64 = (1..=m).product();
        let q = pow10(f);
        let p = (partial(m) * BigRational::from_integer(BigInt::from(q.clone()))).to_integer();
        let w = LiouvilleWitness {
            p,
            q,
            exponent: m as u32,
        };
        assert_eq!(
            liouville_core::liouville::verify_witness(&enclosure, &w),
            Status::Verified,
            "witness at m = {m}"
        );
    }
    finish("criterion 4 (factorial-series witnesses)", t0, Duration::from_secs(1));
}

/// Criterion 5: log-interval soundness. For 10^4 random integers the
/// enclosure brackets the true log10, checked by exact integer powering at
/// 1/64 granularity and digit-count oracles at 1/256 on a subsample; the
/// factorial intervals contain the exact-factorial oracle for
/// m in {10, 100, 1000, 10^4} with Robbins-tier width <= 1e-3 for m >= 100.
#[test]
fn criterion_5_log_interval_soundness() {
    let t0 = Instant::now();
    let eps = default_epsilon();
    let mut rng = ChaCha8Rng::seed_from_u64(0x50FD);
    let ten = BigUint::from(10u32);
    for i in 0..10_000u32 {
        let digits = rng.gen_range(1..=300usize);
        let mut x = BigUint::from(rng.gen_range(1..=9u32));
        for _ in 1..digits {
            x = &x * &ten + BigUint::from(rng.gen_range(0..=9u32));
        }
        let lm = LogMag::from_int(&x, &eps).unwrap();
        assert!(lm.width() <= eps, "width violated for {x}");
        // exact powering check at 1/32 granularity
        let lo32 = (lm.lo() * rat(32, 1)).floor().to_integer();
        let hi32 = (lm.hi() * rat(32, 1)).ceil().to_integer();
        assert!(!lo32.is_negative());
        let x32 = Pow::pow(&x, 32u64);
        assert!(
            pow10(lo32.to_u64().unwrap()) <= x32,
            "lower bound unsound for {x}"
        );
        assert!(
            x32 <= pow10(hi32.to_u64().unwrap()),
            "upper bound unsound for {x}"
        );
        // digit-count oracle at 1/256 granularity on a subsample
        if i % 50 == 0 {
            let d = decimal_digit_count(&Pow::pow(&x, 256u64));
            let oracle_lo = rat(d as i64 - 1, 256);
            let oracle_hi = rat(d as i64, 256);
            assert!(lm.lo() <= &oracle_hi && &oracle_lo <= lm.hi(), "bracket missed for {x}");
        }
    }
    // factorial intervals against the exact big-integer factorial
    for &m in &[10u64, 100, 1000, 10_000] {
        let mut exact = BigUint::one();
        for j in 2..=m {
            exact *= BigUint::from(j);
        }
        let d = decimal_digit_count(&exact);
        let oracle = LogMag::from_int(&exact, &eps).unwrap();
        let f = logmag_factorial(&BigUint::from(m), &eps, EXACT_SUM_THRESHOLD).unwrap();
        assert!(
            f.lo() <= oracle.hi() && oracle.lo() <= f.hi(),
            "factorial interval misses the oracle at m = {m}"
        );
        assert!(f.lo() >= &rat(d as i64 - 1, 1) && f.hi() < &rat(d as i64, 1));
        if m >= 100 {
            let r = logmag_factorial_robbins(&BigUint::from(m), &eps).unwrap();
            assert!(
                r.lo() <= oracle.hi() && oracle.lo() <= r.hi(),
                "Robbins interval misses the oracle at m = {m}"
            );
            assert!(
                r.width() <= rat(1, 1000),
                "Robbins width at m = {m}: {}",
                r.width()
            );
        }
    }
    finish("criterion 5 (log-interval soundness)", t0, Duration::from_secs(60));
}

/// Criterion 6: on the synthetic materializable sequence (2,4,8) with
/// z = 1/2 and truncation 4, the log-tier tail bound dominates the exactly
/// computed tail and stays within twice the first omitted term
/// (tolerance 1e-9 in log10 terms).
#[test]
fn criterion_6_tail_bound_oracle() {
    let t0 = Instant::now();
    let eps = default_epsilon();
    let gaps = GapSequence::custom(vec![
        BigUint::from(2u32),
        BigUint::from(4u32),
        BigUint::from(8u32),
    ])
    .unwrap();
    // rigorous upper bound on log10(1/2)
    let half_log = LogMag::from_ratio(&rat(1, 2), &eps).unwrap();
    let bound = tail_bound(half_log.hi(), &BigUint::from(4u32), &gaps, &eps).unwrap();
    // exact tail: (1/2)^8 / 10^(8!) is the only term beyond truncation 4
    let exact_tail = BigRational::new(BigInt::one(), BigInt::from(256u32) * BigInt::from(pow10(40320)));
    let exact_log = LogMag::from_ratio(&exact_tail, &eps).unwrap();
    assert!(
        bound.hi() >= exact_log.lo(),
        "bound must dominate the exact tail"
    );
    // first omitted term times two, with 1e-9 slack
    let first_log_hi = LogMag::from_ratio(
        &BigRational::new(BigInt::one(), BigInt::from(256u32) * BigInt::from(pow10(40320))),
        &eps,
    )
    .unwrap();
    let two = LogMag::from_int(&BigUint::from(2u32), &eps).unwrap();
    let cap = first_log_hi.hi() + two.hi() + rat(1, 1_000_000_000);
    assert!(bound.hi() <= &cap, "bound exceeds twice the first omitted term");
    finish("criterion 6 (tail-bound oracle)", t0, Duration::from_secs(10));
}

/// Criterion 7: the default merged report is byte-identical across runs,
/// margins increase along the growth and factorial-chain windows, and every
/// failed row carries a finite margin.
#[test]
fn criterion_7_report_determinism_and_monotonicity() {
    let t0 = Instant::now();
    let cfg = FullReportConfig::default();
    let a = full_report(&cfg).unwrap();
    let b = full_report(&cfg).unwrap();
    assert_eq!(a.to_json().into_bytes(), b.to_json().into_bytes());
    assert_eq!(a.to_table().into_bytes(), b.to_table().into_bytes());
    assert!(a.rows().len() >= 30);
    assert!(!a.any_undecided(), "default report must be fully decided");

    let growth: Vec<&BigRational> = a
        .rows()
        .iter()
        .filter(|r| r.check_id == "C1.growth")
        .map(|r| r.margin_log10.as_ref().expect("growth margin"))
        .collect();
    assert!(growth.len() >= 3);
    assert!(
        growth.windows(2).all(|w| w[0] < w[1]),
        "growth margins must strictly increase"
    );
    for id in ["C2.fact.a", "C2.fact.b"] {
        let ms: Vec<&BigRational> = a
            .rows()
            .iter()
            .filter(|r| r.check_id == id && matches!(r.index, IndexRef::Pair(_, 5)))
            .map(|r| r.margin_log10.as_ref().expect("fact margin"))
            .collect();
        assert!(ms.len() >= 4);
        assert!(
            ms.windows(2).all(|w| w[0] < w[1]),
            "{id} margins must strictly increase"
        );
    }
    for row in a.rows() {
        if row.status == Status::Failed {
            assert!(
                row.margin_log10.is_some(),
                "failed row without a finite margin: {row:?}"
            );
        }
    }
    finish("criterion 7 (determinism and monotonicity)", t0, Duration::from_secs(120));
}

/// Criterion 8: for n in {1, 2} on the default construction, the canonical
/// denominator equals 10^(n!) * q_(2n^2)^n exactly and the reduced
/// denominator divides it.
#[test]
fn criterion_8_canonical_denominator() {
    let t0 = Instant::now();
    let budget = Budget::default();
    let choices = BranchChoices::from_bit_str("000000").unwrap();
    let cf = generate_ultra_strong(&choices, 9, &budget).unwrap();
    let gaps = GapSequence::from_base_str("222222").unwrap();
    let convs = convergents(&cf);
    for n in 1usize..=2 {
        let approx = build_case1_approximant(&cf, n, &gaps, &budget, &CancelToken::new()).unwrap();
        let nf: u64 = (1..=n as u64).product();
        let expected = pow10(nf) * Pow::pow(&convs[2 * n * n].q, n as u64);
        let materialized = approx.canonical_den.materialize(&budget).unwrap();
        assert_eq!(materialized, expected, "canonical denominator at n = {n}");
        let reduced = approx.reduced_den();
        assert!(
            (&materialized % &reduced).is_zero(),
            "reduced must divide canonical at n = {n}"
        );
        assert!(approx.canonical_den.divides(&reduced));
    }
    finish("criterion 8 (canonical denominator)", t0, Duration::from_secs(10));
}
