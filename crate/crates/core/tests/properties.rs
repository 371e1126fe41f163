//! Cross-module invariants, property-tested where randomization earns its
//! keep and exhaustively checked where the domain is small.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use proptest::prelude::*;

use liouville_core::bigmath::{decimal_digit_count, default_epsilon, logmag_factorial, LogMag};
use liouville_core::budget::Budget;
use liouville_core::cf::{convergents, enclosure, extension_enclosure, PartialQuotients};
use liouville_core::lacunary::{tail_bound, GapSequence};
use liouville_core::liouville::{
    generate_ultra_strong, phi, verify_witness, BranchChoices, LiouvilleWitness,
};
use liouville_core::report::Status;

fn cf_strategy() -> impl Strategy<Value = PartialQuotients> {
    prop::collection::vec(1u64..1_000_000, 1..30)
        .prop_map(|v| PartialQuotients::new(v.into_iter().map(BigUint::from).collect()).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn determinant_identity_holds(cf in cf_strategy()) {
        let convs = convergents(&cf);
        for n in 1..convs.len() {
            let det = BigInt::from(convs[n].p.clone()) * BigInt::from(convs[n - 1].q.clone())
                - BigInt::from(convs[n - 1].p.clone()) * BigInt::from(convs[n].q.clone());
            let expected = if (n - 1) % 2 == 0 { BigInt::one() } else { -BigInt::one() };
            prop_assert_eq!(det, expected);
        }
    }

    #[test]
    fn denominators_strictly_increase(cf in cf_strategy()) {
        let convs = convergents(&cf);
        for n in 2..convs.len() {
            prop_assert!(convs[n].q > convs[n - 1].q);
        }
    }

    #[test]
    fn enclosures_nest(cf in cf_strategy()) {
        if cf.len() < 3 {
            return Ok(());
        }
        for n in 0..cf.len() - 2 {
            let (alo, ahi) = enclosure(&cf, n).unwrap();
            let (blo, bhi) = enclosure(&cf, n + 1).unwrap();
            prop_assert!(alo <= blo && bhi <= ahi, "nesting fails at {n}");
        }
    }

    #[test]
    fn witness_survives_sub_enclosures(shrink_num in 1u32..99) {
        // enclosure from the 1,1,1,8 prefix; witness 1/2 with exponent 2
        let cf = PartialQuotients::from_decimal_strings(&["1", "1", "1", "8"]).unwrap();
        let (lo, hi) = enclosure(&cf, 3).unwrap();
        let w = LiouvilleWitness {
            p: BigInt::one(),
            q: BigUint::from(2u32),
            exponent: 2,
        };
        prop_assert_eq!(verify_witness(&(lo.clone(), hi.clone()), &w), Status::Verified);
        // shrink toward the midpoint by a random fraction
        let t = BigRational::new(BigInt::from(shrink_num), BigInt::from(200u32));
        let width = &hi - &lo;
        let sub = (&lo + &width * &t, &hi - &width * &t);
        prop_assert!(sub.0 <= sub.1);
        prop_assert_eq!(verify_witness(&sub, &w), Status::Verified);
    }

    #[test]
    fn log_interval_soundness_quick(x in 2u64..u64::MAX) {
        let eps = default_epsilon();
        let big = BigUint::from(x);
        let lm = LogMag::from_int(&big, &eps).unwrap();
        prop_assert!(lm.width() <= eps);
        let lo32 = (lm.lo() * BigRational::from_integer(BigInt::from(32))).floor().to_integer();
        let hi32 = (lm.hi() * BigRational::from_integer(BigInt::from(32))).ceil().to_integer();
        prop_assert!(!lo32.is_negative());
        let x32 = num_traits::Pow::pow(&big, 32u64);
        prop_assert!(liouville_core::bigmath::pow10(lo32.to_u64().unwrap()) <= x32);
        prop_assert!(x32 <= liouville_core::bigmath::pow10(hi32.to_u64().unwrap()));
    }

    #[test]
    fn phi_nondecreasing_in_q(a in 1u64..1_000_000, b in 1u64..1_000_000) {
        let (small, large) = if a <= b { (a, b) } else { (b, a) };
        prop_assert!(phi(&BigUint::from(small)).unwrap() <= phi(&BigUint::from(large)).unwrap());
    }

    #[test]
    fn decimal_rendering_agrees_with_the_rational(n in -1_000_000i64..1_000_000, d in 1i64..1_000_000, places in 0usize..12) {
        let r = BigRational::new(BigInt::from(n), BigInt::from(d));
        let s = liouville_core::decimal::to_decimal_string_fixed(&r, places);
        // parse back: the printed value differs from r by at most half an ulp
        let parsed = parse_decimal(&s);
        let ulp = BigRational::new(BigInt::one(), BigInt::from(10u64).pow(places as u32));
        let diff = (&parsed - &r).abs();
        prop_assert!(diff * BigRational::from_integer(BigInt::from(2)) <= ulp,
            "printed {} for {}", s, r);
    }
}

fn parse_decimal(s: &str) -> BigRational {
    let neg = s.starts_with('-');
    let body = s.trim_start_matches('-');
    let (int_part, frac_part) = match body.split_once('.') {
        Some((i, f)) => (i, f),
        None => (body, ""),
    };
    let scale = BigInt::from(10u32).pow(frac_part.len() as u32);
    let digits: BigInt = format!("{int_part}{frac_part}")
        .parse()
        .expect("rendered decimal parses");
    let v = BigRational::new(digits, scale);
    if neg {
        -v
    } else {
        v
    }
}

#[test]
fn factorial_log_brackets_digit_counts_to_2000() {
    // number-of-digits(m!) - 1 <= lo and hi < number-of-digits(m!)
    let eps = default_epsilon();
    let mut acc = BigUint::one();
    for m in 2u64..=2000 {
        acc *= BigUint::from(m);
        let d = decimal_digit_count(&acc) as i64;
        let f = logmag_factorial(
            &BigUint::from(m),
            &eps,
            liouville_core::bigmath::EXACT_SUM_THRESHOLD,
        )
        .unwrap();
        let lo_floor = BigRational::from_integer(BigInt::from(d - 1));
        let hi_ceil = BigRational::from_integer(BigInt::from(d));
        assert!(f.lo() >= &lo_floor, "m = {m}");
        assert!(f.hi() < &hi_ceil, "m = {m}");
    }
}

#[test]
fn factorial_log_monotone_for_adjacent_indices() {
    let eps = default_epsilon();
    let mut prev = logmag_factorial(&BigUint::one(), &eps, 100_000).unwrap();
    for m in 2u64..=300 {
        let cur = logmag_factorial(&BigUint::from(m), &eps, 100_000).unwrap();
        assert!(
            LogMag::verify_strict_less(&prev, &cur) == liouville_core::bigmath::Cmp3::Less,
            "m = {m}"
        );
        prev = cur;
    }
}

#[test]
fn all_64_branch_strings_give_disjoint_extension_enclosures() {
    let budget = Budget::default();
    let mut encs = Vec::new();
    for mask in 0u32..64 {
        let bits: String = (0..6)
            .map(|i| if mask & (1 << i) != 0 { '1' } else { '0' })
            .collect();
        let cf = generate_ultra_strong(&BranchChoices::from_bit_str(&bits).unwrap(), 9, &budget)
            .unwrap();
        encs.push((bits, extension_enclosure(&cf)));
    }
    for i in 0..encs.len() {
        for j in (i + 1)..encs.len() {
            let (a, b) = (&encs[i].1, &encs[j].1);
            assert!(
                a.1 <= b.0 || b.1 <= a.0,
                "{} vs {} overlap",
                encs[i].0,
                encs[j].0
            );
        }
    }
}

#[test]
fn tail_bound_never_increases_with_truncation() {
    let eps = default_epsilon();
    let gaps = GapSequence::custom(
        [2u32, 4, 8, 12, 16]
            .iter()
            .map(|&v| BigUint::from(v))
            .collect(),
    )
    .unwrap();
    let z_log_hi = BigRational::zero();
    let mut prev: Option<BigRational> = None;
    for m in [1u32, 3, 5, 9, 13] {
        let b = tail_bound(&z_log_hi, &BigUint::from(m), &gaps, &eps).unwrap();
        if let Some(p) = &prev {
            assert!(b.hi() <= p, "tail bound rose at truncation {m}");
        }
        prev = Some(b.hi().clone());
    }
}

#[test]
fn ultra_strong_rows_verified_for_generated_numbers() {
    // the construction-level claim at finite depth, for a handful of
    // non-trivial branch strings
    let eps = default_epsilon();
    let budget = Budget::default();
    for bits in ["0000", "1111", "0101", "1010"] {
        let cf = generate_ultra_strong(&BranchChoices::from_bit_str(bits).unwrap(), 7, &budget)
            .unwrap();
        let rep =
            liouville_core::liouville::verify_ultra_strong(&cf, 6, &eps, &budget).unwrap();
        assert!(rep.rows().iter().all(|r| r.status == Status::Verified));
    }
}
