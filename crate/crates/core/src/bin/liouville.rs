//! Command-line front end: construct ultra-strong Liouville numbers,
//! evaluate the lacunary series at rationals, verify the witness
//! inequalities, and run the full inequality audit.
//!
//! Exit codes: 0 all rows verified, 1 any row failed, 2 usage or
//! infeasible-configuration error, 3 undecided rows with no failures.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::Zero;

use liouville_core::audit::{
    audit_case1, audit_case2, full_report, AuditOptions, Case1Config, FullReportConfig,
};
use liouville_core::bigmath::pow10;
use liouville_core::budget::{Budget, CancelToken};
use liouville_core::cf::{convergents, extension_enclosure, PartialQuotients};
use liouville_core::decimal::{render_enclosure, to_decimal_string};
use liouville_core::lacunary::{eval_truncation_exact, GapSequence};
use liouville_core::liouville::{generate_ultra_strong, verify_ultra_strong, BranchChoices};
use liouville_core::report::AuditReport;

/// Environment variable overriding the default exact-tier budget (largest
/// power-of-ten exponent the exact tier will materialize).
const BUDGET_ENV: &str = "LIOUVILLE_EXACT_BUDGET";

#[derive(Parser)]
#[command(name = "liouville", version, about = "ultra-strong Liouville numbers and the lacunary-series audit", disable_help_subcommand = true)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Table,
    Json,
}

#[derive(Args)]
struct CommonOpts {
    /// Branch bits (one per level j >= 4), e.g. "00101". Defaults to
    /// all-zero bits for depth 8 (depth 9 for the full audit).
    #[arg(long)]
    bits: Option<String>,
    /// Number of partial quotients to generate (default 8; 9 for the full
    /// audit).
    #[arg(long)]
    depth: Option<usize>,
    /// Gap-sequence bases over {2,3}, e.g. "222".
    #[arg(long, default_value = "222222")]
    gaps: String,
    /// Custom gap terms (comma-separated integers), replacing --gaps.
    #[arg(long)]
    custom_gaps: Option<String>,
    /// Interval width target, as a power of ten: 12 means 1e-12.
    #[arg(long, default_value_t = 12)]
    eps_pow10: u32,
    /// Exact-tier budget: largest 10^E materialized.
    #[arg(long)]
    budget: Option<u64>,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// Print the partial quotients, convergents, and a decimal rendering of
    /// the enclosure midpoint with a rigorous radius bound.
    Generate {
        #[command(flatten)]
        common: CommonOpts,
        /// Decimal digits to print.
        #[arg(long, default_value_t = 40)]
        digits: usize,
    },
    /// Evaluate the series truncation exactly at a rational point.
    Eval {
        #[command(flatten)]
        common: CommonOpts,
        /// Evaluation point as a fraction "p/q".
        #[arg(long)]
        z: String,
        /// Truncation index.
        #[arg(long)]
        truncate: u64,
        /// Decimal digits to print.
        #[arg(long, default_value_t = 40)]
        digits: usize,
    },
    /// Verify the ultra-strong witness inequalities at finite depth.
    Verify {
        #[command(flatten)]
        common: CommonOpts,
        /// Verify rows for n = 1..=upto.
        #[arg(long)]
        upto: usize,
    },
    /// Run the inequality audit (the merged report by default).
    Audit {
        #[command(flatten)]
        common: CommonOpts,
        /// Which audit: "1", "2", or "full".
        #[arg(long, default_value = "full")]
        case: String,
        /// Polynomial exponent k for the bounded-phi audit.
        #[arg(long, default_value_t = 1)]
        k: u32,
        /// Index window "lo..hi" for the bounded-phi audit.
        #[arg(long)]
        window: Option<String>,
        /// Transition pair "n_j,k_j" for the phi-jump audit.
        #[arg(long)]
        pair: Option<String>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn parse_eps(pow: u32) -> BigRational {
    BigRational::new(BigInt::from(1), BigInt::from(pow10(pow as u64)))
}

fn budget_from(common: &CommonOpts) -> Result<Budget, String> {
    let mut budget = Budget::default();
    if let Ok(v) = std::env::var(BUDGET_ENV) {
        budget.max_pow10_exp = v
            .parse()
            .map_err(|_| format!("{BUDGET_ENV} must be an integer, got {v:?}"))?;
    }
    if let Some(b) = common.budget {
        budget.max_pow10_exp = b;
    }
    Ok(budget)
}

fn gaps_from(common: &CommonOpts) -> Result<GapSequence, String> {
    match &common.custom_gaps {
        Some(list) => {
            let terms: Result<Vec<BigUint>, String> = list
                .split(',')
                .map(|t| {
                    BigUint::parse_bytes(t.trim().as_bytes(), 10)
                        .ok_or_else(|| format!("bad gap term {t:?}"))
                })
                .collect();
            GapSequence::custom(terms?).map_err(|e| e.to_string())
        }
        None => GapSequence::from_base_str(&common.gaps).map_err(|e| e.to_string()),
    }
}

fn resolve_shape(common: &CommonOpts, default_bits: &str, default_depth: usize) -> (String, usize) {
    let bits = common.bits.clone().unwrap_or_else(|| default_bits.to_string());
    let depth = common.depth.unwrap_or(default_depth);
    (bits, depth)
}

fn cf_from(common: &CommonOpts, budget: &Budget) -> Result<PartialQuotients, String> {
    let (bits, depth) = resolve_shape(common, "00000", 8);
    let choices = BranchChoices::from_bit_str(&bits).map_err(|e| e.to_string())?;
    generate_ultra_strong(&choices, depth, budget).map_err(|e| e.to_string())
}

fn parse_rational(s: &str) -> Result<BigRational, String> {
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let n = num
        .parse::<BigInt>()
        .map_err(|_| format!("bad numerator {num:?}"))?;
    let d = den
        .parse::<BigInt>()
        .map_err(|_| format!("bad denominator {den:?}"))?;
    if d.is_zero() {
        return Err("zero denominator".into());
    }
    Ok(BigRational::new(n, d))
}

fn parse_window(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s
        .split_once("..")
        .ok_or_else(|| format!("window must look like 2..4, got {s:?}"))?;
    let lo = a.trim().parse().map_err(|_| format!("bad window start {a:?}"))?;
    let hi = b.trim().parse().map_err(|_| format!("bad window end {b:?}"))?;
    Ok((lo, hi))
}

fn emit_report(report: &AuditReport, format: Format) -> ExitCode {
    match format {
        Format::Table => print!("{}", report.to_table()),
        Format::Json => println!("{}", report.to_json()),
    }
    ExitCode::from(report.exit_code() as u8)
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Generate { common, digits } => {
            let budget = budget_from(&common)?;
            let cf = cf_from(&common, &budget)?;
            let convs = convergents(&cf);
            match common.format {
                Format::Json => {
                    let (lo, hi) = extension_enclosure(&cf);
                    let payload = serde_json::json!({
                        "partial_quotients": cf.to_decimal_strings(),
                        "convergents": convs.iter().map(|c| {
                            serde_json::json!({"n": c.n, "p": c.p.to_string(), "q": c.q.to_string()})
                        }).collect::<Vec<_>>(),
                        "value": render_enclosure(&lo, &hi, digits),
                    });
                    println!("{}", serde_json::to_string_pretty(&payload).expect("static"));
                }
                Format::Table => {
                    println!("a = {}", cf.to_decimal_strings().join(","));
                    for c in &convs {
                        println!("p_{}/q_{} = {}/{}", c.n, c.n, c.p, c.q);
                    }
                    let (lo, hi) = extension_enclosure(&cf);
                    println!("xi = {}", render_enclosure(&lo, &hi, digits));
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Eval { common, z, truncate, digits } => {
            let budget = budget_from(&common)?;
            let gaps = gaps_from(&common)?;
            let z = parse_rational(&z)?;
            let approx = eval_truncation_exact(
                &z,
                &BigUint::from(truncate),
                &gaps,
                &budget,
                &CancelToken::new(),
            )
            .map_err(|e| e.to_string())?;
            match common.format {
                Format::Json => {
                    let mut payload = approx.to_json_value();
                    payload["decimal"] =
                        serde_json::json!(to_decimal_string(&approx.value, digits));
                    println!("{}", serde_json::to_string_pretty(&payload).expect("static"));
                }
                Format::Table => {
                    println!(
                        "F_{}({}) = {}/{}",
                        truncate,
                        z,
                        approx.value.numer(),
                        approx.value.denom()
                    );
                    println!(
                        "canonical den = 10^{} * {}^{}",
                        approx.canonical_den.pow10_exp,
                        approx.canonical_den.q,
                        approx.canonical_den.q_exp
                    );
                    println!("decimal = {}", to_decimal_string(&approx.value, digits));
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { common, upto } => {
            let budget = budget_from(&common)?;
            let cf = cf_from(&common, &budget)?;
            let eps = parse_eps(common.eps_pow10);
            let report =
                verify_ultra_strong(&cf, upto, &eps, &budget).map_err(|e| e.to_string())?;
            Ok(emit_report(&report, common.format))
        }
        Command::Audit { common, case, k, window, pair } => {
            let budget = budget_from(&common)?;
            let eps = parse_eps(common.eps_pow10);
            let opts = AuditOptions {
                eps,
                budget: budget.clone(),
                ..AuditOptions::default()
            };
            // audits default to the deeper nine-quotient configuration
            let (bits, depth) = resolve_shape(&common, "000000", 9);
            let report = match case.as_str() {
                "1" => {
                    let choices = BranchChoices::from_bit_str(&bits).map_err(|e| e.to_string())?;
                    let cf = generate_ultra_strong(&choices, depth, &budget)
                        .map_err(|e| e.to_string())?;
                    let gaps = gaps_from(&common)?;
                    let n_window = match window {
                        Some(w) => parse_window(&w)?,
                        None => (1, 2),
                    };
                    audit_case1(&cf, &gaps, &Case1Config { k, n_window }, &opts)
                        .map_err(|e| e.to_string())?
                }
                "2" => {
                    let choices = BranchChoices::from_bit_str(&bits).map_err(|e| e.to_string())?;
                    let cf = generate_ultra_strong(&choices, depth, &budget)
                        .map_err(|e| e.to_string())?;
                    let gaps = gaps_from(&common)?;
                    let pair = pair.ok_or("--pair n_j,k_j is required for --case 2")?;
                    let (a, b) = pair
                        .split_once(',')
                        .ok_or_else(|| format!("pair must look like 3,1, got {pair:?}"))?;
                    let n_j = a.trim().parse().map_err(|_| format!("bad n_j {a:?}"))?;
                    let k_j = b.trim().parse().map_err(|_| format!("bad k_j {b:?}"))?;
                    audit_case2(&cf, &gaps, (n_j, k_j), &opts).map_err(|e| e.to_string())?
                }
                "full" => {
                    let mut cfg = FullReportConfig {
                        bits: bits.clone(),
                        depth,
                        gap_bases: common.gaps.clone(),
                        options: opts,
                        ..FullReportConfig::default()
                    };
                    if let Some(w) = window {
                        let parsed = parse_window(&w)?;
                        cfg.case1 = Some(Case1Config { k, n_window: parsed });
                    }
                    full_report(&cfg).map_err(|e| e.to_string())?
                }
                other => return Err(format!("unknown case {other:?}; use 1, 2 or full")),
            };
            Ok(emit_report(&report, common.format))
        }
    }
}
