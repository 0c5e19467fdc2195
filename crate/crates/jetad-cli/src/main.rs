//! Command-line front end: evaluate derivatives, cross-check them against
//! random seeds and finite differences, and inspect jet norms.
//!
//! Exit codes: 0 success, 1 usage error, 2 evaluation/domain error,
//! 3 check-tolerance failure.

mod report;

use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use jetad::engine::{differentiate, SeedVector};
use jetad::expr::parse;
use jetad::norms::{norm_beta, norm_l1, norm_l2_star};
use jetad::oracles::{finite_difference, FDConfig};
use jetad::{HomogeneousNorm, Jet};
use report::{FdComparison, Format, NormReport, OracleBlock, ProductCheck, RunReport};

/// Conditioning warning threshold: extraction coefficients scale like
/// `1/t1^k`, so a tiny leading seed coefficient amplifies rounding.
const CONDITIONING_THRESHOLD: f64 = 1e-3;

/// Finite differences cannot do better than these per-order floors with
/// the default step; the check tolerance for the oracle is the flag value
/// or the floor, whichever is larger.
const FD_FLOORS: [f64; 4] = [1e-6, 1e-6, 1e-4, 1e-2];

#[derive(Parser)]
#[command(
    name = "jetad",
    version,
    about = "Exact higher-order derivatives through truncated polynomial arithmetic"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute f(c), f'(c), ..., f^(n)(c) from one seeded jet evaluation
    Eval(EvalArgs),
    /// Re-derive the derivatives under random seeds plus a
    /// finite-difference oracle and compare
    Check(CheckArgs),
    /// Norms of a jet given by its coefficients, with an optional
    /// submultiplicativity spot-check
    Norm(NormArgs),
}

#[derive(Args)]
struct EvalArgs {
    /// Expression in the variable x, e.g. "ln(x)*cos(1/x^2)"
    #[arg(long)]
    expr: String,
    /// Point to differentiate at
    #[arg(long, allow_hyphen_values = true)]
    at: f64,
    /// Number of derivatives to compute
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..=32))]
    order: u32,
    /// Seed coefficients t1,...,tn (comma-separated, t1 != 0); defaults to
    /// 1 followed by zeros
    #[arg(long, allow_hyphen_values = true)]
    seed: Option<String>,
    #[arg(long, value_enum, default_value = "table")]
    format: Format,
}

#[derive(Args)]
struct CheckArgs {
    #[command(flatten)]
    eval: EvalArgs,
    /// How many seeds to compare (the explicit/default seed plus random
    /// ones)
    #[arg(long, default_value_t = 8)]
    seeds: usize,
    /// Tolerance on the max pairwise seed deviation; the finite-difference
    /// comparison uses max(this, a per-order accuracy floor)
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
}

#[derive(Args)]
struct NormArgs {
    /// Jet coefficients a0,...,an (comma-separated)
    #[arg(long, allow_hyphen_values = true)]
    coeffs: String,
    /// Weight base of the beta norm (must be positive)
    #[arg(long, allow_hyphen_values = true)]
    beta: f64,
    /// Second jet for the submultiplicativity check |x*y| <= |x|*|y|
    #[arg(long, allow_hyphen_values = true)]
    other: Option<String>,
    #[arg(long, value_enum, default_value = "table")]
    format: Format,
}

enum AppError {
    /// Malformed flags or flag combinations: exit 1.
    Usage(String),
    /// Parse, domain, or seed failures while evaluating: exit 2.
    Evaluation(String),
    /// Deviations exceeded the requested tolerances: exit 3.
    ToleranceBreach,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            eprint!("{e}");
            return ExitCode::from(1);
        }
    };
    let result = match cli.command {
        Command::Eval(args) => cmd_eval(args),
        Command::Check(args) => cmd_check(args),
        Command::Norm(args) => cmd_norm(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(AppError::Usage(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
        Err(AppError::Evaluation(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
        Err(AppError::ToleranceBreach) => {
            eprintln!("check failed: deviations exceed tolerance");
            ExitCode::from(3)
        }
    }
}

fn parse_csv(text: &str, what: &str) -> Result<Vec<f64>, String> {
    let values: Result<Vec<f64>, _> = text.split(',').map(|s| s.trim().parse::<f64>()).collect();
    match values {
        Ok(v) if !v.is_empty() && v.iter().all(|x| x.is_finite()) => Ok(v),
        _ => Err(format!(
            "{what} must be a comma-separated list of finite numbers, got `{text}`"
        )),
    }
}

/// Resolves the --seed flag against --order; length must match.
fn resolve_seed(flag: &Option<String>, order: usize) -> Result<SeedVector, AppError> {
    match flag {
        None => Ok(SeedVector::standard(order)),
        Some(text) => {
            let thetas = parse_csv(text, "--seed").map_err(AppError::Usage)?;
            if thetas.len() != order {
                return Err(AppError::Usage(format!(
                    "--seed has {} coefficients but --order is {}",
                    thetas.len(),
                    order
                )));
            }
            SeedVector::new(thetas).map_err(|e| AppError::Evaluation(e.to_string()))
        }
    }
}

/// Scale-protected relative deviation.
fn rel_dev(a: f64, b: f64) -> f64 {
    (a - b).abs() / 1.0f64.max(a.abs()).max(b.abs())
}

fn conditioning_note(seed: &SeedVector) -> Option<String> {
    (seed.leading().abs() < CONDITIONING_THRESHOLD).then(|| {
        format!(
            "ill-conditioned seed: |t1| = {}; extraction coefficients scale like 1/t1^k",
            seed.leading().abs()
        )
    })
}

fn cmd_eval(args: EvalArgs) -> Result<(), AppError> {
    let order = args.order as usize;
    let expr = parse(&args.expr).map_err(|e| AppError::Evaluation(e.to_string()))?;
    let seed = resolve_seed(&args.seed, order)?;
    let result = differentiate(&expr, args.at, order, &seed)
        .map_err(|e| AppError::Evaluation(e.to_string()))?;

    let report = RunReport {
        expr: args.expr,
        at: args.at,
        order,
        seed: seed.thetas().to_vec(),
        value: result.value,
        derivatives: result.derivatives,
        diagnostics: conditioning_note(&seed).into_iter().collect(),
        oracle: None,
    };
    print!("{}", report.render(args.format));
    Ok(())
}

fn cmd_check(args: CheckArgs) -> Result<(), AppError> {
    let order = args.eval.order as usize;
    if args.seeds == 0 {
        return Err(AppError::Usage("--seeds must be at least 1".into()));
    }
    let expr = parse(&args.eval.expr).map_err(|e| AppError::Evaluation(e.to_string()))?;
    let base_seed = resolve_seed(&args.eval.seed, order)?;

    let mut diagnostics: Vec<String> = conditioning_note(&base_seed).into_iter().collect();
    if args.seeds == 1 {
        diagnostics.push("single seed: pairwise comparison is degenerate".into());
    }

    // Deterministic comparison seeds: same flags, same seeds, same report.
    let mut rng = ChaCha8Rng::seed_from_u64(0x004a_4554_4144);
    let mut seeds = vec![base_seed];
    for _ in 1..args.seeds {
        let mut thetas = vec![rng.gen_range(0.5..2.0) * if rng.gen() { 1.0 } else { -1.0 }];
        for _ in 1..order {
            thetas.push(rng.gen_range(-2.0..2.0));
        }
        seeds.push(SeedVector::new(thetas).expect("random seed is valid"));
    }

    let runs: Vec<_> = seeds
        .iter()
        .map(|theta| differentiate(&expr, args.eval.at, order, theta))
        .collect::<Result<_, _>>()
        .map_err(|e| AppError::Evaluation(e.to_string()))?;

    let mut max_seed_deviation = 0.0f64;
    for a in &runs {
        for b in &runs {
            for (x, y) in a.derivatives.iter().zip(&b.derivatives) {
                max_seed_deviation = max_seed_deviation.max(rel_dev(*x, *y));
            }
        }
    }

    let reference: &jetad::DerivativeResult = &runs[0];
    let cfg = FDConfig::default();
    let mut finite = Vec::new();
    let mut max_oracle_deviation = 0.0f64;
    for i in 1..=order.min(4) {
        let estimate = finite_difference(&expr, args.eval.at, i, &cfg)
            .map_err(|e| AppError::Evaluation(e.to_string()))?;
        let deviation = rel_dev(estimate, reference.derivatives[i - 1]);
        max_oracle_deviation = max_oracle_deviation.max(deviation);
        finite.push(FdComparison {
            order: i,
            estimate,
            deviation,
            tolerance: args.tol.max(FD_FLOORS[i - 1]),
        });
    }
    if order > 4 {
        diagnostics.push(format!(
            "finite-difference oracle covers derivative orders 1..=4; orders 5..={order} compared across seeds only"
        ));
    }

    let passed =
        max_seed_deviation <= args.tol && finite.iter().all(|fd| fd.deviation <= fd.tolerance);
    let report = RunReport {
        expr: args.eval.expr,
        at: args.eval.at,
        order,
        seed: seeds[0].thetas().to_vec(),
        value: reference.value,
        derivatives: reference.derivatives.clone(),
        diagnostics,
        oracle: Some(OracleBlock {
            seeds_compared: args.seeds,
            max_seed_deviation,
            seed_tolerance: args.tol,
            finite_difference: finite,
            max_oracle_deviation,
            passed,
        }),
    };
    print!("{}", report.render(args.eval.format));
    if passed {
        Ok(())
    } else {
        Err(AppError::ToleranceBreach)
    }
}

fn cmd_norm(args: NormArgs) -> Result<(), AppError> {
    // Per the norm contract, malformed coefficients and non-positive beta
    // are evaluation errors (exit 2), not usage errors.
    let coeffs = parse_csv(&args.coeffs, "--coeffs").map_err(AppError::Evaluation)?;
    let order = coeffs.len() - 1;
    let x = Jet::new(order, coeffs.clone()).map_err(|e| AppError::Evaluation(e.to_string()))?;
    if !args.beta.is_finite() || args.beta <= 0.0 {
        return Err(AppError::Evaluation(format!(
            "beta must be positive and finite, got {}",
            args.beta
        )));
    }
    let absolute = HomogeneousNorm::absolute();
    let beta_norm = norm_beta(&x, args.beta).map_err(|e| AppError::Evaluation(e.to_string()))?;

    let product_check = match &args.other {
        None => None,
        Some(text) => {
            let other_coeffs = parse_csv(text, "--other").map_err(AppError::Evaluation)?;
            if other_coeffs.len() != coeffs.len() {
                return Err(AppError::Evaluation(format!(
                    "--other has {} coefficients but --coeffs has {}",
                    other_coeffs.len(),
                    coeffs.len()
                )));
            }
            let y = Jet::new(order, other_coeffs.clone())
                .map_err(|e| AppError::Evaluation(e.to_string()))?;
            let product = x.mul(&y).expect("same order");
            let product_beta_norm =
                norm_beta(&product, args.beta).map_err(|e| AppError::Evaluation(e.to_string()))?;
            let bound = beta_norm
                * norm_beta(&y, args.beta).map_err(|e| AppError::Evaluation(e.to_string()))?;
            Some(ProductCheck {
                other: other_coeffs,
                product_beta_norm,
                bound,
                // Slack for rounding in the two routes.
                submultiplicative: product_beta_norm <= bound * (1.0 + 1e-12) + 1e-12,
            })
        }
    };

    let report = NormReport {
        coeffs,
        order,
        beta: args.beta,
        l1: norm_l1(&x, &absolute),
        l2_star: norm_l2_star(&x, &absolute),
        beta_norm,
        product_check,
    };
    print!("{}", report.render(args.format));
    Ok(())
}
