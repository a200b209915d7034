//! Command-line front end: hypothesis checking for weights, operator
//! classification from a JSON config, the closed-form-vs-sampled degree
//! table, and the seeded norm-equivalence experiment. Every artifact is
//! written atomically with deterministic formatting.

use std::fs;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::checks::{
    check_differentiation_condition, check_essentialness, check_target_weight_conditions,
    check_weight_axioms, default_axiom_grid, default_differentiation_grid,
    default_structural_grid, ConditionReport,
};
use crate::classify::{
    classify, classify_multiplier, classify_volterra, criterion_curve_phi, degree_rule,
    norm_equivalence_ratios, Verdict, DEFAULT_DELTA, DEFAULT_SLOPE_TOL, DEFAULT_TAIL_FRACTION,
};
use crate::config::{load_weight_check_plan, RunConfig};
use crate::error::{Error, Result};
use crate::numeric::log_grid;
use crate::report::{
    curve_csv, degree_table_csv, lp_csv, lp_envelope, to_json_string, verdict_label,
    write_atomic, DegreeRow, LpRow,
};
use crate::taylor::TaylorPolynomial;
use crate::weight::{growth_from_weight, RadialWeight};

/// Boundedness and compactness of Volterra and multiplication operators on
/// weighted sup-norm spaces of entire functions.
#[derive(Debug, Parser)]
#[command(name = "volfock", version, about)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Verify the decay axioms and criterion hypotheses for weights
    WeightCheck(WeightCheckArgs),
    /// Classify an operator between two weighted spaces
    Classify(ClassifyArgs),
    /// Compare the closed-form degree rule with the sampled classifier
    DegreeTable(DegreeTableArgs),
    /// Norm-equivalence ratios for seeded random polynomials
    LpCheck(LpCheckArgs),
}

#[derive(Debug, Args)]
pub struct WeightCheckArgs {
    /// JSON file holding a weight spec or a full run config
    #[arg(long)]
    pub config: PathBuf,
    /// Override the output directory
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OperatorKind {
    /// The Volterra operator `f -> ∫_0^z f g'`
    Volterra,
    /// The multiplication operator `f -> h f`
    Mult,
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    /// JSON run config with weights and a symbol
    #[arg(long)]
    pub config: PathBuf,
    /// Which operator the symbol drives
    #[arg(long, value_enum, default_value_t = OperatorKind::Volterra)]
    pub operator: OperatorKind,
    /// Override the output directory
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Override the number of curve grid points
    #[arg(long)]
    pub grid_points: Option<usize>,
    /// Override the curve grid upper radius
    #[arg(long)]
    pub r_max: Option<f64>,
    /// Override the symbol truncation degree
    #[arg(long)]
    pub truncation: Option<usize>,
    /// Override the slope tolerance of the classifier
    #[arg(long)]
    pub slope_tol: Option<f64>,
}

#[derive(Debug, Args)]
pub struct DegreeTableArgs {
    /// Weight scale parameter
    #[arg(long, default_value_t = 1.0)]
    pub alpha: f64,
    /// Growth orders to tabulate (comma separated, each >= 1)
    #[arg(long, value_delimiter = ',', default_values_t = vec![1.0, 2.0, 3.0])]
    pub p_list: Vec<f64>,
    /// Highest monomial degree
    #[arg(long, default_value_t = 5)]
    pub max_deg: usize,
    /// Output directory
    #[arg(long, default_value = "out")]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct LpCheckArgs {
    /// JSON run config supplying the reference space, seed, and output dir
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// RNG seed for the polynomial draws (overrides the config seed)
    #[arg(long)]
    pub seed: Option<u64>,
    /// Number of polynomials to draw
    #[arg(long, default_value_t = 100)]
    pub count: usize,
    /// Highest polynomial degree to draw
    #[arg(long, default_value_t = 20)]
    pub max_degree: usize,
    /// Weight scale parameter of the reference space (ignored with --config)
    #[arg(long, default_value_t = 1.0)]
    pub alpha: f64,
    /// Growth order of the reference space (ignored with --config)
    #[arg(long, default_value_t = 2.0)]
    pub p: f64,
    /// Output directory (overrides the config output dir)
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Process exit code for an error: 2 for malformed input, 3 when the
/// classifier refuses to decide, 4 when a standing hypothesis fails, 5 when
/// the sampled domain cannot cover the quantity, 1 otherwise.
pub fn exit_code_for(err: &Error) -> i32 {
    match err {
        Error::Config(_) | Error::InvalidParameter(_) | Error::UnsupportedFamily(_) => 2,
        Error::Inconclusive { .. } => 3,
        Error::HypothesisFailed(_) => 4,
        Error::DomainCoverage(_) => 5,
        Error::DegreeRuleMismatch(_) | Error::DegreeRulePartial(_) | Error::Io(_) => 1,
    }
}

/// Dispatch a parsed command line; the returned integer is the process
/// exit code for runs that completed without error.
pub fn run(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::WeightCheck(args) => cmd_weight_check(args),
        Command::Classify(args) => cmd_classify(args),
        Command::DegreeTable(args) => cmd_degree_table(args),
        Command::LpCheck(args) => cmd_lp_check(args),
    }
}

fn write_report(dir: &std::path::Path, label: &str, report: &ConditionReport) -> Result<bool> {
    let path = dir.join(format!("{label}_{}.json", report.name));
    write_atomic(&path, &to_json_string(report)?)?;
    println!(
        "{} {label} {}",
        if report.passed { "PASS" } else { "FAIL" },
        report.name
    );
    Ok(report.passed)
}

fn cmd_weight_check(args: WeightCheckArgs) -> Result<i32> {
    let plan = load_weight_check_plan(&args.config)?;
    let out_dir = args.out.unwrap_or(plan.output_dir);
    fs::create_dir_all(&out_dir)?;

    let mut all_passed = true;
    for (label, weight) in &plan.weights {
        let axioms = check_weight_axioms(weight, &default_axiom_grid(weight));
        all_passed &= write_report(&out_dir, label, &axioms)?;

        let phi = growth_from_weight(weight)?;
        let differentiation =
            check_differentiation_condition(&phi, &default_differentiation_grid(&phi));
        all_passed &= write_report(&out_dir, label, &differentiation)?;

        let target_grid = default_structural_grid(weight.patch_radius().max(2.0));
        let target = check_target_weight_conditions(weight, DEFAULT_DELTA, &target_grid)?;
        all_passed &= write_report(&out_dir, label, &target)?;

        let psi = weight.exponent().ok_or_else(|| {
            Error::UnsupportedFamily(format!(
                "{} has no closed-form exponent to check",
                weight.name()
            ))
        })?;
        let essentialness =
            check_essentialness(&psi, &default_structural_grid(psi.domain_start()));
        all_passed &= write_report(&out_dir, label, &essentialness)?;
    }
    Ok(if all_passed { 0 } else { 1 })
}

fn cmd_classify(args: ClassifyArgs) -> Result<i32> {
    let mut cfg = RunConfig::load(&args.config)?;
    if let Some(points) = args.grid_points {
        cfg.grid.points = points;
    }
    if let Some(r_max) = args.r_max {
        cfg.grid.r_max = r_max;
    }
    if let Some(truncation) = args.truncation {
        cfg.truncation = truncation;
    }
    if let Some(slope_tol) = args.slope_tol {
        cfg.tolerances.slope_tol = slope_tol;
    }
    if let Some(out) = args.out {
        cfg.output_dir = out;
    }
    cfg.validate()?;

    let source = cfg.source()?;
    let target = cfg.target()?;
    let symbol = cfg.symbol_poly()?;
    let opts = cfg.classify_options();

    let classification = match args.operator {
        OperatorKind::Volterra => classify_volterra(&source, &target, &symbol, &opts)?,
        OperatorKind::Mult => classify_multiplier(&source, &target, &symbol, &opts)?,
    };

    fs::create_dir_all(&cfg.output_dir)?;
    write_atomic(
        &cfg.output_dir.join("classification.json"),
        &to_json_string(&classification)?,
    )?;
    write_atomic(
        &cfg.output_dir.join("curve.csv"),
        &curve_csv(&classification.evidence),
    )?;

    println!("verdict: {}", verdict_label(classification.verdict));
    if let Some(slope) = classification.slope {
        println!("slope: {slope:.6}");
    }
    for warning in &classification.warnings {
        println!("warning: {warning}");
    }
    Ok(0)
}

/// Sampled verdict for `g = z^degree` on the exponential-power space,
/// bypassing the closed-form cross-check so the table can record genuine
/// disagreements instead of aborting on the first one.
fn sampled_degree_verdict(alpha: f64, p: f64, degree: usize) -> Result<Verdict> {
    let v = RadialWeight::exp_power(alpha, p)?;
    let phi = growth_from_weight(&v)?;
    let g = TaylorPolynomial::monomial(degree, Complex64::new(1.0, 0.0));
    let grid = log_grid(phi.r_phi().max(1.0), 50.0, 64);
    let curve = criterion_curve_phi(&g, &phi, |r| v.log_value(r), &grid);
    Ok(classify(&curve, DEFAULT_SLOPE_TOL, DEFAULT_TAIL_FRACTION)?.verdict)
}

fn cmd_degree_table(args: DegreeTableArgs) -> Result<i32> {
    if args.p_list.is_empty() {
        return Err(Error::InvalidParameter("p_list must not be empty".into()));
    }
    for &p in &args.p_list {
        if !(p >= 1.0 && p.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "degree table growth orders must be >= 1, got {p}"
            )));
        }
    }
    if args.max_deg > 12 {
        return Err(Error::InvalidParameter(format!(
            "max_deg {} is too large for the sampled column",
            args.max_deg
        )));
    }

    let mut rows = Vec::new();
    for &p in &args.p_list {
        for degree in 0..=args.max_deg {
            let rule_verdict = degree_rule(args.alpha, p, degree)?;
            let sampled_verdict = sampled_degree_verdict(args.alpha, p, degree)?;
            rows.push(DegreeRow {
                alpha: args.alpha,
                p,
                degree,
                rule_verdict,
                sampled_verdict,
            });
        }
    }

    fs::create_dir_all(&args.out)?;
    write_atomic(&args.out.join("degree_table.csv"), &degree_table_csv(&rows))?;

    let disagreements: Vec<&DegreeRow> = rows.iter().filter(|r| !r.agree()).collect();
    println!(
        "{} cells, {} disagreements",
        rows.len(),
        disagreements.len()
    );
    for row in &disagreements {
        println!(
            "disagree: alpha = {}, p = {}, degree = {}: rule {} vs sampled {}",
            row.alpha,
            row.p,
            row.degree,
            verdict_label(row.rule_verdict),
            verdict_label(row.sampled_verdict)
        );
    }
    Ok(if disagreements.is_empty() { 0 } else { 1 })
}

/// Draw a polynomial with coefficients uniform on the closed unit disc.
fn draw_polynomial(rng: &mut ChaCha8Rng, max_degree: usize) -> (usize, TaylorPolynomial) {
    let degree = rng.gen_range(1..=max_degree);
    let coeffs: Vec<Complex64> = (0..=degree)
        .map(|_| {
            let radius = rng.gen::<f64>().sqrt();
            let angle = rng.gen::<f64>() * std::f64::consts::TAU;
            Complex64::from_polar(radius, angle)
        })
        .collect();
    (degree, TaylorPolynomial::from_coeffs(coeffs))
}

fn cmd_lp_check(args: LpCheckArgs) -> Result<i32> {
    if args.max_degree == 0 {
        return Err(Error::InvalidParameter(
            "max_degree must be at least 1".into(),
        ));
    }
    let (v, seed, out_dir) = match &args.config {
        Some(path) => {
            let cfg = RunConfig::load(path)?;
            (
                cfg.source()?,
                args.seed.unwrap_or(cfg.seed),
                args.out.clone().unwrap_or(cfg.output_dir),
            )
        }
        None => (
            RadialWeight::exp_power(args.alpha, args.p)?,
            args.seed.unwrap_or(42),
            args.out.clone().unwrap_or_else(|| PathBuf::from("out")),
        ),
    };
    let phi = growth_from_weight(&v)?;
    let diff = check_differentiation_condition(&phi, &default_differentiation_grid(&phi));
    if !diff.passed {
        return Err(Error::HypothesisFailed(format!(
            "growth function of {} fails the differentiation condition; the norm equivalence needs it",
            v.name()
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let mut rows = Vec::with_capacity(args.count);
    for i in 0..args.count {
        let (degree, f) = draw_polynomial(&mut rng, args.max_degree);
        let ratios = norm_equivalence_ratios(&phi, &f, 20.0, 400)?;
        rows.push(LpRow {
            label: format!("poly_{i:03}"),
            degree,
            ratios,
        });
    }
    let envelope = lp_envelope(&rows);

    fs::create_dir_all(&out_dir)?;
    write_atomic(&out_dir.join("lp_check.csv"), &lp_csv(&rows))?;

    println!("envelope C = {envelope:.6}");
    Ok(if envelope <= 10.0 { 0 } else { 1 })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes_partition_the_error_space() {
        assert_eq!(exit_code_for(&Error::Config("x".into())), 2);
        assert_eq!(exit_code_for(&Error::InvalidParameter("x".into())), 2);
        assert_eq!(exit_code_for(&Error::UnsupportedFamily("x".into())), 2);
        assert_eq!(
            exit_code_for(&Error::Inconclusive {
                flips: 9,
                curve: Box::new(crate::classify::CriterionCurve {
                    form: crate::classify::CurveForm::Phi,
                    samples: vec![],
                    r_start: 1.0,
                }),
            }),
            3
        );
        assert_eq!(exit_code_for(&Error::HypothesisFailed("x".into())), 4);
        assert_eq!(exit_code_for(&Error::DomainCoverage("x".into())), 5);
        assert_eq!(exit_code_for(&Error::DegreeRuleMismatch("x".into())), 1);
        assert_eq!(exit_code_for(&Error::DegreeRulePartial(0.5)), 1);
    }

    #[test]
    fn sampled_column_matches_the_rule_on_a_spot_check() {
        for (p, degree, expect) in [
            (2.0, 1, Verdict::Compact),
            (2.0, 2, Verdict::Bounded),
            (2.0, 3, Verdict::Unbounded),
            (1.0, 1, Verdict::Bounded),
            (3.0, 2, Verdict::Compact),
        ] {
            assert_eq!(
                sampled_degree_verdict(1.0, p, degree).unwrap(),
                expect,
                "p = {p}, degree = {degree}"
            );
        }
    }

    #[test]
    fn polynomial_draws_are_reproducible() {
        let mut a = ChaCha8Rng::seed_from_u64(42);
        let mut b = ChaCha8Rng::seed_from_u64(42);
        let (da, fa) = draw_polynomial(&mut a, 20);
        let (db, fb) = draw_polynomial(&mut b, 20);
        assert_eq!(da, db);
        assert_eq!(fa.coeffs(), fb.coeffs());
        for c in fa.coeffs() {
            assert!(c.norm() <= 1.0 + 1e-12);
        }
    }

    #[test]
    fn cli_parses_the_documented_flags() {
        let cli = Cli::try_parse_from([
            "volfock",
            "classify",
            "--config",
            "run.json",
            "--operator",
            "mult",
            "--grid-points",
            "32",
        ])
        .unwrap();
        match cli.command {
            Command::Classify(args) => {
                assert_eq!(args.operator, OperatorKind::Mult);
                assert_eq!(args.grid_points, Some(32));
            }
            _ => panic!("parsed into the wrong subcommand"),
        }
        let table = Cli::try_parse_from([
            "volfock",
            "degree-table",
            "--alpha",
            "0.5",
            "--p-list",
            "1,2,3",
            "--max-deg",
            "4",
        ])
        .unwrap();
        match table.command {
            Command::DegreeTable(args) => {
                assert_eq!(args.p_list, vec![1.0, 2.0, 3.0]);
                assert_eq!(args.max_deg, 4);
            }
            _ => panic!("parsed into the wrong subcommand"),
        }
        let lp = Cli::try_parse_from(["volfock", "lp-check", "--seed", "7"]).unwrap();
        match lp.command {
            Command::LpCheck(args) => {
                assert_eq!(args.seed, Some(7));
                assert!(args.config.is_none());
            }
            _ => panic!("parsed into the wrong subcommand"),
        }
    }
}
