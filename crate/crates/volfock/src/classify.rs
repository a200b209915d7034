//! The decision procedures: criterion curves for the Volterra and
//! multiplication operators, the slope classifier over those curves, the
//! closed-form degree rule for monomial symbols, and the end-to-end
//! pipelines that verify hypotheses before sampling.

use serde::Serialize;

use crate::checks::{
    check_differentiation_condition, check_essentialness, check_target_weight_conditions,
    check_weight_axioms, default_axiom_grid, default_differentiation_grid,
    default_structural_grid, ConditionReport,
};
use crate::envelope::MonomialNormTable;
use crate::error::{Error, Result};
use crate::numeric::{log_add_exp, log_grid, ls_slope, tail};
use crate::taylor::{norm_grid, weighted_sup_norm_log, TaylorPolynomial};
use crate::weight::{growth_from_weight, GrowthFunction, RadialWeight};

pub const DEFAULT_R_MIN: f64 = 1.0;
pub const DEFAULT_R_MAX: f64 = 50.0;
pub const DEFAULT_POINTS: usize = 64;
pub const DEFAULT_SLOPE_TOL: f64 = 0.05;
pub const DEFAULT_TAIL_FRACTION: f64 = 0.5;
pub const DEFAULT_DELTA: f64 = 0.5;

/// Which boundedness criterion a curve samples.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CurveForm {
    /// `M(g', r) phi(r) / phi'(r)` — same source and target space.
    Phi,
    /// `M(g', r) w(r)^2 / (|w'(r)| v(r))` — distinct target space.
    TwoWeight,
    /// `M(h, r) w(r) / v(r)` — multiplication operator.
    Mult,
}

/// A sampled criterion curve: `(r, log q(r))` pairs on an increasing grid.
#[derive(Debug, Clone, Serialize)]
pub struct CriterionCurve {
    pub form: CurveForm,
    pub samples: Vec<[f64; 2]>,
    pub r_start: f64,
}

/// Outcome of a boundedness/compactness decision.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Compact,
    Bounded,
    Unbounded,
}

/// Which weight stood in the criterion denominator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ProxyKind {
    #[serde(rename = "v")]
    V,
    #[serde(rename = "vM")]
    VM,
}

/// Full result of a classification run.
#[derive(Debug, Clone, Serialize)]
pub struct Classification {
    pub verdict: Verdict,
    pub slope: Option<f64>,
    pub tail_value: Option<f64>,
    pub proxy: ProxyKind,
    pub form: CurveForm,
    pub weak_compact_note: Option<String>,
    pub warnings: Vec<String>,
    #[serde(skip)]
    pub evidence: CriterionCurve,
}

/// Verdict plus the fitted diagnostics from a single curve.
#[derive(Debug, Clone, Copy)]
pub struct ClassifierOutcome {
    pub verdict: Verdict,
    pub slope: Option<f64>,
    pub tail_value: Option<f64>,
}

/// Tuning knobs for the pipelines; defaults match the library conventions.
#[derive(Debug, Clone)]
pub struct ClassifyOptions {
    pub r_min: f64,
    pub r_max: f64,
    pub points: usize,
    pub slope_tol: f64,
    pub tail_fraction: f64,
    pub delta: f64,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions {
            r_min: DEFAULT_R_MIN,
            r_max: DEFAULT_R_MAX,
            points: DEFAULT_POINTS,
            slope_tol: DEFAULT_SLOPE_TOL,
            tail_fraction: DEFAULT_TAIL_FRACTION,
            delta: DEFAULT_DELTA,
        }
    }
}

enum ProxyEval<'a> {
    Direct(&'a RadialWeight),
    Envelope(&'a MonomialNormTable),
}

impl ProxyEval<'_> {
    fn log_value(&self, r: f64) -> f64 {
        match self {
            ProxyEval::Direct(v) => v.log_value(r),
            ProxyEval::Envelope(t) => t.envelope_log(r),
        }
    }
}

/// `log q(r) = log M(g', r) - log phi'(r) + log phi(r) - ... ` with the
/// source weight (or its envelope) in the denominator. `source_log` must
/// return `log` of that denominator weight.
pub fn criterion_curve_phi(
    symbol: &TaylorPolynomial,
    phi: &GrowthFunction,
    source_log: impl Fn(f64) -> f64,
    grid: &[f64],
) -> CriterionCurve {
    let gp = symbol.differentiate();
    let samples = grid
        .iter()
        .map(|&r| {
            let q = gp.log_coeff_majorant(r) - phi.phi_prime_log(r) - source_log(r);
            [r, q]
        })
        .collect();
    CriterionCurve {
        form: CurveForm::Phi,
        samples,
        r_start: grid[0],
    }
}

/// `log q(r) = log M(g', r) + 2 log w(r) - log |w'(r)| - log v(r)` for a
/// target weight with closed-form derivative data.
pub fn criterion_curve_two_weight(
    symbol: &TaylorPolynomial,
    target: &RadialWeight,
    source_log: impl Fn(f64) -> f64,
    grid: &[f64],
) -> Result<CriterionCurve> {
    let gp = symbol.differentiate();
    let mut samples = Vec::with_capacity(grid.len());
    for &r in grid {
        let dlog = target.log_abs_derivative(r).ok_or_else(|| {
            Error::UnsupportedFamily(format!(
                "{} has no closed-form derivative for the two-weight criterion",
                target.name()
            ))
        })?;
        let q = gp.log_coeff_majorant(r) + 2.0 * target.log_value(r) - dlog - source_log(r);
        samples.push([r, q]);
    }
    Ok(CriterionCurve {
        form: CurveForm::TwoWeight,
        samples,
        r_start: grid[0],
    })
}

/// `log q(r) = log M(h, r) + log w(r) - log v(r)` for the multiplication
/// operator with symbol `h`.
pub fn criterion_curve_mult(
    symbol: &TaylorPolynomial,
    target: &RadialWeight,
    source_log: impl Fn(f64) -> f64,
    grid: &[f64],
) -> CriterionCurve {
    let samples = grid
        .iter()
        .map(|&r| {
            let q = symbol.log_coeff_majorant(r) + target.log_value(r) - source_log(r);
            [r, q]
        })
        .collect();
    CriterionCurve {
        form: CurveForm::Mult,
        samples,
        r_start: grid[0],
    }
}

/// Fit the tail of a criterion curve and decide. A clearly negative slope
/// means the criterion quantity decays (compact), a clearly positive slope
/// means it blows up (unbounded), and a flat tail means bounded — unless
/// the curve still fell by two log-units across the tail. A tail whose
/// discrete slope changes sign more than three times is refused.
pub fn classify(
    curve: &CriterionCurve,
    slope_tol: f64,
    tail_fraction: f64,
) -> Result<ClassifierOutcome> {
    if curve.samples.iter().all(|s| s[1] == f64::NEG_INFINITY) {
        // zero symbol: the operator is the zero operator
        return Ok(ClassifierOutcome {
            verdict: Verdict::Compact,
            slope: None,
            tail_value: None,
        });
    }
    if curve.samples.len() < 16 {
        return Err(Error::InvalidParameter(format!(
            "criterion curve has {} samples; need at least 16",
            curve.samples.len()
        )));
    }
    let r_first = curve.samples.first().unwrap()[0];
    let r_last = curve.samples.last().unwrap()[0];
    if !(r_first > 0.0) || r_last / r_first < 10.0 * (1.0 - 1e-12) {
        return Err(Error::InvalidParameter(format!(
            "criterion grid [{r_first}, {r_last}] spans less than a decade"
        )));
    }

    let tail_samples = tail(&curve.samples, tail_fraction);
    let xs: Vec<f64> = tail_samples.iter().map(|s| s[0].ln()).collect();
    let ys: Vec<f64> = tail_samples.iter().map(|s| s[1]).collect();

    // slope noise from cancelled exponent terms reaches ~1e-9, while any
    // oscillation large enough to matter moves the slope by >= slope_tol;
    // the dead zone sits well between the two
    let mut flips = 0usize;
    let mut prev_sign = 0i8;
    for i in 1..ys.len() {
        let ds = (ys[i] - ys[i - 1]) / (xs[i] - xs[i - 1]);
        let sign = if ds > 1e-6 {
            1
        } else if ds < -1e-6 {
            -1
        } else {
            0
        };
        if sign != 0 {
            if prev_sign != 0 && sign != prev_sign {
                flips += 1;
            }
            prev_sign = sign;
        }
    }
    if flips > 3 {
        return Err(Error::Inconclusive {
            flips,
            curve: Box::new(curve.clone()),
        });
    }

    let slope = ls_slope(&xs, &ys);
    let drop = ys.first().unwrap() - ys.last().unwrap();
    let tail_value = *ys.last().unwrap();
    let verdict = if slope < -slope_tol {
        Verdict::Compact
    } else if slope > slope_tol {
        Verdict::Unbounded
    } else if drop >= 2.0 {
        Verdict::Compact
    } else {
        Verdict::Bounded
    };
    Ok(ClassifierOutcome {
        verdict,
        slope: Some(slope),
        tail_value: Some(tail_value),
    })
}

/// Closed-form verdict for the symbol `z^degree` acting on the
/// exponential-power space with parameters `(alpha, p)`, mapping into
/// itself. Compactness holds exactly when the degree sits strictly below
/// `p` (or the symbol is constant); boundedness extends to `degree <=
/// floor(p)` when `p >= 1`. Below order one no boundedness rule is
/// available and the partial-rule error is returned.
pub fn degree_rule(alpha: f64, p: f64, degree: usize) -> Result<Verdict> {
    if !(alpha > 0.0 && alpha.is_finite() && p > 0.0 && p.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "degree rule needs alpha > 0 and p > 0, got alpha = {alpha}, p = {p}"
        )));
    }
    if degree == 0 {
        return Ok(Verdict::Compact);
    }
    let d = degree as f64;
    if d < p {
        return Ok(Verdict::Compact);
    }
    if p < 1.0 {
        return Err(Error::DegreeRulePartial(p));
    }
    if d <= p.floor() {
        Ok(Verdict::Bounded)
    } else {
        Ok(Verdict::Unbounded)
    }
}

fn failing_subs(report: &ConditionReport) -> String {
    let names: Vec<&str> = report
        .sub_checks
        .iter()
        .filter(|s| !s.passed)
        .map(|s| s.name.as_str())
        .collect();
    if names.is_empty() {
        report.name.clone()
    } else {
        format!("{} ({})", report.name, names.join(", "))
    }
}

fn ensure_axioms(v: &RadialWeight, label: &str) -> Result<()> {
    let report = check_weight_axioms(v, &default_axiom_grid(v));
    if report.passed {
        Ok(())
    } else {
        Err(Error::HypothesisFailed(format!(
            "{label} weight {} fails the decay axioms: {}",
            v.name(),
            failing_subs(&report)
        )))
    }
}

struct FormChoice {
    form: CurveForm,
    phi: Option<GrowthFunction>,
}

/// Pick the criterion form: the single-weight form when source and target
/// are the same closed-form space and its growth function passes the
/// differentiation condition, otherwise the two-weight form when the target
/// satisfies the derivative conditions.
fn choose_form(
    source: &RadialWeight,
    target: &RadialWeight,
    delta: f64,
) -> Result<FormChoice> {
    let same = match (source.params_key(), target.params_key()) {
        (Some(a), Some(b)) => a == b,
        _ => false,
    };
    let mut phi_failure = None;
    if same {
        match growth_from_weight(source) {
            Ok(phi) => {
                let grid = default_differentiation_grid(&phi);
                let report = check_differentiation_condition(&phi, &grid);
                if report.passed {
                    return Ok(FormChoice {
                        form: CurveForm::Phi,
                        phi: Some(phi),
                    });
                }
                phi_failure = Some(failing_subs(&report));
            }
            Err(e) => phi_failure = Some(e.to_string()),
        }
    }

    let grid = default_structural_grid(target.patch_radius().max(2.0));
    let report = check_target_weight_conditions(target, delta, &grid)?;
    if report.passed {
        return Ok(FormChoice {
            form: CurveForm::TwoWeight,
            phi: None,
        });
    }
    let mut msg = format!(
        "target weight {} fails the derivative conditions: {}",
        target.name(),
        failing_subs(&report)
    );
    if let Some(why) = phi_failure {
        msg = format!("{msg}; single-weight route also failed: {why}");
    }
    Err(Error::HypothesisFailed(msg))
}

struct ProxyChoice {
    kind: ProxyKind,
    table: Option<MonomialNormTable>,
}

/// Use the source weight directly when its structural sub-checks pass;
/// otherwise fall back to the monomial envelope.
fn choose_proxy(
    source: &RadialWeight,
    r_max: f64,
    warnings: &mut Vec<String>,
) -> Result<ProxyChoice> {
    let essential = match source.exponent() {
        Some(psi) => {
            let grid = default_structural_grid(psi.domain_start());
            check_essentialness(&psi, &grid).passed
        }
        None => false,
    };
    if essential {
        return Ok(ProxyChoice {
            kind: ProxyKind::V,
            table: None,
        });
    }
    warnings.push(format!(
        "source weight {} failed the structural sub-checks; classifying against its monomial envelope",
        source.name()
    ));
    let size = MonomialNormTable::suggested_size(source, r_max);
    let table = MonomialNormTable::build(source, size)?;
    Ok(ProxyChoice {
        kind: ProxyKind::VM,
        table: Some(table),
    })
}

/// Exactly one nonzero coefficient above the constant term: the symbol acts
/// like a monomial and the closed-form degree rule applies.
fn monomial_symbol_degree(g: &TaylorPolynomial) -> Option<usize> {
    let mut found = None;
    for (i, c) in g.coeffs().iter().enumerate().skip(1) {
        if c.re != 0.0 || c.im != 0.0 {
            if found.is_some() {
                return None;
            }
            found = Some(i);
        }
    }
    found
}

fn weak_compact_note(source: &RadialWeight) -> Option<String> {
    source.exp_power_params().map(|_| {
        "weakly compact and compact coincide for this source space".to_string()
    })
}

fn push_order_warning(source: &RadialWeight, warnings: &mut Vec<String>) {
    if let Some((_, p)) = source.exp_power_params() {
        if p < 1.0 {
            warnings.push(format!(
                "growth order p = {p} is below one: no closed-form boundedness rule backs the sampled verdict"
            ));
        }
    }
}

/// Decide boundedness/compactness of the Volterra operator with symbol `g`
/// from the source space into the target space. Verifies the decay axioms
/// and the criterion hypotheses first, cross-checks monomial symbols
/// against the closed-form degree rule, and returns the classified curve.
pub fn classify_volterra(
    source: &RadialWeight,
    target: &RadialWeight,
    symbol: &TaylorPolynomial,
    opts: &ClassifyOptions,
) -> Result<Classification> {
    validate_opts(opts)?;
    ensure_axioms(source, "source")?;
    ensure_axioms(target, "target")?;

    let choice = choose_form(source, target, opts.delta)?;
    let mut warnings = Vec::new();
    push_order_warning(source, &mut warnings);
    let proxy = choose_proxy(source, opts.r_max, &mut warnings)?;
    let proxy_eval = match &proxy.table {
        Some(t) => ProxyEval::Envelope(t),
        None => ProxyEval::Direct(source),
    };

    let r_min = match &choice.phi {
        Some(phi) => opts.r_min.max(phi.r_phi()),
        None => opts.r_min,
    };
    if r_min >= opts.r_max {
        return Err(Error::InvalidParameter(format!(
            "grid start {r_min} is not below r_max {}",
            opts.r_max
        )));
    }
    let grid = log_grid(r_min, opts.r_max, opts.points);

    let curve = match (&choice.form, &choice.phi) {
        (CurveForm::Phi, Some(phi)) => {
            criterion_curve_phi(symbol, phi, |r| proxy_eval.log_value(r), &grid)
        }
        _ => criterion_curve_two_weight(symbol, target, |r| proxy_eval.log_value(r), &grid)?,
    };
    let outcome = classify(&curve, opts.slope_tol, opts.tail_fraction)?;
    let mut verdict = outcome.verdict;

    // Monomial symbols on an exponential-power space mapping to itself have
    // an exact closed-form verdict; a disagreement beyond the slope
    // tolerance is a hard error rather than a silent preference.
    let same = matches!(
        (source.params_key(), target.params_key()),
        (Some(a), Some(b)) if a == b
    );
    if same {
        if let (Some((alpha, p)), Some(d)) =
            (source.exp_power_params(), monomial_symbol_degree(symbol))
        {
            if p >= 1.0 {
                let expected = degree_rule(alpha, p, d)?;
                if expected != verdict {
                    if (d as f64 - p).abs() <= opts.slope_tol {
                        warnings.push(format!(
                            "sampled slope cannot separate degree {d} from order {p} at tolerance {}; deferring to the exact degree rule",
                            opts.slope_tol
                        ));
                        verdict = expected;
                    } else {
                        return Err(Error::DegreeRuleMismatch(format!(
                            "curve classifier found {verdict:?} but the degree rule gives {expected:?} for degree {d} on alpha = {alpha}, p = {p}"
                        )));
                    }
                }
            }
        }
    }

    Ok(Classification {
        verdict,
        slope: outcome.slope,
        tail_value: outcome.tail_value,
        proxy: proxy.kind,
        form: choice.form,
        weak_compact_note: weak_compact_note(source),
        warnings,
        evidence: curve,
    })
}

/// Decide boundedness/compactness of the multiplication operator with
/// symbol `h` from the source space into the target space.
pub fn classify_multiplier(
    source: &RadialWeight,
    target: &RadialWeight,
    symbol: &TaylorPolynomial,
    opts: &ClassifyOptions,
) -> Result<Classification> {
    validate_opts(opts)?;
    ensure_axioms(source, "source")?;
    ensure_axioms(target, "target")?;

    let mut warnings = Vec::new();
    push_order_warning(source, &mut warnings);
    let proxy = choose_proxy(source, opts.r_max, &mut warnings)?;
    let proxy_eval = match &proxy.table {
        Some(t) => ProxyEval::Envelope(t),
        None => ProxyEval::Direct(source),
    };
    let grid = log_grid(opts.r_min, opts.r_max, opts.points);
    let curve = criterion_curve_mult(symbol, target, |r| proxy_eval.log_value(r), &grid);
    let outcome = classify(&curve, opts.slope_tol, opts.tail_fraction)?;

    Ok(Classification {
        verdict: outcome.verdict,
        slope: outcome.slope,
        tail_value: outcome.tail_value,
        proxy: proxy.kind,
        form: CurveForm::Mult,
        weak_compact_note: weak_compact_note(source),
        warnings,
        evidence: curve,
    })
}

fn validate_opts(opts: &ClassifyOptions) -> Result<()> {
    if !(opts.r_min > 0.0 && opts.r_max > opts.r_min && opts.r_max.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "grid [{}, {}] is not an increasing positive range",
            opts.r_min, opts.r_max
        )));
    }
    if opts.points < 16 {
        return Err(Error::InvalidParameter(format!(
            "{} grid points are too few; need at least 16",
            opts.points
        )));
    }
    if !(opts.slope_tol > 0.0 && opts.slope_tol < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "slope tolerance {} outside (0, 1)",
            opts.slope_tol
        )));
    }
    if !(opts.tail_fraction > 0.0 && opts.tail_fraction <= 1.0) {
        return Err(Error::InvalidParameter(format!(
            "tail fraction {} outside (0, 1]",
            opts.tail_fraction
        )));
    }
    Ok(())
}

/// The two norm-equivalence ratios for one function under the derivative
/// seminorm pairing: `||f'||_u / ||f||_w` and `||f||_w / (|f(0)| +
/// ||f'||_u)`, where `w` is the value weight and `u` the derivative weight
/// of the growth function.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct NormEquivalence {
    pub deriv_over_value: f64,
    pub value_over_seminorm: f64,
}

pub fn norm_equivalence_ratios(
    phi: &GrowthFunction,
    f: &TaylorPolynomial,
    r_max: f64,
    points: usize,
) -> Result<NormEquivalence> {
    if f.is_zero() {
        return Err(Error::InvalidParameter(
            "norm ratios are undefined for the zero function".into(),
        ));
    }
    let w = phi.value_weight();
    let u = phi.derivative_weight();
    let grid = norm_grid(r_max, points);
    let norm_w = weighted_sup_norm_log(f, &w, &grid)?;
    let fp = f.differentiate();
    let norm_u = if fp.is_zero() {
        f64::NEG_INFINITY
    } else {
        weighted_sup_norm_log(&fp, &u, &grid)?
    };
    let f0 = f.evaluate(num_complex::Complex64::new(0.0, 0.0)).norm();
    let seminorm_log = log_add_exp(f0.ln(), norm_u);
    Ok(NormEquivalence {
        deriv_over_value: (norm_u - norm_w).exp(),
        value_over_seminorm: (norm_w - seminorm_log).exp(),
    })
}
