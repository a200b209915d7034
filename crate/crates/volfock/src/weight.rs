//! Radial weights on the complex plane and their derived growth data.
//!
//! A weight here is a continuous, positive, non-increasing function `v(r)` of
//! the radius that decays faster than every power of `r`. The built-in
//! families store `psi = -log v` in closed form together with two derivatives,
//! which is what every condition check downstream consumes. Values are always
//! handled as `log v` so that nothing overflows even when `v(r) = e^{-r^2}`
//! is probed at `r = 100`.
//!
//! Families whose defining formula only makes sense for `r >= 2` (they involve
//! `log r`) are extended left of a patch radius by a constant; the patch is
//! pushed outward when the raw formula is not yet non-increasing at 2, so a
//! constructed weight always satisfies the weight axioms.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::numeric::log_grid;

/// Shared closure type for user-supplied `log v(r)` weights.
pub type LogValueFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

#[derive(Clone)]
pub enum WeightFamily {
    /// `v(r) = exp(-alpha * r^p)`, `alpha > 0`, `p > 0`.
    ExpPower { alpha: f64, p: f64 },
    /// `v(r) = exp(-alpha * r^p + beta * (log r)^q)` for large `r`.
    ExpPowerLog { alpha: f64, p: f64, beta: f64, q: f64 },
    /// `v(r) = exp(-(log r)^p)` for large `r`, `p > 1`.
    LogPower { p: f64 },
    /// Reciprocal of the growth function
    /// `r^a (log r)^b exp(c r^d + k (log r)^m)`; requires `c > 0, d > 0` or
    /// `c = 0, k > 0, m > 1`.
    HardyGrowthReciprocal {
        a: f64,
        b: f64,
        c: f64,
        d: f64,
        k: f64,
        m: f64,
    },
    /// Arbitrary `log v(r)`; no derivative data, so the condition checkers
    /// that need `v'` reject it.
    Custom { name: String, log_value: LogValueFn },
}

impl fmt::Debug for WeightFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&family_name(self))
    }
}

fn family_name(family: &WeightFamily) -> String {
    match family {
        WeightFamily::ExpPower { alpha, p } => format!("exp_power(alpha={alpha}, p={p})"),
        WeightFamily::ExpPowerLog { alpha, p, beta, q } => {
            format!("exp_power_log(alpha={alpha}, p={p}, beta={beta}, q={q})")
        }
        WeightFamily::LogPower { p } => format!("log_power(p={p})"),
        WeightFamily::HardyGrowthReciprocal { a, b, c, d, k, m } => {
            format!("hardy_growth_reciprocal(a={a}, b={b}, c={c}, d={d}, k={k}, m={m})")
        }
        WeightFamily::Custom { name, .. } => name.clone(),
    }
}

/// A validated radial weight. Construct through [`RadialWeight::new`] or the
/// family shorthands; construction fails on out-of-range parameters.
#[derive(Clone, Debug)]
pub struct RadialWeight {
    family: WeightFamily,
    patch_radius: f64,
}

/// Default left end of the formula domain for the `log r` based families.
const FORMULA_START: f64 = 2.0;

impl RadialWeight {
    pub fn new(family: WeightFamily) -> Result<Self> {
        validate(&family)?;
        let patch_radius = match &family {
            WeightFamily::ExpPower { .. } | WeightFamily::Custom { .. } => 0.0,
            _ => monotone_onset(&family)?,
        };
        Ok(RadialWeight {
            family,
            patch_radius,
        })
    }

    pub fn exp_power(alpha: f64, p: f64) -> Result<Self> {
        Self::new(WeightFamily::ExpPower { alpha, p })
    }

    pub fn exp_power_log(alpha: f64, p: f64, beta: f64, q: f64) -> Result<Self> {
        Self::new(WeightFamily::ExpPowerLog { alpha, p, beta, q })
    }

    pub fn log_power(p: f64) -> Result<Self> {
        Self::new(WeightFamily::LogPower { p })
    }

    pub fn hardy_reciprocal(a: f64, b: f64, c: f64, d: f64, k: f64, m: f64) -> Result<Self> {
        Self::new(WeightFamily::HardyGrowthReciprocal { a, b, c, d, k, m })
    }

    /// Weight given by an arbitrary `log v(r)` closure. The caller is
    /// responsible for it actually satisfying the weight axioms (the axioms
    /// check will tell).
    pub fn custom(name: impl Into<String>, log_value: LogValueFn) -> Self {
        RadialWeight {
            family: WeightFamily::Custom {
                name: name.into(),
                log_value,
            },
            patch_radius: 0.0,
        }
    }

    pub fn family(&self) -> &WeightFamily {
        &self.family
    }

    pub fn name(&self) -> String {
        family_name(&self.family)
    }

    /// Left of this radius the weight is the constant `v(patch_radius)`.
    pub fn patch_radius(&self) -> f64 {
        self.patch_radius
    }

    /// `(alpha, p)` when this is the pure exponential-power family.
    pub fn exp_power_params(&self) -> Option<(f64, f64)> {
        match self.family {
            WeightFamily::ExpPower { alpha, p } => Some((alpha, p)),
            _ => None,
        }
    }

    pub fn is_custom(&self) -> bool {
        matches!(self.family, WeightFamily::Custom { .. })
    }

    /// Family tag plus raw parameters, used to decide whether two weights
    /// are the same space; custom weights are never considered equal.
    pub fn params_key(&self) -> Option<(&'static str, Vec<f64>)> {
        match self.family {
            WeightFamily::ExpPower { alpha, p } => Some(("exp_power", vec![alpha, p])),
            WeightFamily::ExpPowerLog { alpha, p, beta, q } => {
                Some(("exp_power_log", vec![alpha, p, beta, q]))
            }
            WeightFamily::LogPower { p } => Some(("log_power", vec![p])),
            WeightFamily::HardyGrowthReciprocal { a, b, c, d, k, m } => {
                Some(("hardy_growth_reciprocal", vec![a, b, c, d, k, m]))
            }
            WeightFamily::Custom { .. } => None,
        }
    }

    /// `log v(r)`.
    pub fn log_value(&self, r: f64) -> f64 {
        assert!(r >= 0.0, "radius must be non-negative");
        match &self.family {
            WeightFamily::Custom { log_value, .. } => log_value(r),
            _ => -self.psi_raw(r.max(self.patch_radius)),
        }
    }

    /// `psi(r) = -log v(r)` on `[patch_radius, inf)`; `None` for custom weights.
    pub fn psi(&self, r: f64) -> Option<f64> {
        if self.is_custom() {
            return None;
        }
        Some(self.psi_raw(r.max(self.patch_radius)))
    }

    pub fn psi_prime(&self, r: f64) -> Option<f64> {
        if self.is_custom() {
            return None;
        }
        debug_assert!(r >= self.patch_radius, "psi' sampled left of the patch");
        Some(self.psi_prime_raw(r))
    }

    pub fn psi_second(&self, r: f64) -> Option<f64> {
        if self.is_custom() {
            return None;
        }
        debug_assert!(r >= self.patch_radius, "psi'' sampled left of the patch");
        Some(self.psi_second_raw(r))
    }

    /// `log |v'(r)| = log psi'(r) - psi(r)` for the closed-form families.
    pub fn log_abs_derivative(&self, r: f64) -> Option<f64> {
        let psi = self.psi(r)?;
        let dp = self.psi_prime(r)?;
        Some(dp.ln() - psi)
    }

    /// Closed-form exponent data for the essentialness check.
    pub fn exponent(&self) -> Option<ExponentFunction> {
        if self.is_custom() {
            return None;
        }
        let domain_start = match self.family {
            WeightFamily::ExpPower { .. } => 0.0,
            _ => self.patch_radius,
        };
        Some(ExponentFunction {
            weight: self.clone(),
            domain_start,
        })
    }

    fn psi_raw(&self, r: f64) -> f64 {
        match &self.family {
            WeightFamily::ExpPower { alpha, p } => alpha * r.powf(*p),
            WeightFamily::ExpPowerLog { alpha, p, beta, q } => {
                alpha * r.powf(*p) - beta * r.ln().powf(*q)
            }
            WeightFamily::LogPower { p } => r.ln().powf(*p),
            WeightFamily::HardyGrowthReciprocal { a, b, c, d, k, m } => {
                let l = r.ln();
                a * l + b * l.ln() + c * r.powf(*d) + k * l.powf(*m)
            }
            WeightFamily::Custom { .. } => unreachable!("custom weights carry no exponent"),
        }
    }

    fn psi_prime_raw(&self, r: f64) -> f64 {
        match &self.family {
            WeightFamily::ExpPower { alpha, p } => alpha * p * r.powf(p - 1.0),
            WeightFamily::ExpPowerLog { alpha, p, beta, q } => {
                alpha * p * r.powf(p - 1.0) - beta * q * r.ln().powf(q - 1.0) / r
            }
            WeightFamily::LogPower { p } => p * r.ln().powf(p - 1.0) / r,
            WeightFamily::HardyGrowthReciprocal { a, b, c, d, k, m } => {
                let l = r.ln();
                a / r + b / (r * l) + c * d * r.powf(d - 1.0) + k * m * l.powf(m - 1.0) / r
            }
            WeightFamily::Custom { .. } => unreachable!(),
        }
    }

    fn psi_second_raw(&self, r: f64) -> f64 {
        match &self.family {
            WeightFamily::ExpPower { alpha, p } => alpha * p * (p - 1.0) * r.powf(p - 2.0),
            WeightFamily::ExpPowerLog { alpha, p, beta, q } => {
                let l = r.ln();
                alpha * p * (p - 1.0) * r.powf(p - 2.0)
                    - beta * q * ((q - 1.0) * l.powf(q - 2.0) - l.powf(q - 1.0)) / (r * r)
            }
            WeightFamily::LogPower { p } => {
                let l = r.ln();
                p * ((p - 1.0) * l.powf(p - 2.0) - l.powf(p - 1.0)) / (r * r)
            }
            WeightFamily::HardyGrowthReciprocal { a, b, c, d, k, m } => {
                let l = r.ln();
                -a / (r * r) - b * (l + 1.0) / (r * r * l * l)
                    + c * d * (d - 1.0) * r.powf(d - 2.0)
                    + k * m * ((m - 1.0) * l.powf(m - 2.0) - l.powf(m - 1.0)) / (r * r)
            }
            WeightFamily::Custom { .. } => unreachable!(),
        }
    }
}

fn validate(family: &WeightFamily) -> Result<()> {
    let bad = |msg: String| Err(Error::InvalidParameter(msg));
    let finite = |x: f64| x.is_finite();
    match family {
        WeightFamily::ExpPower { alpha, p } => {
            if !(finite(*alpha) && *alpha > 0.0) {
                return bad(format!("exp_power needs alpha > 0, got alpha = {alpha}"));
            }
            if !(finite(*p) && *p > 0.0) {
                return bad(format!("exp_power needs p > 0, got p = {p}"));
            }
        }
        WeightFamily::ExpPowerLog { alpha, p, beta, q } => {
            if !(finite(*alpha) && *alpha > 0.0) {
                return bad(format!("exp_power_log needs alpha > 0, got alpha = {alpha}"));
            }
            if !(finite(*p) && *p > 0.0) {
                return bad(format!("exp_power_log needs p > 0, got p = {p}"));
            }
            if !finite(*beta) {
                return bad(format!("exp_power_log needs finite beta, got beta = {beta}"));
            }
            if !(finite(*q) && *q > 0.0) {
                return bad(format!("exp_power_log needs q > 0, got q = {q}"));
            }
        }
        WeightFamily::LogPower { p } => {
            if !(finite(*p) && *p > 1.0) {
                return bad(format!("log_power needs p > 1, got p = {p}"));
            }
        }
        WeightFamily::HardyGrowthReciprocal { a, b, c, d, k, m } => {
            if ![a, b, c, d, k, m].iter().all(|x| x.is_finite()) {
                return bad("hardy_growth_reciprocal needs finite parameters".into());
            }
            let exp_branch = *c > 0.0 && *d > 0.0;
            let log_branch = *c == 0.0 && *k > 0.0 && *m > 1.0;
            if !exp_branch && !log_branch {
                return bad(format!(
                    "hardy_growth_reciprocal needs c > 0, d > 0 or c = 0, k > 0, m > 1 \
                     (got c = {c}, d = {d}, k = {k}, m = {m})"
                ));
            }
        }
        WeightFamily::Custom { .. } => {}
    }
    Ok(())
}

/// Smallest sampled radius beyond which the raw formula is non-increasing.
/// The families handled here all become monotone eventually; parameters for
/// which that takes longer than `r = 1e6` are rejected.
fn monotone_onset(family: &WeightFamily) -> Result<f64> {
    let probe = RadialWeight {
        family: family.clone(),
        patch_radius: FORMULA_START,
    };
    let grid = log_grid(FORMULA_START, 1e6, 600);
    let dps: Vec<f64> = grid.iter().map(|&r| probe.psi_prime_raw(r)).collect();
    let mut onset = None;
    for i in (0..grid.len()).rev() {
        if dps[i] >= -1e-12 {
            onset = Some(i);
        } else {
            break;
        }
    }
    match onset {
        Some(0) => Ok(FORMULA_START),
        Some(i) => Ok(grid[i]),
        None => Err(Error::InvalidParameter(format!(
            "{} is not eventually non-increasing below r = 1e6",
            family_name(family)
        ))),
    }
}

/// `psi = -log v` of a closed-form weight, packaged for the essentialness
/// check: the value, two derivatives and the left end of the formula domain.
#[derive(Clone, Debug)]
pub struct ExponentFunction {
    weight: RadialWeight,
    domain_start: f64,
}

impl ExponentFunction {
    pub fn psi(&self, r: f64) -> f64 {
        self.weight.psi(r).expect("closed-form by construction")
    }

    pub fn psi_prime(&self, r: f64) -> f64 {
        self.weight
            .psi_prime(r)
            .expect("closed-form by construction")
    }

    pub fn psi_second(&self, r: f64) -> f64 {
        self.weight
            .psi_second(r)
            .expect("closed-form by construction")
    }

    pub fn domain_start(&self) -> f64 {
        self.domain_start
    }

    pub fn weight_name(&self) -> String {
        self.weight.name()
    }
}

/// The growth function `phi = 1/v` of a closed-form weight, exposed through
/// its logarithm and derivative combinations so that nothing overflows.
///
/// `r_phi` is the anchor radius: the first point of a fixed coarse grid
/// (powers of two from `max(1, patch)`) where `phi' >= 1` holds and stays
/// non-decreasing on the rest of the coarse grid.
#[derive(Clone, Debug)]
pub struct GrowthFunction {
    weight: RadialWeight,
    r_phi: f64,
}

/// Derive the growth data of a closed-form weight. Custom weights are
/// rejected because everything here needs `psi'` and `psi''`.
pub fn growth_from_weight(v: &RadialWeight) -> Result<GrowthFunction> {
    if v.is_custom() {
        return Err(Error::UnsupportedFamily(v.name()));
    }
    let start = v.patch_radius().max(1.0);
    let mut coarse = Vec::new();
    let mut c = 1.0f64;
    while c < start {
        c *= 2.0;
    }
    while c <= 4e13 {
        coarse.push(c);
        c *= 2.0;
    }
    let probe = GrowthFunction {
        weight: v.clone(),
        r_phi: start,
    };
    let pvals: Vec<f64> = coarse.iter().map(|&r| probe.phi_prime_log(r)).collect();
    // Smallest index from which log phi' is non-decreasing on the coarse grid.
    let mut monotone_from = 0;
    for i in 1..pvals.len() {
        if pvals[i] < pvals[i - 1] - 1e-12 {
            monotone_from = i;
        }
    }
    let mut r_phi = None;
    for i in monotone_from..coarse.len() {
        if pvals[i] >= 0.0 {
            r_phi = Some(coarse[i]);
            break;
        }
    }
    let r_phi = r_phi.ok_or_else(|| {
        Error::InvalidParameter(format!(
            "phi' of {} never reaches 1 on the coarse anchor grid",
            v.name()
        ))
    })?;
    Ok(GrowthFunction {
        weight: v.clone(),
        r_phi,
    })
}

impl GrowthFunction {
    /// `log phi(r) = psi(r)`.
    pub fn log_phi(&self, r: f64) -> f64 {
        -self.weight.log_value(r)
    }

    /// `log phi'(r) = log psi'(r) + psi(r)`, valid for `r >= patch_radius`.
    pub fn phi_prime_log(&self, r: f64) -> f64 {
        let psi = self.weight.psi(r).expect("closed-form by construction");
        let dp = self
            .weight
            .psi_prime(r)
            .expect("closed-form by construction");
        dp.ln() + psi
    }

    /// `phi''(r)/phi'(r) = psi'(r) + psi''(r)/psi'(r)` as a direct formula.
    pub fn phi_second_over_prime(&self, r: f64) -> f64 {
        let dp = self
            .weight
            .psi_prime(r)
            .expect("closed-form by construction");
        let ddp = self
            .weight
            .psi_second(r)
            .expect("closed-form by construction");
        dp + ddp / dp
    }

    /// The bounded-curvature ratio `phi''(r) phi(r) / phi'(r)^2`. It
    /// collapses to `1 + psi''(r)/psi'(r)^2`, and is computed in that form
    /// so the large `psi` terms of the factors never meet in a subtraction.
    pub fn curvature_ratio(&self, r: f64) -> f64 {
        let dp = self
            .weight
            .psi_prime(r)
            .expect("closed-form by construction");
        let ddp = self
            .weight
            .psi_second(r)
            .expect("closed-form by construction");
        1.0 + ddp / dp / dp
    }

    pub fn r_phi(&self) -> f64 {
        self.r_phi
    }

    /// The weight this growth function came from (`1/phi`).
    pub fn value_weight(&self) -> RadialWeight {
        self.weight.clone()
    }

    /// The companion weight `u(r) = 1/max(phi'(r_phi), phi'(r))`, constant on
    /// `[0, r_phi]`. Derivatives of functions bounded by `phi` live in the
    /// space weighted by `u`.
    pub fn derivative_weight(&self) -> RadialWeight {
        let w = self.weight.clone();
        let r_phi = self.r_phi;
        let name = format!("derivative_reciprocal({})", w.name());
        RadialWeight::custom(
            name,
            Arc::new(move |r: f64| {
                let rr = r.max(r_phi);
                let psi = w.psi(rr).expect("closed-form by construction");
                let dp = w.psi_prime(rr).expect("closed-form by construction");
                -(dp.ln() + psi)
            }),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parameter_validation_rejects_out_of_range() {
        assert!(RadialWeight::exp_power(-1.0, 2.0).is_err());
        assert!(RadialWeight::exp_power(1.0, 0.0).is_err());
        assert!(RadialWeight::log_power(1.0).is_err());
        assert!(RadialWeight::exp_power_log(1.0, 2.0, 1.0, 0.0).is_err());
        // neither branch of the Hardy constraint
        assert!(RadialWeight::hardy_reciprocal(1.0, 0.0, 0.0, 1.0, 0.0, 2.0).is_err());
        assert!(RadialWeight::hardy_reciprocal(1.0, 0.0, -1.0, 1.0, 1.0, 2.0).is_err());
    }

    #[test]
    fn gaussian_log_values() {
        let v = RadialWeight::exp_power(1.0, 2.0).unwrap();
        assert_eq!(v.log_value(0.0), 0.0);
        assert!((v.log_value(2.0) + 4.0).abs() < 1e-15);
        // r = 100 stays finite in log domain
        assert!((v.log_value(100.0) + 10_000.0).abs() < 1e-9);
    }

    #[test]
    fn patched_families_are_constant_left_of_the_patch() {
        let v = RadialWeight::log_power(2.0).unwrap();
        assert!((v.patch_radius() - 2.0).abs() < 1e-12);
        let expect = -(2.0f64.ln().powi(2));
        assert!((v.log_value(0.0) - expect).abs() < 1e-15);
        assert!((v.log_value(1.9) - expect).abs() < 1e-15);
        assert!(v.log_value(2.1) < expect);
    }

    #[test]
    fn strongly_increasing_log_term_pushes_the_patch_out() {
        // v = r^{10} e^{-r} increases up to r = 10; the patch must absorb that.
        let v = RadialWeight::exp_power_log(1.0, 1.0, 10.0, 1.0).unwrap();
        assert!(v.patch_radius() >= 10.0 * (1.0 - 1e-6));
        let grid = log_grid(1e-2, 1e3, 400);
        let logs: Vec<f64> = grid.iter().map(|&r| v.log_value(r)).collect();
        assert!(logs.windows(2).all(|w| w[1] <= w[0] + 1e-12));
    }

    // Central finite differences in t = log r: d psi/dt = r psi'(r) and
    // d^2 psi/dt^2 = r psi'(r) + r^2 psi''(r).
    fn check_psi_derivatives(v: &RadialWeight, radii: &[f64]) {
        let h = 1e-6;
        for &r in radii {
            let t = r.ln();
            let f = |t: f64| v.psi(t.exp()).unwrap();
            let d1 = (f(t + h) - f(t - h)) / (2.0 * h);
            let d2 = (f(t + h) - 2.0 * f(t) + f(t - h)) / (h * h);
            let a1 = r * v.psi_prime(r).unwrap();
            let a2 = a1 + r * r * v.psi_second(r).unwrap();
            assert!(
                (d1 - a1).abs() <= 1e-5 * a1.abs().max(1.0),
                "{}: psi' mismatch at r={r}: {d1} vs {a1}",
                v.name()
            );
            assert!(
                (d2 - a2).abs() <= 2e-4 * a2.abs().max(1.0),
                "{}: psi'' mismatch at r={r}: {d2} vs {a2}",
                v.name()
            );
        }
    }

    #[test]
    fn analytic_derivatives_match_finite_differences() {
        let inner = [0.7, 1.3, 4.9];
        let outer = [2.7, 3.3, 6.9]; // right of the patch for the log families
        check_psi_derivatives(&RadialWeight::exp_power(1.0, 2.0).unwrap(), &inner);
        check_psi_derivatives(&RadialWeight::exp_power(0.5, 1.0).unwrap(), &inner);
        check_psi_derivatives(&RadialWeight::exp_power(2.0, 3.0).unwrap(), &inner);
        check_psi_derivatives(&RadialWeight::exp_power(1.0, 0.5).unwrap(), &inner);
        check_psi_derivatives(
            &RadialWeight::exp_power_log(1.0, 2.0, 1.0, 2.0).unwrap(),
            &outer,
        );
        check_psi_derivatives(
            &RadialWeight::exp_power_log(0.5, 1.5, -2.0, 1.5).unwrap(),
            &outer,
        );
        check_psi_derivatives(&RadialWeight::log_power(2.0).unwrap(), &outer);
        check_psi_derivatives(&RadialWeight::log_power(3.0).unwrap(), &outer);
        check_psi_derivatives(
            &RadialWeight::hardy_reciprocal(1.0, 1.0, 1.0, 2.0, 0.5, 2.0).unwrap(),
            &outer,
        );
        check_psi_derivatives(
            &RadialWeight::hardy_reciprocal(0.0, -1.0, 0.0, 1.0, 1.0, 2.0).unwrap(),
            &outer,
        );
    }

    #[test]
    fn phi_prime_matches_finite_difference_of_phi() {
        // phi = e^{r^2} is still representable at r = 5, so compare directly.
        let g = growth_from_weight(&RadialWeight::exp_power(1.0, 2.0).unwrap()).unwrap();
        for r in [1.0, 2.0, 5.0] {
            let h = 1e-6 * r;
            let d = ((g.log_phi(r + h)).exp() - (g.log_phi(r - h)).exp()) / (2.0 * h);
            let a = g.phi_prime_log(r).exp();
            assert!((d - a).abs() <= 1e-6 * a, "r={r}: {d} vs {a}");
        }
    }

    #[test]
    fn anchor_radius_per_family() {
        let g = growth_from_weight(&RadialWeight::exp_power(1.0, 2.0).unwrap()).unwrap();
        assert_eq!(g.r_phi(), 1.0); // phi'(1) = 2e >= 1 at the first coarse point
        let g = growth_from_weight(&RadialWeight::exp_power(0.5, 1.0).unwrap()).unwrap();
        assert_eq!(g.r_phi(), 2.0); // phi'(1) = e^{0.5}/2 < 1 < phi'(2)
        let g = growth_from_weight(&RadialWeight::log_power(2.0).unwrap()).unwrap();
        assert_eq!(g.r_phi(), 2.0);
    }

    #[test]
    fn growth_from_custom_weight_is_rejected() {
        let v = RadialWeight::custom("reciprocal", Arc::new(|r: f64| -(1.0 + r).ln()));
        assert!(matches!(
            growth_from_weight(&v),
            Err(Error::UnsupportedFamily(_))
        ));
    }

    #[test]
    fn derivative_weight_of_the_gaussian_growth() {
        let g = growth_from_weight(&RadialWeight::exp_power(1.0, 2.0).unwrap()).unwrap();
        let u = g.derivative_weight();
        // constant 1/(2e) up to r_phi = 1, then 1/(2 r e^{r^2})
        let lc = -(2.0 * std::f64::consts::E).ln();
        assert!((u.log_value(0.0) - lc).abs() < 1e-12);
        assert!((u.log_value(0.5) - lc).abs() < 1e-12);
        assert!((u.log_value(1.0) - lc).abs() < 1e-12);
        let l2 = -((4.0f64).ln() + 4.0);
        assert!((u.log_value(2.0) - l2).abs() < 1e-12);
        // non-increasing on a grid
        let grid = log_grid(1e-2, 50.0, 300);
        let vals: Vec<f64> = grid.iter().map(|&r| u.log_value(r)).collect();
        assert!(vals.windows(2).all(|w| w[1] <= w[0] + 1e-12));
    }

    #[test]
    fn curvature_ratio_matches_closed_form_for_exp_power() {
        for &(alpha, p) in &[(0.5, 1.0), (1.0, 2.0), (2.0, 3.0), (1.0, 1.5)] {
            let g = growth_from_weight(&RadialWeight::exp_power(alpha, p).unwrap()).unwrap();
            for &r in &log_grid(g.r_phi(), 100.0, 50) {
                let expect = 1.0 + (p - 1.0) / (alpha * p * r.powf(p));
                let got = g.curvature_ratio(r);
                assert!(
                    (got - expect).abs() <= 1e-12 * expect.abs().max(1.0),
                    "alpha={alpha} p={p} r={r}: {got} vs {expect}"
                );
            }
        }
    }
}
