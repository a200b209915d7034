//! Norms of the monomials `z^n` against a radial weight, and the discrete
//! envelope weight `v_M(r) = min_n ||z^n|| r^{-n}` they induce. The envelope
//! sandwiches the original weight from above and stands in for it when the
//! structural sub-checks on the weight fail.

use crate::error::{Error, Result};
use crate::numeric::{golden_section_max, GOLDEN_ITERS};
use crate::weight::RadialWeight;

const BRACKET_CAP: f64 = 1e8;
const SCAN_POINTS: usize = 600;

/// `(log ||z^n||, maximizer)` for the weighted sup norm of a monomial:
/// the peak of `n log r + log v(r)` over `r > 0`.
pub fn monomial_norm_log(v: &RadialWeight, n: usize) -> Result<(f64, f64)> {
    if n == 0 {
        // v is non-increasing, so the constant function peaks at the origin
        return Ok((v.log_value(0.0), 0.0));
    }
    let x = n as f64;
    let objective = |t: f64| x * t + v.log_value(t.exp());

    // Walk outward until the objective has clearly rolled over.
    let mut hi = match v.exp_power_params() {
        Some((alpha, p)) => 8.0 * (x / (alpha * p)).powf(1.0 / p),
        None => 1.0,
    };
    loop {
        if objective((2.0 * hi).ln()) < objective(hi.ln()) {
            break;
        }
        hi *= 2.0;
        if hi > BRACKET_CAP {
            return Err(Error::DomainCoverage(format!(
                "no maximizer for the degree-{n} monomial under {} below r = {BRACKET_CAP:e}",
                v.name()
            )));
        }
    }
    let t_lo = 1e-9f64.ln();
    let t_hi = (2.0 * hi).ln();

    // Coarse scan, then golden-section refinement around the discrete peak.
    let mut best_i = 0;
    let mut best = f64::NEG_INFINITY;
    let step = (t_hi - t_lo) / (SCAN_POINTS - 1) as f64;
    for i in 0..SCAN_POINTS {
        let val = objective(t_lo + i as f64 * step);
        if val > best {
            best = val;
            best_i = i;
        }
    }
    let lo = t_lo + step * best_i.saturating_sub(1) as f64;
    let hi = t_lo + step * (best_i + 1).min(SCAN_POINTS - 1) as f64;
    let (t_star, refined) = golden_section_max(objective, lo, hi, GOLDEN_ITERS);
    Ok((refined.max(best), t_star.exp()))
}

/// Norms and maximizers for `z^0 .. z^N` under a fixed weight.
#[derive(Debug, Clone)]
pub struct MonomialNormTable {
    log_norms: Vec<f64>,
    maximizers: Vec<f64>,
}

impl MonomialNormTable {
    /// Build the table up to degree `size` inclusive.
    pub fn build(v: &RadialWeight, size: usize) -> Result<Self> {
        let mut log_norms = Vec::with_capacity(size + 1);
        let mut maximizers = Vec::with_capacity(size + 1);
        for n in 0..=size {
            match monomial_norm_log(v, n) {
                Ok((norm, arg)) => {
                    log_norms.push(norm);
                    maximizers.push(arg);
                }
                // A degree whose maximizer escapes the search bracket can
                // never be the binding term at any radius inside it, so the
                // truncated table gives the same envelope there.
                Err(Error::DomainCoverage(_)) if n >= 1 => break,
                Err(e) => return Err(e),
            }
        }
        Ok(MonomialNormTable {
            log_norms,
            maximizers,
        })
    }

    /// Highest degree covered.
    pub fn max_degree(&self) -> usize {
        self.log_norms.len() - 1
    }

    pub fn log_norm(&self, n: usize) -> f64 {
        self.log_norms[n]
    }

    pub fn maximizer(&self, n: usize) -> f64 {
        self.maximizers[n]
    }

    /// `log v_M(r) = min_n (log ||z^n|| - n log r)`: the envelope weight.
    pub fn envelope_log(&self, r: f64) -> f64 {
        assert!(r >= 0.0);
        if r == 0.0 {
            return self.log_norms[0];
        }
        let lr = r.ln();
        self.log_norms
            .iter()
            .enumerate()
            .map(|(n, &ln_norm)| ln_norm - n as f64 * lr)
            .fold(f64::INFINITY, f64::min)
    }

    /// A table size that keeps the envelope tight out to `r_max`. The
    /// degree binding at radius `r` is about `r psi'(r)` (the monomial whose
    /// maximizer sits at `r`), so doubling that covers the grid with margin.
    /// Other families get a flat default and rely on [`Self::build`]
    /// trimming degrees that peak past the search bracket.
    pub fn suggested_size(v: &RadialWeight, r_max: f64) -> usize {
        if let Some((alpha, p)) = v.exp_power_params() {
            let n = (4.0 * alpha * r_max.powf(p)).ceil() as usize;
            n.clamp(16, 4000)
        } else {
            400
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn exp_power_norm(alpha: f64, p: f64, n: usize) -> (f64, f64) {
        let x = n as f64;
        (
            (x / p) * ((x / (alpha * p)).ln() - 1.0),
            (x / (alpha * p)).powf(1.0 / p),
        )
    }

    #[test]
    fn gaussian_monomial_norms_match_the_closed_form() {
        let v = RadialWeight::exp_power(1.0, 2.0).unwrap();
        let (n2, r2) = monomial_norm_log(&v, 2).unwrap();
        assert!((n2 + 1.0).abs() < 1e-10, "norm {n2}");
        assert!((r2 - 1.0).abs() < 1e-6, "maximizer {r2}");
        let (n4, r4) = monomial_norm_log(&v, 4).unwrap();
        assert!((n4 - 2.0 * (2.0f64.ln() - 1.0)).abs() < 1e-10);
        assert!((r4 - 2.0f64.sqrt()).abs() < 1e-6);
    }

    #[test]
    fn closed_form_holds_across_degrees_and_parameters() {
        for (alpha, p) in [(1.0, 2.0), (0.5, 1.0), (2.0, 3.0), (1.0, 0.5)] {
            let v = RadialWeight::exp_power(alpha, p).unwrap();
            for n in 1..=60 {
                let (got, arg) = monomial_norm_log(&v, n).unwrap();
                let (expect, arg_expect) = exp_power_norm(alpha, p, n);
                assert!(
                    (got - expect).abs() < 1e-9 * expect.abs().max(1.0),
                    "alpha {alpha} p {p} n {n}: {got} vs {expect}"
                );
                assert!((arg - arg_expect).abs() < 1e-5 * arg_expect.max(1.0));
            }
        }
    }

    #[test]
    fn degree_zero_peaks_at_the_origin() {
        let v = RadialWeight::exp_power(2.0, 1.0).unwrap();
        let (norm, arg) = monomial_norm_log(&v, 0).unwrap();
        assert_eq!(norm, 0.0);
        assert_eq!(arg, 0.0);
    }

    #[test]
    fn log_power_norms_past_the_flat_patch() {
        // sup r^n e^{-(log r)^2} = e^{n^2/4} at r = e^{n/2}, valid once the
        // maximizer clears the constant patch below r = 2.
        let v = RadialWeight::log_power(2.0).unwrap();
        for n in [3usize, 4, 8] {
            let (norm, arg) = monomial_norm_log(&v, n).unwrap();
            let x = n as f64;
            assert!((norm - x * x / 4.0).abs() < 1e-8, "n {n}: {norm}");
            assert!((arg - (x / 2.0).exp()).abs() < 1e-5 * arg, "n {n}: {arg}");
        }
    }

    #[test]
    fn envelope_touches_the_gaussian_at_one() {
        let v = RadialWeight::exp_power(1.0, 2.0).unwrap();
        let table = MonomialNormTable::build(&v, 100).unwrap();
        // the degree-2 norm e^{-1} is binding at r = 1, closing the gap
        assert!((table.envelope_log(1.0) + 1.0).abs() < 1e-9);
        assert!((table.envelope_log(1.0) - v.log_value(1.0)).abs() < 1e-9);
    }

    #[test]
    fn envelope_dominates_the_weight_and_decreases() {
        let weights = [
            RadialWeight::exp_power(1.0, 2.0).unwrap(),
            RadialWeight::exp_power(0.5, 1.0).unwrap(),
            RadialWeight::log_power(2.0).unwrap(),
        ];
        for v in &weights {
            let size = MonomialNormTable::suggested_size(v, 10.0);
            let table = MonomialNormTable::build(v, size).unwrap();
            let mut prev = f64::INFINITY;
            for i in 0..=100 {
                let r = 10.0 * i as f64 / 100.0;
                let env = table.envelope_log(r);
                assert!(
                    env >= v.log_value(r) - 1e-9,
                    "{} at r = {r}: envelope {env} below weight",
                    v.name()
                );
                assert!(env <= prev + 1e-12, "{} envelope rising at r = {r}", v.name());
                prev = env;
            }
        }
    }

    #[test]
    fn suggested_size_tracks_the_growth_rate() {
        let gauss = RadialWeight::exp_power(1.0, 2.0).unwrap();
        assert_eq!(MonomialNormTable::suggested_size(&gauss, 10.0), 400);
        // non-polynomial-exponent families take the flat default
        let slow = RadialWeight::log_power(2.0).unwrap();
        assert_eq!(MonomialNormTable::suggested_size(&slow, 10.0), 400);
        let hot = RadialWeight::exp_power(2.0, 3.0).unwrap();
        assert_eq!(MonomialNormTable::suggested_size(&hot, 50.0), 4000);
    }

    #[test]
    fn runaway_maximizer_reports_missing_coverage() {
        // the degree-60 monomial under (log r)^2 peaks near e^30, far past
        // the bracket cap
        let v = RadialWeight::log_power(2.0).unwrap();
        let err = monomial_norm_log(&v, 60);
        assert!(matches!(err, Err(crate::error::Error::DomainCoverage(_))));
    }
}
