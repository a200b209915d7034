//! Truncated Taylor expansions with the operator algebra used throughout:
//! differentiation, antiderivative, Cauchy products, and the Volterra
//! composition `f -> ∫_0^z f g'`. Norms against a radial weight are computed
//! through the coefficient majorant `Σ |c_n| r^n` in log domain, so a symbol
//! like `e^{r^2}` growth never overflows.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numeric::{golden_section_max, log_grid, log_sum_exp, GOLDEN_ITERS};
use crate::weight::RadialWeight;

/// Default coefficient truncation for symbols built from named series.
pub const DEFAULT_TRUNCATION: usize = 128;

/// An entire function represented by finitely many Taylor coefficients
/// `c_0..c_N` at the origin. Trailing zeros are permitted.
#[derive(Clone, Debug, PartialEq)]
pub struct TaylorPolynomial {
    coeffs: Vec<Complex64>,
}

impl TaylorPolynomial {
    pub fn from_coeffs(coeffs: Vec<Complex64>) -> Self {
        TaylorPolynomial { coeffs }
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        TaylorPolynomial {
            coeffs: coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect(),
        }
    }

    pub fn zero() -> Self {
        TaylorPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(0, Complex64::new(1.0, 0.0))
    }

    pub fn monomial(degree: usize, coefficient: Complex64) -> Self {
        let mut coeffs = vec![Complex64::new(0.0, 0.0); degree + 1];
        coeffs[degree] = coefficient;
        TaylorPolynomial { coeffs }
    }

    /// Taylor expansion of `e^{scale * z}` truncated at `truncation`.
    pub fn exp_series(scale: f64, truncation: usize) -> Self {
        let mut coeffs = Vec::with_capacity(truncation + 1);
        let mut c = Complex64::new(1.0, 0.0);
        coeffs.push(c);
        for n in 1..=truncation {
            c *= scale / n as f64;
            coeffs.push(c);
        }
        TaylorPolynomial { coeffs }
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Largest `n` with `c_n != 0`, or `None` for the zero function.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs
            .iter()
            .rposition(|c| c.re != 0.0 || c.im != 0.0)
    }

    pub fn is_zero(&self) -> bool {
        self.degree().is_none()
    }

    pub fn evaluate(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for &c in self.coeffs.iter().rev() {
            acc = acc * z + c;
        }
        acc
    }

    /// `log Σ_n |c_n| r^n`, the log of the coefficient majorant. Exact as a
    /// norm surrogate whenever all coefficients have equal phase; always an
    /// upper bound for the maximum modulus on `|z| = r`.
    pub fn log_coeff_majorant(&self, r: f64) -> f64 {
        assert!(r >= 0.0);
        // |c| via hypot keeps subnormal-scale coefficients alive where
        // squaring would underflow to zero
        if r == 0.0 {
            return self
                .coeffs
                .first()
                .map_or(f64::NEG_INFINITY, |c| c.norm().ln());
        }
        let lr = r.ln();
        let terms: Vec<f64> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| c.re != 0.0 || c.im != 0.0)
            .map(|(n, c)| c.norm().ln() + n as f64 * lr)
            .collect();
        log_sum_exp(&terms)
    }

    /// `log max_n |c_n| r^n`, the single largest term of the majorant.
    pub fn log_max_term(&self, r: f64) -> f64 {
        assert!(r >= 0.0);
        if r == 0.0 {
            return self
                .coeffs
                .first()
                .map_or(f64::NEG_INFINITY, |c| c.norm().ln());
        }
        let lr = r.ln();
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| c.re != 0.0 || c.im != 0.0)
            .map(|(n, c)| c.norm().ln() + n as f64 * lr)
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// Lower bound for the maximum modulus on `|z| = r`, sampled at `k`
    /// equispaced angles (including the positive real axis).
    pub fn max_modulus_lower(&self, r: f64, k: usize) -> f64 {
        assert!(k >= 8, "angular sampling needs at least 8 points");
        let mut best = 0.0f64;
        for j in 0..k {
            let theta = 2.0 * std::f64::consts::PI * j as f64 / k as f64;
            let z = Complex64::from_polar(r, theta);
            best = best.max(self.evaluate(z).norm());
        }
        best
    }

    pub fn differentiate(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(n, &c)| c * n as f64)
            .collect();
        TaylorPolynomial { coeffs }
    }

    /// Antiderivative vanishing at the origin.
    pub fn integrate(&self) -> Self {
        if self.coeffs.is_empty() {
            return Self::zero();
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(Complex64::new(0.0, 0.0));
        for (n, &c) in self.coeffs.iter().enumerate() {
            coeffs.push(c / (n + 1) as f64);
        }
        TaylorPolynomial { coeffs }
    }

    /// Cauchy product truncated at output degree `n_out`.
    pub fn multiply(&self, rhs: &Self, n_out: usize) -> Self {
        let (da, db) = match (self.degree(), rhs.degree()) {
            (Some(da), Some(db)) => (da, db),
            _ => return Self::zero(),
        };
        let out_deg = (da + db).min(n_out);
        let mut coeffs = vec![Complex64::new(0.0, 0.0); out_deg + 1];
        for (k, c) in coeffs.iter_mut().enumerate() {
            let lo = k.saturating_sub(db);
            for i in lo..=k.min(da) {
                *c += self.coeffs[i] * rhs.coeffs[k - i];
            }
        }
        TaylorPolynomial { coeffs }
    }

    /// Drop all coefficients above degree `n_out`.
    pub fn truncate(&self, n_out: usize) -> Self {
        let len = self.coeffs.len().min(n_out + 1);
        TaylorPolynomial {
            coeffs: self.coeffs[..len].to_vec(),
        }
    }
}

/// The Volterra composition `V_g f = ∫_0^z f(ζ) g'(ζ) dζ` truncated at
/// degree `n_out`.
pub fn volterra(g: &TaylorPolynomial, f: &TaylorPolynomial, n_out: usize) -> TaylorPolynomial {
    let gp = g.differentiate();
    f.multiply(&gp, n_out.saturating_sub(1))
        .integrate()
        .truncate(n_out)
}

/// One row of the norm diagnostic curve.
#[derive(Debug, Clone, Copy)]
pub struct NormSample {
    pub r: f64,
    pub log_majorant: f64,
    pub log_weight: f64,
    pub sum: f64,
}

/// The sampled objective `log majorant + log v` along a grid.
pub fn norm_curve(f: &TaylorPolynomial, v: &RadialWeight, grid: &[f64]) -> Vec<NormSample> {
    grid.iter()
        .map(|&r| {
            let log_majorant = f.log_coeff_majorant(r);
            let log_weight = v.log_value(r);
            NormSample {
                r,
                log_majorant,
                log_weight,
                sum: log_majorant + log_weight,
            }
        })
        .collect()
}

/// A norm grid: the origin plus log-spaced samples up to `r_max`.
pub fn norm_grid(r_max: f64, points: usize) -> Vec<f64> {
    assert!(points >= 9);
    let mut g = Vec::with_capacity(points);
    g.push(0.0);
    g.extend(log_grid(1e-3, r_max, points - 1));
    g
}

/// `log sup_r (Σ |c_n| r^n) v(r)`: the weighted norm of `f` through the
/// coefficient majorant. The grid must reach past the maximizer: if the
/// discrete peak lands on the final two grid points the sup may lie beyond
/// the grid and an error is returned. The discrete maximum is refined by
/// golden-section search in `log r`.
pub fn weighted_sup_norm_log(
    f: &TaylorPolynomial,
    v: &RadialWeight,
    grid: &[f64],
) -> Result<f64> {
    assert!(grid.len() >= 8, "norm grid too small");
    if f.is_zero() {
        return Ok(f64::NEG_INFINITY);
    }
    let objective = |r: f64| f.log_coeff_majorant(r) + v.log_value(r);
    let vals: Vec<f64> = grid.iter().map(|&r| objective(r)).collect();

    // First index attaining the maximum.
    let mut imax = 0;
    for (i, &x) in vals.iter().enumerate() {
        if x > vals[imax] {
            imax = i;
        }
    }
    if imax + 2 >= grid.len() {
        return Err(Error::DomainCoverage(format!(
            "objective for {} peaks at the grid edge r = {}; extend r_max",
            v.name(),
            grid[imax]
        )));
    }
    let best = vals[imax];

    let hi_t = grid[(imax + 1).min(grid.len() - 1)].max(1e-300).ln();
    let lo_t = if imax == 0 {
        if grid[0] > 0.0 {
            grid[0].ln()
        } else {
            hi_t - 20.0
        }
    } else if grid[imax - 1] > 0.0 {
        grid[imax - 1].ln()
    } else {
        hi_t - 20.0
    };
    let (_, refined) = golden_section_max(|t| objective(t.exp()), lo_t, hi_t, GOLDEN_ITERS);
    Ok(best.max(refined))
}
