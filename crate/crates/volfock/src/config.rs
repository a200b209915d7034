//! JSON run configuration: weight family specs, symbol specs, grid and
//! tolerance blocks, with defaults matching the library conventions and
//! strict rejection of unknown fields.

use std::fs;
use std::path::{Path, PathBuf};

use num_complex::Complex64;
use serde::Deserialize;

use crate::classify::{
    ClassifyOptions, DEFAULT_DELTA, DEFAULT_POINTS, DEFAULT_R_MAX, DEFAULT_R_MIN,
    DEFAULT_SLOPE_TOL, DEFAULT_TAIL_FRACTION,
};
use crate::error::{Error, Result};
use crate::taylor::{TaylorPolynomial, DEFAULT_TRUNCATION};
use crate::weight::RadialWeight;

/// A weight family with parameters, as written in config files.
#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case", deny_unknown_fields)]
pub enum WeightSpec {
    ExpPower {
        alpha: f64,
        p: f64,
    },
    ExpPowerLog {
        alpha: f64,
        p: f64,
        beta: f64,
        q: f64,
    },
    LogPower {
        p: f64,
    },
    HardyGrowthReciprocal {
        a: f64,
        b: f64,
        c: f64,
        d: f64,
        k: f64,
        m: f64,
    },
}

impl WeightSpec {
    pub fn build(&self) -> Result<RadialWeight> {
        match *self {
            WeightSpec::ExpPower { alpha, p } => RadialWeight::exp_power(alpha, p),
            WeightSpec::ExpPowerLog { alpha, p, beta, q } => {
                RadialWeight::exp_power_log(alpha, p, beta, q)
            }
            WeightSpec::LogPower { p } => RadialWeight::log_power(p),
            WeightSpec::HardyGrowthReciprocal { a, b, c, d, k, m } => {
                RadialWeight::hardy_reciprocal(a, b, c, d, k, m)
            }
        }
    }
}

fn default_scale() -> f64 {
    1.0
}

fn default_truncation() -> usize {
    DEFAULT_TRUNCATION
}

/// The operator symbol: either explicit complex Taylor coefficients or a
/// named series (currently `exp`, meaning `e^{scale z}` truncated).
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum SymbolSpec {
    Coeffs {
        coeffs: Vec<[f64; 2]>,
    },
    Named {
        named: String,
        #[serde(default = "default_scale")]
        scale: f64,
        #[serde(default = "default_truncation")]
        truncation: usize,
    },
}

impl SymbolSpec {
    pub fn build(&self) -> Result<TaylorPolynomial> {
        match self {
            SymbolSpec::Coeffs { coeffs } => {
                for (i, c) in coeffs.iter().enumerate() {
                    if !(c[0].is_finite() && c[1].is_finite()) {
                        return Err(Error::Config(format!(
                            "symbol coefficient {i} is not finite"
                        )));
                    }
                }
                Ok(TaylorPolynomial::from_coeffs(
                    coeffs.iter().map(|c| Complex64::new(c[0], c[1])).collect(),
                ))
            }
            SymbolSpec::Named {
                named,
                scale,
                truncation,
            } => {
                if named != "exp" {
                    return Err(Error::Config(format!(
                        "unknown named symbol {named:?}; available: \"exp\""
                    )));
                }
                if !scale.is_finite() {
                    return Err(Error::Config(format!("symbol scale {scale} is not finite")));
                }
                if *truncation == 0 {
                    return Err(Error::Config("symbol truncation must be positive".into()));
                }
                Ok(TaylorPolynomial::exp_series(*scale, *truncation))
            }
        }
    }
}

fn default_r_min() -> f64 {
    DEFAULT_R_MIN
}

fn default_r_max() -> f64 {
    DEFAULT_R_MAX
}

fn default_points() -> usize {
    DEFAULT_POINTS
}

/// Sampling grid for the criterion curve.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    #[serde(default = "default_r_min")]
    pub r_min: f64,
    #[serde(default = "default_r_max")]
    pub r_max: f64,
    #[serde(default = "default_points")]
    pub points: usize,
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec {
            r_min: DEFAULT_R_MIN,
            r_max: DEFAULT_R_MAX,
            points: DEFAULT_POINTS,
        }
    }
}

fn default_slope_tol() -> f64 {
    DEFAULT_SLOPE_TOL
}

fn default_tail_fraction() -> f64 {
    DEFAULT_TAIL_FRACTION
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Tolerances {
    #[serde(default = "default_slope_tol")]
    pub slope_tol: f64,
    #[serde(default = "default_tail_fraction")]
    pub tail_fraction: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            slope_tol: DEFAULT_SLOPE_TOL,
            tail_fraction: DEFAULT_TAIL_FRACTION,
        }
    }
}

fn default_output_dir() -> PathBuf {
    PathBuf::from("out")
}

fn default_seed() -> u64 {
    42
}

/// A full run configuration. The target weight defaults to the source
/// weight; the symbol is required only for classification runs.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub source_weight: WeightSpec,
    #[serde(default)]
    pub target_weight: Option<WeightSpec>,
    #[serde(default)]
    pub symbol: Option<SymbolSpec>,
    #[serde(default)]
    pub grid: GridSpec,
    #[serde(default = "default_truncation")]
    pub truncation: usize,
    #[serde(default)]
    pub tolerances: Tolerances,
    #[serde(default = "default_output_dir")]
    pub output_dir: PathBuf,
    #[serde(default = "default_seed")]
    pub seed: u64,
}

impl RunConfig {
    pub fn from_json_str(text: &str) -> Result<Self> {
        let cfg: RunConfig =
            serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json_str(&text)
    }

    pub fn validate(&self) -> Result<()> {
        let g = &self.grid;
        if !(g.r_min > 0.0 && g.r_min.is_finite()) {
            return Err(Error::Config(format!(
                "grid.r_min must be positive, got {}",
                g.r_min
            )));
        }
        if !(g.r_max > g.r_min && g.r_max <= 1e6) {
            return Err(Error::Config(format!(
                "grid.r_max must lie in ({}, 1e6], got {}",
                g.r_min, g.r_max
            )));
        }
        if g.points < 16 {
            return Err(Error::Config(format!(
                "grid.points must be at least 16, got {}",
                g.points
            )));
        }
        if self.truncation == 0 || self.truncation > 100_000 {
            return Err(Error::Config(format!(
                "truncation must lie in [1, 100000], got {}",
                self.truncation
            )));
        }
        let t = &self.tolerances;
        if !(t.slope_tol > 0.0 && t.slope_tol < 1.0) {
            return Err(Error::Config(format!(
                "tolerances.slope_tol must lie in (0, 1), got {}",
                t.slope_tol
            )));
        }
        if !(t.tail_fraction > 0.0 && t.tail_fraction <= 1.0) {
            return Err(Error::Config(format!(
                "tolerances.tail_fraction must lie in (0, 1], got {}",
                t.tail_fraction
            )));
        }
        Ok(())
    }

    pub fn source(&self) -> Result<RadialWeight> {
        self.source_weight.build()
    }

    /// Target weight, falling back to the source when absent.
    pub fn target(&self) -> Result<RadialWeight> {
        match &self.target_weight {
            Some(spec) => spec.build(),
            None => self.source_weight.build(),
        }
    }

    /// The symbol polynomial; required for classification runs.
    pub fn symbol_poly(&self) -> Result<TaylorPolynomial> {
        match &self.symbol {
            Some(spec) => spec.build(),
            None => Err(Error::Config(
                "a symbol is required to classify an operator".into(),
            )),
        }
    }

    pub fn classify_options(&self) -> ClassifyOptions {
        ClassifyOptions {
            r_min: self.grid.r_min,
            r_max: self.grid.r_max,
            points: self.grid.points,
            slope_tol: self.tolerances.slope_tol,
            tail_fraction: self.tolerances.tail_fraction,
            delta: DEFAULT_DELTA,
        }
    }
}

/// What a weight-check run should verify: either a bare weight spec
/// (`{"family": ...}`) or a full run config whose source/target weights are
/// each checked.
pub struct WeightCheckPlan {
    pub weights: Vec<(String, RadialWeight)>,
    pub output_dir: PathBuf,
}

pub fn load_weight_check_plan(path: &Path) -> Result<WeightCheckPlan> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
    let value: serde_json::Value =
        serde_json::from_str(&text).map_err(|e| Error::Config(e.to_string()))?;
    if value.get("family").is_some() {
        let spec: WeightSpec =
            serde_json::from_value(value).map_err(|e| Error::Config(e.to_string()))?;
        return Ok(WeightCheckPlan {
            weights: vec![("weight".to_string(), spec.build()?)],
            output_dir: default_output_dir(),
        });
    }
    let cfg: RunConfig =
        serde_json::from_value(value).map_err(|e| Error::Config(e.to_string()))?;
    cfg.validate()?;
    let mut weights = vec![("source_weight".to_string(), cfg.source()?)];
    if cfg.target_weight.is_some() {
        weights.push(("target_weight".to_string(), cfg.target()?));
    }
    Ok(WeightCheckPlan {
        weights,
        output_dir: cfg.output_dir,
    })
}
