//! Boundedness and compactness of Volterra operators `V_g f = ∫_0^z f g'`
//! and multiplication operators `M_h f = h f` between weighted sup-norm
//! spaces of entire functions `H_v = { f : sup |f(z)| v(|z|) < ∞ }`.
//!
//! The decision procedure samples a criterion quantity `q(r)` built from the
//! symbol's coefficient majorant, the weights, and their derivatives, then
//! classifies its log-log tail slope: decaying means compact, flat means
//! bounded, growing means unbounded. Before sampling, the standing
//! hypotheses are verified on grids — the decay axioms on each weight, a
//! bounded-curvature condition on the growth function `1/v`, smoothness
//! conditions on the target weight, and structural sub-checks deciding
//! whether the weight itself or its monomial envelope drives the criterion.
//! For monomial symbols on exponential-power spaces the sampled verdict is
//! cross-checked against an exact closed-form degree rule.
//!
//! Entry points:
//! - [`weight::RadialWeight`] — the weight catalog and derivative data;
//! - [`taylor::TaylorPolynomial`] — symbols and the operator algebra;
//! - [`classify::classify_volterra`] / [`classify::classify_multiplier`] —
//!   end-to-end decisions;
//! - [`classify::degree_rule`] — the closed-form rule;
//! - [`checks`] — the individual hypothesis checks with reports;
//! - [`cli`] — the `volfock` binary's subcommands.

pub mod checks;
pub mod classify;
pub mod cli;
pub mod config;
pub mod envelope;
pub mod error;
pub mod numeric;
pub mod report;
pub mod taylor;
pub mod weight;

pub use checks::{
    check_differentiation_condition, check_essentialness, check_target_weight_conditions,
    check_weight_axioms, ConditionReport, SubCheck,
};
pub use classify::{
    classify, classify_multiplier, classify_volterra, degree_rule, norm_equivalence_ratios,
    Classification, ClassifyOptions, CriterionCurve, CurveForm, NormEquivalence, ProxyKind,
    Verdict,
};
pub use config::{RunConfig, SymbolSpec, WeightSpec};
pub use envelope::{monomial_norm_log, MonomialNormTable};
pub use error::{Error, Result};
pub use taylor::{volterra, weighted_sup_norm_log, TaylorPolynomial};
pub use weight::{growth_from_weight, GrowthFunction, RadialWeight, WeightFamily};
