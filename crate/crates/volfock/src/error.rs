use thiserror::Error;

use crate::classify::CriterionCurve;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// The weight carries no closed-form derivative data (user-supplied
    /// log-value weights), so derivative-based checks cannot run.
    #[error("{0} does not provide closed-form derivatives")]
    UnsupportedFamily(String),

    /// A sampled maximization was still climbing at the edge of its grid.
    #[error("grid does not cover the maximizer: {0}")]
    DomainCoverage(String),

    /// The criterion curve oscillates too much in its tail to trust a slope.
    #[error("criterion curve is inconclusive: {flips} slope sign changes in the tail")]
    Inconclusive {
        flips: usize,
        curve: Box<CriterionCurve>,
    },

    /// A standing hypothesis of the classification method failed; the message
    /// names the failed condition.
    #[error("hypothesis check failed: {0}")]
    HypothesisFailed(String),

    /// The sampled classifier and the exact polynomial degree rule disagree.
    /// This is an internal consistency failure, never a data error.
    #[error("classifier disagrees with the polynomial degree rule: {0}")]
    DegreeRuleMismatch(String),

    /// The degree rule answers continuity only for p >= 1.
    #[error("degree rule for continuity requires p >= 1 (got p = {0})")]
    DegreeRulePartial(f64),

    #[error("config error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
