//! Error type shared by all modules.

use thiserror::Error;

/// Errors reported by state constructors, fidelity maps, and the planner.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{name} = {value} is outside {range}")]
    OutOfRange {
        name: &'static str,
        value: f64,
        range: &'static str,
    },

    #[error("cannot parse {name} {got:?}: expected {expected}")]
    Parse {
        name: &'static str,
        got: String,
        expected: &'static str,
    },

    #[error("Bell-diagonal weights sum to {sum}, expected 1 within 1e-12")]
    NotNormalized { sum: f64 },

    #[error("Bell-diagonal weight b{index} = {value} is negative")]
    NegativeWeight { index: usize, value: f64 },

    #[error("purification impossible: coincidence probability is zero")]
    PurificationImpossible,

    #[error("L = 0 switchers is undefined under the paper exponent convention")]
    ZeroSwitchers,

    #[error("Bell index {0} is not in 1..=4")]
    BadBellIndex(usize),

    #[error("growth classification needs at least 4 converged points, got {0}")]
    TooFewPoints(usize),

    #[error("not a valid density matrix: {0}")]
    InvalidDensityMatrix(String),

    #[error("switcher range must be non-empty and strictly increasing")]
    BadSweepRange,

    #[error("pair-count bound exceeds the representable range")]
    PairBoundOverflow,
}

pub type Result<T> = std::result::Result<T, Error>;
