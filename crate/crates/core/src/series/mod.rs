//! Exact truncated multivariate Laurent series and rational generating
//! functions with binomial denominators.

mod compare;
mod extract;
mod format;
mod multi;
mod policy;
mod rational;
mod space;

pub use compare::{series_equal, Comparison, Difference};
pub use extract::{conservative_windows, constant_term, pair, pair_series, pair_via_constant_term};
pub use format::{parse_gf, write_gf};
pub use multi::MultiSeries;
pub use policy::{ResolvedPolicy, TruncationPolicy};
pub use rational::{DenominatorFactor, RationalGF};
pub use space::{Monomial, MonomialDisplay, VarKind, VarSpace};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("unknown variable {0:?}")]
    UnknownVariable(String),
    #[error("denominator factor (1 - {0}) has a constant monomial")]
    ConstantDenominator(String),
    #[error("expansion of 1/(1 - {0}) is not bounded by the truncation policy")]
    UnboundedExpansion(String),
    #[error("factor 1/(1 - {monomial}) lowers the grading of {var}")]
    NonMonotoneGrading { monomial: String, var: String },
    #[error("Laurent window for {var} is {given:?} but the expansion needs {required:?}")]
    WindowTooNarrow { var: String, required: (i64, i64), given: (i64, i64) },
    #[error("no Laurent window given for auxiliary variable {0}")]
    MissingWindow(String),
    #[error("exponents of {0} are unbounded in both directions")]
    UnboundedWindow(String),
    #[error("variable spaces differ: {0}")]
    SpaceMismatch(String),
    #[error("invalid truncation policy: {0}")]
    InvalidPolicy(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}
