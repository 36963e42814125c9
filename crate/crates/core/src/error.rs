use thiserror::Error;

use crate::exactnum::Violation;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero denominator: {0}")]
    ZeroDenominator(String),

    #[error("hypergeometric sum does not terminate: no numerator parameter equals -{0}")]
    NotTerminating(u32),

    #[error("admissibility mode {mode} requires {expected} parameters, got {got}")]
    ModeArityMismatch {
        mode: &'static str,
        expected: usize,
        got: usize,
    },

    #[error("inadmissible parameters: {}", join_violations(.0))]
    InadmissibleParameters(Vec<Violation>),

    #[error("variable sets differ: [{left}] vs [{right}]")]
    VarSetMismatch { left: String, right: String },

    #[error("no value assigned to variable `{0}`")]
    MissingVariable(String),

    #[error("target polynomial is not in the span of the basis")]
    NotInSpan,

    #[error("basis is linearly dependent (element {0} is a combination of earlier ones)")]
    DependentBasis(usize),

    #[error("empty basis")]
    EmptyBasis,

    #[error("result is not a polynomial: {0}")]
    NotPolynomial(String),

    #[error("operator kinds differ")]
    KindMismatch,

    #[error("subset is empty")]
    EmptySubset,

    #[error("subset {subset} is not contained in {{1..{n}}}")]
    SubsetOutOfRange { subset: String, n: usize },

    #[error("a parameter set needs at least two values, got {0}")]
    TooFewParameters(usize),

    #[error("arity {0} outside the supported range 2..=7")]
    ArityOutOfRange(usize),

    #[error("index {index} out of range (limit {limit})")]
    IndexOutOfRange { index: usize, limit: usize },

    #[error("invalid coupling scheme: {0}")]
    InvalidScheme(String),

    #[error("parse error: {0}")]
    Parse(String),
}

fn join_violations(v: &[Violation]) -> String {
    v.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}

pub type Result<T> = std::result::Result<T, Error>;
