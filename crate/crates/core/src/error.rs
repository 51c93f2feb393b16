use thiserror::Error;

use crate::renorm::Stratum;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch in {what}: expected {expected}, found {found}")]
    Dimension {
        what: &'static str,
        expected: usize,
        found: usize,
    },

    #[error("malformed triple: {0}")]
    MalformedTriple(String),

    #[error("triple violates {} condition(s): {}", .0.len(), .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    InvalidTriple(Vec<crate::triples::Violation>),

    #[error("unknown builtin triple `{0}`")]
    UnknownBuiltin(String),

    #[error("invalid form coefficient at pair index {index}: {value}")]
    InvalidCoefficient { index: usize, value: f64 },

    #[error("invalid weight for cell {cell}: {value}")]
    InvalidWeight { cell: usize, value: f64 },

    #[error("form is zero (|E| = {norm:e})")]
    ZeroForm { norm: f64 },

    #[error("form is not irreducible")]
    NotIrreducible,

    #[error("denominator form is degenerate on the subspace (smallest eigenvalue {min_eig:e})")]
    DenominatorDegenerate { min_eig: f64 },

    #[error("subspace has no non-constant directions")]
    EmptySubspace,

    #[error("trace coefficient for pair {pair:?} is {value:e}, below the Markov tolerance")]
    MarkovViolation { pair: (usize, usize), value: f64 },

    #[error("renormalized form vanishes (|Λ_r(E)| = {norm:e})")]
    DegenerateImage { norm: f64 },

    #[error("point coincides with the reference point")]
    AtCenter,

    #[error("kernel is spanned by constants only")]
    TrivialKernel,

    #[error("not a degenerate eigenform: {0}")]
    NotDegenerateEigenform(String),

    #[error("form lies in stratum {0:?}, expected D3")]
    NotD3(Stratum),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("rejection sampling gave up after {draws} draws")]
    SamplingExhausted { draws: usize },

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Variant name, for machine-readable reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Dimension { .. } => "Dimension",
            Error::MalformedTriple(_) => "MalformedTriple",
            Error::InvalidTriple(_) => "InvalidTriple",
            Error::UnknownBuiltin(_) => "UnknownBuiltin",
            Error::InvalidCoefficient { .. } => "InvalidCoefficient",
            Error::InvalidWeight { .. } => "InvalidWeight",
            Error::ZeroForm { .. } => "ZeroForm",
            Error::NotIrreducible => "NotIrreducible",
            Error::DenominatorDegenerate { .. } => "DenominatorDegenerate",
            Error::EmptySubspace => "EmptySubspace",
            Error::MarkovViolation { .. } => "MarkovViolation",
            Error::DegenerateImage { .. } => "DegenerateImage",
            Error::AtCenter => "AtCenter",
            Error::TrivialKernel => "TrivialKernel",
            Error::NotDegenerateEigenform(_) => "NotDegenerateEigenform",
            Error::NotD3(_) => "NotD3",
            Error::InvalidArgument(_) => "InvalidArgument",
            Error::SamplingExhausted { .. } => "SamplingExhausted",
            Error::Json(_) => "Json",
        }
    }

    /// Errors caused by malformed or inconsistent input, as opposed to a
    /// mathematical precondition failing on well-formed input.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::Dimension { .. }
                | Error::MalformedTriple(_)
                | Error::InvalidTriple(_)
                | Error::UnknownBuiltin(_)
                | Error::InvalidCoefficient { .. }
                | Error::InvalidWeight { .. }
                | Error::InvalidArgument(_)
                | Error::Json(_)
        )
    }
}
