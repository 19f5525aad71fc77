use thiserror::Error;

/// Errors raised by hypergroup computations.
///
/// Axiom violations are not errors; they are reported through
/// [`crate::hypercore::AxiomReport`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HgError {
    #[error("unknown element `{0}`")]
    UnknownElement(String),

    #[error("schema error at {path}: {message}")]
    Schema { path: String, message: String },

    #[error("invalid element label `{label}`: {message}")]
    BadLabel { label: String, message: String },

    #[error("closure exceeded the budget of {budget} elements")]
    BudgetExceeded { budget: usize },

    #[error("an infinite hypergroup needs a finite window for this operation")]
    NeedsWindow,

    #[error("`{0}` is not a subhypergroup")]
    NotSubhypergroup(String),

    #[error("subhypergroup is not strongly normal: witness {witness}")]
    NotStronglyNormal { witness: String },

    #[error("dimension data missing or not flagged exact")]
    MissingDims,

    #[error("letter refers to factor {index} but the free product has {factors} factors")]
    FactorMismatch { index: usize, factors: usize },

    #[error("free product needs at least one factor")]
    EmptyFactorList,

    #[error("hypergroup axiom failure: {0}")]
    AxiomFailure(String),

    #[error("morphism mismatch: {0}")]
    MorphismMismatch(String),

    #[error("invalid Lie type {kind}{rank}")]
    InvalidLieType { kind: String, rank: usize },

    #[error("fusion data for {0} is not available; only group-level output is supported")]
    UnsupportedFusion(String),

    #[error("unsupported relator `{0}`: only g^m and commutators within an abelian block are allowed")]
    UnsupportedRelator(String),

    #[error("invalid group presentation: {0}")]
    Presentation(String),

    #[error("search budget of {budget} nodes exhausted after {reached} complete records")]
    SearchBudget { budget: u64, reached: usize },

    #[error("quotient is not a group: class product {0} is not a single class")]
    NotAGroup(String),
}

pub type Result<T, E = HgError> = std::result::Result<T, E>;

impl HgError {
    pub(crate) fn schema(path: impl Into<String>, message: impl Into<String>) -> Self {
        HgError::Schema {
            path: path.into(),
            message: message.into(),
        }
    }
}
