use thiserror::Error;

/// Errors raised by constructions in this crate.
///
/// Validation routines that *diagnose* (crossed modules, butterflies, two-cells,
/// monoidal functors) return a [`crate::Report`] instead; these variants are for
/// operations whose preconditions fail.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("not a group: {0}")]
    NotAGroup(String),
    #[error("not a homomorphism: {0}")]
    NotAHomomorphism(String),
    #[error("invalid action: {0}")]
    InvalidAction(String),
    #[error("not a subgroup: {0}")]
    NotASubgroup(String),
    #[error("subgroup is not normal: {0}")]
    NotNormal(String),
    #[error("codomain mismatch: {0}")]
    CodomainMismatch(String),
    #[error("size bound exceeded: {what} has size {size}, bound is {bound}")]
    BoundExceeded {
        what: String,
        size: usize,
        bound: usize,
    },
    #[error("invalid crossed module: {0}")]
    InvalidCrossedModule(String),
    #[error("invalid strict 2-group: {0}")]
    InvalidStrict2Group(String),
    #[error("invalid morphism: {0}")]
    InvalidMorphism(String),
    #[error("invalid two-cell: {0}")]
    InvalidTwoCell(String),
    #[error("invalid butterfly: {0}")]
    InvalidButterfly(String),
    #[error("not composable: {0}")]
    NotComposable(String),
    #[error("butterfly is not flippable: {0}")]
    NotFlippable(String),
    #[error("not a section: {0}")]
    NotASection(String),
    #[error("images of kappa and iota do not commute: {0}")]
    CooperatorFails(String),
    #[error("fractor condition {condition} failed: {witness}")]
    FractorConditionFailed { condition: u8, witness: String },
    #[error("invalid set section: {0}")]
    SectionInvalid(String),
    #[error("group law on the limit failed: {0}")]
    GroupLawSearchFailed(String),
    #[error("invalid monoidal functor: {0}")]
    InvalidMonoidalFunctor(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("invalid extension: {0}")]
    InvalidExtension(String),
    #[error("invalid factor set: {0}")]
    InvalidFactorSet(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unknown kind: {0}")]
    UnknownKind(String),
    #[error("unknown suite: {0}")]
    UnknownSuite(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
