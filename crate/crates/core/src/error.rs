use thiserror::Error;

/// Errors raised by the exact arithmetic layer and every structural computation
/// built on top of it.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("field mismatch: {0}")]
    FieldMismatch(String),
    #[error("unsupported field: {0}")]
    UnsupportedField(String),
    #[error("invalid field description: {0}")]
    InvalidField(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("dimension mismatch: {0}")]
    AmbientMismatch(String),
    #[error("bad algebra description: {0}")]
    BadSpec(String),
    #[error("multiplication is not associative on (e{0}, e{1}, e{2})")]
    NotAssociative(usize, usize, usize),
    #[error("multiplication table has no two-sided unit")]
    NoUnit,
    #[error("target field is not an extension of the source field")]
    NotAnExtension,
    #[error("ideal is the whole algebra")]
    ImproperIdeal,
    #[error("subspace is not a {0} ideal")]
    NotAnIdeal(String),
    #[error("linear map is not an algebra homomorphism: fails on (e{0}, e{1})")]
    NotAHom(usize, usize),
    #[error("linear map does not send 1 to 1")]
    NotUnital,
    #[error("enumeration too large: {0}")]
    TooLarge(String),
    #[error("internal verification failed: {0}")]
    InternalVerificationFailed(String),
    #[error("algebra is not semisimple")]
    NotSemisimple,
    #[error("ideals {0} and {1} are not coprime")]
    NotCoprime(usize, usize),
    #[error("no solution: {0}")]
    NoSolution(String),
    #[error("map is not a derivation: fails on (e{0}, e{1})")]
    NotADerivation(usize, usize),
    #[error("invalid bimodule: {0}")]
    BadBimodule(String),
    #[error("element is not idempotent modulo the radical")]
    NotIdempotentModJ,
    #[error("the semisimple quotient is not separable")]
    NotSeparableQuotient,
    #[error("coboundary equation has no solution at filtration step {0}")]
    CoboundaryUnsolvable(usize),
    #[error("derivation is not inner")]
    NotInner,
    #[error("invalid splitting: {0}")]
    BadSplitting(String),
    #[error("theorem violated at level {level}: {detail}")]
    TheoremViolation { level: usize, detail: String },
    #[error("tower coordinates incompatible at level {0}")]
    IncompatibleCoordinates(usize),
    #[error("quiver has no vertices")]
    EmptyQuiver,
    #[error("relation is not composable: {0}")]
    NonComposableRelation(String),
    #[error("connecting map at level {0} is not surjective")]
    NotSurjective(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
