use thiserror::Error;

/// Errors raised by the geometry kernel, the coconvex calculus and the solvers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    #[error("cone is not pointed: no direction is strictly positive on every generator")]
    NotPointed,

    #[error("generators do not span the ambient space")]
    NotFullDimensional,

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("vector is not a unit vector (norm {0})")]
    NotUnit(f64),

    #[error("direction {0} does not lie in the interior of the polar cone")]
    DirectionOutsideOmega(usize),

    #[error("duplicate direction at index {0}")]
    DuplicateDirection(usize),

    #[error("offset at index {index} must be positive, got {value}")]
    NonpositiveOffset { index: usize, value: f64 },

    #[error("length mismatch: {0} directions but {1} offsets")]
    LengthMismatch(usize, usize),

    #[error("at least one constraint direction is required")]
    NoConstraints,

    #[error("halfspace intersection is unbounded")]
    Unbounded,

    #[error("halfspace intersection is empty")]
    Empty,

    #[error("halfspace intersection is not full-dimensional")]
    LowerDimensional,

    #[error("scale factor must be positive, got {0}")]
    NonpositiveScale(f64),

    #[error("bodies live in different cones")]
    ConeMismatch,

    #[error("expected {expected} bodies, got {found}")]
    WrongArity { expected: usize, found: usize },

    #[error("selection of normals is empty")]
    EmptySelection,

    #[error("direction {0} is not a constraint direction of the body")]
    DirectionNotInBody(usize),

    #[error("lambda must lie in (0, 1), got {0}")]
    LambdaOutOfRange(f64),

    #[error("invalid measure: {0}")]
    InvalidMeasure(String),

    #[error("finite-difference step {step} too large for offset {offset} at index {index}")]
    StepTooLarge {
        index: usize,
        step: f64,
        offset: f64,
    },

    #[error("invalid exhaustion stages: {0}")]
    InvalidStages(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("linear program failed: {0}")]
    Lp(String),
}

pub type Result<T> = std::result::Result<T, Error>;
