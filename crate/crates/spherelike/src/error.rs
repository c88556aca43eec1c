use thiserror::Error;

/// Errors shared by all modules of the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid quiver: {0}")]
    InvalidQuiver(String),

    #[error("relations are not admissible: {0}")]
    NonAdmissible(String),

    #[error("path closure fails to terminate within the admissibility bound: {0}")]
    InfiniteDimension(String),

    #[error("infinite global dimension: resolution of simple at vertex {vertex} exceeds the dimension-derived bound {bound}")]
    InfiniteGlobalDimension { vertex: usize, bound: usize },

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("objects live over different algebras")]
    AlgebraMismatch,

    #[error("input is not an indecomposable projective in canonical form")]
    NotProjective,

    #[error("object is not spherelike: classified as {0}")]
    NotSpherelike(String),

    #[error("endomorphism algebra splits over a quadratic extension only; minimal polynomial {min_poly} has no rational root")]
    IrreducibleQuadratic { min_poly: String },

    #[error("two-dimensional algebra input is invalid: {0}")]
    BadAlgebraInput(String),

    #[error("canonical map is not an isomorphism on endomorphisms: {0}")]
    WNotIsomorphism(String),

    #[error("Euler square of the reflection class is {0}, expected 2")]
    NotReflectionClass(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
