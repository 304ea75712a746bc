use thiserror::Error;

/// Every failure the engine can report. Facet indices are stored 0-based and displayed 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("polytope is unbounded")]
    Unbounded,
    #[error("polytope is not full-dimensional")]
    NotFullDimensional,
    #[error("polytope is not simple: vertex {0} lies on more than n facets")]
    NotSimple(String),
    #[error("polytope is not smooth: vertex on facets {facets} has normal determinant {det}")]
    NotSmooth { facets: String, det: i64 },
    #[error("normal of facet {} is not primitive", .0 + 1)]
    NonPrimitiveNormal(usize),
    #[error("facet {} does not support a facet of the polytope", .0 + 1)]
    RedundantFacet(usize),
    #[error("malformed polytope data: {0}")]
    Malformed(String),
    #[error("dual-cone coefficient is not an integer for primitive set {0}")]
    NonIntegralCoefficient(String),
    #[error("relation class for primitive set {0} has non-positive symplectic area")]
    NonPositiveEnergy(String),
    #[error("Novikov scalars with different cutoffs were combined")]
    CutoffMismatch,
    #[error("zero element has no valuation or inverse")]
    ZeroElement,
    #[error("element is not a unit")]
    NotAUnit,
    #[error("expected a class of degree {expected}, got {got}")]
    WrongDegree { expected: i64, got: String },
    #[error("correction for facet {} does not have positive valuation", .0 + 1)]
    BadCorrectionValuation(usize),
    #[error("correction for facet {} has the wrong degree", .0 + 1)]
    BadCorrectionDegree(usize),
    #[error("no Y entry for facet {}", .0 + 1)]
    MissingYEntry(usize),
    #[error("circle vector must be nonzero")]
    ZeroVector,
    #[error("circle vector has the wrong length: expected {expected}, got {got}")]
    VectorLength { expected: usize, got: usize },
    #[error("vector {0} is not generic: K is constant along an edge")]
    NonGenericVector(String),
    #[error("inconsistent weights at fixed face {0}")]
    InconsistentWeights(String),
    #[error("action invariant differences leave the (omega, c1) lattice at vertex {0}")]
    InvariantMismatch(String),
    #[error("{0} is not a face of the polytope")]
    UnknownFace(String),
    #[error("no vertex qualifies as a semifree maximum with all edge classes of large Chern number")]
    NoEligibleVertex,
    #[error("geometric dictionary does not cover degree-{0} classes in this dimension")]
    DictionaryIncomplete(i64),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
