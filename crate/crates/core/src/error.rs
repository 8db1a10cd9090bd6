use num_complex::Complex64;
use thiserror::Error;

/// Errors raised by the numerical operations of this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("integrand is not finite at {at}")]
    NonFiniteIntegrand { at: Complex64 },
    #[error("contour velocity vanishes at parameter t = {t}")]
    DegenerateContour { t: f64 },
    #[error("contour is not closed: |gamma(0) - gamma(1)| = {gap:e}")]
    OpenContour { gap: f64 },
    #[error("no lattice point falls inside the domain")]
    EmptyDomain,
    #[error("function is not finite on the difference stencil around {at}")]
    NonFiniteStencil { at: Complex64 },
    #[error("point {z} is too close to the boundary (distance {distance:e}, need > {threshold:e})")]
    PointOnBoundary {
        z: Complex64,
        distance: f64,
        threshold: f64,
    },
    #[error("point lies outside the domain")]
    PointOutsideDomain,
    #[error("lattices are not compatible: {0}")]
    LatticeMismatch(String),
    #[error("lattice is too small: {0}")]
    LatticeTooSmall(String),
    #[error("h is not finite at {at}, inside the cutoff transition annulus")]
    SingularityInsideCutoffTransition { at: Complex64 },
    #[error("radius {r} is outside [0, 1)")]
    RadiusOutOfRange { r: f64 },
    #[error("sample set is degenerate: {0}")]
    DegenerateSampleSet(String),
    #[error("sample is not finite at {at}")]
    NonFiniteSample { at: Complex64 },
    #[error("boundary data must be nonnegative and not identically zero")]
    NegativeData,
    #[error("metric on this model is only available at the origin")]
    UnsupportedBasePoint,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("map sends {at:?} outside the target domain")]
    MapLeavesTarget { at: [Complex64; 2] },
    #[error("candidate {index} is not an admissible map into the disc fixing the base point")]
    CandidateNotAdmissible { index: usize },
    #[error("group elements are of different kinds")]
    KindMismatch,
    #[error("matrix is singular (|det| = {det:e})")]
    SingularMatrix { det: f64 },
    #[error("point is not on the unit sphere (|p| = {norm})")]
    NotOnSphere { norm: f64 },
    #[error("points coincide")]
    CoincidentPoints,
    #[error("degree {degree} exceeds the cap {cap}")]
    DegreeOverflow { degree: usize, cap: usize },
    #[error("every boundedness mask is empty")]
    AllMasksEmpty,
    #[error("mask geometries differ")]
    GeometryMismatch,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
