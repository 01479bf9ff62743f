use crate::subset::CoordinateSubset;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Failures reported by the library.
///
/// Variants split into domain errors (the input is well formed but the
/// requested construction does not apply to it) and usage errors (the input
/// itself is malformed). [`Error::is_domain`] tells them apart.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("support is not convenient: no support point on axis {missing:?}")]
    NotConvenient { missing: Vec<usize> },

    #[error("the origin belongs to the support, so there is no singular point at 0")]
    OriginInSupport,

    #[error("empty support")]
    EmptySupport,

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("{what} exceeds the guardrail ({value} > {limit}); set NEWTON_MU_MAX_N to override the dimension limit")]
    Guardrail {
        what: &'static str,
        value: usize,
        limit: usize,
    },

    #[error("duplicate support point {0:?}")]
    DuplicatePoint(Vec<u32>),

    #[error("negative coordinate in point")]
    NegativeCoordinate,

    #[error("vertices are affinely dependent")]
    Degenerate,

    #[error("simplex does not lie in a coordinate subspace of its own dimension")]
    NotCoordinateAligned,

    #[error("region is not pure {0}-dimensional")]
    NotFullDimensional(usize),

    #[error("simplices {0} and {1} overlap in their interiors")]
    OverlappingSimplices(usize, usize),

    #[error("the origin is a vertex of the simplex")]
    OriginInSimplex,

    #[error("pieces do not share the minimal full-supporting subspace ({expected} vs {found})")]
    MixedMinimalSubspace {
        expected: CoordinateSubset,
        found: CoordinateSubset,
    },

    #[error("pieces do not share the same face in the minimal full-supporting subspace")]
    MixedMinimalFace,

    #[error("inner region is not contained in the outer region")]
    NotContained,

    #[error("the simplex with intercepts {0} is not contained in the region")]
    ContainmentFails(String),

    #[error("intercepts must be >= 1")]
    InterceptBelowOne,

    #[error("standard modification exponent {m} is too small (must exceed {max_coordinate})")]
    ModificationTooSmall { m: u64, max_coordinate: u64 },

    #[error("Newton number did not stabilise under standard modification up to m = {0}")]
    ModificationUnstable(u64),

    #[error("index {index} out of range 0..={max}")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("invalid coefficient request: need 1 <= k <= l (got l = {l}, k = {k})")]
    InvalidCoefficient { l: usize, k: usize },

    #[error("invalid degree tuple: {0}")]
    InvalidDegrees(String),

    #[error("r = {r} is out of range for n = {n}")]
    InvalidRank { r: usize, n: usize },

    #[error("factorisation branches disagree: {first} vs {second}")]
    BranchMismatch { first: String, second: String },

    #[error("vertex {0:?} is not a vertex of the Newton diagram")]
    NotAVertex(Vec<u32>),

    #[error("family step requires n = 4 (got {0})")]
    FamilyDimension(usize),

    #[error("the removed region is not a single 4-simplex ({} pieces)", .0.len())]
    NotSingleSimplex(Vec<Vec<Vec<String>>>),

    #[error("case analysis predicted {predicted} but direct computation gave {direct}")]
    CaseAnalysisMismatch { predicted: bool, direct: bool },

    #[error("vertex coordinates are not integral")]
    NonIntegral,

    #[error("local algebra dimension did not stabilise up to degree {0}; possibly non-isolated")]
    NotStabilised(usize),

    #[error("polynomial needs numeric coefficients for this operation")]
    SymbolicCoefficients,

    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("invalid rational {0:?}")]
    InvalidRational(String),
}

impl Error {
    /// True for errors about the mathematics of a well-formed input.
    pub fn is_domain(&self) -> bool {
        !matches!(
            self,
            Error::Parse { .. }
                | Error::InvalidRational(_)
                | Error::DimensionMismatch { .. }
                | Error::DuplicatePoint(_)
                | Error::NegativeCoordinate
                | Error::EmptySupport
                | Error::InvalidDegrees(_)
                | Error::Guardrail { .. }
        )
    }
}
