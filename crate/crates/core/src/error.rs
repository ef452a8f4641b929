use thiserror::Error;

/// Failures raised by the numerical routines.
///
/// Every routine either returns a result satisfying its stated tolerance or
/// one of these variants; nothing is silently clamped.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is not pure imaginary (max real part {0:e})")]
    NotPureImaginary(f64),
    #[error("matrix is not symmetric (max asymmetry {0:e})")]
    NotSymmetric(f64),
    #[error("columns are rank deficient (residual norm {0:e})")]
    RankDeficient(f64),
    #[error("no real form exists in dimension {0} (need n odd or divisible by 4)")]
    NoRealForm(usize),
    #[error("summand of dimension {0} is unsupported (need n odd or divisible by 4)")]
    UnsupportedSummand(usize),
    #[error("representation is not irreducible: {0}")]
    NotIrreducible(String),
    #[error("triple does not satisfy the sp(1) relations (residual {0:e})")]
    InvalidRepresentation(f64),
    #[error("phase search left imaginary norm {0:e}")]
    PhaseSearchFailed(f64),
    #[error("L L^dagger is singular (min eigenvalue {0:e})")]
    SingularGram(f64),
    #[error("matrix is not unitary (defect {0:e})")]
    NotUnitary(f64),
    #[error("matrix is not orthogonal (defect {0:e})")]
    NotOrthogonal(f64),
    #[error("quaternion is not a unit (norm {0})")]
    NotUnitQuaternion(f64),
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("parameter {name} = {value} outside ({lo}, {hi})")]
    OutOfRange { name: String, value: f64, lo: f64, hi: f64 },
    #[error("construction produced invalid data: {0}")]
    ConstructionInvalid(String),
    #[error("kernel has complex dimension {found}, expected {expected}")]
    KernelDimensionMismatch { expected: usize, found: usize },
    #[error("stencil leaves the unit ball (|X| + h = {0})")]
    StencilOutsideBall(f64),
    #[error("frame alignment is ill-conditioned (min singular value {0:e})")]
    GaugeAlignmentFailed(f64),
    #[error("H has no eigenvalue above tolerance")]
    RankZeroH,
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
