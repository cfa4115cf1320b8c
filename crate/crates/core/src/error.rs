use alloc::string::String;
use alloc::vec::Vec;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[non_exhaustive]
pub enum Error {
    #[error("degenerate jacobian at parameter {param:?} (smallest/largest singular value {ratio:.3e})")]
    DegenerateJacobian { param: Vec<f64>, ratio: f64 },

    #[error("tangent space fills the ambient space (dim {0}); the normal space is trivial")]
    FullSpace(usize),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("{op} is not supported for intrinsic dimension {k}")]
    UnsupportedDimension { op: &'static str, k: usize },

    #[error("need at least 2 points, got {0}")]
    TooFewPoints(usize),

    #[error("radii must be positive, got {0}")]
    NonpositiveRadius(f64),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("map collapses sample points {i} and {j} onto the same image point")]
    Collapse { i: usize, j: usize },

    #[error("transported tangent at sample {index} lost rank (smallest singular value {sigma:.3e})")]
    RankCollapse { index: usize, sigma: f64 },

    #[error("map is not orthogonal: singular values span [{sigma_min}, {sigma_max}]")]
    NonOrthogonalMap { sigma_min: f64, sigma_max: f64 },

    #[error("linear map has rank {rank}, expected full row rank {m}")]
    RankDeficient { rank: usize, m: usize },

    #[error("reach of the source manifold is unavailable")]
    ReachUnavailable,

    #[error("basis is not orthonormal (max deviation {0:.3e})")]
    NotOrthonormal(f64),

    #[error("non-finite value produced by {0}")]
    NonFinite(&'static str),
}
