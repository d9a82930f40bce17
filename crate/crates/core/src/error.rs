use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("ambient dimension must be at least 2, got {0}")]
    DimensionTooSmall(usize),

    #[error("need at least {needed} points, got {got}")]
    TooFewPoints { needed: usize, got: usize },

    #[error("triangle vertices are collinear")]
    CollinearVertices,

    #[error("points {0} and {1} coincide")]
    RepeatedPoints(usize, usize),

    #[error("points are not collinear")]
    NotCollinear,

    #[error(
        "point is not equidistant from the vertices (squared distances {}, {}, {})",
        .distances_sq[0], .distances_sq[1], .distances_sq[2]
    )]
    NotEquidistant { distances_sq: [String; 3] },

    #[error("homothety ratio must be nonzero")]
    ZeroRatio,

    #[error("basis vectors are linearly dependent")]
    LinearlyDependent,

    #[error("expected {expected} parameters, got {got}")]
    ParameterCount { expected: usize, got: usize },

    #[error("invalid norm: {0}")]
    InvalidNorm(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("norm {0} cannot be evaluated exactly on the rational backend")]
    NormNotExact(String),

    #[error("P coincides with the centroid; the Euler line is degenerate")]
    DegenerateEulerLine,

    #[error("tetrahedron vertices are coplanar")]
    CoplanarTetrahedron,

    #[error("tetrahedron altitudes do not concur")]
    AltitudesNotConcurrent,

    #[error("solver did not converge after {iterations} iterations (best residual {best_residual:e})")]
    NoConvergence { iterations: usize, best_residual: f64 },

    #[error("residual {residual:e} exceeds tolerance {tolerance:e}")]
    ResidualTooLarge { residual: f64, tolerance: f64 },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
