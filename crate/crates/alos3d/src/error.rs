use thiserror::Error;

/// Errors produced by the kinematic and guidance operations.
#[derive(Error, Debug, Clone, PartialEq)]
pub enum Error {
    /// An input that must be finite was NaN or infinite.
    #[error("non-finite {0}")]
    NonFinite(&'static str),

    /// A parameter violated its documented range.
    #[error("invalid parameter: {0}")]
    InvalidParameter(&'static str),

    /// Pitch at or within 1e-6 rad of ±π/2; the zyx Euler chart is invalid there.
    #[error("pitch {0} rad is at or beyond the zyx chart limit ±π/2")]
    ChartSingularity(f64),

    /// Total speed is zero; the velocity direction is undefined.
    #[error("zero total speed: velocity direction undefined")]
    ZeroSpeed,

    /// Horizontal speed is zero (vertical flight); the course angle is undefined.
    #[error("zero horizontal speed: course angle undefined")]
    DegenerateCourse,

    /// An asin argument exceeded [-1, 1] by more than the clamping tolerance.
    #[error("asin argument {0} outside [-1, 1] beyond tolerance")]
    AsinDomain(f64),

    /// The velocity projection into the body-x vertical plane vanished, so
    /// the body-velocity vertical crab angle is undefined.
    #[error("vertical-plane speed is zero: body vertical crab angle undefined")]
    VerticalCrabUndefined,

    /// Surge is zero; the single-quadrant arctangent of the body-velocity
    /// vertical crab angle has no defined value.
    #[error("zero surge: body vertical crab angle arctangent undefined")]
    SurgeDomain,

    /// cos(beta_c) is zero within tolerance; the relation between the two
    /// vertical crab angles is singular there.
    #[error("cos(beta_c) = {0} within tolerance of zero: crab-angle relation singular")]
    CrabRelationSingular(f64),

    /// Two waypoints coincide; no segment geometry can be built.
    #[error("coincident waypoints: segment geometry undefined")]
    DegenerateSegment,

    /// A path segment is vertical (|pi_v| at the π/2 chart limit).
    #[error("vertical segment: path elevation at the ±π/2 chart limit")]
    VerticalSegment,

    /// The path-parameter rate denominator vanished: the vehicle is too far
    /// from the path for the frame to be well defined, or the tangent
    /// degenerated.
    #[error("path-frame singularity at varpi = {varpi}: denominator {denominator}")]
    PathFrameSingularity { varpi: f64, denominator: f64 },

    /// The path parameter left the descriptor's domain.
    #[error("path parameter {0} outside [0, {1}]")]
    VarpiOutOfRange(f64, f64),

    /// No along-track root: the initial position does not project onto the path.
    #[error("initial position does not project onto the curved path")]
    NoPathProjection,

    /// The pitch command stayed pinned at its clip for too long; the
    /// commanded geometry is unreachable.
    #[error("pitch command saturated continuously for {0} s")]
    PersistentSaturation(f64),
}
