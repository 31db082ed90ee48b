use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("point coincides with the inversion center")]
    CenterSingularity,
    #[error("spheres are identical within tolerance")]
    IdenticalSpheres,
    #[error("ambient dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("tangent pair has a single degenerate limiting point")]
    TangentPair,
    #[error("intersecting pair has no real limiting points")]
    IntersectingPair,
    #[error("concentric pair: limiting points are the common center and infinity")]
    ConcentricPair,
    #[error("not an S-family: {0}")]
    NotSFamily(String),
    #[error("two constraint surfaces coincide (constraint {index})")]
    DegenerateConstraint { index: usize },
    #[error("point lies {distance:e} away from the locus sphere")]
    OffLocus { distance: f64 },
    #[error("locus is {0}, expected a bounded sphere")]
    BadLocus(&'static str),
    #[error("unknown code name `{0}`")]
    UnknownCode(String),
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("need at least two points")]
    TooFewPoints,
    #[error("code has {size} points, more than the isometry search limit {limit}")]
    CodeTooLarge { size: usize, limit: usize },
    #[error("code minimum angle {min_angle} is below the contact angle {psi}")]
    CodeAngleMismatch { min_angle: f64, psi: f64 },
    #[error("sphere {index} is tangent to no other sphere of the arrangement")]
    IsolatedSphere { index: usize },
    #[error("sphere {sphere} is not tangent to family member {member} (residual {residual:e})")]
    NotTangentToFamily { sphere: usize, member: usize, residual: f64 },
    #[error("image of sphere {index} is not a unit sphere (radius {radius})")]
    NonCongruentImages { index: usize, radius: f64 },
    #[error("codes are not isometric")]
    NotIsometric,
    #[error("spheres are not tangent to each other")]
    NotTangentPair,
    #[error("sphere {0} is not tangent to both spheres of the pair")]
    NotTangentToPair(usize),
    #[error("no real completion: angle is too large for the simplex")]
    NoRealSolution,
    #[error("degenerate simplex")]
    DegenerateSimplex,
    #[error("angle {psi} exceeds arccos(-1/{dim}); no seed clique exists")]
    InfeasiblePsi { psi: f64, dim: usize },
    #[error("steiner code matches none of the five regular cases")]
    UnclassifiableSteiner,
    #[error("m = {0} is out of range")]
    BadM(usize),
    #[error("bad dimensions: {0}")]
    BadDims(String),
    #[error("family is not mutually tangent")]
    NotMutuallyTangent,
    #[error("contact angle {found} differs from the expected {expected}")]
    ContactAngleMismatch { expected: f64, found: f64 },
    #[error("unsupported schema version `{0}`")]
    SchemaMismatch(String),
    #[error("malformed input at line {line}, column {column}: {message}")]
    MalformedInput { line: usize, column: usize, message: String },
    #[error("{0}")]
    Io(String),
}

impl Error {
    /// Stable machine-readable name used in CLI error output.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::CenterSingularity => "CenterSingularity",
            Error::IdenticalSpheres => "IdenticalSpheres",
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::TangentPair => "TangentPair",
            Error::IntersectingPair => "IntersectingPair",
            Error::ConcentricPair => "ConcentricPair",
            Error::NotSFamily(_) => "NotSFamily",
            Error::DegenerateConstraint { .. } => "DegenerateConstraint",
            Error::OffLocus { .. } => "OffLocus",
            Error::BadLocus(_) => "BadLocus",
            Error::UnknownCode(_) => "UnknownCode",
            Error::BadParams(_) => "BadParams",
            Error::TooFewPoints => "TooFewPoints",
            Error::CodeTooLarge { .. } => "CodeTooLarge",
            Error::CodeAngleMismatch { .. } => "CodeAngleMismatch",
            Error::IsolatedSphere { .. } => "IsolatedSphere",
            Error::NotTangentToFamily { .. } => "NotTangentToFamily",
            Error::NonCongruentImages { .. } => "NonCongruentImages",
            Error::NotIsometric => "NotIsometric",
            Error::NotTangentPair => "NotTangentPair",
            Error::NotTangentToPair(_) => "NotTangentToPair",
            Error::NoRealSolution => "NoRealSolution",
            Error::DegenerateSimplex => "DegenerateSimplex",
            Error::InfeasiblePsi { .. } => "InfeasiblePsi",
            Error::UnclassifiableSteiner => "UnclassifiableSteiner",
            Error::BadM(_) => "BadM",
            Error::BadDims(_) => "BadDims",
            Error::NotMutuallyTangent => "NotMutuallyTangent",
            Error::ContactAngleMismatch { .. } => "ContactAngleMismatch",
            Error::SchemaMismatch(_) => "SchemaMismatch",
            Error::MalformedInput { .. } => "MalformedInput",
            Error::Io(_) => "Io",
        }
    }
}
