use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    // --- bodies and oracles ---
    #[error("non-finite input coordinates")]
    NonFiniteInput,
    #[error("unsupported dimension {0} (expected 2 or 3)")]
    UnsupportedDimension(usize),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("zero vector where a nonzero direction is required")]
    ZeroVector,
    #[error("membership oracle is not monotone along the ray {0}")]
    OracleInconsistent(String),
    #[error("invalid body: {0}")]
    InvalidBody(String),
    #[error("minimum of the functional is attained on a nondegenerate face (gap {gap:e})")]
    NonExposedDirection { gap: f64 },
    #[error("polytope approximation needs at least {min} vertices, got {got}")]
    TooFewVertices { min: usize, got: usize },

    // --- sections and chords ---
    #[error("v lies on the line spanned by q; the section is degenerate")]
    DegenerateSection,
    #[error("midpoint has gauge {0} >= 1")]
    MidpointOutside(f64),
    #[error("midpoint is the origin: every diameter is bisected by it")]
    MidpointZero,
    #[error("a continuum of bisected chords is suspected ({count} distinct roots)")]
    ContinuumSuspected { count: usize },
    #[error("zero midpoint: no continuous chord choice exists at the origin")]
    ZeroMidpoint,
    #[error("body is not known to be strictly convex")]
    NotStrictlyConvex,
    #[error("no bisected chord has both endpoints in the strip")]
    NoStripChord,
    #[error("{count} bisected chords survive the strip filter")]
    MultipleStripChords { count: usize },

    // --- decompositions ---
    #[error("strip width search failed after {halvings} halvings")]
    EpsSearchFailed { halvings: usize },
    #[error("three-term parameter search failed after {seeds} seeds: {last}")]
    ParamSearchFailed { seeds: usize, last: String },
    #[error("sample {index} has gauge {gauge} below the annulus radius {radius}")]
    VanishingValue { index: usize, gauge: f64, radius: f64 },
    #[error("nonvanishing search failed; obstructing samples {obstructing:?}")]
    SearchFailed { obstructing: Vec<usize> },
    #[error("invalid sampled map: {0}")]
    InvalidSampledMap(String),

    // --- degree ---
    #[error("image step of {max_step} rad exceeds π/2; refine the sampling")]
    SamplingTooCoarse { max_step: f64 },
    #[error("image sample {index} is zero")]
    ZeroImage { index: usize },
    #[error("winding residual {residual} exceeds the integrality threshold")]
    NonIntegralWinding { residual: f64 },
    #[error("no regular value found after {attempts} attempts")]
    NonRegularValue { attempts: usize },
    #[error("bad triangulation: {0}")]
    BadTriangulation(String),
    #[error("vertex {index} of the polytope is not fixed by the map")]
    VerticesNotFixed { index: usize },

    // --- obstructions ---
    #[error("no bisected chords were found; raise the resolution")]
    NoChordsFound,
    #[error("the candidate section failed at every grid point")]
    SectionUndefinedEverywhere,
    #[error("point has gauge {gauge}, expected 1")]
    NotOnSphere { gauge: f64 },
    #[error("point has gauge {gauge}, expected to lie on the boundary")]
    NotOnBoundary { gauge: f64 },
    #[error("no support functional could be computed at the point")]
    NoSupportFunctional,
    #[error("malformed input: {0}")]
    MalformedInput(String),

    // --- plumbing ---
    #[error("configuration error: {0}")]
    Config(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}
