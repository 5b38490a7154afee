//! Crate-wide error type.

use thiserror::Error;

/// Result alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

/// Errors produced by domain validation, evaluation, and the solvers.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// A hole's closed disc is not strictly inside the outer circle.
    #[error("NestedHoleViolation: hole {index} is not strictly inside the outer circle")]
    NestedHoleViolation { index: usize },
    /// Two holes' closed discs intersect or touch.
    #[error("OverlappingHoles: holes {first} and {second} overlap or touch")]
    OverlappingHoles { first: usize, second: usize },
    /// A puncture lies outside the domain or inside a hole.
    #[error("PunctureOutsideDomain: puncture {index} does not lie in the domain")]
    PunctureOutsideDomain { index: usize },
    /// Two punctures coincide.
    #[error("DuplicatePuncture: punctures {first} and {second} coincide")]
    DuplicatePuncture { first: usize, second: usize },
    /// A region reference does not name a valid region of the domain.
    #[error("InvalidRegionRef: {0}")]
    InvalidRegionRef(String),

    /// Evaluation hit a pole of a Moebius map or Laurent polynomial.
    #[error("PoleHit: evaluation at a singular point (|denominator| = {denom:e})")]
    PoleHit { denom: f64 },
    /// Evaluation outside the declared region of definition.
    #[error("OutsideRegion: point ({re}, {im}) is outside the function's region")]
    OutsideRegion { re: f64, im: f64 },
    /// Peak anchor does not lie on its reference circle.
    #[error("AnchorNotOnCircle: |anchor - center| deviates from the radius by {deviation:e}")]
    AnchorNotOnCircle { deviation: f64 },
    /// Inner-peak anchor does not lie on the inner circle of the annulus.
    #[error("AnchorNotOnInnerCircle: |anchor| deviates from r0 by {deviation:e}")]
    AnchorNotOnInnerCircle { deviation: f64 },
    /// The test annulus of a holomorphy check is not inside the function's region.
    #[error("RegionViolation: {0}")]
    RegionViolation(String),
    /// The coefficients of a Moebius map are degenerate (ad - bc = 0).
    #[error("DegenerateMoebius: ad - bc vanishes")]
    DegenerateMoebius,

    /// A measure fails its structural invariants.
    #[error("InvalidMeasure: {0}")]
    InvalidMeasure(String),
    /// The inner/outer coefficient cancellation hypothesis fails beyond tolerance.
    #[error("HypothesisViolated: coefficient defect {defect:e} exceeds tolerance {tolerance:e}")]
    HypothesisViolated { defect: f64, tolerance: f64 },
    /// The measure has density support beyond the requested truncation order.
    #[error("TruncationInsufficient: density support at index {index} exceeds truncation {truncation}")]
    TruncationInsufficient { index: i32, truncation: u32 },
    /// A coefficient sequence does not have the required one-sided support.
    #[error("WrongSupport: coefficient at index {index} violates the requested support side")]
    WrongSupport { index: i32 },

    /// The two circles of an annulus chart are not strictly nested.
    #[error("NotNested: inner circle is not strictly inside the outer circle")]
    NotNested,
    /// A chart's boundary correspondence check failed.
    #[error("ChartCheckFailed: boundary image deviates from the target circle by {deviation:e}")]
    ChartCheckFailed { deviation: f64 },
    /// A region that is not a disc interior or a circle exterior was passed
    /// where a one-circle region is required.
    #[error("UnsupportedRegion: {0}")]
    UnsupportedRegion(String),

    /// A bound function is not strictly positive on its circle.
    #[error("NonpositiveBound: sampled minimum {min:e} is not positive")]
    NonpositiveBound { min: f64 },
    /// A target value violates the strict bound |f| < M.
    #[error("InfeasibleBound: |value| = {value:e} does not satisfy |value| < {bound:e}")]
    InfeasibleBound { value: f64, bound: f64 },
    /// Two constraint points are closer than the solver tolerates.
    #[error("PointsTooClose: minimum pairwise distance {distance:e} is below 1e-9")]
    PointsTooClose { distance: f64 },
    /// The peak-exponent doubling schedule ran out of rounds.
    #[error("BoundViolatedAfterMaxRounds: sampled bound still violated after {rounds} rounds")]
    BoundViolatedAfterMaxRounds { rounds: u32 },
    /// A separating function failed one of its sampled contract checks.
    #[error("SeparatingCheckFailed: {0}")]
    SeparatingCheckFailed(String),

    /// The sampled margin inequality for the eps selection failed.
    #[error("EpsMarginViolated: {0}")]
    EpsMarginViolated(String),
    /// The sampled margin inequality for the delta selection failed.
    #[error("DeltaMarginViolated: {0}")]
    DeltaMarginViolated(String),
    /// The glued extension failed its final sampled bound check.
    #[error("GlueBoundViolated: {0}")]
    GlueBoundViolated(String),
    /// A puncture factor stayed numerically zero at its puncture through all retries.
    #[error("PunctureDegenerate: |H({re}, {im})| stayed below 1e-8 after {retries} augmentations")]
    PunctureDegenerate { re: f64, im: f64, retries: u32 },
    /// A structurally valid problem that the pipeline does not cover.
    #[error("UnsupportedProblem: {0}")]
    UnsupportedProblem(String),
    /// Problem-level validation failure (mismatched lists, off-circle points).
    #[error("InvalidProblem: {0}")]
    InvalidProblem(String),

    /// Malformed argument to a library operation.
    #[error("InvalidArgument: {0}")]
    InvalidArgument(String),
    /// Malformed input file (JSON syntax or schema).
    #[error("ParseError: {0}")]
    Parse(String),
    /// File-system failure.
    #[error("IoError: {0}")]
    Io(String),
}

impl Error {
    /// Process exit code class: 1 for parse/IO problems, 2 for everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse(_) | Error::Io(_) => 1,
            _ => 2,
        }
    }
}
