use thiserror::Error;

/// Errors raised across the tracking pipeline.
#[derive(Debug, Error)]
pub enum Error {
    #[error("need at least {needed} points, got {got}")]
    TooFewPoints { needed: usize, got: usize },

    #[error("adjacent points {index} and {} coincide (degenerate chord)", index + 1)]
    DegenerateChord { index: usize },

    #[error("periodic fit requires a closed breakpoint sequence")]
    NotClosed,

    #[error("parameter {l} outside knot range [{lo}, {hi}]")]
    OutOfRange { l: f64, lo: f64, hi: f64 },

    #[error("zero-speed point at l = {l} (degenerate parametrization)")]
    DegenerateParametrization { l: f64 },

    #[error("non-finite value produced by {context}")]
    NonFinite { context: &'static str },

    #[error("bisection search precondition violated: {reason}")]
    BisectionPrecondition { reason: String },

    #[error("bisection search failed to terminate after {0} iterations")]
    BisectionDiverged(usize),

    #[error("end adjustment precondition violated: {reason}")]
    AdjustEndsPrecondition { reason: String },

    #[error("chain under-resolved: {reason} (h_L too coarse for the geometry)")]
    Resolution { reason: String },

    #[error("characteristic markers collide at index {index} (distance {dist:.3e})")]
    CharacteristicCollision { index: usize, dist: f64 },

    #[error("invalid edge pairing: {0}")]
    InvalidPairing(String),

    #[error("unknown id {what} {id}")]
    UnknownId { what: &'static str, id: usize },

    #[error("marker sequence endpoint mismatch on edge {edge}: off by {dist:.3e}")]
    EndpointMismatch { edge: usize, dist: f64 },

    #[error("vertex {vertex} not found among spline breakpoints")]
    VertexNotOnSpline { vertex: usize },

    #[error("broken chain in cycle {cycle}: gap {gap:.3e} between segments {at} and {}", at + 1)]
    BrokenChain { cycle: String, at: usize, gap: f64 },

    #[error("boundary chain does not close (gap {gap:.3e})")]
    OpenChain { gap: f64 },

    #[error("grids do not match: {0} vs {1}")]
    GridMismatch(usize, usize),

    #[error("invalid configuration: {field}: {reason}")]
    InvalidConfig { field: &'static str, reason: String },

    #[error("scene error: {0}")]
    Scene(String),

    #[error("tableau parse error: {0}")]
    Tableau(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
