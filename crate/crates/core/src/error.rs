use thiserror::Error;

/// Failures of the array model, the polygon engine and the adjuster.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("length mismatch: expected {expected} entries, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("main-beam response |w^H a(theta0)| = {response:e} is below the degeneracy threshold {threshold:e}")]
    DegenerateMainBeam { response: f64, threshold: f64 },

    #[error("index out of range: need 1 <= k <= l <= {len}, got k = {k}, l = {l}")]
    IndexOutOfRange { k: usize, l: usize, len: usize },

    #[error("edges cannot close into a polygon: longest edge {longest} exceeds the sum {rest} of the others")]
    InfeasibleEdges { longest: f64, rest: f64 },

    #[error("empty modulus interval at step {step}: x_min = {x_min} > x_max = {x_max}")]
    EmptyInterval { step: usize, x_min: f64, x_max: f64 },

    #[error("partial sum has zero modulus; its phase is undefined")]
    ZeroModulus,

    #[error("closing triangle violated: x = {x}, d_(N-1) = {d_prev}, d_N = {d_last}")]
    BrokenTriangle { x: f64, d_prev: f64, d_last: f64 },

    #[error("phase arc set is empty")]
    EmptyArcSet,

    #[error("only {active} edge(s) with nonzero magnitude and they cannot close")]
    TooFewActiveEdges { active: usize },

    #[error("no feasible psi among {candidates} candidates; phase-only adjustment is impossible for this request")]
    NoFeasiblePsi { candidates: usize },
}

impl Error {
    /// True for the errors that mean "this request has no phase-only solution".
    pub fn is_infeasible(&self) -> bool {
        matches!(
            self,
            Error::InfeasibleEdges { .. }
                | Error::TooFewActiveEdges { .. }
                | Error::NoFeasiblePsi { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
