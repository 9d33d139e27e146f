use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain size of variable {var} must be at least 1")]
    EmptyDomain { var: usize },

    #[error("event `{event}`: support index {index} out of range for a space with {vars} variables")]
    SupportOutOfRange { event: String, index: usize, vars: usize },

    #[error("event `{event}`: {reason}")]
    InvalidEvent { event: String, reason: String },

    #[error("assignment has {got} values but the space has {expected} variables")]
    AssignmentLength { expected: usize, got: usize },

    #[error("assignment value {value} at variable {var} is outside domain 0..{domain}")]
    AssignmentValue { var: usize, value: u32, domain: u32 },

    #[error("assignment is not a permutation of 0..{n}")]
    NotAPermutation { n: usize },

    #[error("enumeration of {required} points exceeds the cap of {cap}")]
    EnumerationCap { required: String, cap: u128 },

    #[error("family of {size} sets exceeds the cap of {cap}")]
    FamilyCap { size: usize, cap: usize },

    #[error("duplicate event id `{0}`")]
    DuplicateEventId(String),

    #[error("operation requires a product space")]
    NeedsProductSpace,

    #[error("operation requires a permutation space")]
    NeedsPermutationSpace,

    #[error("d = {d} is smaller than the dependency degree {degree} of event `{event}`")]
    DegreeTooSmall { d: u64, degree: usize, event: String },

    #[error("the e-variant of the symmetric gate requires d > 2 (got {0})")]
    EVariantNeedsLargeD(u64),

    #[error("gamma for event `{event}` must lie strictly between 0 and 1")]
    GammaOutOfRange { event: String },

    #[error("event `{event}` is not certified independent from event `{other}`")]
    UncertifiedPair { event: String, other: String },

    #[error("expected {expected} entries, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("no construction found after {attempts} attempts: {what}")]
    GenerationExhausted { attempts: usize, what: String },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(transparent)]
    Dimacs(#[from] crate::instances::DimacsError),

    #[error("labeling precondition violated: vertex {vertex} has no out-neighbor labeled {wanted}")]
    StuckVertex { vertex: usize, wanted: u32 },
}
