use thiserror::Error;

/// Errors raised by constructions and checks across the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("a ground set needs at least one element")]
    EmptyGround,

    #[error("ground set labels must be distinct and number exactly {expected}, got {got}")]
    BadLabels { expected: usize, got: usize },

    /// A size limit was exceeded; `what` names the limited quantity.
    #[error("{what} of size {size} exceeds the configured limit {limit}")]
    Capacity {
        what: &'static str,
        size: usize,
        limit: usize,
    },

    #[error("incompatible carriers: {left} vs {right} elements")]
    CarrierMismatch { left: usize, right: usize },

    #[error("element {elem} is out of range for a set of {n} elements")]
    OutOfRange { elem: usize, n: usize },

    #[error("index element {index} is out of range for a poset of {m} elements")]
    InvalidIndex { index: usize, m: usize },

    #[error("not a partial order: {0}")]
    NotPartialOrder(String),

    #[error("the index poset has no zero")]
    MissingZero,

    #[error("the index poset is not upward directed")]
    NotUpwardDirected,

    #[error("the index poset is not a D-index set")]
    NotDIndex,

    #[error("the index poset is not meet-complete")]
    NotMeetComplete,

    #[error("the index poset is not totally ordered")]
    NotTotallyOrdered,

    #[error("not a semi-metric: {0}")]
    NotSemiMetric(String),

    #[error("not a coarse metric: {0}")]
    NotCoarseMetric(String),

    #[error("not an equivalence relation: {0}")]
    NotEquivalence(String),

    #[error("empty family")]
    EmptyFamily,

    #[error("empty set")]
    EmptySet,

    #[error("not a base: {0}")]
    NotABase(String),

    #[error("the metric does not induce the given structure")]
    StructureMismatch,

    #[error("uniform structure axiom violated: {0}")]
    UniformAxiom(String),

    #[error("intersection hypothesis fails at pair ({x}, {y})")]
    IntersectionHypothesis { x: usize, y: usize },

    #[error("not closed under intersections: {0}")]
    NotIntersectionClosed(String),

    #[error("degenerate construction: {0}")]
    Degenerate(String),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },

    #[error("unknown {kind} `{name}`")]
    UnknownName { kind: &'static str, name: String },

    #[error("duplicate {kind} `{name}`")]
    DuplicateName { kind: &'static str, name: String },
}

pub type Result<T> = std::result::Result<T, Error>;
