use thiserror::Error;

/// Errors raised by parsing, arithmetic and the annihilator engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at {line}:{col}: {message}")]
    Parse {
        line: usize,
        col: usize,
        message: String,
    },
    #[error("inhomogeneous rule at line {line}: left side has grade {lhs}, right side term has grade {rhs}")]
    InhomogeneousRule { line: usize, lhs: usize, rhs: usize },
    #[error("unknown generator family `{0}`")]
    UnknownFamily(String),
    #[error("unsupported characteristic {0} (expected one of 2, 3, 5, 7)")]
    UnsupportedCharacteristic(u64),
    #[error("generator {generator} exceeds index bound {bound}")]
    IndexOutOfBounds { generator: String, bound: u32 },
    #[error("degree overflow: product needs grade {needed} but the slice stops at {max_degree}")]
    DegreeOverflow { needed: usize, max_degree: usize },
    #[error("rule `{rule}` produced a negative index")]
    NegativeIndex { rule: String },
    #[error("the zero element has no length (l(0) = -inf)")]
    ZeroElement,
    #[error("element is spread over several component classes")]
    MixedComponents,
    #[error("ring `{0}` has no component scheme")]
    UnsupportedRing(String),
    #[error("unknown built-in ring `{0}`")]
    UnknownRing(String),
    #[error("ring mismatch: expected {expected}, got {found}")]
    RingMismatch { expected: String, found: String },
    #[error("series orders differ: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },
    #[error("map is not a homomorphism: {instance} is not preserved")]
    RelationViolation { instance: String },
    #[error("endomorphism has no declared inverse")]
    NoInverse,
    #[error("precondition violated: {0}")]
    PreconditionViolation(String),
    #[error("vacuous query: the annihilator of the whole set is already nonzero (dimension {dim}) in this slice")]
    VacuousQuery { dim: usize },
    #[error("element is not in the left ideal generated by A: support word {0}")]
    NotInIdeal(String),
    #[error("no generator g satisfies g(x)*f(x) != 0 at order {order}; enlarge the order")]
    NoGenerator { order: usize },
    #[error("presentation has no claimed basis")]
    MissingClaimedBasis,
    #[error("slice dimension {dim} exceeds the limit {limit}")]
    SliceTooLarge { dim: usize, limit: usize },
}

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::DegreeOverflow { .. }
            | Error::IndexOutOfBounds { .. }
            | Error::SliceTooLarge { .. } => 3,
            Error::VacuousQuery { .. } | Error::NoGenerator { .. } => 1,
            _ => 2,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
