use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("field size {0} exceeds the supported maximum of 65536")]
    FieldTooLarge(u64),
    #[error("element code {code} out of range for GF({q})")]
    ElementOutOfRange { code: u32, q: u32 },
    #[error("zero has no multiplicative inverse")]
    InverseOfZero,
    #[error("operation {0} needs a second operand")]
    MissingOperand(&'static str),
    #[error("malformed matrix: {0}")]
    MalformedMatrix(String),
    #[error("vector of length {found} in ambient space of dimension {expected}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("subspaces live in different spaces ({0})")]
    AmbientMismatch(String),
    #[error("dimension {requested} out of range 0..={max}")]
    DimensionOutOfRange { requested: usize, max: usize },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("construction postcondition failed: {0}")]
    Postcondition(String),
    #[error("parameter out of range: {0}")]
    ParameterRange(String),
    #[error("infeasible type parameters, violated clause: {0}")]
    Infeasible(String),
    #[error("family is empty")]
    EmptyFamily,
    #[error("member of dimension {found} in a family of {expected}-subspaces")]
    MemberDimension { expected: usize, found: usize },
    #[error("every member already meets S")]
    HypothesisFails,
    #[error("node budget of {budget} exhausted: {lower} <= tau <= {upper}")]
    BudgetExhausted { budget: u64, lower: usize, upper: usize },
    #[error("infeasible at desk scale: {0}")]
    DeskScale(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
