use thiserror::Error;

/// Errors raised while building or validating a multiplication table.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("table size {got} is not order^2 for order {order}")]
    BadTableSize { order: usize, got: usize },
    #[error("table entry {value} at ({row},{col}) is out of range for order {order}")]
    EntryOutOfRange { row: usize, col: usize, value: usize, order: usize },
    #[error("element 0 is not a two-sided identity (fails at {elem})")]
    BadIdentity { elem: usize },
    #[error("row {elem} of the table is not a permutation")]
    NotCancellative { elem: usize },
    #[error("element {elem} has no inverse")]
    NoInverse { elem: usize },
    #[error("associativity fails at ({a},{b},{c})")]
    NotAssociative { a: usize, b: usize, c: usize },
    #[error("order {0} exceeds the supported maximum {max}", max = crate::group::MAX_ORDER)]
    OrderTooLarge(usize),
    #[error("empty table")]
    Empty,
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
}

/// Errors from the permutation-group layer.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PermError {
    #[error("permutation image list has length {got}, expected degree {degree}")]
    BadLength { degree: usize, got: usize },
    #[error("image list is not a permutation of 0..{degree}")]
    NotBijective { degree: usize },
    #[error("generated group exceeds cap of {0} elements")]
    TooLarge(usize),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// Parse errors for the presentation grammar, with 1-based position info.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("parse error at line {line}, column {col}: {msg}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

impl ParseError {
    pub fn new(line: usize, col: usize, msg: impl Into<String>) -> Self {
        ParseError { line, col, msg: msg.into() }
    }
}

/// Errors from coset enumeration.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CosetError {
    #[error("coset enumeration exceeded the cap of {0} live cosets")]
    CapExceeded(usize),
    #[error(transparent)]
    Perm(#[from] PermError),
}

/// Errors from catalog loading and validation.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CatalogError {
    #[error("line {line}: {msg}")]
    Malformed { line: usize, msg: String },
    #[error("line {line}: entry ({order},{id}) duplicates an earlier id")]
    DuplicateId { line: usize, order: u32, id: u32 },
    #[error("order {order}: manifest declares {declared} groups but {present} entries are present")]
    ManifestMismatch { order: u32, declared: u32, present: u32 },
    #[error("order {order}: ids are not consecutive from 1 (missing id {missing})")]
    NonConsecutiveIds { order: u32, missing: u32 },
    #[error("entry ({order},{id}): {msg}")]
    BadEntry { order: u32, id: u32, msg: String },
    #[error("entries ({order},{a}) and ({order},{b}) are isomorphic")]
    IsomorphicPair { order: u32, a: u32, b: u32 },
    #[error("io error: {0}")]
    Io(String),
}

/// Errors from group identification against a catalog.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IdentifyError {
    #[error("catalog coverage for order {0} is incomplete; identification would be unreliable")]
    OrderIncomplete(u32),
    #[error("no catalog entry of order {0} is isomorphic to the given group")]
    NotFound(u32),
}

/// Defects in a claimed generating vector.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VectorError {
    #[error("{got} branch elements for a signature with {want} periods")]
    WrongBranchCount { got: usize, want: usize },
    #[error("{got} handles, need 2g' = {want}")]
    WrongHandleCount { got: usize, want: usize },
    #[error("branch element {index} has order {got}, the signature demands {want}")]
    WrongOrder { index: usize, got: u16, want: u32 },
    #[error("the long relation does not evaluate to the identity")]
    LongRelation,
    #[error("the vector does not generate the group")]
    NotGenerating,
}

/// Errors from branch-signature arithmetic.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SignatureError {
    #[error("signature is not hyperbolic: theta = {0} is not positive")]
    NonHyperbolic(String),
    #[error("Riemann-Hurwitz genus {0} is not a nonnegative integer")]
    NonIntegralGenus(String),
    #[error("({gc}-1)({gf}-1) is not divisible by the group order {order}")]
    NonIntegralInvariant { gc: i64, gf: i64, order: i64 },
    #[error("invalid signature: {0}")]
    BadSignature(String),
}

/// Errors from the classification drivers.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClassifyError {
    #[error("catalog coverage for order {0} is incomplete")]
    CatalogIncomplete(u32),
    #[error(transparent)]
    Identify(#[from] IdentifyError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// Errors from orbit enumeration over Hurwitz moves.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OrbitError {
    #[error("orbit enumeration exceeded the memory guard of {0} states")]
    StateGuard(usize),
    #[error("the vector set to partition is empty")]
    EmptySet,
}
