use std::fmt;

use thiserror::Error;

use crate::code::MdsViolation;

/// A search or materialisation refused because a configured bound was hit.
///
/// Budget exhaustion is never reported as a negative answer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BudgetExceeded {
    pub resource: &'static str,
    pub limit: u64,
    pub required: Option<u64>,
}

impl BudgetExceeded {
    pub fn new(resource: &'static str, limit: u64, required: Option<u64>) -> Self {
        Self { resource, limit, required }
    }
}

impl fmt::Display for BudgetExceeded {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.required {
            Some(req) => write!(f, "budget exceeded: {} needs {} > limit {}", self.resource, req, self.limit),
            None => write!(f, "budget exceeded: {} limit {} reached", self.resource, self.limit),
        }
    }
}

impl std::error::Error for BudgetExceeded {}

#[derive(Debug, Error)]
pub enum Error {
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("not a permutation: {0}")]
    NotAPermutation(String),
    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("field order {p}^{k} exceeds 256")]
    FieldTooLarge { p: u32, k: u32 },
    #[error("malformed word: {0}")]
    MalformedWord(String),
    #[error("not an MDS code: {0}")]
    NotMds(MdsViolation),
    #[error("not a quasigroup: {0}")]
    NotQuasigroup(String),
    #[error("alphabet mismatch: {0} vs {1}")]
    AlphabetMismatch(usize, usize),
    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("invalid subcode: {0}")]
    InvalidSubcode(String),
    #[error("operation is not associative: ({0}*{1})*{2} differs")]
    NotAssociative(u8, u8, u8),
    #[error("invalid specification: {0}")]
    InvalidSpec(String),
    #[error("word {0:?} is not a codeword")]
    NotACodeword(Vec<u8>),
    #[error("order {order} above search bound {bound}")]
    OrderTooLarge { order: usize, bound: usize },
    #[error("invalid certificate: {0}")]
    InvalidCertificate(String),
    #[error(transparent)]
    Budget(#[from] BudgetExceeded),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn is_budget(&self) -> bool {
        matches!(self, Error::Budget(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
