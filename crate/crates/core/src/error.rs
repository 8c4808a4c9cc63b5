use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operands live in different algebra signatures")]
    SignatureMismatch,

    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),

    #[error("invalid signature: {0}")]
    InvalidSignature(String),

    #[error("genus {genus} out of range: {requirement}")]
    InvalidGenus { genus: i64, requirement: String },

    #[error(
        "degree balance violated: 2a + 4b + 3r = {actual}, but line invariants need 6g - 2 = {expected}"
    )]
    DegreeImbalance { actual: i64, expected: i64 },

    #[error(
        "genus 2 excluded: the substitution formula for line invariants fails for g = 2 because h^2 receives a quantum correction in QH*(N)"
    )]
    GenusTwoExcluded,

    #[error("psi index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("genus {0} quantum data is conjectural beyond the two leading terms; pass the conjectural flag to use it")]
    ConjecturalRequired(u32),

    #[error("element degree {degree} exceeds the working degree bound {bound}")]
    DegreeBoundExceeded { degree: u32, bound: u32 },

    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("division by zero")]
    DivisionByZero,

    #[error("internal assertion failed: {0}")]
    Internal(String),
}

impl Error {
    /// Precondition violations (bad input) as opposed to internal failures.
    pub fn is_precondition(&self) -> bool {
        !matches!(self, Error::Internal(_))
    }

    pub(crate) fn parse(position: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            position,
            message: message.into(),
        }
    }
}
