use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not a prime power")]
    NotAPrimePower(u64),

    #[error("field order {0} exceeds the supported maximum of 2^16")]
    FieldTooLarge(u64),

    #[error("codeword lengths differ: {0} vs {1}")]
    LengthMismatch(usize, usize),

    #[error("cannot pad a length-{from} code to length {to}")]
    BadLength { from: usize, to: usize },

    #[error("code has no certified distance")]
    NotCertified,

    #[error("invalid parameters: {0}")]
    BadParams(String),

    #[error("code has {code} words but the field has order {field}")]
    SizeMismatch { code: usize, field: u64 },

    #[error("duplicate codeword at positions {0} and {1}")]
    DuplicateWord(usize, usize),

    #[error("a code needs at least one word")]
    EmptyCode,

    #[error("words {i} and {j} are at distance {actual}, expected {expected}")]
    NotEquidistant {
        i: usize,
        j: usize,
        actual: u32,
        expected: u32,
    },

    #[error("{what} exceeds the materialization ceiling ({limit})")]
    ResourceLimit { what: String, limit: u128 },

    #[error("{bound} bound does not apply at n={n}, d={d}")]
    NotApplicable { bound: &'static str, n: u64, d: u64 },

    #[error("malformed code file, line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("nothing to emit")]
    EmptyRows,

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
