use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("letter index {index} is out of range for an alphabet of size {size}")]
    LetterOutOfRange { index: usize, size: usize },
    #[error("unknown letter symbol `{0}`")]
    UnknownSymbol(String),
    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),
    #[error("`{0}` is not a Lyndon word")]
    NotLyndon(String),
    #[error("the empty word is not allowed here")]
    EmptyWord,
    #[error("word must have length at least {min}, got {len}")]
    TooShort { len: usize, min: usize },
    #[error("coefficient ring mismatch: {0} vs {1}")]
    RingMismatch(String, String),
    #[error("alphabet size mismatch: {0} vs {1}")]
    AlphabetMismatch(usize, usize),
    #[error("truncation degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("word of length {len} probes beyond truncation degree {max_deg}")]
    BeyondTruncation { len: usize, max_deg: usize },
    #[error("constant term is not an admissible unit")]
    NotAUnit,
    #[error("coefficient {0} is not an integer")]
    NonIntegral(String),
    #[error("invalid modulus {0}")]
    InvalidModulus(u64),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("divisibility failure: coefficient of `{word}` at sigma_{{{generator}}} is {value}, not divisible by {divisor}")]
    Divisibility {
        word: String,
        generator: String,
        value: String,
        divisor: String,
    },
    #[error("word `{0}` is not in the formation's word set")]
    NotInWordSet(String),
    #[error("degree {0} is not in I_e")]
    DegreeNotInIe(usize),
    #[error("invalid exponent map: {0}")]
    InvalidExponentMap(String),
    #[error("invalid formation spec: {0}")]
    InvalidSpec(String),
    #[error("group of order {order} exceeds the size bound {bound}")]
    SizeBound { order: String, bound: u64 },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("arithmetic overflow: {0}")]
    Overflow(String),
}
