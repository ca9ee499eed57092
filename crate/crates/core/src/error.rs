use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid preset: {0}")]
    InvalidPreset(String),

    #[error("invalid Cartan matrix: {0}")]
    InvalidCartan(String),

    #[error("index {index} out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("invalid parabolic subset: {0}")]
    InvalidSubset(String),

    #[error("integer overflow in weight coordinates")]
    Overflow,

    #[error("enumeration exceeded {0}; the Cartan matrix is probably not of finite type")]
    NonTermination(String),

    #[error("not found: {0}")]
    NotFound(String),

    #[error("word {0} is not reduced")]
    NotReduced(String),

    #[error("polynomial arity mismatch: {0} vs {1}")]
    ArityMismatch(usize, usize),

    #[error("polynomial degree mismatch: {0} vs {1}")]
    DegreeMismatch(u32, u32),

    #[error("triangular operator of size {size} applied to a polynomial of degree {degree}")]
    Grading { size: usize, degree: u32 },

    #[error("length mismatch: l(u) + l(v) = {sum} but l(w) = {target}")]
    LengthMismatch { sum: usize, target: usize },

    #[error("table is built through length {built}, length {needed} is required")]
    TableDepth { built: usize, needed: usize },

    #[error("negative structure constant {0}")]
    NegativeCoefficient(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("cache mismatch: {0}")]
    CacheMismatch(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// Errors caused by malformed user input rather than by the computation.
    pub fn is_usage(&self) -> bool {
        matches!(
            self,
            Error::InvalidPreset(_)
                | Error::InvalidCartan(_)
                | Error::InvalidSubset(_)
                | Error::Parse(_)
                | Error::NotReduced(_)
                | Error::NotFound(_)
                | Error::LengthMismatch { .. }
                | Error::IndexOutOfRange { .. }
        )
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
