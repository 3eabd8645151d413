use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("vector is not in the span of the given basis")]
    NotInSpan,

    #[error("basis columns are linearly dependent")]
    DependentBasis,

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("degree {degree} needs {words} basis words, above the cap of {cap}")]
    SizeCap { degree: usize, words: u128, cap: usize },

    #[error("letter {letter} out of range for {generators} generators")]
    LetterOutOfRange { letter: usize, generators: usize },

    #[error("degree {requested} exceeds the degree cap {cap}")]
    DegreeCapExceeded { requested: usize, cap: usize },

    #[error("relation term `{term}` has degree {degree}, expected 2")]
    NonQuadraticRelation { term: String, degree: usize },

    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),

    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),

    #[error("sign rule violation: d^2 != 0 at homological degree {n}, strand {q}")]
    SignRuleViolation { n: usize, q: usize },

    #[error("homological degree {n} is outside the stored range")]
    OutOfRange { n: usize },

    #[error("not a complex: d^2 != 0 at homological degree {n}, strand {q}")]
    NotAComplex { n: usize, q: usize },

    #[error("invariant violation: {0}")]
    InvariantViolation(String),

    #[error("algebra is not certified Koszul up to degree {cap}")]
    NotKoszul { cap: usize },

    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
}
