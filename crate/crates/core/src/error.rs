use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("constant term is not invertible in the coefficient ring")]
    NonInvertibleConstantTerm,
    #[error("constant term must be {expected}")]
    BadConstantTerm { expected: &'static str },
    #[error("truncation order {got} is too short, need at least {needed}")]
    TruncationTooShort { needed: usize, got: usize },
    #[error("index a_{i}({n}) lies outside the coefficient triangle")]
    IndexOutOfTriangle { n: usize, i: usize },
    #[error("cannot parse {kind} from {input:?}")]
    Parse { kind: &'static str, input: String },
}
