use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid shape: {0}")]
    InvalidShape(String),

    #[error("invalid set: {0}")]
    InvalidSet(String),

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("search exceeded the node budget of {0}")]
    BudgetExhausted(u64),

    #[error("oracle too large: C({n},{h}) subsets exceed the cap of {cap}")]
    OracleTooLarge { n: usize, h: usize, cap: u64 },

    #[error("bound requires g >= h, got h={h}, g={g}")]
    ParamOrder { h: u32, g: u32 },

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("element {element} does not fit in [0, {bound})")]
    ElementOutOfRange { element: u64, bound: u64 },

    #[error("empty sample")]
    EmptySample,

    #[error("invalid parameter: {0}")]
    InvalidParam(String),
}

pub type Result<T> = std::result::Result<T, Error>;
