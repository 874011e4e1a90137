use thiserror::Error;

/// Errors raised by the computational entry points.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus {0} is not prime")]
    NotPrime(u64),
    #[error("residue {r} is out of range for modulus {p}")]
    ResidueOutOfRange { p: u64, r: u64 },
    #[error("degree {t} is out of range 0..={n}")]
    DegreeOutOfRange { n: usize, t: usize },
    #[error("index {m} exceeds {k}")]
    IndexOutOfRange { k: u64, m: u64 },
    #[error("n = {n} is not congruent to {r} mod {p}")]
    WrongProgression { n: usize, p: u64, r: u64 },
    #[error("{what} = {value} exceeds the default cap {cap}; pass --allow-expensive to override")]
    CapExceeded { what: &'static str, value: u64, cap: u64 },
    #[error("non-integral coefficient of b^{t} in p_{n}")]
    NonIntegral { n: usize, t: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
