use num_bigint::BigUint;

/// Errors raised by the number-theory and solver layers.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("exponent {0} is not prime")]
    ExponentNotPrime(u32),

    #[error("Lucas-Lehmer requires a prime exponent p >= 3, got {0}")]
    LucasLehmerDomain(u32),

    #[error("2^{p} - 1 = {value} is not prime")]
    NotMersennePrime { p: u32, value: BigUint },

    #[error("{0} is not of the form 2^p - 1 for a prime p")]
    NotMersenneValue(BigUint),

    #[error("factorization requires n >= 2, got {0}")]
    FactorDomain(BigUint),

    #[error("factorization input {n} exceeds the effort cap {cap}")]
    CapExceeded { n: BigUint, cap: BigUint },

    #[error("l = {0} is not prime")]
    LNotPrime(BigUint),

    #[error("l = 2 is even; this routine handles odd prime l only")]
    RejectsEvenL,
}

pub type Result<T> = std::result::Result<T, Error>;
