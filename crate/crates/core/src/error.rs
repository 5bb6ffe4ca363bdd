use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus {0} does not fit a machine-word prime field (must be < 2^32)")]
    ModulusTooLarge(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is a quadratic residue mod {1}")]
    NotNonResidue(u64, u64),
    #[error("elements belong to different fields")]
    FieldMismatch,
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("polynomial is zero")]
    ZeroPolynomial,
    #[error("instance too large for the brute-force oracle: q^(n+1) = {0} exceeds {1}")]
    TooLarge(u128, u128),
    #[error("characteristic mismatch: {0}")]
    CharacteristicMismatch(String),
    #[error("curve is cuspidal (a1^2 + 4 a2 = 0)")]
    CuspidalInput,
    #[error("modulus 2 is not allowed: 2 must be a unit")]
    EvenModulus,
    #[error("bad characteristic: {0}")]
    BadCharacteristic(String),
    #[error("q = {0} is not congruent to 1 mod 4")]
    BadCongruence(u64),
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn precondition<S: Into<String>>(ok: bool, msg: S) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::PreconditionViolated(msg.into()))
    }
}
