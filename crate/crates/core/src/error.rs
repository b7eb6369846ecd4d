use thiserror::Error;

/// Errors raised by the classification library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus must be at least {min}, got {n}")]
    InvalidModulus { n: u32, min: u32 },

    #[error("jump {value} is congruent to 0 modulo {n}")]
    ZeroJump { n: u32, value: i64 },

    #[error("jump set is empty")]
    EmptyJumpSet,

    #[error("{x} is not a unit modulo {n}")]
    NotAUnit { n: u32, x: u32 },

    #[error("jump sets have different orders ({left} vs {right})")]
    OrderMismatch { left: u32, right: u32 },

    #[error("invalid theta parameters n={n}, m={m}, t={t}: {reason}")]
    InvalidTheta { n: u32, m: u32, t: u32, reason: &'static str },

    #[error("jump-set size {k} out of range 1..={max} for n={n}")]
    InvalidSize { n: u32, k: usize, max: u32 },

    #[error("parameter out of range: {0}")]
    RangeViolation(String),

    #[error("fixture parse error: {0}")]
    FixtureParse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
