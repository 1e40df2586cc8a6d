use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("root of unity of order {order} is not available in Q(zeta_{conductor})")]
    ConductorMismatch { order: u64, conductor: u32 },
    #[error("cyclotomic contexts differ: Q(zeta_{0}) vs Q(zeta_{1})")]
    ContextMismatch(u32, u32),
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is not in the rational span of 1 and zeta_{1}")]
    NotInSpan(String, u32),
    #[error("re/im coordinates are only defined for n in {{3, 4, 6}}, got {0}")]
    UnsupportedReIm(u32),
    #[error("series must start 1 + a*q with a != 0 (got constant {constant}, linear {linear})")]
    BadLeadingShape { constant: String, linear: String },
    #[error("value of order {value_order} cannot be assigned to an element of order {element_order}")]
    InvalidOrder { value_order: u64, element_order: u64 },
    #[error("assignments do not determine a unique character ({0} candidates)")]
    Underdetermined(usize),
    #[error("{0} is not a unit modulo {1}")]
    NotAUnit(i64, u64),
    #[error("characters live on different groups (modulus {0} vs {1})")]
    GroupMismatch(u64, u64),
    #[error("unknown character {0:?}")]
    UnknownCharacter(String),
    #[error("bad weight {0}: {1}")]
    BadWeight(i64, &'static str),
    #[error("character of modulus {modulus} is imprimitive (conductor {conductor})")]
    ImprimitiveCharacter { modulus: u64, conductor: u64 },
    #[error("parity violation: chi(-1) = {chi_minus_one} but (-1)^{k} = {expected}")]
    ParityViolation { k: u32, chi_minus_one: i8, expected: i8 },
    #[error("quadratic form ({0}, {1}, {2}) is not positive definite")]
    NotPositiveDefinite(i64, i64, i64),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
