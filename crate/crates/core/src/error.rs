use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("no affine algebra {family}{rank}~{twist} in the supported tables")]
    InvalidAlgebra { family: char, rank: u32, twist: u8 },

    #[error("invalid finite type {family}{rank}")]
    InvalidFiniteType { family: char, rank: u32 },

    #[error("cannot parse algebra name {0:?}; expected <family><rank>~<twist>, e.g. E6~1")]
    Parse(String),

    #[error("table data error: {0}")]
    Data(String),

    #[error("phase {phase} + sum r*s = {total} is not divisible by 24")]
    PhaseCongruence { phase: i64, total: i64 },

    #[error("eta-quotient has negative leading power q^{0}")]
    NegativeShift(i64),

    #[error("series with constant term {0} has no inverse over the integers")]
    NotInvertible(String),

    #[error("{0} is not simply laced")]
    NotSimplyLaced(String),

    #[error("{0} is twisted; the Bott formula applies to non-twisted algebras only")]
    Twisted(String),

    #[error("exponent convention yields the singular factor 1/(1 - t^0)")]
    SingularFactor,

    #[error("straightening did not terminate within {0} steps")]
    NonTermination(u64),

    #[error("weight is not dominant: {0:?}")]
    NonDominant(Vec<i64>),

    #[error("straightening requires positive level, got {0}")]
    NonPositiveLevel(i64),

    #[error("breadth-first enumeration needs {required} nodes, budget is {budget}")]
    NodeBudget { required: u128, budget: u128 },

    #[error("internal consistency failure: {0}")]
    Internal(String),
}
