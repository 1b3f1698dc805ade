use thiserror::Error;

use crate::freegroup::Rank;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid letter: generator index {index} is outside rank {rank}")]
    InvalidLetter { index: u32, rank: Rank },

    #[error("generator index must be at least 1")]
    ZeroIndex,

    #[error("invalid rank {0}: a finite rank must be at least 2")]
    InvalidRank(u32),

    #[error("word is not reduced: letters {position} and {} cancel", position + 1)]
    NotReduced { position: usize },

    #[error("context mismatch: {0}")]
    Context(String),

    #[error("operation unsupported for rank {0}")]
    UnsupportedRank(Rank),

    #[error("label or enumeration position exceeds the 64-bit label range")]
    LabelOverflow,

    #[error("budget exceeded: {needed} words requested, cap is {cap}")]
    BudgetExceeded { needed: u128, cap: u128 },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid window {lo}..{hi}")]
    InvalidWindow { lo: i64, hi: i64 },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
