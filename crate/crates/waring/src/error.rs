use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("modulus polynomial must be monic of degree at least 1: {0}")]
    NonMonic(String),
    #[error("modulus must be at least 2, got {0}")]
    BadModulus(u64),
    #[error("operands belong to different rings: {0} vs {1}")]
    OwnerMismatch(String, String),
    #[error("ring too large to represent: {0}")]
    TooLarge(String),
    #[error("budget exceeded: {needed} steps needed, limit is {limit}")]
    Budget { needed: u128, limit: u64 },
    #[error("invalid argument: {0}")]
    Invalid(String),
    #[error("hypothesis does not hold: {0}")]
    Hypothesis(String),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Upper bound on enumeration steps for exhaustive sweeps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub limit: u64,
}

impl Budget {
    pub const DEFAULT_LIMIT: u64 = 10_000_000;

    pub fn new(limit: u64) -> Self {
        Budget { limit }
    }

    /// Reads `WARING_BUDGET` if set and valid, otherwise the default.
    pub fn from_env() -> Self {
        std::env::var("WARING_BUDGET")
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .map(Budget::new)
            .unwrap_or_default()
    }

    pub fn check(&self, needed: u128) -> Result<()> {
        if needed > self.limit as u128 {
            Err(Error::Budget { needed, limit: self.limit })
        } else {
            Ok(())
        }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget { limit: Self::DEFAULT_LIMIT }
    }
}
