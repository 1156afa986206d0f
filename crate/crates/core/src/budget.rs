/// Size limits for operations whose output grows exponentially.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    /// Maximum word length (ℓ^n for powers, window length for expansions).
    pub word_len: usize,
    /// Maximum number of semigroup elements / automaton states.
    pub states: usize,
}

pub const DEFAULT_BUDGET: usize = 1_000_000;

pub const BUDGET_ENV: &str = "SUBSTRATUM_BUDGET";

impl Default for Budget {
    fn default() -> Self {
        Budget {
            word_len: DEFAULT_BUDGET,
            states: DEFAULT_BUDGET,
        }
    }
}

impl Budget {
    pub fn uniform(limit: usize) -> Self {
        Budget {
            word_len: limit,
            states: limit,
        }
    }

    /// Reads `SUBSTRATUM_BUDGET`, falling back to the default when unset or unparsable.
    pub fn from_env() -> Self {
        std::env::var(BUDGET_ENV)
            .ok()
            .and_then(|v| v.trim().parse::<usize>().ok())
            .map(Budget::uniform)
            .unwrap_or_default()
    }
}
