use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("alphabet is empty")]
    EmptyAlphabet,

    #[error("duplicate letter {0:?} in alphabet")]
    DuplicateLetter(String),

    #[error("alphabet has {0} letters; at most 256 are supported")]
    AlphabetTooLarge(usize),

    #[error("substitution length must be at least 2, got {0}")]
    BadLength(usize),

    #[error("no rule given for letter {0:?}")]
    MissingRule(String),

    #[error("rule for {letter:?} has length {found}, expected {expected}")]
    RuleLengthMismatch {
        letter: String,
        expected: usize,
        found: usize,
    },

    #[error("unknown letter {0:?}")]
    UnknownLetter(String),

    #[error("bad seed {left:?}·{right:?}: {reason}")]
    BadSeed {
        left: String,
        right: String,
        reason: String,
    },

    #[error("substitution has no seed")]
    SeedMissing,

    #[error("digit {digit} out of range for length {ell}")]
    DigitOutOfRange { digit: usize, ell: usize },

    #[error("requested size {requested} exceeds budget {budget}")]
    Overflow { requested: u128, budget: usize },

    #[error("base must be at least 2, got {0}")]
    BadBase(u64),

    #[error("non-canonical digit string: {0}")]
    NonCanonical(String),

    #[error("substitution is not primitive")]
    NotPrimitive,

    #[error("substitution is not in simplified form")]
    NotSimplified,

    #[error("substitution has height {0}; analysis needs trivial height")]
    NontrivialHeight(u64),

    #[error("substitution has column number {0}; it does not generate a Toeplitz shift")]
    NotToeplitz(usize),

    #[error("substitution generates a periodic sequence")]
    PeriodicSubstitution,

    #[error("semigroup has {size} elements, budget is {budget}")]
    StateExplosion { size: usize, budget: usize },

    #[error("automaton has no negative side")]
    NoNegativeSide,

    #[error("invalid automaton: {0}")]
    InvalidAutomaton(String),

    #[error("window too short: {0}")]
    WindowTooShort(String),

    #[error("index {0} lies outside the window")]
    IndexOutOfWindow(i64),

    #[error("malformed input: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Preconditions of the Toeplitz analysis that the input does not meet.
    pub fn is_refusal(&self) -> bool {
        matches!(
            self,
            Error::NotToeplitz(_)
                | Error::NontrivialHeight(_)
                | Error::NotPrimitive
                | Error::PeriodicSubstitution
        )
    }

    /// A size limit was hit; raising SUBSTRATUM_BUDGET may help.
    pub fn is_budget(&self) -> bool {
        matches!(self, Error::Overflow { .. } | Error::StateExplosion { .. })
    }
}
