//! Constant-length substitutions and the automata generating their two-sided
//! fixed points.
//!
//! The pipeline: validate a [`Substitution`], simplify it, compute its
//! structure semigroup, build direct- and reverse-reading automata, enumerate
//! the ℓ-kernel and, for substitutions with a coincidence, decide which indices
//! of the fixed point are periodic. Every symbolic result can be checked
//! against the brute-force [`oracle`].

pub mod audit;
pub mod automata;
pub mod budget;
pub mod catalog;
pub mod digits;
pub mod error;
pub mod kernel;
pub mod oracle;
pub mod semigroup;
pub mod substitution;
pub mod toeplitz;

pub use automata::{Dfao, Reading, SemigroupAutomaton};
pub use budget::Budget;
pub use digits::DigitString;
pub use error::{Error, Result};
pub use kernel::KernelElement;
pub use oracle::Window;
pub use semigroup::{SemigroupClosure, StructureSemigroup};
pub use substitution::{Alphabet, ColumnMap, Letter, Seed, Substitution};
pub use toeplitz::{PeriodicityVerdict, ReducedGraph};
