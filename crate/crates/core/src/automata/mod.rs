//! Deterministic finite automata with output generating two-sided sequences.
//!
//! A machine reads the canonical base-ℓ expansion of an index n (see
//! [`crate::digits`]). Non-negative indices start at the `nonneg` initial state
//! and use the `nonneg` output map; negative indices feed the marker-prefixed
//! expansion from the `neg` initial state and use the `neg` outputs. Direct
//! reading feeds the most significant digit first, reverse reading the least
//! significant one (so the marker comes last).

mod determinize;
mod direct;
mod equivalence;
mod export;
mod minimize;
mod reverse;

pub use determinize::reverse_and_determinize;
pub use direct::build_direct;
pub use equivalence::{equivalent, equivalent_within, Equivalence, Method};
pub use export::DfaoJson;
pub use minimize::minimize;
pub use reverse::{build_reverse_semigroup, build_reverse_semigroup_within, SemigroupAutomaton};

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::digits::{self, DigitString};
use crate::error::{Error, Result};
use crate::substitution::{Alphabet, Letter};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Reading {
    Direct,
    Reverse,
}

impl fmt::Display for Reading {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Reading::Direct => "direct",
            Reading::Reverse => "reverse",
        })
    }
}

/// Which half of ℤ an input word addresses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Nonneg,
    Neg,
}

pub type State = usize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dfao {
    ell: usize,
    delta: Vec<Vec<State>>,
    initial_nonneg: State,
    initial_neg: Option<State>,
    output_nonneg: Vec<Letter>,
    output_neg: Option<Vec<Letter>>,
    reading: Reading,
    names: Vec<String>,
    outputs: Alphabet,
}

/// The parts of a machine, as handed to [`Dfao::new`].
#[derive(Debug, Clone)]
pub struct DfaoParts {
    pub ell: usize,
    pub delta: Vec<Vec<State>>,
    pub initial_nonneg: State,
    pub initial_neg: Option<State>,
    pub output_nonneg: Vec<Letter>,
    pub output_neg: Option<Vec<Letter>>,
    pub reading: Reading,
    pub names: Vec<String>,
    pub outputs: Alphabet,
}

impl Dfao {
    pub fn new(p: DfaoParts) -> Result<Self> {
        let invalid = |msg: String| Err(Error::InvalidAutomaton(msg));
        let n = p.delta.len();
        if p.ell < 2 {
            return Err(Error::BadBase(p.ell as u64));
        }
        if n == 0 {
            return invalid("no states".into());
        }
        for (s, row) in p.delta.iter().enumerate() {
            if row.len() != p.ell {
                return invalid(format!("state {s} has {} transitions, expected {}", row.len(), p.ell));
            }
            if let Some(&t) = row.iter().find(|&&t| t >= n) {
                return invalid(format!("transition from {s} to unknown state {t}"));
            }
        }
        if p.initial_nonneg >= n || p.initial_neg.is_some_and(|s| s >= n) {
            return invalid("initial state out of range".into());
        }
        if p.initial_neg.is_some() != p.output_neg.is_some() {
            return invalid("negative side needs both an initial state and outputs".into());
        }
        for out in std::iter::once(&p.output_nonneg).chain(p.output_neg.as_ref()) {
            if out.len() != n {
                return invalid("output map is not total".into());
            }
            if out.iter().any(|&b| b as usize >= p.outputs.len()) {
                return invalid("output letter outside the output alphabet".into());
            }
        }
        if p.names.len() != n {
            return invalid("one name per state required".into());
        }
        let mut sorted = p.names.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != n {
            return invalid("state names must be distinct".into());
        }
        Ok(Dfao {
            ell: p.ell,
            delta: p.delta,
            initial_nonneg: p.initial_nonneg,
            initial_neg: p.initial_neg,
            output_nonneg: p.output_nonneg,
            output_neg: p.output_neg,
            reading: p.reading,
            names: p.names,
            outputs: p.outputs,
        })
    }

    pub fn into_parts(self) -> DfaoParts {
        DfaoParts {
            ell: self.ell,
            delta: self.delta,
            initial_nonneg: self.initial_nonneg,
            initial_neg: self.initial_neg,
            output_nonneg: self.output_nonneg,
            output_neg: self.output_neg,
            reading: self.reading,
            names: self.names,
            outputs: self.outputs,
        }
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn len(&self) -> usize {
        self.delta.len()
    }

    pub fn is_empty(&self) -> bool {
        self.delta.is_empty()
    }

    pub fn reading(&self) -> Reading {
        self.reading
    }

    pub fn is_two_sided(&self) -> bool {
        self.initial_neg.is_some()
    }

    pub fn step(&self, s: State, digit: usize) -> State {
        self.delta[s][digit]
    }

    pub fn delta(&self) -> &[Vec<State>] {
        &self.delta
    }

    pub fn initial(&self, sign: Sign) -> Option<State> {
        match sign {
            Sign::Nonneg => Some(self.initial_nonneg),
            Sign::Neg => self.initial_neg,
        }
    }

    pub fn output(&self, sign: Sign, s: State) -> Option<Letter> {
        match sign {
            Sign::Nonneg => Some(self.output_nonneg[s]),
            Sign::Neg => self.output_neg.as_ref().map(|o| o[s]),
        }
    }

    pub fn name(&self, s: State) -> &str {
        &self.names[s]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn outputs(&self) -> &Alphabet {
        &self.outputs
    }

    /// Runs a word given most significant digit first, honouring the
    /// reading direction.
    pub fn run_digits(&self, sign: Sign, msb_first: &[usize]) -> Result<Letter> {
        let start = self.initial(sign).ok_or(Error::NoNegativeSide)?;
        if let Some(&d) = msb_first.iter().find(|&&d| d >= self.ell) {
            return Err(Error::DigitOutOfRange { digit: d, ell: self.ell });
        }
        let end = match self.reading {
            Reading::Direct => msb_first.iter().fold(start, |s, &d| self.step(s, d)),
            Reading::Reverse => msb_first.iter().rev().fold(start, |s, &d| self.step(s, d)),
        };
        Ok(self.output(sign, end).expect("side checked above"))
    }

    /// Runs a possibly padded digit string.
    pub fn run_string(&self, ds: &DigitString) -> Result<Letter> {
        if ds.base() != self.ell {
            return Err(Error::BadBase(ds.base() as u64));
        }
        let sign = if ds.is_negative() { Sign::Neg } else { Sign::Nonneg };
        self.run_digits(sign, ds.digits())
    }

    /// The letter this machine generates at index n.
    pub fn run(&self, n: i64) -> Result<Letter> {
        self.run_string(&digits::to_digits(n, self.ell)?)
    }

    /// States in first-reached BFS order from the initial states (nonneg
    /// first), digits in increasing order.
    pub fn bfs_order(&self) -> Vec<State> {
        let mut seen = vec![false; self.len()];
        let mut order = Vec::with_capacity(self.len());
        let mut queue = VecDeque::new();
        for s in std::iter::once(self.initial_nonneg).chain(self.initial_neg) {
            if !seen[s] {
                seen[s] = true;
                queue.push_back(s);
            }
        }
        while let Some(s) = queue.pop_front() {
            order.push(s);
            for &t in &self.delta[s] {
                if !seen[t] {
                    seen[t] = true;
                    queue.push_back(t);
                }
            }
        }
        order
    }

    /// Drops unreachable states and renumbers the rest in BFS order.
    pub fn trim(&self) -> Dfao {
        let order = self.bfs_order();
        let mut new_id = vec![usize::MAX; self.len()];
        for (i, &s) in order.iter().enumerate() {
            new_id[s] = i;
        }
        self.relabel(&order, |s| new_id[s])
    }

    /// Builds the machine on representatives `reps`, mapping old targets via
    /// `class`.
    pub(crate) fn relabel(&self, reps: &[State], class: impl Fn(State) -> State) -> Dfao {
        Dfao {
            ell: self.ell,
            delta: reps
                .iter()
                .map(|&s| self.delta[s].iter().map(|&t| class(t)).collect())
                .collect(),
            initial_nonneg: class(self.initial_nonneg),
            initial_neg: self.initial_neg.map(&class),
            output_nonneg: reps.iter().map(|&s| self.output_nonneg[s]).collect(),
            output_neg: self
                .output_neg
                .as_ref()
                .map(|o| reps.iter().map(|&s| o[s]).collect()),
            reading: self.reading,
            names: reps.iter().map(|&s| self.names[s].clone()).collect(),
            outputs: self.outputs.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toy() -> Dfao {
        // Generates u_n = parity of the lowest digit in base 2, plus an
        // unreachable state.
        Dfao::new(DfaoParts {
            ell: 2,
            delta: vec![vec![1, 2], vec![1, 1], vec![2, 2], vec![3, 3]],
            initial_nonneg: 0,
            initial_neg: Some(0),
            output_nonneg: vec![0, 0, 1, 0],
            output_neg: Some(vec![1, 0, 1, 0]),
            reading: Reading::Reverse,
            names: vec!["s".into(), "even".into(), "odd".into(), "junk".into()],
            outputs: Alphabet::from_chars("ab").unwrap(),
        })
        .unwrap()
    }

    #[test]
    fn run_reverse() {
        let m = toy();
        assert_eq!(m.run(0).unwrap(), 0);
        assert_eq!(m.run(6).unwrap(), 0);
        assert_eq!(m.run(7).unwrap(), 1);
        // -1 is the bare marker 1: odd.
        assert_eq!(m.run(-1).unwrap(), 1);
        assert_eq!(m.run(-2).unwrap(), 0);
    }

    #[test]
    fn trimming() {
        let t = toy().trim();
        assert_eq!(t.len(), 3);
        assert_eq!(t.names(), &["s", "even", "odd"]);
        for n in -20..20 {
            assert_eq!(t.run(n).unwrap(), toy().run(n).unwrap());
        }
    }

    #[test]
    fn invalid_machines() {
        let mut p = toy().into_parts();
        p.delta[0] = vec![0];
        assert!(matches!(Dfao::new(p), Err(Error::InvalidAutomaton(_))));
        let mut p = toy().into_parts();
        p.delta[0][1] = 9;
        assert!(matches!(Dfao::new(p), Err(Error::InvalidAutomaton(_))));
        let mut p = toy().into_parts();
        p.output_neg = None;
        assert!(matches!(Dfao::new(p), Err(Error::InvalidAutomaton(_))));
    }

    #[test]
    fn one_sided_refuses_negative() {
        let mut p = toy().into_parts();
        p.initial_neg = None;
        p.output_neg = None;
        let m = Dfao::new(p).unwrap();
        assert!(matches!(m.run(-3), Err(Error::NoNegativeSide)));
    }
}
