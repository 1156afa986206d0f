//! Brute-force ground truth. Everything here works on explicit words obtained
//! by substituting the seed, never on column maps or automata, so the symbolic
//! modules can be checked against it.
//!
//! Certificates only go one way: two different letters along a progression
//! certify that it is not constant, while a single letter only shows the
//! progression is constant inside the window.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::substitution::{Alphabet, Letter, Substitution};

/// A finite piece `u_lo … u_hi` of a two-sided sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Window {
    lo: i64,
    letters: Vec<Letter>,
}

impl Window {
    pub fn new(lo: i64, letters: Vec<Letter>) -> Self {
        Window { lo, letters }
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.letters.len() as i64 - 1
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn contains(&self, n: i64) -> bool {
        n >= self.lo && n <= self.hi()
    }

    pub fn get(&self, n: i64) -> Option<Letter> {
        self.contains(n).then(|| self.letters[(n - self.lo) as usize])
    }

    pub fn at(&self, n: i64) -> Result<Letter> {
        self.get(n).ok_or(Error::IndexOutOfWindow(n))
    }

    pub fn slice(&self, lo: i64, hi: i64) -> Result<Window> {
        if !self.contains(lo) {
            return Err(Error::IndexOutOfWindow(lo));
        }
        if !self.contains(hi) {
            return Err(Error::IndexOutOfWindow(hi));
        }
        let start = (lo - self.lo) as usize;
        let end = (hi - self.lo) as usize;
        Ok(Window::new(lo, self.letters[start..=end].to_vec()))
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, Letter)> + '_ {
        self.letters
            .iter()
            .enumerate()
            .map(move |(i, &a)| (self.lo + i as i64, a))
    }

    /// Plain-text dump with a caret under index 0 (when single-character
    /// symbols make columns line up).
    pub fn dump(&self, alphabet: &Alphabet) -> String {
        let mut out = format!("[{}, {}]\n", self.lo, self.hi());
        out.push_str(&alphabet.render(&self.letters));
        out.push('\n');
        if alphabet.single_chars() && self.contains(0) {
            let _ = writeln!(out, "{}^", " ".repeat((-self.lo) as usize));
        }
        out
    }
}

pub fn expand(sub: &Substitution, generations: usize) -> Result<Window> {
    expand_within(sub, generations, &Budget::default())
}

/// Substitutes the seed `left·right` `generations` times, giving the window
/// `[-ℓ^g, ℓ^g - 1]` of the two-sided fixed point.
pub fn expand_within(sub: &Substitution, generations: usize, budget: &Budget) -> Result<Window> {
    let seed = sub.fixed_seed()?;
    let half = crate::substitution::checked_pow(sub.length(), generations, budget.word_len / 2)
        .map_err(|_| Error::Overflow {
            requested: 2 * (sub.length() as u128).saturating_pow(generations as u32),
            budget: budget.word_len,
        })?;
    let mut word = vec![seed.left, seed.right];
    for _ in 0..generations {
        word = sub.apply(&word);
    }
    debug_assert_eq!(word.len(), 2 * half);
    Ok(Window::new(-(half as i64), word))
}

/// Letters at `n + m·step` for every m keeping the index inside the window.
pub fn sample_progression(w: &Window, n: i64, step: u64) -> Result<BTreeSet<Letter>> {
    assert!(step > 0, "step must be positive");
    if !w.contains(n) {
        return Err(Error::IndexOutOfWindow(n));
    }
    let step = step as i64;
    let first = n - (n - w.lo()).div_euclid(step) * step;
    let mut seen = BTreeSet::new();
    let mut i = first;
    while i <= w.hi() {
        seen.insert(w.letters[(i - w.lo) as usize]);
        i += step;
    }
    Ok(seen)
}

/// Letters at `n + m·step` restricted to indices in `[lo, hi]`.
pub fn sample_progression_between(
    w: &Window,
    n: i64,
    step: u64,
    lo: i64,
    hi: i64,
) -> Result<BTreeSet<Letter>> {
    assert!(step > 0, "step must be positive");
    if !w.contains(n) {
        return Err(Error::IndexOutOfWindow(n));
    }
    let lo = lo.max(w.lo());
    let hi = hi.min(w.hi());
    let step = step as i64;
    let mut seen = BTreeSet::new();
    let mut i = n - (n - lo).div_euclid(step) * step;
    while i <= hi {
        seen.insert(w.letters[(i - w.lo()) as usize]);
        i += step;
    }
    Ok(seen)
}

/// Whether two different letters occur along `n + m·step` inside the
/// window; stops at the first disagreement.
pub fn certifies_nonconstant(w: &Window, n: i64, step: u64) -> Result<bool> {
    let first = w.at(n)?;
    let step = step as i64;
    let mut i = n - (n - w.lo()).div_euclid(step) * step;
    while i <= w.hi() {
        if w.letters[(i - w.lo()) as usize] != first {
            return Ok(true);
        }
        i += step;
    }
    Ok(false)
}

/// Λ_r restricted to the window: the sequence `(u_{ℓn + r})` for every n
/// whose index ℓn + r falls inside `w`.
pub fn lambda(w: &Window, ell: usize, r: usize) -> Window {
    let ell = ell as i64;
    let r = r as i64;
    let n_lo = (w.lo() - r).div_euclid(ell) + i64::from((w.lo() - r).rem_euclid(ell) != 0);
    let n_hi = (w.hi() - r).div_euclid(ell);
    let letters = (n_lo..=n_hi)
        .map(|n| w.letters[(ell * n + r - w.lo()) as usize])
        .collect();
    Window::new(n_lo, letters)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::*;

    #[test]
    fn expansions() {
        let (bd, _) = bigdiag().simplify().unwrap();
        let w = expand(&bd, 1).unwrap();
        assert_eq!((w.lo(), w.hi()), (-9, 8));
        assert_eq!(bd.alphabet().render(w.slice(0, 8).unwrap().letters()), "acbbbabaa");
        assert_eq!(w.get(-1), Some(1));
        assert_eq!(w.get(0), Some(0));

        let (pd, _) = period_doubling().simplify().unwrap();
        let w = expand(&pd, 1).unwrap();
        assert_eq!(pd.alphabet().render(w.slice(0, 3).unwrap().letters()), "abaa");
    }

    #[test]
    fn expansion_is_self_consistent() {
        let (pd, _) = period_doubling().simplify().unwrap();
        let small = expand(&pd, 3).unwrap();
        let big = expand(&pd, 4).unwrap();
        assert_eq!(big.slice(small.lo(), small.hi()).unwrap(), small);
    }

    #[test]
    fn budget_is_enforced() {
        let (pd, _) = period_doubling().simplify().unwrap();
        assert!(matches!(
            expand_within(&pd, 8, &Budget::uniform(1000)),
            Err(Error::Overflow { .. })
        ));
    }

    #[test]
    fn progressions() {
        let (pd, _) = period_doubling().simplify().unwrap();
        let w = expand(&pd, 6).unwrap();
        assert_eq!(sample_progression(&w, 0, 2).unwrap(), BTreeSet::from([0]));
        for k in 1..=6 {
            assert!(sample_progression(&w, -1, 1 << k).unwrap().len() >= 2);
        }
        assert_eq!(sample_progression(&w, 0, 1).unwrap().len(), 2);
        assert!(matches!(
            sample_progression(&w, 1 << 20, 2),
            Err(Error::IndexOutOfWindow(_))
        ));
    }

    #[test]
    fn bounded_progressions() {
        let w = Window::new(-5, vec![1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1]);
        assert_eq!(sample_progression_between(&w, 0, 2, -1, 3).unwrap(), BTreeSet::from([0]));
        assert_eq!(sample_progression_between(&w, 0, 3, -5, 5).unwrap(), BTreeSet::from([0, 1]));
        assert_eq!(sample_progression_between(&w, 0, 3, 0, 2).unwrap(), BTreeSet::from([0]));
        assert!(!certifies_nonconstant(&w, 0, 2).unwrap());
        assert!(certifies_nonconstant(&w, 0, 3).unwrap());
    }

    #[test]
    fn lambda_indices() {
        let w = Window::new(-5, (0..11).map(|i| i as Letter).collect());
        // indices -5..=5; Λ_1 with ℓ=2 picks 2n+1 for n in -3..=2.
        let l = lambda(&w, 2, 1);
        assert_eq!((l.lo(), l.hi()), (-3, 2));
        assert_eq!(l.letters(), &[0, 2, 4, 6, 8, 10]);
    }
}
