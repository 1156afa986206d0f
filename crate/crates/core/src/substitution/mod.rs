//! Constant-length substitutions: validation, column maps, powers,
//! simplified form, primitivity, height and column number.

mod alphabet;
mod column;
mod format;

pub use alphabet::{Alphabet, Letter};
pub use column::ColumnMap;
pub use format::{validate, RawSubstitution, RuleImage};

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::oracle::{self, Window};
use crate::semigroup::SemigroupClosure;

/// Adjacent letter pair `left·right` generating a two-sided fixed point,
/// with `u_{-1} = left` and `u_0 = right`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Seed {
    pub left: Letter,
    pub right: Letter,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Substitution {
    alphabet: Alphabet,
    length: usize,
    rules: Vec<Vec<Letter>>,
    seed: Option<Seed>,
}

impl Substitution {
    /// Builds and validates a substitution from interned rules (one word per
    /// letter, in alphabet order).
    ///
    /// A seed is accepted when it generates a two-sided fixed point of the
    /// simplified power of the substitution, i.e. when the idempotent powers
    /// of the first and last column fix `right` and `left` respectively.
    pub fn new(
        alphabet: Alphabet,
        length: usize,
        rules: Vec<Vec<Letter>>,
        seed: Option<Seed>,
    ) -> Result<Self> {
        if length < 2 {
            return Err(Error::BadLength(length));
        }
        let size = alphabet.len();
        if rules.len() != size {
            let missing = alphabet.symbol(rules.len().min(size - 1) as Letter);
            return Err(Error::MissingRule(missing.to_string()));
        }
        for (a, word) in rules.iter().enumerate() {
            if let Some(&bad) = word.iter().find(|&&b| b as usize >= size) {
                return Err(Error::UnknownLetter(format!("#{bad}")));
            }
            if word.len() != length {
                return Err(Error::RuleLengthMismatch {
                    letter: alphabet.symbol(a as Letter).to_string(),
                    expected: length,
                    found: word.len(),
                });
            }
        }
        let sub = Substitution {
            alphabet,
            length,
            rules,
            seed: None,
        };
        if let Some(seed) = seed {
            sub.check_seed(seed)?;
        }
        Ok(Substitution { seed, ..sub })
    }

    fn check_seed(&self, seed: Seed) -> Result<()> {
        let size = self.alphabet.len();
        if seed.left as usize >= size || seed.right as usize >= size {
            return Err(Error::UnknownLetter("seed".into()));
        }
        let p = self.simplify_exponent();
        let first = self.first_column().pow(p);
        let last = self.last_column().pow(p);
        let bad = |reason: String| Error::BadSeed {
            left: self.alphabet.symbol(seed.left).to_string(),
            right: self.alphabet.symbol(seed.right).to_string(),
            reason,
        };
        if first.apply(seed.right) != seed.right {
            return Err(bad(format!(
                "no power θ^k(right) starts with right (checked k = {p})"
            )));
        }
        if last.apply(seed.left) != seed.left {
            return Err(bad(format!(
                "no power θ^k(left) ends with left (checked k = {p})"
            )));
        }
        Ok(())
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    /// ℓ, the common length of all images.
    pub fn length(&self) -> usize {
        self.length
    }

    pub fn rule(&self, a: Letter) -> &[Letter] {
        &self.rules[a as usize]
    }

    pub fn rules(&self) -> &[Vec<Letter>] {
        &self.rules
    }

    pub fn seed(&self) -> Option<Seed> {
        self.seed
    }

    pub fn with_seed(&self, seed: Option<Seed>) -> Result<Self> {
        Substitution::new(self.alphabet.clone(), self.length, self.rules.clone(), seed)
    }

    /// θ_i: the map sending each letter to the i-th letter of its image.
    pub fn column(&self, i: usize) -> Result<ColumnMap> {
        if i >= self.length {
            return Err(Error::DigitOutOfRange {
                digit: i,
                ell: self.length,
            });
        }
        Ok(ColumnMap::new(self.rules.iter().map(|w| w[i]).collect()))
    }

    pub fn columns(&self) -> Vec<ColumnMap> {
        (0..self.length)
            .map(|i| self.column(i).expect("in range"))
            .collect()
    }

    pub fn first_column(&self) -> ColumnMap {
        self.column(0).expect("length >= 2")
    }

    pub fn last_column(&self) -> ColumnMap {
        self.column(self.length - 1).expect("length >= 2")
    }

    /// Applies the substitution to a word.
    pub fn apply(&self, word: &[Letter]) -> Vec<Letter> {
        let mut out = Vec::with_capacity(word.len() * self.length);
        for &a in word {
            out.extend_from_slice(self.rule(a));
        }
        out
    }

    pub fn power(&self, n: usize) -> Result<Self> {
        self.power_within(n, &Budget::default())
    }

    /// θ^n, of length ℓ^n. The seed carries over unchanged.
    pub fn power_within(&self, n: usize, budget: &Budget) -> Result<Self> {
        assert!(n >= 1, "power exponent must be positive");
        let new_len = checked_pow(self.length, n, budget.word_len)?;
        let rules = self
            .alphabet
            .letters()
            .map(|a| {
                let mut word = vec![a];
                for _ in 0..n {
                    word = self.apply(&word);
                }
                word
            })
            .collect();
        Ok(Substitution {
            alphabet: self.alphabet.clone(),
            length: new_len,
            rules,
            seed: self.seed,
        })
    }

    pub fn is_simplified(&self) -> bool {
        self.first_column().is_idempotent() && self.last_column().is_idempotent()
    }

    /// Least n ≥ 1 such that the first and last columns of θ^n are idempotent.
    pub fn simplify_exponent(&self) -> usize {
        let (t0, c0) = idempotent_profile(&self.first_column());
        let (t1, c1) = idempotent_profile(&self.last_column());
        let period = lcm(c0, c1);
        let floor = t0.max(t1).max(1);
        floor.div_ceil(period) * period
    }

    pub fn simplify(&self) -> Result<(Self, usize)> {
        self.simplify_within(&Budget::default())
    }

    /// Returns θ^n with n = [`Self::simplify_exponent`].
    pub fn simplify_within(&self, budget: &Budget) -> Result<(Self, usize)> {
        let n = self.simplify_exponent();
        if n == 1 {
            return Ok((self.clone(), 1));
        }
        Ok((self.power_within(n, budget)?, n))
    }

    /// Simplified power whose reachable monoid ⟨id, θ_i⟩ equals the
    /// structure semigroup, together with the exponent used.
    pub fn normal_form(&self, budget: &Budget) -> Result<(Self, usize)> {
        let (simple, p) = self.simplify_within(budget)?;
        let stab =
            crate::semigroup::structure_semigroup_within(&simple, budget)?.stabilizing_exponent;
        if stab == 1 {
            return Ok((simple, p));
        }
        Ok((self.power_within(p * stab, budget)?, p * stab))
    }

    /// The seed, provided it is fixed by this substitution itself
    /// (θ(left) ends with left, θ(right) starts with right).
    pub fn fixed_seed(&self) -> Result<Seed> {
        let seed = self.seed.ok_or(Error::SeedMissing)?;
        let first = self.rule(seed.right)[0];
        let last = *self.rule(seed.left).last().expect("non-empty rule");
        if first != seed.right || last != seed.left {
            return Err(Error::BadSeed {
                left: self.alphabet.symbol(seed.left).to_string(),
                right: self.alphabet.symbol(seed.right).to_string(),
                reason: "seed is not fixed by this power; simplify first".into(),
            });
        }
        Ok(seed)
    }

    pub fn fixed_point_window(&self, lo: i64, hi: i64) -> Result<Window> {
        self.fixed_point_window_within(lo, hi, &Budget::default())
    }

    /// u_lo … u_hi of the two-sided fixed point generated by the seed.
    pub fn fixed_point_window_within(&self, lo: i64, hi: i64, budget: &Budget) -> Result<Window> {
        assert!(lo <= 0 && hi >= 0, "window must contain the origin");
        let reach = (hi + 1).max(-lo) as u128;
        let mut g = 1;
        while (self.length as u128).pow(g) < reach {
            g += 1;
        }
        oracle::expand_within(self, g as usize, budget)?.slice(lo, hi)
    }

    /// True iff some power θ^n has every letter occurring in every image.
    pub fn is_primitive(&self) -> bool {
        let d = self.alphabet.len();
        let mut m = vec![vec![false; d]; d];
        for (a, word) in self.rules.iter().enumerate() {
            for &b in word {
                m[a][b as usize] = true;
            }
        }
        // Wielandt: a primitive d×d matrix has M^k > 0 for k = (d-1)^2 + 1,
        // and positivity persists for all larger powers.
        let target = (d - 1) * (d - 1) + 1;
        let mut exponent = 1;
        while exponent < target {
            m = bool_square(&m);
            exponent *= 2;
        }
        m.iter().all(|row| row.iter().all(|&x| x))
    }

    /// Heuristic aperiodicity check on the one-sided fixed point: a prefix of
    /// length 4ℓ³ must have no period p ≤ ℓ².
    pub fn looks_aperiodic(&self) -> Result<bool> {
        let (simple, _) = self.simplify()?;
        let start = self.right_letter(&simple);
        let len = 4 * self.length.pow(3);
        let u = one_sided_prefix(&simple, start, len, &Budget::uniform(len))?;
        let max_p = self.length * self.length;
        Ok(!(1..=max_p).any(|p| (0..len - p).all(|i| u[i] == u[i + p])))
    }

    /// h(θ): the largest n coprime to ℓ dividing gcd{a ≥ 1 : u_a = u_0}.
    pub fn height(&self) -> Result<u64> {
        let seed = self.seed.ok_or(Error::SeedMissing)?;
        self.height_from(seed.right, &Budget::default())
    }

    fn height_from(&self, start: Letter, budget: &Budget) -> Result<u64> {
        if !self.is_primitive() {
            return Err(Error::NotPrimitive);
        }
        let (simple, _) = self.simplify_within(budget)?;
        let d = self.alphabet.len();
        let gcd_upto = |u: &[Letter], h: usize| {
            (1..=h)
                .filter(|&i| u[i] == u[0])
                .fold(0u64, |g, i| gcd(g, i as u64))
        };
        // Window bound H = L^m·|A|, grown until it holds more than |A| returns
        // to u_0 and the gcd is unchanged when H doubles.
        let mut h = d;
        loop {
            h = h.saturating_mul(simple.length);
            let len = h.saturating_mul(2).saturating_add(1);
            let u = one_sided_prefix(&simple, start, len, budget)?;
            let returns = (1..=h).filter(|&i| u[i] == u[0]).count();
            if returns > d {
                let g = gcd_upto(&u, h);
                if g == gcd_upto(&u, 2 * h) {
                    return Ok(coprime_part(g, self.length as u64));
                }
            }
        }
    }

    fn right_letter(&self, simple: &Substitution) -> Letter {
        match self.seed {
            Some(s) => s.right,
            None => {
                let first = simple.first_column();
                self.alphabet
                    .letters()
                    .find(|&a| first.apply(a) == a)
                    .expect("idempotent map has a fixed point")
            }
        }
    }

    /// Minimum image size over the semigroup generated by the columns.
    /// Refuses substitutions of nontrivial height, whose pure base is not
    /// computed here.
    pub fn column_number(&self) -> Result<usize> {
        let (simple, _) = self.simplify()?;
        let start = self.right_letter(&simple);
        let h = self.height_from(start, &Budget::default())?;
        if h > 1 {
            return Err(Error::NontrivialHeight(h));
        }
        Ok(SemigroupClosure::new(&self.columns()).min_rank())
    }
}

/// Prefix u_0 … u_{len-1} of the one-sided fixed point starting at `start`.
fn one_sided_prefix(
    sub: &Substitution,
    start: Letter,
    len: usize,
    budget: &Budget,
) -> Result<Vec<Letter>> {
    debug_assert_eq!(sub.rule(start)[0], start);
    if len > budget.word_len {
        return Err(Error::Overflow {
            requested: len as u128,
            budget: budget.word_len,
        });
    }
    let mut word = vec![start];
    while word.len() < len {
        let need = len.div_ceil(sub.length);
        word = sub.apply(&word[..word.len().min(need)]);
    }
    word.truncate(len);
    Ok(word)
}

/// (max tail length, lcm of cycle lengths) of a map under iteration.
fn idempotent_profile(f: &ColumnMap) -> (usize, usize) {
    let d = f.len();
    let mut tail = 0;
    let mut period = 1;
    for start in 0..d {
        let mut seen = vec![usize::MAX; d];
        let mut x = start;
        let mut step = 0;
        while seen[x] == usize::MAX {
            seen[x] = step;
            x = f.apply(x as Letter) as usize;
            step += 1;
        }
        tail = tail.max(seen[x]);
        period = lcm(period, step - seen[x]);
    }
    (tail, period)
}

fn bool_square(m: &[Vec<bool>]) -> Vec<Vec<bool>> {
    let d = m.len();
    (0..d)
        .map(|i| {
            (0..d)
                .map(|j| (0..d).any(|k| m[i][k] && m[k][j]))
                .collect()
        })
        .collect()
}

pub(crate) fn checked_pow(base: usize, exp: usize, budget: usize) -> Result<usize> {
    let value = (base as u128).checked_pow(exp as u32);
    match value {
        Some(v) if v <= budget as u128 => Ok(v as usize),
        _ => Err(Error::Overflow {
            requested: value.unwrap_or(u128::MAX),
            budget,
        }),
    }
}

pub(crate) fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a as u64, b as u64) as usize * b
}

/// Largest divisor of `g` coprime to `ell`.
fn coprime_part(mut g: u64, ell: u64) -> u64 {
    if g == 0 {
        return 1;
    }
    loop {
        let c = gcd(g, ell);
        if c == 1 {
            return g;
        }
        g /= c;
    }
}
