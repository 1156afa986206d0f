use std::collections::{HashMap, VecDeque};

use super::{Dfao, DfaoParts, Reading};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::semigroup::structure_semigroup_within;
use crate::substitution::{ColumnMap, Seed, Substitution};

/// Reverse-reading machine on the monoid ⟨id, θ_i⟩ reachable from id:
/// δ(s, i) = s ∘ θ_i, ω_r(s) = s(a_r), ω_l(s) = s(a_l).
#[derive(Debug, Clone)]
pub struct SemigroupAutomaton {
    pub dfao: Dfao,
    pub labels: Vec<ColumnMap>,
    pub seed: Seed,
    /// Whether the states are exactly the structure semigroup S_θ. The
    /// reachable monoid always contains S_θ and can be strictly larger.
    pub is_structure_semigroup: bool,
}

impl SemigroupAutomaton {
    pub fn label(&self, s: usize) -> &ColumnMap {
        &self.labels[s]
    }

    pub fn state_of(&self, m: &ColumnMap) -> Option<usize> {
        self.labels.iter().position(|l| l == m)
    }
}

pub fn build_reverse_semigroup(sub: &Substitution) -> Result<SemigroupAutomaton> {
    build_reverse_semigroup_within(sub, &Budget::default())
}

/// Requires a simplified substitution with a fixed seed.
pub fn build_reverse_semigroup_within(
    sub: &Substitution,
    budget: &Budget,
) -> Result<SemigroupAutomaton> {
    if !sub.is_simplified() {
        return Err(Error::NotSimplified);
    }
    let seed = sub.fixed_seed()?;
    let structure = structure_semigroup_within(sub, budget)?;
    let columns = sub.columns();
    let id = ColumnMap::identity(sub.alphabet().len());
    let mut labels = vec![id.clone()];
    let mut index = HashMap::from([(id, 0usize)]);
    let mut delta: Vec<Vec<usize>> = Vec::new();
    let mut queue = VecDeque::from([0usize]);
    while let Some(s) = queue.pop_front() {
        let mut row = Vec::with_capacity(columns.len());
        for col in &columns {
            let t = labels[s].compose(col);
            let next = match index.get(&t) {
                Some(&j) => j,
                None => {
                    if labels.len() >= budget.states {
                        return Err(Error::StateExplosion {
                            size: labels.len() + 1,
                            budget: budget.states,
                        });
                    }
                    let j = labels.len();
                    index.insert(t.clone(), j);
                    labels.push(t);
                    queue.push_back(j);
                    j
                }
            };
            row.push(next);
        }
        debug_assert_eq!(delta.len(), s);
        delta.push(row);
    }
    let is_structure_semigroup =
        labels.len() == structure.len() && labels.iter().all(|l| structure.contains(l));
    let alphabet = sub.alphabet();
    let dfao = Dfao::new(DfaoParts {
        ell: sub.length(),
        delta,
        initial_nonneg: 0,
        initial_neg: Some(0),
        output_nonneg: labels.iter().map(|m| m.apply(seed.right)).collect(),
        output_neg: Some(labels.iter().map(|m| m.apply(seed.left)).collect()),
        reading: Reading::Reverse,
        names: labels.iter().map(|m| m.render(alphabet)).collect(),
        outputs: alphabet.clone(),
    })?;
    Ok(SemigroupAutomaton {
        dfao,
        labels,
        seed,
        is_structure_semigroup,
    })
}
