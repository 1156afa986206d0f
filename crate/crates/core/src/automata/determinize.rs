use std::collections::{HashMap, VecDeque};

use super::{Dfao, DfaoParts, Reading};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::substitution::Letter;

/// Per-side map q ↦ output reached from q after the digits read so far.
/// Grouping the states by value gives the subsets {q : out(δ*(q, v)) = b}
/// of the subset construction, one per output letter b.
type Key = (Vec<Letter>, Option<Vec<Letter>>);

pub fn reverse_and_determinize(m: &Dfao) -> Result<Dfao> {
    reverse_and_determinize_within(m, &Budget::default())
}

/// Reverses every edge and determinizes by the subset construction. The
/// result reads digits in the opposite order and generates the same
/// sequence. It has one initial state serving both sides; its output on a
/// side is the letter whose subset contains that side's original initial
/// state.
pub fn reverse_and_determinize_within(m: &Dfao, budget: &Budget) -> Result<Dfao> {
    let n = m.len();
    let start: Key = (m.output_nonneg.clone(), m.output_neg.clone());
    let mut keys = vec![start.clone()];
    let mut index = HashMap::from([(start, 0usize)]);
    let mut delta = Vec::new();
    let mut queue = VecDeque::from([0usize]);
    let pull = |f: &[Letter], digit: usize| -> Vec<Letter> {
        (0..n).map(|q| f[m.delta[q][digit]]).collect()
    };
    while let Some(s) = queue.pop_front() {
        let mut row = Vec::with_capacity(m.ell);
        for digit in 0..m.ell {
            let (pos, neg) = &keys[s];
            let key: Key = (pull(pos, digit), neg.as_ref().map(|f| pull(f, digit)));
            let t = match index.get(&key) {
                Some(&t) => t,
                None => {
                    if keys.len() >= budget.states {
                        return Err(Error::StateExplosion {
                            size: keys.len() + 1,
                            budget: budget.states,
                        });
                    }
                    let t = keys.len();
                    index.insert(key.clone(), t);
                    keys.push(key);
                    queue.push_back(t);
                    t
                }
            };
            row.push(t);
        }
        delta.push(row);
    }

    let name = |f: &[Letter]| -> String {
        let groups: Vec<String> = m
            .outputs
            .letters()
            .map(|b| {
                let members: Vec<&str> = (0..n)
                    .filter(|&q| f[q] == b)
                    .map(|q| m.names[q].as_str())
                    .collect();
                format!("{{{}}}", members.join(","))
            })
            .collect();
        groups.join("/")
    };
    let names = keys
        .iter()
        .map(|(pos, neg)| match neg {
            Some(neg) => format!("{}|{}", name(pos), name(neg)),
            None => name(pos),
        })
        .collect();
    Dfao::new(DfaoParts {
        ell: m.ell,
        delta,
        initial_nonneg: 0,
        initial_neg: m.initial_neg.map(|_| 0),
        output_nonneg: keys.iter().map(|(pos, _)| pos[m.initial_nonneg]).collect(),
        output_neg: m.initial_neg.map(|init| {
            keys.iter()
                .map(|(_, neg)| neg.as_ref().expect("two-sided")[init])
                .collect()
        }),
        reading: match m.reading {
            Reading::Direct => Reading::Reverse,
            Reading::Reverse => Reading::Direct,
        },
        names,
        outputs: m.outputs.clone(),
    })
}
