use std::collections::HashMap;

use super::{Dfao, State};

/// Moore partition refinement. Unreachable states are dropped first; the
/// initial partition groups states by their output tuple on both sides, and
/// blocks are split until every digit maps each block into a single block.
/// Quotient states are numbered in BFS order.
pub fn minimize(m: &Dfao) -> Dfao {
    let m = m.trim();
    let n = m.len();
    let mut class: Vec<usize> = number_by_key(n, |s| {
        (m.output_nonneg[s], m.output_neg.as_ref().map(|o| o[s]))
    });
    loop {
        let next = number_by_key(n, |s| {
            let succ: Vec<usize> = m.delta[s].iter().map(|&t| class[t]).collect();
            (class[s], succ)
        });
        let stable = count(&next) == count(&class);
        class = next;
        if stable {
            break;
        }
    }
    let mut pos: HashMap<usize, usize> = HashMap::new();
    let mut reps = Vec::new();
    for s in 0..n {
        pos.entry(class[s]).or_insert_with(|| {
            reps.push(s);
            reps.len() - 1
        });
    }
    m.relabel(&reps, |s| pos[&class[s]]).trim()
}

/// Numbers states by first occurrence of their key.
fn number_by_key<K: std::hash::Hash + Eq>(n: usize, key: impl Fn(State) -> K) -> Vec<usize> {
    let mut ids: HashMap<K, usize> = HashMap::new();
    (0..n)
        .map(|s| {
            let next = ids.len();
            *ids.entry(key(s)).or_insert(next)
        })
        .collect()
}

fn count(class: &[usize]) -> usize {
    class.iter().max().map_or(0, |&c| c + 1)
}
