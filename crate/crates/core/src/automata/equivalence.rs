use std::collections::{HashMap, VecDeque};

use super::{Dfao, Reading, Sign, State};
use crate::digits::DigitString;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    /// Product-machine reachability over all canonical expansions.
    Exact,
    /// `run` compared on every n with |n| ≤ bound.
    Bounded(i64),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Equivalence {
    pub equal: bool,
    /// Smallest-expansion index where the machines differ.
    pub counterexample: Option<i64>,
    pub method: Method,
}

pub const DEFAULT_BOUND: i64 = 10_000;

pub fn equivalent(a: &Dfao, b: &Dfao) -> Result<Equivalence> {
    equivalent_within(a, b, DEFAULT_BOUND)
}

/// Decides whether two machines generate the same sequence. Machines reading
/// in the same direction are compared exactly; otherwise outputs are compared
/// on [-bound, bound].
pub fn equivalent_within(a: &Dfao, b: &Dfao, bound: i64) -> Result<Equivalence> {
    if a.ell() != b.ell() {
        return Err(Error::InvalidAutomaton(format!(
            "cannot compare machines over bases {} and {}",
            a.ell(),
            b.ell()
        )));
    }
    let mut signs = vec![Sign::Nonneg];
    match (a.is_two_sided(), b.is_two_sided()) {
        (true, true) => signs.push(Sign::Neg),
        (false, false) => {}
        _ => {
            return Ok(Equivalence {
                equal: false,
                counterexample: Some(-1),
                method: Method::Exact,
            })
        }
    }
    if a.reading() != b.reading() {
        return Ok(bounded(a, b, &signs, bound));
    }
    let mut best: Option<i64> = None;
    for &sign in &signs {
        if let Some(n) = product_search(a, b, sign)? {
            best = Some(match best {
                Some(m) if m.abs() <= n.abs() => m,
                _ => n,
            });
        }
    }
    Ok(Equivalence {
        equal: best.is_none(),
        counterexample: best,
        method: Method::Exact,
    })
}

fn same_output(a: &Dfao, sa: State, b: &Dfao, sb: State, sign: Sign) -> bool {
    let la = a.output(sign, sa).expect("side present");
    let lb = b.output(sign, sb).expect("side present");
    a.outputs().symbol(la) == b.outputs().symbol(lb)
}

fn bounded(a: &Dfao, b: &Dfao, signs: &[Sign], bound: i64) -> Equivalence {
    let two_sided = signs.contains(&Sign::Neg);
    let candidates = (0..=bound).flat_map(|k| {
        let neg = (two_sided && k < bound).then_some(-k - 1);
        std::iter::once(k).chain(neg)
    });
    for n in candidates {
        let la = a.run(n).expect("side present");
        let lb = b.run(n).expect("side present");
        if a.outputs().symbol(la) != b.outputs().symbol(lb) {
            return Equivalence {
                equal: false,
                counterexample: Some(n),
                method: Method::Bounded(bound),
            };
        }
    }
    Equivalence {
        equal: true,
        counterexample: None,
        method: Method::Bounded(bound),
    }
}

/// Recognizes the words `run` actually feeds: canonical expansions, in
/// feeding order. Returns (transitions, accepting).
fn canonical_tracker(reading: Reading, sign: Sign, ell: usize) -> (Vec<Vec<usize>>, Vec<bool>) {
    let top = ell - 1;
    let table = |rules: &[&dyn Fn(usize) -> usize]| -> Vec<Vec<usize>> {
        rules.iter().map(|f| (0..ell).map(f).collect()).collect()
    };
    match (reading, sign) {
        // States: empty, last digit 0, last digit nonzero.
        (Reading::Reverse, Sign::Nonneg) => {
            let step = |d: usize| if d == 0 { 1 } else { 2 };
            (table(&[&step, &step, &step]), vec![true, false, true])
        }
        // Block digits then the marker, with no marker directly before it.
        // States: empty, lone marker, last digit not top, top after non-top,
        // two tops in a row.
        (Reading::Reverse, Sign::Neg) => {
            let after_empty = |d: usize| if d == top { 1 } else { 2 };
            let after_top = |d: usize| if d == top { 4 } else { 2 };
            let after_other = |d: usize| if d == top { 3 } else { 2 };
            (
                table(&[&after_empty, &after_top, &after_other, &after_top, &after_top]),
                vec![false, true, false, true, false],
            )
        }
        // States: empty, started, dead.
        (Reading::Direct, Sign::Nonneg) => {
            let from_empty = |d: usize| if d == 0 { 2 } else { 1 };
            let stay = |_: usize| 1;
            let dead = |_: usize| 2;
            (table(&[&from_empty, &stay, &dead]), vec![true, true, false])
        }
        // Marker, then a block not starting with top.
        // States: empty, marker, marker+block, dead.
        (Reading::Direct, Sign::Neg) => {
            let from_empty = |d: usize| if d == top { 1 } else { 3 };
            let after_marker = |d: usize| if d == top { 3 } else { 2 };
            let stay = |_: usize| 2;
            let dead = |_: usize| 3;
            (
                table(&[&from_empty, &after_marker, &stay, &dead]),
                vec![false, true, true, false],
            )
        }
    }
}

/// BFS over (state of a, state of b, tracker state); returns the index of
/// the first canonical word on which the outputs differ.
fn product_search(a: &Dfao, b: &Dfao, sign: Sign) -> Result<Option<i64>> {
    let ell = a.ell();
    let (track, accept) = canonical_tracker(a.reading(), sign, ell);
    type Node = (State, State, usize);
    let start: Node = (
        a.initial(sign).expect("side present"),
        b.initial(sign).expect("side present"),
        0,
    );
    let mut parent: HashMap<Node, Option<(Node, usize)>> = HashMap::from([(start, None)]);
    let mut queue = VecDeque::from([start]);
    while let Some(node) = queue.pop_front() {
        let (sa, sb, t) = node;
        if accept[t] && !same_output(a, sa, b, sb, sign) {
            let mut fed = Vec::new();
            let mut cur = node;
            while let Some((prev, d)) = parent[&cur] {
                fed.push(d);
                cur = prev;
            }
            fed.reverse();
            if a.reading() == Reading::Reverse {
                fed.reverse();
            }
            let ds = DigitString::new(ell, sign == Sign::Neg, fed)?;
            return Ok(Some(ds.to_int()?));
        }
        for d in 0..ell {
            let next = (a.step(sa, d), b.step(sb, d), track[t][d]);
            if let std::collections::hash_map::Entry::Vacant(e) = parent.entry(next) {
                e.insert(Some((node, d)));
                queue.push_back(next);
            }
        }
    }
    Ok(None)
}
