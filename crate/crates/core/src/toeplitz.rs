//! Periodic and aperiodic indices of fixed points of substitutions with a
//! coincidence.
//!
//! With s_k the semigroup-automaton state after the k least significant
//! digits of n (continued with ℓ-1 for negative n), u_{mℓ^k + r} = s_k(u_m)
//! for every m ∈ ℤ, where r ≡ n (mod ℓ^k). So n ∈ Per_{ℓ^k} exactly when s_k
//! is constant on the letters of u, and since θ_0 and θ_{ℓ-1} are idempotent
//! the states stop changing after |n|_ℓ + 1 digits.

use std::collections::{BTreeSet, VecDeque};
use std::fmt::{self, Write as _};

use crate::automata::{build_reverse_semigroup_within, SemigroupAutomaton};
use crate::budget::Budget;
use crate::digits;
use crate::error::{Error, Result};
use crate::oracle::{self, Window};
use crate::substitution::{ColumnMap, Letter, Substitution};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    /// n ∈ Per_{ℓ^k}(u, letter) with k least.
    Periodic { k: usize, period: u64, letter: Letter },
    Aperiodic,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodicityVerdict {
    pub index: i64,
    pub status: Status,
    /// Labels reached at the decisive depth (the last depth tried for
    /// aperiodic indices): after the low digits of n, and after one further
    /// ℓ-1 marker digit.
    pub evidence: (ColumnMap, ColumnMap),
    /// True when the decisive depth is |n|_ℓ + 1 rather than at most |n|_ℓ.
    pub padded: bool,
}

impl PeriodicityVerdict {
    pub fn is_periodic(&self) -> bool {
        matches!(self.status, Status::Periodic { .. })
    }
}

/// A substitution vetted for the analysis, with its working power and
/// semigroup automaton.
#[derive(Debug, Clone)]
pub struct ToeplitzAnalysis {
    working: Substitution,
    exponent: usize,
    automaton: SemigroupAutomaton,
    column_number: usize,
    looks_aperiodic: bool,
}

impl ToeplitzAnalysis {
    pub fn new(sub: &Substitution) -> Result<Self> {
        Self::within(sub, &Budget::default())
    }

    /// Refuses one-letter alphabets, non-primitive substitutions, nontrivial
    /// height and column number above 1, in that order. The analysis runs on
    /// the simplified power of `sub`, so periods are powers of its length.
    pub fn within(sub: &Substitution, budget: &Budget) -> Result<Self> {
        if sub.alphabet().len() == 1 {
            return Err(Error::PeriodicSubstitution);
        }
        if !sub.is_primitive() {
            return Err(Error::NotPrimitive);
        }
        let column_number = sub.column_number()?;
        if column_number > 1 {
            return Err(Error::NotToeplitz(column_number));
        }
        sub.seed().ok_or(Error::SeedMissing)?;
        let looks_aperiodic = sub.looks_aperiodic()?;
        let (working, exponent) = sub.simplify_within(budget)?;
        let automaton = build_reverse_semigroup_within(&working, budget)?;
        Ok(ToeplitzAnalysis {
            working,
            exponent,
            automaton,
            column_number,
            looks_aperiodic,
        })
    }

    pub fn working(&self) -> &Substitution {
        &self.working
    }

    /// Exponent p with working = θ^p.
    pub fn exponent(&self) -> usize {
        self.exponent
    }

    pub fn ell(&self) -> usize {
        self.working.length()
    }

    pub fn automaton(&self) -> &SemigroupAutomaton {
        &self.automaton
    }

    pub fn column_number(&self) -> usize {
        self.column_number
    }

    /// Result of the aperiodicity heuristic (never trusted silently).
    pub fn looks_aperiodic(&self) -> bool {
        self.looks_aperiodic
    }

    pub fn letter(&self, n: i64) -> Result<Letter> {
        self.automaton.dfao.run(n)
    }

    pub fn decide_per(&self, n: i64) -> Result<PeriodicityVerdict> {
        self.decide_per_with_depth(n, 0)
    }

    /// Like [`Self::decide_per`] but tries `extra` further padding digits.
    pub fn decide_per_with_depth(&self, n: i64, extra: usize) -> Result<PeriodicityVerdict> {
        let ell = self.ell();
        let a = self.letter(n)?;
        let j = digits::digit_length(n, ell);
        let low = digits::low_digits(n, ell, j + 1 + extra);
        let dfao = &self.automaton.dfao;
        let marker = ell - 1;
        let target = ColumnMap::constant(self.working.alphabet().len(), a);
        let mut s = dfao.initial(crate::automata::Sign::Nonneg).expect("initial state");
        for k in 0..=j + 1 + extra {
            if k > 0 {
                s = dfao.step(s, low[k - 1]);
            }
            let pos = self.automaton.label(s);
            let neg = self.automaton.label(dfao.step(s, marker));
            if *pos == target && *neg == target {
                let period = (ell as u64).checked_pow(k as u32).ok_or(Error::Overflow {
                    requested: u128::MAX,
                    budget: u64::MAX as usize,
                })?;
                return Ok(PeriodicityVerdict {
                    index: n,
                    status: Status::Periodic { k, period, letter: a },
                    evidence: (pos.clone(), neg.clone()),
                    padded: k > j,
                });
            }
            if k == j + 1 + extra {
                return Ok(PeriodicityVerdict {
                    index: n,
                    status: Status::Aperiodic,
                    evidence: (pos.clone(), neg.clone()),
                    padded: true,
                });
            }
        }
        unreachable!("loop returns at its last depth")
    }

    pub fn range(&self, lo: i64, hi: i64) -> Result<Vec<PeriodicityVerdict>> {
        (lo..=hi).map(|n| self.decide_per(n)).collect()
    }

    pub fn aperiodic_in_range(&self, lo: i64, hi: i64) -> Result<Vec<i64>> {
        Ok(self
            .range(lo, hi)?
            .into_iter()
            .filter(|v| !v.is_periodic())
            .map(|v| v.index)
            .collect())
    }

    /// Whether the digit stream of n (low digits, then 0 or ℓ-1 forever)
    /// stays among states of rank at least 2. Checked on the reduced graph
    /// rather than through [`Self::decide_per`].
    pub fn stream_stays_in_reduced_graph(&self, n: i64, graph: &ReducedGraph) -> bool {
        let ell = self.ell();
        let j = digits::digit_length(n, ell);
        let fill = if n < 0 { ell - 1 } else { 0 };
        let low = digits::low_digits(n, ell, j);
        let mut s = graph.root;
        if !graph.contains(s) {
            return false;
        }
        // After the low digits, the fill digit loops; the walk is eventually
        // periodic within |states| further steps.
        let tail = std::iter::repeat_n(fill, self.automaton.dfao.len() + 1);
        for d in low.into_iter().chain(tail) {
            match graph.successor(s, d) {
                Some(t) => s = t,
                None => return false,
            }
        }
        true
    }

    pub fn reduced_graph(&self) -> ReducedGraph {
        self.reduced_graph_with(DEFAULT_CYCLE_LEN, DEFAULT_CYCLE_COUNT)
    }

    /// Drops every rank-1 state and every edge into one, then lists strongly
    /// connected components and labelled simple cycles of length at most
    /// `max_len` (at most `max_count` of them).
    pub fn reduced_graph_with(&self, max_len: usize, max_count: usize) -> ReducedGraph {
        let sa = &self.automaton;
        let dfao = &sa.dfao;
        let ell = self.ell();
        let keep: Vec<bool> = sa.labels.iter().map(|m| m.rank() >= 2).collect();
        let order: Vec<usize> = dfao.bfs_order().into_iter().filter(|&s| keep[s]).collect();
        let removed: Vec<usize> = dfao.bfs_order().into_iter().filter(|&s| !keep[s]).collect();
        let mut edges: Vec<(usize, usize, Vec<usize>)> = Vec::new();
        for &s in &order {
            for (t, ds) in dfao.grouped_edges(s) {
                if keep[t] {
                    edges.push((s, t, ds));
                }
            }
        }
        let root = dfao.initial(crate::automata::Sign::Nonneg).expect("initial state");
        let mut graph = ReducedGraph {
            ell,
            root,
            vertices: order,
            removed,
            edges,
            labels: sa.labels.clone(),
            names: dfao.names().to_vec(),
            components: Vec::new(),
            cycles: Vec::new(),
            truncated: false,
        };
        graph.components = graph.strongly_connected_components();
        let (cycles, truncated) = graph.simple_cycles(max_len, max_count);
        graph.cycles = cycles;
        graph.truncated = truncated;
        graph
    }

    /// Cross-checks verdicts against a window of the working fixed point.
    ///
    /// A periodic verdict with period ℓ^k must show one letter along
    /// n + mℓ^k over the ℓ^{k+3} indices centred at n, and two letters at
    /// every smaller depth; an aperiodic verdict must show two letters along
    /// n + mℓ^k for every k ≤ `max_k`. Indices the window cannot cover are
    /// listed as uncovered, not counted as agreeing.
    pub fn certify(&self, verdicts: &[PeriodicityVerdict], w: &Window, max_k: usize) -> Result<Certification> {
        let ell = self.ell() as u64;
        let mut cert = Certification::default();
        for v in verdicts {
            let n = v.index;
            cert.checked += 1;
            match v.status {
                Status::Periodic { k, period, letter } => {
                    let half = ell.saturating_pow(k as u32 + 3) as i64 / 2;
                    if !w.contains(n - half) || !w.contains(n + half) {
                        cert.uncovered.push(n);
                        continue;
                    }
                    let seen = oracle::sample_progression_between(w, n, period, n - half, n + half)?;
                    if seen != BTreeSet::from([letter]) {
                        cert.inconsistencies
                            .push(format!("{n}: periodic with period {period} but the window shows {seen:?}"));
                        continue;
                    }
                    let mut minimal = true;
                    for smaller in 0..k {
                        if !oracle::certifies_nonconstant(w, n, ell.pow(smaller as u32))? {
                            minimal = false;
                            cert.inconsistencies.push(format!(
                                "{n}: reported depth {k} but the window is constant at depth {smaller}"
                            ));
                        }
                    }
                    if minimal {
                        cert.consistent_periodic += 1;
                    }
                }
                Status::Aperiodic => {
                    let mut all = true;
                    for k in 0..=max_k {
                        let step = ell.saturating_pow(k as u32);
                        if !w.contains(n + step as i64) && !w.contains(n - step as i64) {
                            cert.uncovered.push(n);
                            all = false;
                            break;
                        }
                        if !oracle::certifies_nonconstant(w, n, step)? {
                            cert.inconsistencies
                                .push(format!("{n}: aperiodic but constant along step {step} in the window"));
                            all = false;
                            break;
                        }
                    }
                    if all {
                        cert.certified_aperiodic += 1;
                    }
                }
            }
        }
        Ok(cert)
    }

    /// Generations of the working substitution needed to certify indices in
    /// [lo, hi] up to depth `max_k` with [`Self::certify`].
    pub fn certification_generations(&self, verdicts: &[PeriodicityVerdict], max_k: usize) -> usize {
        let ell = self.ell() as u128;
        let mut need: u128 = 1;
        for v in verdicts {
            let k = match v.status {
                Status::Periodic { k, .. } => k + 3,
                Status::Aperiodic => max_k + 1,
            };
            let reach = v.index.unsigned_abs() as u128 + ell.saturating_pow(k as u32) / 2 + 1;
            need = need.max(reach);
        }
        let mut g = 1;
        while ell.saturating_pow(g as u32) < need {
            g += 1;
        }
        g
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Certification {
    pub checked: usize,
    /// Aperiodic verdicts with two letters observed at every tested step.
    pub certified_aperiodic: usize,
    /// Periodic verdicts the window agrees with (evidence, not proof).
    pub consistent_periodic: usize,
    pub inconsistencies: Vec<String>,
    pub uncovered: Vec<i64>,
}

impl Certification {
    pub fn is_clean(&self) -> bool {
        self.inconsistencies.is_empty() && self.uncovered.is_empty()
    }
}

pub const DEFAULT_CYCLE_LEN: usize = 12;
pub const DEFAULT_CYCLE_COUNT: usize = 10_000;

/// ℓ-adic integer spelled by a digit stream (least significant first).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Address {
    /// Stream eventually 0 (n ≥ 0) or eventually ℓ-1 (n < 0).
    Integer(i128),
    /// Any other eventually periodic stream: the rational num/den in ℤ_ℓ.
    Rational { num: i128, den: i128 },
    TooLarge,
}

impl fmt::Display for Address {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Address::Integer(n) => write!(f, "{n}"),
            Address::Rational { num, den } => write!(f, "{num}/{den}"),
            Address::TooLarge => f.write_str("out of range"),
        }
    }
}

/// Value of prefix·cycle^∞ with both parts read least significant first.
pub fn address(ell: usize, prefix: &[usize], cycle: &[usize]) -> Address {
    fn value(ell: i128, ds: &[usize]) -> Option<i128> {
        ds.iter().rev().try_fold(0i128, |acc, &d| acc.checked_mul(ell)?.checked_add(d as i128))
    }
    let l = ell as i128;
    let go = || -> Option<Address> {
        let p = value(l, prefix)?;
        let scale = l.checked_pow(prefix.len() as u32)?;
        if cycle.iter().all(|&d| d == 0) {
            return Some(Address::Integer(p));
        }
        if cycle.iter().all(|&d| d == ell - 1) {
            return Some(Address::Integer(p.checked_sub(scale)?));
        }
        let c = value(l, cycle)?;
        let den = 1i128.checked_sub(l.checked_pow(cycle.len() as u32)?)?;
        let num = p.checked_mul(den)?.checked_add(scale.checked_mul(c)?)?;
        let g = gcd_i128(num, den);
        let (num, den) = (num / g, den / g);
        Some(if den < 0 {
            Address::Rational { num: -num, den: -den }
        } else {
            Address::Rational { num, den }
        })
    };
    go().unwrap_or(Address::TooLarge)
}

fn gcd_i128(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.max(1)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cycle {
    /// Vertices in order, starting at the vertex nearest the root.
    pub states: Vec<usize>,
    /// digits[i] labels the edge from states[i] to states[i+1] (cyclically).
    pub digits: Vec<usize>,
    /// Least (shortest, then lexicographic) digit path from the root to the
    /// first vertex.
    pub prefix: Vec<usize>,
    pub address: Address,
}

/// The semigroup automaton with its 1-vertices and the edges into them
/// removed.
#[derive(Debug, Clone)]
pub struct ReducedGraph {
    pub ell: usize,
    pub root: usize,
    /// Surviving states, in BFS order of the full machine.
    pub vertices: Vec<usize>,
    pub removed: Vec<usize>,
    /// (source, target, digits), digits ascending.
    pub edges: Vec<(usize, usize, Vec<usize>)>,
    pub labels: Vec<ColumnMap>,
    pub names: Vec<String>,
    pub components: Vec<Vec<usize>>,
    pub cycles: Vec<Cycle>,
    /// True when the cycle listing hit its count limit.
    pub truncated: bool,
}

impl ReducedGraph {
    pub fn contains(&self, s: usize) -> bool {
        self.vertices.contains(&s)
    }

    pub fn successor(&self, s: usize, digit: usize) -> Option<usize> {
        self.edges
            .iter()
            .find(|(src, _, ds)| *src == s && ds.contains(&digit))
            .map(|&(_, t, _)| t)
    }

    fn out_edges(&self, s: usize) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges
            .iter()
            .filter(move |(src, _, _)| *src == s)
            .flat_map(|(_, t, ds)| ds.iter().map(move |&d| (d, *t)))
    }

    /// Kosaraju, components listed in order of their first vertex.
    fn strongly_connected_components(&self) -> Vec<Vec<usize>> {
        let n = self.labels.len();
        let mut finished = Vec::new();
        let mut visited = vec![false; n];
        for &v in &self.vertices {
            if visited[v] {
                continue;
            }
            visited[v] = true;
            let mut stack = vec![(v, self.succ_list(v), 0usize)];
            while let Some((u, succ, i)) = stack.last_mut() {
                if *i < succ.len() {
                    let w = succ[*i];
                    *i += 1;
                    if !visited[w] {
                        visited[w] = true;
                        let ws = self.succ_list(w);
                        stack.push((w, ws, 0));
                    }
                } else {
                    finished.push(*u);
                    stack.pop();
                }
            }
        }
        let mut comp = vec![usize::MAX; n];
        let mut components: Vec<Vec<usize>> = Vec::new();
        for &v in finished.iter().rev() {
            if comp[v] != usize::MAX {
                continue;
            }
            let id = components.len();
            let mut members = vec![v];
            comp[v] = id;
            let mut stack = vec![v];
            while let Some(u) = stack.pop() {
                for (src, t, _) in &self.edges {
                    if *t == u && comp[*src] == usize::MAX {
                        comp[*src] = id;
                        members.push(*src);
                        stack.push(*src);
                    }
                }
            }
            components.push(members);
        }
        let pos = |s: usize| self.vertices.iter().position(|&v| v == s).expect("vertex");
        for c in &mut components {
            c.sort_by_key(|&s| pos(s));
        }
        components.sort_by_key(|c| pos(c[0]));
        components
    }

    fn succ_list(&self, s: usize) -> Vec<usize> {
        self.edges
            .iter()
            .filter(|(src, _, _)| *src == s)
            .map(|&(_, t, _)| t)
            .collect()
    }

    /// Least digit paths from the root to every reachable vertex.
    fn root_paths(&self) -> Vec<Option<Vec<usize>>> {
        let mut paths: Vec<Option<Vec<usize>>> = vec![None; self.labels.len()];
        if !self.contains(self.root) {
            return paths;
        }
        paths[self.root] = Some(Vec::new());
        let mut queue = VecDeque::from([self.root]);
        while let Some(s) = queue.pop_front() {
            let mut out: Vec<(usize, usize)> = self.out_edges(s).collect();
            out.sort();
            for (d, t) in out {
                if paths[t].is_none() {
                    let mut p = paths[s].clone().expect("visited");
                    p.push(d);
                    paths[t] = Some(p);
                    queue.push_back(t);
                }
            }
        }
        paths
    }

    /// Labelled simple cycles of length ≤ `max_len`, each found once from its
    /// least vertex (in BFS rank) and then rotated to start at the vertex
    /// nearest the root.
    fn simple_cycles(&self, max_len: usize, max_count: usize) -> (Vec<Cycle>, bool) {
        let rank = |s: usize| self.vertices.iter().position(|&v| v == s).expect("vertex");
        let paths = self.root_paths();
        let mut raw: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
        let mut truncated = false;
        for &start in &self.vertices {
            let r0 = rank(start);
            let mut states = vec![start];
            let mut digits: Vec<usize> = Vec::new();
            let mut iters: Vec<Vec<(usize, usize)>> = vec![self.out_edges(start).collect()];
            let mut next_idx = vec![0usize];
            while let Some(top) = iters.last() {
                let depth = iters.len() - 1;
                let i = next_idx[depth];
                if i >= top.len() {
                    iters.pop();
                    next_idx.pop();
                    states.pop();
                    digits.pop();
                    continue;
                }
                next_idx[depth] += 1;
                let (d, t) = top[i];
                if t == start {
                    let mut ds = digits.clone();
                    ds.push(d);
                    raw.push((states.clone(), ds));
                    if raw.len() >= max_count {
                        truncated = true;
                        break;
                    }
                } else if rank(t) > r0 && !states.contains(&t) && states.len() < max_len {
                    states.push(t);
                    digits.push(d);
                    iters.push(self.out_edges(t).collect());
                    next_idx.push(0);
                }
            }
            if truncated {
                break;
            }
        }
        let cycles = raw
            .into_iter()
            .map(|(states, digits)| {
                let nearest = (0..states.len())
                    .min_by_key(|&i| {
                        let p = paths[states[i]].as_ref();
                        (p.map_or(usize::MAX, Vec::len), p.cloned(), rank(states[i]))
                    })
                    .expect("non-empty cycle");
                let states: Vec<usize> =
                    states[nearest..].iter().chain(&states[..nearest]).copied().collect();
                let digits: Vec<usize> =
                    digits[nearest..].iter().chain(&digits[..nearest]).copied().collect();
                let prefix = paths[states[0]].clone().unwrap_or_default();
                let address = address(self.ell, &prefix, &digits);
                Cycle {
                    states,
                    digits,
                    prefix,
                    address,
                }
            })
            .collect();
        (cycles, truncated)
    }

    /// Integer addresses spelled by the listed cycles, sorted.
    pub fn integer_addresses(&self) -> Vec<i128> {
        let set: BTreeSet<i128> = self
            .cycles
            .iter()
            .filter_map(|c| match c.address {
                Address::Integer(n) => Some(n),
                _ => None,
            })
            .collect();
        set.into_iter().collect()
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph reduced {\n  rankdir=LR;\n  node [shape=circle];\n");
        for &v in &self.vertices {
            let _ = writeln!(out, "  q{v} [label=\"{}\"];", self.names[v]);
        }
        if self.contains(self.root) {
            let _ = writeln!(out, "  init [shape=point];\n  init -> q{};", self.root);
        }
        for (s, t, ds) in &self.edges {
            let label: Vec<String> = ds.iter().map(|d| d.to_string()).collect();
            let _ = writeln!(out, "  q{s} -> q{t} [label=\"{}\"];", label.join(","));
        }
        out.push_str("}\n");
        out
    }

    /// Plain listing of components and cycles.
    pub fn summary(&self) -> String {
        let mut out = format!(
            "vertices: {}, removed 1-vertices: {}, edges: {}\n",
            self.vertices.len(),
            self.removed.len(),
            self.edges.iter().map(|(_, _, ds)| ds.len()).sum::<usize>()
        );
        for (i, c) in self.components.iter().enumerate() {
            let names: Vec<&str> = c.iter().map(|&s| self.names[s].as_str()).collect();
            let _ = writeln!(out, "component {i}: {}", names.join(" "));
        }
        for c in &self.cycles {
            let names: Vec<&str> = c.states.iter().map(|&s| self.names[s].as_str()).collect();
            let digits: Vec<String> = c.digits.iter().map(|d| d.to_string()).collect();
            let prefix: Vec<String> = c.prefix.iter().map(|d| d.to_string()).collect();
            let _ = writeln!(
                out,
                "cycle {} digits [{}] prefix [{}] address {}",
                names.join(" -> "),
                digits.join(","),
                prefix.join(","),
                c.address
            );
        }
        if self.truncated {
            out.push_str("cycle listing truncated\n");
        }
        out
    }
}

/// Indices n in the window such that every index ≡ n (mod k) inside the
/// window carries `a`. Only a necessary condition for n ∈ Per_k(u, a).
pub fn per_k_window(w: &Window, k: u64, a: Letter) -> Result<Vec<i64>> {
    if k == 0 || (w.len() as u64) < 2 * k {
        return Err(Error::WindowTooShort(format!(
            "window of length {} does not cover two periods of {k}",
            w.len()
        )));
    }
    let k = k as i64;
    let mut out = Vec::new();
    for r in 0..k {
        let first = w.lo() + r;
        let all = (first..=w.hi())
            .step_by(k as usize)
            .all(|i| w.get(i) == Some(a));
        if all {
            out.extend((first..=w.hi()).step_by(k as usize));
        }
    }
    out.sort_unstable();
    Ok(out)
}

pub fn decide_per(sub: &Substitution, n: i64) -> Result<PeriodicityVerdict> {
    ToeplitzAnalysis::new(sub)?.decide_per(n)
}

pub fn aperiodic_in_range(sub: &Substitution, lo: i64, hi: i64) -> Result<Vec<i64>> {
    ToeplitzAnalysis::new(sub)?.aperiodic_in_range(lo, hi)
}

pub fn reduced_graph(sub: &Substitution) -> Result<ReducedGraph> {
    Ok(ToeplitzAnalysis::new(sub)?.reduced_graph())
}
