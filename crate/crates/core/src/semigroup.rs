//! Transformation semigroups generated by column maps.
//!
//! Products of exactly k columns form the layer P_k, with P_0 = {id} and
//! P_{k+1} = P_k ∘ {θ_0, …, θ_{ℓ-1}}. Since each layer is determined by the
//! previous one, the layer sequence is eventually periodic, and every question
//! about the monoids ⟨id, θ^n_i⟩ = {id} ∪ ⋃_j P_{jn} reduces to its threshold
//! and period.

use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::substitution::{ColumnMap, Substitution};

/// The semigroup generated by a set of maps under composition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemigroupClosure {
    elements: Vec<ColumnMap>,
    generators: Vec<ColumnMap>,
    contains_id: bool,
}

impl SemigroupClosure {
    pub fn new(generators: &[ColumnMap]) -> Self {
        Self::within(generators, &Budget::uniform(usize::MAX)).expect("unbounded closure")
    }

    /// Worklist saturation under right multiplication by the generators.
    pub fn within(generators: &[ColumnMap], budget: &Budget) -> Result<Self> {
        assert!(!generators.is_empty(), "closure of an empty generator set");
        let mut seen: BTreeSet<ColumnMap> = BTreeSet::new();
        let mut queue: VecDeque<ColumnMap> = VecDeque::new();
        for g in generators {
            if seen.insert(g.clone()) {
                queue.push_back(g.clone());
            }
        }
        while let Some(x) = queue.pop_front() {
            for g in generators {
                let y = x.compose(g);
                if !seen.contains(&y) {
                    if seen.len() >= budget.states {
                        return Err(Error::StateExplosion {
                            size: seen.len() + 1,
                            budget: budget.states,
                        });
                    }
                    seen.insert(y.clone());
                    queue.push_back(y);
                }
            }
        }
        let contains_id = seen.iter().any(ColumnMap::is_identity);
        Ok(SemigroupClosure {
            elements: seen.into_iter().collect(),
            generators: generators.to_vec(),
            contains_id,
        })
    }

    /// Elements in ordinal-lexicographic order.
    pub fn elements(&self) -> &[ColumnMap] {
        &self.elements
    }

    pub fn generators(&self) -> &[ColumnMap] {
        &self.generators
    }

    pub fn contains_id(&self) -> bool {
        self.contains_id
    }

    pub fn contains(&self, m: &ColumnMap) -> bool {
        self.elements.binary_search(m).is_ok()
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn min_rank(&self) -> usize {
        min_rank(&self.elements)
    }
}

/// Smallest image size among `maps`.
pub fn min_rank(maps: &[ColumnMap]) -> usize {
    maps.iter().map(ColumnMap::rank).min().unwrap_or(0)
}

/// The layers P_k of a generator set together with the threshold t and
/// period q of the layer sequence: P_{k+q} = P_k for all k ≥ t.
#[derive(Debug, Clone)]
pub struct GradedReachability {
    layers: Vec<BTreeSet<ColumnMap>>,
    threshold: usize,
    period: usize,
}

/// The lengths k ≥ 0 at which a map is a product of exactly k generators,
/// as an eventually periodic set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LengthSet {
    pub threshold: usize,
    pub period: usize,
    /// Members below the threshold.
    pub initial: Vec<usize>,
    /// Offsets r in 0..period such that t + r + jq is a member for all j ≥ 0.
    pub residues: Vec<usize>,
}

impl LengthSet {
    pub fn contains(&self, k: usize) -> bool {
        if k < self.threshold {
            self.initial.contains(&k)
        } else {
            self.residues.contains(&((k - self.threshold) % self.period))
        }
    }

    pub fn is_empty(&self) -> bool {
        self.initial.is_empty() && self.residues.is_empty()
    }

    /// True iff every n ≥ 1 has a positive multiple in the set. A multiple of
    /// q·n at or past the threshold lands on the offset of -t mod q, so that
    /// single offset decides it.
    pub fn meets_every_modulus(&self) -> bool {
        self.residues
            .contains(&((self.period - self.threshold % self.period) % self.period))
    }
}

impl GradedReachability {
    pub fn new(generators: &[ColumnMap]) -> Self {
        Self::within(generators, &Budget::uniform(usize::MAX)).expect("unbounded layers")
    }

    pub fn within(generators: &[ColumnMap], budget: &Budget) -> Result<Self> {
        assert!(!generators.is_empty(), "no generators");
        let size = generators[0].len();
        let mut layers = vec![BTreeSet::from([ColumnMap::identity(size)])];
        let mut index: HashMap<BTreeSet<ColumnMap>, usize> = HashMap::new();
        index.insert(layers[0].clone(), 0);
        let mut stored = 1usize;
        loop {
            let prev = layers.last().expect("non-empty");
            let next: BTreeSet<ColumnMap> = prev
                .iter()
                .flat_map(|p| generators.iter().map(move |g| p.compose(g)))
                .collect();
            if let Some(&t) = index.get(&next) {
                let period = layers.len() - t;
                return Ok(GradedReachability {
                    layers,
                    threshold: t,
                    period,
                });
            }
            stored += next.len();
            if stored > budget.states {
                return Err(Error::StateExplosion {
                    size: stored,
                    budget: budget.states,
                });
            }
            index.insert(next.clone(), layers.len());
            layers.push(next);
        }
    }

    pub fn of(sub: &Substitution) -> Self {
        Self::new(&sub.columns())
    }

    pub fn threshold(&self) -> usize {
        self.threshold
    }

    pub fn period(&self) -> usize {
        self.period
    }

    /// P_k.
    pub fn layer(&self, k: usize) -> &BTreeSet<ColumnMap> {
        if k < self.threshold {
            &self.layers[k]
        } else {
            &self.layers[self.threshold + (k - self.threshold) % self.period]
        }
    }

    /// Every map occurring in some layer P_k with k ≥ 1.
    pub fn elements(&self) -> BTreeSet<ColumnMap> {
        self.layers[1..].iter().flatten().cloned().collect()
    }

    pub fn lengths(&self, m: &ColumnMap) -> LengthSet {
        let t = self.threshold;
        LengthSet {
            threshold: t,
            period: self.period,
            initial: (0..t).filter(|&k| self.layers[k].contains(m)).collect(),
            residues: (0..self.period)
                .filter(|&r| self.layers[t + r].contains(m))
                .collect(),
        }
    }

    /// ⟨id, θ^n_i⟩ = {id} ∪ ⋃_{j ≥ 1} P_{jn}.
    pub fn generated_monoid(&self, n: usize) -> BTreeSet<ColumnMap> {
        assert!(n >= 1, "exponent must be positive");
        let mut out = self.layers[0].clone();
        let mut j = 1;
        while j * n < self.threshold {
            out.extend(self.layers[j * n].iter().cloned());
            j += 1;
        }
        // jn mod q cycles with period dividing q.
        for _ in 0..self.period {
            out.extend(self.layer(j * n).iter().cloned());
            j += 1;
        }
        out
    }

    /// The least k ≥ 1 that is a multiple of the period and at least the
    /// threshold; P_k is the non-trivial part of the structure semigroup.
    pub fn stable_index(&self) -> usize {
        let floor = self.threshold.max(1);
        floor.div_ceil(self.period) * self.period
    }
}

/// S_θ together with the least n such that ⟨id, θ^n_i⟩ = S_θ.
#[derive(Debug, Clone)]
pub struct StructureSemigroup {
    pub elements: Vec<ColumnMap>,
    pub stabilizing_exponent: usize,
    /// Failures of the divisibility chain or of stability under multiples.
    /// Empty on every input seen so far.
    pub diagnostics: Vec<String>,
    pub graded: GradedReachability,
}

impl StructureSemigroup {
    pub fn contains(&self, m: &ColumnMap) -> bool {
        self.elements.binary_search(m).is_ok()
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn is_group(&self) -> bool {
        self.elements
            .iter()
            .all(|m| m.inverse().is_some_and(|inv| self.contains(&inv)))
    }
}

pub fn structure_semigroup(sub: &Substitution) -> StructureSemigroup {
    structure_semigroup_within(sub, &Budget::uniform(usize::MAX)).expect("unbounded semigroup")
}

/// Computes S_θ = ⋂_n ⟨id, θ^n_i⟩. Works for any substitution; the
/// stabilizing exponent is relative to the substitution given.
pub fn structure_semigroup_within(sub: &Substitution, budget: &Budget) -> Result<StructureSemigroup> {
    let graded = GradedReachability::within(&sub.columns(), budget)?;
    let k_star = graded.stable_index();
    let mut elements: BTreeSet<ColumnMap> = graded.layers[0].clone();
    elements.extend(graded.layer(k_star).iter().cloned());
    debug_assert!(graded
        .elements()
        .iter()
        .all(|m| elements.contains(m) == graded.lengths(m).meets_every_modulus()
            || m.is_identity()));

    let mut diagnostics = Vec::new();
    let mut monoids: Vec<BTreeSet<ColumnMap>> = vec![BTreeSet::new()];
    let mut stabilizing = k_star;
    for n in 1..=k_star {
        let m_n = graded.generated_monoid(n);
        for d in (1..n).filter(|d| n % d == 0) {
            if !m_n.is_subset(&monoids[d]) {
                diagnostics.push(format!(
                    "monoid for exponent {n} is not contained in the one for {d}"
                ));
            }
        }
        let done = m_n == elements;
        monoids.push(m_n);
        if done {
            stabilizing = n;
            break;
        }
    }
    for k in 2..=6 {
        if graded.generated_monoid(k * stabilizing) != elements {
            diagnostics.push(format!(
                "monoid for exponent {} differs from S_θ",
                k * stabilizing
            ));
        }
    }
    Ok(StructureSemigroup {
        elements: elements.into_iter().collect(),
        stabilizing_exponent: stabilizing,
        diagnostics,
        graded,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::*;

    fn maps(rows: &[&[u8]]) -> BTreeSet<ColumnMap> {
        rows.iter().map(|r| ColumnMap::new(r.to_vec())).collect()
    }

    /// All products of exactly k columns, by enumerating digit words.
    fn words_of_length(sub: &Substitution, k: usize) -> BTreeSet<ColumnMap> {
        let cols = sub.columns();
        let ell = sub.length();
        let mut out = BTreeSet::new();
        for code in 0..ell.pow(k as u32) {
            let mut m = ColumnMap::identity(sub.alphabet().len());
            let mut c = code;
            for _ in 0..k {
                m = m.compose(&cols[c % ell]);
                c /= ell;
            }
            out.insert(m);
        }
        out
    }

    #[test]
    fn period_doubling_structure() {
        let pd = period_doubling();
        let s = structure_semigroup(&pd);
        let expected = maps(&[&[0, 1], &[0, 0], &[1, 1]]);
        assert_eq!(s.elements.iter().cloned().collect::<BTreeSet<_>>(), expected);
        assert_eq!(s.stabilizing_exponent, 2);
        assert!(s.diagnostics.is_empty());
        assert_eq!(
            s.graded.generated_monoid(1),
            maps(&[&[0, 1], &[0, 0], &[1, 1], &[1, 0]])
        );

        let (pd2, _) = pd.simplify().unwrap();
        let s2 = structure_semigroup(&pd2);
        assert_eq!(s2.elements, s.elements);
        assert_eq!(s2.stabilizing_exponent, 1);
    }

    /// {id} ∪ all products of jn columns, jn ≤ max_len, by enumeration.
    fn enumerated_monoid(sub: &Substitution, n: usize, max_len: usize) -> BTreeSet<ColumnMap> {
        let mut out = BTreeSet::from([ColumnMap::identity(sub.alphabet().len())]);
        for k in (n..=max_len).step_by(n) {
            out.extend(words_of_length(sub, k));
        }
        out
    }

    #[test]
    fn bigdiag_structure_drops_rotations() {
        let bd = bigdiag();
        let s = structure_semigroup(&bd);
        let elements: BTreeSet<ColumnMap> = s.elements.iter().cloned().collect();
        let rotation = ColumnMap::new(vec![2, 0, 1]);
        let m: Vec<BTreeSet<ColumnMap>> = (1..=5).map(|n| enumerated_monoid(&bd, n, 10)).collect();
        let meet = m.iter().skip(1).fold(m[0].clone(), |acc, x| &acc & x);
        assert_eq!(elements, meet);
        assert!(m[0].contains(&rotation) && m[1].contains(&rotation));
        assert!(!m[2].contains(&rotation));
        assert!(!elements.contains(&rotation));
        assert_ne!(m[0], elements);
        assert_ne!(m[1], elements);
        assert_eq!(m[2], elements);
        assert_eq!(s.stabilizing_exponent, 3);
        assert_eq!(s.graded.generated_monoid(1), m[0]);
        assert_eq!(s.graded.generated_monoid(3), m[2]);
        assert!(s.diagnostics.is_empty());
    }

    #[test]
    fn bigdiag_rotation_lengths() {
        let bd = bigdiag();
        let g = GradedReachability::of(&bd);
        let rotation = ColumnMap::new(vec![2, 0, 1]);
        let lengths = g.lengths(&rotation);
        assert!(!lengths.meets_every_modulus());
        for k in 1..=10 {
            assert_eq!(lengths.contains(k), words_of_length(&bd, k).contains(&rotation), "k = {k}");
        }
        assert!((1..40).all(|k| lengths.contains(k) == (k % 3 == 1)));
    }

    #[test]
    fn thue_morse_structure_is_group() {
        let s = structure_semigroup(&thue_morse());
        assert!(s.is_group());
        assert!(s.contains(&ColumnMap::identity(2)));
    }

    #[test]
    fn layers_match_word_enumeration() {
        for sub in [period_doubling(), bigdiag(), thue_morse(), height_two()] {
            let g = GradedReachability::of(&sub);
            for k in 0..=6 {
                assert_eq!(g.layer(k), &words_of_length(&sub, k), "k = {k}");
            }
        }
    }

    #[test]
    fn id_has_length_zero() {
        let g = GradedReachability::of(&period_doubling());
        assert!(g.lengths(&ColumnMap::identity(2)).contains(0));
        let constant = ColumnMap::new(vec![0, 0]);
        let lengths = g.lengths(&constant);
        assert!((1..30).all(|k| lengths.contains(k)));
    }

    #[test]
    fn closures() {
        let pd = SemigroupClosure::new(&period_doubling().columns());
        assert_eq!(
            pd.elements().iter().cloned().collect::<BTreeSet<_>>(),
            maps(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]])
        );
        assert!(pd.contains_id());
        assert_eq!(pd.min_rank(), 1);

        let id = SemigroupClosure::new(&[ColumnMap::identity(3)]);
        assert_eq!(id.len(), 1);

        assert_eq!(SemigroupClosure::new(&bigdiag().columns()).min_rank(), 1);
        assert_eq!(SemigroupClosure::new(&thue_morse().columns()).min_rank(), 2);
    }

    #[test]
    fn closure_is_idempotent() {
        for sub in [period_doubling(), bigdiag(), thue_morse()] {
            let c = SemigroupClosure::new(&sub.columns());
            let again = SemigroupClosure::new(c.elements());
            assert_eq!(again.elements(), c.elements());
        }
    }

    #[test]
    fn structure_semigroup_is_power_invariant() {
        for sub in [period_doubling(), bigdiag(), thue_morse()] {
            let s = structure_semigroup(&sub);
            for k in 2..=4 {
                let sk = structure_semigroup(&sub.power(k).unwrap());
                assert_eq!(sk.elements, s.elements, "k = {k}");
            }
            for n in 1..=6 {
                let m_n = s.graded.generated_monoid(n);
                assert!(s.elements.iter().all(|m| m_n.contains(m)));
            }
        }
    }

    #[test]
    fn min_rank_is_power_invariant() {
        for sub in [period_doubling(), bigdiag(), thue_morse()] {
            let r = SemigroupClosure::new(&sub.columns()).min_rank();
            for k in 2..=4 {
                let rk = SemigroupClosure::new(&sub.power(k).unwrap().columns()).min_rank();
                assert_eq!(r, rk);
            }
        }
    }

    #[test]
    fn budgets() {
        assert!(matches!(
            SemigroupClosure::within(&bigdiag().columns(), &Budget::uniform(3)),
            Err(Error::StateExplosion { .. })
        ));
        assert!(matches!(
            structure_semigroup_within(&bigdiag(), &Budget::uniform(3)),
            Err(Error::StateExplosion { .. })
        ));
    }
}
