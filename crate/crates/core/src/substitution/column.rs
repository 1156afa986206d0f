use std::collections::BTreeSet;
use std::fmt;

use super::alphabet::{Alphabet, Letter};

/// A total map from the alphabet to itself, stored as a table of image
/// ordinals. Column maps of a substitution, their products, and the constant
/// projections are all `ColumnMap`s.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ColumnMap {
    table: Box<[Letter]>,
}

impl ColumnMap {
    /// Builds a map from its table. Panics if some image is not a valid
    /// ordinal for an alphabet of `table.len()` letters.
    pub fn new(table: Vec<Letter>) -> Self {
        let n = table.len();
        assert!(
            table.iter().all(|&b| (b as usize) < n),
            "column map image outside alphabet"
        );
        ColumnMap {
            table: table.into_boxed_slice(),
        }
    }

    pub fn identity(size: usize) -> Self {
        ColumnMap::new((0..size).map(|i| i as Letter).collect())
    }

    /// The projection π_a sending every letter to `a`.
    pub fn constant(size: usize, a: Letter) -> Self {
        ColumnMap::new(vec![a; size])
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    pub fn table(&self) -> &[Letter] {
        &self.table
    }

    #[inline]
    pub fn apply(&self, a: Letter) -> Letter {
        self.table[a as usize]
    }

    /// `self ∘ other`: first `other`, then `self`.
    pub fn compose(&self, other: &ColumnMap) -> ColumnMap {
        debug_assert_eq!(self.len(), other.len());
        ColumnMap {
            table: other.table.iter().map(|&b| self.apply(b)).collect(),
        }
    }

    /// `self ∘ self ∘ … ∘ self` (k factors); `pow(0)` is the identity.
    pub fn pow(&self, k: usize) -> ColumnMap {
        let mut acc = ColumnMap::identity(self.len());
        for _ in 0..k {
            acc = acc.compose(self);
        }
        acc
    }

    pub fn is_identity(&self) -> bool {
        self.table.iter().enumerate().all(|(i, &b)| i == b as usize)
    }

    pub fn is_idempotent(&self) -> bool {
        self.table.iter().all(|&b| self.apply(b) == b)
    }

    pub fn is_bijection(&self) -> bool {
        self.rank() == self.len()
    }

    pub fn image(&self) -> BTreeSet<Letter> {
        self.table.iter().copied().collect()
    }

    /// Image cardinality.
    pub fn rank(&self) -> usize {
        self.image().len()
    }

    /// `Some(a)` iff this is the projection π_a.
    pub fn as_constant(&self) -> Option<Letter> {
        let first = *self.table.first()?;
        self.table.iter().all(|&b| b == first).then_some(first)
    }

    /// Constant value when restricted to `letters`, if any.
    pub fn constant_on(&self, letters: &[Letter]) -> Option<Letter> {
        let first = self.apply(*letters.first()?);
        letters
            .iter()
            .all(|&a| self.apply(a) == first)
            .then_some(first)
    }

    pub fn restrict(&self, letters: &[Letter]) -> Vec<Letter> {
        letters.iter().map(|&a| self.apply(a)).collect()
    }

    pub fn inverse(&self) -> Option<ColumnMap> {
        if !self.is_bijection() {
            return None;
        }
        let mut inv = vec![0; self.len()];
        for (i, &b) in self.table.iter().enumerate() {
            inv[b as usize] = i as Letter;
        }
        Some(ColumnMap::new(inv))
    }

    /// Vector notation, e.g. `(a,b,b)^T`.
    pub fn render(&self, alphabet: &Alphabet) -> String {
        let entries: Vec<&str> = self.table.iter().map(|&b| alphabet.symbol(b)).collect();
        format!("({})^T", entries.join(","))
    }
}

impl fmt::Debug for ColumnMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", &self.table[..])
    }
}
