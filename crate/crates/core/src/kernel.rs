//! The ℓ-kernel {(u_{ℓ^e n + j})_n : e ≥ 0, 0 ≤ j < ℓ^e} of a fixed point.
//!
//! Symbolically, (u_{ℓ^e n + j})_n = s(u) with s = θ_{j_0} ∘ ⋯ ∘ θ_{j_{e-1}}
//! where j_0 … j_{e-1} are the base-ℓ digits of j, least significant first.
//! Two such maps give the same subsequence iff they agree on every letter
//! occurring in u.

use std::collections::{BTreeSet, HashSet};

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::oracle::Window;
use crate::substitution::{ColumnMap, Letter, Substitution};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// Indices n ≥ 0.
    OneSided,
    /// Indices n ∈ ℤ.
    TwoSided,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelElement {
    pub class_map: ColumnMap,
    /// (e, j): the element is (u_{ℓ^e n + j})_n.
    pub witness: (usize, u64),
    /// s(u_0) … s(u_15).
    pub sample: Vec<Letter>,
}

pub const SAMPLE_LEN: usize = 16;

pub fn enumerate_kernel(sub: &Substitution, side: Side) -> Result<Vec<KernelElement>> {
    enumerate_kernel_within(sub, side, &Budget::default())
}

/// Breadth-first search from id under s ↦ s ∘ θ_i, level by level with
/// offsets in increasing order, so each element carries its least witness.
/// Output is ordered by witness.
pub fn enumerate_kernel_within(
    sub: &Substitution,
    side: Side,
    budget: &Budget,
) -> Result<Vec<KernelElement>> {
    let seed = sub.fixed_seed()?;
    let letters = occurring_letters(sub, side)?;
    let ell = sub.length() as u64;
    let columns = sub.columns();
    let prefix = sub.fixed_point_window(-1, SAMPLE_LEN as i64 - 1)?;
    debug_assert_eq!(prefix.get(0), Some(seed.right));

    let id = ColumnMap::identity(sub.alphabet().len());
    let mut seen: HashSet<Vec<Letter>> = HashSet::from([id.restrict(&letters)]);
    let mut found = vec![(id.clone(), (0usize, 0u64))];
    let mut level = vec![(id, 0u64)];
    let mut e = 0usize;
    while !level.is_empty() {
        let scale = ell
            .checked_pow(e as u32)
            .ok_or(Error::Overflow { requested: u128::MAX, budget: budget.word_len })?;
        let mut next: Vec<(ColumnMap, u64)> = level
            .iter()
            .flat_map(|(s, j)| {
                columns
                    .iter()
                    .enumerate()
                    .map(move |(i, c)| (s.compose(c), j + i as u64 * scale))
            })
            .collect();
        next.sort_by_key(|&(_, j)| j);
        let mut kept = Vec::new();
        for (s, j) in next {
            if seen.insert(s.restrict(&letters)) {
                if found.len() >= budget.states {
                    return Err(Error::StateExplosion {
                        size: found.len() + 1,
                        budget: budget.states,
                    });
                }
                found.push((s.clone(), (e + 1, j)));
                kept.push((s, j));
            }
        }
        level = kept;
        e += 1;
    }
    Ok(found
        .into_iter()
        .map(|(class_map, witness)| KernelElement {
            sample: (0..SAMPLE_LEN as i64)
                .map(|n| class_map.apply(prefix.get(n).expect("in prefix")))
                .collect(),
            class_map,
            witness,
        })
        .collect())
}

/// Letters of u_n for n ≥ 0 (and n < 0 when two-sided): everything reachable
/// from the seed letters under the column maps.
pub fn occurring_letters(sub: &Substitution, side: Side) -> Result<Vec<Letter>> {
    let seed = sub.seed().ok_or(Error::SeedMissing)?;
    let mut start = vec![seed.right];
    if side == Side::TwoSided {
        start.push(seed.left);
    }
    let columns = sub.columns();
    let mut seen: BTreeSet<Letter> = start.iter().copied().collect();
    let mut stack = start;
    while let Some(a) = stack.pop() {
        for c in &columns {
            let b = c.apply(a);
            if seen.insert(b) {
                stack.push(b);
            }
        }
    }
    Ok(seen.into_iter().collect())
}

/// Result of extracting kernel subsequences directly from a window.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BruteKernel {
    pub count: usize,
    /// Least witness (e, j) of each distinct subsequence, with its content.
    pub representatives: Vec<((usize, u64), Vec<Letter>)>,
    /// The common index range n_lo..=n_hi compared.
    pub range: (i64, i64),
}

pub const MIN_SUBSEQUENCE_LEN: i64 = 4;

/// Counts distinct subsequences (u_{ℓ^e n + j}) for e ≤ e_max, compared on
/// the range of n for which every one of them lies inside the window. A
/// lower bound for the kernel size that grows to it with the window.
pub fn brute_force_kernel(w: &Window, ell: usize, e_max: usize) -> Result<BruteKernel> {
    let ell_i = ell as i64;
    let top = ell_i
        .checked_pow(e_max as u32)
        .filter(|&t| t <= w.len() as i64)
        .ok_or_else(|| Error::WindowTooShort(format!("ℓ^{e_max} exceeds the window length")))?;
    let mut n_lo = i64::MIN;
    let mut n_hi = i64::MAX;
    let mut scale = 1i64;
    for _ in 0..=e_max {
        n_lo = n_lo.max(div_ceil(w.lo(), scale));
        n_hi = n_hi.min((w.hi() + 1).div_euclid(scale) - 1);
        scale *= ell_i;
    }
    debug_assert_eq!(scale, top * ell_i);
    if n_hi - n_lo + 1 < MIN_SUBSEQUENCE_LEN {
        return Err(Error::WindowTooShort(format!(
            "depth {e_max} leaves {} common indices, need {MIN_SUBSEQUENCE_LEN}",
            (n_hi - n_lo + 1).max(0)
        )));
    }
    let mut seen: HashSet<Vec<Letter>> = HashSet::new();
    let mut representatives = Vec::new();
    let mut scale = 1i64;
    for e in 0..=e_max {
        for j in 0..scale {
            let sub: Vec<Letter> = (n_lo..=n_hi)
                .map(|n| w.get(scale * n + j).expect("inside common range"))
                .collect();
            if seen.insert(sub.clone()) {
                representatives.push(((e, j as u64), sub));
            }
        }
        scale *= ell_i;
    }
    Ok(BruteKernel {
        count: representatives.len(),
        representatives,
        range: (n_lo, n_hi),
    })
}

fn div_ceil(a: i64, b: i64) -> i64 {
    -((-a).div_euclid(b))
}
