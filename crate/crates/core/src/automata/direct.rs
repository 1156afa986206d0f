use super::{Dfao, DfaoParts, Reading};
use crate::error::{Error, Result};
use crate::substitution::Substitution;

/// Cobham's direct-reading machine: states are letters, δ(a, i) = θ_i(a),
/// outputs are the identity. Non-negative indices start at the right seed
/// letter, negative ones at the left seed letter.
///
/// The generated sequence is the fixed point only when the seed is fixed by
/// `sub` itself; with a seed of a higher power the negative side is off.
pub fn build_direct(sub: &Substitution) -> Result<Dfao> {
    let seed = sub.seed().ok_or(Error::SeedMissing)?;
    let alphabet = sub.alphabet();
    let columns = sub.columns();
    let identity: Vec<_> = alphabet.letters().collect();
    Dfao::new(DfaoParts {
        ell: sub.length(),
        delta: alphabet
            .letters()
            .map(|a| columns.iter().map(|c| c.apply(a) as usize).collect())
            .collect(),
        initial_nonneg: seed.right as usize,
        initial_neg: Some(seed.left as usize),
        output_nonneg: identity.clone(),
        output_neg: Some(identity),
        reading: Reading::Direct,
        names: alphabet.symbols().to_vec(),
        outputs: alphabet.clone(),
    })
}
