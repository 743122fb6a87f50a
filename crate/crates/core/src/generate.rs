//! Random and exhaustive instance generation: posets, join-specifications
//! and standard closure families.

use std::collections::HashSet;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::cardinal::Cardinal;
use crate::closure::ClosureFamily;
use crate::joinspec::JoinSpec;
use crate::poset::Poset;
use crate::subset::Subset;
use crate::{Error, Result};

/// Largest size for which [`nonisomorphic_posets`] deduplicates.
pub const MAX_EXHAUSTIVE_SIZE: usize = 8;

/// `a`, `b`, ... for small carriers, `p0`, `p1`, ... otherwise.
pub fn default_labels(n: usize) -> Vec<String> {
    if n <= 26 {
        (0..n).map(|i| ((b'a' + i as u8) as char).to_string()).collect()
    } else {
        (0..n).map(|i| format!("p{i}")).collect()
    }
}

/// Transitive closure of a random DAG on `n` points where each pair `i < j`
/// is an edge with probability `density`.
pub fn random_poset<R: Rng + ?Sized>(rng: &mut R, n: usize, density: f64) -> Poset {
    let mut pairs = Vec::new();
    for j in 0..n {
        for i in 0..j {
            if rng.gen_bool(density.clamp(0.0, 1.0)) {
                pairs.push((i, j));
            }
        }
    }
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let pairs: Vec<_> = pairs.into_iter().map(|(i, j)| (perm[i], perm[j])).collect();
    Poset::new(default_labels(n), &pairs).expect("a DAG has no cycles")
}

/// Like [`random_poset`] with the density itself drawn uniformly, so that
/// repeated calls sweep from antichains to chains.
pub fn random_poset_sweep<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Poset {
    let density = rng.gen_range(0.0..=1.0);
    random_poset(rng, n, density)
}

/// One representative of every isomorphism class of `n`-element posets.
///
/// Every poset arises from a smaller one by adding a maximal element above
/// some down-set, so classes are grown one element at a time.
pub fn nonisomorphic_posets(n: usize) -> Result<Vec<Poset>> {
    if n > MAX_EXHAUSTIVE_SIZE {
        return Err(Error::TooManyElements(n));
    }
    let mut level = vec![Poset::new(Vec::<String>::new(), &[])?];
    for k in 1..=n {
        let labels = default_labels(k);
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for q in &level {
            for d in q.all_downsets(u64::MAX)? {
                let mut pairs = q.cover_pairs();
                pairs.extend(d.iter().map(|i| (i, k - 1)));
                let p = Poset::new(labels.clone(), &pairs)?;
                if seen.insert(p.canonical_key()) {
                    next.push(p);
                }
            }
        }
        level = next;
    }
    Ok(level)
}

/// Every isomorphism class with at most `max` elements, smallest first.
pub fn nonisomorphic_posets_upto(max: usize) -> Result<Vec<Poset>> {
    let mut out = Vec::new();
    for n in 1..=max {
        out.extend(nonisomorphic_posets(n)?);
    }
    Ok(out)
}

/// A join-specification containing each nontrivial member of `U_ω`
/// independently with probability `p`.
pub fn random_spec<R: Rng + ?Sized>(rng: &mut R, poset: Arc<Poset>, p: f64, limit: u64) -> Result<JoinSpec> {
    let all = JoinSpec::u_gamma(poset.clone(), Cardinal::Omega, limit)?;
    let chosen: Vec<Subset> = all.nontrivial().filter(|_| rng.gen_bool(p)).collect();
    JoinSpec::new(poset, chosen)
}

/// The standard closure family generated by a few random down-sets.
pub fn random_standard_family<R: Rng + ?Sized>(
    rng: &mut R,
    poset: Arc<Poset>,
    limit: u64,
) -> Result<ClosureFamily> {
    let downsets = poset.all_downsets(limit)?;
    let k = rng.gen_range(0..=downsets.len().min(6));
    let extra: Vec<Subset> = downsets.choose_multiple(rng, k).copied().collect();
    ClosureFamily::generated_by(poset, extra)
}

/// One join-specification per closure operator of the form `Γ_V`, namely the
/// largest one `U_{Γ_V}`, enumerated with NextClosure over the nontrivial
/// members of `U_ω`.
///
/// Everything that depends on `V` only through `Γ_V` can be checked on this
/// list instead of on every join-specification.
pub fn closed_specs(poset: Arc<Poset>, limit: u64) -> Result<Vec<JoinSpec>> {
    let items: Vec<Subset> = JoinSpec::u_gamma(poset.clone(), Cardinal::Omega, limit)?
        .nontrivial()
        .collect();
    if items.len() > 64 {
        return Err(Error::SizeGuard { limit: 64 });
    }
    let spec_of = |chosen: Subset| {
        JoinSpec::new(poset.clone(), chosen.iter().map(|i| items[i])).expect("members of U_ω")
    };
    let close = |chosen: Subset| -> Result<Subset> {
        let induced = spec_of(chosen).ideals(limit)?.induced_spec(limit)?;
        Ok((0..items.len()).filter(|&i| induced.contains(items[i])).collect())
    };
    let mut out = Vec::new();
    let mut a = close(Subset::EMPTY)?;
    out.push(spec_of(a));
    'next: loop {
        for i in (0..items.len()).rev() {
            if a.contains(i) {
                continue;
            }
            let below = Subset::full(i);
            let b = close(a.intersection(below).with(i))?;
            if b.intersection(below) == a.intersection(below) {
                a = b;
                out.push(spec_of(a));
                continue 'next;
            }
        }
        return Ok(out);
    }
}

/// Every join-specification on `poset`, refusing when `U_ω` has more than
/// `max_nontrivial` members of size at least two.
pub fn all_specs(poset: Arc<Poset>, max_nontrivial: usize, limit: u64) -> Result<Vec<JoinSpec>> {
    let items: Vec<Subset> = JoinSpec::u_gamma(poset.clone(), Cardinal::Omega, limit)?
        .nontrivial()
        .collect();
    if items.len() > max_nontrivial.min(24) {
        return Err(Error::SizeGuard {
            limit: 1 << max_nontrivial.min(24),
        });
    }
    Subset::full(items.len())
        .subsets()
        .map(|chosen| JoinSpec::new(poset.clone(), chosen.iter().map(|i| items[i])))
        .collect()
}
