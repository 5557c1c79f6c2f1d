use std::collections::BTreeMap;
use std::sync::Arc;

use crate::complex::{Simplex, SimplicialComplex, SimplicialMap, Vertex};
use crate::error::{Error, Result};

/// First `(k, σ)` with `σ` a simplex of at most `k + 1` vertices whose image
/// is not a simplex of `chain[k]`, for `k < chain.len()`.
pub fn skeleton_violation<V: Vertex, W: Vertex>(
    h: &SimplicialMap<V, W>,
    chain: &[SimplicialComplex<W>],
) -> Option<(usize, Simplex<V>)> {
    for sigma in h.source().iter() {
        let image = h.image(sigma);
        for (k, s) in chain.iter().enumerate().skip(sigma.dim()) {
            if !s.contains(&image) {
                return Some((k, sigma.clone()));
            }
        }
    }
    None
}

/// Checks that `q ∈ S_0` and `S_k ∗ q ⊆ S_{k+1}` for each consecutive pair.
pub fn check_cone_witness<W: Vertex>(chain: &[SimplicialComplex<W>], q: &W) -> Result<()> {
    if let Some(s0) = chain.first() {
        if !s0.contains_vertex(q) {
            return Err(Error::WitnessFailure(format!("{q} is not a vertex of S_0")));
        }
    }
    for (k, pair) in chain.windows(2).enumerate() {
        let coned = pair[0].join_vertex(q.clone());
        if let Some(s) = coned.first_missing_from(&pair[1]) {
            return Err(Error::WitnessFailure(format!(
                "cone of S_{k} with {q} contains {s}, missing from S_{}",
                k + 1
            )));
        }
    }
    Ok(())
}

/// Extends `g: Σ → T` over the cone `Σ ∗ v` by sending the apex to the
/// witness `q`.
///
/// `chain` is `S_0 ⊆ … ⊆ S_{n+1}` with `dim Σ ≤ n`; `g` must map `Σ^k` into
/// `S_k`. Since `q ∈ S_0` and `S_k ∗ q ⊆ S_{k+1}`, a new simplex `σ ∪ {v}`
/// with `σ ∈ Σ^{k-1}` lands in `S_{k-1} ∗ q ⊆ S_k`, so the result maps
/// `(Σ ∗ v)^k` into `S_k` for every `k ≤ n + 1`.
pub fn cone_extend<V: Vertex, W: Vertex>(
    g: &SimplicialMap<V, W>,
    apex: V,
    q: W,
    chain: &[SimplicialComplex<W>],
) -> Result<SimplicialMap<V, W>> {
    if chain.len() < 2 {
        return Err(Error::ArityError(format!("the chain needs at least S_0 and S_1, got {} complexes", chain.len())));
    }
    let n = chain.len() - 2;
    if let Some(d) = g.source().dim() {
        if d > n {
            return Err(Error::ArityError(format!("dim Σ = {d} exceeds n = {n}")));
        }
    }
    if g.source().contains_vertex(&apex) {
        return Err(Error::VertexClash(apex.to_string()));
    }
    for (k, s) in chain.iter().enumerate() {
        if let Some(bad) = s.first_missing_from(g.target()) {
            return Err(Error::SkeletonViolation(format!("S_{k} contains {bad}, which is not in the target")));
        }
        if k > 0 && !chain[k - 1].is_subcomplex_of(s) {
            return Err(Error::SkeletonViolation(format!("S_{} is not contained in S_{k}", k - 1)));
        }
    }
    if let Some((k, sigma)) = skeleton_violation(g, &chain[..=n]) {
        return Err(Error::SkeletonViolation(format!("g maps {sigma} outside S_{k}")));
    }
    check_cone_witness(chain, &q)?;
    let source = g.source().cone(apex.clone())?;
    let mut images: BTreeMap<V, W> = g.images().clone();
    images.insert(apex, q);
    SimplicialMap::new(Arc::new(source), g.target().clone(), images)
}
