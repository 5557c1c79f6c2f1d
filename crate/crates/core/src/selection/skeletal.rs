use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use crate::complex::{Simplex, SimplicialMap};
use crate::cover::{delta_at_carrier, delta_subcomplex, CoverElement, CoverSequence, NerveVertex};
use crate::error::{Error, Result};
use crate::exec::Strategy;
use crate::label::Label;
use crate::realization::StarSet;

use super::CarrierMappingSequence;

/// A cover by open vertex stars together with a choice of target vertex per
/// element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexSelection {
    pub level: usize,
    pub cover: Vec<CoverElement>,
    pub vertex_map: BTreeMap<Label, Label>,
}

/// A point-set simplex mapped outside the table value of a carrier in its
/// kernel.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SkeletalWitness {
    pub table: usize,
    pub carrier: Vec<Label>,
    pub simplex: Vec<NerveVertex>,
    pub image: Vec<Label>,
}

/// `{st(v)}` over the table's stage, `st(v) ↦` the least vertex of
/// `table_0({v})`. A point in `st(v)` has a carrier containing `v`, so the
/// chosen vertex lies in its value as well.
pub fn vertex_selection(phi: &CarrierMappingSequence) -> Result<VertexSelection> {
    let level = phi.level();
    let mut cover = Vec::new();
    let mut vertex_map = BTreeMap::new();
    for v in phi.stage().complex().vertices() {
        let value = phi.value(0, &Simplex::vertex(v.clone()))?;
        let y = value.vertices().first().ok_or_else(|| Error::EmptyValue(v.to_string()))?;
        cover.push(CoverElement::new(v.clone(), StarSet::new(level, [v.clone()])?));
        vertex_map.insert(v.clone(), y.clone());
    }
    Ok(VertexSelection { level, cover, vertex_map })
}

/// First `(element, carrier)` with `⟨carrier⟩ ⊆ element` and the element's
/// vertex missing from `table_0(carrier)`.
pub fn vertex_selection_violation(
    sel: &VertexSelection,
    phi: &CarrierMappingSequence,
) -> Result<Option<(Label, Simplex<Label>)>> {
    if sel.level != phi.level() {
        return Err(Error::LevelMismatch { expected: phi.level(), found: sel.level });
    }
    for e in &sel.cover {
        let y = sel.vertex_map.get(&e.id).ok_or_else(|| Error::IncompleteMap(e.id.to_string()))?;
        for tau in phi.stage().complex().iter().filter(|tau| tau.meets(e.star.core())) {
            if !phi.value(0, tau)?.contains_vertex(y) {
                return Ok(Some((e.id.clone(), tau.clone())));
            }
        }
    }
    Ok(None)
}

/// The one-level sequence `(cover)` and `f_0: Δ(cover) → T`.
pub fn lift_vertex_selection(
    sel: &VertexSelection,
    phi: &CarrierMappingSequence,
) -> Result<(CoverSequence, SimplicialMap<NerveVertex, Label>)> {
    let cs = CoverSequence::at_working_level(phi.space().clone(), phi.level(), vec![sel.cover.clone()])?;
    let delta = delta_subcomplex(&cs, 1)?;
    let images = sel.vertex_map.iter().map(|(id, y)| (NerveVertex::new(id.clone(), 0), y.clone())).collect();
    let f = SimplicialMap::new(delta.complex, phi.target().clone(), images)?;
    Ok((cs, f))
}

fn check_shapes(
    f: &SimplicialMap<NerveVertex, Label>,
    cs: &CoverSequence,
    phi: &CarrierMappingSequence,
    levels: usize,
) -> Result<()> {
    if cs.working_level() != phi.level() {
        return Err(Error::LevelMismatch { expected: phi.level(), found: cs.working_level() });
    }
    if **f.target() != **phi.target() {
        return Err(Error::ArityError("the map's target differs from the tables' target".into()));
    }
    let delta = delta_subcomplex(cs, levels)?;
    if *delta.complex != **f.source() {
        return Err(Error::ArityError(format!(
            "the map is not defined on the one-per-level complex of the first {levels} levels"
        )));
    }
    Ok(())
}

/// Every carrier `τ`, every `σ` of `Δ` with `⟨τ⟩` in its kernel, and every
/// table index in `ks(σ)`: `f(σ) ∈ table_k(τ)`.
fn first_violation(
    f: &SimplicialMap<NerveVertex, Label>,
    cs: &CoverSequence,
    phi: &CarrierMappingSequence,
    kappa: usize,
    ks: impl Fn(&Simplex<NerveVertex>) -> std::ops::RangeInclusive<usize> + Sync + Send,
    strategy: Strategy,
) -> Result<Option<SkeletalWitness>> {
    let carriers: Vec<&Simplex<Label>> = cs.stage().complex().iter().collect();
    let found = strategy.find_map_first(&carriers, |tau| {
        let local = match delta_at_carrier(cs, kappa, tau) {
            Ok(d) => d,
            Err(e) => return Some(Err(e)),
        };
        for sigma in local.iter() {
            let image = f.image(sigma);
            for k in ks(sigma) {
                let value = match phi.value(k, tau) {
                    Ok(v) => v,
                    Err(e) => return Some(Err(e)),
                };
                if !value.contains(&image) {
                    return Some(Ok(SkeletalWitness {
                        table: k,
                        carrier: tau.vertices().to_vec(),
                        simplex: sigma.vertices().to_vec(),
                        image: image.into_vec(),
                    }));
                }
            }
        }
        None
    });
    found.transpose()
}

/// For `f` on `Δ(ℱ_{≤n})` with `n + 1 = cs.num_levels()`: the first
/// `σ ∈ Δ^k`, `k ≤ n`, and carrier `τ` in the kernel of `σ` with
/// `f(σ) ∉ table_k(τ)`.
pub fn skeletal_violation(
    f: &SimplicialMap<NerveVertex, Label>,
    cs: &CoverSequence,
    phi: &CarrierMappingSequence,
) -> Result<Option<SkeletalWitness>> {
    let levels = cs.num_levels();
    if phi.len() < levels {
        return Err(Error::ArityError(format!("{levels} levels need {levels} tables, got {}", phi.len())));
    }
    check_shapes(f, cs, phi, levels)?;
    let n = levels - 1;
    first_violation(f, cs, phi, levels, |sigma| sigma.dim()..=n, Strategy::default())
}

pub fn is_skeletal_selection(
    f: &SimplicialMap<NerveVertex, Label>,
    cs: &CoverSequence,
    phi: &CarrierMappingSequence,
) -> Result<bool> {
    Ok(skeletal_violation(f, cs, phi)?.is_none())
}

/// Restricted to `Δ(ℱ_{≤n})`, `f` lands in `φ_n` over the kernel of every
/// simplex: `f(σ) ∈ table_n(τ)` for all `σ` and carriers `τ` in its kernel.
pub fn level_selection_violation(
    f: &SimplicialMap<NerveVertex, Label>,
    cs: &CoverSequence,
    phi: &CarrierMappingSequence,
    n: usize,
) -> Result<Option<SkeletalWitness>> {
    let levels = cs.num_levels();
    if n >= levels {
        return Err(Error::ArityError(format!("level {n} is beyond the {levels} levels of the sequence")));
    }
    check_shapes(f, cs, phi, levels)?;
    first_violation(f, cs, phi, n + 1, |_| n..=n, Strategy::default())
}

/// One step of the skeletal construction with a uniform cone witness `q`:
/// the new level is the vertex-star cover of the working stage and every
/// new nerve vertex goes to `q`.
pub fn extend_skeletal_selection(
    f: &SimplicialMap<NerveVertex, Label>,
    cs: &CoverSequence,
    phi: &CarrierMappingSequence,
) -> Result<(CoverSequence, SimplicialMap<NerveVertex, Label>)> {
    let q = phi.cone_witness().ok_or(Error::NoConeWitness)?.clone();
    let levels = cs.num_levels();
    if phi.len() < levels + 1 {
        return Err(Error::ArityError(format!(
            "extending {levels} levels needs {} tables, got {}",
            levels + 1,
            phi.len()
        )));
    }
    if let Some(w) = skeletal_violation(f, cs, phi)? {
        return Err(Error::SkeletonViolation(format!(
            "f maps {:?} to {:?}, outside table {} at carrier {:?}",
            w.simplex, w.image, w.table, w.carrier
        )));
    }
    let level = cs.working_level();
    let family: Vec<CoverElement> = cs
        .stage()
        .complex()
        .vertices()
        .iter()
        .map(|v| Ok(CoverElement::new(v.clone(), StarSet::new(level, [v.clone()])?)))
        .collect::<Result<_>>()?;
    let next = cs.with_level(family)?;
    let delta = delta_subcomplex(&next, levels + 1)?;
    let mut images = f.images().clone();
    for v in cs.stage().complex().vertices() {
        images.insert(NerveVertex::new(v.clone(), levels), q.clone());
    }
    let g = SimplicialMap::new(Arc::clone(&delta.complex), phi.target().clone(), images)?;
    Ok((next, g))
}
