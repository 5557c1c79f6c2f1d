use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use crate::complex::{Simplex, SimplicialComplex, SimplicialMap};
use crate::cover::{delta_subcomplex, nerve, CoverElement, CoverSequence, Kappa, NerveKind, NerveVertex};
use crate::dimension::CRefinement;
use crate::error::{Error, Result};
use crate::exec::Strategy;
use crate::label::Label;
use crate::realization::StarSet;

/// A simplicial map from the stage-`subdivision_level` complex of the space
/// into a nerve complex. Its affine realisation is the continuous map; the
/// preimage of an open vertex star is then exactly a star-set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalMap {
    pub subdivision_level: usize,
    pub target_kind: NerveKind,
    pub map: SimplicialMap<Label, NerveVertex>,
}

impl CanonicalMap {
    /// Checks that `images` is a simplicial map from stage `level` into
    /// `target`.
    pub fn new(
        cs: &CoverSequence,
        level: usize,
        target: Arc<SimplicialComplex<NerveVertex>>,
        target_kind: NerveKind,
        images: BTreeMap<Label, NerveVertex>,
    ) -> Result<Self> {
        let source = cs.space().stage(level)?.complex().clone();
        let map = SimplicialMap::new(source, target, images)?;
        Ok(CanonicalMap { subdivision_level: level, target_kind, map })
    }

    /// The star-set `f⁻¹(st⟨vertex⟩)`: stage vertices mapped to `vertex`.
    /// `None` when the preimage is empty.
    pub fn preimage_star(&self, vertex: &NerveVertex) -> Option<StarSet> {
        let core: BTreeSet<Label> =
            self.map.images().iter().filter(|(_, w)| *w == vertex).map(|(v, _)| v.clone()).collect();
        StarSet::new(self.subdivision_level, core).ok()
    }
}

fn check_stage(f: &CanonicalMap, cs: &CoverSequence) -> Result<()> {
    if f.subdivision_level < cs.working_level() {
        return Err(Error::LevelMismatch { expected: cs.working_level(), found: f.subdivision_level });
    }
    let stage = cs.space().stage(f.subdivision_level)?;
    if **stage.complex() != **f.map.source() {
        return Err(Error::LevelMismatch { expected: f.subdivision_level, found: f.subdivision_level });
    }
    Ok(())
}

/// Cores of every element of the prefix, re-expressed at `level`.
fn cores_at(cs: &CoverSequence, kappa: usize, level: usize) -> Result<BTreeMap<NerveVertex, BTreeSet<Label>>> {
    let mut out = BTreeMap::new();
    for v in cs.nerve_vertices(kappa) {
        let star = cs.element(&v)?.star.push(cs.space(), level)?;
        out.insert(v, star.core().clone());
    }
    Ok(out)
}

fn check_images(f: &CanonicalMap, cores: &BTreeMap<NerveVertex, BTreeSet<Label>>) -> Result<()> {
    for w in f.map.images().values() {
        if !cores.contains_key(w) {
            return Err(Error::UnknownCoverElement(w.to_string()));
        }
    }
    Ok(())
}

/// First nerve vertex `(U,n)` whose preimage star `f⁻¹(st⟨(U,n)⟩)` is not
/// contained in `U`.
pub fn canonical_violation(
    f: &CanonicalMap,
    cs: &CoverSequence,
    kappa: impl Into<Kappa>,
) -> Result<Option<NerveVertex>> {
    check_stage(f, cs)?;
    let k = kappa.into().resolve(cs.num_levels())?;
    check_images(f, &cores_at(cs, k, f.subdivision_level)?)?;
    for u in cs.nerve_vertices(k) {
        if let Some(pre) = f.preimage_star(&u) {
            if !pre.is_subset(cs.space(), &cs.element(&u)?.star)? {
                return Ok(Some(u));
            }
        }
    }
    Ok(None)
}

/// `f⁻¹(st⟨(U,n)⟩) ⊆ U` for every vertex of the nerve.
pub fn is_canonical(f: &CanonicalMap, cs: &CoverSequence, kappa: impl Into<Kappa>) -> Result<bool> {
    Ok(canonical_violation(f, cs, kappa)?.is_none())
}

/// First source simplex `τ` such that some element of `f(τ)` does not contain
/// `⟨τ⟩`, i.e. points with carrier `τ` are mapped outside the kernel of
/// their image simplex.
pub fn selection_violation_with(
    f: &CanonicalMap,
    cs: &CoverSequence,
    kappa: impl Into<Kappa>,
    strategy: Strategy,
) -> Result<Option<Simplex<Label>>> {
    check_stage(f, cs)?;
    let k = kappa.into().resolve(cs.num_levels())?;
    let cores = cores_at(cs, k, f.subdivision_level)?;
    check_images(f, &cores)?;
    let simplices: Vec<&Simplex<Label>> = f.map.source().iter().collect();
    Ok(strategy.find_map_first(&simplices, |tau| {
        let image = f.map.image(tau);
        let bad = image.iter().any(|u| !tau.meets(&cores[u]));
        bad.then(|| (*tau).clone())
    }))
}

pub fn selection_violation(
    f: &CanonicalMap,
    cs: &CoverSequence,
    kappa: impl Into<Kappa>,
) -> Result<Option<Simplex<Label>>> {
    selection_violation_with(f, cs, kappa, Strategy::default())
}

/// Whether `|f|(p) ∈ |Σ(p)|` for every point, checked carrier by carrier.
pub fn is_selection(f: &CanonicalMap, cs: &CoverSequence, kappa: impl Into<Kappa>) -> Result<bool> {
    Ok(selection_violation(f, cs, kappa)?.is_none())
}

/// A canonical map for the prefix `𝒰_{<κ}`.
///
/// A vertex star `st⟨v⟩` lies inside an element exactly when `v` is in the
/// element's core, and joint coverage puts every working-stage vertex in
/// some core, so the working stage already admits the assignment
/// `v ↦` smallest `(level, id)` element whose core contains `v`.
///
/// For a `Delta` target every level of the prefix must be pairwise-disjoint.
pub fn build_canonical(cs: &CoverSequence, kappa: impl Into<Kappa>, kind: NerveKind) -> Result<CanonicalMap> {
    let k = kappa.into().resolve(cs.num_levels())?;
    if kind == NerveKind::Delta {
        for n in 0..k {
            if let Some((a, b)) = cs.level_overlap(n) {
                return Err(Error::NotPairwiseDisjoint { level: n, first: a.to_string(), second: b.to_string() });
            }
        }
    }
    let level = cs.working_level();
    let order = cs.nerve_vertices(k);
    let mut images = BTreeMap::new();
    for v in cs.stage().complex().vertices() {
        let u = order
            .iter()
            .find(|u| cs.core(u).map(|c| c.contains(v)).unwrap_or(false))
            .ok_or_else(|| Error::NoCoverage(v.to_string()))?;
        images.insert(v.clone(), u.clone());
    }
    let target = match kind {
        NerveKind::Delta => delta_subcomplex(cs, k)?,
        NerveKind::FullNerve => nerve(cs, k)?,
    };
    CanonicalMap::new(cs, level, target.complex, kind, images)
}

/// `f = |r| ∘ h`: push a selection for a refinement forward along the
/// refinement map.
pub fn transfer_selection(h: &CanonicalMap, r: &SimplicialMap<NerveVertex, NerveVertex>) -> Result<CanonicalMap> {
    Ok(CanonicalMap { subdivision_level: h.subdivision_level, target_kind: h.target_kind, map: h.map.then(r)? })
}

/// Preimages of the open vertex stars, grouped by level: the families
/// `𝒱_n = {f⁻¹(st⟨U⟩) : U ∈ 𝒰_n}` with empty preimages dropped. Each family
/// keeps the id of the element it came from.
pub fn extract_c_refinement(f: &CanonicalMap, cs: &CoverSequence, kappa: impl Into<Kappa>) -> Result<CRefinement> {
    let k = kappa.into().resolve(cs.num_levels())?;
    if let Some(u) = canonical_violation(f, cs, k)? {
        return Err(Error::NotCanonical(u.to_string()));
    }
    let families = (0..k)
        .map(|n| {
            cs.levels()[n]
                .iter()
                .filter_map(|e| {
                    f.preimage_star(&NerveVertex::new(e.id.clone(), n))
                        .map(|star| CoverElement::new(e.id.clone(), star))
                })
                .collect()
        })
        .collect();
    Ok(CRefinement::new(families, cs.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cover::refinement_map;
    use crate::dimension::verify_c_refinement;
    use crate::fixtures;

    fn nv(e: &str, n: usize) -> NerveVertex {
        NerveVertex::new(e, n)
    }

    fn f_rem_map(cs: &CoverSequence) -> CanonicalMap {
        let images = BTreeMap::from([
            (Label::new("a"), nv("P", 0)),
            (Label::new("[a,b]"), nv("P", 0)),
            (Label::new("b"), nv("Q", 1)),
        ]);
        CanonicalMap::new(cs, 1, nerve(cs, 2).unwrap().complex, NerveKind::FullNerve, images).unwrap()
    }

    #[test]
    fn f_rem_map_is_canonical_and_a_selection() {
        let cs = fixtures::f_rem();
        let f = f_rem_map(&cs);
        assert!(is_canonical(&f, &cs, 2).unwrap());
        assert!(is_selection(&f, &cs, 2).unwrap());
    }

    #[test]
    fn constant_map_to_a_proper_element_fails_both() {
        let cs = fixtures::f_rem();
        let images = cs.stage().complex().vertices().iter().map(|v| (v.clone(), nv("P'", 1))).collect();
        let f = CanonicalMap::new(&cs, 1, nerve(&cs, 2).unwrap().complex, NerveKind::FullNerve, images).unwrap();
        assert_eq!(canonical_violation(&f, &cs, 2).unwrap(), Some(nv("P'", 1)));
        assert!(selection_violation(&f, &cs, 2).unwrap().is_some());
    }

    #[test]
    fn whole_cover_maps_are_canonical() {
        let edge = fixtures::f_edge();
        let cs = fixtures::whole_cover(&edge, 1);
        let f = build_canonical(&cs, 1, NerveKind::Delta).unwrap();
        assert_eq!(f.subdivision_level, 0);
        assert!(f.map.images().values().all(|u| *u == nv("whole", 0)));
        assert!(is_canonical(&f, &cs, 1).unwrap());
        assert!(is_selection(&f, &cs, 1).unwrap());
    }

    #[test]
    fn stage_below_working_level_rejected() {
        let cs = fixtures::f_rem();
        let edge = cs.space().clone();
        let whole = fixtures::whole_cover(&edge, 1);
        let f = build_canonical(&whole, 1, NerveKind::FullNerve).unwrap();
        assert!(matches!(is_canonical(&f, &cs, 1), Err(Error::LevelMismatch { .. })));
    }

    #[test]
    fn disjointified_f_rem_roundtrip() {
        let cs = fixtures::f_rem();
        let space = cs.space().clone();
        let fine =
            CoverSequence::new(space, vec![vec![cs.levels()[1][0].clone()], vec![cs.levels()[1][1].clone()]]).unwrap();
        // Level 0 keeps P' = stars{a}, level 1 keeps Q = stars{[a,b],b}.
        assert_eq!(fine.levels()[0][0].id, Label::new("P'"));
        let h = build_canonical(&fine, 2, NerveKind::Delta).unwrap();
        assert!(is_canonical(&h, &fine, 2).unwrap());
        assert!(is_selection(&h, &fine, 2).unwrap());

        let coarse = cs.prefix(2).unwrap();
        let r = refinement_map(&fine, &coarse, 2, NerveKind::Delta).unwrap();
        let f = transfer_selection(&h, &r).unwrap();
        assert!(is_selection(&f, &coarse, 2).unwrap());
        assert!(is_canonical(&f, &coarse, 2).unwrap());
        let extracted = extract_c_refinement(&f, &coarse, 2).unwrap();
        assert_eq!(verify_c_refinement(&extracted).unwrap(), None);
    }

    #[test]
    fn delta_target_needs_disjoint_levels() {
        let cs = fixtures::f_rem();
        assert!(matches!(build_canonical(&cs, 2, NerveKind::Delta), Err(Error::NotPairwiseDisjoint { .. })));
        let f = build_canonical(&cs, 3, NerveKind::FullNerve).unwrap();
        assert!(is_canonical(&f, &cs, 3).unwrap());
    }

    #[test]
    fn transfer_along_identity_is_identity() {
        let cs = fixtures::f_rem();
        let h = build_canonical(&cs, 3, NerveKind::FullNerve).unwrap();
        let id = refinement_map(&cs, &cs, 3, NerveKind::FullNerve).unwrap();
        assert_eq!(transfer_selection(&h, &id).unwrap().map.images(), h.map.images());
    }

    #[test]
    fn extract_rejects_non_canonical() {
        let cs = fixtures::f_rem();
        let images = cs.stage().complex().vertices().iter().map(|v| (v.clone(), nv("P'", 1))).collect();
        let f = CanonicalMap::new(&cs, 1, nerve(&cs, 2).unwrap().complex, NerveKind::FullNerve, images).unwrap();
        assert!(matches!(extract_c_refinement(&f, &cs, 2), Err(Error::NotCanonical(_))));
    }
}
