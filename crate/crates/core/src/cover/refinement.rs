use std::collections::BTreeMap;

use super::{delta_subcomplex, nerve, CoverSequence, Kappa, NerveKind, NerveVertex};
use crate::complex::SimplicialMap;
use crate::error::{Error, Result};

/// The level-preserving vertex assignment `(V,n) ↦ (r_n(V),n)` with
/// `V ⊆ r_n(V)`. Among containing coarse elements the smallest id wins.
pub fn refinement_assignment(
    fine: &CoverSequence,
    coarse: &CoverSequence,
    kappa: impl Into<Kappa>,
) -> Result<BTreeMap<NerveVertex, NerveVertex>> {
    if fine.space() != coarse.space() {
        return Err(Error::InvalidCover("fine and coarse sequences live on different spaces".into()));
    }
    let k = kappa.into().resolve(fine.num_levels().min(coarse.num_levels()))?;
    let level = fine.working_level().max(coarse.working_level());
    let fine = fine.refined_to(level)?;
    let coarse_pushed = coarse.refined_to(level)?;
    let mut out = BTreeMap::new();
    for n in 0..k {
        for v in &fine.levels()[n] {
            // Levels are sorted by id, so the first hit is the smallest.
            let target = coarse_pushed.levels()[n]
                .iter()
                .find(|u| v.star.core().is_subset(u.star.core()))
                .ok_or_else(|| Error::NotARefinement(NerveVertex::new(v.id.clone(), n).to_string()))?;
            out.insert(NerveVertex::new(v.id.clone(), n), NerveVertex::new(target.id.clone(), n));
        }
    }
    Ok(out)
}

/// The simplicial map `r: Δ(fine_{<κ}) → Δ(coarse_{<κ})` (or between full
/// nerves) induced by [`refinement_assignment`]. Each simplex's kernel only
/// grows under `r`, so the map is simplicial; this is checked, not assumed.
pub fn refinement_map(
    fine: &CoverSequence,
    coarse: &CoverSequence,
    kappa: impl Into<Kappa>,
    kind: NerveKind,
) -> Result<SimplicialMap<NerveVertex, NerveVertex>> {
    let kappa = kappa.into();
    let images = refinement_assignment(fine, coarse, kappa)?;
    let k = kappa.resolve(fine.num_levels().min(coarse.num_levels()))?;
    let (src, dst) = match kind {
        NerveKind::Delta => (delta_subcomplex(fine, k)?, delta_subcomplex(coarse, k)?),
        NerveKind::FullNerve => (nerve(fine, k)?, nerve(coarse, k)?),
    };
    SimplicialMap::new(src.complex, dst.complex, images)
}
