use crate::complex::barycenter_name;
use crate::cover::{CoverElement, CoverSequence};
use crate::error::{Error, Result};
use crate::realization::StarSet;

use super::CRefinement;

/// Covering dimension of `|K|`: the dimension of the base complex.
pub fn dim_oracle(space: &crate::complex::PolyhedralSpace) -> usize {
    space.dim()
}

/// The barycentric colouring refinement for `n ≥ dim`.
///
/// When every level covers on its own, each working-stage vertex lies in a
/// core of every level, so `st_m(v)` already sits inside an element of every
/// level at the working stage `m`. One further subdivision gives the
/// families `𝒱_k = {st(b_σ) : σ ∈ stage m, dim σ = k}`, `k ≤ n`. Barycenters
/// of distinct simplices of equal dimension are never adjacent, and
/// `st(b_σ) ⊆ st_m(v)` for every vertex `v` of `σ`.
///
/// A sequence with fewer than `n + 1` levels is padded by repeating its last
/// level; the padded sequence is the source of the result.
pub fn ostrand_refine(cs: &CoverSequence, n: usize) -> Result<CRefinement> {
    let dim = dim_oracle(cs.space());
    if n < dim {
        return Err(Error::DimensionTooLow { n, dim });
    }
    let source = cs.padded_to(n + 1)?;
    source.check_levels_cover()?;
    let m = source.working_level();
    let fine = m + 1;
    cs.space().stage(fine)?;
    let mut families: Vec<Vec<CoverElement>> = vec![Vec::new(); n + 1];
    for sigma in source.stage().complex().iter() {
        let b = barycenter_name(sigma);
        families[sigma.dim()].push(CoverElement::new(b.clone(), StarSet::new(fine, [b])?));
    }
    for family in &mut families {
        family.sort_by(|a, b| a.id.cmp(&b.id));
    }
    Ok(CRefinement::new(families, source))
}
