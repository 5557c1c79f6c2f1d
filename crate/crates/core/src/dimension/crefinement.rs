use std::collections::BTreeSet;

use serde::Serialize;

use crate::cover::{CoverElement, CoverSequence};
use crate::error::Result;
use crate::label::Label;
use crate::realization::cores_disjoint;

/// Families `𝒱_n`, `n < κ`, of star-sets witnessing that `source` admits
/// pairwise-disjoint refinements which cover jointly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CRefinement {
    families: Vec<Vec<CoverElement>>,
    source: CoverSequence,
}

/// The first violated invariant of a candidate C-refinement.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "violation", rename_all = "snake_case")]
pub enum CViolation {
    /// More families than the source has levels.
    MissingSourceLevel { family: usize, levels: usize },
    /// Two elements of one family span a common simplex.
    Overlap { family: usize, first: Label, second: Label },
    /// An element lies in no element of the matching source level.
    NotRefining { family: usize, element: Label },
    /// A vertex of the common stage lies in no element of any family.
    Uncovered { level: usize, vertex: Label },
}

impl CRefinement {
    pub fn new(families: Vec<Vec<CoverElement>>, source: CoverSequence) -> Self {
        CRefinement { families, source }
    }

    pub fn kappa(&self) -> usize {
        self.families.len()
    }

    pub fn families(&self) -> &[Vec<CoverElement>] {
        &self.families
    }

    pub fn source(&self) -> &CoverSequence {
        &self.source
    }

    /// Smallest level at which every element and the source are expressed.
    pub fn level(&self) -> usize {
        self.families.iter().flatten().map(|e| e.star.level()).chain([self.source.working_level()]).max().unwrap_or(0)
    }

    /// The same families followed by an empty one.
    pub fn with_empty_family(&self) -> CRefinement {
        let mut families = self.families.clone();
        families.push(Vec::new());
        CRefinement { families, source: self.source.clone() }
    }

    /// The families as a jointly covering cover sequence.
    pub fn as_cover(&self) -> Result<CoverSequence> {
        CoverSequence::at_working_level(self.source.space().clone(), self.level(), self.families.clone())
    }

    /// Number of elements per family.
    pub fn shape(&self) -> Vec<usize> {
        self.families.iter().map(Vec::len).collect()
    }
}

/// Checks pairwise disjointness, refinement and joint coverage, in that
/// order, at the common level of the families and the source.
pub fn verify_c_refinement(r: &CRefinement) -> Result<Option<CViolation>> {
    let space = r.source.space();
    let level = r.level();
    let stage = space.stage(level)?;
    let source = r.source.refined_to(level)?;
    let mut pushed: Vec<Vec<(Label, BTreeSet<Label>)>> = Vec::with_capacity(r.families.len());
    for family in &r.families {
        let mut out = Vec::with_capacity(family.len());
        for e in family {
            e.star.validate(space)?;
            out.push((e.id.clone(), e.star.push(space, level)?.core().clone()));
        }
        pushed.push(out);
    }
    for (n, family) in pushed.iter().enumerate() {
        for (i, (a, ca)) in family.iter().enumerate() {
            for (b, cb) in &family[i + 1..] {
                if !cores_disjoint(ca, cb, |x, y| stage.adjacent(x, y)) {
                    return Ok(Some(CViolation::Overlap { family: n, first: a.clone(), second: b.clone() }));
                }
            }
        }
    }
    for (n, family) in pushed.iter().enumerate() {
        if family.is_empty() {
            continue;
        }
        let Some(coarse) = source.levels().get(n) else {
            return Ok(Some(CViolation::MissingSourceLevel { family: n, levels: source.num_levels() }));
        };
        for (id, core) in family {
            if !coarse.iter().any(|u| core.is_subset(u.star.core())) {
                return Ok(Some(CViolation::NotRefining { family: n, element: id.clone() }));
            }
        }
    }
    let covered: BTreeSet<&Label> = pushed.iter().flatten().flat_map(|(_, c)| c.iter()).collect();
    if let Some(v) = stage.complex().vertices().iter().find(|v| !covered.contains(v)) {
        return Ok(Some(CViolation::Uncovered { level, vertex: v.clone() }));
    }
    Ok(None)
}
