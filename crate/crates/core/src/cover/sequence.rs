use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::complex::{PolyhedralSpace, SubdivisionStage};
use crate::error::{Error, Result};
use crate::label::Label;
use crate::realization::{cores_disjoint, StarSet};

/// A vertex of an indexed nerve: cover element `element` of level `level`.
/// Elements of different levels are different vertices even when their point
/// sets coincide. Ordered by `(level, element)`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct NerveVertex {
    pub level: usize,
    pub element: Label,
}

impl NerveVertex {
    pub fn new(element: impl Into<Label>, level: usize) -> Self {
        NerveVertex { level, element: element.into() }
    }
}

impl fmt::Display for NerveVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.element, self.level)
    }
}

/// Length of a prefix `𝒰_{<κ}` of a cover sequence.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Kappa {
    Finite(usize),
    /// All available levels.
    Omega,
}

impl Kappa {
    /// Number of levels in the prefix.
    pub fn resolve(self, levels: usize) -> Result<usize> {
        match self {
            Kappa::Finite(0) => Err(Error::EmptyPrefix),
            Kappa::Finite(k) if k > levels => Err(Error::TooFewLevels { kappa: k, levels }),
            Kappa::Finite(k) => Ok(k),
            Kappa::Omega if levels == 0 => Err(Error::EmptyPrefix),
            Kappa::Omega => Ok(levels),
        }
    }
}

impl From<usize> for Kappa {
    fn from(k: usize) -> Self {
        Kappa::Finite(k)
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CoverElement {
    pub id: Label,
    pub star: StarSet,
}

impl CoverElement {
    pub fn new(id: impl Into<Label>, star: StarSet) -> Self {
        CoverElement { id: id.into(), star }
    }
}

/// Finite families `𝒰_0, 𝒰_1, …` of star-sets over one polyhedral space.
///
/// All star-sets are re-expressed at a single working level on construction.
/// The union of all levels must cover the space; whether each level covers on
/// its own is checked separately with [`CoverSequence::check_levels_cover`]
/// because C-refinement families only cover jointly.
#[derive(Clone)]
pub struct CoverSequence {
    space: PolyhedralSpace,
    stage: Arc<SubdivisionStage>,
    levels: Vec<Vec<CoverElement>>,
}

impl fmt::Debug for CoverSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut d = f.debug_struct("CoverSequence");
        d.field("working_level", &self.working_level());
        for (n, level) in self.levels.iter().enumerate() {
            let items: Vec<String> = level.iter().map(|e| format!("{}={}", e.id, e.star)).collect();
            d.field(&format!("level{n}"), &items);
        }
        d.finish()
    }
}

impl Eq for CoverSequence {}

impl PartialEq for CoverSequence {
    fn eq(&self, other: &Self) -> bool {
        self.space == other.space && self.working_level() == other.working_level() && self.levels == other.levels
    }
}

impl CoverSequence {
    /// Working level is the largest star-set level.
    pub fn new(space: PolyhedralSpace, levels: Vec<Vec<CoverElement>>) -> Result<Self> {
        Self::at_working_level(space, 0, levels)
    }

    /// Working level is `max(min_level, largest star-set level)`.
    pub fn at_working_level(space: PolyhedralSpace, min_level: usize, levels: Vec<Vec<CoverElement>>) -> Result<Self> {
        if levels.is_empty() {
            return Err(Error::InvalidCover("a cover sequence needs at least one level".into()));
        }
        let working = levels.iter().flatten().map(|e| e.star.level()).max().unwrap_or(0).max(min_level);
        let stage = space.stage(working)?;
        let mut normalized = Vec::with_capacity(levels.len());
        for (n, level) in levels.into_iter().enumerate() {
            let mut seen = BTreeSet::new();
            let mut out = Vec::with_capacity(level.len());
            for e in level {
                if !seen.insert(e.id.clone()) {
                    return Err(Error::InvalidCover(format!("duplicate element id {} in level {n}", e.id)));
                }
                e.star.validate(&space)?;
                let star = e.star.push(&space, working)?;
                out.push(CoverElement { id: e.id, star });
            }
            out.sort_by(|a, b| a.id.cmp(&b.id));
            normalized.push(out);
        }
        let cs = CoverSequence { space, stage, levels: normalized };
        if let Some(v) = cs.first_uncovered(0..cs.levels.len()) {
            return Err(Error::NoCoverage(v.to_string()));
        }
        Ok(cs)
    }

    pub fn space(&self) -> &PolyhedralSpace {
        &self.space
    }

    pub fn working_level(&self) -> usize {
        self.stage.level()
    }

    pub fn stage(&self) -> &Arc<SubdivisionStage> {
        &self.stage
    }

    pub fn levels(&self) -> &[Vec<CoverElement>] {
        &self.levels
    }

    pub fn num_levels(&self) -> usize {
        self.levels.len()
    }

    pub fn element(&self, v: &NerveVertex) -> Result<&CoverElement> {
        self.levels
            .get(v.level)
            .and_then(|l| l.iter().find(|e| e.id == v.element))
            .ok_or_else(|| Error::UnknownCoverElement(v.to_string()))
    }

    pub fn core(&self, v: &NerveVertex) -> Result<&BTreeSet<Label>> {
        Ok(self.element(v)?.star.core())
    }

    /// Nerve vertices of the prefix of length `kappa`, in vertex order.
    pub fn nerve_vertices(&self, kappa: usize) -> Vec<NerveVertex> {
        self.levels
            .iter()
            .take(kappa)
            .enumerate()
            .flat_map(|(n, l)| l.iter().map(move |e| NerveVertex::new(e.id.clone(), n)))
            .collect()
    }

    fn first_uncovered(&self, range: std::ops::Range<usize>) -> Option<&Label> {
        let mut covered: BTreeSet<&Label> = BTreeSet::new();
        for level in &self.levels[range] {
            for e in level {
                covered.extend(e.star.core().iter());
            }
        }
        self.stage.complex().vertices().iter().find(|v| !covered.contains(v))
    }

    /// A vertex of the working stage missed by level `n`, if any.
    pub fn level_uncovered(&self, n: usize) -> Option<&Label> {
        self.first_uncovered(n..n + 1)
    }

    /// Every level covers the space on its own.
    pub fn check_levels_cover(&self) -> Result<()> {
        for n in 0..self.levels.len() {
            if let Some(v) = self.level_uncovered(n) {
                return Err(Error::InvalidCover(format!("level {n} does not cover vertex {v}")));
            }
        }
        Ok(())
    }

    /// First overlapping pair of elements in level `n`.
    pub fn level_overlap(&self, n: usize) -> Option<(Label, Label)> {
        let level = &self.levels[n];
        for (i, a) in level.iter().enumerate() {
            for b in &level[i + 1..] {
                if !cores_disjoint(a.star.core(), b.star.core(), |x, y| self.stage.adjacent(x, y)) {
                    return Some((a.id.clone(), b.id.clone()));
                }
            }
        }
        None
    }

    pub fn is_pairwise_disjoint(&self, kappa: usize) -> bool {
        (0..kappa.min(self.levels.len())).all(|n| self.level_overlap(n).is_none())
    }

    /// First `kappa` levels only. The prefix must still cover jointly.
    pub fn prefix(&self, kappa: usize) -> Result<CoverSequence> {
        let k = Kappa::Finite(kappa).resolve(self.levels.len())?;
        Self::at_working_level(self.space.clone(), self.working_level(), self.levels[..k].to_vec())
    }

    /// Re-express every element at a finer working level.
    pub fn refined_to(&self, level: usize) -> Result<CoverSequence> {
        Self::at_working_level(self.space.clone(), level, self.levels.clone())
    }

    /// Append a level.
    pub fn with_level(&self, family: Vec<CoverElement>) -> Result<CoverSequence> {
        let mut levels = self.levels.clone();
        levels.push(family);
        Self::at_working_level(self.space.clone(), self.working_level(), levels)
    }

    /// Extend to `len` levels by repeating the last one.
    pub fn padded_to(&self, len: usize) -> Result<CoverSequence> {
        let mut levels = self.levels.clone();
        while levels.len() < len {
            levels.push(levels.last().expect("nonempty").clone());
        }
        Self::at_working_level(self.space.clone(), self.working_level(), levels)
    }

    /// Elements of the first `kappa` levels whose core meets `tau`: the
    /// vertices whose kernel contains every point with carrier `tau`.
    pub fn meeting(&self, kappa: usize, tau: &crate::complex::Simplex<Label>) -> Vec<NerveVertex> {
        self.levels
            .iter()
            .take(kappa)
            .enumerate()
            .flat_map(|(n, l)| {
                l.iter().filter(|e| tau.meets(e.star.core())).map(move |e| NerveVertex::new(e.id.clone(), n))
            })
            .collect()
    }

    /// Per-level lists of ids, for diagnostics.
    pub fn summary(&self) -> BTreeMap<usize, Vec<Label>> {
        self.levels.iter().enumerate().map(|(n, l)| (n, l.iter().map(|e| e.id.clone()).collect())).collect()
    }
}
