use std::collections::BTreeSet;
use std::fmt;

use itertools::Itertools;

use super::BarycentricPoint;
use crate::complex::{barycenter_name, PolyhedralSpace, Simplex};
use crate::error::{Error, Result};
use crate::label::Label;

/// An open subset of `|K|`: the union of the open stars `st⟨v⟩` of the core
/// vertices of stage `level`.
///
/// A point lies in the set iff its carrier meets the core. At a fixed level
/// the core determines the point set and vice versa (a vertex `v` lies in
/// `st⟨w⟩` only for `w = v`).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StarSet {
    level: usize,
    core: BTreeSet<Label>,
}

impl fmt::Debug for StarSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "stars{{{}}}@{}", self.core.iter().join(","), self.level)
    }
}

impl fmt::Display for StarSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Relationship between the point sets of two star-sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StarRelation {
    Equal,
    Disjoint,
    FirstSubsetSecond,
    SecondSubsetFirst,
    Overlapping,
}

impl StarSet {
    /// Rejects an empty core. Membership of the core in the stage is checked
    /// by [`StarSet::validate`].
    pub fn new(level: usize, core: impl IntoIterator<Item = Label>) -> Result<Self> {
        let core: BTreeSet<Label> = core.into_iter().collect();
        if core.is_empty() {
            return Err(Error::InvalidStarSet("empty core".into()));
        }
        Ok(StarSet { level, core })
    }

    /// The whole space at `level`.
    pub fn whole(space: &PolyhedralSpace, level: usize) -> Result<Self> {
        Ok(StarSet { level, core: space.stage(level)?.complex().vertices().clone() })
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn core(&self) -> &BTreeSet<Label> {
        &self.core
    }

    pub fn validate(&self, space: &PolyhedralSpace) -> Result<()> {
        let stage = space.stage(self.level)?;
        match self.core.iter().find(|v| !stage.complex().contains_vertex(v)) {
            Some(v) => Err(Error::InvalidStarSet(format!("{v} is not a vertex at level {}", self.level))),
            None => Ok(()),
        }
    }

    /// Whether the open simplex `⟨τ⟩` (τ at this star-set's level) lies in
    /// the set.
    pub fn contains_open_simplex(&self, tau: &Simplex<Label>) -> bool {
        tau.meets(&self.core)
    }

    pub fn contains_point(&self, space: &PolyhedralSpace, p: &BarycentricPoint) -> Result<bool> {
        if p.level != self.level {
            return Err(Error::LevelMismatch { expected: self.level, found: p.level });
        }
        Ok(p.carrier(space)?.meets(&self.core))
    }

    /// The same point set expressed at `target_level`: `st⟨v⟩` at level `m`
    /// is the union of `st⟨b_τ⟩` over the level-`m` simplices `τ ∋ v`.
    pub fn push(&self, space: &PolyhedralSpace, target_level: usize) -> Result<StarSet> {
        if target_level < self.level {
            return Err(Error::CannotCoarsen { from: self.level, to: target_level });
        }
        let mut core = self.core.clone();
        for m in self.level..target_level {
            let stage = space.stage(m)?;
            core = stage.complex().iter().filter(|tau| tau.meets(&core)).map(barycenter_name).collect();
        }
        space.stage(target_level)?;
        Ok(StarSet { level: target_level, core })
    }

    /// Exact subset test via a common level.
    pub fn is_subset(&self, space: &PolyhedralSpace, other: &StarSet) -> Result<bool> {
        let (a, b) = common_level(space, self, other)?;
        Ok(a.core.is_subset(&b.core))
    }

    /// No simplex of the common stage meets both cores.
    pub fn is_disjoint(&self, space: &PolyhedralSpace, other: &StarSet) -> Result<bool> {
        let (a, b) = common_level(space, self, other)?;
        let stage = space.stage(a.level)?;
        Ok(cores_disjoint(&a.core, &b.core, |x, y| stage.adjacent(x, y)))
    }
}

/// Two cores at one level span no common simplex iff they share no vertex and
/// no edge joins them.
pub(crate) fn cores_disjoint(
    a: &BTreeSet<Label>,
    b: &BTreeSet<Label>,
    adjacent: impl Fn(&Label, &Label) -> bool,
) -> bool {
    a.is_disjoint(b) && !a.iter().any(|x| b.iter().any(|y| adjacent(x, y)))
}

fn common_level(space: &PolyhedralSpace, a: &StarSet, b: &StarSet) -> Result<(StarSet, StarSet)> {
    let m = a.level.max(b.level);
    Ok((a.push(space, m)?, b.push(space, m)?))
}

pub fn star_relation(space: &PolyhedralSpace, s1: &StarSet, s2: &StarSet) -> Result<StarRelation> {
    let (a, b) = common_level(space, s1, s2)?;
    let rel = if a.core == b.core {
        StarRelation::Equal
    } else if a.core.is_subset(&b.core) {
        StarRelation::FirstSubsetSecond
    } else if b.core.is_subset(&a.core) {
        StarRelation::SecondSubsetFirst
    } else {
        let stage = space.stage(a.level)?;
        if cores_disjoint(&a.core, &b.core, |x, y| stage.adjacent(x, y)) {
            StarRelation::Disjoint
        } else {
            StarRelation::Overlapping
        }
    };
    Ok(rel)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn stars(level: usize, core: &[&str]) -> StarSet {
        StarSet::new(level, core.iter().map(Label::new)).unwrap()
    }

    #[test]
    fn membership_examples() {
        let edge = fixtures::f_edge();
        let mid = BarycentricPoint::new(
            0,
            [
                ("a".into(), num_rational::BigRational::new(1.into(), 2.into())),
                ("b".into(), num_rational::BigRational::new(1.into(), 2.into())),
            ],
        )
        .unwrap();
        let st_a = stars(0, &["a"]);
        assert!(st_a.contains_point(&edge, &mid).unwrap());
        assert!(!st_a.contains_point(&edge, &BarycentricPoint::vertex(0, "b".into())).unwrap());

        let p = stars(1, &["a", "[a,b]"]);
        assert!(!p.contains_point(&edge, &BarycentricPoint::vertex(1, "b".into())).unwrap());
        assert!(matches!(p.contains_point(&edge, &mid), Err(Error::LevelMismatch { expected: 1, found: 0 })));
    }

    #[test]
    fn push_examples() {
        let edge = fixtures::f_edge();
        assert_eq!(stars(0, &["a"]).push(&edge, 1).unwrap(), stars(1, &["a", "[a,b]"]));
        let whole0 = StarSet::whole(&edge, 0).unwrap();
        assert_eq!(whole0.push(&edge, 1).unwrap(), StarSet::whole(&edge, 1).unwrap());
        let s = stars(0, &["b"]);
        assert_eq!(s.push(&edge, 2).unwrap(), s.push(&edge, 1).unwrap().push(&edge, 2).unwrap());
        assert!(matches!(stars(1, &["a"]).push(&edge, 0), Err(Error::CannotCoarsen { from: 1, to: 0 })));
    }

    #[test]
    fn relation_examples() {
        let edge = fixtures::f_edge();
        assert_eq!(star_relation(&edge, &stars(1, &["a"]), &stars(1, &["b"])).unwrap(), StarRelation::Disjoint);
        assert_eq!(
            star_relation(&edge, &stars(0, &["a"]), &StarSet::whole(&edge, 0).unwrap()).unwrap(),
            StarRelation::FirstSubsetSecond
        );
        let p = stars(1, &["a", "[a,b]"]);
        let q = stars(1, &["[a,b]", "b"]);
        assert_eq!(star_relation(&edge, &p, &q).unwrap(), StarRelation::Overlapping);
        assert_eq!(star_relation(&edge, &stars(0, &["a"]), &p).unwrap(), StarRelation::Equal);
        // Adjacent at level 0: st(a) and st(b) overlap on the open edge.
        assert_eq!(star_relation(&edge, &stars(0, &["a"]), &stars(0, &["b"])).unwrap(), StarRelation::Overlapping);
    }

    #[test]
    fn unknown_core_vertex_is_invalid() {
        let edge = fixtures::f_edge();
        assert!(stars(0, &["z"]).validate(&edge).is_err());
        assert!(StarSet::new(0, []).is_err());
    }
}
