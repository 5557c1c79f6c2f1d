use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::{Arc, RwLock};

use itertools::Itertools;

use super::{Simplex, SimplicialComplex};
use crate::error::{Error, Result};
use crate::label::Label;

/// Default cap on subdivision depth for a [`PolyhedralSpace`].
pub const DEFAULT_LEVEL_BUDGET: usize = 6;

/// One barycentric subdivision stage `Sd^m(K)`.
///
/// Level-`m+1` vertices are the barycenters of level-`m` simplices. The
/// barycenter of a vertex keeps that vertex's name; the barycenter of a
/// larger simplex `{x,y,..}` is named `[x,y,..]`. Names are therefore unique
/// and reproducible, and a point that is a vertex at some level keeps its name
/// at every finer level.
#[derive(Clone, PartialEq, Eq)]
pub struct SubdivisionStage {
    level: usize,
    complex: Arc<SimplicialComplex<Label>>,
    carrier_of_vertex: BTreeMap<Label, Simplex<Label>>,
    neighbors: BTreeMap<Label, BTreeSet<Label>>,
}

impl fmt::Debug for SubdivisionStage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SubdivisionStage")
            .field("level", &self.level)
            .field("f_vector", &self.complex.f_vector())
            .finish()
    }
}

/// Name of the level-`m+1` vertex sitting at the barycenter of `s`.
pub fn barycenter_name(s: &Simplex<Label>) -> Label {
    if s.card() == 1 {
        return s.vertices()[0].clone();
    }
    Label::new(format!("[{}]", s.iter().join(",")))
}

impl SubdivisionStage {
    /// Stage 0 of a base complex.
    pub fn base(complex: Arc<SimplicialComplex<Label>>) -> Self {
        Self::with_carriers(0, complex, BTreeMap::new())
    }

    fn with_carriers(
        level: usize,
        complex: Arc<SimplicialComplex<Label>>,
        carrier_of_vertex: BTreeMap<Label, Simplex<Label>>,
    ) -> Self {
        let mut neighbors: BTreeMap<Label, BTreeSet<Label>> =
            complex.vertices().iter().map(|v| (v.clone(), BTreeSet::new())).collect();
        for e in complex.simplices_of_dim(1) {
            let (a, b) = (&e.vertices()[0], &e.vertices()[1]);
            neighbors.get_mut(a).expect("vertex").insert(b.clone());
            neighbors.get_mut(b).expect("vertex").insert(a.clone());
        }
        SubdivisionStage { level, complex, carrier_of_vertex, neighbors }
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn complex(&self) -> &Arc<SimplicialComplex<Label>> {
        &self.complex
    }

    /// For level `m > 0`: the level-`m-1` simplex each vertex is the
    /// barycenter of. Empty at level 0.
    pub fn carrier_of_vertex(&self) -> &BTreeMap<Label, Simplex<Label>> {
        &self.carrier_of_vertex
    }

    /// Dimension of the simplex a vertex subdivides; 0 at level 0.
    pub fn barycenter_dim(&self, v: &Label) -> usize {
        self.carrier_of_vertex.get(v).map_or(0, Simplex::dim)
    }

    pub fn neighbors(&self, v: &Label) -> Option<&BTreeSet<Label>> {
        self.neighbors.get(v)
    }

    pub fn adjacent(&self, a: &Label, b: &Label) -> bool {
        self.neighbors.get(a).is_some_and(|n| n.contains(b))
    }

    /// The next barycentric subdivision. Simplices are the chains
    /// `σ₀ ⊂ σ₁ ⊂ … ⊂ σ_k` of this stage, generated as the faces of the
    /// full flags of every facet.
    pub fn subdivide(&self) -> SubdivisionStage {
        let mut simplices: BTreeSet<Simplex<Label>> = BTreeSet::new();
        let mut carriers = BTreeMap::new();
        for s in self.complex.iter() {
            carriers.insert(barycenter_name(s), s.clone());
        }
        for facet in self.complex.facets() {
            for order in facet.vertices().iter().permutations(facet.card()) {
                let flag: Vec<Label> = (1..=order.len())
                    .map(|k| barycenter_name(&Simplex::new(order[..k].iter().map(|v| (*v).clone())).expect("nonempty")))
                    .collect();
                let flag = Simplex::new(flag).expect("nonempty");
                if simplices.contains(&flag) {
                    continue;
                }
                simplices.extend(flag.faces());
            }
        }
        let complex = Arc::new(SimplicialComplex::from_closed(simplices));
        Self::with_carriers(self.level + 1, complex, carriers)
    }
}

struct SpaceInner {
    base: Arc<SimplicialComplex<Label>>,
    budget: usize,
    stages: RwLock<Vec<Arc<SubdivisionStage>>>,
}

/// The ground space `|K|` together with a lazily grown cache of its
/// subdivision stages. Cloning shares the cache.
#[derive(Clone)]
pub struct PolyhedralSpace(Arc<SpaceInner>);

impl fmt::Debug for PolyhedralSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PolyhedralSpace").field("base", &self.0.base).finish()
    }
}

impl PartialEq for PolyhedralSpace {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.base == other.0.base
    }
}

impl Eq for PolyhedralSpace {}

impl PolyhedralSpace {
    /// Base vertex names must be valid base labels (see [`Label::base`]).
    pub fn new(base: SimplicialComplex<Label>) -> Result<Self> {
        Self::with_budget(base, DEFAULT_LEVEL_BUDGET)
    }

    pub fn with_budget(base: SimplicialComplex<Label>, budget: usize) -> Result<Self> {
        if base.is_empty() {
            return Err(Error::InvalidComplex("ground complex is empty".into()));
        }
        for v in base.vertices() {
            Label::base(v.as_str())?;
        }
        let base = Arc::new(base);
        let stage0 = Arc::new(SubdivisionStage::base(base.clone()));
        Ok(PolyhedralSpace(Arc::new(SpaceInner { base, budget, stages: RwLock::new(vec![stage0]) })))
    }

    pub fn base(&self) -> &Arc<SimplicialComplex<Label>> {
        &self.0.base
    }

    pub fn budget(&self) -> usize {
        self.0.budget
    }

    pub fn dim(&self) -> usize {
        self.0.base.dim().expect("nonempty base")
    }

    /// Stage `m`, computing intermediate stages on first use.
    pub fn stage(&self, m: usize) -> Result<Arc<SubdivisionStage>> {
        if m > self.0.budget {
            return Err(Error::LevelBudgetExceeded { requested: m, budget: self.0.budget });
        }
        if let Some(s) = self.0.stages.read().expect("stage cache poisoned").get(m) {
            return Ok(s.clone());
        }
        let mut stages = self.0.stages.write().expect("stage cache poisoned");
        while stages.len() <= m {
            let next = stages.last().expect("stage 0").subdivide();
            stages.push(Arc::new(next));
        }
        Ok(stages[m].clone())
    }
}
