use std::collections::BTreeSet;
use std::fmt;

use super::{Simplex, Vertex};
use crate::error::{Error, Result};

/// A finite abstract simplicial complex: a face-closed family of nonempty
/// vertex sets. Vertices are exactly the singleton simplices.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SimplicialComplex<V> {
    vertices: BTreeSet<V>,
    simplices: BTreeSet<Simplex<V>>,
}

impl<V: Vertex> Default for SimplicialComplex<V> {
    fn default() -> Self {
        Self::empty()
    }
}

impl<V: Vertex> SimplicialComplex<V> {
    pub fn empty() -> Self {
        SimplicialComplex { vertices: BTreeSet::new(), simplices: BTreeSet::new() }
    }

    /// Face closure of arbitrary vertex sets; rejects an empty family or an
    /// empty member.
    pub fn validate<I, S>(raw: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: IntoIterator<Item = V>,
    {
        let mut out = Self::empty();
        let mut any = false;
        for s in raw {
            any = true;
            let simplex = Simplex::new(s).ok_or_else(|| Error::InvalidComplex("empty vertex set in input".into()))?;
            out.insert_closed(&simplex);
        }
        if !any {
            return Err(Error::InvalidComplex("no simplices given".into()));
        }
        Ok(out)
    }

    /// Face closure of a family of simplices; the empty family yields the
    /// empty complex.
    pub fn closure<'a, I>(simplices: I) -> Self
    where
        I: IntoIterator<Item = &'a Simplex<V>>,
        V: 'a,
    {
        let mut out = Self::empty();
        for s in simplices {
            out.insert_closed(s);
        }
        out
    }

    /// Build from a family already known to be face-closed. Only checked in
    /// debug builds.
    pub(crate) fn from_closed(simplices: BTreeSet<Simplex<V>>) -> Self {
        let vertices = simplices.iter().filter(|s| s.card() == 1).map(|s| s.vertices()[0].clone()).collect();
        let out = SimplicialComplex { vertices, simplices };
        debug_assert!(out.is_face_closed());
        out
    }

    /// Insert a simplex together with all of its faces.
    pub fn insert_closed(&mut self, simplex: &Simplex<V>) {
        if self.simplices.contains(simplex) {
            return;
        }
        for face in simplex.faces() {
            if face.card() == 1 {
                self.vertices.insert(face.vertices()[0].clone());
            }
            self.simplices.insert(face);
        }
    }

    pub fn vertices(&self) -> &BTreeSet<V> {
        &self.vertices
    }

    pub fn simplices(&self) -> &BTreeSet<Simplex<V>> {
        &self.simplices
    }

    pub fn iter(&self) -> impl Iterator<Item = &Simplex<V>> {
        self.simplices.iter()
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    pub fn contains(&self, s: &Simplex<V>) -> bool {
        self.simplices.contains(s)
    }

    pub fn contains_vertex(&self, v: &V) -> bool {
        self.vertices.contains(v)
    }

    /// Maximal simplex cardinality minus one; `None` for the empty complex.
    pub fn dim(&self) -> Option<usize> {
        self.simplices.iter().map(Simplex::dim).max()
    }

    /// Number of simplices of each dimension, indexed by dimension.
    pub fn f_vector(&self) -> Vec<usize> {
        let mut out = vec![0; self.dim().map_or(0, |d| d + 1)];
        for s in &self.simplices {
            out[s.dim()] += 1;
        }
        out
    }

    pub fn simplices_of_dim(&self, k: usize) -> impl Iterator<Item = &Simplex<V>> {
        self.simplices.iter().filter(move |s| s.dim() == k)
    }

    /// Simplices with at most `k + 1` vertices.
    pub fn skeleton(&self, k: usize) -> Self {
        Self::from_closed(self.simplices.iter().filter(|s| s.card() <= k + 1).cloned().collect())
    }

    /// Simplices that are not a proper face of another simplex.
    pub fn facets(&self) -> Vec<Simplex<V>> {
        // Largest first: a simplex is maximal iff no earlier facet contains it.
        let mut out = Vec::new();
        let mut by_dim: Vec<&Simplex<V>> = self.simplices.iter().collect();
        by_dim.sort_by(|a, b| b.card().cmp(&a.card()).then_with(|| a.cmp(b)));
        let mut faces_of_facets: BTreeSet<Simplex<V>> = BTreeSet::new();
        for s in by_dim {
            if faces_of_facets.contains(s) {
                continue;
            }
            out.push(s.clone());
            faces_of_facets.extend(s.faces());
        }
        out.sort();
        out
    }

    /// The cone `Σ∗v`; `v` must not already be a vertex.
    pub fn cone(&self, apex: V) -> Result<Self> {
        if self.vertices.contains(&apex) {
            return Err(Error::VertexClash(format!("{apex:?}")));
        }
        Ok(self.join_vertex(apex))
    }

    /// `Σ ∪ {σ ∪ {v}} ∪ {{v}}` without the freshness requirement. When `v`
    /// is already a vertex this is `Σ` plus the closed star of `v` grown over
    /// every simplex.
    pub fn join_vertex(&self, apex: V) -> Self {
        let mut simplices = self.simplices.clone();
        simplices.insert(Simplex::vertex(apex.clone()));
        for s in &self.simplices {
            simplices.insert(s.with_vertex(apex.clone()));
        }
        Self::from_closed(simplices)
    }

    /// Remove every simplex that contains `v`.
    pub fn delete_vertex(&self, v: &V) -> Self {
        Self::from_closed(self.simplices.iter().filter(|s| !s.contains(v)).cloned().collect())
    }

    pub fn is_subcomplex_of(&self, other: &Self) -> bool {
        self.simplices.is_subset(&other.simplices)
    }

    /// First simplex of `self` missing from `other`.
    pub fn first_missing_from(&self, other: &Self) -> Option<&Simplex<V>> {
        self.simplices.iter().find(|s| !other.contains(s))
    }

    pub fn union(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.vertices.extend(other.vertices.iter().cloned());
        out.simplices.extend(other.simplices.iter().cloned());
        out
    }

    pub fn is_face_closed(&self) -> bool {
        self.simplices.iter().all(|s| s.faces().all(|f| self.simplices.contains(&f)))
            && self.vertices.iter().all(|v| self.simplices.contains(&Simplex::vertex(v.clone())))
    }

    /// The subcomplex of simplices all of whose vertices satisfy `keep`.
    pub fn induced(&self, keep: impl Fn(&V) -> bool) -> Self {
        Self::from_closed(self.simplices.iter().filter(|s| s.iter().all(&keep)).cloned().collect())
    }

    /// Map every vertex through `f`; `f` must be injective for the result to
    /// be isomorphic.
    pub fn relabel<W: Vertex>(&self, f: impl Fn(&V) -> W) -> SimplicialComplex<W> {
        SimplicialComplex::from_closed(
            self.simplices.iter().map(|s| Simplex::new(s.iter().map(&f)).expect("nonempty")).collect(),
        )
    }
}

impl<V: fmt::Debug> fmt::Debug for SimplicialComplex<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.simplices.iter()).finish()
    }
}
