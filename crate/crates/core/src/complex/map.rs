use std::collections::BTreeMap;
use std::sync::Arc;

use super::{Simplex, SimplicialComplex, Vertex};
use crate::error::{Error, Result};

/// A vertex map between two complexes. Construct with [`SimplicialMap::new`]
/// to get a checked map, or [`SimplicialMap::unchecked`] to hold an arbitrary
/// assignment for later inspection with [`SimplicialMap::check`].
#[derive(Clone, PartialEq, Eq)]
pub struct SimplicialMap<V, W> {
    source: Arc<SimplicialComplex<V>>,
    target: Arc<SimplicialComplex<W>>,
    images: BTreeMap<V, W>,
}

impl<V: Vertex, W: Vertex> std::fmt::Debug for SimplicialMap<V, W> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_map().entries(self.images.iter()).finish()
    }
}

impl<V: Vertex, W: Vertex> SimplicialMap<V, W> {
    pub fn unchecked(
        source: Arc<SimplicialComplex<V>>,
        target: Arc<SimplicialComplex<W>>,
        images: BTreeMap<V, W>,
    ) -> Self {
        SimplicialMap { source, target, images }
    }

    /// A total vertex map sending every source simplex to a target simplex.
    pub fn new(
        source: Arc<SimplicialComplex<V>>,
        target: Arc<SimplicialComplex<W>>,
        images: BTreeMap<V, W>,
    ) -> Result<Self> {
        let map = Self::unchecked(source, target, images);
        if let Some(bad) = map.first_violation()? {
            return Err(Error::NotSimplicial(bad.to_string()));
        }
        Ok(map)
    }

    pub fn source(&self) -> &Arc<SimplicialComplex<V>> {
        &self.source
    }

    pub fn target(&self) -> &Arc<SimplicialComplex<W>> {
        &self.target
    }

    pub fn images(&self) -> &BTreeMap<V, W> {
        &self.images
    }

    pub fn apply(&self, v: &V) -> Option<&W> {
        self.images.get(v)
    }

    /// Image vertex set of a simplex. Panics on a vertex outside the map's
    /// domain; callers check totality first.
    pub fn image(&self, s: &Simplex<V>) -> Simplex<W> {
        Simplex::new(s.iter().map(|v| self.images[v].clone())).expect("nonempty image")
    }

    fn ensure_total(&self) -> Result<()> {
        match self.source.vertices().iter().find(|v| !self.images.contains_key(*v)) {
            Some(v) => Err(Error::IncompleteMap(v.to_string())),
            None => Ok(()),
        }
    }

    /// First source simplex (in simplex order) whose image is not a target
    /// simplex.
    pub fn first_violation(&self) -> Result<Option<Simplex<V>>> {
        self.ensure_total()?;
        Ok(self.source.iter().find(|s| !self.target.contains(&self.image(s))).cloned())
    }

    /// Whether every simplex image is a target simplex.
    pub fn check(&self) -> Result<bool> {
        Ok(self.first_violation()?.is_none())
    }

    pub fn identity(complex: Arc<SimplicialComplex<V>>) -> SimplicialMap<V, V> {
        let images = complex.vertices().iter().map(|v| (v.clone(), v.clone())).collect();
        SimplicialMap { source: complex.clone(), target: complex, images }
    }

    /// `next ∘ self`. The target of `self` must equal the source of `next`.
    pub fn then<X: Vertex>(&self, next: &SimplicialMap<W, X>) -> Result<SimplicialMap<V, X>> {
        if !Arc::ptr_eq(&self.target, &next.source) && *self.target != *next.source {
            return Err(Error::ComposeError("target of the first map differs from the source of the second".into()));
        }
        let mut images = BTreeMap::new();
        for (v, w) in &self.images {
            let x = next
                .images
                .get(w)
                .ok_or_else(|| Error::ComposeError(format!("no image for intermediate vertex {w}")))?;
            images.insert(v.clone(), x.clone());
        }
        Ok(SimplicialMap { source: self.source.clone(), target: next.target.clone(), images })
    }

    /// Same vertex assignment viewed into a different (larger) target.
    pub fn with_target(&self, target: Arc<SimplicialComplex<W>>) -> Result<Self> {
        Self::new(self.source.clone(), target, self.images.clone())
    }

    /// Restrict to a subcomplex of the source.
    pub fn restrict(&self, sub: Arc<SimplicialComplex<V>>) -> Result<Self> {
        let images = sub
            .vertices()
            .iter()
            .map(|v| {
                self.images.get(v).map(|w| (v.clone(), w.clone())).ok_or_else(|| Error::IncompleteMap(v.to_string()))
            })
            .collect::<Result<_>>()?;
        Ok(SimplicialMap { source: sub, target: self.target.clone(), images })
    }
}
