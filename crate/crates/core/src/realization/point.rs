use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::complex::{PolyhedralSpace, Simplex, SimplicialComplex, SimplicialMap, Vertex};
use crate::error::{Error, Result};
use crate::label::Label;

/// A point of `|Σ|` in exact barycentric coordinates. Only positive
/// coordinates are stored, so the key set is the support.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Point<V> {
    coords: BTreeMap<V, BigRational>,
}

impl<V: Vertex> Point<V> {
    /// Zero coordinates are dropped; negative ones are rejected.
    pub fn new(coords: impl IntoIterator<Item = (V, BigRational)>) -> Result<Self> {
        let mut out = BTreeMap::new();
        for (v, c) in coords {
            if c.is_negative() {
                return Err(Error::InvalidPoint(format!("negative coordinate {c} at {v}")));
            }
            if !c.is_zero() {
                *out.entry(v).or_insert_with(BigRational::zero) += c;
            }
        }
        Ok(Point { coords: out })
    }

    pub fn vertex(v: V) -> Self {
        Point { coords: BTreeMap::from([(v, BigRational::one())]) }
    }

    pub fn coords(&self) -> &BTreeMap<V, BigRational> {
        &self.coords
    }

    pub fn coord(&self, v: &V) -> BigRational {
        self.coords.get(v).cloned().unwrap_or_else(BigRational::zero)
    }

    /// The support simplex, after checking the point lies in `|complex|`:
    /// coordinates sum to one and the support is a simplex. The point lies in
    /// the relative interior of exactly this simplex.
    pub fn carrier(&self, complex: &SimplicialComplex<V>) -> Result<Simplex<V>> {
        let sum: BigRational = self.coords.values().sum();
        if !sum.is_one() {
            return Err(Error::InvalidPoint(format!("coordinates sum to {sum}, not 1")));
        }
        let support =
            Simplex::new(self.coords.keys().cloned()).ok_or_else(|| Error::InvalidPoint("empty support".into()))?;
        if !complex.contains(&support) {
            return Err(Error::InvalidPoint(format!("support {support} is not a simplex")));
        }
        Ok(support)
    }
}

/// Affine realisation `|g|`: each image coordinate is the sum of the source
/// coordinates over its fiber.
pub fn realize_map<V: Vertex, W: Vertex>(g: &SimplicialMap<V, W>, p: &Point<V>) -> Result<Point<W>> {
    p.carrier(g.source())?;
    let mut out: BTreeMap<W, BigRational> = BTreeMap::new();
    for (v, c) in p.coords() {
        let w = g.apply(v).ok_or_else(|| Error::IncompleteMap(v.to_string()))?;
        *out.entry(w.clone()).or_insert_with(BigRational::zero) += c;
    }
    Point::new(out)
}

/// A point of `|Sd^m(K)|` tagged with its subdivision level.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct BarycentricPoint {
    pub level: usize,
    pub point: Point<Label>,
}

impl BarycentricPoint {
    pub fn new(level: usize, coords: impl IntoIterator<Item = (Label, BigRational)>) -> Result<Self> {
        Ok(BarycentricPoint { level, point: Point::new(coords)? })
    }

    pub fn vertex(level: usize, v: Label) -> Self {
        BarycentricPoint { level, point: Point::vertex(v) }
    }

    /// Carrier in the level's stage complex.
    pub fn carrier(&self, space: &PolyhedralSpace) -> Result<Simplex<Label>> {
        self.point.carrier(space.stage(self.level)?.complex())
    }

    /// The same point expressed at the next subdivision level.
    ///
    /// With the support ordered by decreasing coordinate `t₁ ≥ … ≥ t_k`,
    /// the point equals `Σ i·(t_i − t_{i+1}) · b({v₁..v_i})`.
    pub fn refine(&self, space: &PolyhedralSpace) -> Result<BarycentricPoint> {
        self.carrier(space)?;
        let mut sorted: Vec<(&Label, &BigRational)> = self.point.coords().iter().collect();
        sorted.sort_by(|a, b| b.1.cmp(a.1).then_with(|| a.0.cmp(b.0)));
        let mut coords = Vec::with_capacity(sorted.len());
        for i in 0..sorted.len() {
            let next = sorted.get(i + 1).map_or_else(BigRational::zero, |x| x.1.clone());
            let weight = (sorted[i].1 - next) * BigRational::from_integer((i as i64 + 1).into());
            let face = Simplex::new(sorted[..=i].iter().map(|x| x.0.clone())).expect("nonempty");
            coords.push((crate::complex::barycenter_name(&face), weight));
        }
        BarycentricPoint::new(self.level + 1, coords)
    }

    /// Re-express at a finer level `m ≥ self.level`.
    pub fn at_level(&self, space: &PolyhedralSpace, m: usize) -> Result<BarycentricPoint> {
        if m < self.level {
            return Err(Error::CannotCoarsen { from: self.level, to: m });
        }
        let mut p = self.clone();
        while p.level < m {
            p = p.refine(space)?;
        }
        Ok(p)
    }
}
