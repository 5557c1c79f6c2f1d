//! Finite abstract simplicial complexes, simplicial maps and barycentric
//! subdivision.

#[allow(clippy::module_inception)]
mod complex;
mod map;
mod simplex;
mod subdivision;

use std::fmt::{Debug, Display};
use std::hash::Hash;

pub use complex::SimplicialComplex;
pub use map::SimplicialMap;
pub use simplex::Simplex;
pub use subdivision::{barycenter_name, PolyhedralSpace, SubdivisionStage, DEFAULT_LEVEL_BUDGET};

/// Bound for vertex identifiers.
pub trait Vertex: Ord + Clone + Hash + Debug + Display + Send + Sync + 'static {}

impl<T: Ord + Clone + Hash + Debug + Display + Send + Sync + 'static> Vertex for T {}
