//! Exact, combinatorial machinery for nerves of indexed cover sequences over
//! finite polyhedra.
//!
//! The ground space is always `|K|` for a finite simplicial complex `K`.
//! Open sets are modelled as *star-sets*: unions of open vertex stars at some
//! barycentric subdivision level. Every predicate (kernel membership,
//! disjointness, refinement, canonicity) reduces to finite simplex
//! combinatorics, and point coordinates are exact rationals.
//!
//! Module map:
//! - [`complex`]: abstract complexes, skeleta, cones, subdivision, simplicial maps.
//! - [`realization`]: barycentric points, carriers, open stars, star-sets.
//! - [`cover`]: cover sequences, kernels, nerves and the one-per-level
//!   subcomplex `Δ`, refinement maps.
//! - [`selection`]: canonical maps, selection predicates, cone extension and
//!   skeletal selections for carrier-monotone mapping tables.
//! - [`dimension`]: C-refinements, the barycentric-colouring constructor,
//!   bounded exhaustive search and the parametric driver.
//! - [`io`]: JSON interchange types and DOT export.
//! - [`fixtures`]: the named fixture corpus and seeded random generators.

pub mod complex;
pub mod cover;
pub mod dimension;
pub mod error;
pub mod exec;
pub mod fixtures;
pub mod io;
pub mod label;
pub mod realization;
pub mod selection;

pub use complex::{PolyhedralSpace, Simplex, SimplicialComplex, SimplicialMap, SubdivisionStage};
pub use cover::{CoverElement, CoverSequence, IndexedNerve, Kappa, NerveKind, NerveVertex};
pub use error::{Error, Result};
pub use label::Label;
pub use realization::{BarycentricPoint, StarRelation, StarSet};
