//! Points of `|K|`, carriers, open stars and star-sets.

mod point;
mod star;

pub use point::{realize_map, BarycentricPoint, Point};
pub(crate) use star::cores_disjoint;
pub use star::{star_relation, StarRelation, StarSet};
