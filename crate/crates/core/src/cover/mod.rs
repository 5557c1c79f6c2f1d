//! Indexed cover sequences, kernels, nerves and the one-per-level subcomplex.

mod nerve;
mod refinement;
mod sequence;

pub use nerve::{
    delta_at_carrier, delta_subcomplex, delta_subcomplex_with, is_one_per_level, kernel_query, nerve, nerve_at_carrier,
    nerve_with, unindexed_delta, IndexedNerve, NerveKind,
};
pub use refinement::{refinement_assignment, refinement_map};
pub use sequence::{CoverElement, CoverSequence, Kappa, NerveVertex};
