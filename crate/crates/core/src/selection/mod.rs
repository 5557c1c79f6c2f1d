//! Canonical maps into nerves, the selection predicate, transfer along
//! refinements, cone extension and skeletal selections for carrier tables.

mod canonical;
mod carrier_table;
mod cone;
mod skeletal;

pub use canonical::{
    build_canonical, canonical_violation, extract_c_refinement, is_canonical, is_selection, selection_violation,
    selection_violation_with, transfer_selection, CanonicalMap,
};
pub use carrier_table::{CarrierMappingSequence, CarrierTable};
pub use cone::{check_cone_witness, cone_extend, skeleton_violation};
pub use skeletal::{
    extend_skeletal_selection, is_skeletal_selection, level_selection_violation, lift_vertex_selection,
    skeletal_violation, vertex_selection, vertex_selection_violation, SkeletalWitness, VertexSelection,
};
