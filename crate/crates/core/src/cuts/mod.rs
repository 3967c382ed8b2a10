//! Rooted local cuts: randomized bipartitions anchored at an induced copy of a
//! small root graph, with exact expectations, sampling and derandomization.

mod descriptor;
mod expectation;
mod family;
mod sampling;

pub use descriptor::{
    clebsch_cut, clebsch_root, edge_cut, single_vertex_cut, triple_edge_cut, uniform_random_cut,
    ClebschPreset, RootedCutDescriptor, MAX_ROOT_SIZE,
};
pub use expectation::{
    average_expected_removed, check_embedding, expected_removed, induced_embeddings, pattern_of,
    vertex_probabilities,
};
pub use family::{
    enumerate_family, reference_families, root_automorphisms, CutFamilySpec, RootConstraint,
    MAX_FAMILY_ROOT,
};
pub use sampling::{derandomize, sample_cut};
