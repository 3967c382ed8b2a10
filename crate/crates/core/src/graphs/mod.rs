//! Small-graph kernel: a bit-matrix graph type and the exact oracles built on it.

mod blowup;
mod canon;
mod enumerate;
mod graph;
mod graph6;
mod homomorphism;
mod maxcut;
mod named;
mod random;

pub use blowup::{blow_up, BlowUpSpec};
pub use canon::{canonical_form, canonical_form_with_partition, is_isomorphic};
pub use enumerate::{enumerate_triangle_free, enumerate_triangle_free_by_filter, MAX_ENUMERATION_ORDER};
pub use graph::{iter_bits, Bipartition, SmallGraph, MAX_VERTICES};
pub use graph6::{from_graph6, read_graph6_lines, to_graph6};
pub use homomorphism::{c5_coloring, is_c5_colorable, MAX_C5_COLORING_VERTICES};
pub use maxcut::{d2_exact, removed_edges, D2Solution, MAX_D2_VERTICES};
pub use named::{clebsch, cycle, named_graph, path, petersen, star, CLEBSCH_FIGURE_PART};
pub use random::random_triangle_free;
