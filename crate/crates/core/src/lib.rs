//! Exact arithmetic toolkit for ranks and nullities of graph distance
//! matrices: fraction-free elimination over the rationals, twin quotients,
//! threshold-graph recursions, trivially perfect clique trees, a small
//! graph census by distance rank, and order bounds.
//!
//! All linear algebra is exact; no floating point anywhere.

pub mod bounds;
pub mod clique_tree;
pub mod enumerate;
pub mod error;
pub mod formats;
pub mod graph;
pub mod matrix;
pub mod threshold;
pub mod twins;

pub use bounds::{moore_bound, ramsey_value};
pub use clique_tree::{
    gadget_matrix, nullity_family, parse_clique_tree, singular_gadget_triples, CliqueTree,
};
pub use enumerate::{
    census_by_distance_rank, configure_thread_pool, enumerate_connected,
    enumerate_connected_range, CensusOptions, CensusWitness, DEFAULT_ENUM_CAP,
};
pub use error::{Error, Result};
pub use formats::{encode_graph6, parse_edge_list, parse_graph6};
pub use graph::{is_isomorphic, DistanceMatrix, Graph};
pub use matrix::{rat, rat_frac, ExactMatrix, Rat, RowOp};
pub use threshold::{
    continuants, family_generator, parse_power_sequence, search_singular_power_sequences,
    AlphaSequence, ContinuantSequence, Family, PowerSequence,
};
pub use twins::{
    null_vector_twin_constancy, quotient_matrix, twin_partition, verify_nullity_equivalence,
    TwinClass, TwinKind, TwinPartition,
};
