//! (T, c) vertex sparsifiers for hypergraphs.

pub mod auxgraph;
pub mod brute;
pub mod enumerate;
pub mod error;
pub mod expander;
pub mod flow;
pub mod gen;
pub mod hypergraph;
pub mod io;
pub mod pipeline;
pub mod separation;
pub mod verify;

pub use enumerate::{enumerate_connected_cuts, enumerate_cuts_by_boundary, EnumerationParams};
pub use error::{Error, Result};
pub use flow::{a_minimal_mincut, is_connected, mincut_value, Cut, CutValue};
pub use hypergraph::{
    boundary, contract, incident_edges, induced_subgraph, quotient, restrict, EdgeId, Hypergraph, Item,
    ProjectionMap, TerminalSet, VertexId,
};
pub use separation::{
    anchored_induced_subgraph, reduce_to_degree_one, separate_hyperedges, SeparationResult,
};
pub use auxgraph::{
    apply_contraction_to_aux, build_pruned_auxiliary_graph, build_unpruned_auxiliary_graph,
    essential_edges_from_aux, is_useful_partition, AuxGraph, TerminalPartition,
};
pub use brute::{brute_force_connected_cuts, brute_force_essential, brute_force_mincut};
pub use expander::{
    conductance, expander_decompose, graph_conductance, Conductance, DecompositionResult,
};
pub use pipeline::{
    combine, divide, is_edge_unbreakable, phi_sparsify, polytime_sparsify, sparsify_fast,
    sparsify_slow, terminal_expansion, PipelineConfig, SparsifierOutput,
};
pub use verify::{verify_sparsifier, Failure, VerificationReport, VerifyMode};
pub use io::{parse_instance, parse_projection, write_instance, write_projection};
