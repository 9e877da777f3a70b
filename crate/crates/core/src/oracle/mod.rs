//! Brute-force ground truth on small graphs.

pub mod census;
pub mod composition;
pub mod deletion;
pub mod report;

pub use census::{
    classify_subset, graph_census, partition_subgraph_sum, reliability_enumeration, subset_census,
    tutte_subgraph_sum, HubPattern, PartitionSums, ReliabilityEnumeration, SubgraphClassification,
    SubsetCensus, MAX_CENSUS_EDGES, MAX_RELIABILITY_EDGES,
};
pub use composition::{compose_partition, compose_probabilities, configurations, Configuration};
pub use deletion::{
    matrix_tree_count, tutte_deletion_contraction, MAX_DELETION_CONTRACTION_EDGES,
    MAX_MATRIX_TREE_VERTICES,
};
pub use report::{run_oracle, CheckKind, CheckOutcome, CheckStatus, OracleReport};
