//! Hypergraphic matroid algorithms built on exact minimum s-t cuts.
//!
//! Every problem here (polytope separation, independence, rank, partition
//! inequality separation, strength, arboricity and network reinforcement)
//! is solved by a sequence of minimum cut computations on small auxiliary
//! networks. All arithmetic is exact: quantities are [`Rational`]s and the
//! cut kernel works on scaled integers.
//!
//! The crate is `no_std` and only needs `alloc`. File formats and the
//! command-line front end live in the companion `hypermat` crate.
//!
//! ```
//! use hypermat_core::{Hypergraph, EdgeVector, Role, strength};
//!
//! // the triangle K3
//! let h = Hypergraph::new(3, vec![vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap();
//! let s = strength(&h, &EdgeVector::ones(Role::Capacity, 3)).unwrap();
//! assert_eq!(s.sigma.to_string(), "3/2");
//! ```

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod brute;
pub mod error;
pub mod hypergraph;
pub mod matroid;
pub mod mincut;
pub mod packing;
pub mod partition_oracle;
pub mod rational;
pub mod reductions;
pub mod reinforcement;

pub use error::{Error, Result};
pub use hypergraph::{cross_edges, induced_edges, EdgeId, EdgeVector, Hyperedge, Hypergraph, Partition, Role, VertexId};
pub use matroid::{
    independence_test_incremental, is_independent, max_weight_hyperforest, rank, separate_polytope, RankResult,
    SeparationOutcome, ViolatedSet,
};
pub use mincut::{min_st_cut, min_st_cut_sequence, Capacity, CutResult, CutSession, FlowNetwork};
pub use packing::{arboricity, strength, ArboricityResult, StrengthResult};
pub use partition_oracle::{min_partition, supermodular_f, PartitionOracleResult};
pub use rational::Rational;
pub use reinforcement::{canonicalize_merge, reinforce, ReinforcementResult, Status, UpperBound};
