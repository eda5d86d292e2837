//! Exact subpath counting for graphs, with cactus-specific structure,
//! closed forms, extremal rewrites and exhaustive verification at small
//! scale.

pub mod blocks;
pub mod cactus;
pub mod canon;
pub mod count;
pub mod enumerate;
pub mod error;
pub mod families;
pub mod formulas;
pub mod graph;
pub mod indices;
pub mod paths;
pub mod transforms;

pub use blocks::{block_cut_tree, find_bridges, Block, BlockCutTree, BlockKind};
pub use cactus::{cycle_incidence_graph, validate_cactus, CactusProfile, CycleIncidenceGraph};
pub use canon::{canonical_key, CanonicalKey};
pub use count::ExactCount;
pub use enumerate::{
    cactus_census, enumerate_cacti, extremal_sweep, verify_theorems, CensusGuard, ExtremalReport, Invariant, TheoremReport,
};
pub use error::{Error, ParseError, Result};
pub use graph::{parse_edge_list, Edge, Graph, Vertex};
pub use paths::{pn_bruteforce, pn_cactus, WorkBudget};
pub use indices::{invariant_triple, subtree_number, wiener, InvariantTriple};
pub use transforms::{apply, apply_rule, candidates, maximize, minimize, Move, Rule, TransformResult};
