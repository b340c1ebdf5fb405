//! Configuration search over triple systems: pruning, (6,3) and skinny
//! (6,3) configurations, tic-tac-toes, (12,9) configurations and k-systems.

mod ksystem;
mod params;
mod prune;
mod six_three;
mod tictactoe;

pub use ksystem::{
    assemble_k_system, branch_bipartite_graph, branch_tuples, find_biclique, find_k_branches, Biclique,
    BipartiteGraph, BlockOrientation, BranchGraph, KBranch, KBranches, KSystem, KSystemError,
};
pub use params::{default_block_size, default_skinny_bound, partition_blocks, BlockPartition, ParamError, SearchParams};
pub use prune::{classify_good, prune, Goodness, PruneReport};
pub use six_three::{find_663, find_skinny_663, greedy_pair_select, is_skinny, Config63, DoubleSide, Scope, SkinnyResult};
pub use tictactoe::{
    find_tictactoe, find_tictactoe_direct, find_tictactoe_pipeline, Config129, TicTacToe, TttResult, TttStrategy,
    DIRECT_LIMIT,
};
