//! Combinatorial building blocks: assignment, matching, flow and
//! independent-set solvers on small integer-weighted inputs.

mod flow;
mod lbap;
mod lsap;
mod matching;
mod mwis;
mod profit_flow;

pub use flow::{max_flow, FlowArc, FlowNetwork, MaxFlow};
pub use lbap::{hopcroft_karp, lbap};
pub use lsap::{lsap, AssignmentResult};
pub use matching::{max_weight_matching, Matching, WeightedBipartiteGraph};
pub use mwis::{bipartite_mwis, min_vertex_cover, VertexSet, VertexWeightedGraph};
pub use profit_flow::{max_profit_flow, ProfitFlow};
