//! Allocation of indivisible items to agents whose preferences are directed
//! acyclic graphs, under the min-sum and min-max dissatisfaction objectives.

mod error;
pub mod classify;
pub mod exact;
pub mod gen;
pub mod junction;
pub mod kernels;
pub mod model;
pub mod polyalgos;
pub mod reductions;
pub mod solve;

pub use error::{Error, Result};
pub use model::io::{parse_allocation, parse_instance, serialize_allocation, serialize_instance};
pub use model::{
    AgentId, Allocation, Assignment, DissatisfactionProfile, Instance, ItemId, PreferenceGraph,
    Violation,
};
