//! Items, agents, preference graphs, instances and allocations.

mod allocation;
mod graph;
mod ids;
mod instance;
pub mod io;

pub use allocation::{Allocation, DissatisfactionProfile, Violation};
pub use graph::{GraphError, PreferenceGraph};
pub use ids::{AgentId, ItemId};
pub use instance::{Agent, Assignment, Instance, InstanceBuilder};
