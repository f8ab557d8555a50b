use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{AgentId, Instance, ItemId};

/// Sets of items handed to agents (π). Agents absent from the map receive
/// nothing.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Allocation {
    assigned: BTreeMap<AgentId, BTreeSet<ItemId>>,
}

impl Allocation {
    /// An allocation listing every agent of `inst` with an empty set.
    pub fn empty_for(inst: &Instance) -> Self {
        Allocation {
            assigned: inst
                .agents()
                .iter()
                .map(|a| (a.id().clone(), BTreeSet::new()))
                .collect(),
        }
    }

    pub fn ensure_agent(&mut self, agent: AgentId) {
        self.assigned.entry(agent).or_default();
    }

    pub fn insert(&mut self, agent: AgentId, item: ItemId) {
        self.assigned.entry(agent).or_default().insert(item);
    }

    pub fn items_of(&self, agent: &str) -> Option<&BTreeSet<ItemId>> {
        self.assigned.get(agent)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&AgentId, &BTreeSet<ItemId>)> {
        self.assigned.iter()
    }

    /// The agent holding `item`, if any. Assumes the allocation is valid.
    pub fn owner_of(&self, item: &str) -> Option<&AgentId> {
        self.assigned
            .iter()
            .find(|(_, set)| set.contains(item))
            .map(|(agent, _)| agent)
    }

    pub fn num_assigned(&self) -> usize {
        self.assigned.values().map(BTreeSet::len).sum()
    }
}

impl FromIterator<(AgentId, BTreeSet<ItemId>)> for Allocation {
    fn from_iter<T: IntoIterator<Item = (AgentId, BTreeSet<ItemId>)>>(iter: T) -> Self {
        Allocation {
            assigned: iter.into_iter().collect(),
        }
    }
}

/// One way an allocation fails to fit an instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    Overlap { item: ItemId, agents: Vec<AgentId> },
    UnknownAgent(AgentId),
    UnknownItem { agent: AgentId, item: ItemId },
    IrrelevantItem { agent: AgentId, item: ItemId },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Overlap { item, agents } => {
                let names: Vec<&str> = agents.iter().map(AgentId::as_str).collect();
                write!(f, "overlap: item \"{item}\" assigned to agents {}", names.join(", "))
            }
            Violation::UnknownAgent(agent) => write!(f, "unknown agent {agent}"),
            Violation::UnknownItem { agent, item } => {
                write!(f, "unknown item \"{item}\" assigned to agent {agent}")
            }
            Violation::IrrelevantItem { agent, item } => write!(
                f,
                "irrelevant item: \"{item}\" is not in the graph of agent {agent}"
            ),
        }
    }
}

/// Per-agent dissatisfaction values.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DissatisfactionProfile {
    values: BTreeMap<AgentId, usize>,
}

impl DissatisfactionProfile {
    pub fn get(&self, agent: &str) -> Option<usize> {
        self.values.get(agent).copied()
    }

    /// Values in canonical agent order.
    pub fn values(&self) -> impl Iterator<Item = usize> + '_ {
        self.values.values().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&AgentId, usize)> {
        self.values.iter().map(|(a, &d)| (a, d))
    }

    pub fn sum(&self) -> usize {
        self.values.values().sum()
    }

    pub fn max(&self) -> usize {
        self.values.values().copied().max().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

impl FromIterator<(AgentId, usize)> for DissatisfactionProfile {
    fn from_iter<T: IntoIterator<Item = (AgentId, usize)>>(iter: T) -> Self {
        DissatisfactionProfile {
            values: iter.into_iter().collect(),
        }
    }
}
