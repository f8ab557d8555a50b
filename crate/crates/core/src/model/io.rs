//! JSON encodings of instances, allocations and profiles.

use serde::{Deserialize, Serialize};

use super::{Allocation, DissatisfactionProfile, Instance};
use crate::Result;

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct InstanceDoc {
    items: Vec<String>,
    agents: Vec<AgentDoc>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AgentDoc {
    id: String,
    items: Vec<String>,
    #[serde(default)]
    arcs: Vec<(String, String)>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AllocationDoc {
    allocation: Allocation,
}

#[derive(Debug, Serialize)]
struct ProfileDoc<'a> {
    profile: &'a DissatisfactionProfile,
    sum: usize,
    max: usize,
}

pub fn parse_instance(text: &[u8]) -> Result<Instance> {
    let doc: InstanceDoc = serde_json::from_slice(text)?;
    doc.agents
        .into_iter()
        .fold(Instance::builder().items(doc.items), |b, a| {
            b.agent(a.id, a.items, a.arcs)
        })
        .build()
}

/// Canonical pretty-printed JSON: items, agents, agent items and arcs are
/// emitted in sorted order, so equal instances serialize to equal bytes.
pub fn serialize_instance(inst: &Instance) -> String {
    let doc = InstanceDoc {
        items: inst.items().iter().map(|v| v.to_string()).collect(),
        agents: inst
            .agents()
            .iter()
            .map(|a| AgentDoc {
                id: a.id().to_string(),
                items: a.graph().items().iter().map(|v| v.to_string()).collect(),
                arcs: a
                    .graph()
                    .arc_ids()
                    .map(|(t, h)| (t.to_string(), h.to_string()))
                    .collect(),
            })
            .collect(),
    };
    serde_json::to_string_pretty(&doc).expect("instance serializes")
}

pub fn parse_allocation(text: &[u8]) -> Result<Allocation> {
    let doc: AllocationDoc = serde_json::from_slice(text)?;
    Ok(doc.allocation)
}

pub fn serialize_allocation(alloc: &Allocation) -> String {
    serde_json::to_string_pretty(&serde_json::json!({ "allocation": alloc }))
        .expect("allocation serializes")
}

pub fn profile_json(profile: &DissatisfactionProfile) -> serde_json::Value {
    serde_json::to_value(ProfileDoc {
        profile,
        sum: profile.sum(),
        max: profile.max(),
    })
    .expect("profile serializes")
}
