use std::collections::{BTreeSet, HashMap};

use log::warn;

use super::graph::{GraphError, PreferenceGraph};
use super::{AgentId, Allocation, DissatisfactionProfile, ItemId, Violation};
use crate::{Error, Result};

/// Item-to-agent assignment vector indexed by global item index; `None`
/// means the item stays unallocated.
pub type Assignment = Vec<Option<usize>>;

/// One agent together with the translation between its graph's local
/// indices and the instance's global item indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Agent {
    id: AgentId,
    graph: PreferenceGraph,
    globals: Vec<usize>,
}

impl Agent {
    pub fn id(&self) -> &AgentId {
        &self.id
    }

    pub fn graph(&self) -> &PreferenceGraph {
        &self.graph
    }

    /// Global index of the graph's `local`-th item.
    pub fn global(&self, local: usize) -> usize {
        self.globals[local]
    }

    pub fn globals(&self) -> &[usize] {
        &self.globals
    }

    pub fn len(&self) -> usize {
        self.graph.len()
    }

    pub fn is_empty(&self) -> bool {
        self.graph.is_empty()
    }
}

/// An item universe plus one preference graph per agent.
///
/// Items and agents are kept in lexicographic order of their ids, which is
/// the canonical order used by every solver for tie-breaking.
#[derive(Debug, Clone)]
pub struct Instance {
    items: Vec<ItemId>,
    item_index: HashMap<ItemId, usize>,
    agents: Vec<Agent>,
    agent_index: HashMap<AgentId, usize>,
    // locals[a][g]: local index of global item g in agent a's graph
    locals: Vec<Vec<Option<usize>>>,
    desirers: Vec<Vec<usize>>,
    dropped: Vec<ItemId>,
}

impl PartialEq for Instance {
    fn eq(&self, other: &Self) -> bool {
        self.items == other.items && self.agents == other.agents
    }
}

impl Eq for Instance {}

impl Instance {
    pub fn builder() -> InstanceBuilder {
        InstanceBuilder::default()
    }

    /// Builds an instance from already validated graphs. Items desired by
    /// nobody are dropped with a warning.
    pub fn new(
        items: impl IntoIterator<Item = ItemId>,
        agents: impl IntoIterator<Item = (AgentId, PreferenceGraph)>,
    ) -> Result<Self> {
        let mut universe: Vec<ItemId> = items.into_iter().collect();
        universe.sort();
        if let Some(w) = universe.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::instance("items", format!("duplicate item {:?}", w[0].as_str())));
        }
        let mut agents: Vec<(AgentId, PreferenceGraph)> = agents.into_iter().collect();
        agents.sort_by(|a, b| a.0.cmp(&b.0));
        if let Some(w) = agents.windows(2).find(|w| w[0].0 == w[1].0) {
            return Err(Error::instance("agents", format!("duplicate agent {:?}", w[0].0.as_str())));
        }
        let known: BTreeSet<&ItemId> = universe.iter().collect();
        for (id, graph) in &agents {
            if let Some(v) = graph.items().iter().find(|v| !known.contains(v)) {
                return Err(Error::instance(
                    format!("agent {id}"),
                    format!("item {:?} is not in the item universe", v.as_str()),
                ));
            }
        }
        Ok(Self::assemble(universe, agents))
    }

    fn assemble(universe: Vec<ItemId>, agents: Vec<(AgentId, PreferenceGraph)>) -> Self {
        let desired: BTreeSet<&ItemId> = agents
            .iter()
            .flat_map(|(_, g)| g.items().iter())
            .collect();
        let (items, dropped): (Vec<ItemId>, Vec<ItemId>) =
            universe.iter().cloned().partition(|v| desired.contains(v));
        for v in &dropped {
            warn!("item {v:?} is desired by no agent and was dropped");
        }
        let item_index: HashMap<ItemId, usize> = items
            .iter()
            .enumerate()
            .map(|(g, v)| (v.clone(), g))
            .collect();

        let mut locals = Vec::with_capacity(agents.len());
        let mut desirers = vec![Vec::new(); items.len()];
        let mut built = Vec::with_capacity(agents.len());
        for (a, (id, graph)) in agents.into_iter().enumerate() {
            let globals: Vec<usize> = graph.items().iter().map(|v| item_index[v]).collect();
            let mut local = vec![None; items.len()];
            for (l, &g) in globals.iter().enumerate() {
                local[g] = Some(l);
                desirers[g].push(a);
            }
            locals.push(local);
            built.push(Agent { id, graph, globals });
        }
        let agent_index = built
            .iter()
            .enumerate()
            .map(|(a, agent)| (agent.id.clone(), a))
            .collect();
        Instance {
            items,
            item_index,
            agents: built,
            agent_index,
            locals,
            desirers,
            dropped,
        }
    }

    pub fn items(&self) -> &[ItemId] {
        &self.items
    }

    pub fn item(&self, global: usize) -> &ItemId {
        &self.items[global]
    }

    pub fn item_index(&self, item: &str) -> Option<usize> {
        self.item_index.get(item).copied()
    }

    pub fn num_items(&self) -> usize {
        self.items.len()
    }

    pub fn agents(&self) -> &[Agent] {
        &self.agents
    }

    pub fn agent(&self, index: usize) -> &Agent {
        &self.agents[index]
    }

    pub fn agent_index(&self, id: &str) -> Option<usize> {
        self.agent_index.get(id).copied()
    }

    pub fn num_agents(&self) -> usize {
        self.agents.len()
    }

    /// Local index of global item `global` in agent `agent`'s graph.
    pub fn local(&self, agent: usize, global: usize) -> Option<usize> {
        self.locals[agent][global]
    }

    /// Agents whose graph contains the item, in canonical order.
    pub fn desirers(&self, global: usize) -> &[usize] {
        &self.desirers[global]
    }

    /// Items removed at construction because no agent desires them.
    pub fn dropped_items(&self) -> &[ItemId] {
        &self.dropped
    }

    /// Σ_i |V_i|.
    pub fn total_size(&self) -> usize {
        self.agents.iter().map(Agent::len).sum()
    }

    pub fn max_agent_size(&self) -> usize {
        self.agents.iter().map(Agent::len).max().unwrap_or(0)
    }

    /// Per-agent dissatisfaction of an assignment vector. The vector must
    /// only give items to agents desiring them.
    pub fn profile_of(&self, assignment: &[Option<usize>]) -> Vec<usize> {
        let mut held: Vec<Vec<usize>> = vec![Vec::new(); self.agents.len()];
        for (g, owner) in assignment.iter().enumerate() {
            if let Some(a) = *owner {
                let l = self.locals[a][g].expect("assignment respects desires");
                held[a].push(l);
            }
        }
        self.agents
            .iter()
            .zip(held)
            .map(|(agent, set)| agent.len() - agent.graph.dominated_local(set).count_ones(..))
            .collect()
    }

    /// Every rule the allocation breaks; empty when it is valid.
    pub fn validate(&self, alloc: &Allocation) -> Vec<Violation> {
        let mut violations = Vec::new();
        let mut owners: HashMap<&ItemId, Vec<&AgentId>> = HashMap::new();
        for (agent, set) in alloc.iter() {
            let Some(a) = self.agent_index(agent.as_str()) else {
                violations.push(Violation::UnknownAgent(agent.clone()));
                continue;
            };
            for item in set {
                let Some(g) = self.item_index(item.as_str()) else {
                    violations.push(Violation::UnknownItem {
                        agent: agent.clone(),
                        item: item.clone(),
                    });
                    continue;
                };
                if self.locals[a][g].is_none() {
                    violations.push(Violation::IrrelevantItem {
                        agent: agent.clone(),
                        item: item.clone(),
                    });
                }
                owners.entry(item).or_default().push(agent);
            }
        }
        let mut overlaps: Vec<Violation> = owners
            .into_iter()
            .filter(|(_, agents)| agents.len() > 1)
            .map(|(item, agents)| Violation::Overlap {
                item: item.clone(),
                agents: agents.into_iter().cloned().collect(),
            })
            .collect();
        overlaps.sort_by(|a, b| a.to_string().cmp(&b.to_string()));
        violations.extend(overlaps);
        violations
    }

    /// Converts a valid allocation into an assignment vector.
    pub fn assignment(&self, alloc: &Allocation) -> Result<Assignment> {
        let violations = self.validate(alloc);
        if !violations.is_empty() {
            return Err(Error::Validation(violations));
        }
        let mut out = vec![None; self.items.len()];
        for (agent, set) in alloc.iter() {
            let a = self.agent_index[agent];
            for item in set {
                out[self.item_index[item]] = Some(a);
            }
        }
        Ok(out)
    }

    /// The allocation described by an assignment vector. Every agent of the
    /// instance appears in the result, possibly with an empty set.
    pub fn allocation(&self, assignment: &[Option<usize>]) -> Allocation {
        let mut alloc = Allocation::empty_for(self);
        for (g, owner) in assignment.iter().enumerate() {
            if let Some(a) = *owner {
                alloc.insert(self.agents[a].id.clone(), self.items[g].clone());
            }
        }
        alloc
    }

    pub fn dissatisfaction(&self, alloc: &Allocation, agent: &str) -> Result<usize> {
        let assignment = self.assignment(alloc)?;
        let a = self
            .agent_index(agent)
            .ok_or_else(|| Error::domain(format!("unknown agent {agent:?}")))?;
        Ok(self.profile_of(&assignment)[a])
    }

    pub fn profile(&self, alloc: &Allocation) -> Result<DissatisfactionProfile> {
        let assignment = self.assignment(alloc)?;
        Ok(self.profile_from(&assignment))
    }

    pub(crate) fn profile_from(&self, assignment: &[Option<usize>]) -> DissatisfactionProfile {
        self.agents
            .iter()
            .map(|agent| agent.id.clone())
            .zip(self.profile_of(assignment))
            .collect()
    }

    /// Drops items the receiving agent does not desire, logging each one.
    pub fn restrict(&self, alloc: &Allocation) -> Allocation {
        let mut out = Allocation::default();
        for (agent, set) in alloc.iter() {
            let a = self.agent_index(agent.as_str());
            out.ensure_agent(agent.clone());
            for item in set {
                let relevant = match (a, self.item_index(item.as_str())) {
                    (Some(a), Some(g)) => self.locals[a][g].is_some(),
                    _ => true,
                };
                if relevant {
                    out.insert(agent.clone(), item.clone());
                } else {
                    warn!("dropping item {item:?} from agent {agent:?}: not in the agent's graph");
                }
            }
        }
        out
    }
}

/// Collects raw agent descriptions and validates them into an [`Instance`].
///
/// Positions in errors follow the layout of the instance JSON document
/// (`items[3]`, `agents[1].arcs[0]`), with agents numbered in the order they
/// were added.
#[derive(Debug, Clone, Default)]
pub struct InstanceBuilder {
    items: Option<Vec<String>>,
    agents: Vec<RawAgent>,
}

#[derive(Debug, Clone)]
struct RawAgent {
    id: String,
    items: Vec<String>,
    arcs: Vec<(String, String)>,
}

impl InstanceBuilder {
    /// Sets the item universe explicitly. Without it the universe is the
    /// union of the agents' items.
    pub fn items<S: AsRef<str>>(mut self, items: impl IntoIterator<Item = S>) -> Self {
        self.items = Some(items.into_iter().map(|s| s.as_ref().to_owned()).collect());
        self
    }

    pub fn agent<S: AsRef<str>, T: AsRef<str>>(
        mut self,
        id: impl AsRef<str>,
        items: impl IntoIterator<Item = S>,
        arcs: impl IntoIterator<Item = (T, T)>,
    ) -> Self {
        self.agents.push(RawAgent {
            id: id.as_ref().to_owned(),
            items: items.into_iter().map(|s| s.as_ref().to_owned()).collect(),
            arcs: arcs
                .into_iter()
                .map(|(a, b)| (a.as_ref().to_owned(), b.as_ref().to_owned()))
                .collect(),
        });
        self
    }

    pub fn build(self) -> Result<Instance> {
        let universe: Vec<ItemId> = match &self.items {
            Some(items) => {
                let mut seen = BTreeSet::new();
                let mut out = Vec::with_capacity(items.len());
                for (pos, name) in items.iter().enumerate() {
                    let id = ItemId::new(name.as_str())
                        .ok_or_else(|| Error::instance(format!("items[{pos}]"), "empty item id"))?;
                    if !seen.insert(id.clone()) {
                        return Err(Error::instance(
                            format!("items[{pos}]"),
                            format!("duplicate item {name:?}"),
                        ));
                    }
                    out.push(id);
                }
                out
            }
            None => self
                .agents
                .iter()
                .flat_map(|a| a.items.iter())
                .filter_map(|s| ItemId::new(s.as_str()))
                .collect::<BTreeSet<_>>()
                .into_iter()
                .collect(),
        };
        let known: BTreeSet<&ItemId> = universe.iter().collect();

        let mut seen_agents = BTreeSet::new();
        let mut agents = Vec::with_capacity(self.agents.len());
        for (pos, raw) in self.agents.iter().enumerate() {
            let at = |suffix: &str| format!("agents[{pos}]{suffix}");
            let id = AgentId::new(raw.id.as_str())
                .ok_or_else(|| Error::instance(at(".id"), "empty agent id"))?;
            if !seen_agents.insert(id.clone()) {
                return Err(Error::instance(at(".id"), format!("duplicate agent {:?}", raw.id)));
            }
            let mut items = Vec::with_capacity(raw.items.len());
            for (t, name) in raw.items.iter().enumerate() {
                let item = ItemId::new(name.as_str())
                    .ok_or_else(|| Error::instance(at(&format!(".items[{t}]")), "empty item id"))?;
                if !known.contains(&item) {
                    return Err(Error::instance(
                        at(&format!(".items[{t}]")),
                        format!("item {name:?} is not in the item universe"),
                    ));
                }
                items.push(item);
            }
            let mut arcs = Vec::with_capacity(raw.arcs.len());
            for (t, (tail, head)) in raw.arcs.iter().enumerate() {
                let endpoint = |s: &str| {
                    ItemId::new(s).ok_or_else(|| {
                        Error::instance(at(&format!(".arcs[{t}]")), "empty arc endpoint")
                    })
                };
                arcs.push((endpoint(tail)?, endpoint(head)?));
            }
            let graph = PreferenceGraph::new(items, arcs).map_err(|err| {
                let position = match &err {
                    GraphError::DuplicateItem(_) => at(".items"),
                    GraphError::UnknownEndpoint { arc, .. }
                    | GraphError::SelfLoop { arc, .. }
                    | GraphError::DuplicateArc { arc } => at(&format!(".arcs[{arc}]")),
                    GraphError::NotAcyclic(_) => at(".arcs"),
                };
                Error::instance(position, err.to_string())
            })?;
            agents.push((id, graph));
        }
        agents.sort_by(|a, b| a.0.cmp(&b.0));
        let mut universe = universe;
        universe.sort();
        Ok(Instance::assemble(universe, agents))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn worked_example() -> Instance {
        Instance::builder()
            .items(["a", "b", "c"])
            .agent("1", ["a", "b", "c"], Vec::<(&str, &str)>::new())
            .agent("2", ["b"], Vec::<(&str, &str)>::new())
            .agent("3", ["c"], Vec::<(&str, &str)>::new())
            .build()
            .unwrap()
    }

    fn alloc(pairs: &[(&str, &[&str])]) -> Allocation {
        let mut out = Allocation::default();
        for &(agent, items) in pairs {
            out.ensure_agent(agent.into());
            for &item in items {
                out.insert(agent.into(), item.into());
            }
        }
        out
    }

    #[test]
    fn worked_example_dissatisfaction() {
        let inst = worked_example();
        let pi = alloc(&[("1", &["a"]), ("2", &["b"]), ("3", &["c"])]);
        assert_eq!(inst.dissatisfaction(&pi, "1").unwrap(), 2);
        let profile = inst.profile(&pi).unwrap();
        assert_eq!(profile.sum(), 2);
        assert_eq!(profile.max(), 2);

        let pi = alloc(&[("1", &["a", "b"]), ("3", &["c"])]);
        let profile = inst.profile(&pi).unwrap();
        assert_eq!(profile.values().collect::<Vec<_>>(), vec![1, 1, 0]);
        assert_eq!(profile.max(), 1);
    }

    #[test]
    fn empty_and_root_allocations() {
        let inst = Instance::builder()
            .agent("1", ["a", "b", "c"], [("a", "b"), ("b", "c")])
            .agent("2", ["b", "d"], Vec::<(&str, &str)>::new())
            .build()
            .unwrap();
        assert_eq!(inst.dissatisfaction(&Allocation::default(), "1").unwrap(), 3);
        let pi = alloc(&[("1", &["a"])]);
        assert_eq!(inst.dissatisfaction(&pi, "1").unwrap(), 0);
        assert_eq!(inst.dissatisfaction(&pi, "2").unwrap(), 2);
    }

    #[test]
    fn validation_reports_every_violation() {
        let inst = worked_example();
        assert!(inst.validate(&alloc(&[("1", &["a"]), ("2", &["b"])])).is_empty());

        let overlap = inst.validate(&alloc(&[("1", &["b"]), ("2", &["b"])]));
        assert_eq!(overlap.len(), 1);
        assert!(overlap[0].to_string().contains("overlap"));

        let irrelevant = inst.validate(&alloc(&[("2", &["a"])]));
        assert_eq!(irrelevant.len(), 1);
        assert!(irrelevant[0].to_string().contains("irrelevant item"));

        let many = inst.validate(&alloc(&[("9", &["a"]), ("1", &["z"])]));
        assert_eq!(many.len(), 2);
        assert!(matches!(
            inst.dissatisfaction(&alloc(&[("2", &["a"])]), "1"),
            Err(Error::Validation(_))
        ));
    }

    #[test]
    fn undesired_items_are_dropped() {
        let inst = Instance::builder()
            .items(["a", "b", "z"])
            .agent("1", ["a", "b"], [("a", "b")])
            .build()
            .unwrap();
        assert_eq!(inst.num_items(), 2);
        assert_eq!(inst.dropped_items(), &[ItemId::from("z")]);
    }

    #[test]
    fn builder_errors_carry_positions() {
        let err = Instance::builder()
            .agent("1", ["a"], Vec::<(&str, &str)>::new())
            .agent("2", ["a", "b"], [("a", "q")])
            .build()
            .unwrap_err();
        assert!(matches!(err, Error::Instance { ref position, .. } if position == "agents[1].arcs[0]"));

        let err = Instance::builder()
            .agent("1", ["a", "b"], [("a", "b"), ("b", "a")])
            .build()
            .unwrap_err();
        assert!(err.to_string().contains("not acyclic"));

        let err = Instance::builder()
            .items(["a"])
            .agent("1", ["a", "b"], Vec::<(&str, &str)>::new())
            .build()
            .unwrap_err();
        assert!(matches!(err, Error::Instance { ref position, .. } if position == "agents[0].items[1]"));
    }

    #[test]
    fn restrict_drops_irrelevant_items() {
        let inst = worked_example();
        let fixed = inst.restrict(&alloc(&[("2", &["a", "b"])]));
        assert_eq!(fixed, alloc(&[("2", &["b"])]));
    }
}
