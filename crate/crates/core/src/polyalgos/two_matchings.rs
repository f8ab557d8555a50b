use std::collections::{BTreeMap, BTreeSet};

use super::{require_class, require_two_agents};
use crate::classify::GraphClass;
use crate::model::{Allocation, Instance};
use crate::Result;

const SOLVER: &str = "minmax-two-matchings";

type Profile = (usize, usize);
type Owner = Option<usize>;

/// Set of achievable two-agent dissatisfaction profiles.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ProfileSet {
    entries: BTreeSet<Profile>,
}

impl ProfileSet {
    pub fn contains(&self, profile: Profile) -> bool {
        self.entries.contains(&profile)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = Profile> + '_ {
        self.entries.iter().copied()
    }

    /// `{x + shift : x ∈ self}`.
    pub fn shifted(&self, shift: Profile) -> ProfileSet {
        self.iter().map(|p| add(p, shift)).collect()
    }

    /// `{x + y : x ∈ self, y ∈ other}`.
    pub fn sum(&self, other: &ProfileSet) -> ProfileSet {
        self.iter()
            .flat_map(|x| other.iter().map(move |y| add(x, y)))
            .collect()
    }
}

impl FromIterator<Profile> for ProfileSet {
    fn from_iter<T: IntoIterator<Item = Profile>>(iter: T) -> Self {
        ProfileSet {
            entries: iter.into_iter().collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoMatchingsSolution {
    pub value: usize,
    pub allocation: Allocation,
    pub profiles: ProfileSet,
}

fn add(a: Profile, b: Profile) -> Profile {
    (a.0 + b.0, a.1 + b.1)
}

#[derive(Debug, Clone, Copy)]
struct Arc {
    agent: usize,
    tail: usize,
    head: usize,
}

impl Arc {
    /// Dissatisfaction the arc's agent suffers on the arc's two items.
    fn cost(&self, owner_of: impl Fn(usize) -> Owner) -> Profile {
        let d = if owner_of(self.tail) == Some(self.agent) {
            0
        } else if owner_of(self.head) == Some(self.agent) {
            1
        } else {
            2
        };
        if self.agent == 0 {
            (d, 0)
        } else {
            (0, d)
        }
    }

    fn other(&self, v: usize) -> usize {
        if self.tail == v {
            self.head
        } else {
            self.tail
        }
    }
}

/// A path or cycle of the union graph, as a vertex walk with the arc
/// joining each vertex to its predecessor.
struct Component {
    vertices: Vec<usize>,
    links: Vec<usize>,
    closing: Option<usize>,
}

fn components(n: usize, arcs: &[Arc]) -> Vec<Component> {
    let mut incident = vec![Vec::new(); n];
    for (e, arc) in arcs.iter().enumerate() {
        incident[arc.tail].push(e);
        incident[arc.head].push(e);
    }
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    // Paths first from their smallest endpoint, then cycles from their
    // smallest vertex.
    let starts = (0..n)
        .filter(|&v| incident[v].len() <= 1)
        .chain((0..n).filter(|&v| incident[v].len() == 2));
    for start in starts {
        if seen[start] {
            continue;
        }
        let mut vertices = vec![start];
        let mut links = Vec::new();
        seen[start] = true;
        let mut used = BTreeSet::new();
        let mut closing = None;
        let mut current = start;
        while let Some(&e) = incident[current].iter().find(|e| !used.contains(*e)) {
            let next = arcs[e].other(current);
            used.insert(e);
            if next == start {
                closing = Some(e);
                break;
            }
            seen[next] = true;
            vertices.push(next);
            links.push(e);
            current = next;
        }
        out.push(Component {
            vertices,
            links,
            closing,
        });
    }
    out
}

/// Back-link table of one dynamic programme layer: for each owner of
/// the layer's vertex, the reachable profiles and where each came from.
type Layer = Vec<(Owner, BTreeMap<Profile, (usize, Profile)>)>;

struct ComponentProfiles {
    /// Achievable profile → owners of the component's vertices, in walk order.
    witnesses: BTreeMap<Profile, Vec<Owner>>,
}

fn owner_options(inst: &Instance, v: usize) -> Vec<Owner> {
    std::iter::once(None)
        .chain(inst.desirers(v).iter().map(|&a| Some(a)))
        .collect()
}

fn run_chain(inst: &Instance, arcs: &[Arc], comp: &Component, first: &[Owner]) -> Vec<Layer> {
    let mut layers: Vec<Layer> = Vec::with_capacity(comp.vertices.len());
    layers.push(
        first
            .iter()
            .map(|&o| (o, BTreeMap::from([((0, 0), (usize::MAX, (0, 0)))])))
            .collect(),
    );
    for j in 1..comp.vertices.len() {
        let (prev_v, v) = (comp.vertices[j - 1], comp.vertices[j]);
        let arc = arcs[comp.links[j - 1]];
        let prev = &layers[j - 1];
        let layer: Layer = owner_options(inst, v)
            .into_iter()
            .map(|owner| {
                let mut table = BTreeMap::new();
                for (p, (prev_owner, profiles)) in prev.iter().enumerate() {
                    let cost = arc.cost(|x| if x == v { owner } else if x == prev_v { *prev_owner } else { None });
                    for &profile in profiles.keys() {
                        table.entry(add(profile, cost)).or_insert((p, profile));
                    }
                }
                (owner, table)
            })
            .collect();
        layers.push(layer);
    }
    layers
}

fn backtrack(layers: &[Layer], mut state: usize, mut profile: Profile) -> Vec<Owner> {
    let mut owners = vec![None; layers.len()];
    for j in (0..layers.len()).rev() {
        let (owner, table) = &layers[j][state];
        owners[j] = *owner;
        (state, profile) = table[&profile];
    }
    owners
}

fn component_profiles(inst: &Instance, arcs: &[Arc], comp: &Component) -> ComponentProfiles {
    let mut witnesses: BTreeMap<Profile, Vec<Owner>> = BTreeMap::new();
    let last = comp.vertices.len() - 1;
    match comp.closing {
        None => {
            let layers = run_chain(inst, arcs, comp, &owner_options(inst, comp.vertices[0]));
            for (state, (_, table)) in layers[last].iter().enumerate() {
                for &profile in table.keys() {
                    witnesses
                        .entry(profile)
                        .or_insert_with(|| backtrack(&layers, state, profile));
                }
            }
        }
        Some(closing) => {
            let arc = arcs[closing];
            let (first, end) = (comp.vertices[0], comp.vertices[last]);
            for start in owner_options(inst, first) {
                let layers = run_chain(inst, arcs, comp, &[start]);
                for (state, (owner, table)) in layers[last].iter().enumerate() {
                    let cost = arc.cost(|x| {
                        if x == first {
                            start
                        } else if x == end {
                            *owner
                        } else {
                            None
                        }
                    });
                    for &profile in table.keys() {
                        witnesses
                            .entry(add(profile, cost))
                            .or_insert_with(|| backtrack(&layers, state, profile));
                    }
                }
            }
        }
    }
    ComponentProfiles { witnesses }
}

/// Min-max dissatisfaction for two agents whose graphs are directed
/// matchings, by dynamic programming over the alternating paths and
/// cycles of the union graph.
///
/// Besides the optimum, returns the complete set of achievable profiles.
/// The chosen witness minimises the larger entry, ties going to the
/// lexicographically smallest profile.
pub fn minmax_two_matchings(inst: &Instance) -> Result<TwoMatchingsSolution> {
    require_two_agents(inst, SOLVER)?;
    require_class(inst, GraphClass::DirectedMatching, SOLVER)?;
    let arcs: Vec<Arc> = inst
        .agents()
        .iter()
        .enumerate()
        .flat_map(|(a, agent)| {
            agent.graph().arcs().iter().map(move |&(t, h)| Arc {
                agent: a,
                tail: agent.global(t),
                head: agent.global(h),
            })
        })
        .collect();
    let comps = components(inst.num_items(), &arcs);
    let per_component: Vec<ComponentProfiles> = comps
        .iter()
        .map(|c| component_profiles(inst, arcs.as_slice(), c))
        .collect();

    // Minkowski fold; each total remembers the component profile and the
    // previous total it came from.
    let mut totals: Vec<BTreeMap<Profile, (Profile, Profile)>> = Vec::with_capacity(comps.len());
    let mut current: BTreeSet<Profile> = BTreeSet::from([(0, 0)]);
    for comp in &per_component {
        let mut next = BTreeMap::new();
        for &before in &current {
            for &part in comp.witnesses.keys() {
                next.entry(add(before, part)).or_insert((part, before));
            }
        }
        current = next.keys().copied().collect();
        totals.push(next);
    }

    let best = *current
        .iter()
        .min_by_key(|p| (p.0.max(p.1), **p))
        .expect("profile set is never empty");
    let mut assignment = vec![None; inst.num_items()];
    let mut total = best;
    for (c, comp) in comps.iter().enumerate().rev() {
        let (part, before) = totals[c][&total];
        for (&v, &owner) in comp.vertices.iter().zip(&per_component[c].witnesses[&part]) {
            assignment[v] = owner;
        }
        total = before;
    }
    debug_assert_eq!(
        inst.profile_of(&assignment),
        vec![best.0, best.1],
        "witness reproduces the chosen profile"
    );
    Ok(TwoMatchingsSolution {
        value: best.0.max(best.1),
        allocation: inst.allocation(&assignment),
        profiles: current.into_iter().collect(),
    })
}
