//! Graph-class recognition and solver routing.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::model::{AgentId, Instance, ItemId, PreferenceGraph};

/// Environment variable overriding the exhaustive-search size guard.
pub const ORACLE_LIMIT_ENV: &str = "PREFALLOC_ORACLE_LIMIT";
pub const DEFAULT_ORACLE_LIMIT: u128 = 10_000_000;
pub const DEFAULT_GAMMA_LIMIT: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum GraphClass {
    OutStar,
    OutTree,
    Path,
    DisjointPaths,
    DirectedMatching,
    UnionOutStars,
    GeneralDAG,
}

impl fmt::Display for GraphClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Objective {
    Sum,
    Max,
}

impl Objective {
    /// Aggregates a profile under this objective.
    pub fn aggregate(self, values: impl IntoIterator<Item = usize>) -> usize {
        let values = values.into_iter();
        match self {
            Objective::Sum => values.sum(),
            Objective::Max => values.max().unwrap_or(0),
        }
    }
}

impl fmt::Display for Objective {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Objective::Sum => "sum",
            Objective::Max => "max",
        })
    }
}

impl FromStr for Objective {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "sum" => Ok(Objective::Sum),
            "max" => Ok(Objective::Max),
            other => Err(format!("unknown objective {other:?} (expected sum or max)")),
        }
    }
}

fn is_out_tree(g: &PreferenceGraph) -> bool {
    let n = g.len();
    let roots: Vec<usize> = (0..n).filter(|&v| g.in_degree(v) == 0).collect();
    if roots.len() != 1 || (0..n).any(|v| g.in_degree(v) > 1) {
        return false;
    }
    g.reach(roots[0]).count_ones(..) == n - 1
}

/// Every graph class that `g` belongs to.
pub fn classes_of(g: &PreferenceGraph) -> BTreeSet<GraphClass> {
    let n = g.len();
    let mut out = BTreeSet::new();
    if is_out_tree(g) {
        out.insert(GraphClass::OutTree);
        let root = (0..n).find(|&v| g.in_degree(v) == 0).expect("tree has a root");
        if g.arcs().iter().all(|&(t, _)| t == root) {
            out.insert(GraphClass::OutStar);
        }
        if (0..n).all(|v| g.out_degree(v) <= 1) {
            out.insert(GraphClass::Path);
        }
    }
    if (0..n).all(|v| g.in_degree(v) <= 1 && g.out_degree(v) <= 1) {
        out.insert(GraphClass::DisjointPaths);
    }
    if (0..n).all(|v| g.degree(v) == 1) {
        out.insert(GraphClass::DirectedMatching);
    }
    if g
        .arcs()
        .iter()
        .all(|&(t, h)| g.in_degree(t) == 0 && g.out_degree(h) == 0 && g.in_degree(h) == 1)
    {
        out.insert(GraphClass::UnionOutStars);
    }
    if out.is_empty() {
        out.insert(GraphClass::GeneralDAG);
    }
    out
}

pub fn is_junction(g: &PreferenceGraph, v: usize) -> bool {
    g.in_degree(v) > 1 || g.out_degree(v) > 1
}

/// Local indices of the junction vertices of `g`.
pub fn junction_locals(g: &PreferenceGraph) -> Vec<usize> {
    (0..g.len()).filter(|&v| is_junction(g, v)).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct JunctionSummary {
    pub per_agent: BTreeMap<AgentId, BTreeSet<ItemId>>,
    pub gamma: usize,
}

pub fn junctions(inst: &Instance) -> JunctionSummary {
    let per_agent: BTreeMap<AgentId, BTreeSet<ItemId>> = inst
        .agents()
        .iter()
        .map(|a| {
            let g = a.graph();
            let set = junction_locals(g).into_iter().map(|v| g.item(v).clone()).collect();
            (a.id().clone(), set)
        })
        .collect();
    let gamma = per_agent.values().map(BTreeSet::len).sum();
    JunctionSummary { per_agent, gamma }
}

/// The concrete algorithm chosen for an (instance, objective) pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SolverChoice {
    MinSumMatchings,
    MinSumPaths,
    MinSumDisjointPaths,
    MinSumTwoStarForests,
    JunctionFpt,
    MinMaxPaths,
    MinMaxTwoMatchings,
    Oracle,
    OracleTooLarge,
}

impl SolverChoice {
    pub const ALGORITHMS: [SolverChoice; 8] = [
        SolverChoice::MinSumMatchings,
        SolverChoice::MinSumPaths,
        SolverChoice::MinSumDisjointPaths,
        SolverChoice::MinSumTwoStarForests,
        SolverChoice::JunctionFpt,
        SolverChoice::MinMaxPaths,
        SolverChoice::MinMaxTwoMatchings,
        SolverChoice::Oracle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SolverChoice::MinSumMatchings => "minsum-matchings",
            SolverChoice::MinSumPaths => "minsum-paths",
            SolverChoice::MinSumDisjointPaths => "minsum-disjoint-paths",
            SolverChoice::MinSumTwoStarForests => "minsum-two-star-forests",
            SolverChoice::JunctionFpt => "junction-fpt",
            SolverChoice::MinMaxPaths => "minmax-paths",
            SolverChoice::MinMaxTwoMatchings => "minmax-two-matchings",
            SolverChoice::Oracle => "oracle",
            SolverChoice::OracleTooLarge => "oracle-too-large",
        }
    }

    /// The objective a specialised solver optimises; `None` for the oracle.
    pub fn objective(self) -> Option<Objective> {
        match self {
            SolverChoice::MinSumMatchings
            | SolverChoice::MinSumPaths
            | SolverChoice::MinSumDisjointPaths
            | SolverChoice::MinSumTwoStarForests
            | SolverChoice::JunctionFpt => Some(Objective::Sum),
            SolverChoice::MinMaxPaths | SolverChoice::MinMaxTwoMatchings => Some(Objective::Max),
            SolverChoice::Oracle | SolverChoice::OracleTooLarge => None,
        }
    }
}

impl Serialize for SolverChoice {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.name())
    }
}

impl fmt::Display for SolverChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SolverChoice {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALGORITHMS
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| {
                let names: Vec<&str> = Self::ALGORITHMS.iter().map(|c| c.name()).collect();
                format!("unknown algorithm {s:?} (expected auto or one of {})", names.join(", "))
            })
    }
}

/// Size limits for the exponential solvers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest admissible (k+1)^n for exhaustive search.
    pub oracle: u128,
    /// Largest admissible γ for the junction algorithm.
    pub gamma: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            oracle: DEFAULT_ORACLE_LIMIT,
            gamma: DEFAULT_GAMMA_LIMIT,
        }
    }
}

impl Limits {
    /// Defaults, with the oracle limit taken from the environment when set
    /// to a valid integer.
    pub fn from_env() -> Self {
        let mut limits = Limits::default();
        if let Ok(raw) = std::env::var(ORACLE_LIMIT_ENV) {
            match raw.trim().parse() {
                Ok(limit) => limits.oracle = limit,
                Err(_) => log::warn!("ignoring {ORACLE_LIMIT_ENV}={raw:?}: not an integer"),
            }
        }
        limits
    }
}

/// (k+1)^n, saturating at `u128::MAX`.
pub fn oracle_size(inst: &Instance) -> u128 {
    let base = inst.num_agents() as u128 + 1;
    (0..inst.num_items()).fold(1u128, |acc, _| acc.saturating_mul(base))
}

fn all(inst: &Instance, class: GraphClass) -> bool {
    inst.agents()
        .iter()
        .all(|a| classes_of(a.graph()).contains(&class))
}

pub fn dispatch(inst: &Instance, objective: Objective) -> SolverChoice {
    dispatch_with(inst, objective, &Limits::from_env())
}

pub fn dispatch_with(inst: &Instance, objective: Objective, limits: &Limits) -> SolverChoice {
    let two = inst.num_agents() == 2;
    let special = match objective {
        Objective::Sum => {
            if all(inst, GraphClass::DirectedMatching) {
                Some(SolverChoice::MinSumMatchings)
            } else if all(inst, GraphClass::Path) {
                Some(SolverChoice::MinSumPaths)
            } else if all(inst, GraphClass::DisjointPaths) {
                Some(SolverChoice::MinSumDisjointPaths)
            } else if two && all(inst, GraphClass::UnionOutStars) {
                Some(SolverChoice::MinSumTwoStarForests)
            } else if junctions(inst).gamma <= limits.gamma {
                Some(SolverChoice::JunctionFpt)
            } else {
                None
            }
        }
        Objective::Max => {
            if all(inst, GraphClass::Path) {
                Some(SolverChoice::MinMaxPaths)
            } else if two && all(inst, GraphClass::DirectedMatching) {
                Some(SolverChoice::MinMaxTwoMatchings)
            } else {
                None
            }
        }
    };
    special.unwrap_or_else(|| {
        if oracle_size(inst) <= limits.oracle {
            SolverChoice::Oracle
        } else {
            SolverChoice::OracleTooLarge
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use GraphClass::*;

    fn graph(items: &[&str], arcs: &[(&str, &str)]) -> PreferenceGraph {
        PreferenceGraph::new(
            items.iter().map(|&s| ItemId::from(s)),
            arcs.iter().map(|&(a, b)| (ItemId::from(a), ItemId::from(b))),
        )
        .unwrap()
    }

    fn set(classes: &[GraphClass]) -> BTreeSet<GraphClass> {
        classes.iter().copied().collect()
    }

    #[test]
    fn class_examples() {
        assert_eq!(
            classes_of(&graph(&["a", "b"], &[("a", "b")])),
            set(&[OutStar, OutTree, Path, DisjointPaths, DirectedMatching, UnionOutStars])
        );
        assert_eq!(
            classes_of(&graph(&["r", "x", "y"], &[("r", "x"), ("r", "y")])),
            set(&[OutStar, OutTree, UnionOutStars])
        );
        assert_eq!(
            classes_of(&graph(&["a", "b", "c", "d"], &[("a", "b"), ("c", "d")])),
            set(&[DirectedMatching, DisjointPaths, UnionOutStars])
        );
    }

    #[test]
    fn isolated_vertex_is_not_a_matching() {
        assert_eq!(
            classes_of(&graph(&["v"], &[])),
            set(&[OutStar, OutTree, Path, DisjointPaths, UnionOutStars])
        );
    }

    #[test]
    fn diamond_is_general() {
        let g = graph(
            &["a", "b", "c", "d"],
            &[("a", "b"), ("a", "c"), ("b", "d"), ("c", "d")],
        );
        assert_eq!(classes_of(&g), set(&[GeneralDAG]));
        let deep_tree = graph(&["a", "b", "c", "d"], &[("a", "b"), ("b", "c"), ("b", "d")]);
        assert_eq!(classes_of(&deep_tree), set(&[OutTree]));
    }

    #[test]
    fn gamma_counts_with_multiplicity() {
        let star = Instance::builder()
            .agent("1", ["r", "x", "y"], [("r", "x"), ("r", "y")])
            .build()
            .unwrap();
        assert_eq!(junctions(&star).gamma, 1);
        let twice = Instance::builder()
            .agent("1", ["r", "x", "y"], [("r", "x"), ("r", "y")])
            .agent("2", ["r", "x", "y"], [("r", "x"), ("r", "y")])
            .build()
            .unwrap();
        assert_eq!(junctions(&twice).gamma, 2);
        let matchings = Instance::builder()
            .agent("1", ["a", "b"], [("a", "b")])
            .agent("2", ["a", "b", "c", "d"], [("b", "a"), ("c", "d")])
            .build()
            .unwrap();
        assert_eq!(junctions(&matchings).gamma, 0);
    }

    fn matching_instance(k: usize) -> Instance {
        (0..k)
            .fold(Instance::builder(), |b, i| {
                b.agent(format!("{i}"), ["a", "b", "c", "d"], [("a", "b"), ("d", "c")])
            })
            .build()
            .unwrap()
    }

    #[test]
    fn dispatch_examples() {
        let limits = Limits::default();
        let m5 = matching_instance(5);
        assert_eq!(dispatch_with(&m5, Objective::Sum, &limits), SolverChoice::MinSumMatchings);
        let choice = dispatch_with(&m5, Objective::Max, &limits);
        assert!(matches!(choice, SolverChoice::Oracle | SolverChoice::OracleTooLarge));
        assert_eq!(
            dispatch_with(&matching_instance(2), Objective::Max, &limits),
            SolverChoice::MinMaxTwoMatchings
        );

        let paths = Instance::builder()
            .agent("1", ["a", "b", "c"], [("a", "b"), ("b", "c")])
            .agent("2", ["a", "c"], [("c", "a")])
            .build()
            .unwrap();
        assert_eq!(dispatch_with(&paths, Objective::Max, &limits), SolverChoice::MinMaxPaths);
        assert_eq!(dispatch_with(&paths, Objective::Sum, &limits), SolverChoice::MinSumPaths);
    }

    #[test]
    fn max_over_path_forests_never_uses_bottleneck_assignment() {
        let forest = Instance::builder()
            .agent("1", ["a", "b", "c"], [("a", "b")])
            .agent("2", ["a", "b", "c"], [("b", "c")])
            .build()
            .unwrap();
        assert_eq!(
            dispatch_with(&forest, Objective::Sum, &Limits::default()),
            SolverChoice::MinSumDisjointPaths
        );
        assert_eq!(
            dispatch_with(&forest, Objective::Max, &Limits::default()),
            SolverChoice::Oracle
        );
        let tiny = Limits { oracle: 1, gamma: 6 };
        assert_eq!(
            dispatch_with(&forest, Objective::Max, &tiny),
            SolverChoice::OracleTooLarge
        );
    }

    #[test]
    fn algorithm_names_round_trip() {
        for choice in SolverChoice::ALGORITHMS {
            assert_eq!(choice.name().parse::<SolverChoice>().unwrap(), choice);
        }
        assert!("bogus".parse::<SolverChoice>().is_err());
    }
}
