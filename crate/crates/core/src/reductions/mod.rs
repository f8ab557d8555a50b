//! Instance generators for the hardness constructions, with the forward
//! and reverse witness maps used to test them.
//!
//! Generated names are fixed so that output is stable across runs:
//! ground elements become `x:<name>`, set and clause indices start at 1,
//! and numbered gadget items read like `h:7` or `v:2:3` (variable 2, copy 3).

mod corpus;
mod matchings;
mod outstars;
mod outtrees;
mod sources;
mod two_agents;
mod two_paths;

pub use corpus::{TINY_SAT, TINY_UNSAT};
pub use matchings::gen_minmax_matchings;
pub use outstars::gen_minmax_outstars;
pub use outtrees::gen_minsum_outtrees;
pub use sources::{
    random_formula, random_x3c, Cnf3Formula, ExactCover, Literal, TruthAssignment, X3CInstance,
    TRUTH_TABLE_LIMIT,
};
pub use two_agents::gen_two_agents_sat;
pub use two_paths::gen_minmax_two_paths_sat;

use std::fmt;
use std::str::FromStr;

use crate::classify::{classes_of, GraphClass, Objective};
use crate::model::{Allocation, Instance};
use crate::{Error, Result};

/// The available constructions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Reduction {
    /// Exact cover to min-max with out-star preferences.
    OutStars,
    /// Exact cover to min-sum with spanning out-tree preferences.
    OutTrees,
    /// 3-SAT to both objectives with two agents.
    TwoAgentsSat,
    /// Exact cover to min-max with directed-matching preferences.
    Matchings,
    /// 3-SAT to min-max with preferences of at most two short paths.
    TwoPathsSat,
}

impl Reduction {
    pub const ALL: [Reduction; 5] = [
        Reduction::OutStars,
        Reduction::OutTrees,
        Reduction::TwoAgentsSat,
        Reduction::Matchings,
        Reduction::TwoPathsSat,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Reduction::OutStars => "x3c-stars",
            Reduction::OutTrees => "x3c-trees",
            Reduction::TwoAgentsSat => "sat-2agents",
            Reduction::Matchings => "x3c-matchings",
            Reduction::TwoPathsSat => "sat-paths",
        }
    }

    /// Whether the source problem is a formula rather than a set system.
    pub fn from_sat(self) -> bool {
        matches!(self, Reduction::TwoAgentsSat | Reduction::TwoPathsSat)
    }
}

impl fmt::Display for Reduction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Reduction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL.into_iter().find(|r| r.name() == s).ok_or_else(|| {
            let names: Vec<&str> = Self::ALL.iter().map(|r| r.name()).collect();
            Error::domain(format!("unknown reduction {s:?} (expected one of {})", names.join(", ")))
        })
    }
}

/// Input to a construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Source {
    X3c(X3CInstance),
    Cnf(Cnf3Formula),
}

/// Certificate for a source instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    Cover(ExactCover),
    Assignment(TruthAssignment),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Threshold {
    pub objective: Objective,
    pub bound: usize,
}

/// A generated instance. The source is a yes-instance exactly when some
/// allocation meets one (equivalently every) listed threshold.
#[derive(Debug, Clone)]
pub struct Reduced {
    pub reduction: Reduction,
    pub instance: Instance,
    pub thresholds: Vec<Threshold>,
}

impl Reduced {
    /// Whether the allocation meets at least one of the thresholds. The
    /// allocation must be valid for the instance.
    pub fn is_met_by(&self, alloc: &Allocation) -> Result<bool> {
        let profile = self.instance.profile(alloc)?;
        Ok(self
            .thresholds
            .iter()
            .any(|t| t.objective.aggregate(profile.values()) <= t.bound))
    }
}

fn x3c_of(reduction: Reduction, source: &Source) -> Result<&X3CInstance> {
    match source {
        Source::X3c(x) if !reduction.from_sat() => Ok(x),
        _ => Err(Error::domain(format!("{reduction} expects an exact-cover instance"))),
    }
}

fn cnf_of(reduction: Reduction, source: &Source) -> Result<&Cnf3Formula> {
    match source {
        Source::Cnf(f) if reduction.from_sat() => Ok(f),
        _ => Err(Error::domain(format!("{reduction} expects a 3-CNF formula"))),
    }
}

pub fn generate(reduction: Reduction, source: &Source) -> Result<Reduced> {
    match reduction {
        Reduction::OutStars => gen_minmax_outstars(x3c_of(reduction, source)?),
        Reduction::OutTrees => gen_minsum_outtrees(x3c_of(reduction, source)?),
        Reduction::Matchings => gen_minmax_matchings(x3c_of(reduction, source)?),
        Reduction::TwoAgentsSat => gen_two_agents_sat(cnf_of(reduction, source)?),
        Reduction::TwoPathsSat => gen_minmax_two_paths_sat(cnf_of(reduction, source)?),
    }
}

/// Maps a source certificate to an allocation meeting the threshold of
/// the generated instance.
pub fn witness_allocation(reduction: Reduction, source: &Source, witness: &Witness) -> Result<Allocation> {
    let reduced = generate(reduction, source)?;
    let alloc = match (witness, reduction.from_sat()) {
        (Witness::Cover(cover), false) => {
            let x3c = x3c_of(reduction, source)?;
            x3c.check_cover(cover)?;
            match reduction {
                Reduction::OutStars => outstars::forward(x3c, cover),
                Reduction::OutTrees => outtrees::forward(x3c, cover),
                _ => matchings::forward(x3c, cover),
            }
        }
        (Witness::Assignment(assignment), true) => {
            let f = cnf_of(reduction, source)?;
            f.check_assignment(assignment)?;
            match reduction {
                Reduction::TwoAgentsSat => two_agents::forward(f, assignment),
                _ => two_paths::forward(f, assignment),
            }
        }
        _ => return Err(Error::domain(format!("wrong kind of witness for {reduction}"))),
    };
    let alloc = reduced.instance.restrict(&alloc);
    debug_assert!(
        reduced.is_met_by(&alloc).unwrap_or(false),
        "forward witness meets the threshold"
    );
    Ok(alloc)
}

/// Reads a source certificate off an allocation meeting the threshold.
pub fn witness_extract(reduction: Reduction, source: &Source, alloc: &Allocation) -> Result<Witness> {
    let reduced = generate(reduction, source)?;
    let violations = reduced.instance.validate(alloc);
    if !violations.is_empty() {
        return Err(Error::Validation(violations));
    }
    if !reduced.is_met_by(alloc)? {
        return Err(Error::domain("allocation does not meet the threshold"));
    }
    let witness = if reduction.from_sat() {
        let f = cnf_of(reduction, source)?;
        let assignment = match reduction {
            Reduction::TwoAgentsSat => two_agents::reverse(f, alloc),
            _ => two_paths::reverse(f, alloc),
        };
        f.check_assignment(&assignment)?;
        Witness::Assignment(assignment)
    } else {
        let x3c = x3c_of(reduction, source)?;
        let cover = match reduction {
            Reduction::OutStars => outstars::reverse(x3c, alloc),
            Reduction::OutTrees => outtrees::reverse(x3c, alloc),
            _ => matchings::reverse(x3c, alloc),
        };
        x3c.check_cover(&cover)?;
        Witness::Cover(cover)
    };
    Ok(witness)
}

/// Checks the graph class each construction promises.
pub fn check_structure(reduction: Reduction, inst: &Instance) -> Result<()> {
    let fail = |agent: &str, what: &str| {
        Err(Error::domain(format!("{reduction}: graph of agent {agent} {what}")))
    };
    for agent in inst.agents() {
        let g = agent.graph();
        let classes = classes_of(g);
        let id = agent.id().as_str();
        match reduction {
            Reduction::OutStars if !classes.contains(&GraphClass::OutStar) => {
                return fail(id, "is not an out-star")
            }
            Reduction::OutTrees if !classes.contains(&GraphClass::OutTree) => {
                return fail(id, "is not an out-tree")
            }
            Reduction::OutTrees | Reduction::TwoAgentsSat if g.len() != inst.num_items() => {
                return fail(id, "does not contain every item")
            }
            Reduction::Matchings if !classes.contains(&GraphClass::DirectedMatching) => {
                return fail(id, "is not a directed matching")
            }
            Reduction::TwoPathsSat
                if !classes.contains(&GraphClass::DisjointPaths)
                    || g.components().len() > 2
                    || g.len() > 5 =>
            {
                return fail(id, "is not at most two paths on at most five items")
            }
            _ => {}
        }
    }
    if reduction == Reduction::TwoAgentsSat && inst.num_agents() != 2 {
        return Err(Error::domain(format!("{reduction}: expected 2 agents")));
    }
    Ok(())
}

/// Agents of a construction under way, with explicit item lists.
#[derive(Default)]
struct Construction {
    agents: Vec<(String, Vec<String>, Vec<(String, String)>)>,
}

impl Construction {
    fn agent(&mut self, id: impl Into<String>, items: Vec<String>, arcs: Vec<(String, String)>) {
        self.agents.push((id.into(), items, arcs));
    }

    fn build(self) -> Result<Instance> {
        self.agents
            .into_iter()
            .fold(Instance::builder(), |b, (id, items, arcs)| b.agent(id, items, arcs))
            .build()
    }
}

/// Arcs from `root` to every leaf.
fn star(root: &str, leaves: &[String]) -> Vec<(String, String)> {
    leaves.iter().map(|l| (root.to_owned(), l.clone())).collect()
}

/// Arcs along consecutive items.
fn chain(items: &[String]) -> Vec<(String, String)> {
    items.windows(2).map(|w| (w[0].clone(), w[1].clone())).collect()
}

fn element(x3c: &X3CInstance, e: usize) -> String {
    format!("x:{}", x3c.elements()[e])
}

fn elements(x3c: &X3CInstance) -> Vec<String> {
    (0..x3c.elements().len()).map(|e| element(x3c, e)).collect()
}

/// Item standing for set `j` (0-based), named from 1.
fn set_item(j: usize) -> String {
    format!("s:{}", j + 1)
}

fn gadget(prefix: &str, r: usize) -> String {
    format!("{prefix}:{r}")
}

fn holds(alloc: &Allocation, agent: &str, item: &str) -> bool {
    alloc.items_of(agent).is_some_and(|s| s.contains(item))
}

fn give(alloc: &mut Allocation, agent: &str, item: &str) {
    alloc.insert(agent.into(), item.into());
}
