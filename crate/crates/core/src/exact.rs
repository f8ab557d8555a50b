//! Exhaustive search over assignment vectors: every item goes to nobody
//! or to one agent desiring it.

use std::collections::{BTreeSet, HashSet};
use std::ops::ControlFlow;

use rayon::prelude::*;

use crate::classify::{oracle_size, Limits, Objective};
use crate::model::{Allocation, Assignment, DissatisfactionProfile, Instance};
use crate::{Error, Result};

/// Minimum number of subtrees handed to the thread pool.
const PARALLEL_FANOUT: u128 = 256;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleOptions {
    /// Largest admissible (k+1)^n; `None` disables the guard.
    pub limit: Option<u128>,
    /// Skip allocations giving an agent two comparable items.
    pub minimal_only: bool,
}

impl Default for OracleOptions {
    fn default() -> Self {
        OracleOptions {
            limit: Some(Limits::from_env().oracle),
            minimal_only: false,
        }
    }
}

impl OracleOptions {
    pub fn unlimited() -> Self {
        OracleOptions {
            limit: None,
            minimal_only: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleResult {
    pub value: usize,
    pub witness: Allocation,
    pub assignment: Assignment,
    pub profile: DissatisfactionProfile,
    /// Number of complete assignment vectors evaluated.
    pub explored: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Decision {
    Yes(Allocation),
    No,
}

impl Decision {
    pub fn is_yes(&self) -> bool {
        matches!(self, Decision::Yes(_))
    }
}

#[derive(Clone)]
struct State {
    assignment: Assignment,
    dominated: Vec<u64>,
    held: Vec<u64>,
}

struct Enumerator<'a> {
    inst: &'a Instance,
    // cover[g][c] / comparable[g][c]: masks over the local items of the
    // c-th agent desiring item g
    cover: Vec<Vec<u64>>,
    comparable: Vec<Vec<u64>>,
    own: Vec<Vec<u64>>,
    sizes: Vec<u32>,
    minimal_only: bool,
}

impl<'a> Enumerator<'a> {
    fn new(inst: &'a Instance, options: &OracleOptions) -> Result<Self> {
        if let Some(agent) = inst.agents().iter().find(|a| a.len() > 64) {
            return Err(Error::domain(format!(
                "exhaustive search supports at most 64 items per agent; agent {} has {}",
                agent.id(),
                agent.len()
            )));
        }
        if let Some(limit) = options.limit {
            let size = oracle_size(inst);
            if size > limit {
                return Err(Error::OracleTooLarge { size, limit });
            }
        }
        let to_mask = |bits: &fixedbitset::FixedBitSet| bits.ones().fold(0u64, |m, v| m | 1 << v);
        let mut cover = Vec::with_capacity(inst.num_items());
        let mut comparable = Vec::with_capacity(inst.num_items());
        let mut own = Vec::with_capacity(inst.num_items());
        for g in 0..inst.num_items() {
            let (mut c, mut p, mut o) = (Vec::new(), Vec::new(), Vec::new());
            for &a in inst.desirers(g) {
                let graph = inst.agent(a).graph();
                let l = inst.local(a, g).expect("desirer has the item");
                let bit = 1u64 << l;
                c.push(bit | to_mask(graph.reach(l)));
                p.push(to_mask(graph.reach(l)) | to_mask(graph.reach_rev(l)));
                o.push(bit);
            }
            cover.push(c);
            comparable.push(p);
            own.push(o);
        }
        Ok(Enumerator {
            inst,
            cover,
            comparable,
            own,
            sizes: inst.agents().iter().map(|a| a.len() as u32).collect(),
            minimal_only: options.minimal_only,
        })
    }

    fn initial(&self) -> State {
        State {
            assignment: vec![None; self.inst.num_items()],
            dominated: vec![0; self.inst.num_agents()],
            held: vec![0; self.inst.num_agents()],
        }
    }

    fn profile<'s>(&'s self, state: &'s State) -> impl Iterator<Item = usize> + 's {
        self.sizes
            .iter()
            .zip(&state.dominated)
            .map(|(&n, d)| (n - d.count_ones()) as usize)
    }

    /// Visits, in lexicographic order of assignment vectors, every
    /// completion of items `depth..stop`.
    fn walk<F>(&self, depth: usize, stop: usize, state: &mut State, visit: &mut F) -> ControlFlow<()>
    where
        F: FnMut(&State) -> ControlFlow<()>,
    {
        if depth == stop {
            return visit(state);
        }
        self.walk(depth + 1, stop, state, visit)?;
        for (c, &a) in self.inst.desirers(depth).iter().enumerate() {
            if self.minimal_only && state.held[a] & self.comparable[depth][c] != 0 {
                continue;
            }
            let (dominated, held) = (state.dominated[a], state.held[a]);
            state.dominated[a] |= self.cover[depth][c];
            state.held[a] |= self.own[depth][c];
            state.assignment[depth] = Some(a);
            let flow = self.walk(depth + 1, stop, state, visit);
            state.dominated[a] = dominated;
            state.held[a] = held;
            state.assignment[depth] = None;
            flow?;
        }
        ControlFlow::Continue(())
    }

    /// Partial states over the first few items, enough to keep every
    /// worker busy, in lexicographic order.
    fn prefixes(&self) -> (usize, Vec<State>) {
        let mut depth = 0;
        let mut count: u128 = 1;
        while depth < self.inst.num_items() && count < PARALLEL_FANOUT {
            count *= self.inst.desirers(depth).len() as u128 + 1;
            depth += 1;
        }
        let mut out = Vec::new();
        let _ = self.walk(0, depth, &mut self.initial(), &mut |s| {
            out.push(s.clone());
            ControlFlow::Continue(())
        });
        (depth, out)
    }
}

pub fn brute_force(inst: &Instance, objective: Objective) -> Result<OracleResult> {
    brute_force_with(inst, objective, &OracleOptions::default())
}

/// Optimal value and the lexicographically least optimal assignment
/// vector (nobody before any agent, agents in canonical order).
pub fn brute_force_with(
    inst: &Instance,
    objective: Objective,
    options: &OracleOptions,
) -> Result<OracleResult> {
    let search = Enumerator::new(inst, options)?;
    let (depth, prefixes) = search.prefixes();
    let n = inst.num_items();
    let partial: Vec<(Option<(usize, Assignment)>, u64)> = prefixes
        .into_par_iter()
        .map(|mut state| {
            let mut best: Option<(usize, Assignment)> = None;
            let mut explored = 0u64;
            let _ = search.walk(depth, n, &mut state, &mut |s| {
                explored += 1;
                let value = objective.aggregate(search.profile(s));
                if best.as_ref().is_none_or(|(v, _)| value < *v) {
                    best = Some((value, s.assignment.clone()));
                }
                ControlFlow::Continue(())
            });
            (best, explored)
        })
        .collect();

    let explored = partial.iter().map(|p| p.1).sum();
    let (value, assignment) = partial
        .into_iter()
        .filter_map(|p| p.0)
        .reduce(|best, next| if next.0 < best.0 { next } else { best })
        .expect("the empty assignment is always explored");
    Ok(OracleResult {
        value,
        witness: inst.allocation(&assignment),
        profile: inst.profile_from(&assignment),
        assignment,
        explored,
    })
}

/// Every achievable dissatisfaction vector, each in canonical agent order.
pub fn all_profiles(inst: &Instance) -> Result<BTreeSet<Vec<usize>>> {
    all_profiles_with(inst, &OracleOptions::default())
}

pub fn all_profiles_with(inst: &Instance, options: &OracleOptions) -> Result<BTreeSet<Vec<usize>>> {
    let search = Enumerator::new(inst, options)?;
    let (depth, prefixes) = search.prefixes();
    let n = inst.num_items();
    let sets: Vec<HashSet<Vec<usize>>> = prefixes
        .into_par_iter()
        .map(|mut state| {
            let mut seen = HashSet::new();
            let _ = search.walk(depth, n, &mut state, &mut |s| {
                seen.insert(search.profile(s).collect());
                ControlFlow::Continue(())
            });
            seen
        })
        .collect();
    Ok(sets.into_iter().flatten().collect())
}

pub fn decide(inst: &Instance, objective: Objective, bound: usize) -> Result<Decision> {
    decide_with(inst, objective, bound, &OracleOptions::default())
}

/// Whether some allocation has objective value at most `bound`; the
/// witness is the lexicographically least such assignment.
pub fn decide_with(
    inst: &Instance,
    objective: Objective,
    bound: usize,
    options: &OracleOptions,
) -> Result<Decision> {
    let search = Enumerator::new(inst, options)?;
    let (depth, prefixes) = search.prefixes();
    let n = inst.num_items();
    let found = prefixes.into_par_iter().find_map_first(|mut state| {
        let mut hit = None;
        let _ = search.walk(depth, n, &mut state, &mut |s| {
            if objective.aggregate(search.profile(s)) <= bound {
                hit = Some(s.assignment.clone());
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        });
        hit
    });
    Ok(match found {
        Some(assignment) => Decision::Yes(inst.allocation(&assignment)),
        None => Decision::No,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Instance;

    fn worked_example() -> Instance {
        Instance::builder()
            .agent("1", ["a", "b", "c"], Vec::<(&str, &str)>::new())
            .agent("2", ["b"], Vec::<(&str, &str)>::new())
            .agent("3", ["c"], Vec::<(&str, &str)>::new())
            .build()
            .unwrap()
    }

    #[test]
    fn worked_example_values() {
        let inst = worked_example();
        let max = brute_force(&inst, Objective::Max).unwrap();
        assert_eq!(max.value, 1);
        assert_eq!(max.profile.max(), 1);
        let sum = brute_force(&inst, Objective::Sum).unwrap();
        assert_eq!(sum.value, 2);
        assert_eq!(sum.profile.sum(), 2);
        // a, b, c each have 1 + desirer choices: 2 * 3 * 3.
        assert_eq!(sum.explored, 18);
    }

    #[test]
    fn witness_is_lexicographically_least() {
        let inst = worked_example();
        let sum = brute_force(&inst, Objective::Sum).unwrap();
        // Items a, b, c in order; None sorts before any agent.
        assert_eq!(sum.assignment, vec![Some(0), Some(0), Some(0)]);
        let max = brute_force(&inst, Objective::Max).unwrap();
        assert_eq!(max.assignment, vec![None, Some(0), Some(0)]);
    }

    #[test]
    fn empty_instance_has_value_zero() {
        let inst = Instance::builder().build().unwrap();
        let r = brute_force(&inst, Objective::Sum).unwrap();
        assert_eq!((r.value, r.explored), (0, 1));
    }

    #[test]
    fn profile_examples() {
        let single = Instance::builder()
            .agent("1", ["a"], Vec::<(&str, &str)>::new())
            .build()
            .unwrap();
        assert_eq!(all_profiles(&single).unwrap(), BTreeSet::from([vec![0], vec![1]]));

        let profiles = all_profiles(&worked_example()).unwrap();
        assert!(profiles.contains(&vec![2, 0, 0]));
        assert!(profiles.contains(&vec![1, 1, 0]));
    }

    #[test]
    fn disjoint_agents_give_a_cartesian_product() {
        let inst = Instance::builder()
            .agent("1", ["a", "b"], [("a", "b")])
            .agent("2", ["c", "d", "e"], [("c", "d")])
            .build()
            .unwrap();
        let first = Instance::builder()
            .agent("1", ["a", "b"], [("a", "b")])
            .build()
            .unwrap();
        let second = Instance::builder()
            .agent("2", ["c", "d", "e"], [("c", "d")])
            .build()
            .unwrap();
        let mut product = BTreeSet::new();
        for x in all_profiles(&first).unwrap() {
            for y in all_profiles(&second).unwrap() {
                product.insert(vec![x[0], y[0]]);
            }
        }
        assert_eq!(all_profiles(&inst).unwrap(), product);
    }

    #[test]
    fn decision_examples() {
        let inst = worked_example();
        assert!(decide(&inst, Objective::Max, 1).unwrap().is_yes());
        assert_eq!(decide(&inst, Objective::Max, 0).unwrap(), Decision::No);
        assert_eq!(
            decide(&inst, Objective::Max, 3).unwrap(),
            Decision::Yes(Allocation::empty_for(&inst))
        );
    }

    #[test]
    fn size_guard_refuses() {
        let inst = worked_example();
        let tight = OracleOptions {
            limit: Some(10),
            minimal_only: false,
        };
        assert!(matches!(
            brute_force_with(&inst, Objective::Sum, &tight),
            Err(Error::OracleTooLarge { size: 64, limit: 10 })
        ));
    }
}
