use std::fmt;

use serde::Serialize;

use crate::classify::junction_locals;
use crate::model::Instance;
use crate::{Error, Result};

/// Where an agent's allocated items sit relative to one of its junction
/// vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Case {
    /// The junction item itself goes to the agent.
    AllocatedSelf,
    /// Some predecessor is allocated to the agent.
    PredecessorAllocated,
    /// Some successor is allocated to the agent.
    SuccessorAllocated,
    /// Nothing comparable to the junction is allocated to the agent.
    NoneInCone,
}

impl Case {
    pub const ALL: [Case; 4] = [
        Case::AllocatedSelf,
        Case::PredecessorAllocated,
        Case::SuccessorAllocated,
        Case::NoneInCone,
    ];
}

/// A junction vertex of one agent's graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct JunctionSlot {
    pub agent: usize,
    pub local: usize,
}

/// One case per junction slot, slots in canonical (agent, item) order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CaseAssignment {
    slots: Vec<JunctionSlot>,
    cases: Vec<Case>,
}

impl CaseAssignment {
    pub fn new(slots: Vec<JunctionSlot>, cases: Vec<Case>) -> Self {
        assert_eq!(slots.len(), cases.len(), "one case per slot");
        CaseAssignment { slots, cases }
    }

    pub fn len(&self) -> usize {
        self.slots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.slots.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (JunctionSlot, Case)> + '_ {
        self.slots.iter().copied().zip(self.cases.iter().copied())
    }

    /// Case of a junction, `None` when `local` is not a junction of `agent`.
    pub fn case_of(&self, agent: usize, local: usize) -> Option<Case> {
        self.slots
            .binary_search(&JunctionSlot { agent, local })
            .ok()
            .map(|i| self.cases[i])
    }

    /// Junction slots of one agent with their cases.
    pub fn of_agent(&self, agent: usize) -> impl Iterator<Item = (usize, Case)> + '_ {
        self.iter()
            .filter(move |(slot, _)| slot.agent == agent)
            .map(|(slot, case)| (slot.local, case))
    }
}

/// Every junction vertex of every agent, in canonical order.
pub fn junction_slots(inst: &Instance) -> Vec<JunctionSlot> {
    inst.agents()
        .iter()
        .enumerate()
        .flat_map(|(agent, a)| {
            junction_locals(a.graph())
                .into_iter()
                .map(move |local| JunctionSlot { agent, local })
        })
        .collect()
}

/// Iterator over all `4^γ` case assignments as a mixed-radix counter, the
/// last slot varying fastest.
#[derive(Debug, Clone)]
pub struct CaseEnumeration {
    slots: Vec<JunctionSlot>,
    next: Option<Vec<usize>>,
}

impl Iterator for CaseEnumeration {
    type Item = CaseAssignment;

    fn next(&mut self) -> Option<CaseAssignment> {
        let digits = self.next.take()?;
        let cases = digits.iter().map(|&d| Case::ALL[d]).collect();
        let mut following = digits;
        let mut carried = true;
        for digit in following.iter_mut().rev() {
            *digit += 1;
            if *digit < Case::ALL.len() {
                carried = false;
                break;
            }
            *digit = 0;
        }
        if !carried {
            self.next = Some(following);
        }
        Some(CaseAssignment::new(self.slots.clone(), cases))
    }
}

/// All case assignments, refused when γ exceeds `gamma_limit`.
pub fn enumerate_cases(inst: &Instance, gamma_limit: usize) -> Result<CaseEnumeration> {
    let slots = junction_slots(inst);
    if slots.len() > gamma_limit {
        return Err(Error::GammaTooLarge {
            gamma: slots.len(),
            limit: gamma_limit,
        });
    }
    let next = Some(vec![0; slots.len()]);
    Ok(CaseEnumeration { slots, next })
}

/// Why a case assignment admits no allocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Infeasibility {
    /// The same item is claimed by two agents.
    SharedItem { item: usize, agents: (usize, usize) },
    /// Two comparable junctions of one agent have incompatible cases.
    Incompatible {
        agent: usize,
        earlier: (usize, Case),
        later: (usize, Case),
    },
}

impl fmt::Display for Infeasibility {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Infeasibility::SharedItem { item, agents } => write!(
                f,
                "item {item} allocated to both agent {} and agent {}",
                agents.0, agents.1
            ),
            Infeasibility::Incompatible {
                agent,
                earlier,
                later,
            } => write!(
                f,
                "agent {agent}: junction {} ({:?}) precedes junction {} ({:?})",
                earlier.0, earlier.1, later.0, later.1
            ),
        }
    }
}

/// Checks that some allocation meeting the minimality condition could
/// realise the cases, looking only at the junctions.
///
/// For junctions `u` before `v` of the same agent: anything allocated at
/// or above `u` lies above `v`, so `u` in case 1 or 2 forces `v` into
/// case 2; symmetrically `v` in case 1 or 3 forces `u` into case 3.
pub fn check_feasibility(inst: &Instance, ca: &CaseAssignment) -> Result<(), Infeasibility> {
    let mut claimed: Vec<Option<usize>> = vec![None; inst.num_items()];
    for (slot, case) in ca.iter() {
        if case != Case::AllocatedSelf {
            continue;
        }
        let item = inst.agent(slot.agent).global(slot.local);
        if let Some(other) = claimed[item] {
            return Err(Infeasibility::SharedItem {
                item,
                agents: (other, slot.agent),
            });
        }
        claimed[item] = Some(slot.agent);
    }
    for (a, agent) in inst.agents().iter().enumerate() {
        let graph = agent.graph();
        let own: Vec<(usize, Case)> = ca.of_agent(a).collect();
        for &(u, cu) in &own {
            for &(v, cv) in &own {
                if !graph.precedes(u, v) {
                    continue;
                }
                let forward = matches!(cu, Case::AllocatedSelf | Case::PredecessorAllocated)
                    && cv != Case::PredecessorAllocated;
                let backward = matches!(cv, Case::AllocatedSelf | Case::SuccessorAllocated)
                    && cu != Case::SuccessorAllocated;
                if forward || backward {
                    return Err(Infeasibility::Incompatible {
                        agent: a,
                        earlier: (u, cu),
                        later: (v, cv),
                    });
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn branching() -> Instance {
        // r has out-degree 2 for both agents; agent 2 also has m with
        // in-degree 2.
        Instance::builder()
            .agent("1", ["r", "x", "y"], [("r", "x"), ("r", "y")])
            .agent("2", ["r", "x", "m", "z"], [("r", "x"), ("r", "m"), ("z", "m")])
            .build()
            .unwrap()
    }

    #[test]
    fn counts_are_powers_of_four() {
        let none = Instance::builder()
            .agent("1", ["a", "b"], [("a", "b")])
            .build()
            .unwrap();
        let all: Vec<_> = enumerate_cases(&none, 6).unwrap().collect();
        assert_eq!(all.len(), 1);
        assert!(all[0].is_empty());
        assert_eq!(enumerate_cases(&branching(), 6).unwrap().count(), 64);
    }

    #[test]
    fn enumeration_is_a_counter() {
        let cases: Vec<Vec<Case>> = enumerate_cases(&branching(), 6)
            .unwrap()
            .take(5)
            .map(|ca| ca.iter().map(|(_, c)| c).collect())
            .collect();
        assert_eq!(cases[0], vec![Case::AllocatedSelf; 3]);
        assert_eq!(cases[1][2], Case::PredecessorAllocated);
        assert_eq!(cases[4][1], Case::PredecessorAllocated);
    }

    #[test]
    fn gamma_limit_is_enforced() {
        assert!(matches!(
            enumerate_cases(&branching(), 2),
            Err(Error::GammaTooLarge { gamma: 3, limit: 2 })
        ));
    }

    #[test]
    fn same_item_for_two_agents_is_infeasible() {
        let inst = branching();
        let slots = junction_slots(&inst);
        let ca = CaseAssignment::new(
            slots,
            vec![Case::AllocatedSelf, Case::NoneInCone, Case::AllocatedSelf],
        );
        assert!(matches!(
            check_feasibility(&inst, &ca),
            Err(Infeasibility::SharedItem { .. })
        ));
    }

    #[test]
    fn empty_assignment_is_feasible() {
        let inst = Instance::builder()
            .agent("1", ["a"], Vec::<(&str, &str)>::new())
            .build()
            .unwrap();
        let ca = enumerate_cases(&inst, 6).unwrap().next().unwrap();
        assert_eq!(check_feasibility(&inst, &ca), Ok(()));
    }

    #[test]
    fn untouched_junction_below_an_allocated_one() {
        // v is a junction with successor w, also a junction.
        let inst = Instance::builder()
            .agent(
                "1",
                ["v", "a", "w", "b", "c"],
                [("v", "a"), ("v", "w"), ("w", "b"), ("w", "c")],
            )
            .build()
            .unwrap();
        let slots = junction_slots(&inst);
        let graph = inst.agent(0).graph();
        let with = |cv: Case, cw: Case| {
            let cases = slots
                .iter()
                .map(|s| if graph.item(s.local).as_str() == "v" { cv } else { cw })
                .collect();
            CaseAssignment::new(slots.clone(), cases)
        };
        assert!(check_feasibility(&inst, &with(Case::NoneInCone, Case::AllocatedSelf)).is_err());
        assert!(check_feasibility(&inst, &with(Case::AllocatedSelf, Case::NoneInCone)).is_err());
        assert!(check_feasibility(&inst, &with(Case::AllocatedSelf, Case::PredecessorAllocated)).is_ok());
        assert!(check_feasibility(&inst, &with(Case::SuccessorAllocated, Case::NoneInCone)).is_ok());
        assert!(check_feasibility(&inst, &with(Case::NoneInCone, Case::SuccessorAllocated)).is_err());
    }
}
