use super::{gadget, give, holds, Construction, Reduced, Reduction, Threshold};
use super::{Cnf3Formula, TruthAssignment};
use crate::classify::Objective;
use crate::model::Allocation;
use crate::Result;

fn literal_item(var: usize, positive: bool) -> String {
    gadget(if positive { "v" } else { "nv" }, var)
}

/// Two-agent instance over a shared item set: the optimum is at most 2n
/// in sum, and at most n in max, exactly when the formula is satisfiable.
///
/// Each variable i contributes `v:i`, `nv:i` and `u:i`; each clause j an
/// item `c:j`. Agent 1 prefers every literal item over the clauses that
/// contain it; agent 2 prefers both literal items of a variable over `u:i`.
pub fn gen_two_agents_sat(f: &Cnf3Formula) -> Result<Reduced> {
    let n = f.num_vars();
    let mut items = Vec::new();
    for i in 1..=n {
        items.extend([literal_item(i, true), literal_item(i, false), gadget("u", i)]);
    }
    items.extend((1..=f.clauses().len()).map(|j| gadget("c", j)));

    let mut first: Vec<(String, String)> = Vec::new();
    for (j, clause) in f.clauses().iter().enumerate() {
        for l in clause {
            let arc = (literal_item(l.var, l.positive), gadget("c", j + 1));
            if !first.contains(&arc) {
                first.push(arc);
            }
        }
    }
    let second: Vec<(String, String)> = (1..=n)
        .flat_map(|i| [true, false].map(|pos| (literal_item(i, pos), gadget("u", i))))
        .collect();

    let mut c = Construction::default();
    c.agent("1", items.clone(), first);
    c.agent("2", items, second);
    Ok(Reduced {
        reduction: Reduction::TwoAgentsSat,
        instance: c.build()?,
        thresholds: vec![
            Threshold {
                objective: Objective::Sum,
                bound: 2 * n,
            },
            Threshold {
                objective: Objective::Max,
                bound: n,
            },
        ],
    })
}

/// Agent 1 gets the true literal item of each variable and every `u:i`;
/// agent 2 gets the false literal items and every clause item.
pub(super) fn forward(f: &Cnf3Formula, assignment: &TruthAssignment) -> Allocation {
    let mut alloc = Allocation::default();
    for i in 1..=f.num_vars() {
        let value = assignment.value(i);
        give(&mut alloc, "1", &literal_item(i, value));
        give(&mut alloc, "2", &literal_item(i, !value));
        give(&mut alloc, "1", &gadget("u", i));
    }
    for j in 1..=f.clauses().len() {
        give(&mut alloc, "2", &gadget("c", j));
    }
    alloc
}

/// Variable i is true iff agent 1 holds `v:i`.
pub(super) fn reverse(f: &Cnf3Formula, alloc: &Allocation) -> TruthAssignment {
    TruthAssignment::new(
        (1..=f.num_vars())
            .map(|i| holds(alloc, "1", &literal_item(i, true)))
            .collect(),
    )
}
