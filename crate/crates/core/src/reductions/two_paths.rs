use super::{chain, gadget, give, holds, Construction, Reduced, Reduction, Threshold};
use super::{Cnf3Formula, Literal, TruthAssignment};
use crate::classify::Objective;
use crate::model::Allocation;
use crate::{Error, Result};

/// Every agent's dissatisfaction must stay at or below this.
pub const BOUND: usize = 2;

fn z(t: usize) -> String {
    gadget("z", t)
}

fn b(t: usize) -> String {
    gadget("b", t)
}

fn indexed(prefix: &str, var: usize, copy: usize) -> String {
    format!("{prefix}:{var}:{copy}")
}

/// Copy `copy` (1-based, wrapping around after m) of variable `var`.
fn v(var: usize, copy: usize, m: usize) -> String {
    indexed("v", var, (copy - 1) % m + 1)
}

fn lit(var: usize, copy: usize, positive: bool) -> String {
    indexed(if positive { "l" } else { "nl" }, var, copy)
}

fn var_agent(var: usize, copy: usize) -> String {
    indexed("a", var, copy)
}

/// Min-max instance in which every graph is at most two paths over at most
/// five items; the optimum is at most 2 exactly when the formula is
/// satisfiable. Every clause must name three different variables, and
/// there must be at least two clauses so that the copies `v:i:j` and
/// `v:i:j+1` differ.
///
/// - `b:0..b:2` share the path `z:0 -> z:1 -> z:2`.
/// - `a:i:j` has `z:0 -> v:i:j+1 -> l:i:j` and `v:i:j -> nl:i:j`.
/// - `c:j` has the path through the literal items of clause j, using
///   `l:i:j` for x_i and `nl:i:j` for its negation.
pub fn gen_minmax_two_paths_sat(f: &Cnf3Formula) -> Result<Reduced> {
    if !f.has_distinct_variables() {
        return Err(Error::domain(
            "every clause must name three different variables",
        ));
    }
    let m = f.clauses().len();
    if m < 2 {
        return Err(Error::domain(format!("need at least 2 clauses, got {m}")));
    }
    let mut c = Construction::default();
    let zs: Vec<String> = (0..3).map(z).collect();
    for t in 0..3 {
        c.agent(b(t), zs.clone(), chain(&zs));
    }
    for i in 1..=f.num_vars() {
        for j in 1..=m {
            let upper = [z(0), v(i, j + 1, m), lit(i, j, true)];
            let lower = [v(i, j, m), lit(i, j, false)];
            let mut arcs = chain(&upper);
            arcs.extend(chain(&lower));
            let items = upper.into_iter().chain(lower).collect();
            c.agent(var_agent(i, j), items, arcs);
        }
    }
    for (j, clause) in f.clauses().iter().enumerate() {
        let items: Vec<String> = clause
            .iter()
            .map(|l: &Literal| lit(l.var, j + 1, l.positive))
            .collect();
        c.agent(gadget("c", j + 1), items.clone(), chain(&items));
    }
    Ok(Reduced {
        reduction: Reduction::TwoPathsSat,
        instance: c.build()?,
        thresholds: vec![Threshold {
            objective: Objective::Max,
            bound: BOUND,
        }],
    })
}

/// `b:t` gets `z:t`. For a true variable `a:i:j` gets `v:i:j+1` and
/// `nl:i:j`, for a false one `v:i:j` and `l:i:j`. Each clause agent gets
/// the item of its first satisfied literal, which the variable agents
/// left free.
pub(super) fn forward(f: &Cnf3Formula, assignment: &TruthAssignment) -> Allocation {
    let m = f.clauses().len();
    let mut alloc = Allocation::default();
    for t in 0..3 {
        give(&mut alloc, &b(t), &z(t));
    }
    for i in 1..=f.num_vars() {
        for j in 1..=m {
            let agent = var_agent(i, j);
            if assignment.value(i) {
                give(&mut alloc, &agent, &v(i, j + 1, m));
                give(&mut alloc, &agent, &lit(i, j, false));
            } else {
                give(&mut alloc, &agent, &v(i, j, m));
                give(&mut alloc, &agent, &lit(i, j, true));
            }
        }
    }
    for (j, clause) in f.clauses().iter().enumerate() {
        if let Some(l) = clause.iter().find(|l| l.holds(assignment)) {
            give(&mut alloc, &gadget("c", j + 1), &lit(l.var, j + 1, l.positive));
        }
    }
    alloc
}

/// Variable i is true iff some `a:i:j` holds both `v:i:j+1` and `nl:i:j`.
pub(super) fn reverse(f: &Cnf3Formula, alloc: &Allocation) -> TruthAssignment {
    let m = f.clauses().len();
    TruthAssignment::new(
        (1..=f.num_vars())
            .map(|i| {
                (1..=m).any(|j| {
                    let agent = var_agent(i, j);
                    holds(alloc, &agent, &v(i, j + 1, m)) && holds(alloc, &agent, &lit(i, j, false))
                })
            })
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    const FORMULA: &str = "p cnf 3 2\n-1 2 3 0\n1 -2 3 0\n";

    #[test]
    fn counts() {
        let f = Cnf3Formula::from_dimacs(FORMULA).unwrap();
        let reduced = gen_minmax_two_paths_sat(&f).unwrap();
        let (n, m) = (3, 2);
        assert_eq!(reduced.instance.num_items(), 3 + 3 * n * m);
        assert_eq!(reduced.instance.num_agents(), 3 + n * m + m);
        assert!(reduced.instance.agents().iter().all(|a| a.len() <= 5));
    }

    #[test]
    fn round_trip() {
        let f = Cnf3Formula::from_dimacs(FORMULA).unwrap();
        let beta = TruthAssignment::new(vec![false, false, true]);
        let reduced = gen_minmax_two_paths_sat(&f).unwrap();
        let alloc = forward(&f, &beta);
        assert!(reduced.instance.validate(&alloc).is_empty());
        assert!(reduced.instance.profile(&alloc).unwrap().max() <= BOUND);
        assert_eq!(reverse(&f, &alloc), beta);
    }

    #[test]
    fn rejects_repeated_variable_and_single_clause() {
        let f = Cnf3Formula::from_dimacs("p cnf 3 2\n1 -1 2 0\n1 2 3 0\n").unwrap();
        assert!(matches!(gen_minmax_two_paths_sat(&f), Err(Error::Domain(_))));
        let f = Cnf3Formula::from_dimacs("p cnf 3 1\n1 2 3 0\n").unwrap();
        assert!(matches!(gen_minmax_two_paths_sat(&f), Err(Error::Domain(_))));
    }
}
