use super::{require_class, Solution};
use crate::classify::GraphClass;
use crate::kernels::{lbap, lsap};
use crate::model::Instance;
use crate::Result;

/// Aggregate an assignment solver optimises.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PathMode {
    Sum,
    Max,
}

/// One matrix row: an agent together with one of its paths, items listed
/// from the top.
struct Row {
    agent: usize,
    path: Vec<usize>,
}

fn agent_rows(inst: &Instance) -> Vec<Row> {
    inst.agents()
        .iter()
        .enumerate()
        .map(|(a, agent)| Row {
            agent: a,
            path: agent
                .graph()
                .topological_order()
                .iter()
                .map(|&l| agent.global(l))
                .collect(),
        })
        .collect()
}

fn component_rows(inst: &Instance) -> Vec<Row> {
    let mut rows = Vec::new();
    for (a, agent) in inst.agents().iter().enumerate() {
        let graph = agent.graph();
        for comp in graph.components() {
            let mut path = comp;
            path.sort_by_key(|&l| graph.reach_rev(l).count_ones(..));
            rows.push(Row {
                agent: a,
                path: path.into_iter().map(|l| agent.global(l)).collect(),
            });
        }
    }
    rows
}

/// Costs over `n` item columns plus one "nothing" column per row.
///
/// Taking the item at position `p` of a row's path costs `p`; any other
/// column costs the path length. With `truncate`, only the top `rows`
/// positions keep their real cost, since an optimum never needs to go
/// deeper than the number of competitors.
fn matrix(rows: &[Row], n: usize, truncate: bool) -> Vec<Vec<i64>> {
    rows.iter()
        .map(|row| {
            let len = row.path.len();
            let depth = if truncate { len.min(rows.len()) } else { len };
            let mut costs = vec![len as i64; n + rows.len()];
            for (position, &item) in row.path.iter().enumerate().take(depth) {
                costs[item] = position as i64;
            }
            costs
        })
        .collect()
}

fn solve_rows(inst: &Instance, rows: &[Row], mode: PathMode, truncate: bool) -> Solution {
    let n = inst.num_items();
    let mut assignment = vec![None; n];
    if rows.is_empty() {
        return Solution::from_assignment(inst, 0, &assignment);
    }
    let cost = matrix(rows, n, truncate);
    let result = match mode {
        PathMode::Sum => lsap(&cost),
        PathMode::Max => lbap(&cost),
    };
    for &(r, c) in &result.pairs {
        if c < n && cost[r][c] < rows[r].path.len() as i64 {
            assignment[c] = Some(rows[r].agent);
        }
    }
    let value = result.value as usize;
    debug_assert_eq!(
        value,
        match mode {
            PathMode::Sum => inst.profile_of(&assignment).into_iter().sum(),
            PathMode::Max => inst.profile_of(&assignment).into_iter().max().unwrap_or(0),
        }
    );
    Solution::from_assignment(inst, value, &assignment)
}

/// Cost matrix with one row per agent, each graph read as a single path.
pub fn path_cost_matrix(inst: &Instance, truncate: bool) -> Vec<Vec<i64>> {
    matrix(&agent_rows(inst), inst.num_items(), truncate)
}

/// Assignment solver for single-path preference graphs. Each agent gets
/// at most one item.
pub fn solve_paths(inst: &Instance, mode: PathMode, truncate: bool) -> Result<Solution> {
    let solver = match mode {
        PathMode::Sum => "minsum-paths",
        PathMode::Max => "minmax-paths",
    };
    require_class(inst, GraphClass::Path, solver)?;
    Ok(solve_rows(inst, &agent_rows(inst), mode, truncate))
}

pub fn minsum_paths(inst: &Instance) -> Result<Solution> {
    solve_paths(inst, PathMode::Sum, true)
}

pub fn minmax_paths(inst: &Instance) -> Result<Solution> {
    solve_paths(inst, PathMode::Max, true)
}

/// Min-sum dissatisfaction when every graph is a disjoint union of paths:
/// each path becomes its own row and the rows of an agent are merged
/// back afterwards.
pub fn minsum_disjoint_paths(inst: &Instance) -> Result<Solution> {
    require_class(inst, GraphClass::DisjointPaths, "minsum-disjoint-paths")?;
    Ok(solve_rows(inst, &component_rows(inst), PathMode::Sum, true))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::Objective;
    use crate::exact::brute_force;
    use crate::Error;

    fn shared(agents: usize, path: &[&str]) -> Instance {
        let arcs: Vec<(&str, &str)> = path.windows(2).map(|w| (w[0], w[1])).collect();
        (0..agents)
            .fold(Instance::builder(), |b, i| {
                b.agent(format!("{}", i + 1), path.iter().copied(), arcs.iter().copied())
            })
            .build()
            .unwrap()
    }

    #[test]
    fn two_agents_one_arc() {
        let inst = shared(2, &["a", "b"]);
        assert_eq!(minsum_paths(&inst).unwrap().value, 1);
        assert_eq!(minmax_paths(&inst).unwrap().value, 1);
    }

    #[test]
    fn three_agents_three_items() {
        let inst = shared(3, &["a", "b", "c"]);
        let sol = minmax_paths(&inst).unwrap();
        assert_eq!(sol.value, 2);
        assert_eq!(sol.value, brute_force(&inst, Objective::Max).unwrap().value);
        assert_eq!(inst.profile(&sol.allocation).unwrap().max(), 2);
    }

    #[test]
    fn separate_single_items() {
        let inst = Instance::builder()
            .agent("1", ["a"], Vec::<(&str, &str)>::new())
            .agent("2", ["b"], Vec::<(&str, &str)>::new())
            .build()
            .unwrap();
        assert_eq!(minsum_paths(&inst).unwrap().value, 0);
        assert_eq!(minmax_paths(&inst).unwrap().value, 0);
    }

    #[test]
    fn each_agent_gets_at_most_one_item() {
        let inst = shared(2, &["a", "b", "c", "d"]);
        let sol = minsum_paths(&inst).unwrap();
        assert!(sol.allocation.iter().all(|(_, items)| items.len() <= 1));
    }

    #[test]
    fn truncation_keeps_matrix_shape() {
        let inst = shared(2, &["a", "b", "c", "d"]);
        let full = path_cost_matrix(&inst, false);
        let cut = path_cost_matrix(&inst, true);
        assert_eq!(full[0], vec![0, 1, 2, 3, 4, 4]);
        assert_eq!(cut[0], vec![0, 1, 4, 4, 4, 4]);
    }

    #[test]
    fn disjoint_paths_merge_rows() {
        let inst = Instance::builder()
            .agent("1", ["a", "b", "c"], [("a", "b")])
            .build()
            .unwrap();
        let sol = minsum_disjoint_paths(&inst).unwrap();
        assert_eq!(sol.value, 0);
        let items: Vec<&str> = sol.allocation.items_of("1").unwrap().iter().map(|i| i.as_str()).collect();
        assert_eq!(items, ["a", "c"]);
    }

    #[test]
    fn rejects_branching() {
        let inst = Instance::builder()
            .agent("1", ["a", "b", "c"], [("a", "b"), ("a", "c")])
            .build()
            .unwrap();
        assert!(matches!(minsum_paths(&inst), Err(Error::Precondition { .. })));
        assert!(matches!(minsum_disjoint_paths(&inst), Err(Error::Precondition { .. })));
    }
}
