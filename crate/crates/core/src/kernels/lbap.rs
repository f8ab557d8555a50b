use std::collections::VecDeque;

use super::lsap::{transpose, AssignmentResult};

const FREE: usize = usize::MAX;

/// Maximum-cardinality matching in a bipartite graph given by left
/// adjacency lists. Returns the partner of every left vertex.
pub fn hopcroft_karp(right: usize, adj: &[Vec<usize>]) -> Vec<Option<usize>> {
    let left = adj.len();
    let mut match_left = vec![FREE; left];
    let mut match_right = vec![FREE; right];
    let mut dist = vec![0usize; left];

    loop {
        // BFS layering from free left vertices.
        let mut queue = VecDeque::new();
        for l in 0..left {
            if match_left[l] == FREE {
                dist[l] = 0;
                queue.push_back(l);
            } else {
                dist[l] = usize::MAX;
            }
        }
        let mut found = false;
        while let Some(l) = queue.pop_front() {
            for &r in &adj[l] {
                let next = match_right[r];
                if next == FREE {
                    found = true;
                } else if dist[next] == usize::MAX {
                    dist[next] = dist[l] + 1;
                    queue.push_back(next);
                }
            }
        }
        if !found {
            break;
        }
        let mut cursor = vec![0usize; left];
        for l in 0..left {
            if match_left[l] == FREE {
                augment(l, adj, &mut match_left, &mut match_right, &mut dist, &mut cursor);
            }
        }
    }
    match_left
        .into_iter()
        .map(|r| (r != FREE).then_some(r))
        .collect()
}

fn augment(
    l: usize,
    adj: &[Vec<usize>],
    match_left: &mut [usize],
    match_right: &mut [usize],
    dist: &mut [usize],
    cursor: &mut [usize],
) -> bool {
    while cursor[l] < adj[l].len() {
        let r = adj[l][cursor[l]];
        cursor[l] += 1;
        let next = match_right[r];
        if next == FREE
            || (dist[next] == dist[l] + 1
                && augment(next, adj, match_left, match_right, dist, cursor))
        {
            match_left[l] = r;
            match_right[r] = l;
            return true;
        }
    }
    dist[l] = usize::MAX;
    false
}

fn saturating_at(cost: &[Vec<i64>], cols: usize, bound: i64) -> Option<Vec<Option<usize>>> {
    let adj: Vec<Vec<usize>> = cost
        .iter()
        .map(|row| (0..cols).filter(|&c| row[c] <= bound).collect())
        .collect();
    let matching = hopcroft_karp(cols, &adj);
    matching.iter().all(Option::is_some).then_some(matching)
}

/// Assignment saturating the smaller side that minimises the largest
/// entry used. Binary search over the distinct entries, each probe a
/// maximum-cardinality matching on the entries not above the probe.
///
/// # Panics
/// On an empty or ragged matrix.
pub fn lbap(cost: &[Vec<i64>]) -> AssignmentResult {
    assert!(!cost.is_empty() && !cost[0].is_empty(), "cost matrix must be non-empty");
    let cols = cost[0].len();
    assert!(cost.iter().all(|r| r.len() == cols), "cost matrix rows must have equal length");
    if cost.len() > cols {
        let mut result = lbap(&transpose(cost));
        for pair in &mut result.pairs {
            *pair = (pair.1, pair.0);
        }
        result.pairs.sort_unstable();
        return result;
    }

    let mut values: Vec<i64> = cost.iter().flatten().copied().collect();
    values.sort_unstable();
    values.dedup();
    // Invariant: values[hi] is feasible, every value below values[lo] is not.
    let (mut lo, mut hi) = (0, values.len() - 1);
    while lo < hi {
        let mid = (lo + hi) / 2;
        if saturating_at(cost, cols, values[mid]).is_some() {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    let matching = saturating_at(cost, cols, values[lo]).expect("largest entry is feasible");
    let pairs: Vec<(usize, usize)> = matching
        .into_iter()
        .enumerate()
        .map(|(r, c)| (r, c.expect("saturating")))
        .collect();
    let value = pairs.iter().map(|&(r, c)| cost[r][c]).max().unwrap_or(0);
    AssignmentResult { pairs, value }
}

#[cfg(test)]
mod tests {
    use super::super::lsap::lsap;
    use super::super::lsap::tests::{all_assignments, matrix};
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn fixed_examples() {
        assert_eq!(lbap(&[vec![0, 0], vec![0, 0]]).value, 0);
        let r = lbap(&[vec![1, 3], vec![3, 1]]);
        assert_eq!(r.value, 1);
        assert_eq!(r.pairs, vec![(0, 0), (1, 1)]);
    }

    #[test]
    fn matching_cardinality() {
        let adj = vec![vec![0, 1], vec![0], vec![1]];
        let m = hopcroft_karp(2, &adj);
        assert_eq!(m.iter().filter(|x| x.is_some()).count(), 2);
        let adj = vec![vec![0, 1, 2], vec![0], vec![0, 1]];
        let m = hopcroft_karp(3, &adj);
        assert_eq!(m, vec![Some(2), Some(0), Some(1)]);
    }

    proptest! {
        #[test]
        fn matches_permutation_brute_force(cost in matrix(6, 12)) {
            let (rows, cols) = (cost.len(), cost[0].len());
            let best = all_assignments(rows, cols)
                .iter()
                .map(|a| a.iter().map(|&(r, c)| cost[r][c]).max().unwrap())
                .min()
                .unwrap();
            let got = lbap(&cost);
            prop_assert_eq!(got.value, best);
            prop_assert_eq!(got.pairs.len(), rows.min(cols));

            // Threshold is tight and never above the sum-optimal bottleneck.
            let cols_t = if rows > cols { rows } else { cols };
            let oriented = if rows > cols { transpose(&cost) } else { cost.clone() };
            prop_assert!(saturating_at(&oriented, cols_t, got.value - 1).is_none());
            let sum_opt = lsap(&cost);
            let sum_bottleneck = sum_opt.pairs.iter().map(|&(r, c)| cost[r][c]).max().unwrap();
            prop_assert!(got.value <= sum_bottleneck);
        }
    }
}
