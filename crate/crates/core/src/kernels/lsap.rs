//! Rectangular linear sum assignment by the shortest augmenting path
//! variant of the Hungarian method.

/// An assignment of rows to columns in a cost matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AssignmentResult {
    /// Matched `(row, column)` pairs, sorted by row.
    pub pairs: Vec<(usize, usize)>,
    /// Sum of the matched entries for [`lsap`]; the largest matched entry
    /// for [`lbap`](super::lbap).
    pub value: i64,
}

fn check_shape(cost: &[Vec<i64>]) -> (usize, usize) {
    let rows = cost.len();
    assert!(rows > 0, "cost matrix needs at least one row");
    let cols = cost[0].len();
    assert!(cols > 0, "cost matrix needs at least one column");
    assert!(
        cost.iter().all(|r| r.len() == cols),
        "cost matrix rows must have equal length"
    );
    (rows, cols)
}

pub(crate) fn transpose(cost: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let cols = cost[0].len();
    (0..cols)
        .map(|c| cost.iter().map(|row| row[c]).collect())
        .collect()
}

/// Minimum-cost assignment saturating the smaller side of an `n × m`
/// matrix. Runs in O(n² m) for n ≤ m.
///
/// # Panics
/// On an empty or ragged matrix.
pub fn lsap(cost: &[Vec<i64>]) -> AssignmentResult {
    let (rows, cols) = check_shape(cost);
    if rows > cols {
        let mut result = lsap(&transpose(cost));
        for pair in &mut result.pairs {
            *pair = (pair.1, pair.0);
        }
        result.pairs.sort_unstable();
        return result;
    }

    // 1-based potentials; column 0 is the virtual start of each augmentation.
    let mut u = vec![0i64; rows + 1];
    let mut v = vec![0i64; cols + 1];
    let mut owner = vec![0usize; cols + 1];
    let mut way = vec![0usize; cols + 1];
    for row in 1..=rows {
        owner[0] = row;
        let mut col0 = 0;
        let mut minv = vec![i64::MAX; cols + 1];
        let mut used = vec![false; cols + 1];
        loop {
            used[col0] = true;
            let r = owner[col0];
            let mut delta = i64::MAX;
            let mut col1 = 0;
            for c in 1..=cols {
                if used[c] {
                    continue;
                }
                let reduced = cost[r - 1][c - 1] - u[r] - v[c];
                if reduced < minv[c] {
                    minv[c] = reduced;
                    way[c] = col0;
                }
                if minv[c] < delta {
                    delta = minv[c];
                    col1 = c;
                }
            }
            for c in 0..=cols {
                if used[c] {
                    u[owner[c]] += delta;
                    v[c] -= delta;
                } else {
                    minv[c] -= delta;
                }
            }
            col0 = col1;
            if owner[col0] == 0 {
                break;
            }
        }
        loop {
            let prev = way[col0];
            owner[col0] = owner[prev];
            col0 = prev;
            if col0 == 0 {
                break;
            }
        }
    }

    let mut pairs: Vec<(usize, usize)> = (1..=cols)
        .filter(|&c| owner[c] != 0)
        .map(|c| (owner[c] - 1, c - 1))
        .collect();
    pairs.sort_unstable();
    let value = pairs.iter().map(|&(r, c)| cost[r][c]).sum();
    AssignmentResult { pairs, value }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use proptest::prelude::*;

    /// All injective maps from the smaller side into the larger one, as
    /// (row, column) pair lists.
    pub(crate) fn all_assignments(rows: usize, cols: usize) -> Vec<Vec<(usize, usize)>> {
        fn extend(
            row: usize,
            rows: usize,
            cols: usize,
            used: &mut Vec<bool>,
            current: &mut Vec<(usize, usize)>,
            out: &mut Vec<Vec<(usize, usize)>>,
        ) {
            if row == rows {
                out.push(current.clone());
                return;
            }
            for c in 0..cols {
                if !used[c] {
                    used[c] = true;
                    current.push((row, c));
                    extend(row + 1, rows, cols, used, current, out);
                    current.pop();
                    used[c] = false;
                }
            }
        }
        let (small, large) = (rows.min(cols), rows.max(cols));
        let mut out = Vec::new();
        extend(0, small, large, &mut vec![false; large], &mut Vec::new(), &mut out);
        if rows > cols {
            for a in &mut out {
                for p in a.iter_mut() {
                    *p = (p.1, p.0);
                }
            }
        }
        out
    }

    pub(crate) fn matrix(max_dim: usize, max_cost: i64) -> impl Strategy<Value = Vec<Vec<i64>>> {
        (1..=max_dim, 1..=max_dim).prop_flat_map(move |(r, c)| {
            proptest::collection::vec(proptest::collection::vec(0..=max_cost, c), r)
        })
    }

    #[test]
    fn fixed_examples() {
        assert_eq!(lsap(&[vec![0, 0], vec![0, 0]]).value, 0);
        let diag = lsap(&[vec![0, 9], vec![9, 0]]);
        assert_eq!(diag.value, 0);
        assert_eq!(diag.pairs, vec![(0, 0), (1, 1)]);
        let wide = lsap(&[vec![5, 1, 7]]);
        assert_eq!(wide.pairs, vec![(0, 1)]);
        let tall = lsap(&[vec![4], vec![2], vec![3]]);
        assert_eq!(tall.pairs, vec![(1, 0)]);
        assert_eq!(tall.value, 2);
    }

    #[test]
    fn handles_negative_costs() {
        let r = lsap(&[vec![-5, 0], vec![0, -7]]);
        assert_eq!(r.value, -12);
    }

    proptest! {
        #[test]
        fn matches_permutation_brute_force(cost in matrix(6, 20)) {
            let (rows, cols) = (cost.len(), cost[0].len());
            let best = all_assignments(rows, cols)
                .iter()
                .map(|a| a.iter().map(|&(r, c)| cost[r][c]).sum::<i64>())
                .min()
                .unwrap();
            let got = lsap(&cost);
            prop_assert_eq!(got.value, best);
            prop_assert_eq!(got.pairs.len(), rows.min(cols));
            let recomputed: i64 = got.pairs.iter().map(|&(r, c)| cost[r][c]).sum();
            prop_assert_eq!(recomputed, got.value);
        }
    }
}
