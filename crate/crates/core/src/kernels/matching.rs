use std::collections::HashSet;

use super::lsap::lsap;
use crate::{Error, Result};

/// Bipartite graph with non-negative integer edge weights.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedBipartiteGraph {
    left: usize,
    right: usize,
    edges: Vec<(usize, usize, i64)>,
}

impl WeightedBipartiteGraph {
    pub fn new(left: usize, right: usize, edges: Vec<(usize, usize, i64)>) -> Result<Self> {
        let mut seen = HashSet::new();
        for &(l, r, w) in &edges {
            if l >= left || r >= right {
                return Err(Error::domain(format!("edge ({l}, {r}) is out of range")));
            }
            if w < 0 {
                return Err(Error::domain(format!("edge ({l}, {r}) has negative weight")));
            }
            if !seen.insert((l, r)) {
                return Err(Error::domain(format!("duplicate edge ({l}, {r})")));
            }
        }
        Ok(WeightedBipartiteGraph { left, right, edges })
    }

    pub fn left(&self) -> usize {
        self.left
    }

    pub fn right(&self) -> usize {
        self.right
    }

    pub fn edges(&self) -> &[(usize, usize, i64)] {
        &self.edges
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matching {
    /// Matched `(left, right)` pairs, sorted.
    pub pairs: Vec<(usize, usize)>,
    pub weight: i64,
}

/// Maximum-weight (not necessarily maximum-cardinality) matching.
///
/// Every left vertex is given a private dummy column and assignment costs
/// are `top - w`, so the assignment minimum is `left * top - w(M)`. Zero
/// weight edges are dropped from the result. Deterministic for a given
/// edge list.
pub fn max_weight_matching(g: &WeightedBipartiteGraph) -> Matching {
    if g.left == 0 || g.right == 0 || g.edges.is_empty() {
        return Matching {
            pairs: Vec::new(),
            weight: 0,
        };
    }
    let top = g.edges.iter().map(|e| e.2).max().unwrap_or(0);
    let mut cost = vec![vec![top; g.right + g.left]; g.left];
    for &(l, r, w) in &g.edges {
        cost[l][r] = top - w;
    }
    let mut weight_of = vec![vec![None; g.right]; g.left];
    for &(l, r, w) in &g.edges {
        weight_of[l][r] = Some(w);
    }
    let mut pairs = Vec::new();
    let mut weight = 0;
    for (l, c) in lsap(&cost).pairs {
        if c < g.right {
            if let Some(w) = weight_of[l][c].filter(|&w| w > 0) {
                pairs.push((l, c));
                weight += w;
            }
        }
    }
    Matching { pairs, weight }
}
