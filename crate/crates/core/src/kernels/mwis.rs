use std::collections::VecDeque;

use super::flow::Dinic;
use crate::{Error, Result};

/// Undirected graph with non-negative integer vertex weights.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexWeightedGraph {
    weights: Vec<i64>,
    edges: Vec<(usize, usize)>,
}

impl VertexWeightedGraph {
    pub fn new(weights: Vec<i64>, edges: Vec<(usize, usize)>) -> Result<Self> {
        let n = weights.len();
        if let Some(w) = weights.iter().find(|&&w| w < 0) {
            return Err(Error::domain(format!("negative vertex weight {w}")));
        }
        for &(a, b) in &edges {
            if a >= n || b >= n {
                return Err(Error::domain(format!("edge ({a}, {b}) is out of range")));
            }
            if a == b {
                return Err(Error::domain(format!("self-loop on vertex {a}")));
            }
        }
        Ok(VertexWeightedGraph { weights, edges })
    }

    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn total_weight(&self) -> i64 {
        self.weights.iter().sum()
    }

    /// Side of each vertex in a 2-colouring, or `None` when an odd cycle
    /// exists.
    pub fn bipartition(&self) -> Option<Vec<bool>> {
        let n = self.weights.len();
        let mut adj = vec![Vec::new(); n];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        let mut colour: Vec<Option<bool>> = vec![None; n];
        for start in 0..n {
            if colour[start].is_some() {
                continue;
            }
            colour[start] = Some(false);
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                let side = colour[v].expect("coloured");
                for &u in &adj[v] {
                    match colour[u] {
                        None => {
                            colour[u] = Some(!side);
                            queue.push_back(u);
                        }
                        Some(c) if c == side => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        Some(colour.into_iter().map(|c| c.expect("coloured")).collect())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexSet {
    /// Sorted vertex indices.
    pub vertices: Vec<usize>,
    pub weight: i64,
}

/// Minimum-weight vertex cover of a bipartite graph from a minimum cut of
/// source→left(w), left→right(∞), right→sink(w).
pub fn min_vertex_cover(g: &VertexWeightedGraph) -> Result<VertexSet> {
    let side = g
        .bipartition()
        .ok_or_else(|| Error::domain("graph is not bipartite"))?;
    let n = g.weights.len();
    let (source, sink) = (n, n + 1);
    let infinity = g.total_weight() + 1;
    let mut dinic = Dinic::new(n + 2);
    for v in 0..n {
        if side[v] {
            dinic.add(v, sink, g.weights[v]);
        } else {
            dinic.add(source, v, g.weights[v]);
        }
    }
    for &(a, b) in &g.edges {
        let (l, r) = if side[a] { (b, a) } else { (a, b) };
        dinic.add(l, r, infinity);
    }
    dinic.run(source, sink);
    let reach = dinic.reachable(source);
    // Left vertices cut off from the source and right vertices reached
    // from it form the cover.
    let vertices: Vec<usize> = (0..n).filter(|&v| side[v] == reach[v]).collect();
    let weight = vertices.iter().map(|&v| g.weights[v]).sum();
    Ok(VertexSet { vertices, weight })
}

/// Maximum-weight independent set of a bipartite graph, the complement of
/// a minimum-weight vertex cover.
pub fn bipartite_mwis(g: &VertexWeightedGraph) -> Result<VertexSet> {
    let cover = min_vertex_cover(g)?;
    let mut in_cover = vec![false; g.weights.len()];
    for &v in &cover.vertices {
        in_cover[v] = true;
    }
    let vertices: Vec<usize> = (0..g.weights.len()).filter(|&v| !in_cover[v]).collect();
    let weight = vertices.iter().map(|&v| g.weights[v]).sum();
    Ok(VertexSet { vertices, weight })
}
