use std::collections::{BTreeSet, HashMap};
use std::fmt;

use fixedbitset::FixedBitSet;

use super::ItemId;

/// Reasons a list of items and arcs does not form a preference graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphError {
    DuplicateItem(ItemId),
    /// Arc at the given position names an item outside the graph.
    UnknownEndpoint { arc: usize, item: ItemId },
    SelfLoop { arc: usize, item: ItemId },
    DuplicateArc { arc: usize },
    /// The arcs contain a directed cycle through the named item.
    NotAcyclic(ItemId),
}

impl fmt::Display for GraphError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphError::DuplicateItem(v) => write!(f, "duplicate item {v:?}"),
            GraphError::UnknownEndpoint { item, .. } => {
                write!(f, "arc endpoint {item:?} is not among the agent's items")
            }
            GraphError::SelfLoop { item, .. } => write!(f, "self-loop on {item:?}"),
            GraphError::DuplicateArc { .. } => write!(f, "duplicate arc"),
            GraphError::NotAcyclic(v) => write!(f, "graph is not acyclic (cycle through {v:?})"),
        }
    }
}

impl std::error::Error for GraphError {}

/// One agent's preference DAG `(V_i, A_i)`.
///
/// Items are stored sorted and addressed by a local index. The strict
/// reachability relation (successors and predecessors) is computed once at
/// construction, so the graph is immutable and cheap to query from several
/// threads.
#[derive(Clone)]
pub struct PreferenceGraph {
    items: Vec<ItemId>,
    index: HashMap<ItemId, usize>,
    arcs: Vec<(usize, usize)>,
    out_adj: Vec<Vec<usize>>,
    in_adj: Vec<Vec<usize>>,
    topo: Vec<usize>,
    succ: Vec<FixedBitSet>,
    pred: Vec<FixedBitSet>,
}

impl fmt::Debug for PreferenceGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PreferenceGraph")
            .field("items", &self.items)
            .field("arcs", &self.arc_ids().collect::<Vec<_>>())
            .finish()
    }
}

impl PartialEq for PreferenceGraph {
    fn eq(&self, other: &Self) -> bool {
        self.items == other.items && self.arcs == other.arcs
    }
}

impl Eq for PreferenceGraph {}

impl PreferenceGraph {
    pub fn new<I, A>(items: I, arcs: A) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = ItemId>,
        A: IntoIterator<Item = (ItemId, ItemId)>,
    {
        let mut items: Vec<ItemId> = items.into_iter().collect();
        items.sort();
        if let Some(w) = items.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::DuplicateItem(w[0].clone()));
        }
        let index: HashMap<ItemId, usize> = items
            .iter()
            .enumerate()
            .map(|(i, v)| (v.clone(), i))
            .collect();

        let mut local_arcs = Vec::new();
        for (pos, (tail, head)) in arcs.into_iter().enumerate() {
            let lookup = |v: &ItemId| {
                index.get(v).copied().ok_or(GraphError::UnknownEndpoint {
                    arc: pos,
                    item: v.clone(),
                })
            };
            let (t, h) = (lookup(&tail)?, lookup(&head)?);
            if t == h {
                return Err(GraphError::SelfLoop { arc: pos, item: tail });
            }
            local_arcs.push((t, h, pos));
        }
        local_arcs.sort();
        if let Some(w) = local_arcs
            .windows(2)
            .find(|w| (w[0].0, w[0].1) == (w[1].0, w[1].1))
        {
            return Err(GraphError::DuplicateArc {
                arc: w[0].2.max(w[1].2),
            });
        }
        let arcs: Vec<(usize, usize)> = local_arcs.into_iter().map(|(t, h, _)| (t, h)).collect();
        Self::from_parts(items, index, arcs)
    }

    fn from_parts(
        items: Vec<ItemId>,
        index: HashMap<ItemId, usize>,
        arcs: Vec<(usize, usize)>,
    ) -> Result<Self, GraphError> {
        let n = items.len();
        let mut out_adj = vec![Vec::new(); n];
        let mut in_adj = vec![Vec::new(); n];
        for &(t, h) in &arcs {
            out_adj[t].push(h);
            in_adj[h].push(t);
        }

        // Kahn's algorithm; a smallest-index-first queue keeps the order canonical.
        let mut indeg: Vec<usize> = in_adj.iter().map(Vec::len).collect();
        let mut ready: BTreeSet<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut topo = Vec::with_capacity(n);
        while let Some(v) = ready.pop_first() {
            topo.push(v);
            for &h in &out_adj[v] {
                indeg[h] -= 1;
                if indeg[h] == 0 {
                    ready.insert(h);
                }
            }
        }
        if topo.len() < n {
            let stuck = (0..n).find(|&v| indeg[v] > 0).expect("cycle vertex");
            return Err(GraphError::NotAcyclic(items[stuck].clone()));
        }

        let mut succ = vec![FixedBitSet::with_capacity(n); n];
        for &v in topo.iter().rev() {
            let mut reach = FixedBitSet::with_capacity(n);
            for &h in &out_adj[v] {
                reach.insert(h);
                reach.union_with(&succ[h]);
            }
            succ[v] = reach;
        }
        let mut pred = vec![FixedBitSet::with_capacity(n); n];
        for (v, reach) in succ.iter().enumerate() {
            for u in reach.ones() {
                pred[u].insert(v);
            }
        }

        Ok(Self {
            items,
            index,
            arcs,
            out_adj,
            in_adj,
            topo,
            succ,
            pred,
        })
    }

    /// The graph induced on the items for which `keep` returns true.
    pub fn induced(&self, keep: impl Fn(&ItemId) -> bool) -> PreferenceGraph {
        let items: Vec<ItemId> = self.items.iter().filter(|v| keep(v)).cloned().collect();
        let arcs: Vec<(ItemId, ItemId)> = self
            .arc_ids()
            .filter(|(t, h)| keep(t) && keep(h))
            .map(|(t, h)| (t.clone(), h.clone()))
            .collect();
        PreferenceGraph::new(items, arcs).expect("induced subgraph of a DAG is a DAG")
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    /// Items in sorted order; position in this slice is the local index.
    pub fn items(&self) -> &[ItemId] {
        &self.items
    }

    pub fn item(&self, local: usize) -> &ItemId {
        &self.items[local]
    }

    pub fn index_of(&self, item: &str) -> Option<usize> {
        self.index.get(item).copied()
    }

    pub fn contains(&self, item: &str) -> bool {
        self.index.contains_key(item)
    }

    /// Arcs as sorted pairs of local indices.
    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    pub fn arc_ids(&self) -> impl Iterator<Item = (&ItemId, &ItemId)> + '_ {
        self.arcs
            .iter()
            .map(move |&(t, h)| (&self.items[t], &self.items[h]))
    }

    pub fn out_neighbors(&self, local: usize) -> &[usize] {
        &self.out_adj[local]
    }

    pub fn in_neighbors(&self, local: usize) -> &[usize] {
        &self.in_adj[local]
    }

    pub fn out_degree(&self, local: usize) -> usize {
        self.out_adj[local].len()
    }

    pub fn in_degree(&self, local: usize) -> usize {
        self.in_adj[local].len()
    }

    pub fn degree(&self, local: usize) -> usize {
        self.in_degree(local) + self.out_degree(local)
    }

    pub fn topological_order(&self) -> &[usize] {
        &self.topo
    }

    /// Strict descendants of `local` (`succ_i`).
    pub fn reach(&self, local: usize) -> &FixedBitSet {
        &self.succ[local]
    }

    /// Strict ancestors of `local` (`pred_i`).
    pub fn reach_rev(&self, local: usize) -> &FixedBitSet {
        &self.pred[local]
    }

    /// True when `u` has a directed path to `v` (and `u != v`).
    pub fn precedes(&self, u: usize, v: usize) -> bool {
        self.succ[u].contains(v)
    }

    pub fn comparable(&self, u: usize, v: usize) -> bool {
        self.precedes(u, v) || self.precedes(v, u)
    }

    fn lookup(&self, item: &str) -> crate::Result<usize> {
        self.index_of(item)
            .ok_or_else(|| crate::Error::domain(format!("item {item:?} is not in the graph")))
    }

    fn to_ids(&self, bits: &FixedBitSet) -> BTreeSet<ItemId> {
        bits.ones().map(|v| self.items[v].clone()).collect()
    }

    pub fn successors(&self, item: &str) -> crate::Result<BTreeSet<ItemId>> {
        Ok(self.to_ids(&self.succ[self.lookup(item)?]))
    }

    pub fn predecessors(&self, item: &str) -> crate::Result<BTreeSet<ItemId>> {
        Ok(self.to_ids(&self.pred[self.lookup(item)?]))
    }

    /// Local indices dominated by the given local set: the set itself plus
    /// everything reachable from it.
    pub fn dominated_local<I: IntoIterator<Item = usize>>(&self, set: I) -> FixedBitSet {
        let mut out = FixedBitSet::with_capacity(self.len());
        for v in set {
            out.insert(v);
            out.union_with(&self.succ[v]);
        }
        out
    }

    pub fn dominated_set<'a, I>(&self, set: I) -> crate::Result<BTreeSet<ItemId>>
    where
        I: IntoIterator<Item = &'a ItemId>,
    {
        let locals = set
            .into_iter()
            .map(|v| self.lookup(v.as_str()))
            .collect::<crate::Result<Vec<_>>>()?;
        Ok(self.to_ids(&self.dominated_local(locals)))
    }

    /// Weakly connected components as sorted local index lists, ordered by
    /// their smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut comp = vec![usize::MAX; n];
        let mut out = Vec::new();
        for start in 0..n {
            if comp[start] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![start];
            comp[start] = id;
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                for &u in self.out_adj[v].iter().chain(&self.in_adj[v]) {
                    if comp[u] == usize::MAX {
                        comp[u] = id;
                        members.push(u);
                        stack.push(u);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }
}
