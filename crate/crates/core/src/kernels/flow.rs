use std::collections::VecDeque;

use crate::{Error, Result};

/// Arc of a [`FlowNetwork`]. An `upper` of `None` is an unbounded arc.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FlowArc {
    pub tail: usize,
    pub head: usize,
    pub lower: i64,
    pub upper: Option<i64>,
    pub profit: i64,
}

/// Directed network with a distinguished source and sink, arcs carrying
/// lower and upper bounds and a per-unit profit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowNetwork {
    vertices: usize,
    source: usize,
    sink: usize,
    arcs: Vec<FlowArc>,
}

impl FlowNetwork {
    /// A network on vertices `0..vertices`.
    ///
    /// # Panics
    /// If `source` or `sink` is out of range or they coincide.
    pub fn new(vertices: usize, source: usize, sink: usize) -> Self {
        assert!(source < vertices && sink < vertices && source != sink);
        FlowNetwork {
            vertices,
            source,
            sink,
            arcs: Vec::new(),
        }
    }

    pub fn add_vertex(&mut self) -> usize {
        self.vertices += 1;
        self.vertices - 1
    }

    /// Adds an arc and returns its index.
    ///
    /// # Panics
    /// On out-of-range endpoints or bounds with `0 <= lower <= upper`
    /// violated.
    pub fn add_arc(
        &mut self,
        tail: usize,
        head: usize,
        lower: i64,
        upper: Option<i64>,
        profit: i64,
    ) -> usize {
        assert!(tail < self.vertices && head < self.vertices, "arc endpoint out of range");
        assert!(lower >= 0 && upper.is_none_or(|u| u >= lower), "invalid arc bounds");
        self.arcs.push(FlowArc {
            tail,
            head,
            lower,
            upper,
            profit,
        });
        self.arcs.len() - 1
    }

    /// Arc with zero lower bound and zero profit.
    pub fn add_capacity(&mut self, tail: usize, head: usize, upper: Option<i64>) -> usize {
        self.add_arc(tail, head, 0, upper, 0)
    }

    pub fn vertices(&self) -> usize {
        self.vertices
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn sink(&self) -> usize {
        self.sink
    }

    pub fn arcs(&self) -> &[FlowArc] {
        &self.arcs
    }

    /// Finite stand-in for unbounded arcs: one more than the sum of all
    /// finite bounds, so no feasible flow can exhaust it.
    pub fn infinity(&self) -> i64 {
        1 + self
            .arcs
            .iter()
            .map(|a| a.lower + a.upper.unwrap_or(0))
            .sum::<i64>()
    }

    pub(crate) fn upper_or(&self, arc: &FlowArc, infinity: i64) -> i64 {
        arc.upper.unwrap_or(infinity)
    }

    /// True when `flow` respects every bound and conserves flow at every
    /// vertex other than the source and sink.
    pub fn is_feasible(&self, flow: &[i64]) -> bool {
        if flow.len() != self.arcs.len() {
            return false;
        }
        let mut balance = vec![0i64; self.vertices];
        for (arc, &f) in self.arcs.iter().zip(flow) {
            if f < arc.lower || arc.upper.is_some_and(|u| f > u) {
                return false;
            }
            balance[arc.tail] -= f;
            balance[arc.head] += f;
        }
        (0..self.vertices)
            .filter(|&v| v != self.source && v != self.sink)
            .all(|v| balance[v] == 0)
    }
}

/// Residual graph for Dinic's algorithm. Arc `2e` is forward, `2e + 1`
/// its reverse.
pub(crate) struct Dinic {
    adj: Vec<Vec<usize>>,
    to: Vec<usize>,
    cap: Vec<i64>,
    level: Vec<usize>,
    cursor: Vec<usize>,
}

impl Dinic {
    pub(crate) fn new(vertices: usize) -> Self {
        Dinic {
            adj: vec![Vec::new(); vertices],
            to: Vec::new(),
            cap: Vec::new(),
            level: vec![0; vertices],
            cursor: vec![0; vertices],
        }
    }

    pub(crate) fn add(&mut self, tail: usize, head: usize, cap: i64) -> usize {
        let e = self.to.len();
        self.adj[tail].push(e);
        self.to.push(head);
        self.cap.push(cap);
        self.adj[head].push(e + 1);
        self.to.push(tail);
        self.cap.push(0);
        e / 2
    }

    /// Flow currently on forward arc `arc`.
    pub(crate) fn flow(&self, arc: usize) -> i64 {
        self.cap[2 * arc + 1]
    }

    fn bfs(&mut self, s: usize, t: usize) -> bool {
        self.level.fill(usize::MAX);
        self.level[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for &e in &self.adj[v] {
                let u = self.to[e];
                if self.cap[e] > 0 && self.level[u] == usize::MAX {
                    self.level[u] = self.level[v] + 1;
                    queue.push_back(u);
                }
            }
        }
        self.level[t] != usize::MAX
    }

    fn dfs(&mut self, v: usize, t: usize, pushed: i64) -> i64 {
        if v == t {
            return pushed;
        }
        while self.cursor[v] < self.adj[v].len() {
            let e = self.adj[v][self.cursor[v]];
            let u = self.to[e];
            if self.cap[e] > 0 && self.level[u] == self.level[v] + 1 {
                let got = self.dfs(u, t, pushed.min(self.cap[e]));
                if got > 0 {
                    self.cap[e] -= got;
                    self.cap[e ^ 1] += got;
                    return got;
                }
            }
            self.cursor[v] += 1;
        }
        0
    }

    pub(crate) fn run(&mut self, s: usize, t: usize) -> i64 {
        let mut total = 0;
        while self.bfs(s, t) {
            self.cursor.fill(0);
            loop {
                let got = self.dfs(s, t, i64::MAX);
                if got == 0 {
                    break;
                }
                total += got;
            }
        }
        total
    }

    /// Vertices reachable from `s` in the residual graph.
    pub(crate) fn reachable(&self, s: usize) -> Vec<bool> {
        let mut seen = vec![false; self.adj.len()];
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            for &e in &self.adj[v] {
                let u = self.to[e];
                if self.cap[e] > 0 && !seen[u] {
                    seen[u] = true;
                    stack.push(u);
                }
            }
        }
        seen
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaxFlow {
    pub value: i64,
    /// Flow per arc, indexed like the network's arcs.
    pub flow: Vec<i64>,
    /// Source side of a minimum cut.
    pub source_side: Vec<bool>,
}

impl MaxFlow {
    /// Total capacity of the arcs leaving the source side.
    pub fn cut_capacity(&self, net: &FlowNetwork) -> i64 {
        let infinity = net.infinity();
        net.arcs()
            .iter()
            .filter(|a| self.source_side[a.tail] && !self.source_side[a.head])
            .map(|a| net.upper_or(a, infinity))
            .sum()
    }
}

/// Maximum s-t flow with Dinic's algorithm, plus the minimum cut formed by
/// the vertices still reachable from the source.
pub fn max_flow(net: &FlowNetwork) -> Result<MaxFlow> {
    if net.arcs().iter().any(|a| a.lower != 0) {
        return Err(Error::domain("max_flow requires zero lower bounds"));
    }
    let infinity = net.infinity();
    let mut dinic = Dinic::new(net.vertices());
    for arc in net.arcs() {
        dinic.add(arc.tail, arc.head, net.upper_or(arc, infinity));
    }
    let value = dinic.run(net.source(), net.sink());
    Ok(MaxFlow {
        value,
        flow: (0..net.arcs().len()).map(|a| dinic.flow(a)).collect(),
        source_side: dinic.reachable(net.source()),
    })
}
