use std::cmp::Reverse;
use std::collections::BinaryHeap;

use super::flow::FlowNetwork;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProfitFlow {
    /// Flow per arc, indexed like the network's arcs.
    pub flow: Vec<i64>,
    pub profit: i64,
}

/// Residual network for successive shortest paths. Edge `2e` is forward,
/// `2e + 1` its reverse.
struct MinCostFlow {
    adj: Vec<Vec<usize>>,
    to: Vec<usize>,
    cap: Vec<i64>,
    cost: Vec<i64>,
}

impl MinCostFlow {
    fn new(vertices: usize) -> Self {
        MinCostFlow {
            adj: vec![Vec::new(); vertices],
            to: Vec::new(),
            cap: Vec::new(),
            cost: Vec::new(),
        }
    }

    fn add(&mut self, tail: usize, head: usize, cap: i64, cost: i64) -> usize {
        let e = self.to.len();
        self.adj[tail].push(e);
        self.to.push(head);
        self.cap.push(cap);
        self.cost.push(cost);
        self.adj[head].push(e + 1);
        self.to.push(tail);
        self.cap.push(0);
        self.cost.push(-cost);
        e / 2
    }

    fn flow(&self, edge: usize) -> i64 {
        self.cap[2 * edge + 1]
    }

    /// Sends up to `limit` units from `s` to `t` along cheapest paths.
    /// Requires non-negative costs on edges with residual capacity.
    fn run(&mut self, s: usize, t: usize, limit: i64) -> i64 {
        let n = self.adj.len();
        let mut potential = vec![0i64; n];
        let mut sent = 0;
        while sent < limit {
            let mut dist = vec![i64::MAX; n];
            let mut via = vec![usize::MAX; n];
            dist[s] = 0;
            let mut heap = BinaryHeap::from([Reverse((0i64, s))]);
            while let Some(Reverse((d, v))) = heap.pop() {
                if d > dist[v] {
                    continue;
                }
                for &e in &self.adj[v] {
                    if self.cap[e] == 0 {
                        continue;
                    }
                    let u = self.to[e];
                    let nd = d + self.cost[e] + potential[v] - potential[u];
                    if nd < dist[u] {
                        dist[u] = nd;
                        via[u] = e;
                        heap.push(Reverse((nd, u)));
                    }
                }
            }
            if dist[t] == i64::MAX {
                break;
            }
            for v in 0..n {
                if dist[v] != i64::MAX {
                    potential[v] += dist[v];
                }
            }
            let mut push = limit - sent;
            let mut v = t;
            while v != s {
                let e = via[v];
                push = push.min(self.cap[e]);
                v = self.to[e ^ 1];
            }
            let mut v = t;
            while v != s {
                let e = via[v];
                self.cap[e] -= push;
                self.cap[e ^ 1] += push;
                v = self.to[e ^ 1];
            }
            sent += push;
        }
        sent
    }
}

/// Feasible flow maximising total profit, or `None` when the lower bounds
/// cannot be met.
///
/// Conservation is only required away from the source and sink, so the
/// network is closed into a circulation by unbounded t→s and s→t arcs.
/// Lower bounds become vertex imbalances, arcs with positive profit are
/// saturated up front and replaced by their reverse, and the imbalances
/// are then routed at minimum cost by successive shortest paths with
/// Dijkstra potentials.
pub fn max_profit_flow(net: &FlowNetwork) -> Option<ProfitFlow> {
    let infinity = net.infinity();
    let n = net.vertices();
    let (super_source, super_sink) = (n, n + 1);
    let mut mcf = MinCostFlow::new(n + 2);
    let mut excess = vec![0i64; n];

    let mut arcs: Vec<(usize, usize, i64, i64, i64)> = net
        .arcs()
        .iter()
        .map(|a| (a.tail, a.head, a.lower, net.upper_or(a, infinity), a.profit))
        .collect();
    arcs.push((net.sink(), net.source(), 0, infinity, 0));
    arcs.push((net.source(), net.sink(), 0, infinity, 0));

    // Per arc: flow fixed up front, residual edge, and whether the edge
    // runs against the arc.
    let mut layout = Vec::with_capacity(arcs.len());
    for &(tail, head, lower, upper, profit) in &arcs {
        let room = upper - lower;
        let mut base = lower;
        let reversed = profit > 0;
        if reversed {
            base += room;
        }
        excess[head] += base;
        excess[tail] -= base;
        let edge = if reversed {
            mcf.add(head, tail, room, profit)
        } else {
            mcf.add(tail, head, room, -profit)
        };
        layout.push((base, edge, reversed));
    }

    let mut required = 0;
    for (v, &x) in excess.iter().enumerate() {
        if x > 0 {
            mcf.add(super_source, v, x, 0);
            required += x;
        } else if x < 0 {
            mcf.add(v, super_sink, -x, 0);
        }
    }
    if mcf.run(super_source, super_sink, required) < required {
        return None;
    }

    let flow: Vec<i64> = layout[..net.arcs().len()]
        .iter()
        .map(|&(base, edge, reversed)| {
            if reversed {
                base - mcf.flow(edge)
            } else {
                base + mcf.flow(edge)
            }
        })
        .collect();
    let profit = net.arcs().iter().zip(&flow).map(|(a, f)| a.profit * f).sum();
    Some(ProfitFlow { flow, profit })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn brute_force(net: &FlowNetwork) -> Option<i64> {
        fn go(i: usize, net: &FlowNetwork, flow: &mut Vec<i64>, best: &mut Option<i64>) {
            if i == net.arcs().len() {
                if net.is_feasible(flow) {
                    let p = net.arcs().iter().zip(flow.iter()).map(|(a, f)| a.profit * f).sum();
                    *best = Some(best.map_or(p, |b: i64| b.max(p)));
                }
                return;
            }
            let arc = net.arcs()[i];
            for f in arc.lower..=arc.upper.expect("finite") {
                flow.push(f);
                go(i + 1, net, flow, best);
                flow.pop();
            }
        }
        let mut best = None;
        go(0, net, &mut Vec::new(), &mut best);
        best
    }

    fn network_strategy() -> impl Strategy<Value = FlowNetwork> {
        (3usize..=5).prop_flat_map(|n| {
            proptest::collection::vec((0..n, 0..n, 0i64..=1, 0i64..=2, -1i64..=4), 1..=6).prop_map(
                move |arcs| {
                    let mut net = FlowNetwork::new(n, 0, n - 1);
                    for (t, h, lower, extra, profit) in arcs {
                        if t != h {
                            net.add_arc(t, h, lower, Some(lower + extra), profit);
                        }
                    }
                    net
                },
            )
        })
    }

    #[test]
    fn fixed_examples() {
        let mut net = FlowNetwork::new(2, 0, 1);
        net.add_arc(0, 1, 1, Some(1), 4);
        assert_eq!(max_profit_flow(&net).unwrap().profit, 4);

        let mut stuck = FlowNetwork::new(3, 0, 2);
        stuck.add_arc(0, 1, 1, Some(1), 0);
        assert_eq!(max_profit_flow(&stuck), None);
    }

    #[test]
    fn unbounded_arcs_use_the_sentinel() {
        let mut net = FlowNetwork::new(3, 0, 2);
        net.add_arc(0, 1, 0, Some(1), 3);
        net.add_arc(0, 1, 0, Some(1), 2);
        net.add_arc(1, 2, 1, None, 0);
        let result = max_profit_flow(&net).unwrap();
        assert_eq!(result.profit, 5);
        assert_eq!(result.flow, vec![1, 1, 2]);
    }

    proptest! {
        #[test]
        fn matches_flow_enumeration(net in network_strategy()) {
            let got = max_profit_flow(&net);
            prop_assert_eq!(got.as_ref().map(|r| r.profit), brute_force(&net));
            if let Some(result) = got {
                prop_assert!(net.is_feasible(&result.flow));
            }
        }
    }
}
