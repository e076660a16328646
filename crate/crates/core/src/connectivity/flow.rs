//! Shortest-augmenting-path max-flow over `{1, ∞}` capacities.

use std::collections::VecDeque;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Capacity {
    Unit,
    Infinite,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowArc {
    pub from: usize,
    pub to: usize,
    pub capacity: Capacity,
}

/// A flow network whose unit arcs bound every cut.
///
/// Infinite capacity is encoded as one more than the number of unit arcs,
/// which no finite cut can reach.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowNetwork {
    pub node_count: usize,
    pub arcs: Vec<FlowArc>,
    pub source: usize,
    pub sink: usize,
}

#[derive(Debug, Clone, Copy)]
struct ResidualArc {
    to: usize,
    residual: usize,
    rev: usize,
}

impl FlowNetwork {
    pub fn new(node_count: usize, source: usize, sink: usize) -> Self {
        FlowNetwork {
            node_count,
            arcs: Vec::new(),
            source,
            sink,
        }
    }

    pub fn add_arc(&mut self, from: usize, to: usize, capacity: Capacity) {
        self.arcs.push(FlowArc { from, to, capacity });
    }

    fn infinity(&self) -> usize {
        self.arcs
            .iter()
            .filter(|a| a.capacity == Capacity::Unit)
            .count()
            + 1
    }

    pub fn max_flow(&self) -> usize {
        self.max_flow_capped(usize::MAX)
    }

    /// Max-flow value, stopping early once `limit` is reached.
    pub fn max_flow_capped(&self, limit: usize) -> usize {
        if self.source == self.sink {
            return 0;
        }
        let inf = self.infinity();
        let mut graph: Vec<Vec<ResidualArc>> = vec![Vec::new(); self.node_count];
        for arc in &self.arcs {
            let cap = match arc.capacity {
                Capacity::Unit => 1,
                Capacity::Infinite => inf,
            };
            let (u, v) = (arc.from, arc.to);
            let rev_u = graph[v].len() + usize::from(u == v);
            let rev_v = graph[u].len();
            graph[u].push(ResidualArc { to: v, residual: cap, rev: rev_u });
            graph[v].push(ResidualArc { to: u, residual: 0, rev: rev_v });
        }

        let mut flow = 0;
        let mut parent: Vec<Option<(usize, usize)>> = vec![None; self.node_count];
        while flow < limit {
            parent.iter_mut().for_each(|p| *p = None);
            let mut queue = VecDeque::from([self.source]);
            let mut reached = false;
            'bfs: while let Some(u) = queue.pop_front() {
                for (idx, arc) in graph[u].iter().enumerate() {
                    if arc.residual > 0 && arc.to != self.source && parent[arc.to].is_none() {
                        parent[arc.to] = Some((u, idx));
                        if arc.to == self.sink {
                            reached = true;
                            break 'bfs;
                        }
                        queue.push_back(arc.to);
                    }
                }
            }
            if !reached {
                break;
            }
            let mut bottleneck = usize::MAX;
            let mut v = self.sink;
            while let Some((u, idx)) = parent[v] {
                bottleneck = bottleneck.min(graph[u][idx].residual);
                v = u;
            }
            let push = bottleneck.min(limit - flow);
            let mut v = self.sink;
            while let Some((u, idx)) = parent[v] {
                graph[u][idx].residual -= push;
                let rev = graph[u][idx].rev;
                graph[v][rev].residual += push;
                v = u;
            }
            flow += push;
        }
        flow
    }
}
