//! Local connectivity λ for hypergraphs and dypergraphs, reachability, and
//! brute-force cut oracles.
//!
//! `λ_H(u, v)` is the fewest hyperedges crossing a set that contains `u` but not
//! `v`. `λ_D(u, v)` is the fewest dyperedges entering a set that contains `v` but
//! not `u`, where a dyperedge enters `X` when its head is in `X` and some tail
//! vertex is not. Both are computed as max-flows; the brute-force versions
//! enumerate every separating set and serve as test oracles.

mod flow;

pub use flow::{Capacity, FlowArc, FlowNetwork};

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::hypercore::{digraph_expansion, Dypergraph, Hypergraph, VertexId};

/// Number of crossing hyperedges or entering dyperedges of some vertex set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CutValue(pub usize);

impl CutValue {
    pub fn get(self) -> usize {
        self.0
    }
}

impl fmt::Display for CutValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Largest vertex count the brute-force oracles accept.
pub const BRUTE_FORCE_MAX_VERTICES: usize = 20;

fn check_pair(n: usize, u: VertexId, v: VertexId) -> Result<()> {
    for w in [u, v] {
        if w >= n {
            return Err(Error::VertexOutOfRange { vertex: w, n });
        }
    }
    if u == v {
        return Err(Error::InvalidQuery(format!("λ({u},{u}) is undefined")));
    }
    Ok(())
}

/// The vertex/hyperedge flow network for `λ_H(u, v)`.
///
/// Every hyperedge becomes a unit arc `in → out`; members connect to `in` and
/// from `out` with infinite arcs.
pub fn hyper_flow_network(h: &Hypergraph, u: VertexId, v: VertexId) -> FlowNetwork {
    let n = h.n();
    let mut net = FlowNetwork::new(n + 2 * h.m(), u, v);
    for (i, e) in h.edges().iter().enumerate() {
        let (e_in, e_out) = (n + 2 * i, n + 2 * i + 1);
        net.add_arc(e_in, e_out, Capacity::Unit);
        for &w in e {
            net.add_arc(w, e_in, Capacity::Infinite);
            net.add_arc(e_out, w, Capacity::Infinite);
        }
    }
    net
}

/// Unit-capacity network on the digraph expansion of `d`.
pub fn dyper_flow_network(d: &Dypergraph, u: VertexId, v: VertexId) -> FlowNetwork {
    let x = digraph_expansion(d);
    let mut net = FlowNetwork::new(x.node_count(), u, v);
    for &(a, b) in &x.arcs {
        net.add_arc(a, b, Capacity::Unit);
    }
    net
}

pub fn lambda_hyper(h: &Hypergraph, u: VertexId, v: VertexId) -> Result<CutValue> {
    check_pair(h.n(), u, v)?;
    Ok(CutValue(hyper_flow_network(h, u, v).max_flow()))
}

/// `min(λ_H(u, v), limit)`, stopping the flow early.
pub fn lambda_hyper_capped(h: &Hypergraph, u: VertexId, v: VertexId, limit: usize) -> Result<CutValue> {
    check_pair(h.n(), u, v)?;
    Ok(CutValue(hyper_flow_network(h, u, v).max_flow_capped(limit)))
}

pub fn lambda_dyper(d: &Dypergraph, u: VertexId, v: VertexId) -> Result<CutValue> {
    check_pair(d.n(), u, v)?;
    Ok(CutValue(dyper_flow_network(d, u, v).max_flow()))
}

pub fn lambda_dyper_capped(d: &Dypergraph, u: VertexId, v: VertexId, limit: usize) -> Result<CutValue> {
    check_pair(d.n(), u, v)?;
    Ok(CutValue(dyper_flow_network(d, u, v).max_flow_capped(limit)))
}

fn brute_guard(n: usize) -> Result<()> {
    if n > BRUTE_FORCE_MAX_VERTICES {
        return Err(Error::ScaleGuard(format!(
            "brute-force cut enumeration limited to {BRUTE_FORCE_MAX_VERTICES} vertices, got {n}"
        )));
    }
    Ok(())
}

/// Calls `visit` with the bitmask of every `X` such that `inside ∈ X` and `outside ∉ X`.
fn for_each_separating_set(n: usize, inside: VertexId, outside: VertexId, mut visit: impl FnMut(u32)) {
    let free: Vec<usize> = (0..n).filter(|&w| w != inside && w != outside).collect();
    for bits in 0u32..(1u32 << free.len()) {
        let mut x = 1u32 << inside;
        for (j, &w) in free.iter().enumerate() {
            if bits >> j & 1 == 1 {
                x |= 1 << w;
            }
        }
        visit(x);
    }
}

fn vertex_mask(vs: &[VertexId]) -> u32 {
    vs.iter().fold(0, |m, &w| m | 1 << w)
}

pub fn lambda_hyper_brute(h: &Hypergraph, u: VertexId, v: VertexId) -> Result<CutValue> {
    brute_guard(h.n())?;
    check_pair(h.n(), u, v)?;
    let masks: Vec<u32> = h.edges().iter().map(|e| vertex_mask(e)).collect();
    let mut best = usize::MAX;
    for_each_separating_set(h.n(), u, v, |x| {
        let crossing = masks
            .iter()
            .filter(|&&e| e & x != 0 && e & !x != 0)
            .count();
        best = best.min(crossing);
    });
    Ok(CutValue(best))
}

pub fn lambda_dyper_brute(d: &Dypergraph, u: VertexId, v: VertexId) -> Result<CutValue> {
    brute_guard(d.n())?;
    check_pair(d.n(), u, v)?;
    let arcs: Vec<(u32, u32)> = d
        .arcs()
        .iter()
        .map(|a| (vertex_mask(&a.tail), 1u32 << a.head))
        .collect();
    let mut best = usize::MAX;
    for_each_separating_set(d.n(), v, u, |x| {
        let entering = arcs
            .iter()
            .filter(|&&(tail, head)| head & x != 0 && tail & !x != 0)
            .count();
        best = best.min(entering);
    });
    Ok(CutValue(best))
}

/// All vertices reachable from `u`, as a boolean mask over `0..n`.
pub fn reachable_set(d: &Dypergraph, u: VertexId) -> Vec<bool> {
    let x = digraph_expansion(d);
    let out = x.out_adjacency();
    let mut seen = vec![false; x.node_count()];
    seen[u] = true;
    let mut queue = VecDeque::from([u]);
    while let Some(a) = queue.pop_front() {
        for &b in &out[a] {
            if !seen[b] {
                seen[b] = true;
                queue.push_back(b);
            }
        }
    }
    seen.truncate(d.n());
    seen
}

pub fn reachable(d: &Dypergraph, u: VertexId, v: VertexId) -> bool {
    u == v || reachable_set(d, u)[v]
}

pub fn strongly_connected_in(d: &Dypergraph, s: &BTreeSet<VertexId>) -> bool {
    s.iter().all(|&u| {
        let seen = reachable_set(d, u);
        s.iter().all(|&v| seen[v])
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypercore::{orient, Dyperedge, Orientation};

    fn dyper(n: usize, arcs: &[(&[usize], usize)]) -> Dypergraph {
        Dypergraph::new(
            n,
            arcs.iter()
                .map(|(t, h)| Dyperedge { tail: t.to_vec(), head: *h })
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn single_hyperedge() {
        let h = Hypergraph::new(3, vec![vec![0, 1, 2]]).unwrap();
        assert_eq!(lambda_hyper(&h, 0, 1).unwrap(), CutValue(1));
        assert_eq!(lambda_hyper_brute(&h, 0, 1).unwrap(), CutValue(1));
    }

    #[test]
    fn parallel_hyperedges() {
        // brute force over the two sets {a}, {a,c}: both are crossed by both copies
        let h = Hypergraph::new(3, vec![vec![0, 1, 2], vec![0, 1, 2]]).unwrap();
        assert_eq!(lambda_hyper_brute(&h, 0, 1).unwrap(), CutValue(2));
        assert_eq!(lambda_hyper(&h, 0, 1).unwrap(), CutValue(2));
    }

    #[test]
    fn single_dyperedge_is_one_way() {
        let d = dyper(3, &[(&[0, 1], 2)]);
        assert_eq!(lambda_dyper(&d, 0, 2).unwrap(), CutValue(1));
        assert_eq!(lambda_dyper(&d, 2, 0).unwrap(), CutValue(0));
        assert_eq!(lambda_dyper_brute(&d, 0, 2).unwrap(), CutValue(1));
        assert_eq!(lambda_dyper_brute(&d, 2, 0).unwrap(), CutValue(0));
    }

    #[test]
    fn parallel_dyperedges_with_different_heads() {
        let h = Hypergraph::new(3, vec![vec![0, 1, 2], vec![0, 1, 2]]).unwrap();
        let d = orient(&h, &Orientation::new(vec![1, 2])).unwrap();
        assert_eq!(lambda_dyper_brute(&d, 0, 1).unwrap(), CutValue(1));
        assert_eq!(lambda_dyper(&d, 0, 1).unwrap(), CutValue(1));
    }

    #[test]
    fn circuit_has_unit_connectivity() {
        let d = dyper(3, &[(&[0], 1), (&[1], 2), (&[2], 0)]);
        for u in 0..3 {
            for v in 0..3 {
                if u != v {
                    assert_eq!(lambda_dyper_brute(&d, u, v).unwrap(), CutValue(1));
                    assert_eq!(lambda_dyper(&d, u, v).unwrap(), CutValue(1));
                }
            }
        }
    }

    #[test]
    fn identical_endpoints_rejected() {
        let h = Hypergraph::new(3, vec![vec![0, 1, 2]]).unwrap();
        assert!(matches!(lambda_hyper(&h, 1, 1), Err(Error::InvalidQuery(_))));
        let d = dyper(3, &[(&[0], 1)]);
        assert!(matches!(lambda_dyper(&d, 0, 0), Err(Error::InvalidQuery(_))));
        assert!(matches!(lambda_dyper_brute(&d, 2, 2), Err(Error::InvalidQuery(_))));
    }

    #[test]
    fn brute_force_scale_guard() {
        let h = Hypergraph::new(21, vec![vec![0, 1]]).unwrap();
        assert!(matches!(lambda_hyper_brute(&h, 0, 1), Err(Error::ScaleGuard(_))));
    }

    #[test]
    fn reachability() {
        let d = dyper(3, &[(&[0, 1], 2)]);
        assert!(reachable(&d, 0, 2));
        assert!(!reachable(&d, 2, 0));
        assert!(reachable(&d, 1, 1));

        let chain = dyper(4, &[(&[0], 1), (&[1, 2], 3)]);
        assert!(reachable(&chain, 0, 3));
        assert!(!reachable(&chain, 0, 2));
    }

    #[test]
    fn strong_connectivity_in_terminal_sets() {
        let circuit = dyper(3, &[(&[0], 1), (&[1], 2), (&[2], 0)]);
        assert!(strongly_connected_in(&circuit, &BTreeSet::from([0, 1, 2])));
        let d = dyper(3, &[(&[0, 1], 2)]);
        assert!(!strongly_connected_in(&d, &BTreeSet::from([0, 2])));
        assert!(strongly_connected_in(&d, &BTreeSet::from([1])));
        assert!(strongly_connected_in(&d, &BTreeSet::new()));
    }
}
