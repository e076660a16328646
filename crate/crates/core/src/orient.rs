//! Orientation problems: rooted and strong Steiner connectivity, well-balanced
//! orientations, and head changes along directed circuits.

use std::collections::{BTreeSet, VecDeque};

use crate::connectivity::{lambda_dyper, lambda_dyper_capped, lambda_hyper, reachable_set, strongly_connected_in};
use crate::error::{Error, Result};
use crate::hypercore::{digraph_expansion, orient, ExpansionNode, Hypergraph, Orientation, VertexId};
use crate::steiner::{solve_sht, ShtCertificate};

/// Is there an orientation in which every vertex of `s` is reachable from `r`?
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SrcohInstance {
    pub h: Hypergraph,
    pub r: VertexId,
    pub s: BTreeSet<VertexId>,
}

impl SrcohInstance {
    pub fn new(h: Hypergraph, r: VertexId, s: BTreeSet<VertexId>) -> Result<Self> {
        h.check_vertex(r)?;
        if let Some(&v) = s.iter().find(|&&v| v >= h.n()) {
            return Err(Error::InvalidTerminals(format!("terminal {v} is not a vertex")));
        }
        Ok(SrcohInstance { h, r, s })
    }

    pub fn rooted_terminals(&self) -> BTreeSet<VertexId> {
        let mut all = self.s.clone();
        all.insert(self.r);
        all
    }

    /// Whether `o` makes every terminal reachable from the root.
    pub fn is_satisfied_by(&self, o: &Orientation) -> Result<bool> {
        let d = orient(&self.h, o)?;
        let seen = reachable_set(&d, self.r);
        Ok(self.s.iter().all(|&v| seen[v]))
    }
}

/// Orients a Steiner-tree certificate as an arborescence rooted at `r`.
///
/// Trimmed hyperedges take the head of their tree arc; all others are headed at
/// their lowest-index member.
pub fn orientation_from_certificate(h: &Hypergraph, r: VertexId, cert: &ShtCertificate) -> Result<Orientation> {
    let mut heads = Orientation::first_members(h).heads;
    let mut incident: Vec<Vec<(usize, VertexId)>> = vec![Vec::new(); h.n()];
    for (e, u, v) in cert.choice.iter() {
        if e >= h.m() {
            return Err(Error::EdgeOutOfRange { edge: e, m: h.m() });
        }
        incident[u].push((e, v));
        incident[v].push((e, u));
    }
    let mut seen = vec![false; h.n()];
    seen[r] = true;
    let mut queue = VecDeque::from([r]);
    while let Some(u) = queue.pop_front() {
        for &(e, w) in &incident[u] {
            if !seen[w] {
                seen[w] = true;
                heads[e] = w;
                queue.push_back(w);
            }
        }
    }
    Ok(Orientation::new(heads))
}

/// Decides the rooted Steiner orientation problem through a `(S ∪ r)`-Steiner hypertree.
pub fn solve_srcoh(inst: &SrcohInstance) -> Result<Option<Orientation>> {
    let Some(cert) = solve_sht(&inst.h, &inst.rooted_terminals())? else {
        return Ok(None);
    };
    orientation_from_certificate(&inst.h, inst.r, &cert).map(Some)
}

pub const EXHAUSTIVE_MAX_ORIENTATIONS: u128 = 1_000_000;

fn exhaustive_guard(h: &Hypergraph) -> Result<()> {
    let count = h.orientation_count();
    if count > EXHAUSTIVE_MAX_ORIENTATIONS {
        return Err(Error::ScaleGuard(format!(
            "{count} orientations exceed the exhaustive limit of {EXHAUSTIVE_MAX_ORIENTATIONS}"
        )));
    }
    Ok(())
}

/// Every orientation of `h`, odometer order over member positions (last hyperedge fastest).
pub fn all_orientations(h: &Hypergraph) -> impl Iterator<Item = Orientation> + '_ {
    let m = h.m();
    let mut next: Option<Vec<usize>> = Some(vec![0; m]);
    std::iter::from_fn(move || {
        let pos = next.take()?;
        let heads = pos.iter().enumerate().map(|(i, &p)| h.edge(i)[p]).collect();
        let mut succ = pos;
        let mut i = m;
        while i > 0 {
            i -= 1;
            succ[i] += 1;
            if succ[i] < h.edge(i).len() {
                next = Some(succ);
                break;
            }
            succ[i] = 0;
        }
        Some(Orientation::new(heads))
    })
}

fn first_orientation(h: &Hypergraph, mut accept: impl FnMut(&Orientation) -> Result<bool>) -> Result<Option<Orientation>> {
    exhaustive_guard(h)?;
    for o in all_orientations(h) {
        if accept(&o)? {
            return Ok(Some(o));
        }
    }
    Ok(None)
}

pub fn srcoh_oracle(inst: &SrcohInstance) -> Result<Option<Orientation>> {
    first_orientation(&inst.h, |o| inst.is_satisfied_by(o))
}

pub fn sscoh_exhaustive(h: &Hypergraph, s: &BTreeSet<VertexId>) -> Result<Option<Orientation>> {
    if let Some(&v) = s.iter().find(|&&v| v >= h.n()) {
        return Err(Error::InvalidTerminals(format!("terminal {v} is not a vertex")));
    }
    first_orientation(h, |o| Ok(strongly_connected_in(&orient(h, o)?, s)))
}

/// An ordered pair violating `λ_orient(u, v) >= ⌊λ_H(u, v) / 2⌋`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Violation {
    pub u: VertexId,
    pub v: VertexId,
    pub lambda_orientation: usize,
    pub lambda_hypergraph: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WellBalancedReport {
    pub verdict: bool,
    pub witness: Option<Violation>,
}

/// Per-pair requirements `⌊λ_H(u, v) / 2⌋` of a fixed hypergraph, for checking many orientations.
#[derive(Debug, Clone)]
pub struct BalanceRequirements {
    /// `(u, v, λ_H(u, v))` for ordered pairs with a nonzero requirement, in lexicographic order.
    pairs: Vec<(VertexId, VertexId, usize)>,
}

impl BalanceRequirements {
    pub fn new(h: &Hypergraph) -> Self {
        let n = h.n();
        let degree: Vec<usize> = (0..n).map(|v| h.degree(v)).collect();
        let mut lambda = vec![vec![0usize; n]; n];
        for u in 0..n {
            for v in u + 1..n {
                // λ_H(u, v) <= min degree, so low-degree pairs need no flow
                if degree[u].min(degree[v]) >= 2 {
                    let value = lambda_hyper(h, u, v).expect("distinct vertices").get();
                    lambda[u][v] = value;
                    lambda[v][u] = value;
                }
            }
        }
        let pairs = (0..n)
            .flat_map(|u| (0..n).map(move |v| (u, v)))
            .filter(|&(u, v)| u != v && lambda[u][v] >= 2)
            .map(|(u, v)| (u, v, lambda[u][v]))
            .collect();
        BalanceRequirements { pairs }
    }

    pub fn check(&self, h: &Hypergraph, o: &Orientation) -> Result<WellBalancedReport> {
        let d = orient(h, o)?;
        for &(u, v, lambda_h) in &self.pairs {
            let need = lambda_h / 2;
            let got = lambda_dyper_capped(&d, u, v, need)?.get();
            if got < need {
                return Ok(WellBalancedReport {
                    verdict: false,
                    witness: Some(Violation {
                        u,
                        v,
                        lambda_orientation: got,
                        lambda_hypergraph: lambda_h,
                    }),
                });
            }
        }
        Ok(WellBalancedReport {
            verdict: true,
            witness: None,
        })
    }
}

/// Checks `λ_orient(u, v) >= ⌊λ_H(u, v) / 2⌋` for all ordered pairs, reporting the first failure.
pub fn is_well_balanced(h: &Hypergraph, o: &Orientation) -> Result<WellBalancedReport> {
    o.validate(h)?;
    BalanceRequirements::new(h).check(h, o)
}

pub fn wboh_exhaustive(h: &Hypergraph) -> Result<Option<Orientation>> {
    exhaustive_guard(h)?;
    let req = BalanceRequirements::new(h);
    first_orientation(h, |o| Ok(req.check(h, o)?.verdict))
}

/// Re-heads hyperedge `e` at `x` by reversing a directed circuit through it.
///
/// Requires `x` in the tail of `e` and reachable from the current head. The
/// shortest such path in the digraph expansion closes into a circuit with
/// `x → z_e → head(e)`; reversing it re-heads every dyperedge on it at the
/// vertex the circuit entered it from. All local connectivities are unchanged.
pub fn reorient_to_head(h: &Hypergraph, o: &Orientation, e: usize, x: VertexId) -> Result<Orientation> {
    reorient_to_head_avoiding(h, o, e, x, &BTreeSet::new())
}

/// [`reorient_to_head`] with a path that may not pass through the hyperedges in `avoid`.
pub fn reorient_to_head_avoiding(
    h: &Hypergraph,
    o: &Orientation,
    e: usize,
    x: VertexId,
    avoid: &BTreeSet<usize>,
) -> Result<Orientation> {
    let d = orient(h, o)?;
    if e >= h.m() {
        return Err(Error::EdgeOutOfRange { edge: e, m: h.m() });
    }
    if !h.edge_contains(e, x) {
        return Err(Error::NotApplicable(format!("{} is not in hyperedge {e}", h.name(x))));
    }
    let head = o.head(e);
    if head == x {
        return Ok(o.clone());
    }

    let expansion = digraph_expansion(&d);
    let out = expansion.out_adjacency();
    let n = h.n();
    let usable = |node: usize| match expansion.tags[node] {
        ExpansionNode::Vertex(_) => true,
        ExpansionNode::Dyperedge(a) => a != e && !avoid.contains(&a),
    };
    let mut parent = vec![usize::MAX; expansion.node_count()];
    parent[head] = head;
    let mut queue = VecDeque::from([head]);
    while let Some(a) = queue.pop_front() {
        if a == x {
            break;
        }
        for &b in &out[a] {
            if parent[b] == usize::MAX && usable(b) {
                parent[b] = a;
                queue.push_back(b);
            }
        }
    }
    if parent[x] == usize::MAX {
        return Err(Error::NotApplicable(format!(
            "{} is not reachable from the head {} of hyperedge {e}",
            h.name(x),
            h.name(head)
        )));
    }

    let mut heads = o.heads.clone();
    heads[e] = x;
    let mut node = x;
    while node != head {
        let prev = parent[node];
        if node >= n {
            // dyperedge node entered from tail vertex `prev`
            heads[node - n] = prev;
        }
        node = prev;
    }
    Ok(Orientation::new(heads))
}

/// All `n(n-1)` ordered-pair connectivities of an orientation, row-major with the diagonal skipped.
pub fn connectivity_profile(h: &Hypergraph, o: &Orientation) -> Result<Vec<usize>> {
    let d = orient(h, o)?;
    let mut out = Vec::with_capacity(h.n() * h.n().saturating_sub(1));
    for u in 0..h.n() {
        for v in 0..h.n() {
            if u != v {
                out.push(lambda_dyper(&d, u, v)?.get());
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::connectivity::{lambda_dyper_brute, reachable};
    use crate::steiner::sht_oracle;

    fn named(edges: &[&[&str]]) -> Hypergraph {
        let edges: Vec<Vec<&str>> = edges.iter().map(|e| e.to_vec()).collect();
        Hypergraph::from_named_edges(&edges).unwrap()
    }

    fn instance(h: &Hypergraph, r: &str, s: &str) -> SrcohInstance {
        SrcohInstance::new(
            h.clone(),
            h.names().resolve(r).unwrap(),
            h.names().resolve_set(s).unwrap(),
        )
        .unwrap()
    }

    fn brute_profile(h: &Hypergraph, o: &Orientation) -> Vec<usize> {
        let d = orient(h, o).unwrap();
        let mut out = Vec::new();
        for u in 0..h.n() {
            for v in 0..h.n() {
                if u != v {
                    out.push(lambda_dyper_brute(&d, u, v).unwrap().get());
                }
            }
        }
        out
    }

    #[test]
    fn srcoh_single_triple_is_no() {
        let h = named(&[&["r", "s", "t"]]);
        let inst = instance(&h, "r", "s t");
        assert_eq!(srcoh_oracle(&inst).unwrap(), None);
        assert_eq!(solve_srcoh(&inst).unwrap(), None);
    }

    #[test]
    fn srcoh_parallel_triples_is_yes() {
        let h = named(&[&["r", "s", "t"], &["r", "s", "t"]]);
        let inst = instance(&h, "r", "s t");
        assert!(srcoh_oracle(&inst).unwrap().is_some());
        let o = solve_srcoh(&inst).unwrap().unwrap();
        assert_eq!(o.heads, vec![1, 2]);
        let d = orient(&h, &o).unwrap();
        assert!(reachable(&d, 0, 1) && reachable(&d, 0, 2));
    }

    #[test]
    fn srcoh_empty_terminals() {
        let h = named(&[&["r", "s", "t"]]);
        let inst = instance(&h, "r", "");
        assert_eq!(solve_srcoh(&inst).unwrap(), Some(Orientation::first_members(&h)));
        assert!(srcoh_oracle(&inst).unwrap().is_some());
    }

    #[test]
    fn srcoh_instance_validation() {
        let h = named(&[&["r", "s"]]);
        assert!(SrcohInstance::new(h.clone(), 5, BTreeSet::new()).is_err());
        assert!(SrcohInstance::new(h, 0, BTreeSet::from([9])).is_err());
    }

    #[test]
    fn sscoh_single_edge_is_no() {
        let h = named(&[&["a", "b"]]);
        assert_eq!(sscoh_exhaustive(&h, &BTreeSet::from([0, 1])).unwrap(), None);
    }

    #[test]
    fn wboh_parallel_triples_has_none() {
        let h = named(&[&["a", "b", "c"], &["a", "b", "c"]]);
        assert_eq!(all_orientations(&h).count(), 9);
        assert_eq!(wboh_exhaustive(&h).unwrap(), None);
    }

    #[test]
    fn wboh_triangle_is_a_circuit() {
        let h = named(&[&["a", "b"], &["b", "c"], &["a", "c"]]);
        let o = wboh_exhaustive(&h).unwrap().unwrap();
        let d = orient(&h, &o).unwrap();
        assert!(strongly_connected_in(&d, &BTreeSet::from([0, 1, 2])));
    }

    #[test]
    fn triangle_circuit_is_well_balanced() {
        let h = named(&[&["a", "b"], &["b", "c"], &["a", "c"]]);
        // a->b, b->c, c->a
        let circuit = Orientation::new(vec![1, 2, 0]);
        assert_eq!(brute_profile(&h, &circuit), vec![1; 6]);
        let report = is_well_balanced(&h, &circuit).unwrap();
        assert!(report.verdict);
        assert_eq!(report.witness, None);
    }

    #[test]
    fn triangle_with_sink_is_not_well_balanced() {
        let h = named(&[&["a", "b"], &["b", "c"], &["a", "c"]]);
        // a->b, c->b, a->c: nothing leaves b
        let o = Orientation::new(vec![1, 1, 2]);
        let report = is_well_balanced(&h, &o).unwrap();
        assert!(!report.verdict);
        let w = report.witness.unwrap();
        // (a,b) and (a,c) are fine; b reaches nothing
        assert_eq!((w.u, w.v), (1, 0));
        assert_eq!(w.lambda_hypergraph, 2);
        assert_eq!(w.lambda_orientation, 0);
        assert_eq!(lambda_dyper_brute(&orient(&h, &o).unwrap(), w.u, w.v).unwrap().get(), 0);
    }

    #[test]
    fn reorient_reverses_triangle_circuit() {
        let h = named(&[&["a", "b"], &["b", "c"], &["a", "c"]]);
        let circuit = Orientation::new(vec![1, 2, 0]);
        let before = brute_profile(&h, &circuit);
        let flipped = reorient_to_head(&h, &circuit, 0, 0).unwrap();
        // b->a, c->b, a->c
        assert_eq!(flipped.heads, vec![0, 1, 2]);
        assert_eq!(brute_profile(&h, &flipped), before);
    }

    #[test]
    fn reorient_hub_edge_toward_root() {
        // e* = {a, z1, z2} headed at z1, with z1 -> a available through a path edge
        let h = named(&[&["a", "z1", "z2"], &["z1", "p"], &["p", "a"], &["a", "z2"]]);
        let o = Orientation::new(vec![1, 3, 0, 2]);
        let before = brute_profile(&h, &o);
        let next = reorient_to_head(&h, &o, 0, 0).unwrap();
        assert_eq!(next.head(0), 0);
        assert_eq!(brute_profile(&h, &next), before);
    }

    #[test]
    fn reorient_identity_and_failures() {
        let h = named(&[&["a", "b"], &["b", "c"]]);
        let o = Orientation::new(vec![1, 2]);
        assert_eq!(reorient_to_head(&h, &o, 0, 1).unwrap(), o);
        // a is not reachable from b
        assert!(matches!(reorient_to_head(&h, &o, 0, 0), Err(Error::NotApplicable(_))));
        // c is not in hyperedge 0
        assert!(matches!(reorient_to_head(&h, &o, 0, 2), Err(Error::NotApplicable(_))));
    }

    #[test]
    fn equivalence_with_hypertrees_on_a_small_case() {
        let h = named(&[&["r", "a", "b"], &["a", "s"], &["b", "s", "t"]]);
        for (r, s) in [("r", "s t"), ("s", "r"), ("t", "r a")] {
            let inst = instance(&h, r, s);
            let hyper = sht_oracle(&h, &inst.rooted_terminals()).unwrap().is_some();
            assert_eq!(srcoh_oracle(&inst).unwrap().is_some(), hyper);
            assert_eq!(solve_srcoh(&inst).unwrap().is_some(), hyper);
        }
    }
}
