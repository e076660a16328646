//! Steiner hypertrees: deciding whether some subhypergraph can be trimmed to a
//! tree spanning a terminal set.
//!
//! [`solve_sht`] works in the incidence graph. A Steiner hypertree exists iff
//! some small Steiner tree (at most `2|S| - 2` nodes, extra nodes of degree at
//! least 3) embeds there as a special subdivision: terminals map to
//! themselves, branch nodes map injectively to other original vertices, and
//! tree edges become internally vertex-disjoint paths. Each edge-vertex on
//! such a path has degree 2, so contracting it gives back a trimmed hyperedge.
//!
//! [`sht_oracle`] is an independent exhaustive search used to cross-check it.

mod paths;
mod trees;

pub use paths::{disjoint_paths, disjoint_paths_in, path_degree, PathQuery};
pub use trees::{
    branch_labels, enumerate_small_trees, labelled_trees, prufer_decode, PruferSequences,
    SmallSteinerTree, TreeLabel,
};

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::hypercore::{
    incidence_graph, trim, Graph, Hypergraph, IncidenceGraph, IncidenceNode, TrimChoice, VertexId,
};

/// Yes-witness for a Steiner hypertree: a trimming of some hyperedges that forms a tree.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ShtCertificate {
    pub choice: TrimChoice,
}

impl ShtCertificate {
    pub fn new(choice: TrimChoice) -> Self {
        ShtCertificate { choice }
    }

    pub fn tree(&self, h: &Hypergraph) -> Result<Graph> {
        trim(h, &self.choice)
    }

    /// One `edgeIndex u v` line per trimmed hyperedge, using vertex names.
    pub fn to_text(&self, h: &Hypergraph) -> String {
        self.choice
            .iter()
            .map(|(e, u, v)| format!("{e} {} {}\n", h.name(u), h.name(v)))
            .collect()
    }

    pub fn parse(text: &str, h: &Hypergraph) -> Result<Self> {
        let mut choice = TrimChoice::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let parts: Vec<&str> = line.split_whitespace().collect();
            let [e, u, v] = parts[..] else {
                return Err(Error::parse(idx + 1, "expected `edgeIndex u v`"));
            };
            let e: usize = e
                .parse()
                .map_err(|_| Error::parse(idx + 1, format!("bad edge index `{e}`")))?;
            if choice.get(e).is_some() {
                return Err(Error::parse(idx + 1, format!("hyperedge {e} trimmed twice")));
            }
            choice.insert(e, h.names().resolve(u)?, h.names().resolve(v)?);
        }
        Ok(ShtCertificate { choice })
    }
}

/// An embedding of a small Steiner tree into the incidence graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecialSubdivision {
    pub phi: BTreeMap<TreeLabel, VertexId>,
    /// One incidence-graph path per tree edge `(a, b)`, running `phi(a) → phi(b)`.
    pub paths: Vec<((TreeLabel, TreeLabel), Vec<usize>)>,
}

impl SpecialSubdivision {
    /// Contracts every edge-vertex on the paths into a trimmed hyperedge.
    pub fn to_certificate(&self, ig: &IncidenceGraph) -> ShtCertificate {
        let mut choice = TrimChoice::new();
        for (_, path) in &self.paths {
            for w in path.windows(3) {
                if let IncidenceNode::Edge(e) = ig.tag(w[1]) {
                    choice.insert(e, w[0], w[2]);
                }
            }
        }
        ShtCertificate { choice }
    }
}

fn check_terminals(h: &Hypergraph, s: &BTreeSet<VertexId>) -> Result<()> {
    match s.iter().find(|&&v| v >= h.n()) {
        Some(v) => Err(Error::InvalidTerminals(format!(
            "terminal {v} is not a vertex (n = {})",
            h.n()
        ))),
        None => Ok(()),
    }
}

fn terminals_of(t: &SmallSteinerTree) -> BTreeSet<VertexId> {
    t.labels()
        .iter()
        .filter_map(|l| match *l {
            TreeLabel::Terminal(v) => Some(v),
            TreeLabel::Branch(_) => None,
        })
        .collect()
}

/// Routes the tree edges of `t` for a fixed image of its branch labels.
pub fn subdivision_with_mapping(
    t: &SmallSteinerTree,
    ig: &IncidenceGraph,
    adjacency: &[Vec<usize>],
    branch_images: &BTreeMap<usize, VertexId>,
) -> Option<SpecialSubdivision> {
    let mut phi = BTreeMap::new();
    for &label in t.labels() {
        let image = match label {
            TreeLabel::Terminal(v) => v,
            TreeLabel::Branch(b) => *branch_images.get(&b)?,
        };
        if image >= ig.vertex_count {
            return None;
        }
        phi.insert(label, image);
    }
    let images: BTreeSet<VertexId> = phi.values().copied().collect();
    if images.len() != phi.len() {
        return None;
    }
    let tree_edges: Vec<(TreeLabel, TreeLabel)> = t.edges().iter().copied().collect();
    let pairs: Vec<(usize, usize)> = tree_edges.iter().map(|(a, b)| (phi[a], phi[b])).collect();
    let routed = disjoint_paths_in(adjacency, &pairs)?;
    Some(SpecialSubdivision {
        phi,
        paths: tree_edges.into_iter().zip(routed).collect(),
    })
}

/// Injective maps from `count` slots into `candidates`, in lexicographic order.
fn injections(candidates: &[VertexId], count: usize) -> Vec<Vec<VertexId>> {
    fn go(candidates: &[VertexId], count: usize, current: &mut Vec<VertexId>, out: &mut Vec<Vec<VertexId>>) {
        if current.len() == count {
            out.push(current.clone());
            return;
        }
        for &c in candidates {
            if !current.contains(&c) {
                current.push(c);
                go(candidates, count, current, out);
                current.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(candidates, count, &mut Vec::with_capacity(count), &mut out);
    out
}

fn search_subdivision(
    t: &SmallSteinerTree,
    ig: &IncidenceGraph,
    adjacency: &[Vec<usize>],
) -> Option<SpecialSubdivision> {
    let terminals = terminals_of(t);
    let branches = branch_labels(t);
    let candidates: Vec<VertexId> = (0..ig.vertex_count)
        .filter(|v| !terminals.contains(v))
        .collect();
    injections(&candidates, branches.len())
        .into_iter()
        .find_map(|images| {
            let map = branches.iter().copied().zip(images).collect();
            subdivision_with_mapping(t, ig, adjacency, &map)
        })
}

/// Searches for `t` as a special subdivision of the incidence graph of `h`.
pub fn find_special_subdivision(t: &SmallSteinerTree, h: &Hypergraph) -> Result<Option<SpecialSubdivision>> {
    check_terminals(h, &terminals_of(t))?;
    let ig = incidence_graph(h);
    let adjacency = ig.graph.adjacency();
    Ok(search_subdivision(t, &ig, &adjacency))
}

fn same_component(adjacency: &[Vec<usize>], s: &BTreeSet<VertexId>) -> bool {
    let Some(&start) = s.iter().next() else {
        return true;
    };
    let mut seen = vec![false; adjacency.len()];
    seen[start] = true;
    let mut queue = VecDeque::from([start]);
    while let Some(u) = queue.pop_front() {
        for &w in &adjacency[u] {
            if !seen[w] {
                seen[w] = true;
                queue.push_back(w);
            }
        }
    }
    s.iter().all(|&v| seen[v])
}

/// Largest terminal set [`solve_sht`] accepts; the tree enumeration grows like `(2k-2)^(2k-3)`.
pub const SOLVE_MAX_TERMINALS: usize = 5;

/// Decides whether `h` contains an `s`-Steiner hypertree, returning a witness.
///
/// Terminal sets of size at most 1 are trivially spanned by the empty trimming.
pub fn solve_sht(h: &Hypergraph, s: &BTreeSet<VertexId>) -> Result<Option<ShtCertificate>> {
    check_terminals(h, s)?;
    if s.len() > SOLVE_MAX_TERMINALS {
        return Err(Error::ScaleGuard(format!(
            "{} terminals exceed the small-tree enumeration limit of {SOLVE_MAX_TERMINALS}",
            s.len()
        )));
    }
    if s.len() <= 1 {
        return Ok(Some(ShtCertificate::default()));
    }
    let ig = incidence_graph(h);
    let adjacency = ig.graph.adjacency();
    if !same_component(&adjacency, s) {
        return Ok(None);
    }
    // Branch labels are interchangeable, so only trees using a prefix of the pool are tried.
    let found = enumerate_small_trees(s)
        .filter(|t| {
            let used = branch_labels(t);
            used.iter().enumerate().all(|(i, &b)| i == b)
        })
        .find_map(|t| search_subdivision(&t, &ig, &adjacency));
    Ok(found.map(|sub| sub.to_certificate(&ig)))
}

pub const ORACLE_MAX_EDGES: usize = 16;
pub const ORACLE_MAX_EDGE_SIZE: usize = 6;
pub const ORACLE_MAX_VERTICES: usize = 64;

/// Exhaustive search for a Steiner hypertree, independent of [`solve_sht`].
///
/// Grows trees from the smallest terminal one trimmed hyperedge at a time, each
/// step attaching one new vertex. Every tree arises this way (add its edges in
/// breadth-first order), and the search memoizes on (used hyperedges, spanned
/// vertices), which determines everything the continuation depends on.
pub fn sht_oracle(h: &Hypergraph, s: &BTreeSet<VertexId>) -> Result<Option<ShtCertificate>> {
    if h.m() > ORACLE_MAX_EDGES
        || h.n() > ORACLE_MAX_VERTICES
        || h.edges().iter().any(|e| e.len() > ORACLE_MAX_EDGE_SIZE)
    {
        return Err(Error::ScaleGuard(format!(
            "hypertree oracle limited to m <= {ORACLE_MAX_EDGES}, n <= {ORACLE_MAX_VERTICES}, \
             hyperedge size <= {ORACLE_MAX_EDGE_SIZE}"
        )));
    }
    check_terminals(h, s)?;
    let Some(&root) = s.iter().next() else {
        return Ok(Some(ShtCertificate::default()));
    };
    let target: u64 = s.iter().fold(0, |m, &v| m | 1 << v);
    let edge_masks: Vec<u64> = h
        .edges()
        .iter()
        .map(|e| e.iter().fold(0, |m, &v| m | 1 << v))
        .collect();
    let mut search = Grower {
        h,
        edge_masks,
        target,
        seen: HashSet::new(),
        steps: Vec::new(),
    };
    if search.grow(0, 1 << root) {
        Ok(Some(ShtCertificate::new(search.steps.into_iter().collect())))
    } else {
        Ok(None)
    }
}

struct Grower<'a> {
    h: &'a Hypergraph,
    edge_masks: Vec<u64>,
    target: u64,
    seen: HashSet<(u32, u64)>,
    steps: Vec<(usize, VertexId, VertexId)>,
}

impl Grower<'_> {
    fn grow(&mut self, used: u32, spanned: u64) -> bool {
        if spanned & self.target == self.target {
            return true;
        }
        if !self.seen.insert((used, spanned)) {
            return false;
        }
        for e in 0..self.h.m() {
            let mask = self.edge_masks[e];
            if used >> e & 1 == 1 || mask & spanned == 0 || mask & !spanned == 0 {
                continue;
            }
            let anchor = self
                .h
                .edge(e)
                .iter()
                .copied()
                .find(|&v| spanned >> v & 1 == 1)
                .expect("edge meets the tree");
            for &y in self.h.edge(e) {
                if spanned >> y & 1 == 1 {
                    continue;
                }
                self.steps.push((e, anchor, y));
                if self.grow(used | 1 << e, spanned | 1 << y) {
                    return true;
                }
                self.steps.pop();
            }
        }
        false
    }
}

/// Whether the certificate trims its hyperedges into a tree containing `s`.
pub fn verify_sht_certificate(h: &Hypergraph, s: &BTreeSet<VertexId>, cert: &ShtCertificate) -> bool {
    if s.iter().any(|&v| v >= h.n()) {
        return false;
    }
    match cert.tree(h) {
        Ok(g) => g.is_steiner_tree(s),
        Err(_) => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn named(edges: &[&[&str]]) -> Hypergraph {
        let edges: Vec<Vec<&str>> = edges.iter().map(|e| e.to_vec()).collect();
        Hypergraph::from_named_edges(&edges).unwrap()
    }

    fn set(h: &Hypergraph, names: &str) -> BTreeSet<VertexId> {
        h.names().resolve_set(names).unwrap()
    }

    #[test]
    fn single_triple_cannot_span_three_terminals() {
        let h = named(&[&["r", "s", "t"]]);
        let s = set(&h, "r s t");
        assert_eq!(sht_oracle(&h, &s).unwrap(), None);
        assert_eq!(solve_sht(&h, &s).unwrap(), None);
    }

    #[test]
    fn two_parallel_triples_span_three_terminals() {
        let h = named(&[&["r", "s", "t"], &["r", "s", "t"]]);
        let s = set(&h, "r s t");
        for cert in [sht_oracle(&h, &s).unwrap(), solve_sht(&h, &s).unwrap()] {
            let cert = cert.expect("yes instance");
            assert!(verify_sht_certificate(&h, &s, &cert));
            assert_eq!(cert.choice.len(), 2);
        }
        let expected: TrimChoice = [(0, 0, 1), (1, 0, 2)].into_iter().collect();
        assert_eq!(sht_oracle(&h, &s).unwrap().unwrap().choice, expected);
    }

    #[test]
    fn trivial_terminal_sets() {
        let h = Hypergraph::new(3, vec![]).unwrap();
        assert_eq!(solve_sht(&h, &BTreeSet::from([1])).unwrap(), Some(ShtCertificate::default()));
        assert_eq!(sht_oracle(&h, &BTreeSet::from([1])).unwrap(), Some(ShtCertificate::default()));
        assert_eq!(sht_oracle(&h, &BTreeSet::from([0, 1])).unwrap(), None);
        assert_eq!(solve_sht(&h, &BTreeSet::from([0, 1])).unwrap(), None);
        assert_eq!(solve_sht(&h, &BTreeSet::new()).unwrap(), Some(ShtCertificate::default()));
    }

    #[test]
    fn terminals_must_exist() {
        let h = Hypergraph::new(2, vec![vec![0, 1]]).unwrap();
        assert!(matches!(
            solve_sht(&h, &BTreeSet::from([0, 5])),
            Err(Error::InvalidTerminals(_))
        ));
    }

    #[test]
    fn oracle_scale_guard() {
        let h = Hypergraph::new(2, vec![vec![0, 1]; 17]).unwrap();
        assert!(matches!(sht_oracle(&h, &BTreeSet::from([0, 1])), Err(Error::ScaleGuard(_))));
        let wide = Hypergraph::new(7, vec![(0..7).collect()]).unwrap();
        assert!(matches!(sht_oracle(&wide, &BTreeSet::from([0])), Err(Error::ScaleGuard(_))));
        let path = Hypergraph::new(7, (0..6).map(|i| vec![i, i + 1]).collect()).unwrap();
        assert!(matches!(solve_sht(&path, &(0..6).collect()), Err(Error::ScaleGuard(_))));
        assert!(solve_sht(&path, &(0..5).collect()).unwrap().is_some());
    }

    #[test]
    fn edge_tree_in_single_edge() {
        let h = named(&[&["s1", "s2"]]);
        let s = set(&h, "s1 s2");
        let t = enumerate_small_trees(&s).next().unwrap();
        let sub = find_special_subdivision(&t, &h).unwrap().unwrap();
        assert_eq!(sub.paths.len(), 1);
        assert_eq!(sub.paths[0].1, vec![0, 2, 1]);
    }

    #[test]
    fn edge_tree_through_intermediate_vertex() {
        let h = named(&[&["s1", "x"], &["x", "s2"]]);
        let s = set(&h, "s1 s2");
        let t = enumerate_small_trees(&s).next().unwrap();
        let sub = find_special_subdivision(&t, &h).unwrap().unwrap();
        // s1=0, x=1, s2=2, z0=3, z1=4
        assert_eq!(sub.paths[0].1, vec![0, 3, 1, 4, 2]);
        let cert = sub.to_certificate(&incidence_graph(&h));
        assert!(verify_sht_certificate(&h, &s, &cert));
    }

    #[test]
    fn certificate_verification_failures() {
        let h = named(&[&["a", "b"], &["b", "c"], &["c", "a"]]);
        let s = set(&h, "a b c");
        let cycle: TrimChoice = [(0, 0, 1), (1, 1, 2), (2, 2, 0)].into_iter().collect();
        assert!(!verify_sht_certificate(&h, &s, &ShtCertificate::new(cycle)));
        let short: TrimChoice = [(0, 0, 1)].into_iter().collect();
        assert!(!verify_sht_certificate(&h, &s, &ShtCertificate::new(short)));
        let bogus: TrimChoice = [(0, 0, 2), (1, 1, 2)].into_iter().collect();
        assert!(!verify_sht_certificate(&h, &s, &ShtCertificate::new(bogus)));
        let good: TrimChoice = [(0, 0, 1), (1, 1, 2)].into_iter().collect();
        assert!(verify_sht_certificate(&h, &s, &ShtCertificate::new(good)));
    }

    #[test]
    fn certificate_text_round_trip() {
        let h = named(&[&["r", "s", "t"], &["r", "s", "t"]]);
        let cert = sht_oracle(&h, &set(&h, "r s t")).unwrap().unwrap();
        let text = cert.to_text(&h);
        assert_eq!(text, "0 r s\n1 r t\n");
        assert_eq!(ShtCertificate::parse(&text, &h).unwrap(), cert);
        assert!(ShtCertificate::parse("0 r\n", &h).is_err());
        assert!(ShtCertificate::parse("0 r q\n", &h).is_err());
    }
}
