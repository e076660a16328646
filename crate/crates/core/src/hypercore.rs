//! Hypergraphs, dypergraphs and the structural transformations between them.
//!
//! All structures index vertices densely by [`VertexId`] in `0..n`. Display
//! names live in a separate [`VertexNames`] registry owned by the
//! [`Hypergraph`]; derived structures (trimmings, orientations, expansions)
//! reuse the indices of the hypergraph they came from.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use crate::error::{Error, Result};

pub type VertexId = usize;

/// Bidirectional map between dense vertex indices and display names.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct VertexNames {
    names: Vec<String>,
    index: HashMap<String, VertexId>,
}

impl VertexNames {
    pub fn new<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut registry = VertexNames::default();
        for name in names {
            registry.push(name.into())?;
        }
        Ok(registry)
    }

    /// Names `v0`, `v1`, ... for `n` vertices.
    pub fn anonymous(n: usize) -> Self {
        Self::new((0..n).map(|i| format!("v{i}"))).expect("generated names are distinct")
    }

    pub fn push(&mut self, name: String) -> Result<VertexId> {
        if self.index.contains_key(&name) {
            return Err(Error::DuplicateName(name));
        }
        let id = self.names.len();
        self.index.insert(name.clone(), id);
        self.names.push(name);
        Ok(id)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, v: VertexId) -> &str {
        &self.names[v]
    }

    pub fn get(&self, name: &str) -> Option<VertexId> {
        self.index.get(name).copied()
    }

    pub fn resolve(&self, name: &str) -> Result<VertexId> {
        self.get(name)
            .ok_or_else(|| Error::UnknownName(name.to_string()))
    }

    /// Resolves whitespace-separated names into a vertex set.
    pub fn resolve_set(&self, names: &str) -> Result<BTreeSet<VertexId>> {
        names.split_whitespace().map(|n| self.resolve(n)).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = &str> {
        self.names.iter().map(String::as_str)
    }
}

/// A hypergraph: `n` vertices and an ordered list of hyperedges.
///
/// Hyperedges are sorted, duplicate-free vertex sets of size at least 2.
/// Parallel copies of the same hyperedge are distinct list entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hypergraph {
    names: VertexNames,
    edges: Vec<Vec<VertexId>>,
}

fn canonical_edge(edge: usize, mut members: Vec<VertexId>, n: usize) -> Result<Vec<VertexId>> {
    members.sort_unstable();
    members.dedup();
    if let Some(&v) = members.iter().find(|&&v| v >= n) {
        return Err(Error::VertexOutOfRange { vertex: v, n });
    }
    if members.len() < 2 {
        return Err(Error::EdgeTooSmall {
            edge,
            size: members.len(),
        });
    }
    Ok(members)
}

impl Hypergraph {
    pub fn new(n: usize, edges: Vec<Vec<VertexId>>) -> Result<Self> {
        Self::with_names(VertexNames::anonymous(n), edges)
    }

    pub fn with_names(names: VertexNames, edges: Vec<Vec<VertexId>>) -> Result<Self> {
        let n = names.len();
        let edges = edges
            .into_iter()
            .enumerate()
            .map(|(i, e)| canonical_edge(i, e, n))
            .collect::<Result<Vec<_>>>()?;
        Ok(Hypergraph { names, edges })
    }

    /// Builds a hypergraph from named hyperedges, registering names in order of first use.
    pub fn from_named_edges<S: AsRef<str>>(edges: &[Vec<S>]) -> Result<Self> {
        let mut names = VertexNames::default();
        let mut indexed = Vec::with_capacity(edges.len());
        for edge in edges {
            let mut members = Vec::with_capacity(edge.len());
            for name in edge {
                let name = name.as_ref();
                let id = match names.get(name) {
                    Some(id) => id,
                    None => names.push(name.to_string())?,
                };
                members.push(id);
            }
            indexed.push(members);
        }
        Self::with_names(names, indexed)
    }

    pub fn n(&self) -> usize {
        self.names.len()
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn names(&self) -> &VertexNames {
        &self.names
    }

    pub fn name(&self, v: VertexId) -> &str {
        self.names.name(v)
    }

    pub fn edges(&self) -> &[Vec<VertexId>] {
        &self.edges
    }

    pub fn edge(&self, i: usize) -> &[VertexId] {
        &self.edges[i]
    }

    pub fn edge_contains(&self, i: usize, v: VertexId) -> bool {
        self.edges[i].binary_search(&v).is_ok()
    }

    /// Number of hyperedges containing `v`.
    pub fn degree(&self, v: VertexId) -> usize {
        (0..self.m()).filter(|&i| self.edge_contains(i, v)).count()
    }

    pub fn is_graph(&self) -> bool {
        self.edges.iter().all(|e| e.len() == 2)
    }

    /// A copy of this hypergraph with one more hyperedge appended.
    pub fn with_edge(&self, members: Vec<VertexId>) -> Result<Self> {
        let edge = canonical_edge(self.m(), members, self.n())?;
        let mut next = self.clone();
        next.edges.push(edge);
        Ok(next)
    }

    /// Product of hyperedge sizes, i.e. the number of orientations.
    /// Saturates at `u128::MAX`.
    pub fn orientation_count(&self) -> u128 {
        self.edges
            .iter()
            .fold(1u128, |acc, e| acc.saturating_mul(e.len() as u128))
    }

    pub fn check_vertex(&self, v: VertexId) -> Result<()> {
        if v < self.n() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n() })
        }
    }
}

/// An undirected multigraph on `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(VertexId, VertexId)>,
}

impl Graph {
    pub fn new(n: usize, edges: Vec<(VertexId, VertexId)>) -> Result<Self> {
        for (i, &(u, v)) in edges.iter().enumerate() {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::EdgeTooSmall { edge: i, size: 1 });
            }
        }
        Ok(Graph { n, edges })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    /// Neighbour lists; parallel edges produce repeated neighbours.
    pub fn adjacency(&self) -> Vec<Vec<VertexId>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        adj
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.edges
            .iter()
            .map(|&(a, b)| usize::from(a == v) + usize::from(b == v))
            .sum()
    }

    /// Vertices touched by at least one edge.
    pub fn covered_vertices(&self) -> BTreeSet<VertexId> {
        self.edges.iter().flat_map(|&(u, v)| [u, v]).collect()
    }

    /// Whether the edges form a single tree whose vertex set contains `terminals`.
    ///
    /// Isolated vertices are ignored. With no edges, the "tree" is a single vertex,
    /// so this holds iff `terminals` has at most one element.
    pub fn is_steiner_tree(&self, terminals: &BTreeSet<VertexId>) -> bool {
        let covered = self.covered_vertices();
        if self.edges.is_empty() {
            return terminals.len() <= 1;
        }
        if self.edges.len() + 1 != covered.len() {
            return false;
        }
        if !terminals.is_subset(&covered) {
            return false;
        }
        let adj = self.adjacency();
        let start = *covered.iter().next().expect("nonempty");
        let mut seen = vec![false; self.n];
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        let mut count = 1;
        while let Some(u) = queue.pop_front() {
            for &w in &adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    queue.push_back(w);
                }
            }
        }
        count == covered.len()
    }
}

impl From<&Graph> for Hypergraph {
    fn from(g: &Graph) -> Self {
        Hypergraph::new(g.n, g.edges.iter().map(|&(u, v)| vec![u, v]).collect())
            .expect("graph edges are valid hyperedges")
    }
}

/// A partial trimming: a chosen vertex pair for some of the hyperedges.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TrimChoice(BTreeMap<usize, (VertexId, VertexId)>);

impl TrimChoice {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, edge: usize, u: VertexId, v: VertexId) {
        self.0.insert(edge, (u, v));
    }

    pub fn get(&self, edge: usize) -> Option<(VertexId, VertexId)> {
        self.0.get(&edge).copied()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `(edge index, u, v)` in increasing edge order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, VertexId, VertexId)> + '_ {
        self.0.iter().map(|(&e, &(u, v))| (e, u, v))
    }
}

impl FromIterator<(usize, VertexId, VertexId)> for TrimChoice {
    fn from_iter<I: IntoIterator<Item = (usize, VertexId, VertexId)>>(iter: I) -> Self {
        TrimChoice(iter.into_iter().map(|(e, u, v)| (e, (u, v))).collect())
    }
}

/// Replaces each chosen hyperedge by its chosen pair; unchosen hyperedges are dropped.
pub fn trim(h: &Hypergraph, choice: &TrimChoice) -> Result<Graph> {
    let mut edges = Vec::with_capacity(choice.len());
    for (e, u, v) in choice.iter() {
        if e >= h.m() {
            return Err(Error::EdgeOutOfRange { edge: e, m: h.m() });
        }
        if u == v {
            return Err(Error::InvalidChoice {
                edge: e,
                reason: "pair endpoints coincide".into(),
            });
        }
        if !h.edge_contains(e, u) || !h.edge_contains(e, v) {
            return Err(Error::InvalidChoice {
                edge: e,
                reason: "pair is not inside the hyperedge".into(),
            });
        }
        edges.push((u, v));
    }
    Graph::new(h.n(), edges)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IncidenceNode {
    Vertex(VertexId),
    Edge(usize),
}

/// Bipartite vertex/hyperedge incidence graph.
///
/// Node `v < n` is original vertex `v`; node `n + i` is the edge-vertex of hyperedge `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncidenceGraph {
    pub graph: Graph,
    pub tags: Vec<IncidenceNode>,
    pub vertex_count: usize,
}

impl IncidenceGraph {
    pub fn edge_node(&self, edge: usize) -> usize {
        self.vertex_count + edge
    }

    pub fn tag(&self, node: usize) -> IncidenceNode {
        self.tags[node]
    }
}

pub fn incidence_graph(h: &Hypergraph) -> IncidenceGraph {
    let n = h.n();
    let mut edges = Vec::with_capacity(h.edges().iter().map(Vec::len).sum());
    for (i, e) in h.edges().iter().enumerate() {
        edges.extend(e.iter().map(|&v| (v, n + i)));
    }
    let tags = (0..n)
        .map(IncidenceNode::Vertex)
        .chain((0..h.m()).map(IncidenceNode::Edge))
        .collect();
    IncidenceGraph {
        graph: Graph::new(n + h.m(), edges).expect("incidence edges are valid"),
        tags,
        vertex_count: n,
    }
}

/// Head choice per hyperedge, aligned with the hypergraph's edge list.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Orientation {
    pub heads: Vec<VertexId>,
}

impl Orientation {
    pub fn new(heads: Vec<VertexId>) -> Self {
        Orientation { heads }
    }

    /// Every hyperedge headed at its lowest-index member.
    pub fn first_members(h: &Hypergraph) -> Self {
        Orientation::new(h.edges().iter().map(|e| e[0]).collect())
    }

    pub fn head(&self, edge: usize) -> VertexId {
        self.heads[edge]
    }

    pub fn validate(&self, h: &Hypergraph) -> Result<()> {
        if self.heads.len() != h.m() {
            return Err(Error::InvalidOrientation(format!(
                "{} heads for {} hyperedges",
                self.heads.len(),
                h.m()
            )));
        }
        for (i, &head) in self.heads.iter().enumerate() {
            if !h.edge_contains(i, head) {
                return Err(Error::InvalidOrientation(format!(
                    "head {head} is not a member of hyperedge {i}"
                )));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dyperedge {
    pub tail: Vec<VertexId>,
    pub head: VertexId,
}

/// A directed hypergraph; every dyperedge has a nonempty tail and a single head.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dypergraph {
    n: usize,
    arcs: Vec<Dyperedge>,
}

impl Dypergraph {
    pub fn new(n: usize, arcs: Vec<Dyperedge>) -> Result<Self> {
        let mut checked = Vec::with_capacity(arcs.len());
        for (i, mut arc) in arcs.into_iter().enumerate() {
            arc.tail.sort_unstable();
            arc.tail.dedup();
            for &v in arc.tail.iter().chain(std::iter::once(&arc.head)) {
                if v >= n {
                    return Err(Error::VertexOutOfRange { vertex: v, n });
                }
            }
            if arc.tail.is_empty() {
                return Err(Error::InvalidDyperedge {
                    arc: i,
                    reason: "empty tail".into(),
                });
            }
            if arc.tail.binary_search(&arc.head).is_ok() {
                return Err(Error::InvalidDyperedge {
                    arc: i,
                    reason: "tail contains the head".into(),
                });
            }
            checked.push(arc);
        }
        Ok(Dypergraph { n, arcs: checked })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn arcs(&self) -> &[Dyperedge] {
        &self.arcs
    }

    /// Drops the dyperedges whose index is in `skip`, keeping the order of the rest.
    pub fn without(&self, skip: &BTreeSet<usize>) -> Dypergraph {
        Dypergraph {
            n: self.n,
            arcs: self
                .arcs
                .iter()
                .enumerate()
                .filter(|(i, _)| !skip.contains(i))
                .map(|(_, a)| a.clone())
                .collect(),
        }
    }
}

pub fn orient(h: &Hypergraph, o: &Orientation) -> Result<Dypergraph> {
    o.validate(h)?;
    let arcs = h
        .edges()
        .iter()
        .zip(&o.heads)
        .map(|(e, &head)| Dyperedge {
            tail: e.iter().copied().filter(|&v| v != head).collect(),
            head,
        })
        .collect();
    Dypergraph::new(h.n(), arcs)
}

/// Hyperedge `i` is `tail(i) ∪ {head(i)}`. Vertex names are anonymous.
pub fn underlying_hypergraph(d: &Dypergraph) -> Hypergraph {
    let edges = d
        .arcs()
        .iter()
        .map(|a| {
            let mut e = a.tail.clone();
            e.push(a.head);
            e
        })
        .collect();
    Hypergraph::new(d.n(), edges).expect("dyperedges span at least two vertices")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExpansionNode {
    Vertex(VertexId),
    Dyperedge(usize),
}

/// The digraph in which every dyperedge becomes a node with tail arcs in and one head arc out.
///
/// Node `v < n` is original vertex `v`; node `n + i` stands for dyperedge `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DigraphExpansion {
    pub vertex_count: usize,
    pub tags: Vec<ExpansionNode>,
    pub arcs: Vec<(usize, usize)>,
}

impl DigraphExpansion {
    pub fn node_count(&self) -> usize {
        self.tags.len()
    }

    pub fn out_adjacency(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.node_count()];
        for &(u, v) in &self.arcs {
            out[u].push(v);
        }
        out
    }
}

pub fn digraph_expansion(d: &Dypergraph) -> DigraphExpansion {
    let n = d.n();
    let mut arcs = Vec::new();
    for (i, a) in d.arcs().iter().enumerate() {
        arcs.extend(a.tail.iter().map(|&v| (v, n + i)));
        arcs.push((n + i, a.head));
    }
    let tags = (0..n)
        .map(ExpansionNode::Vertex)
        .chain((0..d.arcs().len()).map(ExpansionNode::Dyperedge))
        .collect();
    DigraphExpansion {
        vertex_count: n,
        tags,
        arcs,
    }
}

/// A tree on an explicit label set, with undirected edges stored as `(min, max)`.
///
/// A single label with no edges is accepted as a tree.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LabelledTree<L: Ord> {
    labels: BTreeSet<L>,
    edges: BTreeSet<(L, L)>,
}

impl<L: Ord + Copy> LabelledTree<L> {
    pub fn new(labels: BTreeSet<L>, edges: impl IntoIterator<Item = (L, L)>) -> Result<Self> {
        let mut normalized = BTreeSet::new();
        for (u, v) in edges {
            if u == v {
                return Err(Error::InvalidTree("self-loop".into()));
            }
            if !labels.contains(&u) || !labels.contains(&v) {
                return Err(Error::InvalidTree("edge endpoint outside the label set".into()));
            }
            if !normalized.insert((u.min(v), u.max(v))) {
                return Err(Error::InvalidTree("repeated edge".into()));
            }
        }
        if labels.is_empty() {
            return Err(Error::InvalidTree("no labels".into()));
        }
        if normalized.len() + 1 != labels.len() {
            return Err(Error::InvalidTree(format!(
                "{} edges on {} labels",
                normalized.len(),
                labels.len()
            )));
        }
        let tree = LabelledTree {
            labels,
            edges: normalized,
        };
        if !tree.is_connected() {
            return Err(Error::InvalidTree("disconnected".into()));
        }
        Ok(tree)
    }

    fn is_connected(&self) -> bool {
        let start = *self.labels.iter().next().expect("nonempty");
        let mut seen = BTreeSet::from([start]);
        let mut stack = vec![start];
        while let Some(u) = stack.pop() {
            for w in self.neighbours(u) {
                if seen.insert(w) {
                    stack.push(w);
                }
            }
        }
        seen.len() == self.labels.len()
    }

    pub fn labels(&self) -> &BTreeSet<L> {
        &self.labels
    }

    pub fn edges(&self) -> &BTreeSet<(L, L)> {
        &self.edges
    }

    pub fn neighbours(&self, l: L) -> impl Iterator<Item = L> + '_ {
        self.edges.iter().filter_map(move |&(u, v)| {
            if u == l {
                Some(v)
            } else if v == l {
                Some(u)
            } else {
                None
            }
        })
    }

    pub fn degree(&self, l: L) -> usize {
        self.neighbours(l).count()
    }

    pub fn leaf_count(&self) -> usize {
        self.labels.iter().filter(|&&l| self.degree(l) == 1).count()
    }

    pub fn branch_count(&self) -> usize {
        self.labels.iter().filter(|&&l| self.degree(l) >= 3).count()
    }
}
