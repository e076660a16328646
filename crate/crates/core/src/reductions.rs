//! Hardness reductions with certificate translation in both directions:
//! 3-CNF to Steiner hypertree, rooted to strong Steiner orientation, and
//! (3,B2)-CNF to well-balanced orientation.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::hypercore::{Hypergraph, Orientation, VertexId, VertexNames};
use crate::orient::{is_well_balanced, reorient_to_head, reorient_to_head_avoiding, SrcohInstance};
use crate::satkit::{eval, validate_3b2, Assignment, CnfFormula, Literal};
use crate::steiner::{verify_sht_certificate, ShtCertificate};

/// One line of a sidecar name map: `name kind base`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NameEntry {
    pub name: String,
    pub kind: String,
    pub base: String,
}

/// Describes what every vertex of a reduced instance stands for.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct NameMap {
    pub entries: Vec<NameEntry>,
}

impl NameMap {
    fn push(&mut self, name: &str, kind: &str, base: impl Into<String>) {
        self.entries.push(NameEntry {
            name: name.to_string(),
            kind: kind.to_string(),
            base: base.into(),
        });
    }

    pub fn to_text(&self) -> String {
        let mut out = String::from("# name kind base\n");
        for e in &self.entries {
            let _ = writeln!(out, "{} {} {}", e.name, e.kind, e.base);
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut map = NameMap::default();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let parts: Vec<&str> = line.split_whitespace().collect();
            let [name, kind, base] = parts[..] else {
                return Err(Error::parse(idx + 1, "expected `name kind base`"));
            };
            map.push(name, kind, base);
        }
        Ok(map)
    }
}

fn clause_label(c: usize) -> String {
    format!("C{}", c + 1)
}

fn literal_index(l: Literal) -> usize {
    2 * l.var + usize::from(!l.positive)
}

fn literals(vars: usize) -> impl Iterator<Item = Literal> {
    (0..vars).flat_map(|x| [Literal::pos(x), Literal::neg(x)])
}

fn require_distinct_literals(f: &CnfFormula) -> Result<()> {
    match f
        .clauses()
        .iter()
        .position(|c| c[0].var == c[1].var || c[0].var == c[2].var || c[1].var == c[2].var)
    {
        Some(i) => Err(Error::InvalidFormula(format!(
            "clause {} repeats a variable; clauses must use three distinct variables",
            i + 1
        ))),
        None => Ok(()),
    }
}

fn require_satisfying(f: &CnfFormula, phi: &Assignment) -> Result<()> {
    if eval(f, phi)? {
        return Ok(());
    }
    let bad = f
        .clauses()
        .iter()
        .position(|c| !c.iter().any(|l| l.value(phi)))
        .expect("some clause fails");
    Err(Error::ConstructionFailure(format!(
        "clause {} has no true literal",
        bad + 1
    )))
}

/// Steiner hypertree instance built from a 3-CNF formula.
///
/// Vertices `w_ℓ` per literal, `z_C` per clause and a root `a`; hyperedges
/// `{a, w_x, w_¬x}` per variable and `{w_ℓ : ℓ ∈ C} ∪ {z_C}` per clause;
/// terminals `{z_C} ∪ {a}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShtReductionMap {
    pub formula: CnfFormula,
    pub hypergraph: Hypergraph,
    pub terminals: BTreeSet<VertexId>,
    pub root: VertexId,
    /// Indexed by `2 * var + (negated as usize)`.
    pub literal_vertex: Vec<VertexId>,
    pub clause_vertex: Vec<VertexId>,
    pub variable_edge: Vec<usize>,
    pub clause_edge: Vec<usize>,
    pub names: NameMap,
}

impl ShtReductionMap {
    pub fn w(&self, l: Literal) -> VertexId {
        self.literal_vertex[literal_index(l)]
    }
}

pub fn sat_to_sht(f: &CnfFormula) -> Result<ShtReductionMap> {
    require_distinct_literals(f)?;
    let vars = f.var_count();
    let mut names = VertexNames::default();
    let mut map = NameMap::default();
    let mut literal_vertex = Vec::with_capacity(2 * vars);
    for l in literals(vars) {
        let name = format!("w{}", l.name());
        literal_vertex.push(names.push(name.clone())?);
        map.push(&name, "literal", l.name());
    }
    let mut clause_vertex = Vec::with_capacity(f.clauses().len());
    for c in 0..f.clauses().len() {
        let name = format!("z{}", clause_label(c));
        clause_vertex.push(names.push(name.clone())?);
        map.push(&name, "clause", clause_label(c));
    }
    let root = names.push("a".to_string())?;
    map.push("a", "root", "-");

    let w = |l: Literal| literal_vertex[literal_index(l)];
    let mut edges = Vec::new();
    let variable_edge = (0..vars)
        .map(|x| {
            edges.push(vec![root, w(Literal::pos(x)), w(Literal::neg(x))]);
            edges.len() - 1
        })
        .collect();
    let clause_edge = f
        .clauses()
        .iter()
        .enumerate()
        .map(|(c, clause)| {
            let mut e: Vec<VertexId> = clause.iter().map(|&l| w(l)).collect();
            e.push(clause_vertex[c]);
            edges.push(e);
            edges.len() - 1
        })
        .collect();
    let mut terminals: BTreeSet<VertexId> = clause_vertex.iter().copied().collect();
    terminals.insert(root);
    Ok(ShtReductionMap {
        formula: f.clone(),
        hypergraph: Hypergraph::with_names(names, edges)?,
        terminals,
        root,
        literal_vertex,
        clause_vertex,
        variable_edge,
        clause_edge,
        names: map,
    })
}

/// Trims each variable hyperedge toward its true literal and each clause
/// hyperedge to its first true literal.
pub fn assignment_to_hypertree(map: &ShtReductionMap, phi: &Assignment) -> Result<ShtCertificate> {
    require_satisfying(&map.formula, phi)?;
    let mut cert = ShtCertificate::default();
    for (x, &e) in map.variable_edge.iter().enumerate() {
        let lit = Literal { var: x, positive: phi.values[x] };
        cert.choice.insert(e, map.root, map.w(lit));
    }
    for (c, clause) in map.formula.clauses().iter().enumerate() {
        let lit = *clause
            .iter()
            .find(|l| l.value(phi))
            .expect("satisfying assignment");
        cert.choice.insert(map.clause_edge[c], map.w(lit), map.clause_vertex[c]);
    }
    Ok(cert)
}

/// A variable is true iff its hyperedge is trimmed to `a w_x`.
pub fn hypertree_to_assignment(map: &ShtReductionMap, cert: &ShtCertificate) -> Result<Assignment> {
    if !verify_sht_certificate(&map.hypergraph, &map.terminals, cert) {
        return Err(Error::InvalidWitness(
            "certificate does not trim to a tree spanning the terminals".into(),
        ));
    }
    let values = map
        .variable_edge
        .iter()
        .enumerate()
        .map(|(x, &e)| {
            let pos = map.w(Literal::pos(x));
            matches!(cert.choice.get(e), Some(pair) if pair == (map.root, pos) || pair == (pos, map.root))
        })
        .collect();
    Ok(Assignment::new(values))
}

/// The strong-orientation instance: `H + (S ∪ r)` with terminals `S ∪ r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SscohReduction {
    pub hypergraph: Hypergraph,
    pub terminals: BTreeSet<VertexId>,
    pub root: VertexId,
    /// Index of the added hyperedge `S ∪ r`.
    pub hub_edge: usize,
}

pub fn srcoh_to_sscoh(inst: &SrcohInstance) -> Result<SscohReduction> {
    let terminals = inst.rooted_terminals();
    if terminals.len() < 2 {
        return Err(Error::InvalidTerminals(
            "S ∪ {r} needs at least two vertices to form a hyperedge".into(),
        ));
    }
    let hypergraph = inst.h.with_edge(terminals.iter().copied().collect())?;
    Ok(SscohReduction {
        hub_edge: hypergraph.m() - 1,
        hypergraph,
        terminals,
        root: inst.r,
    })
}

/// Extends a rooted orientation by heading the added hyperedge at the root.
pub fn srcoh_orientation_to_sscoh(red: &SscohReduction, o: &Orientation) -> Orientation {
    let mut heads = o.heads.clone();
    heads.push(red.root);
    Orientation::new(heads)
}

/// Turns the added hyperedge toward the root along a circuit, then drops it.
pub fn sscoh_orientation_to_srcoh(red: &SscohReduction, o: &Orientation) -> Result<Orientation> {
    let normalized = reorient_to_head(&red.hypergraph, o, red.hub_edge, red.root)
        .map_err(|e| Error::InvalidWitness(format!("cannot head the added hyperedge at the root: {e}")))?;
    let mut heads = normalized.heads;
    heads.pop();
    Ok(Orientation::new(heads))
}

/// Vertices and edges of one literal's six-cycle gadget.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiteralGadget {
    pub literal: Literal,
    /// The two clauses containing the literal, in clause order.
    pub clauses: [usize; 2],
    pub v: VertexId,
    pub w: VertexId,
    pub v_clause: [VertexId; 2],
    pub w_clause: [VertexId; 2],
    /// Edges of `v, v^C1, w^C1, w, w^C2, v^C2` in cycle order; edge `k` joins cycle vertex `k` and `k + 1`.
    pub cycle_edges: [usize; 6],
    /// The edge `a v_ℓ`.
    pub root_edge: usize,
}

impl LiteralGadget {
    pub fn cycle(&self) -> [VertexId; 6] {
        [self.v, self.v_clause[0], self.w_clause[0], self.w, self.w_clause[1], self.v_clause[1]]
    }

    /// Which of the two occurrence slots belongs to `clause`.
    pub fn slot(&self, clause: usize) -> Option<usize> {
        self.clauses.iter().position(|&c| c == clause)
    }
}

/// Well-balanced orientation instance built from a (3,B2)-CNF formula.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WbohReductionMap {
    pub formula: CnfFormula,
    pub hypergraph: Hypergraph,
    pub root: VertexId,
    /// Indexed by `2 * var + (negated as usize)`.
    pub gadgets: Vec<LiteralGadget>,
    pub clause_vertex: Vec<VertexId>,
    /// Edges `v_ℓ^C z_C` for the three literals of each clause, in clause order.
    pub clause_spokes: Vec<[usize; 3]>,
    /// Hyperedge `{w_ℓ^C : ℓ ∈ C} ∪ {z_C}` per clause.
    pub clause_hyperedge: Vec<usize>,
    /// Hyperedge `{a, w_x, w_¬x}` per variable.
    pub variable_edge: Vec<usize>,
    /// The four copies of `Z ∪ {a}`.
    pub hub_edges: [usize; 4],
    pub names: NameMap,
}

impl WbohReductionMap {
    pub fn gadget(&self, l: Literal) -> &LiteralGadget {
        &self.gadgets[literal_index(l)]
    }
}

pub fn b2sat_to_wboh(f: &CnfFormula) -> Result<WbohReductionMap> {
    if !validate_3b2(f) {
        return Err(Error::InvalidFormula(
            "every literal must occur exactly twice".into(),
        ));
    }
    require_distinct_literals(f)?;
    let vars = f.var_count();
    let clause_count = f.clauses().len();
    let mut names = VertexNames::default();
    let mut map = NameMap::default();
    let mut add = |name: String, kind: &str, base: String| -> Result<VertexId> {
        map.push(&name, kind, base);
        names.push(name)
    };

    struct Slots {
        literal: Literal,
        clauses: [usize; 2],
        v: VertexId,
        w: VertexId,
        v_clause: [VertexId; 2],
        w_clause: [VertexId; 2],
    }
    let mut slots = Vec::with_capacity(2 * vars);
    for l in literals(vars) {
        let occ = f.occurrences(l);
        let clauses = [occ[0], occ[1]];
        let ln = l.name();
        let v = add(format!("v{ln}"), "v", ln.clone())?;
        let w = add(format!("w{ln}"), "w", ln.clone())?;
        let mut v_clause = [0; 2];
        let mut w_clause = [0; 2];
        for i in 0..2 {
            let cl = clause_label(clauses[i]);
            v_clause[i] = add(format!("v{ln}.{cl}"), "vc", format!("{ln}/{cl}"))?;
        }
        for i in 0..2 {
            let cl = clause_label(clauses[i]);
            w_clause[i] = add(format!("w{ln}.{cl}"), "wc", format!("{ln}/{cl}"))?;
        }
        slots.push(Slots { literal: l, clauses, v, w, v_clause, w_clause });
    }
    let clause_vertex: Vec<VertexId> = (0..clause_count)
        .map(|c| add(format!("z{}", clause_label(c)), "clause", clause_label(c)))
        .collect::<Result<_>>()?;
    let root = add("a".to_string(), "root", "-".to_string())?;

    let mut edges: Vec<Vec<VertexId>> = Vec::new();
    let mut push = |e: Vec<VertexId>| {
        edges.push(e);
        edges.len() - 1
    };

    let mut cycle_edges = Vec::with_capacity(slots.len());
    for s in &slots {
        let cycle = [s.v, s.v_clause[0], s.w_clause[0], s.w, s.w_clause[1], s.v_clause[1]];
        let ids: [usize; 6] = std::array::from_fn(|k| push(vec![cycle[k], cycle[(k + 1) % 6]]));
        cycle_edges.push(ids);
    }
    let slot_of = |l: Literal, c: usize| {
        let s = &slots[literal_index(l)];
        if s.clauses[0] == c {
            0
        } else {
            1
        }
    };
    let mut clause_spokes = Vec::with_capacity(clause_count);
    let mut clause_hyperedge = Vec::with_capacity(clause_count);
    for (c, clause) in f.clauses().iter().enumerate() {
        let spokes: [usize; 3] = std::array::from_fn(|i| {
            let l = clause[i];
            push(vec![slots[literal_index(l)].v_clause[slot_of(l, c)], clause_vertex[c]])
        });
        clause_spokes.push(spokes);
        let mut hyper: Vec<VertexId> = clause
            .iter()
            .map(|&l| slots[literal_index(l)].w_clause[slot_of(l, c)])
            .collect();
        hyper.push(clause_vertex[c]);
        clause_hyperedge.push(push(hyper));
    }
    let root_edges: Vec<usize> = slots.iter().map(|s| push(vec![root, s.v])).collect();
    let variable_edge: Vec<usize> = (0..vars)
        .map(|x| {
            push(vec![
                root,
                slots[literal_index(Literal::pos(x))].w,
                slots[literal_index(Literal::neg(x))].w,
            ])
        })
        .collect();
    let mut hub = clause_vertex.clone();
    hub.push(root);
    let hub_edges: [usize; 4] = std::array::from_fn(|_| push(hub.clone()));

    let gadgets = slots
        .into_iter()
        .zip(cycle_edges)
        .zip(root_edges)
        .map(|((s, cycle_edges), root_edge)| LiteralGadget {
            literal: s.literal,
            clauses: s.clauses,
            v: s.v,
            w: s.w,
            v_clause: s.v_clause,
            w_clause: s.w_clause,
            cycle_edges,
            root_edge,
        })
        .collect();

    Ok(WbohReductionMap {
        formula: f.clone(),
        hypergraph: Hypergraph::with_names(names, edges)?,
        root,
        gadgets,
        clause_vertex,
        clause_spokes,
        clause_hyperedge,
        variable_edge,
        hub_edges,
        names: map,
    })
}

/// The well-balanced orientation induced by a satisfying assignment.
///
/// Hub copies point at `a`; every edge between a clause vertex and a gadget
/// points at the clause vertex; `a v_ℓ` points at `v_ℓ`. Gadgets of true
/// literals point outward from `v_ℓ` and `w_ℓ` (with `v_ℓ^C → w_ℓ^C`), gadgets
/// of false literals form the circuit `v, v^C1, w^C1, w, w^C2, v^C2`. Each
/// variable hyperedge points at the vertex of its true literal.
pub fn assignment_to_orientation(map: &WbohReductionMap, phi: &Assignment) -> Result<Orientation> {
    require_satisfying(&map.formula, phi)?;
    let mut heads = vec![usize::MAX; map.hypergraph.m()];
    for &e in &map.hub_edges {
        heads[e] = map.root;
    }
    for (c, &z) in map.clause_vertex.iter().enumerate() {
        for &e in &map.clause_spokes[c] {
            heads[e] = z;
        }
        heads[map.clause_hyperedge[c]] = z;
    }
    for g in &map.gadgets {
        heads[g.root_edge] = g.v;
        let cycle = g.cycle();
        if g.literal.value(phi) {
            // cycle edges: v-v^C1, v^C1-w^C1, w^C1-w, w-w^C2, w^C2-v^C2, v^C2-v
            heads[g.cycle_edges[0]] = g.v_clause[0];
            heads[g.cycle_edges[1]] = g.w_clause[0];
            heads[g.cycle_edges[2]] = g.w_clause[0];
            heads[g.cycle_edges[3]] = g.w_clause[1];
            heads[g.cycle_edges[4]] = g.w_clause[1];
            heads[g.cycle_edges[5]] = g.v_clause[1];
        } else {
            for k in 0..6 {
                heads[g.cycle_edges[k]] = cycle[(k + 1) % 6];
            }
        }
    }
    for (x, &e) in map.variable_edge.iter().enumerate() {
        let lit = Literal { var: x, positive: phi.values[x] };
        heads[e] = map.gadget(lit).w;
    }
    debug_assert!(heads.iter().all(|&h| h != usize::MAX));
    let o = Orientation::new(heads);
    o.validate(&map.hypergraph)?;
    Ok(o)
}

/// Reads an assignment off a well-balanced orientation of the gadget.
///
/// First heads every hub copy at `a`, each time re-routing along a circuit
/// that avoids the other copies, which leaves all connectivities unchanged.
/// Then `x` is true iff its variable hyperedge points at `w_x`.
pub fn orientation_to_assignment(map: &WbohReductionMap, o: &Orientation) -> Result<Assignment> {
    let report = is_well_balanced(&map.hypergraph, o)?;
    if !report.verdict {
        return Err(Error::InvalidWitness("orientation is not well-balanced".into()));
    }
    let normalized = normalize_hub_edges(map, o)?;
    let values = map
        .variable_edge
        .iter()
        .enumerate()
        .map(|(x, &e)| normalized.head(e) == map.gadget(Literal::pos(x)).w)
        .collect();
    Ok(Assignment::new(values))
}

/// Heads all four hub copies at `a` without changing any local connectivity.
pub fn normalize_hub_edges(map: &WbohReductionMap, o: &Orientation) -> Result<Orientation> {
    let mut current = o.clone();
    for (i, &e) in map.hub_edges.iter().enumerate() {
        if current.head(e) == map.root {
            continue;
        }
        let others: BTreeSet<usize> = map
            .hub_edges
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, &f)| f)
            .collect();
        current = reorient_to_head_avoiding(&map.hypergraph, &current, e, map.root, &others)
            .map_err(|err| Error::InvalidWitness(format!("cannot head hub copy {e} at a: {err}")))?;
    }
    Ok(current)
}
