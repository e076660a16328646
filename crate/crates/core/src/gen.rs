//! Seeded instance generators for the oracle suites and the CLI self-test.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::hypercore::{Hypergraph, Orientation, VertexId};
use crate::satkit::{CnfFormula, Literal};

/// Shape of a random hypergraph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HypergraphShape {
    pub max_vertices: usize,
    pub max_edges: usize,
    pub min_edge_size: usize,
    pub max_edge_size: usize,
}

impl HypergraphShape {
    pub const fn new(max_vertices: usize, max_edges: usize, min_edge_size: usize, max_edge_size: usize) -> Self {
        Self { max_vertices, max_edges, min_edge_size, max_edge_size }
    }
}

/// A hypergraph with `2..=max_vertices` vertices and `1..=max_edges` hyperedges.
pub fn random_hypergraph<R: Rng + ?Sized>(rng: &mut R, shape: HypergraphShape) -> Hypergraph {
    let lo = shape.min_edge_size.max(2);
    let n = rng.gen_range(lo.max(2)..=shape.max_vertices.max(lo));
    let m = rng.gen_range(1..=shape.max_edges.max(1));
    let pool: Vec<VertexId> = (0..n).collect();
    let edges = (0..m)
        .map(|_| {
            let size = rng.gen_range(lo..=shape.max_edge_size.max(lo).min(n));
            pool.choose_multiple(rng, size).copied().collect()
        })
        .collect();
    Hypergraph::new(n, edges).expect("sampled hyperedges are valid")
}

pub fn random_orientation<R: Rng + ?Sized>(rng: &mut R, h: &Hypergraph) -> Orientation {
    Orientation::new(
        h.edges()
            .iter()
            .map(|e| *e.choose(rng).expect("hyperedges are nonempty"))
            .collect(),
    )
}

/// A uniformly chosen subset of `k` vertices.
pub fn random_subset<R: Rng + ?Sized>(rng: &mut R, n: usize, k: usize) -> BTreeSet<VertexId> {
    let pool: Vec<VertexId> = (0..n).collect();
    pool.choose_multiple(rng, k.min(n)).copied().collect()
}

/// A random (3,B2) formula: every literal occurs exactly twice and every clause
/// uses three distinct variables. `vars` must be a positive multiple of 3.
pub fn random_b2_formula<R: Rng + ?Sized>(rng: &mut R, vars: usize) -> CnfFormula {
    assert!(vars > 0 && vars.is_multiple_of(3), "4·vars literal slots must split into triples");
    let mut slots: Vec<Literal> = (0..vars)
        .flat_map(|x| [Literal::pos(x), Literal::pos(x), Literal::neg(x), Literal::neg(x)])
        .collect();
    loop {
        slots.shuffle(rng);
        let clauses: Vec<Vec<Literal>> = slots.chunks(3).map(<[Literal]>::to_vec).collect();
        let distinct = clauses
            .iter()
            .all(|c| c[0].var != c[1].var && c[0].var != c[2].var && c[1].var != c[2].var);
        if distinct {
            return CnfFormula::new(vars, clauses).expect("slots reference valid variables");
        }
    }
}

/// The eight clauses over `x1, x2, x3` that use each variable once, in
/// polarity-mask order (bit `i` set means `x{i+1}` appears positively).
pub fn full_polarity_clauses() -> Vec<[i64; 3]> {
    (0..8u32)
        .map(|mask| {
            std::array::from_fn(|i| {
                let v = i as i64 + 1;
                if mask >> i & 1 == 1 {
                    v
                } else {
                    -v
                }
            })
        })
        .collect()
}

/// Every formula over three variables made of at most `max_clauses` distinct
/// clauses from [`full_polarity_clauses`], in increasing subset-mask order.
pub fn small_formulas(max_clauses: usize) -> impl Iterator<Item = CnfFormula> {
    let pool = full_polarity_clauses();
    (0u32..1 << pool.len())
        .filter(move |mask| mask.count_ones() as usize <= max_clauses)
        .map(move |mask| {
            let chosen: Vec<[i64; 3]> = (0..pool.len())
                .filter(|&i| mask >> i & 1 == 1)
                .map(|i| pool[i])
                .collect();
            CnfFormula::from_dimacs_clauses(3, &chosen).expect("polarity clauses are valid")
        })
}

/// The unsatisfiable formula containing all eight polarity clauses.
pub fn all_polarity_formula() -> CnfFormula {
    CnfFormula::from_dimacs_clauses(3, &full_polarity_clauses()).expect("polarity clauses are valid")
}
