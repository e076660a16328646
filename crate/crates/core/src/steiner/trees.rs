//! Labelled tree generation by Prüfer decoding.

use std::collections::BTreeSet;

use crate::hypercore::{LabelledTree, VertexId};

/// Label of a small Steiner tree node: a terminal, or an abstract branch slot.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TreeLabel {
    Terminal(VertexId),
    Branch(usize),
}

pub type SmallSteinerTree = LabelledTree<TreeLabel>;

/// All sequences in `0..base` of length `len`, in lexicographic order.
#[derive(Debug, Clone)]
pub struct PruferSequences {
    base: usize,
    next: Option<Vec<usize>>,
}

impl PruferSequences {
    pub fn new(base: usize, len: usize) -> Self {
        let next = (base > 0 || len == 0).then(|| vec![0; len]);
        PruferSequences { base, next }
    }
}

impl Iterator for PruferSequences {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        let mut i = succ.len();
        while i > 0 {
            i -= 1;
            succ[i] += 1;
            if succ[i] < self.base {
                self.next = Some(succ);
                break;
            }
            succ[i] = 0;
        }
        Some(current)
    }
}

/// Decodes a Prüfer sequence over indices into `labels` (length `labels.len() - 2`).
pub fn prufer_decode<L: Ord + Copy>(labels: &[L], seq: &[usize]) -> LabelledTree<L> {
    let n = labels.len();
    assert!(n >= 1 && seq.len() + 2 == n.max(2), "sequence length must be n - 2");
    let ground: BTreeSet<L> = labels.iter().copied().collect();
    if n == 1 {
        return LabelledTree::new(ground, []).expect("single vertex");
    }
    let mut degree = vec![1usize; n];
    for &x in seq {
        degree[x] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &x in seq {
        let leaf = (0..n).find(|&i| degree[i] == 1).expect("a leaf always exists");
        edges.push((labels[leaf], labels[x]));
        degree[leaf] = 0;
        degree[x] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&i| degree[i] == 1).collect();
    edges.push((labels[rest[0]], labels[rest[1]]));
    LabelledTree::new(ground, edges).expect("Prüfer decoding yields a tree")
}

/// Every labelled tree on exactly the given labels (`j^(j-2)` of them).
pub fn labelled_trees<L: Ord + Copy>(labels: Vec<L>) -> impl Iterator<Item = LabelledTree<L>> {
    let len = labels.len().saturating_sub(2);
    let seqs = if labels.is_empty() {
        PruferSequences { base: 0, next: None }
    } else {
        PruferSequences::new(labels.len(), len)
    };
    seqs.map(move |seq| prufer_decode(&labels, &seq))
}

/// Subsets of `0..pool`, ordered by size and then lexicographically.
fn branch_subsets(pool: usize) -> Vec<Vec<usize>> {
    let mut subsets: Vec<Vec<usize>> = (0u32..(1 << pool))
        .map(|mask| (0..pool).filter(|&i| mask >> i & 1 == 1).collect())
        .collect();
    subsets.sort_by(|a: &Vec<usize>, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    subsets
}

/// Small Steiner trees for the terminal set `s` (`k = |s| >= 2`).
///
/// Yields every labelled tree containing all terminals, drawing extra labels
/// from a pool of `k - 2` branch labels, in which each branch label has degree
/// at least 3. Each tree is produced once. For `k < 2` nothing is produced.
pub fn enumerate_small_trees(s: &BTreeSet<VertexId>) -> impl Iterator<Item = SmallSteinerTree> {
    let k = s.len();
    let terminals: Vec<TreeLabel> = s.iter().map(|&v| TreeLabel::Terminal(v)).collect();
    let subsets = if k >= 2 { branch_subsets(k - 2) } else { Vec::new() };
    subsets.into_iter().flat_map(move |subset| {
        let mut ground = terminals.clone();
        ground.extend(subset.iter().map(|&b| TreeLabel::Branch(b)));
        let j = ground.len();
        PruferSequences::new(j, j - 2)
            .filter(move |seq| (k..j).all(|b| seq.iter().filter(|&&x| x == b).count() >= 2))
            .map(move |seq| prufer_decode(&ground, &seq))
    })
}

/// Branch labels used by a small tree, in increasing order.
pub fn branch_labels(t: &SmallSteinerTree) -> Vec<usize> {
    t.labels()
        .iter()
        .filter_map(|l| match *l {
            TreeLabel::Branch(b) => Some(b),
            TreeLabel::Terminal(_) => None,
        })
        .collect()
}
