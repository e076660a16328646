//! Exact internally vertex-disjoint paths by backtracking.
//!
//! Two paths are internally vertex-disjoint when every vertex has total degree
//! at most 2 across them: they may share endpoints, but an interior vertex of
//! one path cannot appear anywhere on another. In particular no interior
//! vertex may be an endpoint of any requested pair.

use std::collections::VecDeque;

use crate::hypercore::Graph;

#[derive(Debug, Clone)]
pub struct PathQuery<'a> {
    pub graph: &'a Graph,
    pub pairs: Vec<(usize, usize)>,
}

/// A `u_i v_i`-path for every pair, pairwise internally vertex-disjoint, or
/// `None` when no such family exists. Paths are returned as vertex sequences.
pub fn disjoint_paths(q: &PathQuery<'_>) -> Option<Vec<Vec<usize>>> {
    let adjacency = q.graph.adjacency();
    disjoint_paths_in(&adjacency, &q.pairs)
}

/// [`disjoint_paths`] over a prebuilt adjacency list.
pub fn disjoint_paths_in(adjacency: &[Vec<usize>], pairs: &[(usize, usize)]) -> Option<Vec<Vec<usize>>> {
    if pairs.iter().any(|&(u, v)| u == v) {
        return None;
    }
    let mut blocked = vec![false; adjacency.len()];
    for &(u, v) in pairs {
        blocked[u] = true;
        blocked[v] = true;
    }
    let mut router = Router {
        adjacency,
        pairs,
        blocked,
        paths: Vec::with_capacity(pairs.len()),
    };
    router.route(0).then_some(router.paths)
}

struct Router<'a> {
    adjacency: &'a [Vec<usize>],
    pairs: &'a [(usize, usize)],
    /// Endpoints and interior vertices already claimed by a path.
    blocked: Vec<bool>,
    paths: Vec<Vec<usize>>,
}

impl Router<'_> {
    fn route(&mut self, i: usize) -> bool {
        if i == self.pairs.len() {
            return true;
        }
        if !self.pairs[i..].iter().all(|&(u, v)| self.connected(u, v)) {
            return false;
        }
        let (u, v) = self.pairs[i];
        let mut path = vec![u];
        self.extend(i, &mut path, v)
    }

    /// Depth-first over simple paths from the end of `path` to `target`.
    fn extend(&mut self, i: usize, path: &mut Vec<usize>, target: usize) -> bool {
        let last = *path.last().expect("path starts at its source");
        let adjacency = self.adjacency;
        for &w in &adjacency[last] {
            if w == target {
                path.push(w);
                self.paths.push(path.clone());
                if self.route(i + 1) {
                    return true;
                }
                self.paths.pop();
                path.pop();
            } else if !self.blocked[w] {
                self.blocked[w] = true;
                path.push(w);
                if self.extend(i, path, target) {
                    return true;
                }
                path.pop();
                self.blocked[w] = false;
            }
        }
        false
    }

    /// Whether `v` is reachable from `u` through unblocked interior vertices.
    fn connected(&self, u: usize, v: usize) -> bool {
        let mut seen = vec![false; self.adjacency.len()];
        seen[u] = true;
        let mut queue = VecDeque::from([u]);
        while let Some(a) = queue.pop_front() {
            for &b in &self.adjacency[a] {
                if b == v {
                    return true;
                }
                if !seen[b] && !self.blocked[b] {
                    seen[b] = true;
                    queue.push_back(b);
                }
            }
        }
        false
    }
}

/// Degree of `v` in a path given as a vertex sequence.
pub fn path_degree(path: &[usize], v: usize) -> usize {
    let Some(pos) = path.iter().position(|&w| w == v) else {
        return 0;
    };
    usize::from(pos > 0) + usize::from(pos + 1 < path.len())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(n: usize, edges: &[(usize, usize)]) -> Graph {
        Graph::new(n, edges.to_vec()).unwrap()
    }

    fn query(g: &Graph, pairs: &[(usize, usize)]) -> Option<Vec<Vec<usize>>> {
        disjoint_paths(&PathQuery {
            graph: g,
            pairs: pairs.to_vec(),
        })
    }

    #[test]
    fn triangle_edges() {
        let g = graph(3, &[(0, 1), (1, 2), (2, 0)]);
        let paths = query(&g, &[(0, 1), (0, 2)]).unwrap();
        assert_eq!(paths, vec![vec![0, 1], vec![0, 2]]);
    }

    #[test]
    fn path_graph_blocks_second_pair() {
        // Every a-c path in a-b-c uses b internally; b is an endpoint of the a-b pair.
        let g = graph(3, &[(0, 1), (1, 2)]);
        assert_eq!(query(&g, &[(0, 2), (0, 1)]), None);
        assert_eq!(query(&g, &[(0, 1), (0, 2)]), None);
    }

    #[test]
    fn empty_request() {
        let g = graph(2, &[(0, 1)]);
        assert_eq!(query(&g, &[]), Some(vec![]));
    }

    #[test]
    fn backtracks_across_pairs() {
        // 0 - 2 - 1 and 0 - 3 - 1 and 4 - 2 - 5; routing (0,1) via 2 first blocks (4,5).
        let g = graph(6, &[(0, 2), (2, 1), (0, 3), (3, 1), (4, 2), (2, 5)]);
        let paths = query(&g, &[(0, 1), (4, 5)]).unwrap();
        assert_eq!(paths[0], vec![0, 3, 1]);
        assert_eq!(paths[1], vec![4, 2, 5]);
    }

    #[test]
    fn degenerate_pair_has_no_path() {
        let g = graph(2, &[(0, 1)]);
        assert_eq!(query(&g, &[(1, 1)]), None);
    }

    #[test]
    fn degree_in_path() {
        assert_eq!(path_degree(&[3, 4, 5], 3), 1);
        assert_eq!(path_degree(&[3, 4, 5], 4), 2);
        assert_eq!(path_degree(&[3, 4, 5], 7), 0);
    }
}
