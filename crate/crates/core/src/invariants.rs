//! Degree and codegree statistics.
//!
//! `max_codegree(g) < t` iff `g` has no `K_{2,t}`, and
//! `max_adjacent_codegree(g) < s` iff `g` has no `K_{1,1,s}`. The predicates
//! below are defined through those equivalences.

use serde::{Deserialize, Serialize};

use crate::graph::Graph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DegreeStats {
    pub max_degree: usize,
    pub max_codegree: usize,
    pub max_adjacent_codegree: usize,
}

impl DegreeStats {
    pub fn of(g: &Graph) -> Self {
        let mut codeg = 0;
        let mut adj = 0;
        for i in 0..g.n() {
            for j in i + 1..g.n() {
                let c = g.common_neighbors(i, j);
                codeg = codeg.max(c);
                if g.has_edge(i, j) {
                    adj = adj.max(c);
                }
            }
        }
        DegreeStats {
            max_degree: max_degree(g),
            max_codegree: codeg,
            max_adjacent_codegree: adj,
        }
    }
}

pub fn max_degree(g: &Graph) -> usize {
    (0..g.n()).map(|i| g.degree(i)).max().unwrap_or(0)
}

/// Largest `|N(i) ∩ N(j)|` over unordered pairs; 0 when `n < 2`.
pub fn max_codegree(g: &Graph) -> usize {
    let n = g.n();
    (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .map(|(i, j)| g.common_neighbors(i, j))
        .max()
        .unwrap_or(0)
}

/// Largest `|N(i) ∩ N(j)|` over edges `ij`; 0 for edgeless graphs.
pub fn max_adjacent_codegree(g: &Graph) -> usize {
    g.edges()
        .into_iter()
        .map(|(i, j)| g.common_neighbors(i, j))
        .max()
        .unwrap_or(0)
}

pub fn contains_k2t(g: &Graph, t: usize) -> bool {
    max_codegree(g) >= t
}

pub fn contains_k11s(g: &Graph, s: usize) -> bool {
    max_adjacent_codegree(g) >= s
}

pub fn is_triangle_free(g: &Graph) -> bool {
    max_adjacent_codegree(g) == 0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{complete_bipartite, complete_tripartite, cycle};

    fn k(n: usize) -> Graph {
        Graph::empty(n).unwrap().complement()
    }

    #[test]
    fn max_degree_examples() {
        assert_eq!(max_degree(&cycle(5).unwrap()), 2);
        assert_eq!(max_degree(&complete_bipartite(2, 3).unwrap()), 3);
        assert_eq!(max_degree(&Graph::empty(4).unwrap()), 0);
        assert_eq!(max_degree(&Graph::empty(0).unwrap()), 0);
    }

    #[test]
    fn codegree_examples() {
        assert_eq!(max_codegree(&complete_bipartite(2, 3).unwrap()), 3);
        assert_eq!(max_codegree(&cycle(5).unwrap()), 1);
        for n in 2..8 {
            assert_eq!(max_codegree(&k(n)), n - 2);
        }
        assert_eq!(max_codegree(&Graph::empty(1).unwrap()), 0);
    }

    #[test]
    fn adjacent_codegree_examples() {
        assert_eq!(max_adjacent_codegree(&cycle(5).unwrap()), 0);
        assert_eq!(max_adjacent_codegree(&complete_bipartite(2, 3).unwrap()), 0);
        assert_eq!(max_adjacent_codegree(&k(4)), 2);
        assert_eq!(max_adjacent_codegree(&complete_tripartite(1, 1, 3).unwrap()), 3);
    }

    #[test]
    fn predicates() {
        let k23 = complete_bipartite(2, 3).unwrap();
        assert!(contains_k2t(&k23, 3));
        assert!(!contains_k2t(&k23, 4));
        assert!(!contains_k2t(&cycle(5).unwrap(), 2));
        assert!(contains_k11s(&k(4), 2));
        assert!(!contains_k11s(&cycle(5).unwrap(), 1));
        assert!(is_triangle_free(&k23));
    }

    #[test]
    fn stats_bundle() {
        let s = DegreeStats::of(&complete_tripartite(1, 1, 3).unwrap());
        assert_eq!(
            s,
            DegreeStats {
                max_degree: 4,
                max_codegree: 3,
                max_adjacent_codegree: 3
            }
        );
    }
}
