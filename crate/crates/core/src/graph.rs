//! Immutable simple graphs on `0..n` with bit-packed adjacency rows.
//!
//! Vertices are 0-based. A vertex written `i` in `[n] = {1, ..., n}` notation
//! corresponds to `i - 1` here.

use std::fmt;

use crate::bits::{self, VertexSet};
use crate::error::{Error, Result};

/// Largest supported vertex count.
pub const MAX_VERTICES: usize = 512;

/// Edges as `(i, j)` pairs with `i < j`.
pub type EdgeList = Vec<(usize, usize)>;

/// A simple undirected graph. Rows are symmetric and loop-free on every
/// construction path.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    words: usize,
    rows: Vec<u64>,
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices {
                n,
                max: MAX_VERTICES,
            });
        }
        let words = bits::words_for(n);
        Ok(Graph {
            n,
            words,
            rows: vec![0; n * words],
        })
    }

    /// Builds a graph from an edge list. Loops, out-of-range endpoints and
    /// repeated edges (in either orientation) are rejected.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut b = GraphBuilder::new(n)?;
        for &(i, j) in edges {
            b.add_edge(i, j)?;
        }
        Ok(b.build())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub(crate) fn words(&self) -> usize {
        self.words
    }

    /// Adjacency row of `i` as raw words.
    #[inline]
    pub(crate) fn row(&self, i: usize) -> &[u64] {
        &self.rows[i * self.words..(i + 1) * self.words]
    }

    #[inline]
    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        i < self.n && j < self.n && bits::test_bit(self.row(i), j)
    }

    pub fn degree(&self, i: usize) -> usize {
        bits::popcount(self.row(i))
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|i| self.degree(i)).collect()
    }

    pub fn neighbors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        bits::ones(self.row(i))
    }

    pub fn neighborhood(&self, i: usize) -> VertexSet {
        VertexSet::from_words(self.n, self.row(i))
    }

    /// `|N(i) ∩ N(j)|`
    pub fn common_neighbors(&self, i: usize, j: usize) -> usize {
        bits::and_popcount(self.row(i), self.row(j))
    }

    pub fn edge_count(&self) -> usize {
        bits::popcount(&self.rows) / 2
    }

    /// All edges `(i, j)`, `i < j`, in lexicographic order.
    pub fn edges(&self) -> EdgeList {
        let mut out = Vec::with_capacity(self.edge_count());
        for i in 0..self.n {
            for j in bits::ones(self.row(i)) {
                if j > i {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// The graph with edge `ij` iff `i != j` and `ij` is not an edge here.
    pub fn complement(&self) -> Graph {
        let mut g = Graph::empty(self.n).expect("same size");
        for i in 0..self.n {
            let src = self.row(i);
            let dst = &mut g.rows[i * self.words..(i + 1) * self.words];
            for (d, s) in dst.iter_mut().zip(src) {
                *d = !s;
            }
            // mask tail bits and the diagonal
            let tail = self.n % 64;
            if tail != 0 {
                dst[self.words - 1] &= (1u64 << tail) - 1;
            }
            bits::clear_bit(dst, i);
        }
        g.debug_check();
        g
    }

    /// Image of this graph under `map`: edge `ij` becomes `map[i] map[j]`.
    /// `map` must be a permutation of `0..n`.
    pub(crate) fn relabeled(&self, map: &[usize]) -> Graph {
        debug_assert_eq!(map.len(), self.n);
        let mut g = Graph::empty(self.n).expect("same size");
        for i in 0..self.n {
            let mi = map[i];
            let base = mi * self.words;
            for j in bits::ones(self.row(i)) {
                bits::set_bit(&mut g.rows[base..base + self.words], map[j]);
            }
        }
        g.debug_check();
        g
    }

    /// Copy with edge `ij` removed (no-op if absent).
    pub fn without_edge(&self, i: usize, j: usize) -> Graph {
        let mut g = self.clone();
        if g.has_edge(i, j) {
            let w = g.words;
            bits::clear_bit(&mut g.rows[i * w..(i + 1) * w], j);
            bits::clear_bit(&mut g.rows[j * w..(j + 1) * w], i);
        }
        g
    }

    /// Disjoint union, vertices of `other` shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph> {
        let n = self.n + other.n;
        let mut b = GraphBuilder::new(n)?;
        for (i, j) in self.edges() {
            b.add_edge(i, j)?;
        }
        for (i, j) in other.edges() {
            b.add_edge(i + self.n, j + self.n)?;
        }
        Ok(b.build())
    }

    /// Returns true iff the symmetry and no-loop invariants hold and no bit
    /// is set beyond column `n - 1`.
    pub fn is_well_formed(&self) -> bool {
        for i in 0..self.n {
            if bits::test_bit(self.row(i), i) {
                return false;
            }
            for j in bits::ones(self.row(i)) {
                if j >= self.n || !bits::test_bit(self.row(j), i) {
                    return false;
                }
            }
        }
        true
    }

    #[inline]
    fn debug_check(&self) {
        debug_assert!(self.is_well_formed(), "graph invariants violated");
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

/// Mutable edge-by-edge construction; [`GraphBuilder::build`] freezes it.
#[derive(Clone, Debug)]
pub struct GraphBuilder {
    g: Graph,
}

impl GraphBuilder {
    pub fn new(n: usize) -> Result<Self> {
        Ok(GraphBuilder { g: Graph::empty(n)? })
    }

    pub fn n(&self) -> usize {
        self.g.n
    }

    pub fn add_edge(&mut self, i: usize, j: usize) -> Result<()> {
        let n = self.g.n;
        if i >= n || j >= n {
            return Err(Error::VertexOutOfRange(i, j, n));
        }
        if i == j {
            return Err(Error::LoopEdge(i));
        }
        if self.g.has_edge(i, j) {
            return Err(Error::DuplicateEdge(i.min(j), i.max(j)));
        }
        let w = self.g.words;
        bits::set_bit(&mut self.g.rows[i * w..(i + 1) * w], j);
        bits::set_bit(&mut self.g.rows[j * w..(j + 1) * w], i);
        Ok(())
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.g.has_edge(i, j)
    }

    pub fn degree(&self, i: usize) -> usize {
        self.g.degree(i)
    }

    pub fn common_neighbors(&self, i: usize, j: usize) -> usize {
        self.g.common_neighbors(i, j)
    }

    pub fn neighbors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.g.neighbors(i)
    }

    pub fn build(self) -> Graph {
        self.g.debug_check();
        self.g
    }
}
