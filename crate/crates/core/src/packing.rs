//! Labelings, purple edges, and the exact packing search.
//!
//! The blue graph `G1` keeps its labels; a [`Labeling`] moves the red graph
//! `G2` over the fixed ground set. A pair packs iff some labeling induces no
//! purple edge, i.e. iff `G1` embeds in the complement of `G2`.

use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::bits;
use crate::error::{Error, Result};
use crate::graph::{EdgeList, Graph};

/// `perm[i]` is the label given to red vertex `i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Labeling(Vec<usize>);

impl Labeling {
    pub fn identity(n: usize) -> Self {
        Labeling((0..n).collect())
    }

    pub fn new(perm: Vec<usize>) -> Result<Self> {
        let n = perm.len();
        let mut seen = vec![false; n];
        for &p in &perm {
            if p >= n || seen[p] {
                return Err(Error::NotAPermutation(n));
            }
            seen[p] = true;
        }
        Ok(Labeling(perm))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn label_of(&self, red_vertex: usize) -> usize {
        self.0[red_vertex]
    }

    /// `inv[label]` is the red vertex carrying `label`.
    pub fn inverse(&self) -> Vec<usize> {
        let mut inv = vec![0; self.0.len()];
        for (i, &p) in self.0.iter().enumerate() {
            inv[p] = i;
        }
        inv
    }

    pub(crate) fn as_mut_slice(&mut self) -> &mut [usize] {
        &mut self.0
    }
}

impl TryFrom<Vec<usize>> for Labeling {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        Labeling::new(v)
    }
}

impl From<Labeling> for Vec<usize> {
    fn from(l: Labeling) -> Self {
        l.0
    }
}

fn check_sizes(g1: &Graph, g2: &Graph) -> Result<()> {
    if g1.n() != g2.n() {
        return Err(Error::SizeMismatch(g1.n(), g2.n()));
    }
    Ok(())
}

fn check_labeling(g1: &Graph, g2: &Graph, lab: &Labeling) -> Result<()> {
    check_sizes(g1, g2)?;
    if lab.len() != g1.n() {
        return Err(Error::SizeMismatch(g1.n(), lab.len()));
    }
    Ok(())
}

/// Pairs `xy` (in label space) that are edges of both `G1` and the image of
/// `G2`, ascending.
pub fn purple_edges(g1: &Graph, g2: &Graph, lab: &Labeling) -> Result<EdgeList> {
    check_labeling(g1, g2, lab)?;
    Ok(purple_in_label_space(g1, &g2.relabeled(lab.as_slice())))
}

pub(crate) fn purple_in_label_space(blue: &Graph, red: &Graph) -> EdgeList {
    let mut out = Vec::new();
    let mut scratch = vec![0u64; blue.words()];
    for x in 0..blue.n() {
        for (s, (a, b)) in scratch.iter_mut().zip(blue.row(x).iter().zip(red.row(x))) {
            *s = a & b;
        }
        out.extend(bits::ones(&scratch).filter(|&y| y > x).map(|y| (x, y)));
    }
    out
}

pub fn verify_witness(g1: &Graph, g2: &Graph, lab: &Labeling) -> Result<bool> {
    Ok(purple_edges(g1, g2, lab)?.is_empty())
}

/// A labeled pair together with its purple edges.
///
/// `red` caches the image of `G2` under `lab`, so every neighborhood query
/// below is in label space.
#[derive(Clone, Debug)]
pub struct NearPacking<'a> {
    g1: &'a Graph,
    g2: &'a Graph,
    lab: Labeling,
    red: Graph,
    purple: EdgeList,
}

impl<'a> NearPacking<'a> {
    pub fn new(g1: &'a Graph, g2: &'a Graph, lab: Labeling) -> Result<Self> {
        check_labeling(g1, g2, &lab)?;
        let red = g2.relabeled(lab.as_slice());
        let purple = purple_in_label_space(g1, &red);
        Ok(NearPacking {
            g1,
            g2,
            lab,
            red,
            purple,
        })
    }

    pub fn n(&self) -> usize {
        self.g1.n()
    }

    pub fn blue(&self) -> &Graph {
        self.g1
    }

    /// The red graph as currently placed on the labels.
    pub fn red(&self) -> &Graph {
        &self.red
    }

    pub fn red_source(&self) -> &Graph {
        self.g2
    }

    pub fn labeling(&self) -> &Labeling {
        &self.lab
    }

    pub fn purple(&self) -> &[(usize, usize)] {
        &self.purple
    }

    pub fn is_packing(&self) -> bool {
        self.purple.is_empty()
    }

    /// Replaces the labeling via `f`, then recomputes the red image and the
    /// purple cache.
    pub(crate) fn relabel_with(&mut self, f: impl FnOnce(&mut [usize])) {
        f(self.lab.as_mut_slice());
        debug_assert!(Labeling::new(self.lab.0.clone()).is_ok());
        self.red = self.g2.relabeled(self.lab.as_slice());
        self.purple = purple_in_label_space(self.g1, &self.red);
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub nodes: u64,
    pub elapsed: Duration,
}

#[derive(Clone, Debug)]
pub struct PackingResult {
    pub packs: bool,
    pub witness: Option<Labeling>,
    pub stats: SearchStats,
}

/// Decides whether `g1` and `g2` pack by embedding `g1` into the complement
/// of `g2`.
///
/// Blue vertices are placed one at a time, most constrained first. Each blue
/// vertex keeps a bit domain of red vertices it may still occupy; placing
/// `v` on red `x` removes `x` everywhere and restricts the domains of the blue
/// neighbors of `v` to red non-neighbors of `x`. Blue vertices of degree 0 are
/// filled in at the end.
///
/// Returns `packs = false` only after the whole space is exhausted. Running
/// past `node_budget` placements gives [`Error::BudgetExhausted`].
pub fn packs_exact(g1: &Graph, g2: &Graph, node_budget: u64) -> Result<PackingResult> {
    check_sizes(g1, g2)?;
    if node_budget == 0 {
        return Err(Error::Domain("node budget must be positive".into()));
    }
    let start = Instant::now();
    if g1.edge_count() == 0 || g2.edge_count() == 0 {
        return Ok(PackingResult {
            packs: true,
            witness: Some(Labeling::identity(g1.n())),
            stats: SearchStats {
                nodes: 0,
                elapsed: start.elapsed(),
            },
        });
    }
    let mut search = Embedder::new(g1, g2, node_budget);
    let found = search.run();
    let stats = SearchStats {
        nodes: search.nodes,
        elapsed: start.elapsed(),
    };
    match found {
        Err(()) => Err(Error::BudgetExhausted {
            nodes: search.nodes,
        }),
        Ok(false) => Ok(PackingResult {
            packs: false,
            witness: None,
            stats,
        }),
        Ok(true) => {
            let lab = search.witness();
            assert!(
                verify_witness(g1, g2, &lab)?,
                "exact search produced a labeling with purple edges"
            );
            Ok(PackingResult {
                packs: true,
                witness: Some(lab),
                stats,
            })
        }
    }
}

struct Embedder<'a> {
    g1: &'a Graph,
    g2: &'a Graph,
    n: usize,
    w: usize,
    /// Blue vertices with at least one blue neighbor.
    active: Vec<usize>,
    /// Red vertices ordered by red degree, then index.
    red_order: Vec<usize>,
    red_rank: Vec<usize>,
    placed: Vec<Option<usize>>,
    nodes: u64,
    budget: u64,
}

impl<'a> Embedder<'a> {
    fn new(g1: &'a Graph, g2: &'a Graph, budget: u64) -> Self {
        let n = g1.n();
        let active = (0..n).filter(|&v| g1.degree(v) > 0).collect();
        let mut red_order: Vec<usize> = (0..n).collect();
        red_order.sort_by_key(|&x| (g2.degree(x), x));
        let mut red_rank = vec![0; n];
        for (r, &x) in red_order.iter().enumerate() {
            red_rank[x] = r;
        }
        Embedder {
            g1,
            g2,
            n,
            w: g1.words(),
            active,
            red_order,
            red_rank,
            placed: vec![None; n],
            nodes: 0,
            budget,
        }
    }

    fn run(&mut self) -> std::result::Result<bool, ()> {
        let (n, w) = (self.n, self.w);
        // A red vertex x can host blue v only if x has enough red
        // non-neighbors for all blue neighbors of v.
        let mut domains = vec![0u64; n * w];
        for &v in &self.active {
            let d1 = self.g1.degree(v);
            let dom = &mut domains[v * w..(v + 1) * w];
            for x in 0..n {
                if n - 1 - self.g2.degree(x) >= d1 {
                    bits::set_bit(dom, x);
                }
            }
            if dom.iter().all(|&b| b == 0) {
                return Ok(false);
            }
        }
        let depth = self.active.len();
        self.search(&domains, depth)
    }

    fn search(&mut self, domains: &[u64], remaining: usize) -> std::result::Result<bool, ()> {
        if remaining == 0 {
            return Ok(true);
        }
        let w = self.w;
        let v = self
            .active
            .iter()
            .copied()
            .filter(|&v| self.placed[v].is_none())
            .min_by_key(|&v| {
                (
                    bits::popcount(&domains[v * w..(v + 1) * w]),
                    usize::MAX - self.g1.degree(v),
                    v,
                )
            })
            .expect("remaining > 0");
        let mut cands: Vec<usize> = bits::ones(&domains[v * w..(v + 1) * w]).collect();
        cands.sort_by_key(|&x| self.red_rank[x]);

        let mut next = domains.to_vec();
        for x in cands {
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(());
            }
            next.copy_from_slice(domains);
            if !self.propagate(&mut next, v, x) {
                continue;
            }
            self.placed[v] = Some(x);
            if self.search(&next, remaining - 1)? {
                return Ok(true);
            }
            self.placed[v] = None;
        }
        Ok(false)
    }

    /// Applies `v -> x` to `dom`; false if some unplaced blue vertex is left
    /// without candidates.
    fn propagate(&self, dom: &mut [u64], v: usize, x: usize) -> bool {
        let w = self.w;
        let red_row = self.g2.row(x);
        let mut union = vec![0u64; w];
        let mut unplaced = 0usize;
        for &j in &self.active {
            if j == v || self.placed[j].is_some() {
                continue;
            }
            let d = &mut dom[j * w..(j + 1) * w];
            bits::clear_bit(d, x);
            if self.g1.has_edge(v, j) {
                for (a, r) in d.iter_mut().zip(red_row) {
                    *a &= !r;
                }
            }
            if d.iter().all(|&b| b == 0) {
                return false;
            }
            for (u, a) in union.iter_mut().zip(d.iter()) {
                *u |= a;
            }
            unplaced += 1;
        }
        // pigeonhole over the remaining blue vertices
        bits::popcount(&union) >= unplaced
    }

    fn witness(&self) -> Labeling {
        let mut perm = vec![usize::MAX; self.n];
        let mut used = vec![false; self.n];
        for (blue, red) in self.placed.iter().enumerate() {
            if let Some(x) = *red {
                perm[x] = blue;
                used[x] = true;
            }
        }
        let mut free_reds = self.red_order.iter().copied().filter(|&x| !used[x]);
        for blue in 0..self.n {
            if self.placed[blue].is_none() {
                let x = free_reds.next().expect("counts match");
                perm[x] = blue;
            }
        }
        Labeling::new(perm).expect("search builds a bijection")
    }
}
