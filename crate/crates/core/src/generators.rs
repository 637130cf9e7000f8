//! Instance factories: named families, seeded random graphs, exhaustive
//! enumeration of labeled graphs, and the perfect-matching sharpness pairs.

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, GraphBuilder};
use crate::rng::SplitMix64;

/// Largest `n` accepted by [`enumerate_graphs`].
pub const ENUMERATION_CAP: usize = 5;

fn bad(msg: impl Into<String>) -> Error {
    Error::Generator(msg.into())
}

/// Perfect matching `(n/2) K2` with edges `{2i, 2i+1}`.
pub fn matching(n: usize) -> Result<Graph> {
    if !n.is_multiple_of(2) {
        return Err(bad(format!("matching needs an even vertex count, got {n}")));
    }
    let edges: Vec<_> = (0..n / 2).map(|i| (2 * i, 2 * i + 1)).collect();
    Graph::from_edges(n, &edges)
}

/// Vertex-disjoint cliques of the given sizes, laid out consecutively.
pub fn disjoint_cliques(sizes: &[usize]) -> Result<Graph> {
    if sizes.contains(&0) {
        return Err(bad("clique sizes must be positive"));
    }
    let n = sizes.iter().sum();
    let mut b = GraphBuilder::new(n)?;
    let mut base = 0;
    for &s in sizes {
        for i in base..base + s {
            for j in i + 1..base + s {
                b.add_edge(i, j)?;
            }
        }
        base += s;
    }
    Ok(b.build())
}

/// `k` clique sizes summing to `n` that differ by at most one, larger first.
pub fn equitable_sizes(n: usize, k: usize) -> Result<Vec<usize>> {
    if k == 0 || k > n {
        return Err(bad(format!("cannot split {n} vertices into {k} nonempty parts")));
    }
    let (q, r) = (n / k, n % k);
    Ok((0..k).map(|i| q + usize::from(i < r)).collect())
}

fn complete_multipartite(parts: &[usize]) -> Result<Graph> {
    let n = parts.iter().sum();
    let mut part_of = Vec::with_capacity(n);
    for (p, &s) in parts.iter().enumerate() {
        part_of.extend(std::iter::repeat_n(p, s));
    }
    let mut b = GraphBuilder::new(n)?;
    for i in 0..n {
        for j in i + 1..n {
            if part_of[i] != part_of[j] {
                b.add_edge(i, j)?;
            }
        }
    }
    Ok(b.build())
}

/// `K_{a,b}`, parts `0..a` and `a..a+b`.
pub fn complete_bipartite(a: usize, b: usize) -> Result<Graph> {
    if a == 0 || b == 0 {
        return Err(bad("complete bipartite parts must be nonempty"));
    }
    complete_multipartite(&[a, b])
}

pub fn complete_tripartite(a: usize, b: usize, c: usize) -> Result<Graph> {
    if a == 0 || b == 0 || c == 0 {
        return Err(bad("complete tripartite parts must be nonempty"));
    }
    complete_multipartite(&[a, b, c])
}

/// `C_n`, `n >= 3`.
pub fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(bad(format!("cycle needs n >= 3, got {n}")));
    }
    let edges: Vec<_> = (0..n).map(|i| (i.min((i + 1) % n), i.max((i + 1) % n))).collect();
    Graph::from_edges(n, &edges)
}

/// `K_{1,n-1}` with center 0.
pub fn star(n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(bad("star needs at least one vertex"));
    }
    let edges: Vec<_> = (1..n).map(|i| (0, i)).collect();
    Graph::from_edges(n, &edges)
}

/// `(m K2, K_{m+1} ∪ (m-1) K1)` on `2m` vertices: `2 Δ1 Δ2 = n` and the pair
/// does not pack (every labeling puts some matching edge inside the clique).
pub fn sauer_spencer_tight_pair(m: usize) -> Result<(Graph, Graph)> {
    if m < 2 {
        return Err(bad(format!("tight pair needs m >= 2, got {m}")));
    }
    let g1 = matching(2 * m)?;
    let mut sizes = vec![m + 1];
    sizes.extend(std::iter::repeat_n(1, m - 1));
    let g2 = disjoint_cliques(&sizes)?;
    Ok((g1, g2))
}

fn all_pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect()
}

/// Visits all pairs in random order and keeps each with probability 1/2 when
/// both endpoints still have degree below `dmax`.
pub fn random_bounded_degree(n: usize, dmax: usize, seed: u64) -> Result<Graph> {
    if n > 0 && dmax >= n {
        return Err(bad(format!("dmax {dmax} must be below n = {n}")));
    }
    let mut rng = SplitMix64::new(seed);
    let mut pairs = all_pairs(n);
    pairs.shuffle(&mut rng);
    let mut b = GraphBuilder::new(n)?;
    for (i, j) in pairs {
        if rng.gen::<bool>() && b.degree(i) < dmax && b.degree(j) < dmax {
            b.add_edge(i, j)?;
        }
    }
    Ok(b.build())
}

/// True iff adding `ij` keeps every codegree at most `t - 1`. Only pairs
/// `{j, k}` with `k ∈ N(i)` and `{i, k}` with `k ∈ N(j)` gain a common
/// neighbor.
fn insertion_keeps_codegree(b: &GraphBuilder, i: usize, j: usize, t: usize) -> bool {
    let cap = t - 1;
    b.neighbors(i).all(|k| k == j || b.common_neighbors(j, k) < cap)
        && b.neighbors(j).all(|k| k == i || b.common_neighbors(i, k) < cap)
}

/// A random graph with maximum degree at most `dmax` and maximum codegree at
/// most `t - 1`.
///
/// Vertex 0 is first joined to `dmax` random vertices (a star has codegree
/// at most 1, so this is legal for every `t >= 2`); then uniformly random
/// pairs are inserted whenever both constraints survive, until
/// `attempt_cap` consecutive draws fail.
pub fn random_k2t_free(
    n: usize,
    dmax: usize,
    t: usize,
    seed: u64,
    attempt_cap: usize,
) -> Result<Graph> {
    if t < 2 {
        return Err(bad(format!("t must be at least 2, got {t}")));
    }
    if n > 0 && dmax >= n {
        return Err(bad(format!("dmax {dmax} must be below n = {n}")));
    }
    let mut rng = SplitMix64::new(seed);
    let mut b = GraphBuilder::new(n)?;
    if n < 2 || dmax == 0 {
        return Ok(b.build());
    }
    let mut others: Vec<usize> = (1..n).collect();
    others.shuffle(&mut rng);
    for &leaf in &others[..dmax] {
        b.add_edge(0, leaf)?;
    }
    let mut failures = 0;
    while failures < attempt_cap {
        let i = rng.gen_range(0..n);
        let j = rng.gen_range(0..n);
        let ok = i != j
            && !b.has_edge(i, j)
            && b.degree(i) < dmax
            && b.degree(j) < dmax
            && insertion_keeps_codegree(&b, i, j, t);
        if ok {
            b.add_edge(i, j)?;
            failures = 0;
        } else {
            failures += 1;
        }
    }
    Ok(b.build())
}

/// Labeled graph whose edge set is the bitmask `mask` over pairs in graph6
/// order `(0,1), (0,2), (1,2), (0,3), ...`.
pub fn graph_from_mask(n: usize, mask: u64) -> Result<Graph> {
    let mut b = GraphBuilder::new(n)?;
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if mask >> k & 1 == 1 {
                b.add_edge(i, j)?;
            }
            k += 1;
        }
    }
    Ok(b.build())
}

/// Every labeled graph on `n <= ENUMERATION_CAP` vertices, once each, in
/// ascending mask order.
pub fn enumerate_graphs(n: usize) -> Result<impl Iterator<Item = Graph>> {
    if n > ENUMERATION_CAP {
        return Err(Error::EnumerationCap {
            n,
            max: ENUMERATION_CAP,
        });
    }
    let total = 1u64 << (n * n.saturating_sub(1) / 2);
    Ok((0..total).map(move |m| graph_from_mask(n, m).expect("n within cap")))
}

/// A reproducible description of a generated instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum GenSpec {
    Matching { n: usize },
    Cliques { sizes: Vec<usize> },
    CompleteBipartite { a: usize, b: usize },
    CompleteTripartite { a: usize, b: usize, c: usize },
    Cycle { n: usize },
    Star { n: usize },
    SsTight { m: usize },
    RandomBounded { n: usize, dmax: usize, seed: u64 },
    RandomK2tFree { n: usize, dmax: usize, t: usize, seed: u64, attempt_cap: usize },
    Empty { n: usize },
}

impl GenSpec {
    /// One graph for every family except `SsTight`, which yields its pair.
    pub fn generate(&self) -> Result<Vec<Graph>> {
        Ok(match self {
            GenSpec::Matching { n } => vec![matching(*n)?],
            GenSpec::Cliques { sizes } => vec![disjoint_cliques(sizes)?],
            GenSpec::CompleteBipartite { a, b } => vec![complete_bipartite(*a, *b)?],
            GenSpec::CompleteTripartite { a, b, c } => vec![complete_tripartite(*a, *b, *c)?],
            GenSpec::Cycle { n } => vec![cycle(*n)?],
            GenSpec::Star { n } => vec![star(*n)?],
            GenSpec::SsTight { m } => {
                let (a, b) = sauer_spencer_tight_pair(*m)?;
                vec![a, b]
            }
            GenSpec::RandomBounded { n, dmax, seed } => {
                vec![random_bounded_degree(*n, *dmax, *seed)?]
            }
            GenSpec::RandomK2tFree {
                n,
                dmax,
                t,
                seed,
                attempt_cap,
            } => vec![random_k2t_free(*n, *dmax, *t, *seed, *attempt_cap)?],
            GenSpec::Empty { n } => vec![Graph::empty(*n)?],
        })
    }
}
