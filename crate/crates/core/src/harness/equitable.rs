use serde::{Deserialize, Serialize};

use super::{solve, Outcome, Solver};
use crate::error::{Error, Result};
use crate::generators::{disjoint_cliques, equitable_sizes};
use crate::graph::Graph;
use crate::invariants::{max_codegree, max_degree};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquitableReport {
    pub n: usize,
    pub delta: usize,
    pub codegree: usize,
    pub t: usize,
    pub colors: usize,
    /// `Δ² >= 17·t·n` and codegree below `t`.
    pub precondition_ok: bool,
    pub warning: Option<String>,
    pub outcome: Outcome,
    pub class_sizes: Option<Vec<usize>>,
    /// `coloring[v]` is the color of vertex `v`.
    pub coloring: Option<Vec<usize>>,
    pub valid: Option<bool>,
    pub nodes: u64,
}

/// True iff `coloring` is a proper coloring of `g` with colors `0..k` whose
/// class sizes (empty classes included) differ by at most one.
pub fn validate_equitable(g: &Graph, coloring: &[usize], k: usize) -> bool {
    if coloring.len() != g.n() || k == 0 || coloring.iter().any(|&c| c >= k) {
        return false;
    }
    if g.edges().iter().any(|&(i, j)| coloring[i] == coloring[j]) {
        return false;
    }
    let mut sizes = vec![0usize; k];
    for &c in coloring {
        sizes[c] += 1;
    }
    let lo = sizes.iter().min().copied().unwrap_or(0);
    let hi = sizes.iter().max().copied().unwrap_or(0);
    hi - lo <= 1
}

/// Equitable coloring of `g` with `colors` classes (default `max(Δ, 1)`),
/// found by packing `g` with a disjoint union of near-equal cliques.
pub fn run_equitable(
    g: &Graph,
    t: Option<usize>,
    colors: Option<usize>,
    solver: Solver,
    budget: u64,
    seed: u64,
) -> Result<EquitableReport> {
    let n = g.n();
    let delta = max_degree(g);
    let codegree = max_codegree(g);
    let t = t.unwrap_or((codegree + 1).max(2));
    let k = colors.unwrap_or(delta.max(1));
    if n == 0 {
        return Err(Error::Domain("empty vertex set".into()));
    }
    if k == 0 || k > n {
        return Err(Error::Domain(format!("color count {k} must lie in 1..={n}")));
    }
    let precondition_ok = codegree < t && (delta as u128).pow(2) >= 17 * t as u128 * n as u128;
    let warning = (!precondition_ok).then(|| {
        format!("outside the guaranteed range (need codegree < {t} and Δ² >= 17·t·n); searching anyway")
    });

    let sizes = equitable_sizes(n, k)?;
    let cliques = disjoint_cliques(&sizes)?;
    let (outcome, result, nodes) = solve(g, &cliques, solver, budget, seed)?;

    let mut report = EquitableReport {
        n,
        delta,
        codegree,
        t,
        colors: k,
        precondition_ok,
        warning,
        outcome,
        class_sizes: None,
        coloring: None,
        valid: None,
        nodes,
    };
    if let Some(w) = result.and_then(|r| r.witness) {
        let mut clique_of = Vec::with_capacity(n);
        for (c, &size) in sizes.iter().enumerate() {
            clique_of.extend(std::iter::repeat_n(c, size));
        }
        let mut coloring = vec![0; n];
        for (red, &label) in w.as_slice().iter().enumerate() {
            coloring[label] = clique_of[red];
        }
        report.valid = Some(validate_equitable(g, &coloring, k));
        report.class_sizes = Some(sizes);
        report.coloring = Some(coloring);
    }
    Ok(report)
}
