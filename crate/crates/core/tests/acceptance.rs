//! End-to-end acceptance criteria. Runs as a plain binary so each criterion
//! prints exactly one PASS/FAIL line; the process fails if any criterion does.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use itertools::Itertools;
use num_rational::Ratio;
use rand::Rng;

use graphpack::conditions::{
    alpha_star, corcor_max_n, corollary3_parameters, corollary5_alpha, corradi_lower_bound,
    exceeds_four_plus_root5, thm1_quantities, thm2_quantities, Exact,
};
use graphpack::generators::{
    enumerate_graphs, random_bounded_degree, random_k2t_free, sauer_spencer_tight_pair,
};
use graphpack::graph6;
use graphpack::harness::{
    run_equitable, run_verify, validate_equitable, ExperimentConfig, G1Source, G2Source, Outcome,
    Solver, VerifyCondition,
};
use graphpack::packing::{packs_exact, Labeling, NearPacking};
use graphpack::rng::SplitMix64;
use graphpack::swaps::{
    apply_swap, claim4_check, claim_checks, random_labeling, swap_is_safe, ClaimStatus,
    SwapSequence,
};
use graphpack::Graph;

type Verdict = Result<String, String>;

fn ensure(ok: bool, detail: String) -> Verdict {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn sauer_spencer_exhaustive() -> Verdict {
    let start = Instant::now();
    let mut lines = Vec::new();
    let mut bad = 0;
    for n in 1..=5 {
        let s = run_verify(&ExperimentConfig::exhaustive(n, VerifyCondition::SauerSpencer)).map_err(|e| e.to_string())?;
        bad += s.failures + s.inconclusive;
        lines.push(format!("n={n}: {}/{} satisfying, {} packed", s.satisfying, s.instances, s.packed));
        if s.packed != s.satisfying {
            bad += 1;
        }
    }
    let el = start.elapsed();
    ensure(
        bad == 0 && el < Duration::from_secs(600),
        format!("{}; failures {bad}; {:.1}s", lines.join(", "), el.as_secs_f64()),
    )
}

fn bec_exhaustive() -> Verdict {
    let mut lines = Vec::new();
    let mut bad = 0;
    for n in 1..=5 {
        let s = run_verify(&ExperimentConfig::exhaustive(n, VerifyCondition::Bec)).map_err(|e| e.to_string())?;
        bad += s.failures + s.inconclusive;
        if s.packed != s.satisfying {
            bad += 1;
        }
        lines.push(format!("n={n}: {}/{}", s.packed, s.satisfying));
    }
    ensure(bad == 0, format!("packed/satisfying {}; failures {bad}", lines.join(", ")))
}

fn sharpness() -> Verdict {
    let mut parts = Vec::new();
    let mut ok = true;
    for m in 2..=4 {
        let (g1, g2) = sauer_spencer_tight_pair(m).map_err(|e| e.to_string())?;
        let start = Instant::now();
        let r = packs_exact(&g1, &g2, u64::MAX).map_err(|e| e.to_string())?;
        let el = start.elapsed();
        ok &= !r.packs && el < Duration::from_secs(60);
        parts.push(format!("m={m}: packs={} nodes={} {:.3}s", r.packs, r.stats.nodes, el.as_secs_f64()));
    }
    ensure(ok, parts.join(", "))
}

fn alpha_star_grid() -> Verdict {
    let lo = (9.0 + 17f64.sqrt()) / 8.0 - 1e-12;
    let hi = (3.0 + 5f64.sqrt()) / 2.0 + 1e-12;
    let mut worst = 0f64;
    let mut bad = 0;
    for t in 2..=50 {
        for d2 in 1..=100 {
            let a = alpha_star(t, d2).map_err(|e| e.to_string())?;
            let g = a.gamma.0 as f64 / a.gamma.1 as f64;
            let res = ((a.value - 1.0).powi(2) - g * a.value).abs();
            worst = worst.max(res);
            if res > 1e-12 || a.value < lo || a.value > hi {
                bad += 1;
            }
        }
    }
    ensure(bad == 0, format!("4900 points, max residual {worst:.2e}, violations {bad}"))
}

fn corollary3_grid() -> Verdict {
    let mut bad = 0;
    let mut count = 0;
    let mut min_slack: Option<Exact> = None;
    for t in 2..=10usize {
        let (a, e) = corollary3_parameters(t);
        for d2 in 1..=20usize {
            let base = 17 * t * d2;
            for d1 in base + 1..=base + 50 {
                let q = thm1_quantities(t, a, e, d1, d2).map_err(|e| e.to_string())?;
                let bound = Exact::from_integer(((d1 + 1) * (d2 + 1) - 1) as i128);
                let max = q.iter().copied().max().expect("four quantities");
                let slack = bound - max;
                if slack < Exact::from_integer(0) {
                    bad += 1;
                }
                min_slack = Some(min_slack.map_or(slack, |m: Exact| m.min(slack)));
                count += 1;
            }
        }
    }
    let m = min_slack.expect("non-empty grid");
    ensure(bad == 0, format!("{count} exact evaluations, min slack {m}, violations {bad}"))
}

/// Rationals `lo < α < hi` around the larger root of `2tα² - (6t+1)α + 2t + 1`.
fn bracket_cor5_alpha(t: usize) -> (Exact, Exact) {
    const SCALE: i128 = 1 << 30;
    let a = corollary5_alpha(t);
    let lo = Exact::new((a * SCALE as f64).floor() as i128 - 1, SCALE);
    let hi = Exact::new((a * SCALE as f64).ceil() as i128 + 1, SCALE);
    let tt = Exact::from_integer(t as i128);
    let g = |x: Exact| {
        Exact::from_integer(2) * tt * x * x - (Exact::from_integer(6) * tt + 1) * x
            + Exact::from_integer(2) * tt
            + 1
    };
    let vertex = (Exact::from_integer(6) * tt + 1) / (Exact::from_integer(4) * tt);
    assert!(lo > vertex && g(lo) < Exact::from_integer(0) && g(hi) > Exact::from_integer(0));
    (lo, hi)
}

fn corollary5_grid() -> Verdict {
    let mut bad = 0;
    let mut count = 0;
    let mut worst_identity = 0f64;
    for t in 2..=10usize {
        // the first quantity falls and the second rises with α
        let (lo, hi) = bracket_cor5_alpha(t);
        let a = corollary5_alpha(t);
        let lhs = t as f64 + a * (a - 1.0) / ((a - 1.0).powi(2) - a);
        worst_identity = worst_identity.max((lhs - (2.0 * a + 1.0) * t as f64).abs());
        for d2 in 1..=20usize {
            for d1 in 1..=17 * t * d2 + 50 {
                if !exceeds_four_plus_root5(d1, t, d2) {
                    continue;
                }
                let [q5, _] = thm2_quantities(t, 1, lo, d1, d2).map_err(|e| e.to_string())?;
                let [_, q6] = thm2_quantities(t, 1, hi, d1, d2).map_err(|e| e.to_string())?;
                let bound = Exact::from_integer(((d1 + 1) * (d2 + 1) - 1) as i128);
                let [f5, f6] = thm2_quantities(t, 1, a, d1, d2).map_err(|e| e.to_string())?;
                if q5 > bound || q6 > bound || f5.max(f6) > bound.to_integer() as f64 {
                    bad += 1;
                }
                count += 1;
            }
        }
    }
    ensure(
        bad == 0 && worst_identity <= 1e-10,
        format!("{count} instances certified on rational brackets, violations {bad}, identity error {worst_identity:.1e}"),
    )
}

fn corradi() -> Verdict {
    const U: u32 = 8;
    let mut checked = 0u64;
    let mut bad = 0u64;
    for k in 1..=4u32 {
        let sets: Vec<u8> = (0u32..1 << U)
            .filter(|m| m.count_ones() == k)
            .map(|m| m as u8)
            .collect();
        let first = ((1u32 << k) - 1) as u8;
        let rest: Vec<u8> = sets.iter().copied().filter(|&s| s != first).collect();
        let mut family = vec![first];
        dfs(&rest, 0, &mut family, first, 0, k, &mut checked, &mut bad);
    }

    #[allow(clippy::too_many_arguments)]
    fn dfs(rest: &[u8], from: usize, fam: &mut Vec<u8>, union: u8, m: u32, k: u32, checked: &mut u64, bad: &mut u64) {
        let nn = fam.len();
        let bound = corradi_lower_bound(k as usize, nn, m as usize + 1).expect("valid parameters");
        *checked += 1;
        if Ratio::from_integer(union.count_ones() as i64) < bound {
            *bad += 1;
        }
        if nn == 6 {
            return;
        }
        for i in from..rest.len() {
            let s = rest[i];
            let mi = fam.iter().map(|&f| (f & s).count_ones()).max().unwrap_or(0).max(m);
            fam.push(s);
            dfs(rest, i + 1, fam, union | s, mi, k, checked, bad);
            fam.pop();
        }
    }

    let best = max_family_10_4();
    let predicted = corcor_max_n(10, 4, 2).map_err(|e| e.to_string())?;
    ensure(
        bad == 0 && Ratio::from_integer(best as i64) == predicted,
        format!("{checked} families, violations {bad}; max 4-uniform family on 10 points with overlaps <= 1: {best} (bound {predicted})"),
    )
}

/// Largest family of 4-subsets of a 10-set meeting pairwise in at most one
/// point, by branch and bound over a compatibility graph.
fn max_family_10_4() -> usize {
    let sets: Vec<u16> = (0u16..1 << 10).filter(|m| m.count_ones() == 4).collect();
    let n = sets.len();
    let compat: Vec<Vec<bool>> = sets
        .iter()
        .map(|&a| sets.iter().map(|&b| a != b && (a & b).count_ones() <= 1).collect())
        .collect();
    fn grow(compat: &[Vec<bool>], cands: Vec<usize>, size: usize, best: &mut usize) {
        if size > *best {
            *best = size;
        }
        for (idx, &c) in cands.iter().enumerate() {
            if size + cands.len() - idx <= *best {
                return;
            }
            let next: Vec<usize> = cands[idx + 1..].iter().copied().filter(|&d| compat[c][d]).collect();
            grow(compat, next, size + 1, best);
        }
    }
    let first = sets.iter().position(|&s| s == 0b1111).expect("present");
    let cands: Vec<usize> = (0..n).filter(|&d| compat[first][d]).collect();
    let mut best = 1;
    grow(&compat, cands, 1, &mut best);
    best
}

fn purple_touches(np: &NearPacking<'_>, labels: &[usize]) -> bool {
    np.purple().iter().any(|&(x, y)| labels.contains(&x) || labels.contains(&y))
}

fn swap_lemma() -> Verdict {
    let mut safe = 0u64;
    let mut total = 0u64;
    let mut bad = 0u64;
    let mut check = |np: &NearPacking<'_>, s: &SwapSequence, safe: &mut u64, total: &mut u64| {
        *total += 1;
        if swap_is_safe(np, s).expect("valid sequence") {
            *safe += 1;
            let after = apply_swap(np, s).expect("valid sequence");
            if purple_touches(&after, s.labels()) {
                bad += 1;
            }
        }
    };
    for n in 2..=4 {
        let graphs: Vec<Graph> = enumerate_graphs(n).map_err(|e| e.to_string())?.collect();
        let seqs: Vec<SwapSequence> = (2..=3.min(n))
            .flat_map(|l| (0..n).permutations(l))
            .map(|v| SwapSequence::new(v, n).expect("distinct"))
            .collect();
        for g1 in &graphs {
            for g2 in &graphs {
                for perm in (0..n).permutations(n) {
                    let np = NearPacking::new(g1, g2, Labeling::new(perm).expect("perm")).expect("sizes");
                    for s in &seqs {
                        check(&np, s, &mut safe, &mut total);
                    }
                }
            }
        }
    }
    let exhaustive = (total, safe);
    let mut rng = SplitMix64::new(0x5eed);
    for _ in 0..10_000 {
        let n = rng.gen_range(3..=20);
        let g1 = random_bounded_degree(n, rng.gen_range(1..n), rng.gen()).expect("valid");
        let g2 = random_bounded_degree(n, rng.gen_range(1..n), rng.gen()).expect("valid");
        let np = NearPacking::new(&g1, &g2, random_labeling(n, &mut rng)).expect("sizes");
        let l = rng.gen_range(2..=3);
        let mut labels: Vec<usize> = (0..n).collect();
        rand::seq::SliceRandom::shuffle(labels.as_mut_slice(), &mut rng);
        let s = SwapSequence::new(labels[..l].to_vec(), n).expect("distinct");
        check(&np, &s, &mut safe, &mut total);
    }
    ensure(
        bad == 0,
        format!(
            "exhaustive n<=4: {} swaps ({} safe); random: 10000 ({} safe); violations {bad}",
            exhaustive.0,
            exhaustive.1,
            safe - exhaustive.1
        ),
    )
}

fn claims_3_and_4() -> Verdict {
    let mut rng = SplitMix64::new(44);
    let mut bad4 = 0;
    for _ in 0..10_000 {
        let n = rng.gen_range(4..=24);
        let t = rng.gen_range(2..=4);
        let g1 = random_k2t_free(n, rng.gen_range(1..n), t, rng.gen(), 300).expect("valid");
        let g2 = random_bounded_degree(n, rng.gen_range(0..n), rng.gen()).expect("valid");
        let np = NearPacking::new(&g1, &g2, random_labeling(n, &mut rng)).expect("sizes");
        let r = claim4_check(&np, rng.gen_range(0..n), t).expect("valid");
        if r.status != ClaimStatus::Holds {
            bad4 += 1;
        }
    }

    let (mut seen, mut bad3) = (0u64, 0u64);
    let mut coverage = |np: &NearPacking<'_>, seen: &mut u64| {
        if np.purple().len() != 1 {
            return;
        }
        let (x, y) = np.purple()[0];
        for (u, v) in [(x, y), (y, x)] {
            let r = claim_checks(np, u, v, 2).expect("unique purple edge");
            if r[0].holds() {
                *seen += 1;
                if r[2].status != ClaimStatus::Holds {
                    bad3 += 1;
                }
            }
        }
    };
    for n in 2..=4 {
        let graphs: Vec<Graph> = enumerate_graphs(n).map_err(|e| e.to_string())?.collect();
        for g1 in &graphs {
            for g2 in &graphs {
                for perm in (0..n).permutations(n) {
                    let np = NearPacking::new(g1, g2, Labeling::new(perm).expect("perm")).expect("sizes");
                    coverage(&np, &mut seen);
                }
            }
        }
    }
    let exhaustive = seen;
    for _ in 0..10_000 {
        let n = rng.gen_range(5..=16);
        let g1 = random_bounded_degree(n, rng.gen_range(1..n), rng.gen()).expect("valid");
        let g2 = random_bounded_degree(n, rng.gen_range(1..n), rng.gen()).expect("valid");
        let lab = random_labeling(n, &mut rng);
        let purple = graphpack::packing::purple_edges(&g1, &g2, &lab).expect("sizes");
        if purple.is_empty() {
            continue;
        }
        let inv = lab.inverse();
        let mut g2 = g2;
        for &(a, b) in &purple[1..] {
            g2 = g2.without_edge(inv[a], inv[b]);
        }
        let np = NearPacking::new(&g1, &g2, lab).expect("sizes");
        coverage(&np, &mut seen);
    }
    ensure(
        bad4 == 0 && bad3 == 0,
        format!(
            "claim 4: 10000 profiles, violations {bad4}; claim 3: {exhaustive} exhaustive + {} random views with claim 1 observed, violations {bad3}",
            seen - exhaustive
        ),
    )
}

fn corollary3_scale() -> Verdict {
    let start = Instant::now();
    let mut cfg = ExperimentConfig::sample(
        72,
        100,
        2024,
        VerifyCondition::Corollary3,
        G1Source::K2tFree { dmax: 35, t: 2 },
        G2Source::Matching,
    );
    cfg.budget = 50_000_000;
    let exact = run_verify(&cfg).map_err(|e| e.to_string())?;
    cfg.solver = Solver::LocalSearch;
    cfg.budget = 100_000;
    let local = run_verify(&cfg).map_err(|e| e.to_string())?;
    let el = start.elapsed();
    ensure(
        exact.satisfying == 100
            && exact.packed == 100
            && local.satisfying == 100
            && local.packed >= 95
            && local.failures == 0
            && el < Duration::from_secs(900),
        format!(
            "corollary holds on {}/100; exact packs {}/100; local search packs {}/100; {:.1}s",
            exact.satisfying,
            exact.packed,
            local.packed,
            el.as_secs_f64()
        ),
    )
}

fn graph6_round_trip() -> Verdict {
    let mut count = 0;
    let mut bad = 0;
    for n in 0..=5 {
        for g in enumerate_graphs(n).map_err(|e| e.to_string())? {
            let s = graph6::encode(&g);
            if graph6::decode(&s).ok().as_ref() != Some(&g) {
                bad += 1;
            }
            count += 1;
        }
    }
    let k2 = Graph::from_edges(2, &[(0, 1)]).map_err(|e| e.to_string())?;
    let k2_ok = graph6::encode(&k2) == b"A_";
    ensure(bad == 0 && k2_ok, format!("{count} graphs, failures {bad}; K2 -> \"A_\": {k2_ok}"))
}

fn equitable_validator() -> Verdict {
    let mut rng = SplitMix64::new(17);
    let (mut success, mut bad, mut inconclusive) = (0, 0, 0);
    for _ in 0..50 {
        let n = rng.gen_range(40..=90);
        let floor = (34.0 * n as f64).sqrt().ceil() as usize;
        let dmax = (floor + rng.gen_range(0..6)).min(n - 1);
        let g = random_k2t_free(n, dmax, 2, rng.gen(), 2000).expect("valid");
        let r = run_equitable(&g, Some(2), None, Solver::Both, 1_000_000, rng.gen()).map_err(|e| e.to_string())?;
        match (&r.outcome, &r.coloring) {
            (Outcome::Packs, Some(c)) => {
                success += 1;
                if !validate_equitable(&g, c, r.colors) || r.valid != Some(true) {
                    bad += 1;
                }
            }
            (Outcome::Inconclusive, _) => inconclusive += 1,
            _ => bad += 1,
        }
    }
    ensure(
        bad == 0 && success > 0,
        format!("50 inputs: {success} colorings, all proper and equitable: {}; inconclusive {inconclusive}", bad == 0),
    )
}

fn main() {
    type Criterion = (&'static str, fn() -> Verdict);
    let criteria: [Criterion; 12] = [
        ("sauer-spencer implication, exhaustive n <= 5", sauer_spencer_exhaustive),
        ("bec implication, exhaustive n <= 5", bec_exhaustive),
        ("tight pairs do not pack, m = 2..4", sharpness),
        ("alpha* residual and range", alpha_star_grid),
        ("corollary 3 arithmetic, exact grid", corollary3_grid),
        ("corollary 5 arithmetic and identity", corollary5_grid),
        ("corradi bound and packing number D(10,4,2)", corradi),
        ("swap lemma soundness", swap_lemma),
        ("claim 4 bound and claim 3 coverage", claims_3_and_4),
        ("corollary 3 scale, n = 72", corollary3_scale),
        ("graph6 round trip", graph6_round_trip),
        ("equitable colorings validate", equitable_validator),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let res = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match res {
            Ok(d) => println!("PASS {:>2} {name} ({secs:.1}s): {d}", i + 1),
            Err(d) => {
                failed += 1;
                println!("FAIL {:>2} {name} ({secs:.1}s): {d}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
