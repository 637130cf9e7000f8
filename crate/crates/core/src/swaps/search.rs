use std::time::Instant;

use rand::seq::SliceRandom;
use rand::Rng;

use super::profile::profile;
use super::{apply_swap_in_place, swap_is_safe_raw, SwapSequence};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::packing::{verify_witness, Labeling, NearPacking, PackingResult, SearchStats};
use crate::rng::SplitMix64;

/// Uniform labeling by Fisher–Yates.
pub fn random_labeling<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Labeling {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    Labeling::new(perm).expect("shuffle keeps a permutation")
}

/// First safe repair for some purple edge, scanning purple edges in order.
/// For each edge: 2-swaps `(x, w)` from either endpoint over increasing `w`,
/// then 3-swaps `(x, a, b)` with `a ∈ A*(x)`, `b ∈ B(x)`.
fn find_repair(np: &NearPacking<'_>) -> Option<SwapSequence> {
    let n = np.n();
    for &(u, v) in np.purple() {
        for x in [u, v] {
            for w in 0..n {
                if w == x {
                    continue;
                }
                let s = SwapSequence(vec![x, w]);
                if swap_is_safe_raw(np, &s) {
                    return Some(s);
                }
            }
        }
        for x in [u, v] {
            let p = profile(np, x).expect("label in range");
            for a in p.a_star.iter() {
                for b in p.b.iter() {
                    let s = SwapSequence(vec![x, a, b]);
                    if swap_is_safe_raw(np, &s) {
                        return Some(s);
                    }
                }
            }
        }
    }
    None
}

/// Repeatedly removes purple edges with safe 2- and 3-swaps; restarts from
/// a fresh uniform labeling when no safe swap exists. Each swap or restart
/// is one step.
///
/// Never reports that a pair does not pack: running out of steps gives
/// [`Error::BudgetExhausted`].
pub fn local_search_pack(g1: &Graph, g2: &Graph, seed: u64, max_steps: u64) -> Result<PackingResult> {
    if g1.n() != g2.n() {
        return Err(Error::SizeMismatch(g1.n(), g2.n()));
    }
    let start = Instant::now();
    let n = g1.n();
    let mut rng = SplitMix64::new(seed);
    let mut np = NearPacking::new(g1, g2, random_labeling(n, &mut rng))?;
    let mut steps = 0u64;
    loop {
        if np.is_packing() {
            let lab = np.labeling().clone();
            assert!(verify_witness(g1, g2, &lab)?, "local search witness has purple edges");
            return Ok(PackingResult {
                packs: true,
                witness: Some(lab),
                stats: SearchStats {
                    nodes: steps,
                    elapsed: start.elapsed(),
                },
            });
        }
        if steps >= max_steps {
            return Err(Error::BudgetExhausted { nodes: steps });
        }
        steps += 1;
        match find_repair(&np) {
            Some(s) => {
                let before = np.purple().len();
                apply_swap_in_place(&mut np, &s);
                debug_assert!(np.purple().len() < before);
            }
            None => {
                np = NearPacking::new(g1, g2, random_labeling(n, &mut rng))?;
            }
        }
    }
}
