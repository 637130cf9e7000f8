//! Cyclic relabelings of the red graph and the test for when one of them is
//! guaranteed not to leave purple edges at the moved labels.
//!
//! A `(u_0, ..., u_{l-1})`-swap gives the red vertex currently labeled `u_k`
//! the label `u_{k+1 mod l}`. It is *safe* when
//!
//! 1. no red–blue link runs from `u_k` to `u_{k+1}`, and
//! 2. `u_k u_{k'}` red implies `u_{k+1} u_{k'+1}` not blue,
//!
//! for all `k, k'`. After a safe swap no purple edge touches any `u_k`, and
//! purple edges away from the `u_k` are untouched, so the purple count never
//! goes up.

mod claims;
mod profile;
mod search;

use serde::{Deserialize, Serialize};

use crate::bits;
use crate::error::{Error, Result};
use crate::packing::NearPacking;

pub use claims::{claim4_check, claim_checks, ClaimId, ClaimReport, ClaimStatus};
pub use profile::{profile, NeighborhoodProfile};
pub use search::{local_search_pack, random_labeling};

/// Distinct labels `(u_0, ..., u_{l-1})`, `l >= 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SwapSequence(Vec<usize>);

impl SwapSequence {
    pub fn new(seq: Vec<usize>, n: usize) -> Result<Self> {
        if seq.is_empty() {
            return Err(Error::InvalidSwap("empty sequence".into()));
        }
        for (k, &x) in seq.iter().enumerate() {
            if x >= n {
                return Err(Error::InvalidSwap(format!("label {x} out of range for n = {n}")));
            }
            if seq[..k].contains(&x) {
                return Err(Error::InvalidSwap(format!("label {x} repeated")));
            }
        }
        Ok(SwapSequence(seq))
    }

    pub fn labels(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `u_{(k+1) mod l}`
    fn succ(&self, k: usize) -> usize {
        self.0[(k + 1) % self.0.len()]
    }

    fn check_against(&self, np: &NearPacking<'_>) -> Result<()> {
        if let Some(&x) = self.0.iter().find(|&&x| x >= np.n()) {
            return Err(Error::InvalidSwap(format!(
                "label {x} out of range for n = {}",
                np.n()
            )));
        }
        Ok(())
    }
}

fn check_pair(np: &NearPacking<'_>, i: usize, j: usize) -> Result<()> {
    let n = np.n();
    for x in [i, j] {
        if x >= n {
            return Err(Error::LabelOutOfRange(x, n));
        }
    }
    if i == j {
        return Err(Error::SameEndpoints(i));
    }
    Ok(())
}

/// Some `x` with `ix` red and `xj` blue. No range or distinctness checks.
#[inline]
pub(crate) fn red_blue_link_raw(np: &NearPacking<'_>, i: usize, j: usize) -> bool {
    bits::intersects(np.red().row(i), np.blue().row(j))
}

/// Is there a red–blue link from `i` to `j`: a label `x` with `ix` red and
/// `xj` blue?
pub fn has_red_blue_link(np: &NearPacking<'_>, i: usize, j: usize) -> Result<bool> {
    check_pair(np, i, j)?;
    Ok(red_blue_link_raw(np, i, j))
}

/// Is there a blue–red link from `i` to `j`: `x` with `ix` blue and `xj` red?
pub fn has_blue_red_link(np: &NearPacking<'_>, i: usize, j: usize) -> Result<bool> {
    check_pair(np, i, j)?;
    Ok(red_blue_link_raw(np, j, i))
}

pub(crate) fn swap_is_safe_raw(np: &NearPacking<'_>, s: &SwapSequence) -> bool {
    let seq = s.labels();
    let (red, blue) = (np.red(), np.blue());
    for k in 0..seq.len() {
        if red_blue_link_raw(np, seq[k], s.succ(k)) {
            return false;
        }
        for kk in 0..seq.len() {
            if red.has_edge(seq[k], seq[kk]) && blue.has_edge(s.succ(k), s.succ(kk)) {
                return false;
            }
        }
    }
    true
}

/// Checks both swap-lemma hypotheses for every index pair.
pub fn swap_is_safe(np: &NearPacking<'_>, s: &SwapSequence) -> Result<bool> {
    s.check_against(np)?;
    Ok(swap_is_safe_raw(np, s))
}

pub(crate) fn apply_swap_in_place(np: &mut NearPacking<'_>, s: &SwapSequence) {
    let n = np.n();
    let mut sigma: Vec<usize> = (0..n).collect();
    for k in 0..s.len() {
        sigma[s.labels()[k]] = s.succ(k);
    }
    np.relabel_with(|perm| {
        for p in perm.iter_mut() {
            *p = sigma[*p];
        }
    });
}

/// Returns the near-packing after the swap; `np` is left untouched.
pub fn apply_swap<'a>(np: &NearPacking<'a>, s: &SwapSequence) -> Result<NearPacking<'a>> {
    s.check_against(np)?;
    let mut out = np.clone();
    apply_swap_in_place(&mut out, s);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{enumerate_graphs, random_bounded_degree};
    use crate::graph::Graph;
    use crate::packing::Labeling;
    use crate::rng::SplitMix64;
    use rand::Rng;

    fn seq(v: &[usize], n: usize) -> SwapSequence {
        SwapSequence::new(v.to_vec(), n).unwrap()
    }

    #[test]
    fn sequence_validation() {
        assert!(SwapSequence::new(vec![], 3).is_err());
        assert!(SwapSequence::new(vec![0, 3], 3).is_err());
        assert!(SwapSequence::new(vec![1, 1], 3).is_err());
        assert_eq!(seq(&[2, 0], 3).len(), 2);
    }

    #[test]
    fn link_examples() {
        // red i=0 - x=1, blue x=1 - j=2
        let blue = Graph::from_edges(4, &[(1, 2)]).unwrap();
        let red = Graph::from_edges(4, &[(0, 1)]).unwrap();
        let np = NearPacking::new(&blue, &red, Labeling::identity(4)).unwrap();
        assert!(has_red_blue_link(&np, 0, 2).unwrap());
        assert!(!has_red_blue_link(&np, 2, 0).unwrap());
        assert!(has_blue_red_link(&np, 2, 0).unwrap());
        assert!(has_red_blue_link(&np, 0, 0).is_err());
        assert!(has_red_blue_link(&np, 0, 4).is_err());

        let empty = Graph::empty(4).unwrap();
        let np = NearPacking::new(&blue, &empty, Labeling::identity(4)).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                if i != j {
                    assert!(!has_red_blue_link(&np, i, j).unwrap());
                }
            }
        }
    }

    #[test]
    fn safety_examples() {
        // unique purple edge 0-1; vertex 3 isolated in both graphs
        let blue = Graph::from_edges(4, &[(0, 1)]).unwrap();
        let red = Graph::from_edges(4, &[(0, 1)]).unwrap();
        let np = NearPacking::new(&blue, &red, Labeling::identity(4)).unwrap();
        let s = seq(&[0, 3], 4);
        assert!(swap_is_safe(&np, &s).unwrap());
        let after = apply_swap(&np, &s).unwrap();
        assert!(after.is_packing());

        // red 0-1, blue 1-2: red–blue link from 0 to 2
        let blue = Graph::from_edges(4, &[(0, 1), (1, 2)]).unwrap();
        let np = NearPacking::new(&blue, &red, Labeling::identity(4)).unwrap();
        assert!(!swap_is_safe(&np, &seq(&[0, 2], 4)).unwrap());
        assert!(swap_is_safe(&np, &seq(&[0, 5], 6)).is_err());
    }

    #[test]
    fn apply_swap_algebra() {
        let g = random_bounded_degree(8, 3, 5).unwrap();
        let h = random_bounded_degree(8, 3, 6).unwrap();
        let lab = Labeling::new(vec![3, 1, 4, 0, 5, 2, 7, 6]).unwrap();
        let np = NearPacking::new(&g, &h, lab.clone()).unwrap();

        let one = apply_swap(&np, &seq(&[4], 8)).unwrap();
        assert_eq!(one.labeling(), &lab);

        let s = seq(&[1, 6], 8);
        let twice = apply_swap(&apply_swap(&np, &s).unwrap(), &s).unwrap();
        assert_eq!(twice.labeling(), &lab);

        let fwd = apply_swap(&np, &seq(&[2, 5, 7], 8)).unwrap();
        let back = apply_swap(&fwd, &seq(&[2, 7, 5], 8)).unwrap();
        assert_eq!(back.labeling(), &lab);

        // red vertex labeled 2 now carries 5
        let red_at_2 = lab.inverse()[2];
        assert_eq!(fwd.labeling().label_of(red_at_2), 5);
        assert_eq!(
            fwd.purple(),
            crate::packing::purple_edges(&g, &h, fwd.labeling()).unwrap().as_slice()
        );
    }

    fn purple_touches(np: &NearPacking<'_>, labels: &[usize]) -> bool {
        np.purple()
            .iter()
            .any(|&(x, y)| labels.contains(&x) || labels.contains(&y))
    }

    /// Exhaustive over pairs on 4 vertices; labelings are folded into the
    /// enumeration because every relabeled red graph is itself enumerated.
    #[test]
    fn safe_swaps_clear_swapped_labels_exhaustive_n4() {
        let n = 4;
        let graphs: Vec<Graph> = enumerate_graphs(n).unwrap().collect();
        let mut checked = 0;
        for g1 in &graphs {
            for g2 in &graphs {
                let np = NearPacking::new(g1, g2, Labeling::identity(n)).unwrap();
                for a in 0..n {
                    for b in 0..n {
                        if a == b {
                            continue;
                        }
                        let mut seqs = vec![seq(&[a, b], n)];
                        seqs.extend((0..n).filter(|&c| c != a && c != b).map(|c| seq(&[a, b, c], n)));
                        for s in seqs {
                            if swap_is_safe(&np, &s).unwrap() {
                                let after = apply_swap(&np, &s).unwrap();
                                assert!(!purple_touches(&after, s.labels()), "{g1:?} {g2:?} {s:?}");
                                assert!(after.purple().len() <= np.purple().len());
                                checked += 1;
                            }
                        }
                    }
                }
            }
        }
        assert!(checked > 0);
    }

    #[test]
    fn safe_swaps_clear_swapped_labels_random() {
        let mut rng = SplitMix64::new(2024);
        for _ in 0..2000 {
            let n = rng.gen_range(5..=14);
            let g1 = random_bounded_degree(n, rng.gen_range(1..n), rng.gen()).unwrap();
            let g2 = random_bounded_degree(n, rng.gen_range(1..n), rng.gen()).unwrap();
            let lab = random_labeling(n, &mut rng);
            let np = NearPacking::new(&g1, &g2, lab).unwrap();
            let l = rng.gen_range(2..=3);
            let mut labels: Vec<usize> = (0..n).collect();
            rand::seq::SliceRandom::shuffle(labels.as_mut_slice(), &mut rng);
            let s = seq(&labels[..l], n);
            if swap_is_safe(&np, &s).unwrap() {
                let after = apply_swap(&np, &s).unwrap();
                assert!(!purple_touches(&after, s.labels()));
            }
        }
    }
}
