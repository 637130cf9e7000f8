//! Diagnostics over a near-packing whose only purple edge is `uv`.
//!
//! The link properties (1, 2) are forced only when the pair does not pack,
//! so here they are observations: a violation comes with the swap that
//! removes `uv`. The coverage identities (3) follow from property 1, and the
//! bound on `|N1*(u)|` (4) needs nothing beyond `Δ^∧(G1) < t`; a violation of
//! either is a bug. Property 5 is checked only once 1 and 2 were observed.

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use super::profile::{profile, NeighborhoodProfile};
use super::{red_blue_link_raw, swap_is_safe_raw, SwapSequence};
use crate::bits::VertexSet;
use crate::error::{Error, Result};
use crate::invariants::{max_codegree, max_degree};
use crate::packing::NearPacking;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClaimId {
    /// Every `w != v` is reached from `u` by a red–blue or blue–red link.
    LinksFromU,
    /// For `a ∈ A*(u)`, `b ∈ B(u)` there is a red–blue link from `a` to `b`.
    LinksAStarToB,
    /// Three covers of the ground set by neighborhood sets.
    Coverage,
    /// `|N1*(u)| <= (t-1) Δ2`.
    TruncatedBlue,
    /// `|N1(b) ∩ A*(u)| >= |A*(u)|/Δ2 - t(Δ2+1)` for `b ∈ B(u)`.
    BlueIntoAStar,
}

impl ClaimId {
    pub fn number(self) -> u8 {
        match self {
            ClaimId::LinksFromU => 1,
            ClaimId::LinksAStarToB => 2,
            ClaimId::Coverage => 3,
            ClaimId::TruncatedBlue => 4,
            ClaimId::BlueIntoAStar => 5,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClaimStatus {
    Holds,
    Violated,
    /// A prerequisite was not met, so nothing was asserted.
    NotApplicable,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimReport {
    pub claim: ClaimId,
    pub status: ClaimStatus,
    /// Violating vertices; always present when `status` is `Violated`.
    pub witness: Option<Vec<usize>>,
    /// A safe swap that removes the purple edge, for violated link claims.
    pub repair: Option<SwapSequence>,
    pub measured: Vec<(String, i64)>,
}

impl ClaimReport {
    fn new(claim: ClaimId) -> Self {
        ClaimReport {
            claim,
            status: ClaimStatus::Holds,
            witness: None,
            repair: None,
            measured: Vec::new(),
        }
    }

    fn measure(&mut self, name: &str, value: impl TryInto<i64>) {
        let v = value.try_into().ok().expect("measurement fits in i64");
        self.measured.push((name.to_string(), v));
    }

    fn violate(&mut self, witness: Vec<usize>) {
        self.status = ClaimStatus::Violated;
        self.witness = Some(witness);
    }

    pub fn holds(&self) -> bool {
        self.status == ClaimStatus::Holds
    }

    pub fn measured(&self, name: &str) -> Option<i64> {
        self.measured.iter().find(|(k, _)| k == name).map(|&(_, v)| v)
    }
}

fn first_uncovered(parts: &[&VertexSet], n: usize) -> Option<usize> {
    let mut cover = VertexSet::empty(n);
    for p in parts {
        cover.union_with(p.words());
    }
    (0..n).find(|&x| !cover.contains(x))
}

fn links_from(np: &NearPacking<'_>, p: &NeighborhoodProfile, other: usize) -> ClaimReport {
    let u = p.u;
    let mut r = ClaimReport::new(ClaimId::LinksFromU);
    let reached = p.n1n2.union(&p.n2n1);
    let mut reached_with_other = reached.clone();
    reached_with_other.insert(other);
    r.measure("reached", reached_with_other.len());
    r.measure("n", np.n());
    if let Some(w) = (0..np.n()).find(|&w| w != u && w != other && !reached.contains(w)) {
        r.violate(vec![w]);
        let s = SwapSequence::new(vec![u, w], np.n()).expect("distinct labels");
        debug_assert!(swap_is_safe_raw(np, &s));
        r.repair = Some(s);
    }
    r
}

/// Runs all five diagnostics at the purple edge `uv`, viewed from `u`.
/// Errors unless `uv` is the only purple edge of `np`.
pub fn claim_checks(np: &NearPacking<'_>, u: usize, v: usize, t: usize) -> Result<Vec<ClaimReport>> {
    let n = np.n();
    if u >= n || v >= n {
        return Err(Error::LabelOutOfRange(u.max(v), n));
    }
    if np.purple() != [(u.min(v), u.max(v))] {
        return Err(Error::NotUniquePurple(u, v));
    }
    if t < 1 {
        return Err(Error::Domain("t must be at least 1".into()));
    }
    let pu = profile(np, u)?;
    let pv = profile(np, v)?;
    let codeg_ok = max_codegree(np.blue()) < t;
    let delta2 = max_degree(np.red_source());

    let c1 = links_from(np, &pu, v);
    let c1_at_v = links_from(np, &pv, u);

    let mut c2 = ClaimReport::new(ClaimId::LinksAStarToB);
    c2.measure("a_star", pu.a_star.len());
    c2.measure("b", pu.b.len());
    'outer: for a in pu.a_star.iter() {
        for b in pu.b.iter() {
            if !red_blue_link_raw(np, a, b) {
                c2.violate(vec![a, b]);
                let s = SwapSequence::new(vec![u, a, b], n).expect("A*(u) and B(u) are disjoint");
                debug_assert!(swap_is_safe_raw(np, &s));
                c2.repair = Some(s);
                break 'outer;
            }
        }
    }

    let mut c3 = ClaimReport::new(ClaimId::Coverage);
    c3.measure("n", n);
    c3.measure("bound_i", pu.n2.len() + pu.a_star.len() + pu.n1n2.len());
    c3.measure(
        "bound_ii",
        pu.n1_star.len() + pu.n2.len() + pu.b.len() + pu.n2n1.len(),
    );
    let shared = pu.n2.union(&pu.n1n2).intersection(&pv.n2.union(&pv.n1n2));
    if c1.holds() {
        let covers: [(&str, Vec<&VertexSet>); 2] = [
            ("i", vec![&pu.n2, &pu.a_star, &pu.n1n2]),
            ("ii", vec![&pu.n1_star, &pu.n2, &pu.b, &pu.n2n1]),
        ];
        for (_, parts) in &covers {
            if let Some(x) = first_uncovered(parts, n) {
                c3.violate(vec![x]);
                break;
            }
        }
        if c1_at_v.holds() {
            c3.measure(
                "bound_iii",
                pv.a_star.len() + pu.a_star.len() + shared.len(),
            );
            if c3.holds() {
                if let Some(x) = first_uncovered(&[&pv.a_star, &pu.a_star, &shared], n) {
                    c3.violate(vec![x]);
                }
            }
        }
    } else {
        c3.status = ClaimStatus::NotApplicable;
    }

    let c4 = truncated_blue(np, &pu, t, codeg_ok, delta2);

    let mut c5 = ClaimReport::new(ClaimId::BlueIntoAStar);
    c5.measure("a_star", pu.a_star.len());
    if c1.holds() && c2.holds() && codeg_ok && delta2 > 0 {
        let rhs = Ratio::new(pu.a_star.len() as i64, delta2 as i64)
            - Ratio::from_integer((t * (delta2 + 1)) as i64);
        c5.measure("bound_numer", *rhs.numer());
        c5.measure("bound_denom", *rhs.denom());
        let mut min_seen: Option<usize> = None;
        for b in pu.b.iter() {
            let got = np.blue().neighborhood(b).intersection_len(&pu.a_star);
            min_seen = Some(min_seen.map_or(got, |m| m.min(got)));
            if Ratio::from_integer(got as i64) < rhs && c5.holds() {
                c5.violate(vec![b]);
            }
        }
        if let Some(m) = min_seen {
            c5.measure("min_blue_into_a_star", m);
        }
    } else {
        c5.status = ClaimStatus::NotApplicable;
    }

    Ok(vec![c1, c2, c3, c4, c5])
}

fn truncated_blue(
    np: &NearPacking<'_>,
    p: &NeighborhoodProfile,
    t: usize,
    codeg_ok: bool,
    delta2: usize,
) -> ClaimReport {
    let mut r = ClaimReport::new(ClaimId::TruncatedBlue);
    let bound = t.saturating_sub(1) * delta2;
    r.measure("n1_star", p.n1_star.len());
    r.measure("bound", bound);
    r.measure("n", np.n());
    if !codeg_ok {
        r.status = ClaimStatus::NotApplicable;
    } else if p.n1_star.len() > bound {
        r.violate(vec![p.u]);
    }
    r
}

/// The `|N1*(u)| <= (t-1) Δ2` check alone; it needs no purple edge, only
/// `Δ^∧(G1) < t` (otherwise `NotApplicable`).
pub fn claim4_check(np: &NearPacking<'_>, u: usize, t: usize) -> Result<ClaimReport> {
    let p = profile(np, u)?;
    let codeg_ok = max_codegree(np.blue()) < t;
    Ok(truncated_blue(np, &p, t, codeg_ok, max_degree(np.red_source())))
}
