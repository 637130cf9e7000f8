//! Closed-form sufficient conditions for packing.
//!
//! `n` must exceed every quantity of the relevant family for some admissible
//! parameters `α > α*(t, Δ2)` (and `0 < ε < 1/2` for the four-quantity
//! family). The quantities are evaluated generically, so the same code runs
//! on `f64` and on exact rationals.

mod search;

use std::ops::{Add, Div, Mul, Sub};

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::invariants::DegreeStats;

pub use search::nelder_mead;

/// Exact rational scalar used for verdicts.
pub type Exact = Ratio<i128>;

/// Arithmetic needed by the quantity formulas.
pub trait Scalar:
    Clone
    + PartialOrd
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
{
    fn int(v: i64) -> Self;
    fn to_f64(&self) -> f64;
}

impl Scalar for f64 {
    fn int(v: i64) -> Self {
        v as f64
    }
    fn to_f64(&self) -> f64 {
        *self
    }
}

impl Scalar for Exact {
    fn int(v: i64) -> Self {
        Ratio::from_integer(v as i128)
    }
    fn to_f64(&self) -> f64 {
        *self.numer() as f64 / *self.denom() as f64
    }
}

fn dom(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

fn int<T: Scalar>(v: usize) -> T {
    T::int(v as i64)
}

/// `γ = (Δ2/(Δ2+1)) · ((t-1)/t)`; `Δ2 = 0` gives 0.
pub fn gamma(t: usize, delta2: usize) -> Ratio<i64> {
    Ratio::new((delta2 * (t - 1)) as i64, ((delta2 + 1) * t) as i64)
}

/// The larger root of `(α-1)² - γα = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AlphaStar {
    pub t: usize,
    pub delta2: usize,
    pub gamma: (i64, i64),
    pub value: f64,
}

fn alpha_star_unchecked(t: usize, delta2: usize) -> AlphaStar {
    let g = gamma(t, delta2);
    let gf = *g.numer() as f64 / *g.denom() as f64;
    AlphaStar {
        t,
        delta2,
        gamma: (*g.numer(), *g.denom()),
        value: 0.5 * (2.0 + gf + (4.0 * gf + gf * gf).sqrt()),
    }
}

pub fn alpha_star(t: usize, delta2: usize) -> Result<AlphaStar> {
    if t < 2 {
        return Err(dom(format!("alpha*: t must be >= 2, got {t}")));
    }
    if delta2 < 1 {
        return Err(dom(format!("alpha*: delta2 must be >= 1, got {delta2}")));
    }
    Ok(alpha_star_unchecked(t, delta2))
}

/// `α > α*(t, Δ2)` and `(α-1)² - α > 0`, decided in `T`'s arithmetic.
///
/// `α > α*` iff `(α-1)² - γα > 0` and `α` lies right of the vertex
/// `1 + γ/2`.
fn check_alpha<T: Scalar>(t: usize, alpha: &T, delta2: usize) -> Result<()> {
    let g = gamma(t, delta2);
    let gam = T::int(*g.numer()) / T::int(*g.denom());
    let one = T::int(1);
    let am1 = alpha.clone() - one.clone();
    let above_vertex = alpha.clone() * T::int(2) > T::int(2) + gam.clone();
    let root_side = am1.clone() * am1.clone() - gam * alpha.clone() > T::int(0);
    if !(above_vertex && root_side) {
        return Err(dom(format!(
            "alpha = {} must exceed alpha* = {}",
            alpha.to_f64(),
            alpha_star_unchecked(t, delta2).value
        )));
    }
    if !(am1.clone() * am1 - alpha.clone() > T::int(0)) {
        return Err(dom(format!(
            "(alpha-1)^2 - alpha must be positive (alpha = {})",
            alpha.to_f64()
        )));
    }
    Ok(())
}

/// `t + α(α-1)/((α-1)² - α)`, the coefficient of `Δ2` shared by the first
/// quantity of both families.
fn lead<T: Scalar>(t: usize, alpha: &T) -> T {
    let one = T::int(1);
    let am1 = alpha.clone() - one;
    int::<T>(t) + alpha.clone() * am1.clone() / (am1.clone() * am1 - alpha.clone())
}

/// The four quantities `n` must exceed under `Δ^∧1 < t`.
pub fn thm1_quantities<T: Scalar>(
    t: usize,
    alpha: T,
    epsilon: T,
    delta1: usize,
    delta2: usize,
) -> Result<[T; 4]> {
    if t < 2 {
        return Err(dom(format!("t must be >= 2, got {t}")));
    }
    let zero = T::int(0);
    let half = T::int(1) / T::int(2);
    if !(epsilon > zero && epsilon < half) {
        return Err(dom(format!("epsilon = {} outside (0, 1/2)", epsilon.to_f64())));
    }
    check_alpha(t, &alpha, delta2)?;
    let (one, two, three) = (T::int(1), T::int(2), T::int(3));
    let (tt, d1, d2) = (int::<T>(t), int::<T>(delta1), int::<T>(delta2));
    let d1d2 = d1.clone() * d2.clone();
    let d2sq = d2.clone() * d2.clone();

    let q1 = lead(t, &alpha) * d2.clone() + d1d2.clone();
    let q2 = (two.clone() * alpha.clone() * tt.clone() + two.clone()) * d2.clone()
        + ((two.clone() * alpha + one.clone()) * tt.clone() - one.clone()) * d2sq.clone()
        + (one.clone() - epsilon.clone()) * d1d2.clone();
    let q3 = one.clone()
        + (two.clone() + epsilon.clone() / (one.clone() - two.clone() * epsilon.clone())) * d2.clone()
        + d1d2.clone();
    let c = (three - epsilon.clone()) / two.clone();
    let q4 = (tt.clone() + c.clone()) * d2
        + c * (tt - one.clone()) * d2sq
        + (one + epsilon) / two * d1d2;
    Ok([q1, q2, q3, q4])
}

/// The two quantities `n` must exceed under `Δ^∧1 < t` and `Δ^△2 < s`.
pub fn thm2_quantities<T: Scalar>(
    t: usize,
    s: usize,
    alpha: T,
    delta1: usize,
    delta2: usize,
) -> Result<[T; 2]> {
    if t < 2 {
        return Err(dom(format!("t must be >= 2, got {t}")));
    }
    if s < 1 {
        return Err(dom(format!("s must be >= 1, got {s}")));
    }
    check_alpha(t, &alpha, delta2)?;
    let (one, two) = (T::int(1), T::int(2));
    let (tt, d1, d2) = (int::<T>(t), int::<T>(delta1), int::<T>(delta2));
    let q5 = lead(t, &alpha) * d2.clone() + d1.clone() * d2.clone();
    let q6 = (two.clone() + two.clone() * alpha.clone() * tt.clone()) * d2.clone()
        + int::<T>(s - 1) * d1
        + ((two * alpha + one.clone()) * tt - one) * d2.clone() * d2;
    Ok([q5, q6])
}

/// `ε = (2t-2)/(4t-3)` with `α = 3`: the parameter choice behind the
/// `Δ1 > 17tΔ2` corollary.
pub fn corollary3_parameters(t: usize) -> (Exact, Exact) {
    (
        Exact::from_integer(3),
        Exact::new(2 * t as i128 - 2, 4 * t as i128 - 3),
    )
}

/// `α = (6t + 1 + sqrt(20t² + 4t + 1)) / (4t)`, used with `s = 1`.
pub fn corollary5_alpha(t: usize) -> f64 {
    let t = t as f64;
    (6.0 * t + 1.0 + (20.0 * t * t + 4.0 * t + 1.0).sqrt()) / (4.0 * t)
}

/// `Δ1Δ2 + Δ1 <= n + 1`, `Δ^∧1 < t` and `Δ1 > 17tΔ2`.
pub fn corollary3_applies(n: usize, delta1: usize, delta2: usize, codeg1: usize, t: usize) -> bool {
    delta1 * delta2 + delta1 <= n + 1 && codeg1 < t && delta1 > 17 * t * delta2
}

/// The BEC bound under `Δ^∧1 < t` and `Δ1 > 17tΔ2`.
pub fn corollary4_applies(n: usize, delta1: usize, delta2: usize, codeg1: usize, t: usize) -> bool {
    bec_condition(n, delta1, delta2) && codeg1 < t && delta1 > 17 * t * delta2
}

/// `Δ1 > (4 + √5) t Δ2` without floating point: with `d = Δ1 - 4tΔ2`, the
/// inequality is `d > 0` and `d² > 5 t² Δ2²`.
pub fn exceeds_four_plus_root5(delta1: usize, t: usize, delta2: usize) -> bool {
    let d = delta1 as i128 - 4 * (t * delta2) as i128;
    let td = (t * delta2) as i128;
    d > 0 && d * d > 5 * td * td
}

/// The BEC bound, `Δ^∧1 < t`, `G2` triangle-free and `Δ1 > (4+√5)tΔ2`.
pub fn corollary5_applies(
    n: usize,
    delta1: usize,
    delta2: usize,
    codeg1: usize,
    triangle_free2: bool,
    t: usize,
) -> bool {
    bec_condition(n, delta1, delta2)
        && codeg1 < t
        && triangle_free2
        && exceeds_four_plus_root5(delta1, t, delta2)
}

/// `2 Δ1 Δ2 < n`.
pub fn sauer_spencer_applies(n: usize, delta1: usize, delta2: usize) -> bool {
    2 * delta1 * delta2 < n
}

/// `(Δ1 + 1)(Δ2 + 1) <= n + 1`.
pub fn bec_condition(n: usize, delta1: usize, delta2: usize) -> bool {
    (delta1 + 1) * (delta2 + 1) <= n + 1
}

/// `k² N / (k + (N-1)(t-1))`: the least possible union size of `N` sets of
/// size `k` with pairwise intersections at most `t - 1`.
pub fn corradi_lower_bound(k: usize, big_n: usize, t: usize) -> Result<Ratio<i64>> {
    if k < 1 || big_n < 1 || t < 1 {
        return Err(dom("corradi bound needs k, N, t >= 1"));
    }
    let (k, nn, t) = (k as i64, big_n as i64, t as i64);
    Ok(Ratio::new(k * k * nn, k + (nn - 1) * (t - 1)))
}

/// `|X| (k - (t-1)) / (k² - (t-1)|X|)`, an upper bound on the number of
/// sets of size at least `k` inside `X` with pairwise intersections at most
/// `t - 1`. Requires `k² > (t-1)|X|`.
pub fn corcor_max_n(size_x: usize, k: usize, t: usize) -> Result<Ratio<i64>> {
    if k < 1 || t < 1 {
        return Err(dom("need k, t >= 1"));
    }
    let (x, k, tm1) = (size_x as i64, k as i64, t as i64 - 1);
    let den = k * k - tm1 * x;
    if den <= 0 {
        return Err(dom(format!("need k^2 > (t-1)|X|: {} <= {}", k * k, tm1 * x)));
    }
    Ok(Ratio::new(x * (k - tm1), den))
}

/// Rational `p / 2^24` nearest to `x`.
pub fn dyadic(x: f64) -> Exact {
    const SCALE: i128 = 1 << 24;
    Exact::new((x * SCALE as f64).round() as i128, SCALE)
}

fn ratio_string(r: &Exact) -> String {
    if *r.denom() == 1 {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// One sufficient condition evaluated on an instance.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConditionEntry {
    pub holds: bool,
    /// Codegree-type hypotheses (`Δ^∧1 < t`, `Δ^△2 < s`).
    pub hypotheses_ok: bool,
    pub alpha: Option<String>,
    pub epsilon: Option<String>,
    /// Quantity values at the recorded parameters, as decimals.
    pub quantities: Vec<f64>,
    /// Same values as exact rationals `p/q`.
    pub exact_quantities: Vec<String>,
    /// `true` when parameters and quantities are exact rationals.
    pub exact: bool,
    /// Name of the largest quantity ("Q1".."Q6").
    pub binding: Option<String>,
    pub note: Option<String>,
}

impl ConditionEntry {
    fn rejected(hypotheses_ok: bool, note: &str) -> Self {
        ConditionEntry {
            holds: false,
            hypotheses_ok,
            alpha: None,
            epsilon: None,
            quantities: vec![],
            exact_quantities: vec![],
            exact: false,
            binding: None,
            note: Some(note.to_string()),
        }
    }

    fn from_exact(n: usize, alpha: &Exact, epsilon: Option<&Exact>, qs: &[Exact], first: usize) -> Self {
        let (imax, max) = qs
            .iter()
            .enumerate()
            .fold((0, &qs[0]), |best, (i, q)| if q > best.1 { (i, q) } else { best });
        ConditionEntry {
            holds: Exact::from_integer(n as i128) > *max,
            hypotheses_ok: true,
            alpha: Some(ratio_string(alpha)),
            epsilon: epsilon.map(ratio_string),
            quantities: qs.iter().map(Scalar::to_f64).collect(),
            exact_quantities: qs.iter().map(ratio_string).collect(),
            exact: true,
            binding: Some(format!("Q{}", first + imax)),
            note: None,
        }
    }
}

fn max_or_inf<const K: usize>(r: Result<[f64; K]>) -> f64 {
    r.map(|q| q.into_iter().fold(f64::NEG_INFINITY, f64::max))
        .unwrap_or(f64::INFINITY)
}

/// Does the four-quantity condition certify packing at this `n`?
///
/// Minimizes `max(Q1..Q4)` over `(α, ε)`: a log-spaced 64×64 grid above
/// `α*` plus the corollary point `(3, (2t-2)/(4t-3))`, refined by
/// Nelder–Mead. The minimizer is snapped to a dyadic rational and all
/// quantities re-evaluated exactly; `holds` compares those against `n`.
pub fn thm1_applies(n: usize, delta1: usize, delta2: usize, codeg1: usize, t: usize) -> ConditionEntry {
    if t < 2 {
        return ConditionEntry::rejected(false, "t must be >= 2");
    }
    if codeg1 >= t {
        return ConditionEntry::rejected(false, "max codegree of G1 is not below t");
    }
    let a_lo = alpha_star_unchecked(t, delta2).value;
    let obj = |a: f64, e: f64| max_or_inf(thm1_quantities(t, a, e, delta1, delta2));

    let (ca, ce) = corollary3_parameters(t);
    let mut best = (ca.to_f64(), ce.to_f64());
    let mut best_val = obj(best.0, best.1);
    for i in 0..64 {
        let a = a_lo + 1e-6 * (8e6f64).powf(i as f64 / 63.0);
        for j in 0..64 {
            let e = 1e-3 + (0.5 - 2e-3) * j as f64 / 63.0;
            let v = obj(a, e);
            if v < best_val {
                best_val = v;
                best = (a, e);
            }
        }
    }
    let (x, v) = nelder_mead(
        |p| obj(p[0], p[1]),
        &[best.0, best.1],
        &[0.05 * best.0, 0.02],
        400,
    );
    if v < best_val {
        best = (x[0], x[1]);
    }

    // Prefer the exact corollary point when it certifies at least as well.
    let mut candidates = vec![(dyadic(best.0), dyadic(best.1))];
    candidates.push((ca, ce));
    let mut fallback = None;
    for (a, e) in candidates {
        if let Ok(qs) = thm1_quantities(t, a, e, delta1, delta2) {
            let entry = ConditionEntry::from_exact(n, &a, Some(&e), &qs, 1);
            if entry.holds {
                return entry;
            }
            fallback.get_or_insert(entry);
        }
    }
    fallback.unwrap_or_else(|| ConditionEntry::rejected(true, "no admissible parameters"))
}

/// Does the two-quantity condition certify packing at this `n`? Same search
/// as [`thm1_applies`] over `α` alone, seeded with the `s = 1` corollary
/// choice of `α`.
pub fn thm2_applies(
    n: usize,
    delta1: usize,
    delta2: usize,
    codeg1: usize,
    adjcodeg2: usize,
    t: usize,
    s: usize,
) -> ConditionEntry {
    if t < 2 || s < 1 {
        return ConditionEntry::rejected(false, "need t >= 2 and s >= 1");
    }
    if codeg1 >= t || adjcodeg2 >= s {
        return ConditionEntry::rejected(false, "codegree hypotheses fail");
    }
    let a_lo = alpha_star_unchecked(t, delta2).value;
    let obj = |a: f64| max_or_inf(thm2_quantities(t, s, a, delta1, delta2));
    let mut best = corollary5_alpha(t);
    let mut best_val = obj(best);
    for i in 0..256 {
        let a = a_lo + 1e-6 * (8e6f64).powf(i as f64 / 255.0);
        let v = obj(a);
        if v < best_val {
            best_val = v;
            best = a;
        }
    }
    let (x, v) = nelder_mead(|p| obj(p[0]), &[best], &[0.05 * best], 200);
    if v < best_val {
        best = x[0];
    }
    let a = dyadic(best);
    match thm2_quantities(t, s, a, delta1, delta2) {
        Ok(qs) => ConditionEntry::from_exact(n, &a, None, &qs, 5),
        Err(_) => ConditionEntry::rejected(true, "no admissible parameters"),
    }
}

/// Every sufficient condition evaluated on one instance.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConditionVerdict {
    pub n: usize,
    pub delta1: usize,
    pub delta2: usize,
    pub codeg1: usize,
    pub adjcodeg2: usize,
    pub t: usize,
    pub s: usize,
    pub thm1: ConditionEntry,
    pub thm2: ConditionEntry,
    pub corollary3: bool,
    pub corollary4: bool,
    pub corollary5: bool,
    pub sauer_spencer: bool,
    pub bec: bool,
}

impl ConditionVerdict {
    /// `t` defaults to `max(Δ^∧1 + 1, 2)` and `s` to `Δ^△2 + 1`, the
    /// smallest values for which the codegree hypotheses hold.
    pub fn evaluate(g1: &Graph, g2: &Graph, t: Option<usize>, s: Option<usize>) -> Result<Self> {
        if g1.n() != g2.n() {
            return Err(Error::SizeMismatch(g1.n(), g2.n()));
        }
        let s1 = DegreeStats::of(g1);
        let s2 = DegreeStats::of(g2);
        Ok(Self::from_stats(g1.n(), &s1, &s2, t, s))
    }

    pub fn from_stats(
        n: usize,
        s1: &DegreeStats,
        s2: &DegreeStats,
        t: Option<usize>,
        s: Option<usize>,
    ) -> Self {
        let (d1, d2) = (s1.max_degree, s2.max_degree);
        let codeg1 = s1.max_codegree;
        let adj2 = s2.max_adjacent_codegree;
        let t = t.unwrap_or((codeg1 + 1).max(2));
        let s = s.unwrap_or(adj2 + 1);
        ConditionVerdict {
            n,
            delta1: d1,
            delta2: d2,
            codeg1,
            adjcodeg2: adj2,
            t,
            s,
            thm1: thm1_applies(n, d1, d2, codeg1, t),
            thm2: thm2_applies(n, d1, d2, codeg1, adj2, t, s),
            corollary3: t >= 2 && corollary3_applies(n, d1, d2, codeg1, t),
            corollary4: t >= 2 && corollary4_applies(n, d1, d2, codeg1, t),
            corollary5: t >= 2 && corollary5_applies(n, d1, d2, codeg1, adj2 == 0, t),
            sauer_spencer: sauer_spencer_applies(n, d1, d2),
            bec: bec_condition(n, d1, d2),
        }
    }

    /// True iff some condition other than the conjectural BEC bound holds.
    pub fn any_proven(&self) -> bool {
        self.thm1.holds
            || self.thm2.holds
            || self.corollary3
            || self.corollary4
            || self.corollary5
            || self.sauer_spencer
    }
}
