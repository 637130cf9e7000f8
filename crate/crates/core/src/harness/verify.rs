use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{make_record, Outcome, ReportRecord, Solver, VerdictCache};
use crate::conditions::ConditionVerdict;
use crate::error::{Error, Result};
use crate::generators::{enumerate_graphs, matching, random_bounded_degree, random_k2t_free, ENUMERATION_CAP};
use crate::graph::Graph;
use crate::invariants::DegreeStats;
use crate::rng::SplitMix64;

const K2T_ATTEMPT_CAP: usize = 2000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum VerifyCondition {
    SauerSpencer,
    Bec,
    Thm1,
    Thm2,
    Corollary3,
    Corollary4,
    Corollary5,
}

impl VerifyCondition {
    /// Cheap conditions are decided from degrees alone, without the
    /// parameter search.
    fn holds(self, n: usize, s1: &DegreeStats, s2: &DegreeStats, verdict: impl FnOnce() -> ConditionVerdict) -> bool {
        let (d1, d2) = (s1.max_degree, s2.max_degree);
        match self {
            VerifyCondition::SauerSpencer => crate::conditions::sauer_spencer_applies(n, d1, d2),
            VerifyCondition::Bec => crate::conditions::bec_condition(n, d1, d2),
            VerifyCondition::Thm1 => verdict().thm1.holds,
            VerifyCondition::Thm2 => verdict().thm2.holds,
            VerifyCondition::Corollary3 => verdict().corollary3,
            VerifyCondition::Corollary4 => verdict().corollary4,
            VerifyCondition::Corollary5 => verdict().corollary5,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum VerifyMode {
    /// Every ordered pair of labeled graphs on `n` vertices.
    Exhaustive,
    /// `trials` random pairs.
    Sample,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum G1Source {
    K2tFree { dmax: usize, t: usize },
    Bounded { dmax: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum G2Source {
    Matching,
    Bounded { dmax: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub mode: VerifyMode,
    pub condition: VerifyCondition,
    pub n: usize,
    pub trials: usize,
    pub seed: u64,
    pub g1: G1Source,
    pub g2: G2Source,
    pub solver: Solver,
    pub budget: u64,
    pub t: Option<usize>,
    pub s: Option<usize>,
    /// Keep a record for every instance satisfying the condition, not only
    /// for failures and inconclusive runs.
    pub keep_records: bool,
}

impl ExperimentConfig {
    pub fn exhaustive(n: usize, condition: VerifyCondition) -> Self {
        ExperimentConfig {
            mode: VerifyMode::Exhaustive,
            condition,
            n,
            trials: 0,
            seed: 0,
            g1: G1Source::Bounded { dmax: n.saturating_sub(1) },
            g2: G2Source::Matching,
            solver: Solver::Exact,
            budget: 1 << 20,
            t: None,
            s: None,
            keep_records: false,
        }
    }

    pub fn sample(n: usize, trials: usize, seed: u64, condition: VerifyCondition, g1: G1Source, g2: G2Source) -> Self {
        ExperimentConfig {
            mode: VerifyMode::Sample,
            trials,
            seed,
            g1,
            g2,
            ..Self::exhaustive(n, condition)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifySummary {
    pub config: ExperimentConfig,
    /// Pairs examined.
    pub instances: u64,
    /// Pairs satisfying the condition.
    pub satisfying: u64,
    pub packed: u64,
    /// Satisfying pairs proven not to pack.
    pub failures: u64,
    pub inconclusive: u64,
    pub records: Vec<ReportRecord>,
}

impl VerifySummary {
    pub fn ok(&self) -> bool {
        self.failures == 0 && self.inconclusive == 0
    }
}

struct Tally {
    instances: u64,
    satisfying: u64,
    packed: u64,
    failures: u64,
    inconclusive: u64,
    records: Vec<ReportRecord>,
}

impl Tally {
    fn empty() -> Self {
        Tally { instances: 0, satisfying: 0, packed: 0, failures: 0, inconclusive: 0, records: Vec::new() }
    }

    fn merge(mut self, other: Tally) -> Tally {
        self.instances += other.instances;
        self.satisfying += other.satisfying;
        self.packed += other.packed;
        self.failures += other.failures;
        self.inconclusive += other.inconclusive;
        self.records.extend(other.records);
        self
    }
}

struct Ctx<'a> {
    cfg: &'a ExperimentConfig,
    cache: VerdictCache,
}

impl Ctx<'_> {
    fn run_pair(&self, instance: impl FnOnce() -> String, g1: &Graph, g2: &Graph, s1: &DegreeStats, s2: &DegreeStats, seed: u64) -> Result<Tally> {
        let cfg = self.cfg;
        let n = g1.n();
        let mut tally = Tally::empty();
        tally.instances = 1;
        let verdict = || self.cache.get(n, s1, s2, cfg.t, cfg.s);
        if !cfg.condition.holds(n, s1, s2, verdict) {
            return Ok(tally);
        }
        tally.satisfying = 1;
        let rec = make_record(instance(), g1, g2, &verdict(), cfg.solver, cfg.budget, seed)?;
        match rec.body.outcome {
            Outcome::Packs => tally.packed = 1,
            Outcome::No => tally.failures = 1,
            Outcome::Inconclusive => tally.inconclusive = 1,
        }
        if cfg.keep_records || rec.body.outcome != Outcome::Packs {
            tally.records.push(rec);
        }
        Ok(tally)
    }
}

pub fn run_verify(cfg: &ExperimentConfig) -> Result<VerifySummary> {
    if cfg.budget == 0 {
        return Err(Error::Domain("budget must be positive".into()));
    }
    if cfg.mode == VerifyMode::Sample && cfg.trials == 0 {
        return Err(Error::Domain("sample mode needs at least one trial".into()));
    }
    let ctx = Ctx { cfg, cache: VerdictCache::default() };
    let tally = match cfg.mode {
        VerifyMode::Exhaustive => exhaustive(&ctx)?,
        VerifyMode::Sample => sample(&ctx)?,
    };
    Ok(VerifySummary {
        config: cfg.clone(),
        instances: tally.instances,
        satisfying: tally.satisfying,
        packed: tally.packed,
        failures: tally.failures,
        inconclusive: tally.inconclusive,
        records: tally.records,
    })
}

fn exhaustive(ctx: &Ctx) -> Result<Tally> {
    let n = ctx.cfg.n;
    if n > ENUMERATION_CAP {
        return Err(Error::EnumerationCap { n, max: ENUMERATION_CAP });
    }
    let graphs: Vec<(Graph, DegreeStats)> = enumerate_graphs(n)?
        .map(|g| {
            let s = DegreeStats::of(&g);
            (g, s)
        })
        .collect();
    // indexed collect keeps the output order independent of scheduling
    let rows: Vec<Result<Tally>> = (0..graphs.len())
        .into_par_iter()
        .map(|i| {
            let (g1, s1) = &graphs[i];
            let mut acc = Tally::empty();
            for (j, (g2, s2)) in graphs.iter().enumerate() {
                let t = ctx.run_pair(|| format!("n{n}-{i}-{j}"), g1, g2, s1, s2, 0)?;
                acc = acc.merge(t);
            }
            Ok(acc)
        })
        .collect();
    rows.into_iter().try_fold(Tally::empty(), |acc, r| Ok(acc.merge(r?)))
}

fn sample(ctx: &Ctx) -> Result<Tally> {
    let cfg = ctx.cfg;
    let rows: Vec<Result<Tally>> = (0..cfg.trials as u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = SplitMix64::new(SplitMix64::derive(cfg.seed, i));
            let g1 = match cfg.g1 {
                G1Source::K2tFree { dmax, t } => random_k2t_free(cfg.n, dmax, t, rng.next(), K2T_ATTEMPT_CAP)?,
                G1Source::Bounded { dmax } => random_bounded_degree(cfg.n, dmax, rng.next())?,
            };
            let g2 = match cfg.g2 {
                G2Source::Matching => matching(cfg.n)?,
                G2Source::Bounded { dmax } => random_bounded_degree(cfg.n, dmax, rng.next())?,
            };
            let (s1, s2) = (DegreeStats::of(&g1), DegreeStats::of(&g2));
            ctx.run_pair(|| format!("trial-{i}"), &g1, &g2, &s1, &s2, rng.next())
        })
        .collect();
    rows.into_iter().try_fold(Tally::empty(), |acc, r| Ok(acc.merge(r?)))
}
