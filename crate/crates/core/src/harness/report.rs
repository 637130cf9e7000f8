use std::io::{BufRead, Write};

use super::{Outcome, ReportRecord, Solver};
use crate::error::{Error, Result};

fn io_err(e: impl std::fmt::Display) -> Error {
    Error::Domain(format!("report i/o: {e}"))
}

/// Reads JSON-lines records, skipping blank lines.
pub fn read_records<R: BufRead>(r: R) -> Result<Vec<ReportRecord>> {
    let mut out = Vec::new();
    for (i, line) in r.lines().enumerate() {
        let line = line.map_err(io_err)?;
        if line.trim().is_empty() {
            continue;
        }
        let rec = serde_json::from_str(&line).map_err(|e| Error::Domain(format!("line {}: {e}", i + 1)))?;
        out.push(rec);
    }
    Ok(out)
}

pub fn write_records<W: Write>(mut w: W, records: &[ReportRecord]) -> Result<()> {
    for r in records {
        let line = serde_json::to_string(r).map_err(io_err)?;
        writeln!(w, "{line}").map_err(io_err)?;
    }
    Ok(())
}

const COLUMNS: [&str; 19] = [
    "instance", "n", "delta1", "delta2", "codeg1", "adjcodeg2", "t", "s", "thm1", "thm2", "corollary3",
    "corollary4", "corollary5", "sauer_spencer", "bec", "solver", "outcome", "nodes", "witness",
];

fn solver_name(s: Solver) -> &'static str {
    match s {
        Solver::Exact => "exact",
        Solver::LocalSearch => "local-search",
        Solver::Both => "both",
    }
}

fn outcome_name(o: Outcome) -> &'static str {
    match o {
        Outcome::Packs => "packs",
        Outcome::No => "no",
        Outcome::Inconclusive => "inconclusive",
    }
}

/// One row per record; the witness is space-separated. An empty input still
/// yields the header row.
pub fn records_to_csv(records: &[ReportRecord]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(COLUMNS).map_err(io_err)?;
    for r in records {
        let b = &r.body;
        let v = &b.verdict;
        let witness = b
            .witness
            .as_ref()
            .map(|w| w.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "))
            .unwrap_or_default();
        let row = [
            b.instance.clone(),
            b.n.to_string(),
            b.delta1.to_string(),
            b.delta2.to_string(),
            b.codeg1.to_string(),
            b.adjcodeg2.to_string(),
            v.t.to_string(),
            v.s.to_string(),
            v.thm1.to_string(),
            v.thm2.to_string(),
            v.corollary3.to_string(),
            v.corollary4.to_string(),
            v.corollary5.to_string(),
            v.sauer_spencer.to_string(),
            v.bec.to_string(),
            solver_name(b.solver).to_string(),
            outcome_name(b.outcome).to_string(),
            b.nodes.to_string(),
            witness,
        ];
        w.write_record(&row).map_err(io_err)?;
    }
    let bytes = w.into_inner().map_err(io_err)?;
    String::from_utf8(bytes).map_err(io_err)
}

pub fn records_to_json(records: &[ReportRecord]) -> Result<String> {
    serde_json::to_string_pretty(records).map_err(io_err)
}
