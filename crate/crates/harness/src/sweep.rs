//! Uniformity sweep over full Singer sets.

use std::io::Write;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sidonlab_core::constructions::cache::SingerCache;
use sidonlab_core::constructions::{singer_with_limits, Limits};
use sidonlab_core::fourier::{uniformity_norm, uniformity_rhs, RhsVariant};

use crate::error::{HarnessError, Result};

pub const CSV_SCHEMA_VERSION: u32 = 1;
pub const SWEEP_HEADER: &str = "q,N,set_size,deviation,uniformity_value,uniformity_error_bound,\
rhs_basic,rhs_improved,ratio_basic,ratio_improved,wall_time_ms";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub q: u64,
    #[serde(rename = "N")]
    pub n: u64,
    pub set_size: usize,
    /// `||S| - N^{1/2}|`.
    pub deviation: f64,
    pub uniformity_value: f64,
    pub uniformity_error_bound: f64,
    pub rhs_basic: f64,
    pub rhs_improved: f64,
    pub ratio_basic: f64,
    pub ratio_improved: f64,
    pub wall_time_ms: f64,
}

impl SweepRow {
    fn csv_line(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{},{:.3}",
            self.q,
            self.n,
            self.set_size,
            self.deviation,
            self.uniformity_value,
            self.uniformity_error_bound,
            self.rhs_basic,
            self.rhs_improved,
            self.ratio_basic,
            self.ratio_improved,
            self.wall_time_ms
        )
    }
}

/// One sweep entry; failures keep their `q` so they can be reported in place.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepEntry {
    pub q: u64,
    pub row: std::result::Result<SweepRow, String>,
}

pub fn sweep_row(q: u64, oversample: u64, cache: Option<&SingerCache>) -> Result<SweepRow> {
    let start = Instant::now();
    let limits = Limits::default();
    let pds = match cache {
        Some(c) => c.get_or_build(q, &limits)?.0,
        None => singer_with_limits(q, &limits)?,
    };
    let set = pds.full_embedding();
    let n = set.ambient() as u64;
    let est = uniformity_norm(&set, oversample)?;
    let rhs_basic = uniformity_rhs(n, set.len(), RhsVariant::Basic);
    let rhs_improved = uniformity_rhs(n, set.len(), RhsVariant::Improved);
    Ok(SweepRow {
        q,
        n,
        set_size: set.len(),
        deviation: set.deviation(),
        uniformity_value: est.value,
        uniformity_error_bound: est.error_bound,
        rhs_basic,
        rhs_improved,
        ratio_basic: est.value / rhs_basic,
        ratio_improved: est.value / rhs_improved,
        wall_time_ms: start.elapsed().as_secs_f64() * 1e3,
    })
}

/// Computes rows in parallel; entries come back sorted by `q`, duplicates
/// removed.
pub fn uniformity_sweep(
    qs: &[u64],
    oversample: u64,
    cache: Option<&SingerCache>,
) -> Vec<SweepEntry> {
    let mut qs = qs.to_vec();
    qs.sort_unstable();
    qs.dedup();
    qs.par_iter()
        .map(|&q| SweepEntry {
            q,
            row: sweep_row(q, oversample, cache).map_err(|e| e.to_string()),
        })
        .collect()
}

/// Header comment, column header, then one line per entry; failed entries
/// become `# failed q=…: reason` comment lines.
pub fn write_sweep_csv<W: Write>(mut out: W, entries: &[SweepEntry]) -> std::io::Result<()> {
    writeln!(out, "# schema_version={CSV_SCHEMA_VERSION}")?;
    writeln!(out, "{SWEEP_HEADER}")?;
    for e in entries {
        match &e.row {
            Ok(row) => writeln!(out, "{}", row.csv_line())?,
            Err(reason) => writeln!(out, "# failed q={}: {reason}", e.q)?,
        }
    }
    Ok(())
}

/// Reads rows written by [`write_sweep_csv`], skipping comments.
pub fn parse_sweep_csv(input: &str) -> Result<Vec<SweepRow>> {
    let bad = |line: &str| HarnessError::Failure(format!("malformed sweep line {line:?}"));
    let mut lines = input
        .lines()
        .filter(|l| !l.starts_with('#') && !l.trim().is_empty());
    match lines.next() {
        Some(h) if h == SWEEP_HEADER => {}
        other => return Err(bad(other.unwrap_or(""))),
    }
    lines
        .map(|line| {
            let f: Vec<&str> = line.split(',').collect();
            if f.len() != 11 {
                return Err(bad(line));
            }
            let u = |i: usize| f[i].parse::<u64>().map_err(|_| bad(line));
            let x = |i: usize| f[i].parse::<f64>().map_err(|_| bad(line));
            Ok(SweepRow {
                q: u(0)?,
                n: u(1)?,
                set_size: u(2)? as usize,
                deviation: x(3)?,
                uniformity_value: x(4)?,
                uniformity_error_bound: x(5)?,
                rhs_basic: x(6)?,
                rhs_improved: x(7)?,
                ratio_basic: x(8)?,
                ratio_improved: x(9)?,
                wall_time_ms: x(10)?,
            })
        })
        .collect()
}

/// Comma-separated list of moduli; an empty string is an empty list.
pub fn parse_q_list(s: &str) -> Result<Vec<u64>> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<u64>()
                .map_err(|_| HarnessError::Usage(format!("bad q value {t:?}")))
        })
        .collect()
}
