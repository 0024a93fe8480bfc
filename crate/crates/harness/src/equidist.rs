//! Discrepancy probes over intervals, residue classes and Bohr sets.

use std::io::Write;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sidonlab_core::equidistribution::{
    bohr_discrepancy, bohr_rhs, cilleruelo_rhs, interval_discrepancy, residue_discrepancy,
    residue_rhs, BohrSpec, Frequency, IntInterval,
};
use sidonlab_core::IntegerSet;

use crate::error::{HarnessError, Result};
use crate::sweep::CSV_SCHEMA_VERSION;

pub const EQUIDIST_HEADER: &str = "N,set_id,probe_kind,probe_params,measured,paper_rhs,ratio";

#[derive(Debug, Clone, PartialEq)]
pub struct ProbeRow {
    pub n: i64,
    pub set_id: String,
    pub kind: &'static str,
    pub params: String,
    /// Signed discrepancy.
    pub measured: f64,
    /// Error term predicted for this probe, without implicit constant.
    pub rhs: f64,
    /// `|measured| / rhs`.
    pub ratio: f64,
}

impl ProbeRow {
    fn new(
        set: &IntegerSet,
        set_id: &str,
        kind: &'static str,
        params: String,
        measured: f64,
        rhs: f64,
    ) -> Self {
        ProbeRow {
            n: set.ambient(),
            set_id: set_id.to_string(),
            kind,
            params,
            measured,
            rhs,
            ratio: measured.abs() / rhs,
        }
    }
}

/// All intervals `[k·2^j + 1, (k+1)·2^j]` inside `[1, N]`.
pub fn dyadic_intervals(n: i64) -> Vec<IntInterval> {
    let mut out = Vec::new();
    let mut len = 1;
    while len <= n {
        out.extend((0..n / len).map(|k| IntInterval::new(k * len + 1, (k + 1) * len)));
        len *= 2;
    }
    out
}

/// `count` intervals with endpoints drawn uniformly from `[1, N]` by
/// ChaCha8 seeded with `seed`.
pub fn random_intervals(n: i64, count: usize, seed: u64) -> Vec<IntInterval> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let (a, b) = (rng.gen_range(1..=n), rng.gen_range(1..=n));
            IntInterval::new(a.min(b), a.max(b))
        })
        .collect()
}

pub fn interval_rows(
    set: &IntegerSet,
    set_id: &str,
    intervals: &[IntInterval],
) -> Result<Vec<ProbeRow>> {
    intervals
        .iter()
        .map(|i| {
            let measured = interval_discrepancy(set, i)?;
            let rhs = cilleruelo_rhs(set.ambient() as u64, set.len(), i.len() as u64);
            Ok(ProbeRow::new(
                set,
                set_id,
                "interval",
                format!("lo={};hi={}", i.lo, i.hi),
                measured,
                rhs,
            ))
        })
        .collect()
}

/// Rows for every `(q, a)` with `1 <= q <= max_q`, `0 <= a < q`.
pub fn residue_rows(set: &IntegerSet, set_id: &str, max_q: u64) -> Result<Vec<ProbeRow>> {
    let rhs = residue_rhs(set.ambient() as u64, set.len());
    let mut rows = Vec::new();
    for q in 1..=max_q {
        for a in 0..q as i64 {
            let measured = residue_discrepancy(set, q, a)?;
            rows.push(ProbeRow::new(
                set,
                set_id,
                "residue",
                format!("q={q};a={a}"),
                measured,
                rhs,
            ));
        }
    }
    Ok(rows)
}

pub fn bohr_rows(set: &IntegerSet, set_id: &str, specs: &[BohrSpec]) -> Result<Vec<ProbeRow>> {
    specs
        .iter()
        .map(|b| {
            let measured = bohr_discrepancy(set, b)?;
            let rhs = bohr_rhs(set.ambient() as u64, set.len(), b.dim(), b.rho);
            let alpha: Vec<String> = b.alpha.iter().map(format_frequency).collect();
            let params = format!("alpha={};rho={}", alpha.join("|"), b.rho);
            Ok(ProbeRow::new(set, set_id, "bohr", params, measured, rhs))
        })
        .collect()
}

fn format_frequency(f: &Frequency) -> String {
    match f {
        Frequency::Real(a) => a.to_string(),
        Frequency::Rational { num, den } => format!("{num}/{den}"),
    }
}

/// `0.5`, or `p/q` for an exact rational frequency reduced into `[0, 1)`.
pub fn parse_frequency(s: &str) -> Result<Frequency> {
    let bad = || HarnessError::Usage(format!("bad frequency {s:?}"));
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let num: i64 = p.trim().parse().map_err(|_| bad())?;
            let den: u64 = q.trim().parse().map_err(|_| bad())?;
            if den == 0 {
                return Err(bad());
            }
            Ok(Frequency::Rational {
                num: num.rem_euclid(den as i64),
                den,
            })
        }
        None => s.parse().map(Frequency::Real).map_err(|_| bad()),
    }
}

/// `ALPHA[,ALPHA…]:RHO`, e.g. `0.5,1/3:0.1`.
pub fn parse_bohr_spec(s: &str) -> Result<BohrSpec> {
    let (alpha, rho) = s.split_once(':').ok_or_else(|| {
        HarnessError::Usage(format!("Bohr spec {s:?} needs the form ALPHA[,ALPHA…]:RHO"))
    })?;
    let alpha = alpha
        .split(',')
        .map(parse_frequency)
        .collect::<Result<Vec<_>>>()?;
    let rho: f64 = rho
        .trim()
        .parse()
        .map_err(|_| HarnessError::Usage(format!("bad radius {rho:?}")))?;
    Ok(BohrSpec::new(alpha, rho)?)
}

pub fn write_equidist_csv<W: Write>(mut out: W, rows: &[ProbeRow]) -> std::io::Result<()> {
    writeln!(out, "# schema_version={CSV_SCHEMA_VERSION}")?;
    writeln!(out, "{EQUIDIST_HEADER}")?;
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{},{},{}",
            r.n, r.set_id, r.kind, r.params, r.measured, r.rhs, r.ratio
        )?;
    }
    Ok(())
}
