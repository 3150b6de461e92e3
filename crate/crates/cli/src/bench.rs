//! Timing harness for the deciders over grids of `(dim, count)`.
//!
//! For every grid point the harness draws `trials` seeded pairs, half of
//! them equivalent by construction and half sampled independently, and
//! times every applicable method on each pair. Each timing is the median
//! of `repeats` batches of `inner` calls, measured on the calling thread
//! with a monotonic clock around the decision call only.

use std::fs::File;
use std::hint::black_box;
use std::io::{BufWriter, Write};
use std::path::Path;
use std::str::FromStr;
use std::time::{Duration, Instant};

use frame_equiv::corpus::{frame_pair, item_seed, FramePair, PairKind};
use frame_equiv::{
    abs_gram_multiset, angle_equivalent, ip_equivalent, oracle_equivalent, Decision, OracleConfig,
};
use serde::Serialize;

use crate::error::{CliError, Result};

/// Header of the per-pair CSV.
pub const RECORD_HEADER: &str = "method,dim,count,trial,seed,equivalent,elapsed_micros";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BenchMethod {
    Angle,
    #[serde(rename = "innerprod")]
    InnerProduct,
    Oracle,
}

impl BenchMethod {
    pub const ALL: [BenchMethod; 3] = [BenchMethod::Angle, BenchMethod::InnerProduct, BenchMethod::Oracle];

    pub fn as_str(self) -> &'static str {
        match self {
            BenchMethod::Angle => "angle",
            BenchMethod::InnerProduct => "innerprod",
            BenchMethod::Oracle => "oracle",
        }
    }
}

impl FromStr for BenchMethod {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "angle" => Ok(BenchMethod::Angle),
            "innerprod" | "ip" => Ok(BenchMethod::InnerProduct),
            "oracle" => Ok(BenchMethod::Oracle),
            other => Err(format!("unknown bench method {other:?}")),
        }
    }
}

#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub dims: Vec<usize>,
    pub counts: Vec<usize>,
    pub trials: usize,
    pub seed: u64,
    pub methods: Vec<BenchMethod>,
    pub repeats: usize,
    pub inner: usize,
    pub tol: f64,
    /// The oracle is skipped above this many vectors.
    pub oracle_max_count: usize,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig {
            dims: vec![2],
            counts: (1..=30).map(|i| 3 * i).collect(),
            trials: 20,
            seed: 0,
            methods: BenchMethod::ALL.to_vec(),
            repeats: 3,
            inner: 1,
            tol: frame_equiv::DEFAULT_TOL,
            oracle_max_count: OracleConfig::default().max_count,
        }
    }
}

impl BenchConfig {
    fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(CliError::Usage(m));
        if self.dims.is_empty() || self.counts.is_empty() || self.methods.is_empty() {
            return bad("dims, counts and methods must be non-empty".into());
        }
        if self.trials == 0 || self.repeats == 0 || self.inner == 0 {
            return bad("trials, repeats and inner must be positive".into());
        }
        for &n in &self.dims {
            for &k in &self.counts {
                if n == 0 || k < n {
                    return bad(format!("invalid grid point dim={n} count={k}: need count >= dim >= 1"));
                }
            }
        }
        Ok(())
    }

    fn applies(&self, method: BenchMethod, dim: usize, count: usize) -> bool {
        match method {
            BenchMethod::Angle => dim == 2,
            BenchMethod::InnerProduct => true,
            BenchMethod::Oracle => count <= self.oracle_max_count,
        }
    }
}

/// One timed decision.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchRecord {
    pub method: BenchMethod,
    pub dim: usize,
    pub count: usize,
    pub trial: usize,
    pub seed: u64,
    /// Ground truth for the pair.
    pub equivalent: bool,
    pub elapsed_micros: u64,
    #[serde(skip)]
    pub elapsed_nanos: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SummaryRow {
    pub method: BenchMethod,
    pub dim: usize,
    pub count: usize,
    pub pairs: usize,
    pub mean_micros: f64,
    pub median_micros: f64,
}

#[derive(Debug, Clone, Default)]
pub struct BenchReport {
    pub records: Vec<BenchRecord>,
    pub summary: Vec<SummaryRow>,
}

fn time_call<T>(repeats: usize, inner: usize, mut call: impl FnMut() -> T) -> Duration {
    let mut samples: Vec<Duration> = (0..repeats)
        .map(|_| {
            let start = Instant::now();
            for _ in 0..inner {
                black_box(call());
            }
            start.elapsed() / inner as u32
        })
        .collect();
    samples.sort();
    samples[samples.len() / 2]
}

fn ground_truth(pair: &FramePair, cfg: &BenchConfig) -> Result<bool> {
    if pair.kind == PairKind::Constructed {
        return Ok(true);
    }
    if pair.f.count() <= cfg.oracle_max_count {
        let oracle_cfg = OracleConfig {
            tol: cfg.tol,
            max_count: cfg.oracle_max_count,
        };
        Ok(oracle_equivalent(&pair.f, &pair.g, &oracle_cfg)?.equivalent)
    } else {
        Ok(ip_equivalent(&pair.f, &pair.g, cfg.tol)?.decision != Decision::NotEquivalent)
    }
}

fn time_method(method: BenchMethod, pair: &FramePair, cfg: &BenchConfig) -> Result<Duration> {
    let (f, g, tol) = (&pair.f, &pair.g, cfg.tol);
    let oracle_cfg = OracleConfig {
        tol,
        max_count: cfg.oracle_max_count,
    };
    // surface errors once, outside the timed region
    match method {
        BenchMethod::Angle => drop(angle_equivalent(f, g, tol)?),
        BenchMethod::Oracle => drop(oracle_equivalent(f, g, &oracle_cfg)?),
        BenchMethod::InnerProduct => {}
    }
    Ok(match method {
        BenchMethod::Angle => time_call(cfg.repeats, cfg.inner, || angle_equivalent(f, g, tol)),
        BenchMethod::InnerProduct => time_call(cfg.repeats, cfg.inner, || {
            abs_gram_multiset(f).matches(&abs_gram_multiset(g), tol)
        }),
        BenchMethod::Oracle => time_call(cfg.repeats, cfg.inner, || oracle_equivalent(f, g, &oracle_cfg)),
    })
}

pub fn run_bench(cfg: &BenchConfig) -> Result<BenchReport> {
    cfg.validate()?;
    let mut records = Vec::new();
    for &dim in &cfg.dims {
        for &count in &cfg.counts {
            let point_seed = item_seed(cfg.seed, ((dim as u64) << 32) | count as u64);
            let constructed = cfg.trials.div_ceil(2);
            for trial in 0..cfg.trials {
                let kind = if trial < constructed {
                    PairKind::Constructed
                } else {
                    PairKind::Independent
                };
                let seed = item_seed(point_seed, trial as u64);
                let pair = frame_pair(dim, count, kind, seed)?;
                let equivalent = ground_truth(&pair, cfg)?;
                for &method in &cfg.methods {
                    if !cfg.applies(method, dim, count) {
                        continue;
                    }
                    let elapsed = time_method(method, &pair, cfg)?;
                    let nanos = u64::try_from(elapsed.as_nanos()).unwrap_or(u64::MAX);
                    records.push(BenchRecord {
                        method,
                        dim,
                        count,
                        trial,
                        seed,
                        equivalent,
                        elapsed_micros: (nanos + 500) / 1000,
                        elapsed_nanos: nanos,
                    });
                }
            }
        }
    }
    let summary = summarize(&records);
    Ok(BenchReport { records, summary })
}

/// Mean and median per `(method, dim, count)`, sorted by that key.
pub fn summarize(records: &[BenchRecord]) -> Vec<SummaryRow> {
    let mut groups: std::collections::BTreeMap<(BenchMethod, usize, usize), Vec<u64>> = Default::default();
    for r in records {
        groups.entry((r.method, r.dim, r.count)).or_default().push(r.elapsed_nanos);
    }
    groups
        .into_iter()
        .map(|((method, dim, count), mut nanos)| {
            nanos.sort_unstable();
            let mean = nanos.iter().map(|&v| v as f64).sum::<f64>() / nanos.len() as f64;
            let mid = nanos.len() / 2;
            let median = if nanos.len() % 2 == 1 {
                nanos[mid] as f64
            } else {
                (nanos[mid - 1] + nanos[mid]) as f64 / 2.0
            };
            SummaryRow {
                method,
                dim,
                count,
                pairs: nanos.len(),
                mean_micros: mean / 1000.0,
                median_micros: median / 1000.0,
            }
        })
        .collect()
}

fn write_csv<T: Serialize>(path: &Path, rows: &[T]) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    for r in rows {
        w.serialize(r)?;
    }
    w.flush().map_err(|e| CliError::io(path, e))
}

pub fn write_records(path: impl AsRef<Path>, records: &[BenchRecord]) -> Result<()> {
    let path = path.as_ref();
    if records.is_empty() {
        return std::fs::write(path, format!("{RECORD_HEADER}\n")).map_err(|e| CliError::io(path, e));
    }
    write_csv(path, records)
}

pub fn write_summary(path: impl AsRef<Path>, summary: &[SummaryRow]) -> Result<()> {
    write_csv(path.as_ref(), summary)
}

/// Whitespace-separated blocks, one per `(method, dim)` series, separated by
/// two blank lines so gnuplot can address them with `index`.
pub fn write_gnuplot(path: impl AsRef<Path>, summary: &[SummaryRow]) -> Result<()> {
    let path = path.as_ref();
    let io_err = |e| CliError::io(path, e);
    let mut w = BufWriter::new(File::create(path).map_err(io_err)?);
    let mut series: Vec<(BenchMethod, usize)> = summary.iter().map(|r| (r.method, r.dim)).collect();
    series.dedup();
    for (i, (method, dim)) in series.iter().enumerate() {
        if i > 0 {
            writeln!(w, "\n").map_err(io_err)?;
        }
        writeln!(w, "# method={} dim={dim}", method.as_str()).map_err(io_err)?;
        writeln!(w, "# count mean_micros median_micros").map_err(io_err)?;
        for r in summary.iter().filter(|r| r.method == *method && r.dim == *dim) {
            writeln!(w, "{} {} {}", r.count, r.mean_micros, r.median_micros).map_err(io_err)?;
        }
    }
    w.flush().map_err(io_err)
}

/// Parses `3,6,9` or an inclusive range `start:end[:step]`.
pub fn parse_list(s: &str) -> std::result::Result<Vec<usize>, String> {
    let num = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("{t:?}: {e}"));
    if s.contains(':') {
        let parts: Vec<&str> = s.split(':').collect();
        let (start, end, step) = match parts.as_slice() {
            [a, b] => (num(a)?, num(b)?, 1),
            [a, b, c] => (num(a)?, num(b)?, num(c)?),
            _ => return Err(format!("bad range {s:?}, expected start:end[:step]")),
        };
        if step == 0 || end < start {
            return Err(format!("bad range {s:?}"));
        }
        Ok((start..=end).step_by(step).collect())
    } else {
        s.split(',').map(num).collect()
    }
}
