//! Microbenchmark: every point evaluated `inner_sweeps` times per
//! repetition, keeping the fastest of `repetitions` runs.
//!
//! Points are timed as one mixed sweep and again grouped by region. Each
//! repetition folds the results into a checksum; a repetition whose
//! checksum differs from the first marks the report unstable.

use std::fmt;
use std::hint::black_box;
use std::io::Write;
use std::time::Instant;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::grid::{GridError, TestPoint};
use crate::{Evaluator, RegionTag};

pub const DEFAULT_INNER_SWEEPS: usize = 50;
pub const DEFAULT_REPETITIONS: usize = 21;

#[derive(Debug, Clone, PartialEq)]
pub struct RegionTiming {
    pub region: RegionTag,
    pub points: usize,
    pub ns_per_eval_min: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchReport {
    pub points: usize,
    pub inner_sweeps: usize,
    pub repetitions: usize,
    pub ns_per_eval_min: f64,
    pub regions: Vec<RegionTiming>,
    pub checksum: f64,
    pub checksum_stable: bool,
    /// Wall-clock ns per evaluation with all threads, when requested.
    pub parallel_ns_per_eval: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BenchError {
    NoPoints,
    ZeroCount,
}

impl fmt::Display for BenchError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BenchError::NoPoints => f.write_str("no points to benchmark"),
            BenchError::ZeroCount => f.write_str("inner sweeps and repetitions must be at least 1"),
        }
    }
}

impl std::error::Error for BenchError {}

fn fold(eval: &Evaluator, pts: &[(f64, Complex64)]) -> f64 {
    let mut acc = 0.0;
    for &(nu, z) in pts {
        if let Ok(r) = eval.eval(black_box(nu), black_box(z)) {
            let v = r.value;
            if v.re.is_finite() && v.im.is_finite() {
                acc += v.re.abs().ln_1p() + v.im.abs().ln_1p();
            }
        }
    }
    acc
}

/// (min ns per evaluation, checksum, stable)
fn time(eval: &Evaluator, pts: &[(f64, Complex64)], inner: usize, reps: usize) -> (f64, f64, bool) {
    let mut best = f64::INFINITY;
    let mut first = None;
    let mut stable = true;
    for _ in 0..reps {
        let start = Instant::now();
        let mut sum = 0.0;
        for _ in 0..inner {
            sum = fold(eval, black_box(pts));
        }
        let elapsed = start.elapsed().as_nanos() as f64;
        black_box(sum);
        best = best.min(elapsed / (pts.len() * inner) as f64);
        match first {
            None => first = Some(sum),
            Some(f) => stable &= f.to_bits() == sum.to_bits(),
        }
    }
    (best, first.unwrap_or(0.0), stable)
}

pub fn run_bench(
    eval: &Evaluator,
    points: &[TestPoint],
    inner_sweeps: usize,
    repetitions: usize,
    parallel: bool,
) -> Result<BenchReport, BenchError> {
    if points.is_empty() {
        return Err(BenchError::NoPoints);
    }
    if inner_sweeps == 0 || repetitions == 0 {
        return Err(BenchError::ZeroCount);
    }
    let pts: Vec<(f64, Complex64)> = points.iter().map(|t| (t.nu, t.z)).collect();
    let (ns, checksum, mut stable) = time(eval, &pts, inner_sweeps, repetitions);

    let mut regions = Vec::new();
    for tag in RegionTag::ALL {
        let sub: Vec<(f64, Complex64)> = pts
            .iter()
            .copied()
            .filter(|&(nu, z)| eval.eval(nu, z).map(|r| r.region == tag).unwrap_or(false))
            .collect();
        if sub.is_empty() {
            continue;
        }
        let (ns, _, ok) = time(eval, &sub, inner_sweeps, repetitions);
        stable &= ok;
        regions.push(RegionTiming { region: tag, points: sub.len(), ns_per_eval_min: ns });
    }

    let parallel_ns_per_eval = parallel.then(|| {
        let start = Instant::now();
        for _ in 0..inner_sweeps {
            let s: f64 = pts.par_chunks(256).map(|c| fold(eval, c)).sum();
            black_box(s);
        }
        start.elapsed().as_nanos() as f64 / (pts.len() * inner_sweeps) as f64
    });

    Ok(BenchReport {
        points: pts.len(),
        inner_sweeps,
        repetitions,
        ns_per_eval_min: ns,
        regions,
        checksum,
        checksum_stable: stable,
        parallel_ns_per_eval,
    })
}

impl BenchReport {
    /// Writes `region,points,ns_per_eval_min`, ending with an `all` row.
    pub fn write_csv<W: Write>(&self, w: W) -> Result<(), GridError> {
        let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(w);
        w.write_record(["region", "points", "ns_per_eval_min"])?;
        for r in &self.regions {
            w.write_record([r.region.to_string(), r.points.to_string(), format!("{:.2}", r.ns_per_eval_min)])?;
        }
        w.write_record(["all".to_string(), self.points.to_string(), format!("{:.2}", self.ns_per_eval_min)])?;
        w.flush()?;
        Ok(())
    }
}

impl fmt::Display for BenchReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} points, {} sweeps x {} repetitions (min)", self.points, self.inner_sweeps, self.repetitions)?;
        writeln!(f, "{:<18} {:>8} {:>12}", "region", "points", "ns/eval")?;
        for r in &self.regions {
            writeln!(f, "{:<18} {:>8} {:>12.1}", r.region.to_string(), r.points, r.ns_per_eval_min)?;
        }
        writeln!(f, "{:<18} {:>8} {:>12.1}", "all", self.points, self.ns_per_eval_min)?;
        if let Some(p) = self.parallel_ns_per_eval {
            writeln!(f, "parallel wall clock: {p:.1} ns/eval")?;
        }
        write!(
            f,
            "checksum {:.17e} ({})",
            self.checksum,
            if self.checksum_stable { "stable" } else { "UNSTABLE" }
        )
    }
}
