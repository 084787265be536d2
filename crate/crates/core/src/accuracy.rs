//! Scoring computed values against a reference set.
//!
//! The error of a component c is |computed_c − ref_c| / |ref|, normalized
//! by the magnitude of the complex reference so that a component passing
//! through zero does not blow up. Points whose reference magnitude lies
//! outside [R_min, R_max] are excluded from the statistics.

use std::io::Write;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::grid::{GridError, ReferenceRecord};
use crate::{Evaluator, RegionTag, Status};

pub const ROWS_HEADER: [&str; 6] = ["nu", "abs_z", "arg_z", "relerr_re", "relerr_im", "region"];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointError {
    pub nu: f64,
    pub z: Complex64,
    pub relerr_re: f64,
    pub relerr_im: f64,
    pub region: RegionTag,
    pub status: Status,
}

impl PointError {
    pub fn max(&self) -> f64 {
        self.relerr_re.max(self.relerr_im)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Summary {
    pub scored: usize,
    pub excluded: usize,
    pub p50: f64,
    pub p99: f64,
    pub p999: f64,
    pub max: f64,
    pub worst: Option<PointError>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AccuracyReport {
    /// One row per scored point, in input order.
    pub rows: Vec<PointError>,
    pub summary: Summary,
    pub per_region: Vec<(RegionTag, Summary)>,
}

/// Magnitude-normalized component errors of `computed` against `reference`.
pub fn component_errors(computed: Complex64, reference: Complex64) -> (f64, f64) {
    let mag = reference.norm();
    ((computed.re - reference.re).abs() / mag, (computed.im - reference.im).abs() / mag)
}

/// Nearest-rank percentile of an ascending slice, `q` in [0, 1].
pub fn percentile(sorted: &[f64], q: f64) -> f64 {
    if sorted.is_empty() {
        return f64::NAN;
    }
    let rank = (q * sorted.len() as f64).ceil() as usize;
    sorted[rank.clamp(1, sorted.len()) - 1]
}

fn summarize(rows: &[&PointError], excluded: usize) -> Summary {
    let mut errs: Vec<f64> = rows.iter().map(|r| r.max()).collect();
    errs.sort_by(f64::total_cmp);
    let worst = rows.iter().copied().max_by(|a, b| a.max().total_cmp(&b.max())).copied();
    Summary {
        scored: rows.len(),
        excluded,
        p50: percentile(&errs, 0.5),
        p99: percentile(&errs, 0.99),
        p999: percentile(&errs, 0.999),
        max: errs.last().copied().unwrap_or(f64::NAN),
        worst,
    }
}

fn score_one(eval: &Evaluator, r: &ReferenceRecord) -> Option<PointError> {
    let p = eval.profile();
    let reference = r.value();
    let mag = reference.norm();
    let (lo, hi) = (p.ln_rmin.exp(), p.ln_rmax.exp());
    if !(mag >= lo && mag <= hi) {
        return None;
    }
    let (region, status, value) = match eval.eval(r.nu, r.z) {
        Ok(res) => {
            let v = match res.status {
                Status::Ok => res.value,
                Status::UnderflowZero => Complex64::new(0.0, 0.0),
                Status::OverflowError => Complex64::new(f64::INFINITY, f64::INFINITY),
            };
            (res.region, res.status, v)
        }
        Err(_) => (eval.region(r.nu, r.z).unwrap_or(RegionTag::Series), Status::OverflowError, Complex64::new(f64::NAN, f64::NAN)),
    };
    let (mut re, mut im) = component_errors(value, reference);
    if re.is_nan() {
        re = f64::INFINITY;
    }
    if im.is_nan() {
        im = f64::INFINITY;
    }
    Some(PointError { nu: r.nu, z: r.z, relerr_re: re, relerr_im: im, region, status })
}

/// Scores every record. Row order follows the input whether or not the
/// work runs in parallel.
pub fn score(eval: &Evaluator, refs: &[ReferenceRecord], parallel: bool) -> AccuracyReport {
    let scored: Vec<Option<PointError>> = if parallel {
        refs.par_iter().map(|r| score_one(eval, r)).collect()
    } else {
        refs.iter().map(|r| score_one(eval, r)).collect()
    };
    let excluded = scored.iter().filter(|s| s.is_none()).count();
    let rows: Vec<PointError> = scored.into_iter().flatten().collect();
    let all: Vec<&PointError> = rows.iter().collect();
    let summary = summarize(&all, excluded);
    let per_region = RegionTag::ALL
        .into_iter()
        .filter_map(|tag| {
            let sub: Vec<&PointError> = rows.iter().filter(|r| r.region == tag).collect();
            (!sub.is_empty()).then(|| (tag, summarize(&sub, 0)))
        })
        .collect();
    AccuracyReport { rows, summary, per_region }
}

/// Writes `nu,abs_z,arg_z,relerr_re,relerr_im,region`.
pub fn write_rows<W: Write>(w: W, rows: &[PointError]) -> Result<(), GridError> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(w);
    w.write_record(ROWS_HEADER)?;
    for r in rows {
        w.write_record([
            format!("{:?}", r.nu),
            format!("{:?}", r.z.norm()),
            format!("{:?}", r.z.arg()),
            format!("{:e}", r.relerr_re),
            format!("{:e}", r.relerr_im),
            r.region.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}
