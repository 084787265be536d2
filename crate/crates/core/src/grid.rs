//! Test-point generation and the reference CSV format.
//!
//! A grid is a log-uniform lattice in (ν, |z|) crossed with a list of
//! phases, plus points jittered around each region boundary. Generation is
//! deterministic for a given [`GridSpec`].
//!
//! Reference files are UTF-8 CSV with header `nu,z_re,z_im,i_re,i_im,digits`.
//! The value columns are decimal strings and are kept verbatim, so a record
//! can be loaded and saved without touching its digits.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};
use std::fmt;
use std::fs::File;
use std::io::{self, BufWriter, Read, Write};
use std::path::Path;
use std::str::FromStr;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::gamma::ln_gamma;
use crate::PrecisionProfile;

pub const REFERENCE_HEADER: [&str; 6] = ["nu", "z_re", "z_im", "i_re", "i_im", "digits"];
pub const POINTS_HEADER: [&str; 4] = ["nu", "z_re", "z_im", "boundary"];

/// Relative half-width of the jitter applied across a boundary.
pub const BOUNDARY_JITTER: f64 = 0.005;

#[derive(Debug, Error)]
pub enum GridError {
    #[error("invalid grid: {0}")]
    Invalid(String),
    #[error("line {line}: {msg}")]
    Parse { line: u64, msg: String },
    #[error(transparent)]
    Io(#[from] io::Error),
}

impl From<csv::Error> for GridError {
    fn from(e: csv::Error) -> Self {
        let line = e.position().map(|p| p.line()).unwrap_or(0);
        match e.into_kind() {
            csv::ErrorKind::Io(io) => GridError::Io(io),
            kind => GridError::Parse { line, msg: format!("{kind:?}") },
        }
    }
}

/// Region boundary a test point was placed near.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BoundaryLabel {
    /// Prefactor underflow frontier inside the series region.
    S1Curve,
    /// |z| = 4√(ν+1).
    SeriesEdge,
    /// |z| = max(|z|_S3, ν²/2).
    LargeZEdge,
    /// ν = C1 + |z|.
    NuThEdge,
    /// |z| = z_mid, or Re z = 0.4·|Im z|.
    ExtensionEdge,
}

impl BoundaryLabel {
    pub const ALL: [BoundaryLabel; 5] = [
        BoundaryLabel::S1Curve,
        BoundaryLabel::SeriesEdge,
        BoundaryLabel::LargeZEdge,
        BoundaryLabel::NuThEdge,
        BoundaryLabel::ExtensionEdge,
    ];

    fn name(self) -> &'static str {
        match self {
            BoundaryLabel::S1Curve => "S1curve",
            BoundaryLabel::SeriesEdge => "SeriesEdge",
            BoundaryLabel::LargeZEdge => "LargeZEdge",
            BoundaryLabel::NuThEdge => "NuThEdge",
            BoundaryLabel::ExtensionEdge => "ExtensionEdge",
        }
    }
}

impl fmt::Display for BoundaryLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BoundaryLabel {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        BoundaryLabel::ALL
            .into_iter()
            .find(|b| b.name() == s)
            .ok_or_else(|| format!("unknown boundary label {s:?}"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TestPoint {
    pub nu: f64,
    pub z: Complex64,
    pub boundary: Option<BoundaryLabel>,
}

/// A test point and its high-precision value, as decimal strings.
#[derive(Debug, Clone, PartialEq)]
pub struct ReferenceRecord {
    pub nu: f64,
    pub z: Complex64,
    pub re: String,
    pub im: String,
    /// Significant digits the oracle guarantees.
    pub digits: u32,
}

impl ReferenceRecord {
    /// The reference value rounded once to f64. Components beyond the
    /// double range come back as 0 or ±inf.
    pub fn value(&self) -> Complex64 {
        Complex64::new(parse_decimal(&self.re), parse_decimal(&self.im))
    }
}

fn parse_decimal(s: &str) -> f64 {
    s.trim().parse().unwrap_or(f64::NAN)
}

/// The default eight phases: real axis, the diagonals, both sides of the
/// imaginary axis and the region just above the negative real axis.
pub fn default_phases() -> Vec<f64> {
    vec![
        0.0,
        FRAC_PI_4,
        -FRAC_PI_4,
        FRAC_PI_2 - 0.01,
        -(FRAC_PI_2 - 0.01),
        3.0 * FRAC_PI_4,
        -3.0 * FRAC_PI_4,
        PI - 0.01,
    ]
}

#[derive(Debug, Clone, PartialEq)]
pub struct GridSpec {
    pub nu_range: (f64, f64),
    pub zmag_range: (f64, f64),
    pub nu_count: usize,
    pub z_count: usize,
    pub phases: Vec<f64>,
    pub seed: u64,
    /// Boundary points generated per [`BoundaryLabel`].
    pub boundary_per_curve: usize,
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec {
            nu_range: (1e-2, 700.0),
            zmag_range: (1e-2, 700.0),
            nu_count: 100,
            z_count: 100,
            phases: default_phases(),
            seed: 42,
            boundary_per_curve: 400,
        }
    }
}

fn log_lattice(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let (a, b) = (lo.ln(), hi.ln());
    (0..n)
        .map(|i| match i {
            0 => lo,
            _ if i == n - 1 => hi,
            _ => (a + (b - a) * i as f64 / (n - 1) as f64).exp(),
        })
        .collect()
}

/// Builds the lattice followed by the boundary points.
pub fn make_grid(spec: &GridSpec, p: &PrecisionProfile) -> Result<Vec<TestPoint>, GridError> {
    let ok_range = |(lo, hi): (f64, f64)| lo > 0.0 && hi > lo && hi.is_finite();
    if !ok_range(spec.nu_range) || !ok_range(spec.zmag_range) {
        return Err(GridError::Invalid("ranges must satisfy 0 < lo < hi < inf".into()));
    }
    if spec.nu_count < 2 || spec.z_count < 2 {
        return Err(GridError::Invalid("counts must be at least 2".into()));
    }
    if spec.phases.is_empty() || spec.phases.iter().any(|t| !t.is_finite()) {
        return Err(GridError::Invalid("need at least one finite phase".into()));
    }
    let nus = log_lattice(spec.nu_range.0, spec.nu_range.1, spec.nu_count);
    let mags = log_lattice(spec.zmag_range.0, spec.zmag_range.1, spec.z_count);
    let mut out = Vec::with_capacity(nus.len() * mags.len() * spec.phases.len());
    for &nu in &nus {
        for &r in &mags {
            for &t in &spec.phases {
                out.push(TestPoint { nu, z: polar(r, t), boundary: None });
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    for label in BoundaryLabel::ALL {
        let mut made = 0;
        let mut tries = 0;
        while made < spec.boundary_per_curve && tries < 100 * spec.boundary_per_curve.max(1) {
            tries += 1;
            if let Some(pt) = boundary_point(label, spec, p, &mut rng) {
                out.push(pt);
                made += 1;
            }
        }
    }
    Ok(out)
}

/// z = r e^{iθ}, with θ = 0 kept exactly real.
pub fn polar(r: f64, theta: f64) -> Complex64 {
    if theta == 0.0 {
        Complex64::new(r, 0.0)
    } else {
        let (s, c) = theta.sin_cos();
        Complex64::new(r * c, r * s)
    }
}

/// |z| on the prefactor underflow frontier for order ν.
pub fn underflow_frontier(nu: f64, p: &PrecisionProfile) -> f64 {
    2.0 * ((p.ln_rmin + ln_gamma(nu + 1.0).expect("nu >= 0")) / nu).exp()
}

fn boundary_point(label: BoundaryLabel, spec: &GridSpec, p: &PrecisionProfile, rng: &mut ChaCha8Rng) -> Option<TestPoint> {
    let (nlo, nhi) = spec.nu_range;
    let (zlo, zhi) = spec.zmag_range;
    let log_uniform = |rng: &mut ChaCha8Rng, lo: f64, hi: f64| (rng.gen_range(lo.ln()..=hi.ln())).exp();
    let jitter = |rng: &mut ChaCha8Rng| 1.0 + rng.gen_range(-BOUNDARY_JITTER..=BOUNDARY_JITTER);
    let phase = spec.phases[rng.gen_range(0..spec.phases.len())];
    let (nu, r, theta) = match label {
        BoundaryLabel::S1Curve => {
            let nu = log_uniform(rng, nlo.max(1.0), nhi.min(p.s1.nu));
            (nu, underflow_frontier(nu, p) * jitter(rng), phase)
        }
        BoundaryLabel::SeriesEdge => {
            let nu = log_uniform(rng, nlo, nhi);
            (nu, 4.0 * (nu + 1.0).sqrt() * jitter(rng), phase)
        }
        BoundaryLabel::LargeZEdge => {
            let nu = log_uniform(rng, nlo, nhi);
            (nu, p.z_s3.max(0.5 * nu * nu) * jitter(rng), phase)
        }
        BoundaryLabel::NuThEdge => {
            let r = log_uniform(rng, zlo, zhi);
            (p.nu_threshold(r) * jitter(rng), r, phase)
        }
        BoundaryLabel::ExtensionEdge => {
            let nu = log_uniform(rng, nlo, nhi);
            let sign = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
            match rng.gen_range(0..3) {
                0 => (nu, p.z_mid * jitter(rng), phase),
                1 => {
                    // Re z = 0.4·|Im z|: the edge angle, on either side of the real axis
                    let edge = (1.0 / p.phase_slope).atan();
                    let r = log_uniform(rng, p.z_mid.max(zlo), zhi);
                    (nu, r, sign * edge * jitter(rng))
                }
                _ => {
                    // Re z at the reflected-term cutoff, inside the sector
                    let x = p.negligible_reflection_re() * jitter(rng);
                    let y = sign * rng.gen_range(0.0..=x / p.phase_slope);
                    (nu, x.hypot(y), y.atan2(x))
                }
            }
        }
    };
    let in_range = (nlo..=nhi).contains(&nu) && (zlo..=zhi).contains(&r) && nu.is_finite() && r.is_finite();
    in_range.then(|| TestPoint { nu, z: polar(r, theta), boundary: Some(label) })
}

fn fmt_f64(x: f64) -> String {
    format!("{x:?}")
}

/// Writes points as `nu,z_re,z_im,boundary`.
pub fn write_points<W: Write>(w: W, points: &[TestPoint]) -> Result<(), GridError> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(w);
    w.write_record(POINTS_HEADER)?;
    for pt in points {
        let label = pt.boundary.map(|b| b.to_string()).unwrap_or_else(|| "none".into());
        w.write_record([fmt_f64(pt.nu), fmt_f64(pt.z.re), fmt_f64(pt.z.im), label])?;
    }
    w.flush()?;
    Ok(())
}

pub fn save_points(path: impl AsRef<Path>, points: &[TestPoint]) -> Result<(), GridError> {
    write_points(BufWriter::new(File::create(path)?), points)
}

fn check_header(found: &csv::StringRecord, want: &[&str]) -> Result<(), GridError> {
    if found.iter().eq(want.iter().copied()) {
        return Ok(());
    }
    let unknown: Vec<_> = found.iter().filter(|c| !want.contains(c)).collect();
    let msg = if unknown.is_empty() {
        format!("expected header {}, found {}", want.join(","), found.iter().collect::<Vec<_>>().join(","))
    } else {
        format!("unknown column(s) {}", unknown.join(","))
    };
    Err(GridError::Parse { line: 1, msg })
}

fn field<T: FromStr>(rec: &csv::StringRecord, i: usize, name: &str) -> Result<T, GridError> {
    let line = rec.position().map(|p| p.line()).unwrap_or(0);
    let raw = rec.get(i).ok_or_else(|| GridError::Parse { line, msg: format!("missing {name}") })?;
    raw.trim()
        .parse()
        .map_err(|_| GridError::Parse { line, msg: format!("bad {name} value {raw:?}") })
}

fn reader<R: Read>(r: R) -> csv::Reader<R> {
    csv::ReaderBuilder::new().has_headers(true).from_reader(r)
}

pub fn read_points<R: Read>(r: R) -> Result<Vec<TestPoint>, GridError> {
    let mut rdr = reader(r);
    check_header(rdr.headers()?, &POINTS_HEADER)?;
    let mut out = Vec::new();
    for rec in rdr.records() {
        let rec = rec?;
        let label: String = field(&rec, 3, "boundary")?;
        let boundary = match label.as_str() {
            "none" | "" => None,
            s => Some(s.parse().map_err(|msg| GridError::Parse {
                line: rec.position().map(|p| p.line()).unwrap_or(0),
                msg,
            })?),
        };
        out.push(TestPoint {
            nu: field(&rec, 0, "nu")?,
            z: Complex64::new(field(&rec, 1, "z_re")?, field(&rec, 2, "z_im")?),
            boundary,
        });
    }
    Ok(out)
}

pub fn load_points(path: impl AsRef<Path>) -> Result<Vec<TestPoint>, GridError> {
    read_points(File::open(path)?)
}

pub fn read_reference<R: Read>(r: R) -> Result<Vec<ReferenceRecord>, GridError> {
    let mut rdr = reader(r);
    check_header(rdr.headers()?, &REFERENCE_HEADER)?;
    let mut out = Vec::new();
    for rec in rdr.records() {
        let rec = rec?;
        let line = rec.position().map(|p| p.line()).unwrap_or(0);
        let re: String = field(&rec, 3, "i_re")?;
        let im: String = field(&rec, 4, "i_im")?;
        for (name, s) in [("i_re", &re), ("i_im", &im)] {
            if !is_decimal(s) {
                return Err(GridError::Parse { line, msg: format!("{name} is not a decimal number: {s:?}") });
            }
        }
        out.push(ReferenceRecord {
            nu: field(&rec, 0, "nu")?,
            z: Complex64::new(field(&rec, 1, "z_re")?, field(&rec, 2, "z_im")?),
            re,
            im,
            digits: field(&rec, 5, "digits")?,
        });
    }
    Ok(out)
}

/// Plain decimal with optional sign, fraction and exponent.
fn is_decimal(s: &str) -> bool {
    let s = s.strip_prefix(['-', '+']).unwrap_or(s);
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], Some(&s[i + 1..])),
        None => (s, None),
    };
    let mut parts = mantissa.splitn(2, '.');
    let int = parts.next().unwrap_or("");
    let frac = parts.next().unwrap_or("");
    let digits_ok = |t: &str| t.bytes().all(|b| b.is_ascii_digit());
    let mantissa_ok = !(int.is_empty() && frac.is_empty()) && digits_ok(int) && digits_ok(frac);
    let exp_ok = match exp {
        None => true,
        Some(e) => {
            let e = e.strip_prefix(['-', '+']).unwrap_or(e);
            !e.is_empty() && digits_ok(e)
        }
    };
    mantissa_ok && exp_ok
}

pub fn write_reference<W: Write>(w: W, records: &[ReferenceRecord]) -> Result<(), GridError> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(w);
    w.write_record(REFERENCE_HEADER)?;
    for r in records {
        w.write_record([
            fmt_f64(r.nu),
            fmt_f64(r.z.re),
            fmt_f64(r.z.im),
            r.re.clone(),
            r.im.clone(),
            r.digits.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn load_reference(path: impl AsRef<Path>) -> Result<Vec<ReferenceRecord>, GridError> {
    read_reference(File::open(path)?)
}

pub fn save_reference(path: impl AsRef<Path>, records: &[ReferenceRecord]) -> Result<(), GridError> {
    write_reference(BufWriter::new(File::create(path)?), records)
}
