#![allow(dead_code)]

use std::path::PathBuf;

use ibessel::accuracy::component_errors;
use ibessel::grid::{load_reference, ReferenceRecord};
use num_complex::Complex64;

pub fn data_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests").join("data").join(name)
}

pub fn fixture(name: &str) -> Vec<ReferenceRecord> {
    load_reference(data_path(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

/// Larger of the two magnitude-normalized component errors.
pub fn relerr(computed: Complex64, reference: Complex64) -> f64 {
    let (re, im) = component_errors(computed, reference);
    re.max(im)
}

pub struct Stats {
    pub n: usize,
    pub p50: f64,
    pub p99: f64,
    pub max: f64,
}

pub fn stats(mut errs: Vec<f64>) -> Stats {
    errs.sort_by(f64::total_cmp);
    let n = errs.len();
    let at = |q: f64| errs[((q * n as f64).ceil() as usize).clamp(1, n) - 1];
    Stats { n, p50: at(0.5), p99: at(0.99), max: errs[n - 1] }
}

impl std::fmt::Display for Stats {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "n={} p50={:.2e} p99={:.2e} max={:.2e}", self.n, self.p50, self.p99, self.max)
    }
}

/// Relative condition numbers of I_ν(z) with respect to z and ν, from the
/// leading uniform asymptotics: |√(ν²+z²)| + ν·|ln(z/(ν+√(ν²+z²)))|.
pub fn condition(nu: f64, z: Complex64) -> f64 {
    let z = if z.re < 0.0 { -z } else { z };
    let t = (z * z + nu * nu).sqrt();
    let by_nu = if nu == 0.0 { 0.0 } else { nu * (z / (t + nu)).ln().norm() };
    t.norm() + by_nu
}

/// Cancellation factor of the power series for I_ν(z).
pub fn series_cancellation(nu: f64, z: Complex64) -> f64 {
    (z.im * z.im / (2.0 * (nu + 1.0))).exp()
}

/// Error bound for a method whose only loss is the conditioning of the
/// function plus `extra`.
pub fn conditioned_bound(nu: f64, z: Complex64, extra: f64) -> f64 {
    2.0 * f64::EPSILON * (5.0 + condition(nu, z) + extra)
}

pub fn representable(v: Complex64) -> bool {
    let m = v.norm();
    (f64::MIN_POSITIVE..=f64::MAX).contains(&m)
}
