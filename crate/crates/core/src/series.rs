//! Ascending power series,
//!
//! I_ν(z) = (z/2)^ν / Γ(ν+1) · Σ T_k,  T_0 = 1,  T_{k+1} = (z²/4) / ((k+1)(k+ν+1)) · T_k,
//!
//! used for |z| ≤ 4√(ν+1). The sum stops once the newest term is below
//! ε relative to the running sum.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::float::cis;
use crate::gamma::{ln_gamma, stirling_remainder, STIRLING_MIN};
use crate::{EvalResult, PrecisionProfile, RegionTag};

/// `true` when (ν, |z|) lies inside the series region |z| ≤ 4√(ν+1).
#[inline]
pub fn in_region(nu: f64, abs_z: f64) -> bool {
    abs_z <= 4.0 * (nu + 1.0).sqrt()
}

/// ln |(z/2)^ν / Γ(ν+1)|; below `ln_rmin` the prefactor underflows.
///
/// For ν + 1 ≥ 10 the leading Stirling terms of ln Γ(ν+1) are combined with
/// ν ln(|z|/2) analytically, so the rounding error scales with the result
/// rather than with ln Γ(ν+1).
pub fn log_prefactor(nu: f64, abs_z: f64) -> f64 {
    let x = nu + 1.0;
    if x < STIRLING_MIN {
        return nu * (0.5 * abs_z).ln() - ln_gamma(x).expect("nu + 1 >= 1");
    }
    // ν ln(|z|/2) − (x − ½) ln x + x − ½ ln 2π − μ(x)
    //   = ν (1 + ln(|z| / 2x)) + 1 − ½ ln x − ½ ln 2π − μ(x)
    let half_ln_2pi = 0.5 * (2.0 * PI).ln();
    nu * (1.0 + (abs_z / (2.0 * x)).ln()) + (1.0 - 0.5 * x.ln() - half_ln_2pi - stirling_remainder(x))
}

/// Evaluates the power series at any finite z.
///
/// Returns [`crate::Status::UnderflowZero`] when the value is below the
/// smallest normalized number R_min. If the prefactor is below R_min the
/// region is [`RegionTag::UnderflowShortcut`], and the sum is skipped when
/// the prefactor alone settles it: Σ|T_k| ≤ exp(|z|²/(4(ν+1))), so a
/// prefactor below R_min·exp(−|z|²/(4(ν+1))) cannot be lifted back into
/// range. Between that bound and R_min the sum is formed and the product
/// taken in log space.
pub fn series_eval(nu: f64, z: Complex64, p: &PrecisionProfile) -> EvalResult {
    if z.re == 0.0 && z.im == 0.0 {
        let v = if nu == 0.0 { 1.0 } else { 0.0 };
        return EvalResult::ok(Complex64::new(v, 0.0), RegionTag::Series);
    }
    let abs_z = z.norm();
    let log_mag = log_prefactor(nu, abs_z);
    if nu > 0.0 && log_mag < p.ln_rmin {
        let lift = abs_z * abs_z / (4.0 * (nu + 1.0));
        if log_mag + lift < p.ln_rmin {
            return EvalResult::underflow(RegionTag::UnderflowShortcut);
        }
        let sum = power_sum(nu, z, p);
        let sum_mag = sum.norm();
        let total = log_mag + sum_mag.ln();
        if !(total >= p.ln_rmin) {
            return EvalResult::underflow(RegionTag::UnderflowShortcut);
        }
        let value = cis(nu * z.arg()) * (sum / sum_mag) * total.exp();
        return EvalResult::ok_or_underflow(value, RegionTag::Series, p.ln_rmin);
    }
    let prefactor = if nu == 0.0 { Complex64::new(1.0, 0.0) } else { cis(nu * z.arg()) * log_mag.exp() };
    let sum = power_sum(nu, z, p);
    EvalResult::ok_or_underflow(prefactor * sum, RegionTag::Series, p.ln_rmin)
}

/// Σ T_k with the stop |T_K| < ε |Σ_{k<K} T_k|, summed with Neumaier
/// compensation per component.
fn power_sum(nu: f64, z: Complex64, p: &PrecisionProfile) -> Complex64 {
    let quarter_z2 = z * z * 0.25;
    let eps2 = p.epsilon * p.epsilon;
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    let mut comp = Complex64::new(0.0, 0.0);
    for k in 0..p.max_terms {
        let k1 = (k + 1) as f64;
        term = quarter_z2 * term / (k1 * (k1 + nu));
        let small = term.norm_sqr() < eps2 * sum.norm_sqr();
        sum.re = two_sum(sum.re, term.re, &mut comp.re);
        sum.im = two_sum(sum.im, term.im, &mut comp.im);
        if small {
            break;
        }
    }
    sum + comp
}

#[inline]
fn two_sum(s: f64, t: f64, comp: &mut f64) -> f64 {
    let r = s + t;
    *comp += if s.abs() >= t.abs() { (s - r) + t } else { (t - r) + s };
    r
}
