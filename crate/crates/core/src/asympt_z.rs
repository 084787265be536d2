//! Large-argument expansion, used for |z| ≥ max(|z|_S3, ν²/2):
//!
//! I_ν(z) ≈ e^z (2πz)^{-1/2} Σ (−1)^k T_k + e^{σ(ν+½)πi} e^{−z} (2πz)^{-1/2} Σ T_k,
//! T_0 = 1,  T_{k+1} = (4ν² − (2k+1)²) / (8(k+1)z) · T_k.
//!
//! σ is +1 in the upper half-plane and −1 in the lower one. On the positive
//! real axis the two choices differ only in the sign of an exponentially
//! small imaginary part; the real part of the coefficient is used there so
//! real arguments give real results.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::float::{cis, cis_pi, upper_sign};
use crate::{EvalResult, PrecisionProfile, RegionTag};

/// `true` when (ν, |z|) lies in the large-argument region.
#[inline]
pub fn in_region(nu: f64, abs_z: f64, p: &PrecisionProfile) -> bool {
    abs_z >= p.z_s3.max(0.5 * nu * nu)
}

/// The real-part overflow test x − ½ln|z| > ln R_max + ½ln 2π.
#[inline]
pub fn overflows(z: Complex64, p: &PrecisionProfile) -> bool {
    z.re - 0.5 * z.norm().ln() > p.ln_rmax + 0.5 * (2.0 * PI).ln()
}

/// Evaluates the expansion. The caller guarantees Re z ≥ 0.
pub fn asympt_z_eval(nu: f64, z: Complex64, p: &PrecisionProfile) -> EvalResult {
    if overflows(z, p) {
        return EvalResult::overflow(RegionTag::LargeZ);
    }
    let (s_plus, s_minus, _) = sums(nu, z, p);

    // (2πz)^{-1/2} with the principal root; Re z ≥ 0 keeps it off the cut.
    let w = (z * (2.0 * PI)).sqrt().inv();
    let x = z.re;
    // e^x can overflow a little before the whole term does.
    let scaled = if x <= 700.0 {
        w * x.exp()
    } else {
        let half = (0.5 * x).exp();
        (w * half) * half
    };
    let mut value = scaled * cis(z.im) * s_plus;

    // e^{−2x} below ε: the reflected term cannot change the result.
    if x <= p.negligible_reflection_re() {
        let coeff = if z.im == 0.0 {
            Complex64::new(cis_pi(nu + 0.5).re, 0.0)
        } else {
            let c = cis_pi(nu + 0.5);
            if upper_sign(z) > 0.0 {
                c
            } else {
                c.conj()
            }
        };
        value += coeff * w * (-x).exp() * cis(-z.im) * s_minus;
    }
    if !(value.re.is_finite() && value.im.is_finite()) {
        return EvalResult::overflow(RegionTag::LargeZ);
    }
    EvalResult::ok_or_underflow(value, RegionTag::LargeZ, p.ln_rmin)
}

/// Returns (Σ(−1)^k T_k, Σ T_k, number of terms added after T_0).
pub(crate) fn sums(nu: f64, z: Complex64, p: &PrecisionProfile) -> (Complex64, Complex64, usize) {
    let mu = 4.0 * nu * nu;
    let inv_8z = (z * 8.0).inv();
    let eps2 = p.epsilon * p.epsilon;
    let mut term = Complex64::new(1.0, 0.0);
    let mut last_norm = 1.0;
    let mut s_plus = term;
    let mut s_minus = term;
    let mut used = 0;
    for k in 0..p.max_terms {
        let odd = (2 * k + 1) as f64;
        let next = term * inv_8z * ((mu - odd * odd) / (k + 1) as f64);
        let next_norm = next.norm_sqr();
        // Past the smallest term the series only gets worse.
        if next_norm >= last_norm {
            break;
        }
        term = next;
        last_norm = next_norm;
        used += 1;
        if k % 2 == 0 {
            s_plus -= term;
        } else {
            s_plus += term;
        }
        s_minus += term;
        if next_norm == 0.0 || next_norm < eps2 * s_plus.norm_sqr() {
            break;
        }
    }
    (s_plus, s_minus, used)
}
