//! Uniform asymptotic expansion for large order,
//!
//! I_ν(νw) ≈ (q / 2πν)^{1/2} e^{νη} (1 + Σ_{k≥1} U_k(q) / ν^k),
//! q = (1 + w²)^{-1/2},  η = 1/q + ln(q w / (1 + q)).
//!
//! The scaling variable usually written `p` is called `q` here so it does not
//! clash with the [`PrecisionProfile`] argument. The Debye polynomials U_k are
//! generated once, in exact rational arithmetic, from
//!
//! U_{k+1}(q) = ½ q² (1 − q²) U_k′(q) + ⅛ ∫₀^q (1 − 5t²) U_k(t) dt,  U_0 = 1,
//!
//! and rounded once to f64.
//!
//! The correction sum stops once two successive terms are below ε, or at
//! the smallest term when the terms start growing again. Near the turning
//! points w = ±i, and for small ν, the second case means the expansion has
//! not reached working precision; [`asympt_nu_checked`] reports that.

use std::f64::consts::PI;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::float::cis;
use crate::{Error, EvalResult, PrecisionProfile, RegionTag, Status};

/// Dense polynomial over the rationals, coefficient of q^j at index j.
pub type RationalPoly = Vec<BigRational>;

/// U_0 ..= U_count, exact and rounded.
#[derive(Debug, Clone)]
pub struct UkTable {
    exact: Vec<RationalPoly>,
    /// U_k(q) = q^k · P_k(q²); `reduced[k]` holds P_k in ascending powers.
    reduced: Vec<Vec<f64>>,
}

impl UkTable {
    /// Exact coefficients; `polys()[k]` has degree 3k.
    pub fn polys(&self) -> &[RationalPoly] {
        &self.exact
    }

    /// Number of polynomials stored, U_0 included.
    pub fn len(&self) -> usize {
        self.exact.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exact.is_empty()
    }

    /// Dense f64 coefficients of U_k, each the correctly rounded exact value.
    pub fn dense_f64(&self, k: usize) -> Vec<f64> {
        let mut out = vec![0.0; 3 * k + 1];
        for (i, c) in self.reduced[k].iter().enumerate() {
            out[k + 2 * i] = *c;
        }
        out
    }

    /// U_k(q) in f64 arithmetic.
    pub fn eval(&self, k: usize, q: Complex64) -> Complex64 {
        horner(&self.reduced[k], q * q) * q.powu(k as u32)
    }

    /// Renders every polynomial as `U_k(p) = c0 + c1*p + ...` with exact
    /// rational coefficients, one line per k.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for (k, poly) in self.exact.iter().enumerate() {
            let _ = write!(out, "U_{k}(p) =");
            let mut first = true;
            for (j, c) in poly.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let sep = if first { " " } else { " + " };
                first = false;
                match j {
                    0 => {
                        let _ = write!(out, "{sep}{c}");
                    }
                    1 => {
                        let _ = write!(out, "{sep}({c})*p");
                    }
                    _ => {
                        let _ = write!(out, "{sep}({c})*p^{j}");
                    }
                }
            }
            out.push('\n');
        }
        out
    }
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// One step of the U_k recurrence in exact arithmetic.
pub fn next_uk(u: &RationalPoly) -> RationalPoly {
    let deg = u.len() - 1;
    let mut out = vec![BigRational::zero(); deg + 4];
    // ½ q² (1 − q²) U'(q) = ½ Σ j c_j (q^{j+1} − q^{j+3})
    for (j, c) in u.iter().enumerate().skip(1) {
        let t = c * rat(j as i64, 2);
        out[j + 1] += &t;
        out[j + 3] -= &t;
    }
    // ⅛ ∫₀^q (1 − 5t²) U(t) dt = ⅛ Σ c_j (q^{j+1}/(j+1) − 5 q^{j+3}/(j+3))
    for (j, c) in u.iter().enumerate() {
        out[j + 1] += c * rat(1, 8 * (j as i64 + 1));
        out[j + 3] -= c * rat(5, 8 * (j as i64 + 3));
    }
    out
}

/// Generates U_0 ..= U_{count−1}.
///
/// # Panics
/// If `count` is zero.
pub fn generate_uk(count: usize) -> UkTable {
    assert!(count >= 1, "generate_uk needs count >= 1");
    let mut exact = vec![vec![rat(1, 1)]];
    while exact.len() < count {
        let next = next_uk(exact.last().unwrap());
        exact.push(next);
    }
    let reduced = exact
        .iter()
        .enumerate()
        .map(|(k, poly)| {
            (k..poly.len())
                .step_by(2)
                .map(|j| poly[j].to_f64().expect("finite coefficient"))
                .collect()
        })
        .collect();
    UkTable { exact, reduced }
}

#[inline]
fn horner(coeffs: &[f64], x: Complex64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

/// `true` when ν ≥ ν_th(|z|).
#[inline]
pub fn in_region(nu: f64, abs_z: f64, p: &PrecisionProfile) -> bool {
    nu >= p.nu_threshold(abs_z)
}

/// `true` when |z| > z_mid, Re z > phase_slope · |Im z|, and e^{−z} is
/// negligible next to e^{z}. The expansion carries no e^{−z} part, so near
/// the sector edge at moderate |z| it would miss a contribution of relative
/// size e^{−2 Re z}.
#[inline]
pub fn in_extension(z: Complex64, abs_z: f64, p: &PrecisionProfile) -> bool {
    abs_z > p.z_mid && z.re > p.phase_slope * z.im.abs() && z.re > p.negligible_reflection_re()
}

/// ln-magnitude, phase and correction sum of the expansion, kept apart so
/// callers can work below the underflow threshold.
#[derive(Debug, Clone, Copy)]
pub(crate) struct UniformParts {
    pub log_mag: f64,
    pub phase: f64,
    pub sum: Complex64,
    /// The correction terms fell below ε before the table ran out or the
    /// terms started to grow.
    pub converged: bool,
}

pub(crate) fn uniform_parts(nu: f64, z: Complex64, uk: &UkTable) -> Result<UniformParts, Error> {
    let w = z / nu;
    let s = (w * w + 1.0).sqrt();
    // principal root: Re s ≥ 0, and Re s = 0 only on the turning-point line
    if !(s.re > 0.0) {
        return Err(Error::TurningPoint(w));
    }
    let q = s.inv();
    // η = 1/q + ln(q w / (1 + q)) = s + ln(w / (1 + s))
    let eta = s + (w / (s + 1.0)).ln();
    let s_norm = s.norm();
    let log_mag = nu * eta.re - 0.5 * s_norm.ln() - 0.5 * (2.0 * PI * nu).ln();
    let phase = nu * eta.im - 0.5 * s.im.atan2(s.re);

    let q2 = q * q;
    let ratio = q / nu;
    let mut power = Complex64::new(1.0, 0.0);
    let mut sum = Complex64::new(1.0, 0.0);
    let eps2 = f64::EPSILON * f64::EPSILON;
    let mut quiet = 0;
    let mut converged = false;
    let (mut last, mut before) = (f64::INFINITY, f64::INFINITY);
    for k in 1..uk.reduced.len() {
        power *= ratio;
        let term = horner(&uk.reduced[k], q2) * power;
        let size = term.norm_sqr();
        // the expansion is asymptotic: stop at the smallest term
        if k > 2 && size > last && size > before {
            break;
        }
        sum += term;
        // a single tiny term can be a near-root of U_k; wait for two
        if size < eps2 * sum.norm_sqr() {
            quiet += 1;
            if quiet == 2 {
                converged = true;
                break;
            }
        } else {
            quiet = 0;
        }
        (before, last) = (last, size);
    }
    Ok(UniformParts { log_mag, phase, sum, converged })
}

fn finish(parts: &UniformParts, p: &PrecisionProfile) -> EvalResult {
    if parts.log_mag > p.ln_rmax * (1.0 - 4.0 * p.epsilon) {
        return EvalResult::overflow(RegionTag::LargeNu);
    }
    if parts.log_mag < p.ln_rmin {
        return EvalResult::underflow(RegionTag::LargeNu);
    }
    let value = cis(parts.phase) * parts.log_mag.exp() * parts.sum;
    if !(value.re.is_finite() && value.im.is_finite()) {
        return EvalResult::overflow(RegionTag::LargeNu);
    }
    EvalResult::ok_or_underflow(value, RegionTag::LargeNu, p.ln_rmin)
}

/// Evaluates the uniform expansion at (ν, z), ν > 0.
///
/// The region tag on the result is [`RegionTag::LargeNu`]; dispatch retags
/// extension-region evaluations.
pub fn asympt_nu_eval(nu: f64, z: Complex64, p: &PrecisionProfile, uk: &UkTable) -> Result<EvalResult, Error> {
    Ok(finish(&uniform_parts(nu, z, uk)?, p))
}

/// Like [`asympt_nu_eval`], but `None` when the correction series does not
/// reach working precision within the U_k table.
pub fn asympt_nu_checked(nu: f64, z: Complex64, p: &PrecisionProfile, uk: &UkTable) -> Result<Option<EvalResult>, Error> {
    let parts = uniform_parts(nu, z, uk)?;
    let r = finish(&parts, p);
    Ok((parts.converged || r.status != Status::Ok).then_some(r))
}
