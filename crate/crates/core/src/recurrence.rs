//! Seeded backward recurrence for the intermediate region.
//!
//! I_{μ−1}(z) = (2μ/z) I_μ(z) + I_{μ+1}(z) is run downward from a terminal
//! order ν_term ≡ ν (mod 1). The two seeds I_{ν_term} and I_{ν_term+1} are
//! computed directly, so no normalization pass is needed.
//!
//! Seeds come from the power series when |z| < |z|_S3 and from the uniform
//! expansion otherwise. Near the imaginary axis the series cancels, so its
//! seeds are taken at an order high enough to keep the loss small. Seeds
//! from the uniform expansion must sit away from its turning points
//! w = z/ν_term = ±i, where it converges slowly or not at all. When the
//! quadratic rule's order is too close, or its expansion does not converge,
//! the threshold rule's order is used instead.

use num_complex::Complex64;

use crate::float::{cis, max_abs};
use crate::series::series_eval;
use crate::{asympt_nu, Error, EvalResult, PrecisionProfile, RegionTag, Status, UkTable};

/// Smallest |1 + (z/ν_term)²| accepted for seeds from the uniform expansion.
pub const TURNING_POINT_MARGIN: f64 = 0.25;

/// Which rule produced the terminal order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TerminalRule {
    /// ⌊|z|²/16⌋ + frac(ν), for 4√(ν+1) < |z| < |z|_S2. With series seeds
    /// the order is raised to at least [`series_seed_order`].
    Quadratic,
    /// The first order ≡ ν (mod 1) at or above both ν_th(|z|) and the
    /// turning-point margin.
    Threshold,
}

/// ν_term = ν + `steps`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TerminalOrder {
    pub steps: u32,
    pub rule: TerminalRule,
}

impl TerminalOrder {
    pub fn order(&self, nu: f64) -> f64 {
        nu + self.steps as f64
    }
}

/// Smallest order μ > 0 with |1 + (z/μ)²| ≥ [`TURNING_POINT_MARGIN`]; zero
/// when every order qualifies.
pub fn turning_point_order(z: Complex64) -> f64 {
    // with a = μ², X + iY = z²: (1 − τ²)a² + 2Xa + |z|⁴ ≥ 0
    let t2 = TURNING_POINT_MARGIN * TURNING_POINT_MARGIN;
    let z2 = z * z;
    let disc = t2 * z2.re * z2.re - (1.0 - t2) * z2.im * z2.im;
    if disc < 0.0 {
        return 0.0;
    }
    let a = (-z2.re + disc.sqrt()) / (1.0 - t2);
    if a > 0.0 {
        a.sqrt()
    } else {
        0.0
    }
}

/// Picks the terminal order. Keeping ν_term − ν as an integer makes the
/// landing on ν exact.
pub fn terminal_order(nu: f64, z: Complex64, p: &PrecisionProfile) -> Result<TerminalOrder, Error> {
    let abs_z = z.norm();
    if 4.0 * (nu + 1.0).sqrt() < abs_z && abs_z < p.s2.abs_z {
        let mut target = abs_z * abs_z / 16.0;
        if abs_z < p.z_s3 {
            target = target.max(series_seed_order(z));
        }
        // ⌊target⌋ + (ν − ⌊ν⌋) − ν = ⌊target⌋ − ⌊ν⌋, raised until ≥ 0
        let steps = (target.floor() - nu.floor()).max(0.0);
        Ok(TerminalOrder { steps: checked_steps(steps)?, rule: TerminalRule::Quadratic })
    } else {
        threshold_order(nu, z, p)
    }
}

/// Lowest order N at which the power series for I_N(z) keeps its
/// cancellation factor exp((Im z)²/(2(N+1))) below e².
pub fn series_seed_order(z: Complex64) -> f64 {
    0.25 * z.im * z.im - 1.0
}

fn threshold_order(nu: f64, z: Complex64, p: &PrecisionProfile) -> Result<TerminalOrder, Error> {
    let target = p.nu_threshold(z.norm()).max(turning_point_order(z));
    let steps = (target - nu).ceil().max(0.0);
    Ok(TerminalOrder { steps: checked_steps(steps)?, rule: TerminalRule::Threshold })
}

fn checked_steps(steps: f64) -> Result<u32, Error> {
    if steps > MAX_STEPS as f64 {
        return Err(Error::RecurrenceTooLong(steps));
    }
    Ok(steps as u32)
}

/// Most recurrence steps taken before giving up with
/// [`Error::RecurrenceTooLong`].
pub const MAX_STEPS: u32 = 1 << 26;

/// Rescaling factor 2^RESCALE_EXP applied while the recurrence grows.
const RESCALE_EXP: i32 = 600;

/// Seeds (I_{order+1}, I_order) divided by e^{log_scale}.
struct Seeds {
    upper: Complex64,
    lower: Complex64,
    log_scale: f64,
}

enum SeedOutcome {
    Ready(Seeds),
    Done(EvalResult),
}

/// Seeds at `order`, or `None` when the uniform expansion would be used too
/// close to a turning point or does not converge.
fn seeds(order: f64, z: Complex64, p: &PrecisionProfile, uk: &UkTable, strict: bool) -> Result<Option<SeedOutcome>, Error> {
    if z.norm() < p.z_s3 {
        let upper = series_eval(order + 1.0, z, p);
        let lower = series_eval(order, z, p);
        if upper.status == Status::OverflowError || lower.status == Status::OverflowError {
            return Ok(Some(SeedOutcome::Done(EvalResult::overflow(RegionTag::Recurrence))));
        }
        if upper.status == Status::UnderflowZero && lower.status == Status::UnderflowZero {
            return Ok(Some(SeedOutcome::Done(EvalResult::underflow(RegionTag::Recurrence))));
        }
        return Ok(Some(SeedOutcome::Ready(Seeds { upper: upper.value, lower: lower.value, log_scale: 0.0 })));
    }
    if strict {
        let w = z / order;
        if (w * w + 1.0).norm() < TURNING_POINT_MARGIN {
            return Ok(None);
        }
    }
    let upper = asympt_nu::uniform_parts(order + 1.0, z, uk)?;
    let lower = asympt_nu::uniform_parts(order, z, uk)?;
    if strict && !(upper.converged && lower.converged) {
        return Ok(None);
    }
    Ok(Some(SeedOutcome::Ready(Seeds {
        upper: cis(upper.phase) * (upper.log_mag - lower.log_mag).exp() * upper.sum,
        lower: cis(lower.phase) * lower.sum,
        log_scale: lower.log_mag,
    })))
}

/// Evaluates I_ν(z) by backward recurrence. Requires z ≠ 0.
///
/// The recurrence runs on seeds scaled to unit size, so seeds below the
/// underflow threshold still yield a representable I_ν(z).
pub fn recurrence_eval(nu: f64, z: Complex64, p: &PrecisionProfile, uk: &UkTable) -> Result<EvalResult, Error> {
    let mut term = terminal_order(nu, z, p)?;
    let outcome = match seeds(term.order(nu), z, p, uk, term.rule == TerminalRule::Quadratic)? {
        Some(o) => o,
        None => {
            term = threshold_order(nu, z, p)?;
            seeds(term.order(nu), z, p, uk, false)?.expect("unchecked seeds always exist")
        }
    };
    let s = match outcome {
        SeedOutcome::Ready(s) => s,
        SeedOutcome::Done(r) => return Ok(r),
    };
    let rescale = 2f64.powi(RESCALE_EXP);
    let shrink = 2f64.powi(-RESCALE_EXP);
    let mut exp2 = 0i32;
    let two_over_z = z.inv() * 2.0;
    let (mut next, mut cur) = (s.upper, s.lower);
    for j in (1..=term.steps).rev() {
        let mu = nu + j as f64;
        let prev = two_over_z * cur * mu + next;
        next = cur;
        cur = prev;
        if max_abs(cur) > rescale {
            next *= shrink;
            cur *= shrink;
            exp2 += RESCALE_EXP;
        }
    }
    Ok(unscale(cur, s.log_scale, exp2, p))
}

/// v · e^{log_scale} · 2^exp2, or the status it over- or underflows to.
fn unscale(v: Complex64, log_scale: f64, exp2: i32, p: &PrecisionProfile) -> EvalResult {
    if !(v.re.is_finite() && v.im.is_finite()) {
        return EvalResult::overflow(RegionTag::Recurrence);
    }
    let norm = v.norm();
    if norm == 0.0 {
        return EvalResult::ok_or_underflow(v, RegionTag::Recurrence, p.ln_rmin);
    }
    let total = log_scale + exp2 as f64 * std::f64::consts::LN_2;
    let log_mag = total + norm.ln();
    if log_mag > p.ln_rmax {
        return EvalResult::overflow(RegionTag::Recurrence);
    }
    if log_mag < p.ln_rmin {
        return EvalResult::underflow(RegionTag::Recurrence);
    }
    let value = if total == 0.0 {
        v
    } else if total.abs() < 700.0 {
        v * total.exp()
    } else {
        let half = (0.5 * total).exp();
        (v * half) * half
    };
    if !(value.re.is_finite() && value.im.is_finite()) {
        return EvalResult::overflow(RegionTag::Recurrence);
    }
    EvalResult::ok_or_underflow(value, RegionTag::Recurrence, p.ln_rmin)
}
