//! Region selection and the public entry points.
//!
//! Selection order for a point (ν, z) with Re z ≥ 0:
//!
//! 1. |z| ≤ 4√(ν+1): power series (with the underflow shortcut).
//! 2. |z| ≥ max(|z|_S3, ν²/2): large-argument expansion.
//! 3. ν ≥ C1 + |z|: uniform large-order expansion.
//! 4. |z| > z_mid, Re z > 0.4·|Im z| and 2 Re z > −ln ε: uniform expansion,
//!    extended.
//! 5. otherwise: backward recurrence.
//!
//! In the extended sector (4) the expansion can fail to reach working
//! precision near the sector edge, where the subdominant exponential is no
//! longer negligible. Such points fall back to the recurrence and are tagged
//! `Recurrence`.
//!
//! A point with Re z < 0 is rotated by ∓π onto the right half-plane and
//! the result multiplied by e^{±νπi}, the sign following Im z.

use std::sync::OnceLock;

use num_complex::Complex64;

use crate::float::{cis_pi, upper_sign};
use crate::{asympt_nu, asympt_z, recurrence, series};
use crate::{generate_uk, profile_double, Error, EvalResult, PrecisionProfile, RegionTag, Status, UkTable};

/// The immutable evaluation context: a precision profile and its U_k table.
#[derive(Debug, Clone)]
pub struct Evaluator {
    profile: PrecisionProfile,
    uk: UkTable,
}

impl Evaluator {
    pub fn new(profile: PrecisionProfile) -> Self {
        let uk = generate_uk(profile.uk_count + 1);
        Evaluator { profile, uk }
    }

    /// Shared double-precision evaluator, built on first use.
    pub fn double() -> &'static Evaluator {
        static DOUBLE: OnceLock<Evaluator> = OnceLock::new();
        DOUBLE.get_or_init(|| Evaluator::new(profile_double()))
    }

    pub fn profile(&self) -> &PrecisionProfile {
        &self.profile
    }

    pub fn uk(&self) -> &UkTable {
        &self.uk
    }

    /// The region selected for (ν, z) by the region map, after any
    /// left-half-plane rotation. Series points are reported as `Series` even
    /// when the underflow shortcut will fire, and extended-sector points as
    /// `LargeNuExtension` even when they fall back to the recurrence.
    pub fn region(&self, nu: f64, z: Complex64) -> Result<RegionTag, Error> {
        check_domain(nu, z)?;
        let z = if z.re < 0.0 { -z } else { z };
        Ok(self.classify(nu, z))
    }

    fn classify(&self, nu: f64, z: Complex64) -> RegionTag {
        let p = &self.profile;
        let abs_z = z.norm();
        if series::in_region(nu, abs_z) {
            RegionTag::Series
        } else if asympt_z::in_region(nu, abs_z, p) {
            RegionTag::LargeZ
        } else if asympt_nu::in_region(nu, abs_z, p) {
            RegionTag::LargeNu
        } else if asympt_nu::in_extension(z, abs_z, p) {
            RegionTag::LargeNuExtension
        } else {
            RegionTag::Recurrence
        }
    }

    /// I_ν(z) with status and region.
    pub fn eval(&self, nu: f64, z: Complex64) -> Result<EvalResult, Error> {
        check_domain(nu, z)?;
        if z.re < 0.0 {
            let mut r = self.eval_right(nu, -z)?;
            if r.status == Status::Ok {
                let mut factor = cis_pi(nu);
                if upper_sign(z) < 0.0 {
                    factor = factor.conj();
                }
                r.value *= factor;
            }
            return Ok(r);
        }
        self.eval_right(nu, z)
    }

    fn eval_right(&self, nu: f64, z: Complex64) -> Result<EvalResult, Error> {
        let p = &self.profile;
        match self.classify(nu, z) {
            RegionTag::Series => Ok(series::series_eval(nu, z, p)),
            RegionTag::LargeZ => Ok(asympt_z::asympt_z_eval(nu, z, p)),
            RegionTag::LargeNu => asympt_nu::asympt_nu_eval(nu, z, p, &self.uk),
            RegionTag::LargeNuExtension => match asympt_nu::asympt_nu_checked(nu, z, p, &self.uk)? {
                Some(mut r) => {
                    r.region = RegionTag::LargeNuExtension;
                    Ok(r)
                }
                None => recurrence::recurrence_eval(nu, z, p, &self.uk),
            },
            RegionTag::Recurrence | RegionTag::UnderflowShortcut => {
                recurrence::recurrence_eval(nu, z, p, &self.uk)
            }
        }
    }
}

fn check_domain(nu: f64, z: Complex64) -> Result<(), Error> {
    if !nu.is_finite() || nu < 0.0 {
        return Err(Error::Domain(format!("order must be finite and >= 0, got {nu}")));
    }
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::Domain(format!("argument must be finite, got {z}")));
    }
    Ok(())
}

/// I_ν(z) in double precision.
///
/// Underflowed results are returned as zero; overflow is an error.
///
/// ```
/// use ibessel::{besseli, Error};
/// use num_complex::Complex64;
///
/// let v = besseli(2.0, Complex64::new(100.0, 0.0)).unwrap();
/// assert!((v.re / 1.0523843193243106e42 - 1.0).abs() < 1e-14);
/// assert_eq!(besseli(0.0, Complex64::new(714.0, 0.0)), Err(Error::Overflow));
/// ```
pub fn besseli(nu: f64, z: Complex64) -> Result<Complex64, Error> {
    Evaluator::double().eval(nu, z)?.into_value()
}
