//! Precision-dependent constants.
//!
//! Every region boundary used by [`crate::dispatch`] is read from a
//! [`PrecisionProfile`]. Profiles are plain values: build one, share it.

/// A (ν, |z|) corner point of the region map.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegionPoint {
    pub nu: f64,
    pub abs_z: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PrecisionProfile {
    /// "double" or "extended".
    pub name: &'static str,
    /// Spacing of floating-point numbers at 1; series and expansion
    /// termination tolerance.
    pub epsilon: f64,
    /// Decimal digits carried by the precision.
    pub digits: u32,
    /// ln of the smallest positive normalized number.
    pub ln_rmin: f64,
    /// ln of the largest finite number.
    pub ln_rmax: f64,
    /// Lower |z| bound of the large-argument expansion.
    pub z_s3: f64,
    /// Offset in the large-order threshold ν_th(|z|) = C1 + |z|.
    pub c1: f64,
    /// Radius beyond which the uniform expansion is extended below ν_th.
    pub z_mid: f64,
    /// Extension sector: Re z > phase_slope · |Im z|.
    pub phase_slope: f64,
    /// End of the series underflow frontier on the series edge.
    pub s1: RegionPoint,
    /// |z| above which the recurrence seeds at ν_th instead of |z|²/16.
    pub s2: RegionPoint,
    /// Real-axis overflow root of x − ½ln x = ln R_max + ½ln 2π.
    pub overflow_x_real: f64,
    /// Hard cap on series and expansion term counts.
    pub max_terms: usize,
    /// Number of U_k polynomials in the uniform expansion (k = 1..=uk_count).
    pub uk_count: usize,
}

impl PrecisionProfile {
    /// ν_th(|z|) = C1 + |z|.
    #[inline]
    pub fn nu_threshold(&self, abs_z: f64) -> f64 {
        self.c1 + abs_z
    }

    /// Re z above which e^{−z} is below ε relative to e^{z}, i.e.
    /// 2 Re z > −ln ε.
    #[inline]
    pub fn negligible_reflection_re(&self) -> f64 {
        -0.5 * self.epsilon.ln()
    }

    /// The S3 corner, (C1, |z|_S3).
    pub fn s3(&self) -> RegionPoint {
        RegionPoint { nu: self.c1, abs_z: self.z_s3 }
    }
}

/// IEEE binary64 constants.
pub fn profile_double() -> PrecisionProfile {
    PrecisionProfile {
        name: "double",
        epsilon: f64::EPSILON,
        digits: 16,
        ln_rmin: f64::MIN_POSITIVE.ln(),
        ln_rmax: f64::MAX.ln(),
        z_s3: 16.0,
        c1: 52.0,
        z_mid: 28.8,
        phase_slope: 0.4,
        s1: RegionPoint { nu: 498.85, abs_z: 89.43 },
        s2: RegionPoint { nu: 91.46, abs_z: 38.46 },
        overflow_x_real: 713.9871,
        max_terms: 2000,
        uk_count: 24,
    }
}

/// IEEE binary128 constants.
///
/// No binary128 scalar backend is built; the profile exists so the region
/// map can be checked for both precisions. The logarithmic limits are stored
/// rounded to f64, which is all the region map needs.
pub fn profile_extended() -> PrecisionProfile {
    const LN_2: f64 = std::f64::consts::LN_2;
    PrecisionProfile {
        name: "extended",
        epsilon: 1.925_929_944_387_235_9e-34, // 2^-112
        digits: 34,
        ln_rmin: -16382.0 * LN_2,
        ln_rmax: 16384.0 * LN_2,
        z_s3: 60.0,
        c1: 262.0,
        z_mid: 180.0,
        phase_slope: 0.4,
        s1: RegionPoint { nu: 4514.29, abs_z: 268.78 },
        s2: RegionPoint { nu: 336.48, abs_z: 73.48 },
        overflow_x_real: 11360.7249,
        max_terms: 4000,
        uk_count: 18,
    }
}
