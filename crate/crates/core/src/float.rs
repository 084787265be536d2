//! Small floating-point helpers shared by the evaluation routines.

use num_complex::Complex64;

/// Returns `(sin(πt), cos(πt))` with exact results at multiples of 1/2.
///
/// The argument is reduced exactly before multiplying by π, so large `t`
/// (large orders in e^{iνπ}) keep full accuracy.
pub fn sincos_pi(t: f64) -> (f64, f64) {
    // t = n/2 + f with |f| <= 1/4; both steps are exact in binary floating point.
    let n = (2.0 * t).round();
    let f = t - 0.5 * n;
    let (s, c) = (std::f64::consts::PI * f).sin_cos();
    let (s, c) = if f == 0.0 { (0.0, 1.0) } else { (s, c) };
    match n.rem_euclid(4.0) as u8 {
        0 => (s, c),
        1 => (c, -s),
        2 => (-s, -c),
        _ => (-c, s),
    }
}

/// e^{iπt} as a complex number.
pub fn cis_pi(t: f64) -> Complex64 {
    let (s, c) = sincos_pi(t);
    Complex64::new(c, s)
}

/// e^{iθ}.
pub fn cis(theta: f64) -> Complex64 {
    let (s, c) = theta.sin_cos();
    Complex64::new(c, s)
}

/// Largest component magnitude; cheaper than `norm` and enough for guards.
#[inline]
pub fn max_abs(z: Complex64) -> f64 {
    z.re.abs().max(z.im.abs())
}

/// `-1.0` when the imaginary part carries a negative sign bit (including `-0.0`).
///
/// Using the sign bit rather than `im < 0` keeps I_ν(conj z) = conj I_ν(z)
/// exact on the negative real axis as well.
#[inline]
pub fn upper_sign(z: Complex64) -> f64 {
    if z.im.is_sign_negative() {
        -1.0
    } else {
        1.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_at_half_integers() {
        assert_eq!(sincos_pi(0.0), (0.0, 1.0));
        assert_eq!(sincos_pi(0.5), (1.0, -0.0));
        assert_eq!(sincos_pi(1.0), (-0.0, -1.0));
        assert_eq!(sincos_pi(1.5), (-1.0, 0.0));
        assert_eq!(sincos_pi(2.0), (0.0, 1.0));
        assert_eq!(sincos_pi(-0.5), (-1.0, 0.0));
        let (s, c) = sincos_pi(701.0);
        assert_eq!((s, c), (-0.0, -1.0));
    }

    #[test]
    fn matches_direct_evaluation() {
        for &t in &[0.1, 0.3, 0.77, 1.25, -2.4, 13.1, 100.01] {
            let (s, c) = sincos_pi(t);
            let x = std::f64::consts::PI * t;
            assert!((s - x.sin()).abs() < 1e-13, "{t}");
            assert!((c - x.cos()).abs() < 1e-13, "{t}");
        }
    }

    #[test]
    fn odd_in_t() {
        for &t in &[0.1, 0.3, 0.77, 1.25, 2.4, 13.1, 700.3] {
            let (s1, c1) = sincos_pi(t);
            let (s2, c2) = sincos_pi(-t);
            assert_eq!(s1, -s2);
            assert_eq!(c1, c2);
        }
    }
}
