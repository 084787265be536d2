//! Modified Bessel function of the first kind, I<sub>ν</sub>(z), for real order
//! ν ≥ 0 and complex argument z.
//!
//! The (ν, |z|) plane is split into regions, each served by one method:
//!
//! | Region | Method | Module |
//! |--------|--------|--------|
//! | \|z\| ≤ 4√(ν+1) | ascending power series | [`series`] |
//! | \|z\| ≥ max(16, ν²/2) | large-argument expansion | [`asympt_z`] |
//! | ν ≥ 52 + \|z\| | uniform large-order expansion | [`asympt_nu`] |
//! | \|z\| > 28.8, Re z > max(0.4·\|Im z\|, 18.02) | uniform expansion, extended | [`asympt_nu`] |
//! | everything else | seeded backward recurrence | [`recurrence`] |
//!
//! The thresholds live in [`PrecisionProfile`]; [`dispatch`] picks the region
//! and handles the left half-plane by analytic continuation.
//!
//! ```
//! use ibessel::besseli;
//! use num_complex::Complex64;
//!
//! let v = besseli(0.0, Complex64::new(1.0, 0.0)).unwrap();
//! assert!((v.re - 1.2660658777520084).abs() < 1e-15);
//! assert_eq!(v.im, 0.0);
//! ```
//!
//! Results that underflow come back as zero with
//! [`Status::UnderflowZero`]; overflow is reported, never returned as `inf`.

pub mod accuracy;
pub mod asympt_nu;
pub mod asympt_z;
pub mod bench;
pub mod dispatch;
mod error;
pub mod float;
pub mod gamma;
pub mod grid;
pub mod precision;
pub mod recurrence;
pub mod series;
mod types;

pub use asympt_nu::{generate_uk, UkTable};
pub use dispatch::{besseli, Evaluator};
pub use error::Error;
pub use precision::{profile_double, profile_extended, PrecisionProfile};
pub use types::{ComplexScalar, EvalResult, RegionTag, Status};
