//! Boundary-integral workbench for time-harmonic electromagnetic scattering
//! from a homogeneous penetrable unit sphere.
//!
//! Everything is spectral: on the sphere every rotation-invariant trace of a
//! layer potential is diagonal (or block-diagonal) in vector spherical
//! harmonics, so each integral-equation formulation reduces to a small dense
//! complex block per harmonic degree `n`. The crate assembles those blocks for
//! several competing formulations of the Maxwell transmission problem,
//!
//!   * the decoupled field equations (electric / magnetic / rescaled),
//!   * the Muller second-kind system,
//!   * a family of charge-current systems parameterised by `eta`,
//!   * the decoupled charge-current pipeline (Muller + two scalar systems),
//!
//! solves them against plane-wave data, evaluates the represented fields off
//! the surface, and validates against the classical Mie series.
//!
//! The crate is `no_std` + `alloc`; all IO, CLI and sweep drivers live in the
//! companion crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod formulations;
pub mod linalg;
pub mod media;
pub mod scatter;
pub mod specfun;
pub mod symbols;

pub use media::{Medium, ProblemSetup};
pub use num_complex::Complex64;

/// Imaginary unit, used pervasively in kernel and symbol formulas.
pub const I: Complex64 = Complex64::new(0.0, 1.0);

/// Complex zero.
pub const C_ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Complex one.
pub const C_ONE: Complex64 = Complex64::new(1.0, 0.0);

#[inline]
pub fn c64(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[inline]
pub fn cr(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}
