//! Special functions on which the spectral machinery rests: spherical
//! Bessel/Hankel functions of complex argument, normalized associated
//! Legendre functions, vector spherical harmonics and Gauss-Legendre rules.

mod bessel;
mod harmonics;
mod legendre;
mod quadrature;

pub use bessel::{bessel_table, sph_h1, sph_j, sph_j_series, sph_y_series, BesselTable, SpecFunError};
pub use harmonics::{eval_harmonic, HarmonicPoint};
pub use legendre::assoc_legendre_point;
pub use quadrature::gauss_legendre;
