//! Plane-wave scattering: right-hand sides, per-mode solves, off-surface
//! field evaluation, the Mie reference, and Maxwell consistency checks.

mod consistency;
mod fields;
mod mie;
mod planewave;
mod rhs;
mod solve;

pub use consistency::{divergence_defect, maxwell_consistency, silver_muller_residual, ConsistencyReport};
pub use fields::{evaluate_field, evaluate_incident, FieldError, FieldSample, Region};
pub use mie::{mie_mode_coefficients, mie_reference, MieCoefficients};
pub use planewave::{incident_modes, incident_modes_by_projection, IncidentModes, PlaneWave, PlaneWaveError};
pub use rhs::{boundary_data, BoundaryData};
pub use solve::{condition_report, solve, ConditionReport, DensitySpectrum, FormulationChoice, SolveError, SolveResult};

/// Flat index of mode (n, m) with |m| <= n: modes of degree n occupy
/// n^2 ..= n^2 + 2n.
pub fn mode_index(n: usize, m: i64) -> usize {
    debug_assert!(m.unsigned_abs() as usize <= n);
    n * n + (n as i64 + m) as usize
}

/// Total number of modes with degree <= n_max.
pub fn mode_count(n_max: usize) -> usize {
    (n_max + 1) * (n_max + 1)
}

/// Band around the unit sphere excluded from field evaluation: the
/// representation series converge too slowly against the surface.
pub const SURFACE_BAND: f64 = 1e-3;
