//! Incident plane waves and their vector spherical-harmonic expansion.
//!
//! An incident Maxwell field in the exterior medium expands as
//!
//! ```text
//! E_in = sum_nm  p_nm j_n(k0 r) W_nm
//!      + q_nm [ nu j_n(k0 r)/(k0 r) Y_nm r^ + (rho j_n)'(k0 r)/(k0 r) V_nm ]
//! ```
//!
//! (TE and TM families). For the canonical z-propagating x-polarized wave
//! the coefficients are closed-form and only |m| = 1 survives:
//!
//! ```text
//! p_{n,+-1} = -i^{n+1} sqrt(pi (2n+1)),   q_{n,+-1} = +- i^{n+1} sqrt(pi (2n+1))
//! ```
//!
//! General directions and polarizations go through surface projection, with the
//! TE/TM coefficients extracted from whichever of the E- or H-trace carries
//! the better-conditioned radial factor (j_n and its Riccati derivative never
//! vanish together).

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use super::{mode_count, mode_index};
use crate::media::ProblemSetup;
use crate::specfun::{bessel_table, eval_harmonic, gauss_legendre};
use crate::{c64, cr, I};

#[derive(Debug, Clone, PartialEq)]
pub enum PlaneWaveError {
    NotUnit(&'static str),
    NotOrthogonal,
}

impl fmt::Display for PlaneWaveError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PlaneWaveError::NotUnit(which) => write!(f, "{which} must be a unit vector"),
            PlaneWaveError::NotOrthogonal => {
                write!(f, "polarization must be orthogonal to direction")
            }
        }
    }
}

/// Linearly polarized plane wave E = amplitude * pol * exp(i k0 dir.x).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlaneWave {
    pub direction: [f64; 3],
    pub polarization: [f64; 3],
    pub amplitude: Complex64,
}

impl PlaneWave {
    pub fn new(
        direction: [f64; 3],
        polarization: [f64; 3],
        amplitude: Complex64,
    ) -> Result<Self, PlaneWaveError> {
        let norm = |v: [f64; 3]| (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        if (norm(direction) - 1.0).abs() > 1e-12 {
            return Err(PlaneWaveError::NotUnit("direction"));
        }
        if (norm(polarization) - 1.0).abs() > 1e-12 {
            return Err(PlaneWaveError::NotUnit("polarization"));
        }
        let dot = direction[0] * polarization[0]
            + direction[1] * polarization[1]
            + direction[2] * polarization[2];
        if dot.abs() > 1e-12 {
            return Err(PlaneWaveError::NotOrthogonal);
        }
        Ok(PlaneWave {
            direction,
            polarization,
            amplitude,
        })
    }

    /// The canonical wave of the validation experiments.
    pub fn z_propagating_x_polarized() -> Self {
        PlaneWave {
            direction: [0.0, 0.0, 1.0],
            polarization: [1.0, 0.0, 0.0],
            amplitude: cr(1.0),
        }
    }

    fn is_canonical(&self) -> bool {
        self.direction == [0.0, 0.0, 1.0] && self.polarization == [1.0, 0.0, 0.0]
    }

    /// H = (k0/(omega mu0)) dir x E; the prefactor is sqrt(eps0 mu0)/mu0 on
    /// the wavenumber branch, well-defined down to omega = 0.
    pub fn h_prefactor(&self, setup: &ProblemSetup) -> Complex64 {
        setup.exterior.refractive_index() / setup.exterior.mu
    }
}

/// TE (p) and TM (q) expansion coefficients of the incident electric field,
/// indexed by [`mode_index`].
#[derive(Debug, Clone)]
pub struct IncidentModes {
    pub n_max: usize,
    pub te: Vec<Complex64>,
    pub tm: Vec<Complex64>,
}

impl IncidentModes {
    pub fn te(&self, n: usize, m: i64) -> Complex64 {
        self.te[mode_index(n, m)]
    }
    pub fn tm(&self, n: usize, m: i64) -> Complex64 {
        self.tm[mode_index(n, m)]
    }
}

/// Expansion coefficients; closed form for the canonical wave, projection
/// otherwise. Requires omega > 0 (at omega = 0 the TE/TM split degenerates
/// and right-hand sides are built by direct trace projection instead).
pub fn incident_modes(pw: &PlaneWave, setup: &ProblemSetup, n_max: usize) -> IncidentModes {
    if pw.is_canonical() {
        let mut te = vec![c64(0.0, 0.0); mode_count(n_max)];
        let mut tm = te.clone();
        let mut ipow = I; // i^{n+1} at n = 0
        for n in 1..=n_max {
            ipow *= I;
            let scale = (core::f64::consts::PI * (2.0 * n as f64 + 1.0)).sqrt();
            let base = ipow * scale * pw.amplitude;
            te[mode_index(n, 1)] = -base;
            te[mode_index(n, -1)] = -base;
            tm[mode_index(n, 1)] = base;
            tm[mode_index(n, -1)] = -base;
        }
        IncidentModes { n_max, te, tm }
    } else {
        incident_modes_by_projection(pw, setup, n_max)
    }
}

/// Evaluate the incident E and H at a point, in closed form.
pub fn eval_plane_wave(
    pw: &PlaneWave,
    setup: &ProblemSetup,
    point: [f64; 3],
) -> ([Complex64; 3], [Complex64; 3]) {
    let k0 = setup.k0();
    let phase = (I
        * k0
        * (pw.direction[0] * point[0] + pw.direction[1] * point[1] + pw.direction[2] * point[2]))
        .exp()
        * pw.amplitude;
    let e = [
        phase * pw.polarization[0],
        phase * pw.polarization[1],
        phase * pw.polarization[2],
    ];
    let hf = pw.h_prefactor(setup);
    let dxp = [
        pw.direction[1] * pw.polarization[2] - pw.direction[2] * pw.polarization[1],
        pw.direction[2] * pw.polarization[0] - pw.direction[0] * pw.polarization[2],
        pw.direction[0] * pw.polarization[1] - pw.direction[1] * pw.polarization[0],
    ];
    let h = [phase * hf * dxp[0], phase * hf * dxp[1], phase * hf * dxp[2]];
    (e, h)
}

/// Quadrature grid over the sphere sized to resolve degree n_max plus the
/// plane wave's own angular content.
fn projection_grid(n_max: usize, k0_norm: f64) -> Vec<([f64; 3], f64)> {
    let nt = n_max + (k0_norm.ceil() as usize) + 14;
    let np = 2 * nt;
    let (xs, ws) = gauss_legendre(nt);
    let mut grid = Vec::with_capacity(nt * np);
    for (x, w) in xs.iter().zip(&ws) {
        let s = (1.0 - x * x).sqrt();
        for ip in 0..np {
            let phi = 2.0 * core::f64::consts::PI * ip as f64 / np as f64;
            grid.push((
                [s * phi.cos(), s * phi.sin(), *x],
                w * 2.0 * core::f64::consts::PI / np as f64,
            ));
        }
    }
    grid
}

/// TE/TM coefficients by surface projection of the E and H traces; used for
/// non-canonical waves and as the build-time cross-check of the closed form.
pub fn incident_modes_by_projection(
    pw: &PlaneWave,
    setup: &ProblemSetup,
    n_max: usize,
) -> IncidentModes {
    let k0 = setup.k0();
    let grid = projection_grid(n_max, k0.norm());
    let samples: Vec<([f64; 3], f64, [Complex64; 3], [Complex64; 3])> = grid
        .iter()
        .map(|(dir, w)| {
            let (e, h) = eval_plane_wave(pw, setup, *dir);
            (*dir, *w, e, h)
        })
        .collect();
    let table = bessel_table(n_max.max(1), k0).expect("omega > 0 for projection");
    let mut te = vec![c64(0.0, 0.0); mode_count(n_max)];
    let mut tm = te.clone();
    let hf = -1.0 / (I * setup.omega * setup.exterior.mu); // H = hf * k0-curl factor
    for n in 1..=n_max {
        let j = table.j[n];
        let jh = j + k0 * table.dj[n];
        for m in -(n as i64)..=(n as i64) {
            let mut ew = c64(0.0, 0.0);
            let mut ev = c64(0.0, 0.0);
            let mut hv = c64(0.0, 0.0);
            let mut hw = c64(0.0, 0.0);
            for (dir, w, e, h) in &samples {
                let hb = eval_harmonic(n, m, *dir);
                let dotc = |a: &[Complex64; 3], b: &[Complex64; 3]| {
                    a[0].conj() * b[0] + a[1].conj() * b[1] + a[2].conj() * b[2]
                };
                ew += *w * dotc(&hb.w, e);
                ev += *w * dotc(&hb.v, e);
                hv += *w * dotc(&hb.v, h);
                hw += *w * dotc(&hb.w, h);
            }
            // E_W = p j ; H_V = -p jh/(i w mu0) -- anchor on the larger factor
            let idx = mode_index(n, m);
            te[idx] = if j.norm() >= (hf * jh).norm() {
                ew / j
            } else {
                hv / (hf * jh)
            };
            // E_V = q jh/k0 ; H_W = -q k0 j/(i w mu0)
            tm[idx] = if (jh / k0).norm() >= (hf * k0 * j).norm() {
                ev / (jh / k0)
            } else {
                hw / (hf * k0 * j)
            };
        }
    }
    IncidentModes { n_max, te, tm }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::media::Medium;

    #[test]
    fn validation_rules() {
        assert!(PlaneWave::new([0.0, 0.0, 1.0], [1.0, 0.0, 0.0], cr(1.0)).is_ok());
        assert!(matches!(
            PlaneWave::new([0.0, 0.0, 2.0], [1.0, 0.0, 0.0], cr(1.0)),
            Err(PlaneWaveError::NotUnit(_))
        ));
        assert!(matches!(
            PlaneWave::new([0.0, 0.0, 1.0], [0.0, 0.6, 0.8], cr(1.0))
                .and(PlaneWave::new([0.0, 0.6, 0.8], [0.0, 0.6, 0.8], cr(1.0))),
            Err(PlaneWaveError::NotOrthogonal)
        ));
    }

    #[test]
    fn closed_form_matches_projection_for_canonical_wave() {
        let setup = ProblemSetup::new(1.0, Medium::vacuum(), Medium::vacuum()).unwrap();
        let pw = PlaneWave::z_propagating_x_polarized();
        let n_max = 6;
        let closed = incident_modes(&pw, &setup, n_max);
        let proj = incident_modes_by_projection(&pw, &setup, n_max);
        for n in 1..=n_max {
            for m in -(n as i64)..=(n as i64) {
                let i = mode_index(n, m);
                // the anchor division amplifies quadrature noise near small
                // j_n(k0); 1e-9 still nails any sign or factor error
                assert!(
                    (closed.te[i] - proj.te[i]).norm() < 1e-9,
                    "te n={n} m={m}: {} vs {}",
                    closed.te[i],
                    proj.te[i]
                );
                assert!(
                    (closed.tm[i] - proj.tm[i]).norm() < 1e-9,
                    "tm n={n} m={m}: {} vs {}",
                    closed.tm[i],
                    proj.tm[i]
                );
                if m.abs() != 1 {
                    assert!(closed.te[i].norm() == 0.0 && closed.tm[i].norm() == 0.0);
                }
            }
        }
    }

    #[test]
    fn tilted_wave_reproduces_its_own_trace() {
        // project a rotated wave and check the expansion reproduces the
        // surface E-field pointwise
        let setup = ProblemSetup::new(1.3, Medium::vacuum(), Medium::vacuum()).unwrap();
        let s2 = 0.5f64.sqrt();
        let pw = PlaneWave::new([s2, 0.0, s2], [s2, 0.0, -s2], c64(0.8, 0.3)).unwrap();
        let n_max = 16;
        let modes = incident_modes_by_projection(&pw, &setup, n_max);
        let k0 = setup.k0();
        let table = bessel_table(n_max, k0).unwrap();
        for dir in [[0.3, -0.5, 0.81], [-0.2, 0.9, 0.38]] {
            let norm = (dir[0] * dir[0] + dir[1] * dir[1] + dir[2] * dir[2]).sqrt();
            let dirn = [dir[0] / norm, dir[1] / norm, dir[2] / norm];
            let (e_exact, _) = eval_plane_wave(&pw, &setup, dirn);
            let mut e_series = [c64(0.0, 0.0); 3];
            for n in 1..=n_max {
                let nf = n as f64;
                let nu = (nf * (nf + 1.0)).sqrt();
                let j = table.j[n];
                let jh = j + k0 * table.dj[n];
                for m in -(n as i64)..=(n as i64) {
                    let hb = eval_harmonic(n, m, dirn);
                    let p = modes.te(n, m);
                    let q = modes.tm(n, m);
                    for c in 0..3 {
                        e_series[c] += p * j * hb.w[c]
                            + q * (nu * j / k0 * hb.x[c] + jh / k0 * hb.v[c]);
                    }
                }
            }
            // tangential + radial series reproduces the full vector
            for c in 0..3 {
                assert!(
                    (e_series[c] - e_exact[c]).norm() < 1e-9,
                    "component {c}: {} vs {}",
                    e_series[c],
                    e_exact[c]
                );
            }
        }
    }
}
