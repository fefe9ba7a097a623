//! Boundary-data spectra: the per-(n, m) right-hand sides of each
//! formulation for plane-wave incidence.
//!
//! For omega > 0 everything is built from the TE/TM incident coefficients
//! (p, q) and the exterior radial factors j = j_n(k0), jh = (rho j_n)'(k0).
//! The traces used below, per mode:
//!
//! ```text
//! -n^ x E_in = p j V - q (jh/k0) W
//! -n^ x H_in = hf (-q k0 j V + p jh W),   hf = -1/(i w mu0)
//! n . E_in   = q nu (j/k0) Y
//! n . H_in   = hf p nu j Y
//! ```
//!
//! The q-row of the field systems is identically zero for Maxwellian
//! incident fields and is stored as an exact zero.
//!
//! At omega = 0 the TE/TM split degenerates; the static field-system data is
//! obtained by direct quadrature projection of the constant incident traces.

use alloc::vec;
use alloc::vec::Vec;
use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use super::planewave::{eval_plane_wave, IncidentModes};
use super::solve::FormulationChoice;
use super::{mode_count, mode_index, PlaneWave};
use crate::media::ProblemSetup;
use crate::specfun::{eval_harmonic, gauss_legendre, sph_j};
use crate::{c64, I};

/// Per-(n, m) right-hand-side vectors matched to the formulation's block
/// dimensions, indexed by [`mode_index`].
#[derive(Debug, Clone)]
pub struct BoundaryData {
    pub n_max: usize,
    pub rows: Vec<Vec<Complex64>>,
}

impl BoundaryData {
    pub fn at(&self, n: usize, m: i64) -> &[Complex64] {
        &self.rows[mode_index(n, m)]
    }
}

/// Exterior radial factors (j_n(k0), (rho j_n)'(k0), j_n(k0)/k0).
fn radial(n: usize, k0: Complex64) -> (Complex64, Complex64, Complex64) {
    let j = sph_j(n, k0);
    let jm1 = if n == 0 { k0.cos() / k0 } else { sph_j(n - 1, k0) };
    // (rho j_n)' = rho j_{n-1} - n j_n
    let jh = k0 * jm1 - (n as f64 - 1.0) * j - j; // = k0 j_{n-1} - n j_n
    (j, jh, j / k0)
}

/// Assemble the right-hand side for `choice` under plane-wave incidence.
pub fn boundary_data(
    choice: &FormulationChoice,
    pw: &PlaneWave,
    setup: &ProblemSetup,
    modes: Option<&IncidentModes>,
) -> BoundaryData {
    let n_max = setup.n_max;
    if setup.omega == 0.0 {
        return static_field_data(choice, pw, setup);
    }
    let owned;
    let modes = match modes {
        Some(m) => m,
        None => {
            owned = super::planewave::incident_modes(pw, setup, n_max);
            &owned
        }
    };
    let k0 = setup.k0();
    let (e0, m0) = (setup.exterior.epsilon, setup.exterior.mu);
    let w = setup.omega;
    let hf = -1.0 / (I * w * m0);
    let mut rows = vec![Vec::new(); mode_count(n_max)];
    for n in 0..=n_max {
        let nf = n as f64;
        let nu = (nf * (nf + 1.0)).sqrt();
        let (j, jh, jok) = radial(n, k0);
        for m in -(n as i64)..=(n as i64) {
            let idx = mode_index(n, m);
            let (p, q) = if n == 0 {
                (c64(0.0, 0.0), c64(0.0, 0.0))
            } else {
                (modes.te(n, m), modes.tm(n, m))
            };
            rows[idx] = match choice {
                FormulationChoice::DfieE | FormulationChoice::DfieScaled => {
                    let rhs = dfie_rows(n, p, q, j, jh, jok, nu, k0, w, e0, m0);
                    if matches!(choice, FormulationChoice::DfieScaled) {
                        scale_dfie_rows(rhs, n, w)
                    } else {
                        rhs
                    }
                }
                FormulationChoice::DfieH => {
                    // dual data: f' = -n^xH_in, q' = 0, p' = -mu0 n.H_in, and
                    // g' = -n^x curl H_in / eps0 = +iw n^xE_in  (the curl of
                    // H carries the opposite sign to the curl of E)
                    if n == 0 {
                        vec![c64(0.0, 0.0); 2]
                    } else {
                        // n^ x H_in has V-part hf (-q k0 j); negate for f'
                        let fv = hf * (q * k0 * j);
                        let fw = -hf * (p * jh);
                        let gv = I * w * (-p * j);
                        let gw = I * w * (q * jh / k0);
                        let pd = -m0 * hf * p * nu * j;
                        vec![fv, fw, c64(0.0, 0.0), gv, gw, pd]
                    }
                }
                FormulationChoice::Muller => {
                    if n == 0 {
                        Vec::new()
                    } else {
                        // rows (H_V, H_W, -E_V, -E_W):
                        // (-n^xH_in ; +n^xE_in)
                        vec![
                            hf * (q * k0 * j),
                            -hf * (p * jh),
                            -p * j,
                            q * jh / k0,
                        ]
                    }
                }
                FormulationChoice::ChargeCurrent(_) => {
                    if n == 0 {
                        vec![c64(0.0, 0.0); 2]
                    } else {
                        vec![
                            hf * (q * k0 * j),
                            -hf * (p * jh),
                            -p * j,
                            q * jh / k0,
                            -e0 * q * nu * jok,
                            -m0 * hf * p * nu * j,
                        ]
                    }
                }
                FormulationChoice::DecoupledCc => {
                    // stage-2 incident parts only; the current-driven parts
                    // are appended after the Muller solve
                    if n == 0 {
                        vec![c64(0.0, 0.0); 4]
                    } else {
                        // (dirichlet_E, neumann_E, dirichlet_H, neumann_H)
                        vec![
                            c64(0.0, 0.0),
                            e0 * q * nu * jok,
                            c64(0.0, 0.0),
                            m0 * hf * p * nu * j,
                        ]
                    }
                }
            };
        }
    }
    BoundaryData { n_max, rows }
}

#[allow(clippy::too_many_arguments)]
fn dfie_rows(
    n: usize,
    p: Complex64,
    q: Complex64,
    j: Complex64,
    jh: Complex64,
    jok: Complex64,
    nu: f64,
    k0: Complex64,
    w: f64,
    e0: Complex64,
    m0: Complex64,
) -> Vec<Complex64> {
    if n == 0 {
        // rows (q, p): no degree-0 content in a Maxwellian incident field
        return vec![c64(0.0, 0.0); 2];
    }
    // f = -n^ x E_in ; g = -i w n^ x H_in ; q = 0 ; p = -eps0 n.E_in
    let fv = p * j;
    let fw = -q * jh / k0;
    let hf = -1.0 / (I * w * m0);
    let gv = -I * w * hf * (-q * k0 * j);
    let gw = -I * w * hf * (p * jh);
    let pd = -e0 * q * nu * jok;
    vec![fv, fw, c64(0.0, 0.0), gv, gw, pd]
}

fn scale_dfie_rows(mut rhs: Vec<Complex64>, n: usize, w: f64) -> Vec<Complex64> {
    // y_s = (f, q/w, g/w, p)
    if n == 0 {
        rhs[0] /= w;
    } else {
        rhs[2] /= w;
        rhs[3] /= w;
        rhs[4] /= w;
    }
    rhs
}

/// omega = 0: project the constant incident traces directly; only the field
/// systems are defined there.
fn static_field_data(
    choice: &FormulationChoice,
    pw: &PlaneWave,
    setup: &ProblemSetup,
) -> BoundaryData {
    let n_max = setup.n_max;
    let mut rows = vec![Vec::new(); mode_count(n_max)];
    let nt = n_max + 8;
    let np = 2 * nt;
    let (xs, ws) = gauss_legendre(nt);
    let (e0c, m0c) = (setup.exterior.epsilon, setup.exterior.mu);
    // samples of the constant traces
    let mut grid = Vec::with_capacity(nt * np);
    for (x, wq) in xs.iter().zip(&ws) {
        let s = (1.0 - x * x).sqrt();
        for ip in 0..np {
            let phi = 2.0 * core::f64::consts::PI * ip as f64 / np as f64;
            let dir = [s * phi.cos(), s * phi.sin(), *x];
            let (e, h) = eval_plane_wave(pw, setup, dir);
            grid.push((dir, wq * 2.0 * core::f64::consts::PI / np as f64, e, h));
        }
    }
    let dotc = |a: &[Complex64; 3], b: &[Complex64; 3]| {
        a[0].conj() * b[0] + a[1].conj() * b[1] + a[2].conj() * b[2]
    };
    for n in 0..=n_max {
        for m in -(n as i64)..=(n as i64) {
            let idx = mode_index(n, m);
            // f = -n^xE_in (V, W), g = -iw n^xH_in = 0, p = -eps0 n.E_in
            let mut fv = c64(0.0, 0.0);
            let mut fw = c64(0.0, 0.0);
            let mut pd = c64(0.0, 0.0);
            for (dir, wq, e, h) in &grid {
                let hb = eval_harmonic(n, m, *dir);
                let ncross = |f: &[Complex64; 3]| {
                    [
                        dir[1] * f[2] - dir[2] * f[1],
                        dir[2] * f[0] - dir[0] * f[2],
                        dir[0] * f[1] - dir[1] * f[0],
                    ]
                };
                let (tr, pw_scale) = match choice {
                    FormulationChoice::DfieH => (ncross(h), m0c),
                    _ => (ncross(e), e0c),
                };
                fv -= *wq * dotc(&hb.v, &tr);
                fw -= *wq * dotc(&hb.w, &tr);
                let nf = match choice {
                    FormulationChoice::DfieH => {
                        dir[0] * h[0] + dir[1] * h[1] + dir[2] * h[2]
                    }
                    _ => dir[0] * e[0] + dir[1] * e[1] + dir[2] * e[2],
                };
                pd -= *wq * pw_scale * hb.y.conj() * nf;
            }
            rows[idx] = if n == 0 {
                vec![c64(0.0, 0.0), pd]
            } else {
                vec![fv, fw, c64(0.0, 0.0), c64(0.0, 0.0), c64(0.0, 0.0), pd]
            };
        }
    }
    BoundaryData { n_max, rows }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::media::Medium;
    use crate::scatter::solve::FormulationChoice;

    #[test]
    fn q_row_is_exactly_zero() {
        let setup = ProblemSetup::new(1.0, Medium::vacuum(), Medium::vacuum())
            .unwrap()
            .with_n_max(8);
        let pw = PlaneWave::z_propagating_x_polarized();
        let bd = boundary_data(&FormulationChoice::DfieE, &pw, &setup, None);
        for n in 1..=8usize {
            for m in -(n as i64)..=(n as i64) {
                assert_eq!(bd.at(n, m)[2], c64(0.0, 0.0));
            }
        }
    }

    #[test]
    fn static_limit_of_the_data() {
        // omega -> 0: f tends to the -n^ x polarization coefficients, g -> 0
        let pwv = PlaneWave::z_propagating_x_polarized();
        let tiny = ProblemSetup::new(1e-9, Medium::vacuum(), Medium::vacuum())
            .unwrap()
            .with_n_max(4);
        let at_zero = ProblemSetup::new(0.0, Medium::vacuum(), Medium::vacuum())
            .unwrap()
            .with_n_max(4);
        let bd_tiny = boundary_data(&FormulationChoice::DfieE, &pwv, &tiny, None);
        let bd_zero = boundary_data(&FormulationChoice::DfieE, &pwv, &at_zero, None);
        for n in 1..=4usize {
            for m in -(n as i64)..=(n as i64) {
                let a = bd_tiny.at(n, m);
                let b = bd_zero.at(n, m);
                for r in [0usize, 1] {
                    assert!((a[r] - b[r]).norm() < 1e-8, "n={n} m={m} row={r}");
                }
                // g rows vanish in the limit
                assert!(a[3].norm() + a[4].norm() < 1e-8);
                assert_eq!(b[3].norm() + b[4].norm(), 0.0);
            }
        }
    }

    #[test]
    fn rhs_matches_direct_projection_of_traces() {
        // the (p, q)-built f-data equals the quadrature projection of
        // -n^ x E_in onto V and W
        let setup = ProblemSetup::new(1.0, Medium::vacuum(), Medium::vacuum())
            .unwrap()
            .with_n_max(5);
        let pw = PlaneWave::z_propagating_x_polarized();
        let bd = boundary_data(&FormulationChoice::DfieE, &pw, &setup, None);
        let nt = 24;
        let np = 48;
        let (xs, ws) = gauss_legendre(nt);
        for n in 1..=5usize {
            for m in [-1i64, 1] {
                let mut fv = c64(0.0, 0.0);
                let mut fw = c64(0.0, 0.0);
                for (x, wq) in xs.iter().zip(&ws) {
                    let s = (1.0 - x * x).sqrt();
                    for ip in 0..np {
                        let phi = 2.0 * core::f64::consts::PI * ip as f64 / np as f64;
                        let dir = [s * phi.cos(), s * phi.sin(), *x];
                        let (e, _) = eval_plane_wave(&pw, &setup, dir);
                        let tr = [
                            dir[1] * e[2] - dir[2] * e[1],
                            dir[2] * e[0] - dir[0] * e[2],
                            dir[0] * e[1] - dir[1] * e[0],
                        ];
                        let hb = eval_harmonic(n, m, dir);
                        let w2 = wq * 2.0 * core::f64::consts::PI / np as f64;
                        fv -= w2
                            * (hb.v[0].conj() * tr[0]
                                + hb.v[1].conj() * tr[1]
                                + hb.v[2].conj() * tr[2]);
                        fw -= w2
                            * (hb.w[0].conj() * tr[0]
                                + hb.w[1].conj() * tr[1]
                                + hb.w[2].conj() * tr[2]);
                    }
                }
                let got = bd.at(n, m);
                assert!((got[0] - fv).norm() < 1e-10, "f_V n={n} m={m}: {} vs {fv}", got[0]);
                assert!((got[1] - fw).norm() < 1e-10, "f_W n={n} m={m}: {} vs {fw}", got[1]);
            }
        }
    }
}
