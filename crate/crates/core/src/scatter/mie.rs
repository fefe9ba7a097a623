//! Classical Mie series for the homogeneous penetrable sphere, with complex
//! material parameters; the exact reference every formulation is validated
//! against.
//!
//! Per degree and polarization the transmission match of the incident
//! (p, q) coefficients gives (j = j_n(k0), jk = j_n(k), h = h1_n(k0),
//! Riccati derivatives jh, jkh, hh):
//!
//! ```text
//! TE:  p_sc  = p_in (mu jh jk - mu0 j jkh) / (mu0 h jkh - mu hh jk)
//!      p_int = (p_in j + p_sc h) / jk
//! TM:  q_sc  = q_in (eps jh jk - eps0 j jkh) / (eps0 h jkh - eps hh jk)
//!      q_int = (k/k0) (q_in jh + q_sc hh) / jkh
//! ```

use alloc::vec::Vec;
use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use super::fields::{FieldError, FieldSample, Region};
use super::planewave::incident_modes;
use super::{mode_index, PlaneWave, SURFACE_BAND};
use crate::media::ProblemSetup;
use crate::specfun::{bessel_table, eval_harmonic};
use crate::{c64, cr, I};

/// Scattering and interior coefficients of one degree, as ratios applied to
/// the incident (p, q).
#[derive(Debug, Clone, Copy)]
pub struct MieCoefficients {
    pub n: usize,
    /// scattered/incident, TE (W-type) polarization
    pub te_sc: Complex64,
    /// scattered/incident, TM (V/r-type) polarization
    pub tm_sc: Complex64,
    pub te_int: Complex64,
    pub tm_int: Complex64,
}

/// Per-degree Mie ratios for n = 1..=n_max.
pub fn mie_mode_coefficients(setup: &ProblemSetup, n_max: usize) -> Vec<MieCoefficients> {
    let (k0, k) = (setup.k0(), setup.k());
    let (e0, m0) = (setup.exterior.epsilon, setup.exterior.mu);
    let (e, m) = (setup.interior.epsilon, setup.interior.mu);
    let t0 = bessel_table(n_max.max(1), k0).expect("omega > 0");
    let tk = bessel_table(n_max.max(1), k).expect("omega > 0");
    let mut out = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        let j = t0.j[n];
        let jh = j + k0 * t0.dj[n];
        let h = t0.h1[n];
        let hh = h + k0 * t0.dh1[n];
        let jk = tk.j[n];
        let jkh = jk + k * tk.dj[n];
        let te_sc = (m * jh * jk - m0 * j * jkh) / (m0 * h * jkh - m * hh * jk);
        let tm_sc = (e * jh * jk - e0 * j * jkh) / (e0 * h * jkh - e * hh * jk);
        let te_int = (j + te_sc * h) / jk;
        let tm_int = (k / k0) * (jh + tm_sc * hh) / jkh;
        out.push(MieCoefficients {
            n,
            te_sc,
            tm_sc,
            te_int,
            tm_int,
        });
    }
    out
}

/// Mie fields at the given points: scattered outside, total inside.
/// Truncation runs to setup.n_max + 8.
pub fn mie_reference(
    pw: &PlaneWave,
    setup: &ProblemSetup,
    points: &[[f64; 3]],
) -> Result<Vec<FieldSample>, FieldError> {
    if setup.omega == 0.0 {
        return Err(FieldError::StaticUnsupported);
    }
    let n_max = setup.n_max + 8;
    let modes = incident_modes(pw, setup, n_max);
    let ratios = mie_mode_coefficients(setup, n_max);
    let (k0, k) = (setup.k0(), setup.k());
    let (m0, m) = (setup.exterior.mu, setup.interior.mu);
    let w = setup.omega;
    let mut out = Vec::with_capacity(points.len());
    for &pt in points {
        let r = (pt[0] * pt[0] + pt[1] * pt[1] + pt[2] * pt[2]).sqrt();
        if (r - 1.0).abs() < SURFACE_BAND {
            return Err(FieldError::InExclusionBand(pt));
        }
        let exterior = r > 1.0;
        let dir = [pt[0] / r, pt[1] / r, pt[2] / r];
        let (k_reg, mu_reg) = if exterior { (k0, m0) } else { (k, m) };
        let z = k_reg * r;
        // skip dead modes before touching the radial functions
        let mut n_active = 0usize;
        for n in 1..=n_max {
            let rat = &ratios[n - 1];
            let any = (-(n as i64)..=(n as i64)).any(|mm| {
                let i = mode_index(n, mm);
                let (p, q) = (modes.te[i], modes.tm[i]);
                let (cp, cq) = if exterior {
                    (p * rat.te_sc, q * rat.tm_sc)
                } else {
                    (p * rat.te_int, q * rat.tm_int)
                };
                cp != c64(0.0, 0.0) || cq != c64(0.0, 0.0)
            });
            if any {
                n_active = n;
            }
        }
        let table = bessel_table(n_active.max(1), z).expect("omega > 0");
        let mut e = [c64(0.0, 0.0); 3];
        let mut h = [c64(0.0, 0.0); 3];
        let hfac = -k_reg / (I * w * mu_reg);
        for n in 1..=n_active {
            let nf = n as f64;
            let nu = (nf * (nf + 1.0)).sqrt();
            let (zr, dzr) = if exterior {
                (table.h1[n], table.dh1[n])
            } else {
                (table.j[n], table.dj[n])
            };
            let zh = zr + z * dzr;
            let rat = &ratios[n - 1];
            for mm in -(n as i64)..=(n as i64) {
                let i = mode_index(n, mm);
                let (p, q) = (modes.te[i], modes.tm[i]);
                let (cp, cq) = if exterior {
                    (p * rat.te_sc, q * rat.tm_sc)
                } else {
                    (p * rat.te_int, q * rat.tm_int)
                };
                if cp == c64(0.0, 0.0) && cq == c64(0.0, 0.0) {
                    continue;
                }
                let hb = eval_harmonic(n, mm, dir);
                for comp in 0..3 {
                    let rh = cr(dir[comp]);
                    let mw = zr * hb.w[comp];
                    let nw = nu * zr / z * hb.y * rh + zh / z * hb.v[comp];
                    // E = cp Mw + cq Nw ; H = hfac (cp Nw + cq Mw)
                    e[comp] += cp * mw + cq * nw;
                    h[comp] += hfac * (cp * nw + cq * mw);
                }
            }
        }
        out.push(FieldSample {
            point: pt,
            region: if exterior { Region::Exterior } else { Region::Interior },
            e,
            h,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::media::Medium;

    #[test]
    fn zero_contrast_coefficients_vanish() {
        let s = ProblemSetup::new(1.0, Medium::vacuum(), Medium::vacuum()).unwrap();
        for c in mie_mode_coefficients(&s, 10) {
            assert_eq!(c.te_sc, c64(0.0, 0.0));
            assert_eq!(c.tm_sc, c64(0.0, 0.0));
            assert!((c.te_int - cr(1.0)).norm() < 1e-14);
            assert!((c.tm_int - cr(1.0)).norm() < 1e-14);
        }
    }

    #[test]
    fn optical_theorem_for_lossless_media() {
        // unitarity per degree: |1 + 2c|^2 = 1, i.e. Re c = -|c|^2
        let int = Medium::new(cr(1.3), cr(1.0)).unwrap();
        let s = ProblemSetup::new(1.0, Medium::vacuum(), int).unwrap();
        for c in mie_mode_coefficients(&s, 20) {
            for v in [c.te_sc, c.tm_sc] {
                assert!(
                    (v.re + v.norm_sqr()).abs() < 1e-10,
                    "n={} v={v}",
                    c.n
                );
            }
        }
    }

    #[test]
    fn double_negative_material_series_converges() {
        let int = Medium::new(c64(-3.0, 1.0), c64(-2.0, 0.5)).unwrap();
        let s = ProblemSetup::new(1.0, Medium::vacuum(), int).unwrap();
        let cs = mie_mode_coefficients(&s, 25);
        for c in &cs {
            assert!(c.te_sc.norm().is_finite() && c.tm_sc.norm().is_finite());
        }
        // superalgebraic decay of the scattered coefficients
        assert!(cs[24].te_sc.norm() < 1e-12 * cs[0].te_sc.norm().max(1e-3));
    }

    #[test]
    fn energy_flux_balance_for_lossless_sphere() {
        // extinction equals scattering when nothing absorbs:
        // sum (2n+1) [Re(te+tm) + |te|^2 + |tm|^2] = 0
        let int = Medium::new(cr(1.3), cr(1.0)).unwrap();
        let s = ProblemSetup::new(1.0, Medium::vacuum(), int).unwrap();
        let mut balance = 0.0;
        let mut scale = 0.0;
        for c in mie_mode_coefficients(&s, 25) {
            let wn = 2.0 * c.n as f64 + 1.0;
            balance += wn
                * (c.te_sc.re + c.tm_sc.re + c.te_sc.norm_sqr() + c.tm_sc.norm_sqr());
            scale += wn * (c.te_sc.norm_sqr() + c.tm_sc.norm_sqr());
        }
        assert!(balance.abs() < 1e-10 * scale.max(1e-10), "balance={balance}");
    }
}
