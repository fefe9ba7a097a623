//! Charge-current block: shared currents J, K plus independent charges rho,
//! rho_M, with the eta-weighted weak continuity constraint added to the
//! normal-E row. eta parameterizes a family of methods that all avoid
//! low-frequency breakdown but differ in where spurious near-resonances
//! appear.
//!
//! Representation, region-wise (k, eps, mu of the region; all four densities
//! shared between regions):
//!
//! ```text
//! E = i w eps mu S_k[J] - grad S_k[rho]   - mu curl S_k[K]
//! H = eps curl S_k[J]   + i w eps mu S_k[K] - grad S_k[rho_M]
//! ```
//!
//! With these weights the divergence-free conditions in both regions reduce
//! to the same relations rho = div_S J/(iw), rho_M = div_S K/(iw), so the
//! weak constraint div S_k0[J] - i w S_k0[rho] vanishes identically on the
//! physical solution and one shared charge per field suffices.
//!
//! Rows, ordered for a diagonal zero-contrast block:
//! n^x(H0-H), -n^x(E0-E), n.(eps0 E0 - eps E) + eta-term, n.(mu0 H0 - mu H).
//! The eta-term keeps its off-diagonal J_V coupling at zero contrast when
//! eta != 0.

use alloc::vec;
use num_complex::Complex64;

use super::{degree_data, nu, BlockLayout, FormulationError, ModeBlock};
use crate::media::ProblemSetup;
use crate::{cr, I};

const LAYOUT: BlockLayout = BlockLayout {
    unknowns: &["J_V", "J_W", "K_V", "K_W", "rho", "rho_M"],
    rows: &["Hrow_V", "Hrow_W", "-Erow_V", "-Erow_W", "normalE+eta", "normalH"],
    convention: "zero contrast (eta=0) -> diag(eps0, eps0, mu0, mu0, eps0, mu0)",
};

const LAYOUT_N0: BlockLayout = BlockLayout {
    unknowns: &["rho", "rho_M"],
    rows: &["normalE+eta", "normalH"],
    convention: "degree-0 reduction: currents dropped",
};

/// Charge-current block at degree n with parameter eta; requires omega > 0.
pub fn charge_current_block(
    n: usize,
    setup: &ProblemSetup,
    eta: Complex64,
) -> Result<ModeBlock, FormulationError> {
    if setup.omega == 0.0 {
        return Err(FormulationError::StaticUnsupported("charge-current"));
    }
    let d = degree_data(n, setup);
    let (e0, m0) = (setup.exterior.epsilon, setup.exterior.mu);
    let (e, m) = (setup.interior.epsilon, setup.interior.mu);
    let w = setup.omega;
    let s0 = d.sy0.single_layer;
    let s = d.sy.single_layer;
    let dd_e = e0 * d.sy0.normal_derivative_pv - e * d.sy.normal_derivative_pv;
    let dd_m = m0 * d.sy0.normal_derivative_pv - m * d.sy.normal_derivative_pv;
    let half_eps = 0.5 * (e0 + e);
    let half_mu = 0.5 * (m0 + m);

    if n == 0 {
        // rows (normal-E + eta, normal-H) x (rho, rho_M); the radial
        // harmonics of the currents vanish so only the charges survive
        let entries = vec![
            half_eps - dd_e - I * w * eta * s0,
            cr(0.0),
            cr(0.0),
            half_mu - dd_m,
        ];
        return Ok(ModeBlock {
            formulation: "cc",
            n,
            dim: 2,
            entries,
            layout: LAYOUT_N0,
        });
    }

    let nun = nu(n);
    let mm_e = e0 * d.sy0.rotated_curl_pv - e * d.sy.rotated_curl_pv;
    let mm_m = m0 * d.sy0.rotated_curl_pv - m * d.sy.rotated_curl_pv;
    let s_em = e0 * m0 * s0 - e * m * s;
    let t_em = e0 * m0 * d.sy0.single_layer_vv - e * m * d.sy.single_layer_vv;

    let z = cr(0.0);
    let mut blk = ModeBlock {
        formulation: "cc",
        n,
        dim: 6,
        entries: vec![z; 36],
        layout: LAYOUT,
    };
    // n^ x (H0 - H) rows
    blk.set(0, 0, half_eps + mm_e);
    blk.set(0, 3, -I * w * s_em);
    blk.set(1, 1, half_eps - mm_e);
    blk.set(1, 2, I * w * t_em);
    blk.set(1, 5, -nun * d.s_diff);
    // -n^ x (E0 - E) rows
    blk.set(2, 1, I * w * s_em);
    blk.set(2, 2, half_mu + mm_m);
    blk.set(3, 0, -I * w * t_em);
    blk.set(3, 3, half_mu - mm_m);
    blk.set(3, 4, nun * d.s_diff);
    // n.(eps0 E0 - eps E) + eta (div S_k0[J] - i w S_k0[rho])
    blk.set(
        4,
        0,
        I * w * (e0 * e0 * m0 * d.sy0.radial_mix - e * e * m * d.sy.radial_mix) - eta * nun * s0,
    );
    blk.set(4, 3, nun * s_em);
    blk.set(4, 4, half_eps - dd_e - I * w * eta * s0);
    // n.(mu0 H0 - mu H)
    blk.set(5, 1, -nun * s_em);
    blk.set(5, 2, I * w * (m0 * m0 * e0 * d.sy0.radial_mix - m * m * e * d.sy.radial_mix));
    blk.set(5, 5, half_mu - dd_m);
    Ok(blk)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::media::Medium;
    use crate::{c64, cr};

    #[test]
    fn zero_contrast_eta_zero_is_diagonal_with_material_constants() {
        let s = ProblemSetup::new(1.3, Medium::vacuum(), Medium::vacuum()).unwrap();
        let b = charge_current_block(2, &s, cr(0.0)).unwrap();
        assert_eq!(b.max_offdiagonal(), 0.0);
        for (i, want) in [1.0, 1.0, 1.0, 1.0, 1.0, 1.0].iter().enumerate() {
            assert!((b.at(i, i) - cr(*want)).norm() < 1e-15, "i={i}");
        }
        let b0 = charge_current_block(0, &s, cr(0.0)).unwrap();
        assert_eq!(b0.dim, 2);
        assert_eq!(b0.max_offdiagonal(), 0.0);
    }

    #[test]
    fn eta_appears_only_in_the_normal_e_row() {
        let int = Medium::new(c64(-2.0, 1.0), c64(-1.0, 1.0)).unwrap();
        let s = ProblemSetup::new(2.0, Medium::vacuum(), int).unwrap();
        let b0 = charge_current_block(3, &s, cr(0.0)).unwrap();
        let b1 = charge_current_block(3, &s, c64(0.0, 1.0)).unwrap();
        for r in 0..6 {
            for c in 0..6 {
                if r == 4 && (c == 0 || c == 4) {
                    assert!((b0.at(r, c) - b1.at(r, c)).norm() > 0.0);
                } else {
                    assert_eq!(b0.at(r, c), b1.at(r, c), "r={r} c={c}");
                }
            }
        }
    }

    #[test]
    fn statics_rejected() {
        let s = ProblemSetup::new(0.0, Medium::vacuum(), Medium::vacuum()).unwrap();
        assert!(charge_current_block(1, &s, cr(0.0)).is_err());
    }
}
