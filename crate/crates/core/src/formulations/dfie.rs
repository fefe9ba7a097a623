//! Decoupled field blocks: the second-kind system for the vector electric
//! transmission problem, its magnetic dual (media swapped), and the
//! high-frequency rescaled variant.
//!
//! Unknowns per degree n >= 1, in order: (a_V, a_W, sigma, b_V, b_W, rho);
//! rows in order (f_V, f_W, q, g_V, g_W, p). At n = 0 the tangential
//! harmonics vanish and the system reduces to (sigma, rho) with rows (q, p).
//!
//! Identity terms: (mu0+mu)/2 on the f and q rows, (eps0+eps)/2 on the g
//! rows, -(eps0+eps)/2 on the p row, coming from the half-jumps of the
//! rotated-curl, double-layer and normal-derivative traces. At zero contrast
//! every operator difference vanishes identically and the block is the
//! diagonal (1,1,1,1,1,-1)-pattern scaled by the material constants.

use alloc::vec;

use super::{degree_data, nu, BlockLayout, FormulationError, ModeBlock};
use crate::media::ProblemSetup;
use crate::cr;

const LAYOUT_FULL: BlockLayout = BlockLayout {
    unknowns: &["a_V", "a_W", "sigma", "b_V", "b_W", "rho"],
    rows: &["f_V", "f_W", "q", "g_V", "g_W", "p"],
    convention: "rows are the exterior-minus-interior trace equations; p-row identity -(eps0+eps)/2",
};

const LAYOUT_N0: BlockLayout = BlockLayout {
    unknowns: &["sigma", "rho"],
    rows: &["q", "p"],
    convention: "degree-0 reduction: tangential unknowns and rows dropped",
};

const LAYOUT_SCALED: BlockLayout = BlockLayout {
    unknowns: &["a_V", "a_W", "omega*sigma", "omega*b_V", "omega*b_W", "rho"],
    rows: &["f_V", "f_W", "q/omega", "g_V/omega", "g_W/omega", "p"],
    convention: "scaled = diag(1,1,1/w,1/w,1/w,1) . unscaled . diag(1,1,w,w,w,1)",
};

const LAYOUT_SCALED_N0: BlockLayout = BlockLayout {
    unknowns: &["omega*sigma", "rho"],
    rows: &["q/omega", "p"],
    convention: "degree-0 reduction of the scaled system",
};

/// Block of the electric-field system at degree n.
pub fn dfie_e_block(n: usize, setup: &ProblemSetup) -> ModeBlock {
    dfie_core(n, setup, "dfie")
}

/// Block of the magnetic-field system: the electric system with eps and mu
/// interchanged in both regions (the wavenumbers are unchanged).
pub fn dfie_h_block(n: usize, setup: &ProblemSetup) -> ModeBlock {
    let mut b = dfie_core(n, &setup.swapped(), "dfie-h");
    b.formulation = "dfie-h";
    b
}

fn dfie_core(n: usize, setup: &ProblemSetup, id: &'static str) -> ModeBlock {
    let d = degree_data(n, setup);
    let (e0, m0) = (setup.exterior.epsilon, setup.exterior.mu);
    let (e, m) = (setup.interior.epsilon, setup.interior.mu);
    let omega = setup.omega;
    let half_mu = 0.5 * (m0 + m);
    let half_eps = 0.5 * (e0 + e);

    let s0 = d.sy0.single_layer;
    let s = d.sy.single_layer;
    let dd = m0 * d.sy0.normal_derivative_pv - m * d.sy.normal_derivative_pv;
    let dd_p = e0 * d.sy0.normal_derivative_pv - e * d.sy.normal_derivative_pv;
    // omega^2 (eps0 mu0 s0 - eps mu s) = k0^2 s0 - k^2 s
    let k2s = omega * omega * (e0 * m0 * s0 - e * m * s);

    if n == 0 {
        // rows (q, p) x unknowns (sigma, rho)
        let w_mix = e0 * m0 * d.sy0.radial_radial - e * m * d.sy.radial_radial;
        let entries = vec![
            half_mu + dd,
            -k2s,
            -w_mix,
            -half_eps + dd_p,
        ];
        return ModeBlock {
            formulation: id,
            n,
            dim: 2,
            entries,
            layout: LAYOUT_N0,
        };
    }

    let nun = nu(n);
    let mm = m0 * d.sy0.rotated_curl_pv - m * d.sy.rotated_curl_pv;
    let mm_g = e0 * d.sy0.rotated_curl_pv - e * d.sy.rotated_curl_pv;
    let su = m0 * d.sy0.radial_mix - m * d.sy.radial_mix;
    let s_me = m0 * e0 * s0 - m * e * s;
    let t_me = m0 * e0 * d.sy0.single_layer_vv - m * e * d.sy.single_layer_vv;
    let ee = d.sy0.curl_curl_vw - d.sy.curl_curl_vw;
    let s_em = e0 * m0 * s0 - e * m * s;
    let w_mix = e0 * m0 * d.sy0.radial_radial - e * m * d.sy.radial_radial;
    let u_b = m0 * e0 * e0 * d.sy0.radial_mix - m * e * e * d.sy.radial_mix;

    let z = cr(0.0);
    let mut blk = ModeBlock {
        formulation: id,
        n,
        dim: 6,
        entries: vec![z; 36],
        layout: LAYOUT_FULL,
    };
    // f_V: (mu identity + rotated-curl) a_V - n^ x S (b) picks -s b_W
    blk.set(0, 0, half_mu + mm);
    blk.set(0, 4, -s_me);
    // f_W: a_W, sigma, b_V, rho couplings
    blk.set(1, 1, half_mu - mm);
    blk.set(1, 2, -su);
    blk.set(1, 3, t_me);
    blk.set(1, 5, nun * d.s_diff);
    // q: sigma, b_V, rho
    blk.set(2, 2, half_mu + dd);
    blk.set(2, 3, -nun * s_em);
    blk.set(2, 5, -k2s);
    // g_V: a_W, sigma, b_V
    blk.set(3, 1, -k2s);
    blk.set(3, 2, -nun * d.s_diff);
    blk.set(3, 3, half_eps + mm_g);
    // g_W: a_V, b_W
    blk.set(4, 0, ee);
    blk.set(4, 4, half_eps - mm_g);
    // p: a_W, sigma, b_V, rho
    blk.set(5, 1, -nun * s_em);
    blk.set(5, 2, -w_mix);
    blk.set(5, 3, u_b);
    blk.set(5, 5, -half_eps + dd_p);
    blk
}

/// Rescaled electric-field block for the high-frequency regime: the data rows
/// (q, g) are divided by omega and the (sigma, b) density slots carry an
/// omega factor, i.e. D_row . block . D_col.
pub fn dfie_scaled_block(n: usize, setup: &ProblemSetup) -> Result<ModeBlock, FormulationError> {
    if setup.omega == 0.0 {
        return Err(FormulationError::StaticUnsupported("dfie-scaled"));
    }
    let mut b = dfie_e_block(n, setup);
    let w = setup.omega;
    let dim = b.dim;
    let (rows_w, cols_w): (&[usize], &[usize]) = if n == 0 {
        (&[0], &[0]) // q-row, sigma-column
    } else {
        (&[2, 3, 4], &[2, 3, 4])
    };
    for r in 0..dim {
        for c in 0..dim {
            let mut v = b.at(r, c);
            if rows_w.contains(&r) {
                v /= w;
            }
            if cols_w.contains(&c) {
                v *= w;
            }
            b.set(r, c, v);
        }
    }
    b.formulation = "dfie-scaled";
    b.layout = if n == 0 { LAYOUT_SCALED_N0 } else { LAYOUT_SCALED };
    Ok(b)
}

/// The n -> infinity limit of the electric-field block: the identity terms
/// on the diagonal plus the two bounded (non-compact) couplings, whose
/// symbols -nu s_n tend to -1/2 per unit material weight:
/// (q-row, b_V) -> -(mu0 eps0 - mu eps)/2 and
/// (p-row, a_W) -> -(eps0 mu0 - eps mu)/2.
pub fn dfie_limit_block(n: usize, setup: &ProblemSetup) -> ModeBlock {
    let half_mu = 0.5 * (setup.exterior.mu + setup.interior.mu);
    let half_eps = 0.5 * (setup.exterior.epsilon + setup.interior.epsilon);
    let contrast =
        0.5 * (setup.exterior.mu * setup.exterior.epsilon
            - setup.interior.mu * setup.interior.epsilon);
    if n == 0 {
        return ModeBlock {
            formulation: "dfie-limit",
            n,
            dim: 2,
            entries: vec![half_mu, cr(0.0), cr(0.0), -half_eps],
            layout: LAYOUT_N0,
        };
    }
    let z = cr(0.0);
    let mut b = ModeBlock {
        formulation: "dfie-limit",
        n,
        dim: 6,
        entries: vec![z; 36],
        layout: LAYOUT_FULL,
    };
    for (i, d) in [half_mu, half_mu, half_mu, half_eps, half_eps, -half_eps]
        .iter()
        .enumerate()
    {
        b.set(i, i, *d);
    }
    b.set(2, 3, -contrast);
    b.set(5, 1, -contrast);
    b
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::media::Medium;
    use crate::{c64, cr};

    fn setup(omega: f64, eps: Complex64, mu: Complex64) -> ProblemSetup {
        ProblemSetup::new(
            omega,
            Medium::vacuum(),
            Medium::new(eps, mu).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn zero_contrast_is_the_signed_identity() {
        let s = ProblemSetup::new(1.7, Medium::vacuum(), Medium::vacuum()).unwrap();
        for n in [0usize, 1, 2, 7] {
            let b = dfie_e_block(n, &s);
            assert_eq!(b.max_offdiagonal(), 0.0, "n={n}");
            let want: &[f64] = if n == 0 { &[1.0, -1.0] } else { &[1.0, 1.0, 1.0, 1.0, 1.0, -1.0] };
            for (i, w) in want.iter().enumerate() {
                assert!((b.at(i, i) - cr(*w)).norm() < 1e-15, "n={n} i={i}");
            }
        }
    }

    #[test]
    fn h_block_is_e_block_of_swapped_media() {
        let s = setup(2.0, c64(-2.0, 1.0), c64(-1.0, 1.0));
        let swapped = s.swapped();
        for n in [0usize, 1, 3] {
            let h = dfie_h_block(n, &s);
            let e = dfie_e_block(n, &swapped);
            for i in 0..h.entries.len() {
                assert_eq!(h.entries[i], e.entries[i]);
            }
        }
    }

    #[test]
    fn scaled_block_matches_explicit_row_column_scaling() {
        let s = setup(8.0, cr(1.5), cr(1.0));
        let w = 8.0;
        for n in [0usize, 3] {
            let plain = dfie_e_block(n, &s);
            let scaled = dfie_scaled_block(n, &s).unwrap();
            let (rw, cw): (&[usize], &[usize]) =
                if n == 0 { (&[0], &[0]) } else { (&[2, 3, 4], &[2, 3, 4]) };
            for r in 0..plain.dim {
                for c in 0..plain.dim {
                    let mut want = plain.at(r, c);
                    if rw.contains(&r) {
                        want /= w;
                    }
                    if cw.contains(&c) {
                        want *= w;
                    }
                    assert!(
                        (scaled.at(r, c) - want).norm() <= 1e-13 * want.norm().max(1e-30),
                        "n={n} r={r} c={c}"
                    );
                }
            }
        }
        assert!(dfie_scaled_block(2, &setup(0.0, cr(1.5), cr(1.0))).is_err());
    }

    #[test]
    fn compactness_decay_towards_the_limit_block() {
        let s = setup(1.0, cr(1.3), cr(1.0));
        let mut prev = f64::INFINITY;
        for n in 10..=40 {
            let b = dfie_e_block(n, &s);
            let lim = dfie_limit_block(n, &s);
            let mut dev = 0.0f64;
            for r in 0..b.dim {
                for c in 0..b.dim {
                    dev = dev.max((b.at(r, c) - lim.at(r, c)).norm());
                }
            }
            assert!(dev < prev + 1e-14, "n={n} dev={dev} prev={prev}");
            prev = dev;
        }
        // slowest entry is the contrast-weighted tangential single layer,
        // decaying like 0.148/n for this material: ~3.7e-3 at n = 40
        assert!(prev < 4.5e-3, "deviation at n=40: {prev}");
        let b20 = dfie_e_block(20, &s);
        let l20 = dfie_limit_block(20, &s);
        let mut dev20 = 0.0f64;
        for r in 0..6 {
            for c in 0..6 {
                dev20 = dev20.max((b20.at(r, c) - l20.at(r, c)).norm());
            }
        }
        // 1/n decay: doubling n halves the deviation
        assert!((dev20 / prev - 2.0).abs() < 0.1, "ratio {}", dev20 / prev);
    }

    #[test]
    fn static_blocks_are_finite_and_invertible() {
        let s = setup(0.0, cr(1.3), cr(1.0));
        for n in 0..10 {
            let b = dfie_e_block(n, &s);
            let sv = b.singular_values();
            assert!(sv.iter().all(|v| v.is_finite()));
            assert!(sv.last().unwrap() > &1e-8, "n={n} svmin={}", sv.last().unwrap());
        }
    }
}
