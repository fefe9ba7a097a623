//! Muller block: the classical second-kind two-current system for the
//! Maxwell transmission problem, in the dual form whose unknowns are the
//! scaled currents (J^s, K^s).
//!
//! The underlying representation in each region (with that region's k, eps,
//! mu) is
//!
//! ```text
//! E = i w eps mu S_k[J^s] - (1/iw) grad div S_k[J^s] - mu curl S_k[K^s]
//! H = eps curl S_k[J^s] + i w eps mu S_k[K^s] - (1/iw) grad div S_k[K^s]
//! ```
//!
//! which is Maxwellian by construction; imposing tangential continuity of E
//! and H yields the block below. Rows are ordered (H-equation, negated
//! E-equation) so the zero-contrast block is the positive diagonal
//! ((eps0+eps)/2, ..., (mu0+mu)/2, ...).
//!
//! The (1/iw) terms are why the representation (not the equation) breaks
//! down as omega -> 0: the field evaluation amplifies current errors by
//! 1/omega^2 even though the block stays well conditioned.

use alloc::vec;
use alloc::vec::Vec;
use super::{degree_data, nu, BlockLayout, FormulationError, ModeBlock};
use crate::media::ProblemSetup;
use crate::{cr, I};

const LAYOUT: BlockLayout = BlockLayout {
    unknowns: &["Js_V", "Js_W", "Ks_V", "Ks_W"],
    rows: &["H_V", "H_W", "-E_V", "-E_W"],
    convention: "rows (n^x(H0-H)=-n^xH_in ; -n^x(E0-E)=+n^xE_in); zero contrast -> diag(eps_avg, eps_avg, mu_avg, mu_avg)",
};

const LAYOUT_N0: BlockLayout = BlockLayout {
    unknowns: &[],
    rows: &[],
    convention: "degree 0 carries no tangential currents; empty block",
};

/// Muller block at degree n; requires omega > 0, and is empty at n = 0.
pub fn muller_block(n: usize, setup: &ProblemSetup) -> Result<ModeBlock, FormulationError> {
    if setup.omega == 0.0 {
        return Err(FormulationError::StaticUnsupported("muller"));
    }
    if n == 0 {
        return Ok(ModeBlock {
            formulation: "muller",
            n,
            dim: 0,
            entries: Vec::new(),
            layout: LAYOUT_N0,
        });
    }
    let d = degree_data(n, setup);
    let (e0, m0) = (setup.exterior.epsilon, setup.exterior.mu);
    let (e, m) = (setup.interior.epsilon, setup.interior.mu);
    let w = setup.omega;
    let nun = nu(n);
    let half_mu = 0.5 * (m0 + m);
    let half_eps = 0.5 * (e0 + e);

    let mm_e = e0 * d.sy0.rotated_curl_pv - e * d.sy.rotated_curl_pv;
    let mm_m = m0 * d.sy0.rotated_curl_pv - m * d.sy.rotated_curl_pv;
    let s_em = e0 * m0 * d.sy0.single_layer - e * m * d.sy.single_layer;
    let t_em = e0 * m0 * d.sy0.single_layer_vv - e * m * d.sy.single_layer_vv;
    // grad div of the single-layer difference acts as -nu^2 (s0 - s) on V;
    // division by i omega uses the cancellation-safe difference
    let graddiv = nun * nun / (I * w) * d.s_diff;

    let z = cr(0.0);
    let mut blk = ModeBlock {
        formulation: "muller",
        n,
        dim: 4,
        entries: vec![z; 16],
        layout: LAYOUT,
    };
    // H_V: Js_V identity+curl, Ks_W single-layer coupling
    blk.set(0, 0, half_eps + mm_e);
    blk.set(0, 3, -I * w * s_em);
    // H_W: Js_W, Ks_V
    blk.set(1, 1, half_eps - mm_e);
    blk.set(1, 2, I * w * t_em + graddiv);
    // -E_V: Js_W, Ks_V
    blk.set(2, 1, I * w * s_em);
    blk.set(2, 2, half_mu + mm_m);
    // -E_W: Js_V, Ks_W
    blk.set(3, 0, -I * w * t_em - graddiv);
    blk.set(3, 3, half_mu - mm_m);
    Ok(blk)
}
