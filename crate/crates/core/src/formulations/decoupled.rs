//! Auxiliary scalar-potential blocks of the decoupled charge-current
//! pipeline.
//!
//! After a Muller solve, the scalar potentials are recovered from two 2x2
//! transmission systems per degree, one for the electric potential pair
//! (phi0, phi) and one for the magnetic pair (psi0, psi), each represented
//! by independent exterior/interior single-layer densities (c0, c):
//!
//! ```text
//! phi0 = S_k0[c0 Y],  phi = S_k[c Y]
//! Dirichlet row:  phi0 - phi                        = (1/iw) div (S_k0 - S_k)[Js]
//! Neumann row:    eps0 d_n phi0 - eps d_n phi       = f      (weights mu0/mu for psi)
//! ```
//!
//! The one-sided normal-derivative traces carry the -+1/2 jumps, so the
//! Neumann row reads eps0 (d0 - 1/2) c0 - eps (d + 1/2) c.

use alloc::vec;
use num_complex::Complex64;

use super::{degree_data, BlockLayout, ModeBlock};
use crate::media::ProblemSetup;
use crate::cr;

/// Which scalar potential pair a block belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScalarKind {
    /// Electric pair, Neumann row weighted by permittivities.
    Electric,
    /// Magnetic pair, Neumann row weighted by permeabilities.
    Magnetic,
}

const LAYOUT_E: BlockLayout = BlockLayout {
    unknowns: &["c0_ext", "c_int"],
    rows: &["dirichlet_diff", "weighted_neumann_diff"],
    convention: "phi0 = S_k0[c0], phi = S_k[c]; exterior trace of d_n S is PV - 1/2",
};

const LAYOUT_H: BlockLayout = BlockLayout {
    unknowns: &["d0_ext", "d_int"],
    rows: &["dirichlet_diff", "weighted_neumann_diff"],
    convention: "psi0 = S_k0[d0], psi = S_k[d]; Neumann weights are mu0, mu",
};

/// The (electric, magnetic) scalar blocks at degree n; defined for all
/// omega >= 0.
pub fn decoupled_scalar_blocks(n: usize, setup: &ProblemSetup) -> (ModeBlock, ModeBlock) {
    let d = degree_data(n, setup);
    let s0 = d.sy0.single_layer;
    let s = d.sy.single_layer;
    let d0 = d.sy0.normal_derivative_pv;
    let dk = d.sy.normal_derivative_pv;
    let make = |wa: Complex64, wb: Complex64, kind: ScalarKind| ModeBlock {
        formulation: match kind {
            ScalarKind::Electric => "decoupled-cc/phi",
            ScalarKind::Magnetic => "decoupled-cc/psi",
        },
        n,
        dim: 2,
        entries: vec![
            s0,
            -s,
            wa * (d0 - cr(0.5)),
            -wb * (dk + cr(0.5)),
        ],
        layout: match kind {
            ScalarKind::Electric => LAYOUT_E,
            ScalarKind::Magnetic => LAYOUT_H,
        },
    };
    (
        make(
            setup.exterior.epsilon,
            setup.interior.epsilon,
            ScalarKind::Electric,
        ),
        make(setup.exterior.mu, setup.interior.mu, ScalarKind::Magnetic),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::media::Medium;

    #[test]
    fn zero_contrast_blocks_are_invertible_and_zero_rhs_gives_zero() {
        let s = ProblemSetup::new(1.0, Medium::vacuum(), Medium::vacuum()).unwrap();
        for n in 0..6 {
            let (be, bh) = decoupled_scalar_blocks(n, &s);
            for b in [be, bh] {
                let sv = b.singular_values();
                assert!(sv[1] > 1e-6, "n={n}");
                // zero RHS -> zero densities
                let f = crate::linalg::LuFactor::new(&b.entries, 2).unwrap();
                let x = f.solve(&[crate::cr(0.0), crate::cr(0.0)]).unwrap();
                assert_eq!(x[0].norm(), 0.0);
                assert_eq!(x[1].norm(), 0.0);
            }
        }
    }

    #[test]
    fn electric_and_magnetic_blocks_differ_only_in_weights() {
        let int = Medium::new(crate::c64(1.3, 0.0), crate::c64(2.0, 0.0)).unwrap();
        let s = ProblemSetup::new(1.0, Medium::vacuum(), int).unwrap();
        let (be, bh) = decoupled_scalar_blocks(2, &s);
        assert_eq!(be.at(0, 0), bh.at(0, 0));
        assert_eq!(be.at(0, 1), bh.at(0, 1));
        // Neumann interior weights: eps = 1.3 for phi, mu = 2.0 for psi
        assert!((be.at(1, 1) / 1.3 * 2.0 - bh.at(1, 1)).norm() < 1e-14);
    }
}
