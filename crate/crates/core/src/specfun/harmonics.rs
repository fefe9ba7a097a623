//! Scalar and vector spherical harmonics, evaluated in Cartesian components.
//!
//! Basis per (n, m):
//!
//! ```text
//! Y_nm                    scalar, orthonormal on S^2
//! V_nm = grad_S Y / nu    tangential, nu = sqrt(n(n+1))
//! W_nm = n^ x V_nm        tangential
//! X_nm = n^ Y_nm          radial
//! ```
//!
//! `{V, W, X}` is orthonormal within a fixed (n, m), and
//! `div_S V_nm = -nu Y_nm`.

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use super::legendre::assoc_legendre_point;
use crate::c64;

/// Values of the four basis fields of one (n, m) at one direction,
/// as Cartesian complex components.
#[derive(Debug, Clone, Copy)]
pub struct HarmonicPoint {
    pub y: Complex64,
    pub v: [Complex64; 3],
    pub w: [Complex64; 3],
    pub x: [Complex64; 3],
}

/// Evaluate Y/V/W/X of (n, m) at the unit direction `dir`.
///
/// Directions within ~1e-13 of a pole are nudged off it; the basis fields
/// are analytic there and the nudge error is O(1e-26).
pub fn eval_harmonic(n: usize, m: i64, dir: [f64; 3]) -> HarmonicPoint {
    debug_assert!(m.unsigned_abs() as usize <= n);
    let rho = (dir[0] * dir[0] + dir[1] * dir[1]).sqrt();
    let (sin_th, cos_th, phi) = if rho < 1e-13 {
        (1e-13, if dir[2] >= 0.0 { 1.0 } else { -1.0 }, 0.0)
    } else {
        let r = (rho * rho + dir[2] * dir[2]).sqrt();
        (rho / r, dir[2] / r, dir[1].atan2(dir[0]))
    };

    let ma = m.unsigned_abs() as usize;
    let (pbar, dpbar, m_over_sin) = assoc_legendre_point(n, ma, cos_th, sin_th);
    // Y_{n,-|m|} = (-1)^{|m|} conj(Y_{n,|m|})
    let cs = if m < 0 && ma % 2 == 1 { -1.0 } else { 1.0 };
    let phase = c64(0.0, m as f64 * phi).exp();

    let y = cs * pbar * phase;
    let (v, w, x);
    let th_hat = [cos_th * phi.cos(), cos_th * phi.sin(), -sin_th];
    let ph_hat = [-phi.sin(), phi.cos(), 0.0];
    let r_hat = [sin_th * phi.cos(), sin_th * phi.sin(), cos_th];
    x = [r_hat[0] * y, r_hat[1] * y, r_hat[2] * y];
    if n == 0 {
        v = [c64(0.0, 0.0); 3];
        w = [c64(0.0, 0.0); 3];
    } else {
        let nu = (n as f64 * (n as f64 + 1.0)).sqrt();
        // V = (dY/dth th^ + (i m Y / sin) ph^)/nu
        let dth = cs * dpbar * phase / nu;
        let dph = c64(0.0, 1.0) * (m.signum() as f64) * cs * m_over_sin * phase / nu;
        v = [
            dth * th_hat[0] + dph * ph_hat[0],
            dth * th_hat[1] + dph * ph_hat[1],
            dth * th_hat[2] + dph * ph_hat[2],
        ];
        // W = n^ x V = (dY/dth ph^ - (i m Y / sin) th^)/nu
        w = [
            dth * ph_hat[0] - dph * th_hat[0],
            dth * ph_hat[1] - dph * th_hat[1],
            dth * ph_hat[2] - dph * th_hat[2],
        ];
    }
    HarmonicPoint { y, v, w, x }
}
