//! Brute-force certification oracle for the trace symbols.
//!
//! For one (op, n, m, k) the oracle evaluates the layer potential off the
//! surface at radii 1 +/- h, projects the result onto the {V, W, Y} basis of
//! the same (n, m), and Richardson-extrapolates h -> 0 separately from each
//! side. It never touches a Bessel function: the kernel is the raw free-space
//! Green's function, so agreement with the closed-form symbols is a genuine
//! two-route check, and the extrapolated exterior/interior gap recovers the
//! jump constants.
//!
//! The source integral for a target at (1 +/- h) x^ is done in a frame
//! rotated so the target sits over the north pole: the kernel is then
//! axisymmetric with a peak of width ~h at the pole, handled by
//! geometrically graded panels in theta', while the azimuthal factor of the
//! degree-n density is a trig polynomial integrated exactly by a uniform
//! phi' rule. The angular projection over target directions is exact
//! Gauss-Legendre, because products of same-(n,m) basis components are
//! polynomials of degree <= 2n in cos(theta).

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use num_complex::Complex64;
use num_traits::Float;

use super::{SymbolBlock, TraceOp, COMP_N, COMP_V, COMP_W};
use crate::specfun::{eval_harmonic, gauss_legendre};
use crate::c64;

#[derive(Debug, Clone)]
pub struct OracleConfig {
    /// Strictly decreasing off-surface offsets used for extrapolation.
    pub offsets: Vec<f64>,
    /// Gauss-Legendre points per graded theta' panel.
    pub panel_order: usize,
    /// Acceptable extrapolation-tail estimate before declaring divergence.
    pub convergence_tol: f64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            offsets: vec![1e-2, 5e-3, 2.5e-3, 1.25e-3],
            panel_order: 24,
            convergence_tol: 1e-5,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum OracleError {
    /// Offsets must be strictly decreasing and positive.
    BadOffsets,
    /// Tangential input requested at n = 0.
    NoTangentialHarmonics,
    /// Richardson tail failed to settle below the configured tolerance.
    Diverged { estimate: f64 },
}

impl fmt::Display for OracleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OracleError::BadOffsets => write!(f, "offsets must be positive and decreasing"),
            OracleError::NoTangentialHarmonics => write!(f, "no tangential harmonics at n = 0"),
            OracleError::Diverged { estimate } => {
                write!(f, "extrapolation tail {estimate:.3e} above tolerance")
            }
        }
    }
}

/// Extrapolated one-sided traces of one operator block.
#[derive(Debug, Clone)]
pub struct OracleTrace {
    pub op: TraceOp,
    pub n: usize,
    pub exterior: [[Complex64; 3]; 3],
    pub interior: [[Complex64; 3]; 3],
}

impl OracleTrace {
    /// Average of the one-sided limits; must match the PV symbol block.
    pub fn average(&self) -> [[Complex64; 3]; 3] {
        let mut out = self.exterior;
        for (r, row) in out.iter_mut().enumerate() {
            for (c, v) in row.iter_mut().enumerate() {
                *v = 0.5 * (*v + self.interior[r][c]);
            }
        }
        out
    }

    /// Exterior minus interior; must match the jump constants.
    pub fn jump(&self) -> [[Complex64; 3]; 3] {
        let mut out = self.exterior;
        for (r, row) in out.iter_mut().enumerate() {
            for (c, v) in row.iter_mut().enumerate() {
                *v -= self.interior[r][c];
            }
        }
        out
    }

    /// Maximum entrywise deviation of the oracle average from a symbol block.
    pub fn max_deviation(&self, sym: &SymbolBlock) -> f64 {
        let avg = self.average();
        let mut worst = 0.0f64;
        for r in 0..3 {
            for c in 0..3 {
                worst = worst.max((avg[r][c] - sym.entries[r][c]).norm());
            }
        }
        worst
    }
}

type C3 = [Complex64; 3];

fn cross(a: [f64; 3], b: C3) -> C3 {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn ccross(a: C3, b: C3) -> C3 {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn dotc(a: C3, b: C3) -> Complex64 {
    a[0].conj() * b[0] + a[1].conj() * b[1] + a[2].conj() * b[2]
}

/// Geometrically graded theta' panel edges: [0, h, 2h, 4h, ...] capped at pi.
fn graded_edges(h: f64) -> Vec<f64> {
    let mut edges = vec![0.0];
    let mut b = h.min(core::f64::consts::PI);
    loop {
        edges.push(b);
        if b >= core::f64::consts::PI {
            break;
        }
        b = (2.0 * b).min(core::f64::consts::PI);
    }
    edges
}

struct Kernel {
    k: Complex64,
}

impl Kernel {
    /// g, g' and g'' of g_k(r) = e^{ikr}/(4 pi r) at distance r.
    fn eval(&self, r: f64) -> (Complex64, Complex64, Complex64) {
        let g = (self.k * r * crate::I).exp() / (4.0 * core::f64::consts::PI * r);
        let gp = (crate::I * self.k - 1.0 / r) * g;
        let gpp = (crate::I * self.k - 1.0 / r) * gp + g / (r * r);
        (g, gp, gpp)
    }
}

/// What the integrand accumulates for one op before the target-side trace is
/// applied: either a scalar potential value or a vector one.
#[derive(Clone, Copy)]
enum Accum {
    Scalar(Complex64),
    Vector(C3),
}

fn potential_at(
    op: TraceOp,
    n: usize,
    m: i64,
    k: Complex64,
    target: [f64; 3],
    input: usize,
    panel_order: usize,
    h_for_grading: f64,
) -> Accum {
    let kernel = Kernel { k };
    let tnorm = (target[0] * target[0] + target[1] * target[1] + target[2] * target[2]).sqrt();
    let x_hat = [target[0] / tnorm, target[1] / tnorm, target[2] / tnorm];
    // rotation taking z^ to x^ (about the y axis; targets sit at phi = 0)
    let ct = x_hat[2];
    let st = (x_hat[0] * x_hat[0] + x_hat[1] * x_hat[1]).sqrt();
    let rot = [[ct, 0.0, st], [0.0, 1.0, 0.0], [-st, 0.0, ct]];

    let edges = graded_edges(h_for_grading);
    let (gx, gw) = gauss_legendre(panel_order);
    let n_phi = 2 * n + 8;
    let dphi = 2.0 * core::f64::consts::PI / n_phi as f64;

    let mut scalar = c64(0.0, 0.0);
    let mut vector = [c64(0.0, 0.0); 3];

    for panel in edges.windows(2) {
        let (a, b) = (panel[0], panel[1]);
        let half = 0.5 * (b - a);
        let mid = 0.5 * (b + a);
        for (xi, wi) in gx.iter().zip(&gw) {
            let th = mid + half * xi;
            let w_th = wi * half * th.sin();
            let (sth, cth) = (th.sin(), th.cos());
            for ip in 0..n_phi {
                let ph = ip as f64 * dphi;
                let yp = [sth * ph.cos(), sth * ph.sin(), cth];
                // physical source point and normal
                let y = [
                    rot[0][0] * yp[0] + rot[0][1] * yp[1] + rot[0][2] * yp[2],
                    rot[1][0] * yp[0] + rot[1][1] * yp[1] + rot[1][2] * yp[2],
                    rot[2][0] * yp[0] + rot[2][1] * yp[1] + rot[2][2] * yp[2],
                ];
                let w = w_th * dphi;
                let hb = eval_harmonic(n, m, y);
                let d = [target[0] - y[0], target[1] - y[1], target[2] - y[2]];
                let r = (d[0] * d[0] + d[1] * d[1] + d[2] * d[2]).sqrt();
                let dh = [d[0] / r, d[1] / r, d[2] / r];
                let (g, gp, gpp) = kernel.eval(r);
                let grad = [gp * dh[0], gp * dh[1], gp * dh[2]];

                // density by input slot
                let dens_vec: C3 = match (op, input) {
                    (TraceOp::NxS | TraceOp::NxCurlS | TraceOp::NxCurlCurlS, COMP_V)
                    | (TraceOp::DivS | TraceOp::NdotS | TraceOp::NdotCurlS, COMP_V) => hb.v,
                    (TraceOp::NxS | TraceOp::NxCurlS | TraceOp::NxCurlCurlS, COMP_W)
                    | (TraceOp::DivS | TraceOp::NdotS | TraceOp::NdotCurlS, COMP_W) => hb.w,
                    (
                        TraceOp::NxSNormal
                        | TraceOp::NxCurlSNormal
                        | TraceOp::DivSNormal
                        | TraceOp::NdotSNormal,
                        COMP_N,
                    ) => hb.x,
                    _ => [c64(0.0, 0.0); 3], // scalar-density ops fall through
                };

                match op {
                    TraceOp::NxS | TraceOp::NxSNormal | TraceOp::NdotS | TraceOp::NdotSNormal => {
                        for c in 0..3 {
                            vector[c] += w * g * dens_vec[c];
                        }
                    }
                    TraceOp::NxCurlS | TraceOp::NxCurlSNormal | TraceOp::NdotCurlS => {
                        let gxj = ccross(grad, dens_vec);
                        for c in 0..3 {
                            vector[c] += w * gxj[c];
                        }
                    }
                    TraceOp::NxCurlCurlS => {
                        // curl curl S = grad div S + k^2 S, with
                        // grad div (g J) = Hess(g) J
                        let dj = dh[0] * dens_vec[0] + dh[1] * dens_vec[1] + dh[2] * dens_vec[2];
                        let radial = (gpp - gp / r) * dj;
                        for c in 0..3 {
                            vector[c] += w
                                * (radial * dh[c] + gp / r * dens_vec[c] + k * k * g * dens_vec[c]);
                        }
                    }
                    TraceOp::DivS | TraceOp::DivSNormal => {
                        scalar +=
                            w * (grad[0] * dens_vec[0] + grad[1] * dens_vec[1] + grad[2] * dens_vec[2]);
                    }
                    TraceOp::NxGradS | TraceOp::NormalDerivS => {
                        for c in 0..3 {
                            vector[c] += w * grad[c] * hb.y;
                        }
                    }
                    TraceOp::ScalarSingleLayer => {
                        scalar += w * g * hb.y;
                    }
                    TraceOp::DoubleLayer => {
                        // dg/dn_y = -grad_x g . n(y)
                        let gn = grad[0] * y[0] + grad[1] * y[1] + grad[2] * y[2];
                        scalar += w * (-gn) * hb.y;
                    }
                }
            }
        }
    }

    match op {
        TraceOp::DivS | TraceOp::DivSNormal | TraceOp::DoubleLayer | TraceOp::ScalarSingleLayer => {
            Accum::Scalar(scalar)
        }
        TraceOp::NormalDerivS => {
            Accum::Scalar(x_hat[0] * vector[0] + x_hat[1] * vector[1] + x_hat[2] * vector[2])
        }
        TraceOp::NdotS | TraceOp::NdotSNormal | TraceOp::NdotCurlS => {
            Accum::Scalar(x_hat[0] * vector[0] + x_hat[1] * vector[1] + x_hat[2] * vector[2])
        }
        _ => Accum::Vector(cross(x_hat, vector)),
    }
}

/// Column of projected output components [V, W, N] for one side and offset.
fn projected_column(
    op: TraceOp,
    n: usize,
    m: i64,
    k: Complex64,
    radius: f64,
    input: usize,
    panel_order: usize,
    h: f64,
) -> C3 {
    let nt = n + 12;
    let (tx, tw) = gauss_legendre(nt);
    let mut col = [c64(0.0, 0.0); 3];
    for (ct, wt) in tx.iter().zip(&tw) {
        let s = (1.0 - ct * ct).sqrt();
        let dir = [s, 0.0, *ct];
        let target = [radius * s, 0.0, radius * ct];
        let acc = potential_at(op, n, m, k, target, input, panel_order, h);
        let hb = eval_harmonic(n, m, dir);
        // the phi-integral of conj(basis).u is phi-independent: weight by 2 pi
        let w2 = *wt * 2.0 * core::f64::consts::PI;
        match acc {
            Accum::Scalar(v) => {
                col[COMP_N] += w2 * hb.y.conj() * v;
            }
            Accum::Vector(u) => {
                col[COMP_V] += w2 * dotc(hb.v, u);
                col[COMP_W] += w2 * dotc(hb.w, u);
                col[COMP_N] += w2 * dotc(hb.x, u);
            }
        }
    }
    col
}

/// Neville extrapolation to h = 0; returns (value, tail estimate).
fn extrapolate(hs: &[f64], vals: &[Complex64]) -> (Complex64, f64) {
    let n = hs.len();
    let mut t: Vec<Complex64> = vals.to_vec();
    for level in 1..n {
        for i in (level..n).rev() {
            let num = hs[i - level] * t[i] - hs[i] * t[i - 1];
            t[i] = num / (hs[i - level] - hs[i]);
        }
    }
    let tail = (t[n - 1] - t[n - 2]).norm();
    (t[n - 1], tail)
}

/// Run the oracle for one (op, n, m, k).
pub fn oracle_trace(
    op: TraceOp,
    n: usize,
    m: i64,
    k: Complex64,
    cfg: &OracleConfig,
) -> Result<OracleTrace, OracleError> {
    if !cfg.offsets.windows(2).all(|w| w[0] > w[1]) || cfg.offsets.iter().any(|&h| h <= 0.0) {
        return Err(OracleError::BadOffsets);
    }
    if n == 0 && op.needs_tangential_input() {
        return Err(OracleError::NoTangentialHarmonics);
    }
    let inputs: &[usize] = if op.needs_tangential_input() {
        &[COMP_V, COMP_W]
    } else {
        &[COMP_N]
    };

    let mut exterior = [[c64(0.0, 0.0); 3]; 3];
    let mut interior = [[c64(0.0, 0.0); 3]; 3];
    let mut worst_tail = 0.0f64;
    for &ic in inputs {
        for side_ext in [true, false] {
            let mut cols: Vec<C3> = Vec::with_capacity(cfg.offsets.len());
            for &h in &cfg.offsets {
                let radius = if side_ext { 1.0 + h } else { 1.0 - h };
                cols.push(projected_column(op, n, m, k, radius, ic, cfg.panel_order, h));
            }
            for oc in 0..3 {
                let vals: Vec<Complex64> = cols.iter().map(|c| c[oc]).collect();
                let (v, tail) = extrapolate(&cfg.offsets, &vals);
                worst_tail = worst_tail.max(tail);
                if side_ext {
                    exterior[oc][ic] = v;
                } else {
                    interior[oc][ic] = v;
                }
            }
        }
    }
    if worst_tail > cfg.convergence_tol {
        return Err(OracleError::Diverged { estimate: worst_tail });
    }
    Ok(OracleTrace {
        op,
        n,
        exterior,
        interior,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbols::{symbol_block, trace_symbol};
    use crate::cr;

    #[test]
    fn scalar_single_layer_continuity_and_value() {
        // n.S is continuous; use NdotSNormal as a cheap smoke test of the
        // whole oracle pipeline at n=1, k=1
        let cfg = OracleConfig::default();
        let tr = oracle_trace(TraceOp::NdotSNormal, 1, 0, cr(1.0), &cfg).unwrap();
        let sym = trace_symbol(TraceOp::NdotSNormal, 1, cr(1.0)).unwrap();
        assert!(tr.max_deviation(&sym) < 1e-7, "dev={}", tr.max_deviation(&sym));
        let j = tr.jump();
        assert!(j[COMP_N][COMP_N].norm() < 1e-6);
    }

    #[test]
    fn normal_derivative_jump_is_minus_one() {
        let cfg = OracleConfig::default();
        let tr = oracle_trace(TraceOp::NormalDerivS, 1, 1, cr(1.0), &cfg).unwrap();
        let j = tr.jump();
        assert!((j[COMP_N][COMP_N] - cr(-1.0)).norm() < 1e-5, "{:?}", j[COMP_N][COMP_N]);
        let sym = trace_symbol(TraceOp::NormalDerivS, 1, cr(1.0)).unwrap();
        assert!(tr.max_deviation(&sym) < 1e-7);
    }

    #[test]
    fn double_layer_jump_is_plus_one() {
        let cfg = OracleConfig::default();
        let tr = oracle_trace(TraceOp::DoubleLayer, 2, 1, cr(1.5), &cfg).unwrap();
        let j = tr.jump();
        assert!((j[COMP_N][COMP_N] - cr(1.0)).norm() < 1e-5);
    }

    #[test]
    fn rejects_bad_offsets() {
        let cfg = OracleConfig {
            offsets: vec![1e-3, 1e-2],
            ..OracleConfig::default()
        };
        assert_eq!(
            oracle_trace(TraceOp::DoubleLayer, 1, 0, cr(1.0), &cfg).unwrap_err(),
            OracleError::BadOffsets
        );
    }

    #[test]
    fn m_independence_of_the_block() {
        let cfg = OracleConfig::default();
        let a = oracle_trace(TraceOp::NxCurlS, 2, 0, cr(1.0), &cfg).unwrap();
        let b = oracle_trace(TraceOp::NxCurlS, 2, 2, cr(1.0), &cfg).unwrap();
        for r in 0..3 {
            for c in 0..3 {
                assert!((a.average()[r][c] - b.average()[r][c]).norm() < 1e-6);
            }
        }
        let _ = symbol_block; // referenced by integration tests
    }
}
