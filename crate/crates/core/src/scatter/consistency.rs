//! Physics invariant checks on evaluated fields: Maxwell curl/divergence
//! defects by fourth-order finite differences, the Silver-Muller radiation
//! residual, and cross-checks between the electric and magnetic field
//! systems.

use alloc::vec::Vec;
use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use super::fields::{evaluate_field, FieldError};
use super::solve::SolveResult;
use crate::{c64, I};

/// Defect metrics of one solve at a set of sample points.
#[derive(Debug, Clone, Copy)]
pub struct ConsistencyReport {
    /// max |curl E - i w mu H| / max |w mu H|
    pub curl_defect_e: f64,
    /// max |curl H + i w eps E| / max |w eps E|
    pub curl_defect_h: f64,
    /// max |div E| / max |E| (scaled by the local wavenumber where k > 1)
    pub div_defect_e: f64,
}

const FD_STEP: f64 = 0.02;

fn field_grid(
    result: &SolveResult,
    pt: [f64; 3],
) -> Result<Vec<([Complex64; 3], [Complex64; 3])>, FieldError> {
    // 4th-order central stencil: offsets -2h, -h, +h, +2h along each axis,
    // plus the center
    let mut pts = Vec::with_capacity(13);
    pts.push(pt);
    for axis in 0..3 {
        for step in [-2.0, -1.0, 1.0, 2.0] {
            let mut p = pt;
            p[axis] += step * FD_STEP;
            pts.push(p);
        }
    }
    let fields = evaluate_field(result, &pts)?;
    Ok(fields.into_iter().map(|f| (f.e, f.h)).collect())
}

fn fd_derivative(fm2: Complex64, fm1: Complex64, fp1: Complex64, fp2: Complex64) -> Complex64 {
    (-fp2 + 8.0 * fp1 - 8.0 * fm1 + fm2) / (12.0 * FD_STEP)
}

struct Jacobians {
    e: [[Complex64; 3]; 3], // de_i/dx_j
    h: [[Complex64; 3]; 3],
    e0: [Complex64; 3],
    h0: [Complex64; 3],
}

fn jacobians(result: &SolveResult, pt: [f64; 3]) -> Result<Jacobians, FieldError> {
    let g = field_grid(result, pt)?;
    let mut out = Jacobians {
        e: [[c64(0.0, 0.0); 3]; 3],
        h: [[c64(0.0, 0.0); 3]; 3],
        e0: g[0].0,
        h0: g[0].1,
    };
    for axis in 0..3 {
        let base = 1 + 4 * axis;
        for comp in 0..3 {
            out.e[comp][axis] = fd_derivative(
                g[base].0[comp],
                g[base + 1].0[comp],
                g[base + 2].0[comp],
                g[base + 3].0[comp],
            );
            out.h[comp][axis] = fd_derivative(
                g[base].1[comp],
                g[base + 1].1[comp],
                g[base + 2].1[comp],
                g[base + 3].1[comp],
            );
        }
    }
    Ok(out)
}

fn curl(j: &[[Complex64; 3]; 3]) -> [Complex64; 3] {
    [
        j[2][1] - j[1][2],
        j[0][2] - j[2][0],
        j[1][0] - j[0][1],
    ]
}

/// Verify the Maxwell system on the evaluated fields at the sample points.
/// All stencil points of one sample must lie in the same region.
pub fn maxwell_consistency(
    result: &SolveResult,
    points: &[[f64; 3]],
) -> Result<ConsistencyReport, FieldError> {
    let setup = &result.setup;
    let w = setup.omega;
    let mut num_e = 0.0f64;
    let mut den_e = 0.0f64;
    let mut num_h = 0.0f64;
    let mut den_h = 0.0f64;
    let mut num_d = 0.0f64;
    let mut den_d = 0.0f64;
    for &pt in points {
        let r = (pt[0] * pt[0] + pt[1] * pt[1] + pt[2] * pt[2]).sqrt();
        let (eps, mu) = if r > 1.0 {
            (setup.exterior.epsilon, setup.exterior.mu)
        } else {
            (setup.interior.epsilon, setup.interior.mu)
        };
        let jac = jacobians(result, pt)?;
        let ce = curl(&jac.e);
        let ch = curl(&jac.h);
        let mut div_e = c64(0.0, 0.0);
        for comp in 0..3 {
            let want_e = I * w * mu * jac.h0[comp];
            let want_h = -I * w * eps * jac.e0[comp];
            num_e = num_e.max((ce[comp] - want_e).norm());
            den_e = den_e.max(want_e.norm());
            num_h = num_h.max((ch[comp] - want_h).norm());
            den_h = den_h.max(want_h.norm());
            div_e += jac.e[comp][comp];
            den_d = den_d.max(jac.e0[comp].norm());
        }
        num_d = num_d.max(div_e.norm());
    }
    Ok(ConsistencyReport {
        curl_defect_e: num_e / den_e.max(1e-300),
        curl_defect_h: num_h / den_h.max(1e-300),
        div_defect_e: num_d / den_d.max(1e-300),
    })
}

/// |div E| / |E| at the sample points, fourth-order finite differences.
pub fn divergence_defect(result: &SolveResult, points: &[[f64; 3]]) -> Result<f64, FieldError> {
    let mut worst = 0.0f64;
    for &pt in points {
        let jac = jacobians(result, pt)?;
        let div: Complex64 = jac.e[0][0] + jac.e[1][1] + jac.e[2][2];
        let scale = jac.e0.iter().map(|v| v.norm()).fold(0.0, f64::max);
        worst = worst.max(div.norm() / scale.max(1e-300));
    }
    Ok(worst)
}

/// max over directions of |sqrt(mu0/eps0) H0 x r^ - E0| at radius r.
pub fn silver_muller_residual(
    result: &SolveResult,
    radius: f64,
    directions: &[[f64; 3]],
) -> Result<f64, FieldError> {
    let setup = &result.setup;
    let imp = (setup.exterior.mu / setup.exterior.epsilon).sqrt();
    let pts: Vec<[f64; 3]> = directions
        .iter()
        .map(|d| [d[0] * radius, d[1] * radius, d[2] * radius])
        .collect();
    let fields = evaluate_field(result, &pts)?;
    let mut worst = 0.0f64;
    for (f, d) in fields.iter().zip(directions) {
        let hxr = [
            f.h[1] * d[2] - f.h[2] * d[1],
            f.h[2] * d[0] - f.h[0] * d[2],
            f.h[0] * d[1] - f.h[1] * d[0],
        ];
        let mut res = 0.0f64;
        for c in 0..3 {
            res = res.max((imp * hxr[c] - f.e[c]).norm());
        }
        worst = worst.max(res);
    }
    Ok(worst)
}
