//! Dense complex linear algebra for the per-degree blocks (dims <= 8):
//! LU with partial pivoting for the solves, one-sided Jacobi for singular
//! values. Both are exact-arithmetic-simple and more than accurate enough at
//! these sizes.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

#[derive(Debug, Clone, PartialEq)]
pub enum LinalgError {
    /// Pivot collapsed to zero: the block is numerically singular.
    Singular,
    DimensionMismatch,
}

impl fmt::Display for LinalgError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LinalgError::Singular => write!(f, "singular block"),
            LinalgError::DimensionMismatch => write!(f, "dimension mismatch"),
        }
    }
}

/// LU factorization with partial pivoting of a row-major dim x dim matrix.
pub struct LuFactor {
    dim: usize,
    lu: Vec<Complex64>,
    piv: Vec<usize>,
}

impl LuFactor {
    pub fn new(a: &[Complex64], dim: usize) -> Result<Self, LinalgError> {
        if a.len() != dim * dim {
            return Err(LinalgError::DimensionMismatch);
        }
        let mut lu = a.to_vec();
        let mut piv: Vec<usize> = (0..dim).collect();
        for col in 0..dim {
            // pivot
            let mut best = col;
            let mut best_mag = lu[col * dim + col].norm_sqr();
            for r in (col + 1)..dim {
                let mag = lu[r * dim + col].norm_sqr();
                if mag > best_mag {
                    best = r;
                    best_mag = mag;
                }
            }
            if best_mag == 0.0 {
                return Err(LinalgError::Singular);
            }
            if best != col {
                for c in 0..dim {
                    lu.swap(col * dim + c, best * dim + c);
                }
                piv.swap(col, best);
            }
            let pivot = lu[col * dim + col];
            for r in (col + 1)..dim {
                let f = lu[r * dim + col] / pivot;
                lu[r * dim + col] = f;
                for c in (col + 1)..dim {
                    let sub = f * lu[col * dim + c];
                    lu[r * dim + c] -= sub;
                }
            }
        }
        Ok(LuFactor { dim, lu, piv })
    }

    pub fn solve(&self, rhs: &[Complex64]) -> Result<Vec<Complex64>, LinalgError> {
        if rhs.len() != self.dim {
            return Err(LinalgError::DimensionMismatch);
        }
        let d = self.dim;
        let mut x: Vec<Complex64> = self.piv.iter().map(|&p| rhs[p]).collect();
        for r in 1..d {
            for c in 0..r {
                let sub = self.lu[r * d + c] * x[c];
                x[r] -= sub;
            }
        }
        for r in (0..d).rev() {
            for c in (r + 1)..d {
                let sub = self.lu[r * d + c] * x[c];
                x[r] -= sub;
            }
            x[r] /= self.lu[r * d + r];
        }
        Ok(x)
    }
}

/// Singular values of a row-major dim x dim complex matrix, descending.
///
/// One-sided Jacobi: orthogonalize column pairs with complex rotations until
/// the Gram off-diagonals vanish; the singular values are the column norms.
pub fn singular_values(a: &[Complex64], dim: usize) -> Vec<f64> {
    if dim == 0 {
        return Vec::new();
    }
    // columns of the working matrix
    let mut u = vec![Complex64::new(0.0, 0.0); dim * dim];
    for r in 0..dim {
        for c in 0..dim {
            u[c * dim + r] = a[r * dim + c];
        }
    }
    let col = |u: &Vec<Complex64>, j: usize, r: usize| u[j * dim + r];
    for _sweep in 0..60 {
        let mut off = 0.0f64;
        for p in 0..dim {
            for q in (p + 1)..dim {
                // Gram entries
                let mut app = 0.0;
                let mut aqq = 0.0;
                let mut apq = Complex64::new(0.0, 0.0);
                for r in 0..dim {
                    let up = col(&u, p, r);
                    let uq = col(&u, q, r);
                    app += up.norm_sqr();
                    aqq += uq.norm_sqr();
                    apq += up.conj() * uq;
                }
                let scale = (app * aqq).sqrt();
                if scale == 0.0 || apq.norm() <= 1e-30 * scale {
                    continue;
                }
                off = off.max(apq.norm() / scale);
                // complex Jacobi rotation diagonalizing [[app, apq],[apq*, aqq]]
                let phase = apq / apq.norm();
                let tau = (aqq - app) / (2.0 * apq.norm());
                let t = tau.signum0() / (tau.abs() + (1.0 + tau * tau).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                for r in 0..dim {
                    let up = u[p * dim + r];
                    let vq = phase.conj() * u[q * dim + r];
                    u[p * dim + r] = c * up - s * vq;
                    u[q * dim + r] = phase * (s * up + c * vq);
                }
            }
        }
        if off < 1e-15 {
            break;
        }
    }
    let mut sv: Vec<f64> = (0..dim)
        .map(|j| {
            let mut s = 0.0;
            for r in 0..dim {
                s += u[j * dim + r].norm_sqr();
            }
            s.sqrt()
        })
        .collect();
    sv.sort_by(|a, b| b.partial_cmp(a).unwrap());
    sv
}

trait Signum0 {
    fn signum0(self) -> f64;
}

impl Signum0 for f64 {
    fn signum0(self) -> f64 {
        if self >= 0.0 {
            1.0
        } else {
            -1.0
        }
    }
}

/// Residual max-norm of A x - b.
pub fn residual_norm(a: &[Complex64], dim: usize, x: &[Complex64], b: &[Complex64]) -> f64 {
    let mut worst = 0.0f64;
    for r in 0..dim {
        let mut acc = -b[r];
        for c in 0..dim {
            acc += a[r * dim + c] * x[c];
        }
        worst = worst.max(acc.norm());
    }
    worst
}

/// Frobenius norm.
pub fn frobenius(a: &[Complex64]) -> f64 {
    a.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt()
}
