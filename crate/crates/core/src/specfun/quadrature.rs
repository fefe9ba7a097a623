//! Gauss-Legendre nodes and weights on [-1, 1], by Newton iteration on P_n.

use alloc::vec;
use alloc::vec::Vec;
#[allow(unused_imports)]
use num_traits::Float;

/// Nodes and weights of the n-point Gauss-Legendre rule, exact for
/// polynomials of degree <= 2n-1.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    let m = (n + 1) / 2;
    for i in 0..m {
        // Tricomi initial guess
        let mut xi =
            (core::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            // evaluate P_n and P_n' by recurrence
            let mut p0 = 1.0;
            let mut p1 = xi;
            for k in 2..=n {
                let fk = k as f64;
                let p2 = ((2.0 * fk - 1.0) * xi * p1 - (fk - 1.0) * p0) / fk;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (xi * p1 - p0) / (xi * xi - 1.0);
            let dx = p1 / dp;
            xi -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        x[i] = -xi;
        x[n - 1 - i] = xi;
        let wi = 2.0 / ((1.0 - xi * xi) * dp * dp);
        w[i] = wi;
        w[n - 1 - i] = wi;
    }
    (x, w)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integrates_polynomials_exactly() {
        let (x, w) = gauss_legendre(8);
        // x^14 integrates to 2/15 on [-1,1]
        let s: f64 = x.iter().zip(&w).map(|(xi, wi)| wi * xi.powi(14)).sum();
        assert!((s - 2.0 / 15.0).abs() < 1e-14);
        let total: f64 = w.iter().sum();
        assert!((total - 2.0).abs() < 1e-14);
    }
}
