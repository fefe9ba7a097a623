//! Fully normalized associated Legendre functions.
//!
//! `Pbar_n^m` is normalized so that `Y_nm = Pbar_n^m(cos th) e^{i m ph}` is
//! orthonormal on the unit sphere, with the Condon-Shortley phase folded in.

#[allow(unused_imports)]
use num_traits::Float;

/// Value of `Pbar_n^m(cos_th)` together with the two pole-safe companions
/// needed by tangential vector harmonics:
/// `d Pbar/d theta` and `m Pbar / sin theta`.
///
/// Requires `0 <= m <= n`. Stable for all theta away from exact poles;
/// callers nudge pole-exact directions by ~1e-13 before evaluating.
pub fn assoc_legendre_point(n: usize, m: usize, cos_th: f64, sin_th: f64) -> (f64, f64, f64) {
    debug_assert!(m <= n);
    let four_pi = 4.0 * core::f64::consts::PI;

    // Seed: Pbar_m^m = (-1)^m sqrt((2m+1)!!/(2m)!! / 4pi) sin^m,
    // built multiplicatively.
    let mut pmm = (1.0 / four_pi).sqrt();
    for k in 1..=m {
        let fk = k as f64;
        pmm *= -((2.0 * fk + 1.0) / (2.0 * fk)).sqrt() * sin_th;
    }
    if n == m {
        let p = pmm;
        // dP/dth from  sin dP/dth = n cos P - c_n Pbar_{n-1}^m  with Pbar_{m-1}^m = 0
        let dp = if sin_th.abs() > 0.0 {
            (n as f64) * cos_th * pmm / sin_th
        } else {
            0.0
        };
        let mos = if m > 0 { (m as f64) * pmm / sin_th } else { 0.0 };
        return (p, dp, mos);
    }

    // upward in degree: Pbar_{m+1}^m = sqrt(2m+3) cos Pbar_m^m
    let mut p_prev = pmm;
    let mut p = (2.0 * m as f64 + 3.0).sqrt() * cos_th * pmm;
    for nn in (m + 2)..=n {
        let fn_ = nn as f64;
        let fm = m as f64;
        let a = ((4.0 * fn_ * fn_ - 1.0) / (fn_ * fn_ - fm * fm)).sqrt();
        let b = (((fn_ - 1.0) * (fn_ - 1.0) - fm * fm) / (4.0 * (fn_ - 1.0) * (fn_ - 1.0) - 1.0))
            .sqrt();
        let p_next = a * (cos_th * p - b * p_prev);
        p_prev = p;
        p = p_next;
    }

    // sin dP_n/dth = n cos Pbar_n^m - sqrt((n^2-m^2)(2n+1)/(2n-1)) Pbar_{n-1}^m
    let fn_ = n as f64;
    let fm = m as f64;
    let c = ((fn_ * fn_ - fm * fm) * (2.0 * fn_ + 1.0) / (2.0 * fn_ - 1.0)).sqrt();
    let dp = (fn_ * cos_th * p - c * p_prev) / sin_th;
    let mos = if m > 0 { fm * p / sin_th } else { 0.0 };
    (p, dp, mos)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matches_low_order_closed_forms() {
        let th: f64 = 0.7;
        let (c, s) = (th.cos(), th.sin());
        let fp = 4.0 * core::f64::consts::PI;
        // Y_00
        let (p, _, _) = assoc_legendre_point(0, 0, c, s);
        assert!((p - (1.0 / fp).sqrt()).abs() < 1e-14);
        // Y_10 = sqrt(3/4pi) cos
        let (p, dp, _) = assoc_legendre_point(1, 0, c, s);
        assert!((p - (3.0 / fp).sqrt() * c).abs() < 1e-14);
        assert!((dp + (3.0 / fp).sqrt() * s).abs() < 1e-13);
        // Y_11 = -sqrt(3/8pi) sin
        let (p, dp, mos) = assoc_legendre_point(1, 1, c, s);
        assert!((p + (3.0 / (2.0 * fp)).sqrt() * s).abs() < 1e-14);
        assert!((dp + (3.0 / (2.0 * fp)).sqrt() * c).abs() < 1e-13);
        assert!((mos + (3.0 / (2.0 * fp)).sqrt()).abs() < 1e-13);
        // Y_21 = -sqrt(15/8pi) sin cos
        let (p, _, _) = assoc_legendre_point(2, 1, c, s);
        assert!((p + (15.0 / (2.0 * fp)).sqrt() * s * c).abs() < 1e-14);
    }

    #[test]
    fn orthonormal_under_gauss_quadrature() {
        let (x, w) = crate::specfun::gauss_legendre(40);
        for (n, m) in [(3usize, 1usize), (5, 2), (8, 0), (8, 8)] {
            let mut norm = 0.0;
            for (xi, wi) in x.iter().zip(&w) {
                let s = (1.0 - xi * xi).sqrt();
                let (p, _, _) = assoc_legendre_point(n, m, *xi, s);
                norm += wi * p * p;
            }
            norm *= 2.0 * core::f64::consts::PI;
            assert!((norm - 1.0).abs() < 1e-12, "n={n} m={m} norm={norm}");
        }
    }
}
