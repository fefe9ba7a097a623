//! Small-argument expansions of the per-degree trace symbols.
//!
//! Every symbol is a Bessel-product expression whose leading j*y parts cancel
//! almost completely as k -> 0; evaluating the products directly below
//! |k| ~ 1e-2 loses digits to that cancellation, and at omega = 0 the direct
//! forms are 0/0. Here each symbol is expanded through k^6 relative to its
//! static limit, with the leading k^{2n+1}-scale imaginary part kept, so the
//! static case is exact and the truncation error at the switch radius is
//! ~1e-13.
//!
//! Factor series (prime = d/dz, hat = Riccati (z f)'):
//!
//! ```text
//! j_n(z) =  z^n/(2n+1)!!      (1 + a1 z^2 + a2 z^4 + a3 z^6 + ...)
//! y_n(z) = -(2n-1)!!/z^{n+1}  (1 + b1 z^2 + b2 z^4 + b3 z^6 + ...)
//! a1 = -1/(2(2n+3))  a2 = 1/(8(2n+3)(2n+5))  a3 = -1/(48(2n+3)(2n+5)(2n+7))
//! b1 =  1/(2(2n-1))  b2 = 1/(8(2n-1)(2n-3))  b3 =  1/(48(2n-1)(2n-3)(2n-5))
//! ```

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use super::DegreeSymbols;
use crate::cr;

/// Arguments below this magnitude use the series path.
pub const SMALL_K: f64 = 1e-2;

/// Relative series 1 + c[0] k^2 + c[1] k^4 + c[2] k^6.
type Rel = [f64; 3];

fn mul(a: Rel, b: Rel) -> Rel {
    [
        a[0] + b[0],
        a[1] + b[1] + a[0] * b[0],
        a[2] + b[2] + a[0] * b[1] + a[1] * b[0],
    ]
}

fn eval(c: Rel, k2: Complex64) -> Complex64 {
    cr(1.0) + c[0] * k2 + c[1] * k2 * k2 + c[2] * k2 * k2 * k2
}

struct Factors {
    aj: Rel,  // j_n
    ay: Rel,  // y_n
    ajh: Rel, // (z j_n)', prefactor (n+1)
    ayh: Rel, // (z y_n)', prefactor n      (n >= 1)
    ajp: Rel, // j_n', prefactor n          (n >= 1)
    ayp: Rel, // y_n', prefactor (n+1)
    dfsq_inv: f64,
}

fn factors(n: usize) -> Factors {
    let nf = n as f64;
    let aj = [
        -1.0 / (2.0 * (2.0 * nf + 3.0)),
        1.0 / (8.0 * (2.0 * nf + 3.0) * (2.0 * nf + 5.0)),
        -1.0 / (48.0 * (2.0 * nf + 3.0) * (2.0 * nf + 5.0) * (2.0 * nf + 7.0)),
    ];
    let ay = [
        1.0 / (2.0 * (2.0 * nf - 1.0)),
        1.0 / (8.0 * (2.0 * nf - 1.0) * (2.0 * nf - 3.0)),
        1.0 / (48.0 * (2.0 * nf - 1.0) * (2.0 * nf - 3.0) * (2.0 * nf - 5.0)),
    ];
    let ajh = [
        aj[0] * (nf + 3.0) / (nf + 1.0),
        aj[1] * (nf + 5.0) / (nf + 1.0),
        aj[2] * (nf + 7.0) / (nf + 1.0),
    ];
    let ayh = [
        ay[0] * (nf - 2.0) / nf,
        ay[1] * (nf - 4.0) / nf,
        ay[2] * (nf - 6.0) / nf,
    ];
    let ajp = [
        aj[0] * (nf + 2.0) / nf,
        aj[1] * (nf + 4.0) / nf,
        aj[2] * (nf + 6.0) / nf,
    ];
    let ayp = [
        ay[0] * (nf - 1.0) / (nf + 1.0),
        ay[1] * (nf - 3.0) / (nf + 1.0),
        ay[2] * (nf - 5.0) / (nf + 1.0),
    ];
    let mut df = 1.0;
    for k in 0..=n {
        df /= (2 * k + 1) as f64;
    }
    Factors {
        aj,
        ay,
        ajh,
        ayh,
        ajp,
        ayp,
        dfsq_inv: df * df,
    }
}

pub fn series_symbols(n: usize, k: Complex64) -> DegreeSymbols {
    let nf = n as f64;
    let nu2 = nf * (nf + 1.0);
    let f = factors(n);
    let k2 = k * k;
    let inv_2n1 = 1.0 / (2.0 * nf + 1.0);
    // k^{2n-1}/((2n+1)!!)^2 and k^{2n+1}/((2n+1)!!)^2, the scales of the
    // imaginary parts; built without division so k = 0 stays finite
    let mut kpow_lo = k * f.dfsq_inv;
    for _ in 1..n {
        kpow_lo *= k2;
    }
    let kpow = if n == 0 { k * f.dfsq_inv } else { kpow_lo * k2 };
    let i = crate::I;

    // jy = -(1/((2n+1)k)) (1 + p1 k^2 + p2 k^4 + p3 k^6)
    let p = mul(f.aj, f.ay);
    // s = ik j h = -k jy + ik j^2
    let single_layer = inv_2n1 * eval(p, k2) + i * kpow * eval(mul(f.aj, f.aj), k2);

    // (jy)' = (1/((2n+1)k^2)) (1 - p1 k^2 - 3 p2 k^4 - 5 p3 k^6)
    let dp_series = cr(1.0) - p[0] * k2 - 3.0 * p[1] * k2 * k2 - 5.0 * p[2] * k2 * k2 * k2;
    // k^2 j'j = kpow (n + (2n+2) a1 k^2 + ((2n+4) a2 + (n+2) a1^2) k^4),
    // exact at n = 0 where the n-scaled seed vanishes
    let a1 = f.aj[0];
    let a2 = f.aj[1];
    let jpj = cr(nf)
        + (2.0 * nf + 2.0) * a1 * k2
        + ((2.0 * nf + 4.0) * a2 + (nf + 2.0) * a1 * a1) * k2 * k2;
    // d = -(k^2/2)(jy)' + i k^2 j'j
    let normal_derivative_pv = -0.5 * inv_2n1 * dp_series + i * kpow * jpj;

    let (single_layer_vv, rotated_curl_pv, radial_mix, curl_curl_vw, radial_radial);
    if n == 0 {
        single_layer_vv = cr(0.0);
        rotated_curl_pv = cr(0.0);
        radial_mix = cr(0.0);
        curl_curl_vw = cr(0.0);
        // w(0) = ik j0' h0' = 1/3 (1 + 2k^2/5 - 6k^4/35 + 107 k^6/5040)
        //        + i k^3/9 (1 - k^2/5)
        radial_radial = (cr(1.0) + 0.4 * k2 - (6.0 / 35.0) * k2 * k2
            + (107.0 / 5040.0) * k2 * k2 * k2)
            / 3.0
            + i * k * k2 / 9.0 * (cr(1.0) - 0.2 * k2);
    } else {
        let q = mul(f.ajh, f.ayh); // Riccati-j' * Riccati-y' relative series
        let ew = mul(f.ajp, f.ayp); // j' y' relative series

        // jh y + yh j = -(1/((2n+1)k)) ((n+1)(1 + ...) - n(1 + ...)); the
        // constant term is exactly 1 after the (n+1) - n cancellation
        let jh_y = mul(f.ajh, f.ay);
        let yh_j = mul(f.ayh, f.aj);
        let m_series = cr(1.0)
            + ((nf + 1.0) * jh_y[0] - nf * yh_j[0]) * k2
            + ((nf + 1.0) * jh_y[1] - nf * yh_j[1]) * k2 * k2
            + ((nf + 1.0) * jh_y[2] - nf * yh_j[2]) * k2 * k2 * k2;
        // m = -(k/2)(jh y + yh j) + ik jh j
        rotated_curl_pv =
            0.5 * inv_2n1 * m_series + i * (nf + 1.0) * kpow * eval(mul(f.ajh, f.aj), k2);

        // t = -(Q + nu^2 P)/k + (i/k)(jh^2 + nu^2 j^2)
        single_layer_vv = -nu2
            * inv_2n1
            * (cr(q[0] - p[0]) + (q[1] - p[1]) * k2 + (q[2] - p[2]) * k2 * k2)
            + i * kpow_lo
                * ((nf + 1.0) * (nf + 1.0) * eval(mul(f.ajh, f.ajh), k2)
                    + nu2 * eval(mul(f.aj, f.aj), k2));

        // u = (2 nu/(2n+1)) (p1 + 2 p2 k^2 + 3 p3 k^4)
        //     + i nu kpow_lo ((2n+1) + (4n+6) a1 k^2)
        let nu = nu2.sqrt();
        radial_mix = 2.0 * nu * inv_2n1 * (cr(p[0]) + 2.0 * p[1] * k2 + 3.0 * p[2] * k2 * k2)
            + i * nu * kpow_lo * (cr(2.0 * nf + 1.0) + (4.0 * nf + 6.0) * a1 * k2);

        // w = -(nu^2/(2n+1)) ((E1-p1) + (E2-p2) k^2 + (E3-p3) k^4)
        //     + i n kpow_lo ((2n+1) - k^2)
        radial_radial = -nu2
            * inv_2n1
            * (cr(ew[0] - p[0]) + (ew[1] - p[1]) * k2 + (ew[2] - p[2]) * k2 * k2)
            + i * nf * kpow_lo * (cr(2.0 * nf + 1.0) - k2);

        // e = -k Q + ik jh^2
        curl_curl_vw = -nu2 * inv_2n1 * eval(q, k2)
            + i * (nf + 1.0) * (nf + 1.0) * kpow * eval(mul(f.ajh, f.ajh), k2);
    }

    DegreeSymbols {
        n,
        k,
        single_layer,
        single_layer_vv,
        normal_derivative_pv,
        rotated_curl_pv,
        radial_mix,
        radial_radial,
        curl_curl_vw,
    }
}

/// s(ka) - s(kb) without the cancellation of the direct difference; needed
/// where a formulation divides a single-layer difference by omega.
pub fn single_layer_series_diff(n: usize, ka: Complex64, kb: Complex64) -> Complex64 {
    let f = factors(n);
    let p = mul(f.aj, f.ay);
    let jj = mul(f.aj, f.aj);
    let inv_2n1 = 1.0 / (2 * n + 1) as f64;
    let (ka2, kb2) = (ka * ka, kb * kb);
    let mut pa = ka * f.dfsq_inv;
    let mut pb = kb * f.dfsq_inv;
    for _ in 0..n {
        pa *= ka2;
        pb *= kb2;
    }
    inv_2n1
        * (p[0] * (ka2 - kb2)
            + p[1] * (ka2 * ka2 - kb2 * kb2)
            + p[2] * (ka2 * ka2 * ka2 - kb2 * kb2 * kb2))
        + crate::I * (pa * eval(jj, ka2) - pb * eval(jj, kb2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::c64;

    #[test]
    fn division_free_at_zero() {
        for n in 0..12 {
            let s = series_symbols(n, cr(0.0));
            assert!(s.single_layer.re.is_finite());
            assert!(s.single_layer_vv.re.is_finite());
            assert!(s.radial_radial.re.is_finite());
            assert!((s.single_layer.re - 1.0 / (2.0 * n as f64 + 1.0)).abs() < 1e-15);
            assert_eq!(s.single_layer.im, 0.0);
        }
    }

    #[test]
    fn static_limits_match_closed_forms() {
        for n in 1..10usize {
            let nf = n as f64;
            let s = series_symbols(n, cr(0.0));
            let denom = (2.0 * nf + 1.0) * (2.0 * nf - 1.0) * (2.0 * nf + 3.0);
            let t0 = (4.0 * nf * nf + 4.0 * nf + 3.0) / denom;
            let u0 = 4.0 * (nf * (nf + 1.0)).sqrt() / denom;
            let w0 = (4.0 * nf * nf + 4.0 * nf - 1.0) / denom;
            assert!((s.single_layer_vv.re - t0).abs() < 1e-14, "n={n}");
            assert!((s.radial_mix.re - u0).abs() < 1e-14, "n={n}");
            assert!((s.radial_radial.re - w0).abs() < 1e-14, "n={n}");
            assert!((s.rotated_curl_pv.re - 0.5 / (2.0 * nf + 1.0)).abs() < 1e-14);
            assert!((s.normal_derivative_pv.re + 0.5 / (2.0 * nf + 1.0)).abs() < 1e-14);
            assert!((s.curl_curl_vw.re + nf * (nf + 1.0) / (2.0 * nf + 1.0)).abs() < 1e-13);
        }
    }

    #[test]
    fn diff_helper_matches_plain_difference_at_moderate_k() {
        // the helper is the accurate route; the plain difference carries
        // ~1e-11 relative cancellation noise at these magnitudes
        let (ka, kb) = (c64(9e-3, 0.0), c64(7e-3, 2e-3));
        for n in 0..8 {
            let direct = series_symbols(n, ka).single_layer - series_symbols(n, kb).single_layer;
            let diff = single_layer_series_diff(n, ka, kb);
            assert!((direct - diff).norm() < 1e-9 * diff.norm().max(1e-18), "n={n}");
        }
    }
}
