//! Spherical Bessel and Hankel functions of complex argument.
//!
//! Conventions:
//!
//! ```text
//! j_n(z) = sqrt(pi/2z) J_{n+1/2}(z),   h_n^(1)(z) = j_n(z) + i y_n(z)
//! ```
//!
//! `j_n` is computed by Miller's downward recurrence (stable for n > |z|)
//! with periodic rescaling, normalized against the closed forms of `j_0` or
//! `j_1`, whichever is larger in magnitude. For |z| < 0.1 a truncated power
//! series is used instead. `h_n` runs upward from `h_0 = -i e^{iz}/z`, which
//! is stable because `y_n` dominates with increasing order.
//!
//! All functions assume Im z >= 0 (outgoing-wave branch).

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::I;

#[derive(Debug, Clone, PartialEq)]
pub enum SpecFunError {
    /// z = 0 requested while the Hankel sequence is singular there.
    SingularArgument,
    /// NaN or infinite input.
    NonFiniteArgument,
    /// Im z < 0 is outside the supported branch.
    LowerHalfPlane,
}

impl fmt::Display for SpecFunError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpecFunError::SingularArgument => write!(f, "z = 0 is singular for h1_n"),
            SpecFunError::NonFiniteArgument => write!(f, "non-finite argument"),
            SpecFunError::LowerHalfPlane => write!(f, "argument must satisfy Im z >= 0"),
        }
    }
}

/// Table of j_n, h1_n and derivatives for n = 0..=n_max at fixed argument.
#[derive(Debug, Clone)]
pub struct BesselTable {
    pub n_max: usize,
    pub z: Complex64,
    pub j: Vec<Complex64>,
    pub h1: Vec<Complex64>,
    pub dj: Vec<Complex64>,
    pub dh1: Vec<Complex64>,
}

const SERIES_RADIUS: f64 = 0.1;

/// Power series for j_n(z), accurate for |z| < ~1 and exact in the limit z -> 0.
///
/// j_n(z) = z^n/(2n+1)!! * sum_s (-z^2/2)^s / (s! (2n+3)(2n+5)...(2n+1+2s))
pub fn sph_j_series(n: usize, z: Complex64) -> Complex64 {
    let z2 = z * z;
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    for s in 1..40 {
        let denom = (s as f64) * (2 * n + 1 + 2 * s) as f64;
        term *= -z2 * 0.5 / denom;
        sum += term;
        if term.norm_sqr() < 1e-36 * sum.norm_sqr() {
            break;
        }
    }
    // z^n / (2n+1)!!, built as a running product so intermediates stay scaled
    let mut pref = Complex64::new(1.0, 0.0);
    for k in 0..n {
        pref *= z / (2 * k + 3) as f64;
    }
    pref * sum
}

/// Power series for y_n(z), small |z|.
///
/// y_n(z) = -(2n-1)!!/z^{n+1} * sum_s (-z^2/2)^s / (s! (1-2n)(3-2n)...(2s-1-2n))
pub fn sph_y_series(n: usize, z: Complex64) -> Complex64 {
    let z2 = z * z;
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    for s in 1..40 {
        let denom = (s as f64) * (2 * s as i64 - 1 - 2 * n as i64) as f64;
        term *= -z2 * 0.5 / denom;
        sum += term;
        if term.norm_sqr() < 1e-36 * sum.norm_sqr() {
            break;
        }
    }
    let mut pref = -1.0 / z;
    for k in 0..n {
        pref *= (2 * k as i64 - 1 + 2) as f64 / z; // (2k+1)/z
    }
    pref * sum
}

fn check_arg(z: Complex64) -> Result<(), SpecFunError> {
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(SpecFunError::NonFiniteArgument);
    }
    if z.im < 0.0 {
        return Err(SpecFunError::LowerHalfPlane);
    }
    Ok(())
}

fn j_sequence(n_max: usize, z: Complex64) -> Vec<Complex64> {
    if z.norm() < SERIES_RADIUS {
        return (0..=n_max).map(|n| sph_j_series(n, z)).collect();
    }
    // Miller downward recurrence with rescaling.
    let start = n_max.max(z.norm().ceil() as usize) + 32;
    let mut p_hi = Complex64::new(0.0, 0.0);
    let mut p = Complex64::new(1.0, 0.0);
    let mut seq = vec![Complex64::new(0.0, 0.0); n_max + 1];
    for n in (0..start).rev() {
        let p_lo = (2.0 * n as f64 + 3.0) / z * p - p_hi;
        p_hi = p;
        p = p_lo;
        if n <= n_max {
            seq[n] = p;
        }
        if p.re.abs().max(p.im.abs()) > 1e250 {
            let scale = 1e-250;
            p_hi *= scale;
            p *= scale;
            for v in seq.iter_mut() {
                *v *= scale;
            }
        }
    }
    let j0 = z.sin() / z;
    let j1 = z.sin() / (z * z) - z.cos() / z;
    // Anchor on whichever closed form is larger; j_0 and j_1 never vanish together.
    let (anchor_exact, anchor_raw) = if j0.norm() >= j1.norm() || n_max == 0 {
        (j0, seq[0])
    } else {
        (j1, seq[1.min(n_max)])
    };
    let scale = anchor_exact / anchor_raw;
    for v in seq.iter_mut() {
        *v *= scale;
    }
    seq
}

fn h_sequence(n_max: usize, z: Complex64) -> Vec<Complex64> {
    let mut seq = vec![Complex64::new(0.0, 0.0); n_max + 1];
    if z.norm() < SERIES_RADIUS {
        for n in 0..=n_max {
            seq[n] = sph_j_series(n, z) + I * sph_y_series(n, z);
        }
        return seq;
    }
    let h0 = -I * (I * z).exp() / z;
    seq[0] = h0;
    if n_max >= 1 {
        seq[1] = h0 * (1.0 / z - I);
        for n in 1..n_max {
            seq[n + 1] = (2.0 * n as f64 + 1.0) / z * seq[n] - seq[n - 1];
        }
    }
    seq
}

fn derivative_sequence(f: &[Complex64], z: Complex64) -> Vec<Complex64> {
    // f_n' = f_{n-1} - (n+1) f_n / z,  f_0' = -f_1.
    // Callers always supply at least two orders.
    let n_max = f.len() - 1;
    let mut df = vec![Complex64::new(0.0, 0.0); n_max + 1];
    for n in 1..=n_max {
        df[n] = f[n - 1] - (n as f64 + 1.0) / z * f[n];
    }
    df[0] = -f[1];
    df
}

/// Build the full table for n = 0..=n_max at complex argument z, Im z >= 0.
pub fn bessel_table(n_max: usize, z: Complex64) -> Result<BesselTable, SpecFunError> {
    check_arg(z)?;
    if z.norm() == 0.0 {
        return Err(SpecFunError::SingularArgument);
    }
    // Derivatives need one order beyond n_max when n_max = 0.
    let work_max = n_max.max(1);
    let j = j_sequence(work_max, z);
    let h1 = h_sequence(work_max, z);
    let dj = derivative_sequence(&j, z);
    let dh1 = derivative_sequence(&h1, z);
    let trunc = |mut v: Vec<Complex64>| {
        v.truncate(n_max + 1);
        v
    };
    Ok(BesselTable {
        n_max,
        z,
        j: trunc(j),
        h1: trunc(h1),
        dj: trunc(dj),
        dh1: trunc(dh1),
    })
}

/// Single value j_n(z); series for small |z|, otherwise via the table.
pub fn sph_j(n: usize, z: Complex64) -> Complex64 {
    if z.norm() < SERIES_RADIUS {
        sph_j_series(n, z)
    } else {
        j_sequence(n, z)[n]
    }
}

/// Single value h1_n(z) for z != 0.
pub fn sph_h1(n: usize, z: Complex64) -> Complex64 {
    h_sequence(n, z)[n]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::c64;
    use crate::cr;

    fn rel_err(a: Complex64, b: Complex64) -> f64 {
        (a - b).norm() / b.norm().max(1e-300)
    }

    #[test]
    fn j0_h0_closed_forms_at_one() {
        let t = bessel_table(0, cr(1.0)).unwrap();
        assert!((t.j[0].re - 0.8414709848).abs() < 1e-9);
        assert!(t.j[0].im.abs() < 1e-15);
        assert!((t.h1[0] - c64(0.8414709848, -0.5403023059)).norm() < 1e-9);
    }

    #[test]
    fn wronskian_identity_complex() {
        // j_n h1_n' - j_n' h1_n = i/z^2
        let z = c64(2.0, 1.0);
        let t = bessel_table(20, z).unwrap();
        let target = crate::I / (z * z);
        for n in 0..=20 {
            let w = t.j[n] * t.dh1[n] - t.dj[n] * t.h1[n];
            assert!(rel_err(w, target) < 1e-12, "n={n} w={w}");
        }
    }

    #[test]
    fn small_argument_asymptotics() {
        // j_n(z) ~ z^n/(2n+1)!! for tiny z
        let z = cr(1e-2);
        let t = bessel_table(30, z).unwrap();
        let mut dfact = 1.0;
        let mut zn = Complex64::new(1.0, 0.0);
        for n in 0..=30usize {
            if n > 0 {
                dfact *= (2 * n + 1) as f64;
                zn *= z;
            } else {
                dfact = 1.0;
            }
            let lead = zn / dfact;
            if lead.norm() > 1e-290 {
                assert!(rel_err(t.j[n], lead) < 1e-4, "n={n}");
            }
        }
        // and to 1e-10 once the quadratic correction is included
        for n in 0..=30usize {
            let lead = sph_j_series(n, z);
            if lead.norm() > 1e-290 {
                assert!(rel_err(t.j[n], lead) < 1e-10, "n={n}");
            }
        }
    }

    #[test]
    fn downward_recurrence_matches_series_in_overlap() {
        // both paths live on |z| in [0.1, 0.5); force the recurrence path and compare
        for &x in &[0.12, 0.25, 0.49] {
            let z = c64(x, 0.3 * x);
            let rec = j_sequence(12, z);
            for n in 0..=12 {
                let ser = sph_j_series(n, z);
                assert!(rel_err(rec[n], ser) < 1e-12, "n={n} z={z}");
            }
        }
    }

    #[test]
    fn real_argument_gives_real_j() {
        let t = bessel_table(25, cr(7.3)).unwrap();
        for n in 0..=25 {
            assert!(t.j[n].im.abs() <= 1e-14 * t.j[n].re.abs().max(1e-280), "n={n}");
            assert!(t.dj[n].im.abs() <= 1e-14 * t.dj[n].re.abs().max(1e-280));
        }
    }

    #[test]
    fn recurrence_consistency() {
        // j_{n-1} + j_{n+1} = (2n+1) j_n / z
        let z = c64(9.0, 0.4);
        let t = bessel_table(15, z).unwrap();
        for n in 1..15 {
            let lhs = t.j[n - 1] + t.j[n + 1];
            let rhs = (2.0 * n as f64 + 1.0) / z * t.j[n];
            if rhs.norm() > 1e-12 {
                assert!(rel_err(lhs, rhs) < 1e-10, "n={n}");
            }
        }
    }

    #[test]
    fn rejects_bad_arguments() {
        assert!(matches!(
            bessel_table(3, c64(0.0, 0.0)),
            Err(SpecFunError::SingularArgument)
        ));
        assert!(matches!(
            bessel_table(3, c64(f64::NAN, 0.0)),
            Err(SpecFunError::NonFiniteArgument)
        ));
        assert!(matches!(
            bessel_table(3, c64(1.0, -0.5)),
            Err(SpecFunError::LowerHalfPlane)
        ));
    }

    #[test]
    fn deep_evanescent_argument() {
        // strongly complex z exercises the rescaling branch
        let z = c64(3.0, 40.0);
        let t = bessel_table(40, z).unwrap();
        let target = crate::I / (z * z);
        for n in 0..=40 {
            let w = t.j[n] * t.dh1[n] - t.dj[n] * t.h1[n];
            assert!(rel_err(w, target) < 1e-11, "n={n}");
        }
    }
}
