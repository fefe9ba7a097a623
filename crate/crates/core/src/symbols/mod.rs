//! Per-degree spectral symbols of the layer-potential traces on the unit
//! sphere.
//!
//! With the Green's function g_k(r) = e^{ikr}/(4 pi r), each
//! rotation-invariant trace acts within one (n, m) and is independent of m.
//! In the basis {V, W, X-or-Y} everything reduces to seven scalars per
//! (n, k), built from j = j_n(k), h = h1_n(k) and the Riccati derivatives
//! jh' = (z j)'(k), hh' = (z h)'(k):
//!
//! ```text
//! s = ik j h                      S_k on Y and on W
//! t = (i/k)(jh' hh' + nu^2 j h)   tangential S_k on V
//! d = (ik^2/2)(j' h + j h')       PV of S'_k and of D_k
//! m = (ik/2)(jh' h + hh' j)       PV of n^ x curl S_k on V  (W side: -m)
//! u = (i nu/k) (z j h)'(k)        V <-> radial mixing of S_k
//! w = (i/k)(nu^2 j h + k^2 j'h')  n . S_k[n Y]
//! e = ik jh' hh'                  V -> W part of n^ x curl curl S_k
//! ```
//!
//! Jump relations (exterior minus interior, density coefficient 1):
//! n.grad S_k and div S_k[n sigma] jump by -1, D_k and n^ x curl S_k by +1;
//! everything else is continuous. Principal values are stored jump-free;
//! identity terms are added by the formulation assemblers.

mod oracle;
mod series;

pub use oracle::{oracle_trace, OracleConfig, OracleError, OracleTrace};
pub use series::{single_layer_series_diff, SMALL_K};

use alloc::vec::Vec;
use core::fmt;
use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::specfun::bessel_table;
use crate::{cr, I};

/// The seven independent per-degree trace eigenvalues at one (n, k).
#[derive(Debug, Clone, Copy)]
pub struct DegreeSymbols {
    pub n: usize,
    pub k: Complex64,
    /// S_k on Y_nm; also the W->W tangential single-layer eigenvalue.
    pub single_layer: Complex64,
    /// Tangential single layer on V_nm (zero at n = 0).
    pub single_layer_vv: Complex64,
    /// Principal value of S'_k; equals the PV of D_k on the sphere.
    pub normal_derivative_pv: Complex64,
    /// Principal value of n^ x curl S_k on V_nm; the W eigenvalue is -this.
    pub rotated_curl_pv: Complex64,
    /// n.S_k[V] on Y, and the V-component of the tangential trace of S_k[n Y].
    pub radial_mix: Complex64,
    /// n.S_k[n Y] on Y.
    pub radial_radial: Complex64,
    /// V -> W eigenvalue of n^ x curl curl S_k.
    pub curl_curl_vw: Complex64,
}

/// Identifier of every trace operator used by the formulations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TraceOp {
    /// n^ x S_k on a tangential density.
    NxS,
    /// n^ x S_k[n sigma].
    NxSNormal,
    /// n^ x grad S_k[rho] (the tangential-gradient part; continuous).
    NxGradS,
    /// PV of n^ x curl S_k on a tangential density (the magnetic-dipole trace).
    NxCurlS,
    /// n^ x curl S_k[n sigma] (continuous).
    NxCurlSNormal,
    /// n^ x curl curl S_k on a tangential density (continuous).
    NxCurlCurlS,
    /// div S_k on a tangential density (= S_k[div_S .], continuous).
    DivS,
    /// PV of div S_k[n sigma] (jumps by -1).
    DivSNormal,
    /// n . S_k on a tangential density.
    NdotS,
    /// n . S_k[n sigma].
    NdotSNormal,
    /// n . curl S_k on a tangential density (continuous).
    NdotCurlS,
    /// PV of the double layer D_k (kernel dg/dn_y; jumps by +1).
    DoubleLayer,
    /// PV of S'_k = n.grad S_k[rho] (jumps by -1).
    NormalDerivS,
    /// S_k on a scalar density (continuous).
    ScalarSingleLayer,
}

impl TraceOp {
    pub const ALL: [TraceOp; 14] = [
        TraceOp::NxS,
        TraceOp::NxSNormal,
        TraceOp::NxGradS,
        TraceOp::NxCurlS,
        TraceOp::NxCurlSNormal,
        TraceOp::NxCurlCurlS,
        TraceOp::DivS,
        TraceOp::DivSNormal,
        TraceOp::NdotS,
        TraceOp::NdotSNormal,
        TraceOp::NdotCurlS,
        TraceOp::DoubleLayer,
        TraceOp::NormalDerivS,
        TraceOp::ScalarSingleLayer,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            TraceOp::NxS => "nxS",
            TraceOp::NxSNormal => "nxS_normal",
            TraceOp::NxGradS => "nxGradS",
            TraceOp::NxCurlS => "nxCurlS",
            TraceOp::NxCurlSNormal => "nxCurlS_normal",
            TraceOp::NxCurlCurlS => "nxCurlCurlS",
            TraceOp::DivS => "divS",
            TraceOp::DivSNormal => "divS_normal",
            TraceOp::NdotS => "ndotS",
            TraceOp::NdotSNormal => "ndotS_normal",
            TraceOp::NdotCurlS => "ndotCurlS",
            TraceOp::DoubleLayer => "doubleLayer",
            TraceOp::NormalDerivS => "normalDerivS",
            TraceOp::ScalarSingleLayer => "scalarS",
        }
    }

    /// Does the operator act on tangential densities (so n = 0 is undefined)?
    pub fn needs_tangential_input(&self) -> bool {
        matches!(
            self,
            TraceOp::NxS
                | TraceOp::NxCurlS
                | TraceOp::NxCurlCurlS
                | TraceOp::DivS
                | TraceOp::NdotS
                | TraceOp::NdotCurlS
        )
    }

    /// Full jump, exterior trace minus interior trace, per unit density.
    pub fn jump(&self) -> f64 {
        match self {
            TraceOp::NxCurlS | TraceOp::DoubleLayer => 1.0,
            TraceOp::NormalDerivS | TraceOp::DivSNormal => -1.0,
            _ => 0.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum SymbolError {
    /// Tangential input requested at n = 0, where V and W do not exist.
    NoTangentialHarmonics,
    Bessel(crate::specfun::SpecFunError),
}

impl fmt::Display for SymbolError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SymbolError::NoTangentialHarmonics => {
                write!(f, "tangential harmonics do not exist at n = 0")
            }
            SymbolError::Bessel(e) => write!(f, "{e}"),
        }
    }
}

/// Component indices of a symbol block: inputs/outputs ordered [V, W, N],
/// where N stands for the scalar slot (Y or the normal density n Y).
pub const COMP_V: usize = 0;
pub const COMP_W: usize = 1;
pub const COMP_N: usize = 2;

/// Principal-value symbol block of one trace operator: entries[out][in] maps
/// density components [V, W, N] to trace components [V, W, N]. Jump
/// contributions are NOT included.
#[derive(Debug, Clone, Copy)]
pub struct SymbolBlock {
    pub op: TraceOp,
    pub n: usize,
    pub k: Complex64,
    pub entries: [[Complex64; 3]; 3],
}

impl SymbolBlock {
    /// One-sided trace: PV plus half the jump on the block's own diagonal
    /// structure. `exterior` selects the side.
    pub fn one_sided(&self, exterior: bool) -> [[Complex64; 3]; 3] {
        let mut e = self.entries;
        let half = 0.5 * self.op.jump() * if exterior { 1.0 } else { -1.0 };
        match self.op {
            TraceOp::NxCurlS => {
                e[COMP_V][COMP_V] += cr(half);
                e[COMP_W][COMP_W] += cr(half);
            }
            TraceOp::DoubleLayer | TraceOp::NormalDerivS | TraceOp::DivSNormal => {
                e[COMP_N][COMP_N] += cr(half);
            }
            _ => {}
        }
        e
    }
}

/// Compute the seven symbols at one (n, k). Small |k| switches to the
/// cancellation-free series; k = 0 returns the static limits exactly.
pub fn degree_symbols(n: usize, k: Complex64) -> DegreeSymbols {
    if k.norm() < SMALL_K {
        return series::series_symbols(n, k);
    }
    let t = bessel_table(n, k).expect("Im k >= 0 and k != 0 hold for validated setups");
    symbols_from_table(n, k, t.j[n], t.h1[n], t.dj[n], t.dh1[n])
}

/// Symbols for every degree 0..=n_max at fixed k, sharing one Bessel table.
pub fn degree_symbols_sweep(n_max: usize, k: Complex64) -> Vec<DegreeSymbols> {
    if k.norm() < SMALL_K {
        return (0..=n_max).map(|n| series::series_symbols(n, k)).collect();
    }
    let t = bessel_table(n_max, k).expect("Im k >= 0 and k != 0 hold for validated setups");
    (0..=n_max)
        .map(|n| symbols_from_table(n, k, t.j[n], t.h1[n], t.dj[n], t.dh1[n]))
        .collect()
}

fn symbols_from_table(
    n: usize,
    k: Complex64,
    j: Complex64,
    h: Complex64,
    dj: Complex64,
    dh: Complex64,
) -> DegreeSymbols {
    let nf = n as f64;
    let nu2 = nf * (nf + 1.0);
    let nu = nu2.sqrt();
    let jh = j + k * dj; // Riccati derivative (z j_n)'(k)
    let hh = h + k * dh;
    let single_layer = I * k * j * h;
    let normal_derivative_pv = I * k * k * 0.5 * (dj * h + j * dh);
    let (single_layer_vv, rotated_curl_pv, radial_mix, curl_curl_vw) = if n == 0 {
        (cr(0.0), cr(0.0), cr(0.0), cr(0.0))
    } else {
        (
            I / k * (jh * hh + nu2 * j * h),
            I * k * 0.5 * (jh * h + hh * j),
            I * nu / k * (j * h + k * (dj * h + j * dh)),
            I * k * jh * hh,
        )
    };
    let radial_radial = I / k * (nu2 * j * h + k * k * dj * dh);
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

/// Eigenvalue of the scalar single layer on Y_nm: i k j_n(k) h1_n(k),
/// with the static limit 1/(2n+1) built in.
pub fn scalar_single_layer_symbol(n: usize, k: Complex64) -> Complex64 {
    degree_symbols(n, k).single_layer
}

/// Static (k = 0) limits of all symbol products of one degree.
pub fn static_symbols(n: usize) -> DegreeSymbols {
    series::series_symbols(n, cr(0.0))
}

/// s(ka) - s(kb), stable against the cancellation that appears when both
/// arguments are small and nearly equal.
pub fn single_layer_diff(n: usize, ka: Complex64, kb: Complex64) -> Complex64 {
    if ka.norm() < SMALL_K && kb.norm() < SMALL_K {
        series::single_layer_series_diff(n, ka, kb)
    } else {
        degree_symbols(n, ka).single_layer - degree_symbols(n, kb).single_layer
    }
}

/// Principal-value symbol block of `op` at (n, k).
pub fn trace_symbol(op: TraceOp, n: usize, k: Complex64) -> Result<SymbolBlock, SymbolError> {
    if n == 0 && op.needs_tangential_input() {
        return Err(SymbolError::NoTangentialHarmonics);
    }
    let sy = degree_symbols(n, k);
    Ok(symbol_block(op, &sy))
}

/// Assemble the block of `op` from precomputed symbols.
pub fn symbol_block(op: TraceOp, sy: &DegreeSymbols) -> SymbolBlock {
    let nu = (sy.n as f64 * (sy.n as f64 + 1.0)).sqrt();
    let z = cr(0.0);
    let mut e = [[z; 3]; 3];
    let s = sy.single_layer;
    match op {
        TraceOp::NxS => {
            // n^ x (t V + s W) = t W - s V
            e[COMP_V][COMP_W] = -s;
            e[COMP_W][COMP_V] = sy.single_layer_vv;
        }
        TraceOp::NxSNormal => {
            // tangential part of S[nY] is u V; rotate to W
            e[COMP_W][COMP_N] = sy.radial_mix;
        }
        TraceOp::NxGradS => {
            e[COMP_W][COMP_N] = nu * s;
        }
        TraceOp::NxCurlS => {
            e[COMP_V][COMP_V] = sy.rotated_curl_pv;
            e[COMP_W][COMP_W] = -sy.rotated_curl_pv;
        }
        TraceOp::NxCurlSNormal => {
            e[COMP_V][COMP_N] = nu * s;
        }
        TraceOp::NxCurlCurlS => {
            e[COMP_W][COMP_V] = sy.curl_curl_vw;
            e[COMP_V][COMP_W] = -sy.k * sy.k * s;
        }
        TraceOp::DivS => {
            e[COMP_N][COMP_V] = -nu * s;
        }
        TraceOp::DivSNormal => {
            e[COMP_N][COMP_N] = -sy.normal_derivative_pv;
        }
        TraceOp::NdotS => {
            e[COMP_N][COMP_V] = sy.radial_mix;
        }
        TraceOp::NdotSNormal => {
            e[COMP_N][COMP_N] = sy.radial_radial;
        }
        TraceOp::NdotCurlS => {
            e[COMP_N][COMP_W] = -nu * s;
        }
        TraceOp::DoubleLayer => {
            e[COMP_N][COMP_N] = sy.normal_derivative_pv;
        }
        TraceOp::NormalDerivS => {
            e[COMP_N][COMP_N] = sy.normal_derivative_pv;
        }
        TraceOp::ScalarSingleLayer => {
            e[COMP_N][COMP_N] = s;
        }
    }
    SymbolBlock {
        op,
        n: sy.n,
        k: sy.k,
        entries: e,
    }
}


/// test-support: expose the raw series path for overlap comparisons
#[doc(hidden)]
pub fn series_probe(n: usize, k: Complex64) -> DegreeSymbols {
    series::series_symbols(n, k)
}
