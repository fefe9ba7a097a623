//! Per-degree dense blocks of each integral-equation formulation.
//!
//! Each formulation reduces, per spherical-harmonic degree n, to a small
//! dense complex system acting on mode coefficients; assembly composes the
//! principal-value trace symbols with explicit identity (jump) terms. Blocks
//! never reference the order m.
//!
//! Sign and ordering conventions, fixed once so that every zero-contrast
//! block is literally diagonal with the expected positivity pattern and Mie
//! agreement holds, are recorded in each block's layout labels.

mod charge_current;
mod decoupled;
mod dfie;
mod muller;

pub use charge_current::charge_current_block;
pub use decoupled::{decoupled_scalar_blocks, ScalarKind};
pub use dfie::{dfie_e_block, dfie_h_block, dfie_limit_block, dfie_scaled_block};
pub use muller::muller_block;

use alloc::vec::Vec;
use core::fmt;
use num_complex::Complex64;

use crate::media::ProblemSetup;
use crate::symbols::{degree_symbols, single_layer_diff, DegreeSymbols};

#[derive(Debug, Clone, PartialEq)]
pub enum FormulationError {
    /// The formulation is undefined at omega = 0.
    StaticUnsupported(&'static str),
}

impl fmt::Display for FormulationError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FormulationError::StaticUnsupported(which) => {
                write!(f, "{which} is not defined at omega = 0")
            }
        }
    }
}

/// Row/unknown labelling of a block, fixing the conventions in writing.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlockLayout {
    pub unknowns: &'static [&'static str],
    pub rows: &'static [&'static str],
    /// One-line record of the sign/scaling convention choices.
    pub convention: &'static str,
}

/// Dense square block of one formulation at one degree.
#[derive(Debug, Clone)]
pub struct ModeBlock {
    pub formulation: &'static str,
    pub n: usize,
    pub dim: usize,
    /// Row-major dim x dim entries.
    pub entries: Vec<Complex64>,
    pub layout: BlockLayout,
}

impl ModeBlock {
    pub fn at(&self, r: usize, c: usize) -> Complex64 {
        self.entries[r * self.dim + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Complex64) {
        self.entries[r * self.dim + c] = v;
    }

    pub fn singular_values(&self) -> Vec<f64> {
        crate::linalg::singular_values(&self.entries, self.dim)
    }

    /// Largest absolute deviation from a diagonal matrix.
    pub fn max_offdiagonal(&self) -> f64 {
        let mut worst = 0.0f64;
        for r in 0..self.dim {
            for c in 0..self.dim {
                if r != c {
                    worst = worst.max(self.at(r, c).norm());
                }
            }
        }
        worst
    }
}

/// Per-degree symbol data shared by the assemblers: symbols of both media
/// plus the cancellation-safe single-layer difference s(k0) - s(k).
pub(crate) struct DegreeData {
    pub sy0: DegreeSymbols,
    pub sy: DegreeSymbols,
    pub s_diff: Complex64,
}

pub(crate) fn degree_data(n: usize, setup: &ProblemSetup) -> DegreeData {
    let k0 = setup.k0();
    let k = setup.k();
    DegreeData {
        sy0: degree_symbols(n, k0),
        sy: degree_symbols(n, k),
        s_diff: single_layer_diff(n, k0, k),
    }
}

pub(crate) fn nu(n: usize) -> f64 {
    let nf = n as f64;
    num_traits::Float::sqrt(nf * (nf + 1.0))
}
