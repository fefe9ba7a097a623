//! Per-mode dense solves and the condition-number bookkeeping.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use super::rhs::{boundary_data, BoundaryData};
use super::{mode_count, mode_index, IncidentModes, PlaneWave};
use crate::formulations::{
    charge_current_block, decoupled_scalar_blocks, dfie_e_block, dfie_h_block, dfie_scaled_block,
    muller_block, FormulationError, ModeBlock,
};
use crate::linalg::{frobenius, residual_norm, LuFactor};
use crate::media::ProblemSetup;
use crate::symbols::single_layer_diff;
use crate::{c64, I};

/// Which integral-equation formulation to solve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FormulationChoice {
    DfieE,
    DfieH,
    DfieScaled,
    Muller,
    ChargeCurrent(Complex64),
    DecoupledCc,
}

impl FormulationChoice {
    pub fn name(&self) -> &'static str {
        match self {
            FormulationChoice::DfieE => "dfie",
            FormulationChoice::DfieH => "dfie-h",
            FormulationChoice::DfieScaled => "dfie-scaled",
            FormulationChoice::Muller => "muller",
            FormulationChoice::ChargeCurrent(_) => "cc",
            FormulationChoice::DecoupledCc => "decoupled-cc",
        }
    }

    /// Unknowns per mode at degree n (the DecoupledCc spectrum concatenates
    /// the Muller currents and the four scalar densities).
    pub fn dim(&self, n: usize) -> usize {
        match self {
            FormulationChoice::DfieE | FormulationChoice::DfieH | FormulationChoice::DfieScaled => {
                if n == 0 {
                    2
                } else {
                    6
                }
            }
            FormulationChoice::Muller => {
                if n == 0 {
                    0
                } else {
                    4
                }
            }
            FormulationChoice::ChargeCurrent(_) => {
                if n == 0 {
                    2
                } else {
                    6
                }
            }
            FormulationChoice::DecoupledCc => {
                if n == 0 {
                    4
                } else {
                    8
                }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum SolveError {
    Formulation(FormulationError),
    /// The resonance detector: a block's smallest singular value fell below
    /// 1e-13 times its largest.
    NearSingular {
        formulation: &'static str,
        n: usize,
        omega: f64,
    },
}

impl fmt::Display for SolveError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SolveError::Formulation(e) => write!(f, "{e}"),
            SolveError::NearSingular { formulation, n, omega } => write!(
                f,
                "near-singular {formulation} block at degree {n}, omega = {omega}"
            ),
        }
    }
}

impl From<FormulationError> for SolveError {
    fn from(e: FormulationError) -> Self {
        SolveError::Formulation(e)
    }
}

/// Spectral-coefficient storage per (n, m), layout per formulation.
#[derive(Debug, Clone)]
pub struct DensitySpectrum {
    pub formulation: &'static str,
    pub n_max: usize,
    pub coeffs: Vec<Vec<Complex64>>,
}

impl DensitySpectrum {
    pub fn at(&self, n: usize, m: i64) -> &[Complex64] {
        &self.coeffs[mode_index(n, m)]
    }

    /// Largest coefficient magnitude at degree n over all m.
    pub fn degree_norm(&self, n: usize) -> f64 {
        let mut worst = 0.0f64;
        for m in -(n as i64)..=(n as i64) {
            for v in self.at(n, m) {
                worst = worst.max(v.norm());
            }
        }
        worst
    }
}

/// Spectral condition data over the retained blocks, plain Euclidean norm.
#[derive(Debug, Clone, Copy)]
pub struct ConditionReport {
    pub condition: f64,
    pub sigma_max: f64,
    pub sigma_min: f64,
    /// Degree attaining sigma_min.
    pub worst_degree: usize,
}

impl ConditionReport {
    fn empty() -> Self {
        ConditionReport {
            condition: 0.0,
            sigma_max: 0.0,
            sigma_min: f64::INFINITY,
            worst_degree: 0,
        }
    }

    fn absorb(&mut self, n: usize, sv: &[f64]) {
        if sv.is_empty() {
            return;
        }
        if sv[0] > self.sigma_max {
            self.sigma_max = sv[0];
        }
        let last = *sv.last().unwrap();
        if last < self.sigma_min {
            self.sigma_min = last;
            self.worst_degree = n;
        }
        self.condition = self.sigma_max / self.sigma_min;
    }
}

/// Condition of one formulation's block family at a given setup, without a
/// right-hand side. For DecoupledCc the report is the worst stage among the
/// Muller system and the two scalar systems.
pub fn condition_report(
    choice: &FormulationChoice,
    setup: &ProblemSetup,
) -> Result<ConditionReport, SolveError> {
    let mut rep = ConditionReport::empty();
    for n in 0..=setup.n_max {
        for b in assemble(choice, n, setup)? {
            rep.absorb(n, &b.singular_values());
        }
    }
    Ok(rep)
}

fn assemble(
    choice: &FormulationChoice,
    n: usize,
    setup: &ProblemSetup,
) -> Result<Vec<ModeBlock>, SolveError> {
    Ok(match choice {
        FormulationChoice::DfieE => vec![dfie_e_block(n, setup)],
        FormulationChoice::DfieH => vec![dfie_h_block(n, setup)],
        FormulationChoice::DfieScaled => vec![dfie_scaled_block(n, setup)?],
        FormulationChoice::Muller => vec![muller_block(n, setup)?],
        FormulationChoice::ChargeCurrent(eta) => vec![charge_current_block(n, setup, *eta)?],
        FormulationChoice::DecoupledCc => {
            let m = muller_block(n, setup)?;
            let (e, h) = decoupled_scalar_blocks(n, setup);
            vec![m, e, h]
        }
    })
}

/// Solution of one formulation against a plane wave.
#[derive(Debug, Clone)]
pub struct SolveResult {
    pub setup: ProblemSetup,
    pub choice: FormulationChoice,
    pub spectrum: DensitySpectrum,
    /// max over modes of |A x - b| / |A|_F.
    pub max_relative_residual: f64,
    pub condition: ConditionReport,
}

/// Assemble, factor and solve every retained mode block.
pub fn solve(
    choice: FormulationChoice,
    pw: &PlaneWave,
    setup: &ProblemSetup,
) -> Result<SolveResult, SolveError> {
    let n_max = setup.n_max;
    let modes: Option<IncidentModes> = if setup.omega > 0.0 {
        Some(super::planewave::incident_modes(pw, setup, n_max))
    } else {
        None
    };
    let data = boundary_data(&choice, pw, setup, modes.as_ref());
    let mut coeffs = vec![Vec::new(); mode_count(n_max)];
    let mut rep = ConditionReport::empty();
    let mut max_rel_res = 0.0f64;

    match choice {
        FormulationChoice::DecoupledCc => {
            solve_decoupled(pw, setup, &data, modes.as_ref(), &mut coeffs, &mut rep, &mut max_rel_res)?;
        }
        _ => {
            for n in 0..=n_max {
                let blocks = assemble(&choice, n, setup)?;
                let b = &blocks[0];
                if b.dim == 0 {
                    continue;
                }
                let sv = b.singular_values();
                if sv[sv.len() - 1] < 1e-13 * sv[0] {
                    return Err(SolveError::NearSingular {
                        formulation: choice.name(),
                        n,
                        omega: setup.omega,
                    });
                }
                rep.absorb(n, &sv);
                let lu = LuFactor::new(&b.entries, b.dim).expect("pivot guarded by svd check");
                let fnorm = frobenius(&b.entries);
                for m in -(n as i64)..=(n as i64) {
                    let rhs = data.at(n, m);
                    let x = lu.solve(rhs).expect("dims match");
                    let res = residual_norm(&b.entries, b.dim, &x, rhs);
                    max_rel_res = max_rel_res.max(res / fnorm);
                    coeffs[mode_index(n, m)] = x;
                }
            }
        }
    }

    Ok(SolveResult {
        setup: setup.clone(),
        choice,
        spectrum: DensitySpectrum {
            formulation: choice.name(),
            n_max,
            coeffs,
        },
        max_relative_residual: max_rel_res,
        condition: rep,
    })
}

/// Muller solve followed by the two scalar-potential solves per mode.
/// Spectrum layout per mode: [Js_V, Js_W, Ks_V, Ks_W, c0, c, d0, d]
/// (degree 0: [c0, c, d0, d]).
#[allow(clippy::too_many_arguments)]
fn solve_decoupled(
    _pw: &PlaneWave,
    setup: &ProblemSetup,
    incident_rows: &BoundaryData,
    modes: Option<&IncidentModes>,
    coeffs: &mut [Vec<Complex64>],
    rep: &mut ConditionReport,
    max_rel_res: &mut f64,
) -> Result<(), SolveError> {
    let n_max = setup.n_max;
    let (e0, m0) = (setup.exterior.epsilon, setup.exterior.mu);
    let (e, m) = (setup.interior.epsilon, setup.interior.mu);
    let w = setup.omega;
    let k0 = setup.k0();
    let k = setup.k();
    // Muller stage needs its own right-hand side
    let muller_data = boundary_data(&FormulationChoice::Muller, _pw, setup, modes);
    for n in 0..=n_max {
        let mb = muller_block(n, setup)?;
        let (be, bh) = decoupled_scalar_blocks(n, setup);
        for b in [&mb, &be, &bh] {
            if b.dim == 0 {
                continue;
            }
            let sv = b.singular_values();
            if sv[sv.len() - 1] < 1e-13 * sv[0] {
                return Err(SolveError::NearSingular {
                    formulation: "decoupled-cc",
                    n,
                    omega: setup.omega,
                });
            }
            rep.absorb(n, &sv);
        }
        let lu_e = LuFactor::new(&be.entries, 2).expect("guarded");
        let lu_h = LuFactor::new(&bh.entries, 2).expect("guarded");
        let lu_m = if mb.dim > 0 {
            Some(LuFactor::new(&mb.entries, mb.dim).expect("guarded"))
        } else {
            None
        };
        let nf = n as f64;
        let nu = (nf * (nf + 1.0)).sqrt();
        let sdiff = single_layer_diff(n, k0, k);
        let sy0 = crate::symbols::degree_symbols(n, k0);
        let sy = crate::symbols::degree_symbols(n, k);
        for mm in -(n as i64)..=(n as i64) {
            let idx = mode_index(n, mm);
            let inc = incident_rows.at(n, mm);
            let (js, res_m) = if let Some(lu) = &lu_m {
                let rhs = muller_data.at(n, mm);
                let x = lu.solve(rhs).expect("dims");
                let res = residual_norm(&mb.entries, 4, &x, rhs) / frobenius(&mb.entries);
                (x, res)
            } else {
                (Vec::new(), 0.0)
            };
            *max_rel_res = (*max_rel_res).max(res_m);
            let (jv, jw, kv, kw) = if js.is_empty() {
                (c64(0.0, 0.0), c64(0.0, 0.0), c64(0.0, 0.0), c64(0.0, 0.0))
            } else {
                (js[0], js[1], js[2], js[3])
            };
            // Electric pair: dirichlet of (phi0 - phi) driven by div S[Js],
            // weighted Neumann driven by the incident term and the currents.
            let rhs_e = [
                -nu / (I * w) * sdiff * jv,
                inc[1]
                    + I * w * (e0 * e0 * m0 * sy0.radial_mix - e * e * m * sy.radial_mix) * jv
                    + nu * (e0 * m0 * sy0.single_layer - e * m * sy.single_layer) * kw,
            ];
            let rhs_h = [
                -nu / (I * w) * sdiff * kv,
                inc[3]
                    - nu * (m0 * e0 * sy0.single_layer - m * e * sy.single_layer) * jw
                    + I * w * (m0 * m0 * e0 * sy0.radial_mix - m * m * e * sy.radial_mix) * kv,
            ];
            let xe = lu_e.solve(&rhs_e).expect("dims");
            let xh = lu_h.solve(&rhs_h).expect("dims");
            *max_rel_res = (*max_rel_res)
                .max(residual_norm(&be.entries, 2, &xe, &rhs_e) / frobenius(&be.entries))
                .max(residual_norm(&bh.entries, 2, &xh, &rhs_h) / frobenius(&bh.entries));
            let mut out = Vec::with_capacity(8);
            if n > 0 {
                out.extend_from_slice(&[jv, jw, kv, kw]);
            }
            out.extend_from_slice(&[xe[0], xe[1], xh[0], xh[1]]);
            coeffs[idx] = out;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::media::Medium;

    fn canonical_setup(omega: f64, eps: Complex64, mu: Complex64) -> ProblemSetup {
        ProblemSetup::new(omega, Medium::vacuum(), Medium::new(eps, mu).unwrap()).unwrap()
    }

    #[test]
    fn residuals_are_small_for_all_formulations() {
        let pw = PlaneWave::z_propagating_x_polarized();
        let setup = canonical_setup(1.0, crate::cr(1.3), crate::cr(1.0)).with_n_max(12);
        for choice in [
            FormulationChoice::DfieE,
            FormulationChoice::DfieH,
            FormulationChoice::DfieScaled,
            FormulationChoice::Muller,
            FormulationChoice::ChargeCurrent(crate::I),
            FormulationChoice::DecoupledCc,
        ] {
            let r = solve(choice, &pw, &setup).unwrap();
            assert!(
                r.max_relative_residual < 1e-12,
                "{}: residual {}",
                choice.name(),
                r.max_relative_residual
            );
            assert!(r.condition.condition > 0.9);
        }
    }

    #[test]
    fn dfie_coefficients_decay_superalgebraically() {
        let pw = PlaneWave::z_propagating_x_polarized();
        let setup = canonical_setup(2.0, crate::cr(1.3), crate::cr(1.0)).with_n_max(26);
        let r = solve(FormulationChoice::DfieE, &pw, &setup).unwrap();
        let peak: f64 = (0..=6).map(|n| r.spectrum.degree_norm(n)).fold(0.0, f64::max);
        let tail = r.spectrum.degree_norm(26);
        assert!(tail < 1e-10 * peak, "tail {tail} vs peak {peak}");
    }

    #[test]
    fn static_solve_works_for_the_field_systems_only() {
        let pw = PlaneWave::z_propagating_x_polarized();
        let setup = canonical_setup(0.0, crate::cr(1.3), crate::cr(1.0));
        assert!(solve(FormulationChoice::DfieE, &pw, &setup).is_ok());
        assert!(solve(FormulationChoice::DfieH, &pw, &setup).is_ok());
        assert!(matches!(
            solve(FormulationChoice::Muller, &pw, &setup),
            Err(SolveError::Formulation(_))
        ));
    }
}
