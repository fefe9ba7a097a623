//! Material parameters, passivity validation and wavenumber branch.

use core::fmt;
use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

/// Relative permittivity/permeability pair of one region.
///
/// A medium is accepted when both parameters are passive:
/// Im > 0, or exactly real and positive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Medium {
    pub epsilon: Complex64,
    pub mu: Complex64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum MediaError {
    /// Passivity violated; carries the offending parameter name.
    InvalidMaterial(&'static str),
    NonFiniteOmega,
    NegativeOmega,
}

impl fmt::Display for MediaError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MediaError::InvalidMaterial(p) => write!(f, "material parameter {p} is not passive"),
            MediaError::NonFiniteOmega => write!(f, "omega must be finite"),
            MediaError::NegativeOmega => write!(f, "omega must be >= 0"),
        }
    }
}

fn passive(c: Complex64) -> bool {
    c.im > 0.0 || (c.im == 0.0 && c.re > 0.0)
}

impl Medium {
    pub fn new(epsilon: Complex64, mu: Complex64) -> Result<Self, MediaError> {
        let m = Medium { epsilon, mu };
        m.check("epsilon", "mu")?;
        Ok(m)
    }

    /// Vacuum; the usual normalized exterior.
    pub fn vacuum() -> Self {
        Medium {
            epsilon: Complex64::new(1.0, 0.0),
            mu: Complex64::new(1.0, 0.0),
        }
    }

    fn check(&self, eps_name: &'static str, mu_name: &'static str) -> Result<(), MediaError> {
        if !self.epsilon.re.is_finite() || !self.epsilon.im.is_finite() || !passive(self.epsilon) {
            return Err(MediaError::InvalidMaterial(eps_name));
        }
        if !self.mu.re.is_finite() || !self.mu.im.is_finite() || !passive(self.mu) {
            return Err(MediaError::InvalidMaterial(mu_name));
        }
        Ok(())
    }

    /// The medium with epsilon and mu interchanged (used by the magnetic
    /// transmission problem, which is the dual of the electric one).
    pub fn swapped(&self) -> Self {
        Medium {
            epsilon: self.mu,
            mu: self.epsilon,
        }
    }

    /// sqrt(eps*mu) on the branch with nonnegative imaginary part.
    pub fn refractive_index(&self) -> Complex64 {
        let mut z = (self.epsilon * self.mu).sqrt();
        if z.im < 0.0 {
            z = -z;
        }
        z
    }
}

/// k = omega sqrt(eps mu), principal square root negated into the closed
/// upper half-plane; exactly 0 for omega = 0.
pub fn wavenumber(omega: f64, m: &Medium) -> Complex64 {
    if omega == 0.0 {
        Complex64::new(0.0, 0.0)
    } else {
        omega * m.refractive_index()
    }
}

/// Scattering problem description shared by every formulation: the scatterer
/// is the unit sphere (scaling by radius is the caller's job, through omega).
#[derive(Debug, Clone, PartialEq)]
pub struct ProblemSetup {
    pub omega: f64,
    pub exterior: Medium,
    pub interior: Medium,
    pub n_max: usize,
    k0: Complex64,
    k: Complex64,
}

impl ProblemSetup {
    /// Validate media and omega, and apply the default truncation rule
    /// n_max = max(4, ceil(omega * max |sqrt(eps mu)|) + 12).
    pub fn new(omega: f64, exterior: Medium, interior: Medium) -> Result<Self, MediaError> {
        if !omega.is_finite() {
            return Err(MediaError::NonFiniteOmega);
        }
        if omega < 0.0 {
            return Err(MediaError::NegativeOmega);
        }
        exterior.check("epsilon0", "mu0")?;
        interior.check("epsilon", "mu")?;
        let reach = omega
            * exterior
                .refractive_index()
                .norm()
                .max(interior.refractive_index().norm());
        let n_max = (reach.ceil() as usize + 12).max(4);
        Ok(ProblemSetup {
            omega,
            exterior,
            interior,
            n_max,
            k0: wavenumber(omega, &exterior),
            k: wavenumber(omega, &interior),
        })
    }

    /// Override the truncation degree.
    pub fn with_n_max(mut self, n_max: usize) -> Self {
        self.n_max = n_max;
        self
    }

    pub fn k0(&self) -> Complex64 {
        self.k0
    }

    pub fn k(&self) -> Complex64 {
        self.k
    }

    /// Same problem with eps and mu interchanged in both regions; the
    /// magnetic transmission problem is the electric one of this setup.
    pub fn swapped(&self) -> Self {
        ProblemSetup {
            omega: self.omega,
            exterior: self.exterior.swapped(),
            interior: self.interior.swapped(),
            n_max: self.n_max,
            k0: self.k0,
            k: self.k,
        }
    }

    pub fn zero_contrast(&self) -> bool {
        self.exterior == self.interior
    }
}
