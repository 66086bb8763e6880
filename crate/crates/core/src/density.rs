use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, StateVector};

/// Trace and Hermiticity tolerance for a valid density matrix.
pub const DENSITY_TOLERANCE: f64 = 1e-12;

/// Square Hermitian matrix with unit trace.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix(ComplexMatrix);

impl DensityMatrix {
    pub fn new(m: ComplexMatrix) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::InvalidDensity(format!("{}x{} is not square", m.rows(), m.cols())));
        }
        let herm = m.hermiticity_deviation();
        if herm > DENSITY_TOLERANCE {
            return Err(Error::InvalidDensity(format!("not Hermitian (deviation {herm:e})")));
        }
        let tr = m.trace();
        if (tr.re - 1.0).abs() > DENSITY_TOLERANCE || tr.im.abs() > DENSITY_TOLERANCE {
            return Err(Error::InvalidDensity(format!("trace {tr} is not 1")));
        }
        Ok(Self(m))
    }

    pub fn from_pure(state: &StateVector) -> Result<Self> {
        state.check_normalized()?;
        Ok(Self(state.projector()))
    }

    pub fn dim(&self) -> usize {
        self.0.rows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.0
    }

    /// Real parts of the diagonal, i.e. outcome probabilities.
    pub fn populations(&self) -> Vec<f64> {
        self.0.diag().iter().map(|z| z.re).collect()
    }

    /// `tr(rho^2)`.
    pub fn purity(&self) -> f64 {
        (&self.0 * &self.0).trace().re
    }

    /// Smallest principal minor; non-negative iff the matrix is PSD.
    pub fn min_principal_minor(&self) -> f64 {
        self.0.min_principal_minor().expect("density matrices here are at most 8x8")
    }
}
