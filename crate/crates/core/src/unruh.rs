//! Single-mode Unruh channel acting on Bob's qubit.
//!
//! Bob's Minkowski mode is rewritten in terms of the Rindler modes of the two
//! causally disconnected regions,
//!
//! ```text
//! |0>_B -> cos r |0>_I |0>_II + sin r |1>_I |1>_II
//! |1>_B -> |1>_I |0>_II
//! ```
//!
//! and region II is traced out. The Bogoliubov phase is absorbed into the
//! mode operators and set to zero. Alice stays inertial and her qubit is left
//! alone. Three-party states are ordered `A x I x II` with region II least
//! significant.

use std::f64::consts::{FRAC_PI_4, PI};

use serde::{Deserialize, Serialize};

use crate::density::DensityMatrix;
use crate::error::{Error, Result};
use crate::game::check_range;
use crate::linalg::{c, partial_trace, StateVector, ZERO};

/// Dimensionless acceleration parameter `r` in `[0, pi/4]`.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd, Serialize, Deserialize)]
pub struct AccelerationParam(f64);

impl AccelerationParam {
    pub const INERTIAL: AccelerationParam = AccelerationParam(0.0);
    pub const INFINITE: AccelerationParam = AccelerationParam(FRAC_PI_4);

    pub fn new(r: f64) -> Result<Self> {
        check_range("r", r, 0.0, FRAC_PI_4).map(Self)
    }

    pub fn value(&self) -> f64 {
        self.0
    }
}

/// Mode frequency, proper acceleration and speed of light.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PhysicalAcceleration {
    pub omega: f64,
    pub a: f64,
    pub c: f64,
}

impl PhysicalAcceleration {
    pub fn new(omega: f64, a: f64, c: f64) -> Result<Self> {
        for (name, value) in [("omega", omega), ("a", a), ("c", c)] {
            if !(value.is_finite() && value > 0.0) {
                return Err(Error::NotPositive { name, value });
            }
        }
        Ok(Self { omega, a, c })
    }
}

/// `cos r = (exp(-2 pi omega c / a) + 1)^(-1/2)`.
///
/// Evaluated as `r = atan(exp(-pi omega c / a))`, the same angle, which stays
/// accurate at both ends of the range.
pub fn r_from_acceleration(p: &PhysicalAcceleration) -> Result<AccelerationParam> {
    let p = PhysicalAcceleration::new(p.omega, p.a, p.c)?;
    let r = (-PI * p.omega * p.c / p.a).exp().atan();
    Ok(AccelerationParam(r.clamp(0.0, FRAC_PI_4)))
}

/// Rewrites Bob's qubit of a normalized two-qubit state in Rindler modes,
/// producing an 8-dimensional state on `A x I x II`.
pub fn expand_bob_mode(state: &StateVector, r: AccelerationParam) -> Result<StateVector> {
    if state.dim() != 4 {
        return Err(Error::Shape(format!(
            "expected a two-qubit state, got dimension {}",
            state.dim()
        )));
    }
    state.check_normalized()?;
    let (sin_r, cos_r) = r.0.sin_cos();
    let amps = state.amplitudes();
    let mut out = vec![ZERO; 8];
    for alice in 0..2 {
        let vacuum = amps[2 * alice];
        let excited = amps[2 * alice + 1];
        // |a>|0>_B -> cos r |a,0,0> + sin r |a,1,1>
        out[4 * alice] += vacuum * c(cos_r, 0.0);
        out[4 * alice + 3] += vacuum * c(sin_r, 0.0);
        // |a>|1>_B -> |a,1,0>
        out[4 * alice + 2] += excited;
    }
    StateVector::normalized(out)
}

/// Bob's mode through the Unruh channel: expand into Rindler modes and trace
/// out region II.
pub fn unruh_channel(state: &StateVector, r: AccelerationParam) -> Result<DensityMatrix> {
    let expanded = expand_bob_mode(state, r)?;
    let reduced = partial_trace(&expanded.projector(), &[2, 2, 2], 2)?;
    DensityMatrix::new(reduced)
}
