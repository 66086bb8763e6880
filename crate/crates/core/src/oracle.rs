//! Closed-form payoffs used to check the engine.
//!
//! These are direct formula transcriptions in terms of the acceleration
//! parameter and never touch the state or operator code, so agreement with
//! [`crate::payoff::play`] is an independent check.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::game::NamedStrategy;
use crate::payoff::PayoffProfile;
use crate::unruh::AccelerationParam;

/// Profile of classical moves, Alice first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ClassicalProfile {
    CC,
    CD,
    DC,
    DD,
}

impl ClassicalProfile {
    pub const ALL: [ClassicalProfile; 4] = [Self::CC, Self::CD, Self::DC, Self::DD];

    pub fn moves(self) -> (NamedStrategy, NamedStrategy) {
        use NamedStrategy::{C, D};
        match self {
            Self::CC => (C, C),
            Self::CD => (C, D),
            Self::DC => (D, C),
            Self::DD => (D, D),
        }
    }
}

impl fmt::Display for ClassicalProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Self::CC => "CC",
            Self::CD => "CD",
            Self::DC => "DC",
            Self::DD => "DD",
        };
        f.write_str(s)
    }
}

impl FromStr for ClassicalProfile {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s.trim().to_ascii_uppercase().as_str() {
            "CC" => Ok(Self::CC),
            "CD" => Ok(Self::CD),
            "DC" => Ok(Self::DC),
            "DD" => Ok(Self::DD),
            _ => Err(Error::Parse {
                what: "classical profile",
                input: s.to_string(),
            }),
        }
    }
}

/// Unentangled start (`gamma = 0`), classical moves.
pub fn unentangled(r: AccelerationParam, profile: ClassicalProfile) -> PayoffProfile {
    let r = r.value();
    let (s2, c2) = (r.sin().powi(2), r.cos().powi(2));
    let cos2r = (2.0 * r).cos();
    match profile {
        ClassicalProfile::CC => PayoffProfile::new(3.0 * c2, 4.0 - cos2r),
        ClassicalProfile::CD => PayoffProfile::new(3.0 * s2, 4.0 + cos2r),
        ClassicalProfile::DC => PayoffProfile::new(3.0 + 2.0 * cos2r, s2),
        ClassicalProfile::DD => PayoffProfile::new(3.0 - 2.0 * cos2r, c2),
    }
}

/// Maximally entangled start (`gamma = pi/2`), classical moves.
pub fn maximally_entangled(r: AccelerationParam, profile: ClassicalProfile) -> PayoffProfile {
    let r = r.value();
    let (sr, cr) = r.sin_cos();
    let (sh, ch) = (r / 2.0).sin_cos();
    let cooperate = 1.0 + cr + cr * cr + 1.25 * sr * sr;
    let defect = (17.0 - 8.0 * cr - (2.0 * r).cos()) / 8.0;
    let sucker_side = 0.5 * ch * ch * (9.0 + cr);
    let other_side = 0.5 * (9.0 - cr) * sh * sh;
    match profile {
        ClassicalProfile::CC => PayoffProfile::new(cooperate, cooperate),
        ClassicalProfile::DD => PayoffProfile::new(defect, defect),
        ClassicalProfile::CD => PayoffProfile::new(sucker_side, other_side),
        ClassicalProfile::DC => PayoffProfile::new(other_side, sucker_side),
    }
}

/// Maximal entanglement, Alice plays `Q = diag(i, -i)` and Bob plays
/// `U(alpha_b, theta_b)`.
pub fn quantum_vs_move(r: AccelerationParam, alpha_b: f64, theta_b: f64) -> PayoffProfile {
    let cr = r.value().cos();
    let ct = theta_b.cos();
    let phase = 2.0 * (2.0 * alpha_b).cos() * (ct + 1.0);
    let alice = 0.25 * (9.0 - cr * ((cr - 5.0) * ct + phase + 5.0));
    let bob = 0.25 * (9.0 - cr * ((cr + 5.0) * ct + phase - 5.0));
    PayoffProfile::new(alice, bob)
}

/// Maximal entanglement, Alice plays the miracle move `M` and Bob plays
/// `U(0, theta_b)`.
pub fn miracle_vs_classical(r: AccelerationParam, theta_b: f64) -> PayoffProfile {
    let cr = r.value().cos();
    let st = theta_b.sin();
    let alice = 0.25 * (-3.0 * cr * cr * st + cr * (st - 7.0) + 9.0);
    let bob = 0.25 * (7.0 * cr * cr * st + cr * (st + 3.0) + 9.0);
    PayoffProfile::new(alice, bob)
}
