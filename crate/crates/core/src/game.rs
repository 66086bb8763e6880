//! Strategy space and entangled initial state of the quantized game.

use std::f64::consts::{FRAC_PI_2, PI, TAU};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{c, ComplexMatrix, StateVector, I, ZERO};

/// Inputs this close outside an angle interval are clamped onto it, so that
/// rounded command-line values such as `0.7853982` for pi/4 are accepted.
pub const DOMAIN_SLACK: f64 = 1e-6;

pub(crate) fn check_range(name: &'static str, value: f64, min: f64, max: f64) -> Result<f64> {
    if !value.is_finite() || value < min - DOMAIN_SLACK || value > max + DOMAIN_SLACK {
        return Err(Error::Domain { name, value, min, max });
    }
    Ok(value.clamp(min, max))
}

/// One player's move `U(alpha, theta)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct StrategyParams {
    alpha: f64,
    theta: f64,
}

impl StrategyParams {
    /// `alpha` in `[0, 2pi]`, `theta` in `[0, pi]`.
    pub fn new(alpha: f64, theta: f64) -> Result<Self> {
        Ok(Self {
            alpha: check_range("alpha", alpha, 0.0, TAU)?,
            theta: check_range("theta", theta, 0.0, PI)?,
        })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    /// `[[e^{ia} cos(t/2), i sin(t/2)], [i sin(t/2), e^{-ia} cos(t/2)]]`
    pub fn matrix(&self) -> ComplexMatrix {
        strategy_matrix(self)
    }
}

pub fn strategy_matrix(s: &StrategyParams) -> ComplexMatrix {
    let (sin_h, cos_h) = (s.theta / 2.0).sin_cos();
    let phase = c(0.0, s.alpha).exp();
    ComplexMatrix::from_rows([
        [phase * cos_h, c(0.0, sin_h)],
        [c(0.0, sin_h), phase.conj() * cos_h],
    ])
}

/// The named moves plus arbitrary parameter pairs.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum NamedStrategy {
    /// Cooperate, `U(0, 0)`.
    C,
    /// Defect, `U(0, pi)`.
    D,
    /// The quantum move `diag(i, -i)`.
    Q,
    /// The miracle move `U(pi/2, pi/2)`.
    M,
    Custom(StrategyParams),
}

impl NamedStrategy {
    pub const CLASSICAL: [NamedStrategy; 2] = [NamedStrategy::C, NamedStrategy::D];

    /// Parameter pair producing this move. `Q` maps to `(pi/2, 0)`, the pair
    /// that actually yields `diag(i, -i)`.
    pub fn params(&self) -> StrategyParams {
        match *self {
            NamedStrategy::C => StrategyParams { alpha: 0.0, theta: 0.0 },
            NamedStrategy::D => StrategyParams { alpha: 0.0, theta: PI },
            NamedStrategy::Q => StrategyParams {
                alpha: FRAC_PI_2,
                theta: 0.0,
            },
            NamedStrategy::M => StrategyParams {
                alpha: FRAC_PI_2,
                theta: FRAC_PI_2,
            },
            NamedStrategy::Custom(p) => p,
        }
    }

    pub fn matrix(&self) -> ComplexMatrix {
        named_strategy_matrix(self)
    }

    pub fn is_classical(&self) -> bool {
        matches!(self, NamedStrategy::C | NamedStrategy::D)
    }
}

pub fn named_strategy_matrix(n: &NamedStrategy) -> ComplexMatrix {
    match n {
        NamedStrategy::Q => ComplexMatrix::diagonal(&[I, -I]),
        other => strategy_matrix(&other.params()),
    }
}

impl fmt::Display for NamedStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NamedStrategy::C => f.write_str("C"),
            NamedStrategy::D => f.write_str("D"),
            NamedStrategy::Q => f.write_str("Q"),
            NamedStrategy::M => f.write_str("M"),
            NamedStrategy::Custom(p) => write!(f, "{},{}", p.alpha, p.theta),
        }
    }
}

impl FromStr for NamedStrategy {
    type Err = Error;

    /// `C`, `D`, `Q`, `M` (any case) or `alpha,theta` with angles as accepted
    /// by [`parse_angle`].
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        match t.to_ascii_uppercase().as_str() {
            "C" => return Ok(NamedStrategy::C),
            "D" => return Ok(NamedStrategy::D),
            "Q" => return Ok(NamedStrategy::Q),
            "M" => return Ok(NamedStrategy::M),
            _ => {}
        }
        let parse_err = || Error::Parse {
            what: "strategy",
            input: s.to_string(),
        };
        let (a, th) = t.split_once(',').ok_or_else(parse_err)?;
        let alpha = parse_angle(a).map_err(|_| parse_err())?;
        let theta = parse_angle(th).map_err(|_| parse_err())?;
        Ok(NamedStrategy::Custom(StrategyParams::new(alpha, theta)?))
    }
}

/// Parses an angle in radians: a plain number, or a multiple/fraction of pi
/// such as `pi`, `pi/4`, `3pi/4`, `2*pi`, `-pi/8`.
pub fn parse_angle(s: &str) -> Result<f64> {
    let err = || Error::Parse {
        what: "angle",
        input: s.to_string(),
    };
    let t = s.trim().to_ascii_lowercase();
    if t.is_empty() {
        return Err(err());
    }
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (t.as_str(), None),
    };
    let numerator = if let Some(coef) = num.strip_suffix("pi") {
        let coef = coef.trim().trim_end_matches('*').trim();
        let k = match coef {
            "" | "+" => 1.0,
            "-" => -1.0,
            _ => coef.parse::<f64>().map_err(|_| err())?,
        };
        k * PI
    } else {
        num.parse::<f64>().map_err(|_| err())?
    };
    let value = match den {
        Some(d) => {
            let d: f64 = d.parse().map_err(|_| err())?;
            if d == 0.0 {
                return Err(err());
            }
            numerator / d
        }
        None => numerator,
    };
    if !value.is_finite() {
        return Err(err());
    }
    Ok(value)
}

/// Degree of initial entanglement `gamma` in `[0, pi/2]`.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd, Serialize, Deserialize)]
pub struct EntanglementParam(f64);

impl EntanglementParam {
    pub const UNENTANGLED: EntanglementParam = EntanglementParam(0.0);
    pub const MAXIMAL: EntanglementParam = EntanglementParam(FRAC_PI_2);

    pub fn new(gamma: f64) -> Result<Self> {
        check_range("gamma", gamma, 0.0, FRAC_PI_2).map(Self)
    }

    pub fn value(&self) -> f64 {
        self.0
    }
}

fn d1_kron_d1() -> ComplexMatrix {
    let d1 = ComplexMatrix::from_real([[0.0, 1.0], [-1.0, 0.0]]);
    d1.kron(&d1)
}

/// Generator `D1 x D1` of the entangling operator.
pub fn entangler_generator() -> ComplexMatrix {
    d1_kron_d1()
}

/// `J = exp(i gamma/2 D1 x D1) = cos(gamma/2) I + i sin(gamma/2) D1 x D1`,
/// using that the generator squares to the identity.
pub fn entangler(g: EntanglementParam) -> ComplexMatrix {
    let (s, co) = (g.0 / 2.0).sin_cos();
    &ComplexMatrix::identity(4).scale(c(co, 0.0)) + &d1_kron_d1().scale(c(0.0, s))
}

/// `J|00> = cos(gamma/2)|00> + i sin(gamma/2)|11>`.
pub fn initial_state(g: EntanglementParam) -> StateVector {
    let (s, co) = (g.0 / 2.0).sin_cos();
    StateVector::new(vec![c(co, 0.0), ZERO, ZERO, c(0.0, s)]).expect("finite amplitudes")
}

/// `max |[J, U x V]|` for a pair of moves.
pub fn commutator_norm(g: EntanglementParam, u: &NamedStrategy, v: &NamedStrategy) -> f64 {
    let uv = u.matrix().kron(&v.matrix());
    entangler(g)
        .commutator(&uv)
        .expect("4x4 operators")
        .max_abs()
}
