//! Game pipeline: entangle, send Bob's qubit through the Unruh channel, apply
//! both moves, disentangle and read expected payoffs off the populations.

use serde::{Deserialize, Serialize};

use crate::density::DensityMatrix;
use crate::error::{Error, Result};
use crate::game::{entangler, initial_state, EntanglementParam, NamedStrategy};
use crate::linalg::ComplexMatrix;
use crate::unruh::{unruh_channel, AccelerationParam};

/// Moves whose `max |U^dag U - I|` exceeds this are rejected.
pub const UNITARITY_TOLERANCE: f64 = 1e-9;

/// Classical bimatrix. Each pair is `(alice, bob)`; outcomes are indexed
/// `CC, CD, DC, DD` with Alice's move first.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassicalPayoffTable {
    pub reward_cc: (f64, f64),
    pub sucker_cd: (f64, f64),
    pub temptation_dc: (f64, f64),
    pub punishment_dd: (f64, f64),
}

impl Default for ClassicalPayoffTable {
    fn default() -> Self {
        Self::symmetric(3.0, 0.0, 5.0, 1.0)
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TableOverrides {
    cc: Option<(f64, f64)>,
    cd: Option<(f64, f64)>,
    dc: Option<(f64, f64)>,
    dd: Option<(f64, f64)>,
}

impl ClassicalPayoffTable {
    /// Symmetric game from reward, sucker, temptation and punishment.
    pub fn symmetric(reward: f64, sucker: f64, temptation: f64, punishment: f64) -> Self {
        Self {
            reward_cc: (reward, reward),
            sucker_cd: (sucker, temptation),
            temptation_dc: (temptation, sucker),
            punishment_dd: (punishment, punishment),
        }
    }

    /// Parses `R,S,T,P`.
    pub fn parse_symmetric(s: &str) -> Result<Self> {
        let err = || Error::Parse {
            what: "payoff table R,S,T,P",
            input: s.to_string(),
        };
        let values: Vec<f64> = s
            .split(',')
            .map(|v| v.trim().parse::<f64>().map_err(|_| err()))
            .collect::<Result<_>>()?;
        match values[..] {
            [r, su, t, p] if values.iter().all(|v| v.is_finite()) => Ok(Self::symmetric(r, su, t, p)),
            _ => Err(err()),
        }
    }

    /// Applies overrides from a TOML file of the form
    ///
    /// ```toml
    /// cc = [3, 3]
    /// dc = [5, 0]
    /// ```
    ///
    /// Missing keys keep the value from `self`.
    pub fn with_overrides_toml(self, text: &str) -> Result<Self> {
        let o: TableOverrides = toml::from_str(text).map_err(|e| Error::Config(e.message().to_string()))?;
        let t = Self {
            reward_cc: o.cc.unwrap_or(self.reward_cc),
            sucker_cd: o.cd.unwrap_or(self.sucker_cd),
            temptation_dc: o.dc.unwrap_or(self.temptation_dc),
            punishment_dd: o.dd.unwrap_or(self.punishment_dd),
        };
        if t.alice().iter().chain(t.bob().iter()).any(|v| !v.is_finite()) {
            return Err(Error::Config("payoffs must be finite".into()));
        }
        Ok(t)
    }

    pub fn alice(&self) -> [f64; 4] {
        [self.reward_cc.0, self.sucker_cd.0, self.temptation_dc.0, self.punishment_dd.0]
    }

    pub fn bob(&self) -> [f64; 4] {
        [self.reward_cc.1, self.sucker_cd.1, self.temptation_dc.1, self.punishment_dd.1]
    }

    pub fn min_entry(&self) -> f64 {
        self.alice().into_iter().chain(self.bob()).fold(f64::INFINITY, f64::min)
    }

    pub fn max_entry(&self) -> f64 {
        self.alice().into_iter().chain(self.bob()).fold(f64::NEG_INFINITY, f64::max)
    }

    /// `scale * table + shift` applied to every entry.
    pub fn affine(&self, scale: f64, shift: f64) -> Self {
        let f = |(a, b): (f64, f64)| (scale * a + shift, scale * b + shift);
        Self {
            reward_cc: f(self.reward_cc),
            sucker_cd: f(self.sucker_cd),
            temptation_dc: f(self.temptation_dc),
            punishment_dd: f(self.punishment_dd),
        }
    }
}

/// Expected payoffs of one strategy profile.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct PayoffProfile {
    pub alice: f64,
    pub bob: f64,
}

impl PayoffProfile {
    pub fn new(alice: f64, bob: f64) -> Self {
        Self { alice, bob }
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        (self.alice - other.alice).abs().max((self.bob - other.bob).abs())
    }

    pub fn swapped(&self) -> Self {
        Self::new(self.bob, self.alice)
    }
}

/// Everything fixed before the players move.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GameSetup {
    pub gamma: EntanglementParam,
    pub r: AccelerationParam,
    pub table: ClassicalPayoffTable,
}

impl GameSetup {
    pub fn new(gamma: EntanglementParam, r: AccelerationParam) -> Self {
        Self {
            gamma,
            r,
            table: ClassicalPayoffTable::default(),
        }
    }

    /// Validating constructor from raw angles with the default table.
    pub fn from_angles(gamma: f64, r: f64) -> Result<Self> {
        Ok(Self::new(EntanglementParam::new(gamma)?, AccelerationParam::new(r)?))
    }

    pub fn with_table(mut self, table: ClassicalPayoffTable) -> Self {
        self.table = table;
        self
    }

    /// State shared by the players after entangling and acceleration.
    pub fn shared_state(&self) -> Result<DensityMatrix> {
        unruh_channel(&initial_state(self.gamma), self.r)
    }
}

/// `J^dag (U_A x U_B) rho (U_A x U_B)^dag J`.
pub fn final_density(
    rho: &DensityMatrix,
    alice_move: &ComplexMatrix,
    bob_move: &ComplexMatrix,
    gamma: EntanglementParam,
) -> Result<DensityMatrix> {
    if rho.dim() != 4 {
        return Err(Error::Shape(format!("expected a 4x4 density matrix, got {}", rho.dim())));
    }
    for m in [alice_move, bob_move] {
        if m.rows() != 2 || m.cols() != 2 {
            return Err(Error::Shape(format!("moves must be 2x2, got {}x{}", m.rows(), m.cols())));
        }
        let deviation = m.unitarity_deviation();
        if deviation > UNITARITY_TOLERANCE {
            return Err(Error::NotUnitary { deviation });
        }
    }
    let j = entangler(gamma);
    let u = alice_move.kron(bob_move);
    let outer = &j.adjoint() * &u;
    let out = &(&outer * rho.matrix()) * &outer.adjoint();
    DensityMatrix::new(out)
}

/// Expected payoffs `P = sum_i table(i) rho_ii` over the four joint outcomes.
pub fn payoffs(rho_final: &DensityMatrix, table: &ClassicalPayoffTable) -> PayoffProfile {
    let p = rho_final.populations();
    let dot = |w: [f64; 4]| w.iter().zip(&p).map(|(a, b)| a * b).sum::<f64>();
    PayoffProfile::new(dot(table.alice()), dot(table.bob()))
}

/// Final state for a pair of moves.
pub fn play_state(setup: &GameSetup, alice: &NamedStrategy, bob: &NamedStrategy) -> Result<DensityMatrix> {
    let shared = setup.shared_state()?;
    final_density(&shared, &alice.matrix(), &bob.matrix(), setup.gamma)
}

/// Runs the whole protocol for one strategy profile.
pub fn play(setup: &GameSetup, alice: &NamedStrategy, bob: &NamedStrategy) -> Result<PayoffProfile> {
    Ok(payoffs(&play_state(setup, alice, bob)?, &setup.table))
}

/// Plays against a fixed shared state; used when many profiles share a setup.
pub(crate) fn play_on(
    shared: &DensityMatrix,
    setup: &GameSetup,
    alice: &ComplexMatrix,
    bob: &ComplexMatrix,
) -> Result<PayoffProfile> {
    Ok(payoffs(&final_density(shared, alice, bob, setup.gamma)?, &setup.table))
}

/// One point of a batch evaluation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GamePoint {
    pub setup: GameSetup,
    pub alice: NamedStrategy,
    pub bob: NamedStrategy,
}

/// Evaluates independent points, in parallel when the `parallel` feature is
/// on. Results are in input order either way.
pub fn play_batch(points: &[GamePoint]) -> Vec<Result<PayoffProfile>> {
    let eval = |p: &GamePoint| play(&p.setup, &p.alice, &p.bob);
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        points.par_iter().map(eval).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        points.iter().map(eval).collect()
    }
}

/// Serial reference for [`play_batch`].
pub fn play_batch_serial(points: &[GamePoint]) -> Vec<Result<PayoffProfile>> {
    points.iter().map(|p| play(&p.setup, &p.alice, &p.bob)).collect()
}
