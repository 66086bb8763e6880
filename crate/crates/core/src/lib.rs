//! Quantum Prisoners' Dilemma between an inertial and a uniformly
//! accelerated player.
//!
//! The game follows the Eisert-Wilkens-Lewenstein quantization: the players
//! share `J|00>`, each applies a local unitary move, `J^dag` disentangles and
//! the computational-basis populations weight the classical payoff table.
//! Before the moves, Bob's qubit goes through the single-mode Unruh channel,
//! which mixes it with an inaccessible Rindler mode.
//!
//! ```
//! use qpd_core::{play, GameSetup, NamedStrategy};
//!
//! let setup = GameSetup::from_angles(std::f64::consts::FRAC_PI_2, 0.0).unwrap();
//! let p = play(&setup, &NamedStrategy::C, &NamedStrategy::C).unwrap();
//! assert!((p.alice - 3.0).abs() < 1e-12);
//! ```

pub mod density;
pub mod equilibrium;
pub mod error;
pub mod game;
pub mod linalg;
pub mod oracle;
pub mod payoff;
pub mod sweep;
pub mod unruh;
pub mod verify;

pub use density::DensityMatrix;
pub use equilibrium::{
    analyze, best_response, find_dominant, find_nash, pareto_front, payoff_table, BestResponse, Dominance,
    DominanceKind, EquilibriumReport, PayoffTable, Player, StrategySet,
};
pub use error::{Error, Result};
pub use game::{entangler, initial_state, parse_angle, EntanglementParam, NamedStrategy, StrategyParams};
pub use linalg::{ComplexMatrix, StateVector};
pub use payoff::{final_density, payoffs, play, ClassicalPayoffTable, GameSetup, PayoffProfile};
pub use unruh::{expand_bob_mode, r_from_acceleration, unruh_channel, AccelerationParam, PhysicalAcceleration};
