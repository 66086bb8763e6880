//! Browser bindings for the payoff engine.
//!
//! The `*_impl` functions are plain Rust so they can be tested natively; the
//! `#[wasm_bindgen]` wrappers only convert errors into JS exceptions.

use std::f64::consts::PI;

use qpd_core::equilibrium::{best_response, Player};
use qpd_core::sweep::r_grid;
use qpd_core::{play, AccelerationParam, GameSetup, NamedStrategy, StrategyParams};
use wasm_bindgen::prelude::*;

/// Number of values per row returned by [`payoff_curves`].
pub const CURVE_STRIDE: usize = 5;

fn setup(gamma: f64, r: f64) -> Result<GameSetup, String> {
    GameSetup::from_angles(gamma, r).map_err(|e| e.to_string())
}

fn custom(alpha: f64, theta: f64) -> Result<NamedStrategy, String> {
    StrategyParams::new(alpha, theta)
        .map(NamedStrategy::Custom)
        .map_err(|e| e.to_string())
}

/// Rows of `r, P_CC, P_DD, alice(C,D), alice(D,C)` over `[0, pi/4]`, flattened.
pub fn payoff_curves_impl(gamma: f64, steps: usize) -> Result<Vec<f64>, String> {
    let grid = r_grid(AccelerationParam::INERTIAL, AccelerationParam::INFINITE, steps).map_err(|e| e.to_string())?;
    let (c, d) = (NamedStrategy::C, NamedStrategy::D);
    let mut out = Vec::with_capacity(grid.len() * CURVE_STRIDE);
    for r in grid {
        let s = setup(gamma, r.value())?;
        let p = |a: &NamedStrategy, b: &NamedStrategy| play(&s, a, b).map_err(|e| e.to_string());
        out.extend([r.value(), p(&c, &c)?.alice, p(&d, &d)?.alice, p(&c, &d)?.alice, p(&d, &c)?.alice]);
    }
    Ok(out)
}

/// `[alice, bob]` payoffs for two custom moves.
pub fn play_custom_impl(gamma: f64, r: f64, alice: [f64; 2], bob: [f64; 2]) -> Result<Vec<f64>, String> {
    let p = play(&setup(gamma, r)?, &custom(alice[0], alice[1])?, &custom(bob[0], bob[1])?)
        .map_err(|e| e.to_string())?;
    Ok(vec![p.alice, p.bob])
}

/// Alice's payoff on an `n x n` lattice over `alpha in [0, 2pi]` (columns)
/// and `theta in [0, pi]` (rows) against a fixed Bob move, row-major.
pub fn landscape_impl(gamma: f64, r: f64, bob: [f64; 2], n: usize) -> Result<Vec<f64>, String> {
    if n < 2 {
        return Err(format!("landscape needs at least 2 points per axis, got {n}"));
    }
    let s = setup(gamma, r)?;
    let opponent = custom(bob[0], bob[1])?;
    let step = |k: usize, span: f64| if k == n - 1 { span } else { span * k as f64 / (n - 1) as f64 };
    let mut out = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let mine = custom(step(j, 2.0 * PI), step(i, PI))?;
            out.push(play(&s, &mine, &opponent).map_err(|e| e.to_string())?.alice);
        }
    }
    Ok(out)
}

/// Alice's best reply to a fixed Bob move as `[alpha, theta, payoff]`.
pub fn best_reply_impl(gamma: f64, r: f64, bob: [f64; 2]) -> Result<Vec<f64>, String> {
    let br = best_response(&setup(gamma, r)?, &custom(bob[0], bob[1])?, Player::Alice, 24, 60)
        .map_err(|e| e.to_string())?;
    Ok(vec![br.params.alpha(), br.params.theta(), br.payoff])
}

fn js<T>(r: Result<T, String>) -> Result<T, JsError> {
    r.map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn payoff_curves(gamma: f64, steps: usize) -> Result<Vec<f64>, JsError> {
    js(payoff_curves_impl(gamma, steps))
}

#[wasm_bindgen]
pub fn play_custom(gamma: f64, r: f64, a_alpha: f64, a_theta: f64, b_alpha: f64, b_theta: f64) -> Result<Vec<f64>, JsError> {
    js(play_custom_impl(gamma, r, [a_alpha, a_theta], [b_alpha, b_theta]))
}

#[wasm_bindgen]
pub fn landscape(gamma: f64, r: f64, b_alpha: f64, b_theta: f64, n: usize) -> Result<Vec<f64>, JsError> {
    js(landscape_impl(gamma, r, [b_alpha, b_theta], n))
}

#[wasm_bindgen]
pub fn best_reply(gamma: f64, r: f64, b_alpha: f64, b_theta: f64) -> Result<Vec<f64>, JsError> {
    js(best_reply_impl(gamma, r, [b_alpha, b_theta]))
}
