//! Pure-strategy equilibrium analysis over finite strategy sets, plus a
//! continuous best-response search over the `(alpha, theta)` move space.

use std::f64::consts::{PI, TAU};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::game::{NamedStrategy, StrategyParams};
use crate::payoff::{play_on, GameSetup, PayoffProfile};

/// Slack on "no profitable deviation" and on dominance comparisons.
pub const EQUILIBRIUM_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Player {
    Alice,
    Bob,
}

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Player::Alice => "alice",
            Player::Bob => "bob",
        })
    }
}

/// Ordered, duplicate-free, nonempty list of moves available to both players.
#[derive(Clone, Debug, PartialEq)]
pub struct StrategySet(Vec<NamedStrategy>);

impl StrategySet {
    pub fn new(strategies: Vec<NamedStrategy>) -> Result<Self> {
        if strategies.is_empty() {
            return Err(Error::StrategySet("set is empty".into()));
        }
        for (i, a) in strategies.iter().enumerate() {
            if strategies[..i].iter().any(|b| b.params() == a.params()) {
                return Err(Error::StrategySet(format!("duplicate strategy {a}")));
            }
        }
        Ok(Self(strategies))
    }

    /// Comma-separated tags, e.g. `C,D,Q,M`.
    pub fn parse(s: &str) -> Result<Self> {
        let items = s
            .split(',')
            .filter(|t| !t.trim().is_empty())
            .map(|t| t.parse::<NamedStrategy>())
            .collect::<Result<Vec<_>>>()?;
        Self::new(items)
    }

    pub fn classical() -> Self {
        Self(vec![NamedStrategy::C, NamedStrategy::D])
    }

    pub fn strategies(&self) -> &[NamedStrategy] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Square table of payoffs; entry `(i, j)` is Alice playing `i`, Bob `j`.
#[derive(Clone, Debug, PartialEq)]
pub struct PayoffTable {
    strategies: Vec<NamedStrategy>,
    entries: Vec<PayoffProfile>,
}

impl PayoffTable {
    pub fn from_entries(strategies: Vec<NamedStrategy>, entries: Vec<PayoffProfile>) -> Result<Self> {
        if strategies.is_empty() || entries.len() != strategies.len() * strategies.len() {
            return Err(Error::Shape(format!(
                "{} entries for {} strategies",
                entries.len(),
                strategies.len()
            )));
        }
        Ok(Self { strategies, entries })
    }

    pub fn size(&self) -> usize {
        self.strategies.len()
    }

    pub fn strategies(&self) -> &[NamedStrategy] {
        &self.strategies
    }

    pub fn get(&self, alice: usize, bob: usize) -> PayoffProfile {
        self.entries[alice * self.size() + bob]
    }

    /// Payoff of `player` when it plays `own` and the other side plays `other`.
    pub fn payoff_of(&self, player: Player, own: usize, other: usize) -> f64 {
        match player {
            Player::Alice => self.get(own, other).alice,
            Player::Bob => self.get(other, own).bob,
        }
    }

    pub fn profiles(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.size();
        (0..n).flat_map(move |i| (0..n).map(move |j| (i, j)))
    }
}

/// Tabulates `play` over every profile of the set.
pub fn payoff_table(setup: &GameSetup, set: &StrategySet) -> Result<PayoffTable> {
    let shared = setup.shared_state()?;
    let mats: Vec<_> = set.0.iter().map(|s| s.matrix()).collect();
    let mut entries = Vec::with_capacity(mats.len() * mats.len());
    for a in &mats {
        for b in &mats {
            entries.push(play_on(&shared, setup, a, b)?);
        }
    }
    PayoffTable::from_entries(set.0.clone(), entries)
}

/// Whether neither player gains more than the tolerance by deviating alone.
pub fn is_nash(table: &PayoffTable, alice: usize, bob: usize) -> bool {
    let here = table.get(alice, bob);
    let n = table.size();
    (0..n).all(|k| table.get(k, bob).alice <= here.alice + EQUILIBRIUM_TOLERANCE)
        && (0..n).all(|k| table.get(alice, k).bob <= here.bob + EQUILIBRIUM_TOLERANCE)
}

/// All pure-strategy Nash profiles `(alice_index, bob_index)`, row-major.
pub fn find_nash(table: &PayoffTable) -> Vec<(usize, usize)> {
    table.profiles().filter(|&(i, j)| is_nash(table, i, j)).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum DominanceKind {
    Strict,
    Weak,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Dominance {
    pub strategy: usize,
    pub kind: DominanceKind,
}

/// A strategy that is a best reply to every opposing choice.
///
/// Strict: beats every alternative by more than the tolerance against every
/// opposing choice. Weak: never worse than any alternative. When several
/// strategies are weakly dominant the first is reported.
pub fn find_dominant(table: &PayoffTable, player: Player) -> Option<Dominance> {
    let n = table.size();
    let beats = |s: usize, strict: bool| {
        (0..n).filter(|&t| t != s).all(|t| {
            (0..n).all(|o| {
                let (mine, theirs) = (table.payoff_of(player, s, o), table.payoff_of(player, t, o));
                if strict {
                    mine > theirs + EQUILIBRIUM_TOLERANCE
                } else {
                    mine >= theirs - EQUILIBRIUM_TOLERANCE
                }
            })
        })
    };
    if let Some(s) = (0..n).find(|&s| beats(s, true)) {
        return Some(Dominance {
            strategy: s,
            kind: DominanceKind::Strict,
        });
    }
    (0..n).find(|&s| beats(s, false)).map(|s| Dominance {
        strategy: s,
        kind: DominanceKind::Weak,
    })
}

/// `q` Pareto-dominates `p`: at least as good for both, better for one.
fn pareto_dominates(q: PayoffProfile, p: PayoffProfile) -> bool {
    let tol = EQUILIBRIUM_TOLERANCE;
    q.alice >= p.alice - tol && q.bob >= p.bob - tol && (q.alice > p.alice + tol || q.bob > p.bob + tol)
}

/// Profiles not Pareto-dominated by any other profile, row-major.
pub fn pareto_front(table: &PayoffTable) -> Vec<(usize, usize)> {
    let all: Vec<_> = table.profiles().collect();
    all.iter()
        .copied()
        .filter(|&(i, j)| {
            let p = table.get(i, j);
            !all.iter().any(|&(k, l)| pareto_dominates(table.get(k, l), p))
        })
        .collect()
}

/// Best replies within the set to one opposing choice.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SetBestResponse {
    pub responder: Player,
    pub opponent: usize,
    pub best: Vec<usize>,
}

pub fn set_best_responses(table: &PayoffTable) -> Vec<SetBestResponse> {
    let n = table.size();
    let mut out = Vec::with_capacity(2 * n);
    for responder in [Player::Alice, Player::Bob] {
        for opponent in 0..n {
            let values: Vec<f64> = (0..n).map(|s| table.payoff_of(responder, s, opponent)).collect();
            let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            let best = (0..n)
                .filter(|&s| values[s] >= max - EQUILIBRIUM_TOLERANCE)
                .collect();
            out.push(SetBestResponse {
                responder,
                opponent,
                best,
            });
        }
    }
    out
}

/// Everything the analyzer knows about one finite game.
#[derive(Clone, Debug)]
pub struct EquilibriumReport {
    pub table: PayoffTable,
    pub nash: Vec<(usize, usize)>,
    pub dominant_alice: Option<Dominance>,
    pub dominant_bob: Option<Dominance>,
    pub pareto: Vec<(usize, usize)>,
    pub best_responses: Vec<SetBestResponse>,
}

pub fn analyze(setup: &GameSetup, set: &StrategySet) -> Result<EquilibriumReport> {
    Ok(analyze_table(payoff_table(setup, set)?))
}

pub fn analyze_table(table: PayoffTable) -> EquilibriumReport {
    EquilibriumReport {
        nash: find_nash(&table),
        dominant_alice: find_dominant(&table, Player::Alice),
        dominant_bob: find_dominant(&table, Player::Bob),
        pareto: pareto_front(&table),
        best_responses: set_best_responses(&table),
        table,
    }
}

/// Result of the continuous search.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BestResponse {
    pub params: StrategyParams,
    pub payoff: f64,
}

/// Smallest refinement step.
pub const REFINE_MIN_STEP: f64 = 1e-6;

/// Relative slack under which two payoffs count as tied.
const TIE_TOLERANCE: f64 = 1e-12;

fn improves(candidate: f64, incumbent: f64) -> bool {
    if incumbent == f64::NEG_INFINITY {
        return candidate > incumbent;
    }
    candidate > incumbent + TIE_TOLERANCE * incumbent.abs().max(1.0)
}

/// Maximizes the responder's payoff over `U(alpha, theta)` against a fixed
/// opponent move.
///
/// Scans an inclusive `grid x grid` lattice on `[0, 2pi] x [0, pi]`, then runs
/// coordinate ascent from the best lattice point, halving the step whenever
/// no neighbour improves, until the step falls below [`REFINE_MIN_STEP`] or
/// `refine` rounds have run. Ties go to the lexicographically smallest
/// `(alpha, theta)`.
pub fn best_response(
    setup: &GameSetup,
    opponent: &NamedStrategy,
    responder: Player,
    grid: usize,
    refine: usize,
) -> Result<BestResponse> {
    if grid < 8 {
        return Err(Error::Domain {
            name: "grid",
            value: grid as f64,
            min: 8.0,
            max: f64::INFINITY,
        });
    }
    let shared = setup.shared_state()?;
    let opp = opponent.matrix();
    let eval = |alpha: f64, theta: f64| -> Result<f64> {
        let own = StrategyParams::new(alpha, theta)?.matrix();
        let p = match responder {
            Player::Alice => play_on(&shared, setup, &own, &opp)?,
            Player::Bob => play_on(&shared, setup, &opp, &own)?,
        };
        Ok(match responder {
            Player::Alice => p.alice,
            Player::Bob => p.bob,
        })
    };

    let alpha_at = |i: usize| if i + 1 == grid { TAU } else { TAU * i as f64 / (grid - 1) as f64 };
    let theta_at = |j: usize| if j + 1 == grid { PI } else { PI * j as f64 / (grid - 1) as f64 };
    let points: Vec<(f64, f64)> = (0..grid)
        .flat_map(|i| (0..grid).map(move |j| (alpha_at(i), theta_at(j))))
        .collect();

    #[cfg(feature = "parallel")]
    let values: Vec<Result<f64>> = {
        use rayon::prelude::*;
        points.par_iter().map(|&(a, t)| eval(a, t)).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let values: Vec<Result<f64>> = points.iter().map(|&(a, t)| eval(a, t)).collect();

    // Lattice order is already lexicographic, so keeping the first of any
    // tie gives the smallest (alpha, theta).
    let mut best = (points[0], f64::NEG_INFINITY);
    for (&pt, v) in points.iter().zip(values) {
        let v = v?;
        if improves(v, best.1) {
            best = (pt, v);
        }
    }

    let (mut step_a, mut step_t) = (TAU / (grid - 1) as f64, PI / (grid - 1) as f64);
    let ((mut alpha, mut theta), mut value) = best;
    for _ in 0..refine {
        if step_a.max(step_t) < REFINE_MIN_STEP {
            break;
        }
        let neighbours = [
            ((alpha - step_a).max(0.0), theta),
            ((alpha + step_a).min(TAU), theta),
            (alpha, (theta - step_t).max(0.0)),
            (alpha, (theta + step_t).min(PI)),
        ];
        let mut moved: Option<((f64, f64), f64)> = None;
        for (a, t) in neighbours {
            if (a, t) == (alpha, theta) {
                continue;
            }
            let v = eval(a, t)?;
            if !improves(v, value) {
                continue;
            }
            let replace = match moved {
                None => true,
                Some((pt, mv)) => improves(v, mv) || (!improves(mv, v) && (a, t) < pt),
            };
            if replace {
                moved = Some(((a, t), v));
            }
        }
        match moved {
            Some(((a, t), v)) => {
                alpha = a;
                theta = t;
                value = v;
            }
            None => {
                step_a /= 2.0;
                step_t /= 2.0;
            }
        }
    }

    Ok(BestResponse {
        params: StrategyParams::new(alpha, theta)?,
        payoff: value,
    })
}
