//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any failure.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI, SQRT_2};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use qpd_core::equilibrium::{find_dominant, find_nash, is_nash, payoff_table, DominanceKind, Player, PayoffTable, StrategySet};
use qpd_core::linalg::{c, ComplexMatrix, ZERO};
use qpd_core::oracle::{self, ClassicalProfile};
use qpd_core::{
    initial_state, play, unruh_channel, AccelerationParam, DensityMatrix, EntanglementParam, GameSetup, NamedStrategy,
    PayoffProfile, StrategyParams,
};

const TOL: f64 = 1e-12;
const TIME_LIMIT: Duration = Duration::from_secs(1);

type Check = Result<String, String>;
type Criterion = (&'static str, &'static str, fn() -> Check);

fn r_grid() -> Vec<f64> {
    [0.0, PI / 16.0, PI / 12.0, PI / 8.0, PI / 6.0, PI / 5.0, PI / 4.5, PI / 4.2, PI / 4.0].to_vec()
}

fn accel(r: f64) -> AccelerationParam {
    AccelerationParam::new(r).expect("grid r in range")
}

fn engine(gamma: EntanglementParam, r: f64, a: &NamedStrategy, b: &NamedStrategy) -> PayoffProfile {
    play(&GameSetup::new(gamma, accel(r)), a, b).expect("engine play")
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn timed(f: impl FnOnce() -> Check) -> Check {
    let start = Instant::now();
    let detail = f()?;
    let elapsed = start.elapsed();
    ensure(elapsed < TIME_LIMIT, || format!("took {elapsed:?}"))?;
    Ok(format!("{detail}, {elapsed:.2?}"))
}

fn classical_reproduction(gamma: EntanglementParam, closed: fn(AccelerationParam, ClassicalProfile) -> PayoffProfile) -> Result<f64, String> {
    let mut worst = 0.0f64;
    for r in r_grid() {
        for profile in ClassicalProfile::ALL {
            let (a, b) = profile.moves();
            let err = engine(gamma, r, &a, &b).max_abs_diff(&closed(accel(r), profile));
            ensure(err <= TOL, || format!("{profile} at r={r}: error {err:e}"))?;
            worst = worst.max(err);
        }
    }
    Ok(worst)
}

fn ac1() -> Check {
    timed(|| {
        let worst = classical_reproduction(EntanglementParam::UNENTANGLED, oracle::unentangled)?;
        Ok(format!("unentangled classical profiles, max error {worst:.1e}"))
    })
}

fn ac2() -> Check {
    let worst = classical_reproduction(EntanglementParam::MAXIMAL, oracle::maximally_entangled)?;
    let expected = [
        (ClassicalProfile::CC, (3.0, 3.0)),
        (ClassicalProfile::DD, (1.0, 1.0)),
        // Mixed classical pairs do not commute with the entangler, so the roles swap.
        (ClassicalProfile::CD, (5.0, 0.0)),
        (ClassicalProfile::DC, (0.0, 5.0)),
    ];
    for (profile, (pa, pb)) in expected {
        let (a, b) = profile.moves();
        let err = engine(EntanglementParam::MAXIMAL, 0.0, &a, &b).max_abs_diff(&PayoffProfile::new(pa, pb));
        ensure(err <= TOL, || format!("{profile} at r=0: error {err:e}"))?;
    }
    Ok(format!("maximally entangled classical profiles, max error {worst:.1e}, r=0 values (3,3) (1,1) (5,0) (0,5)"))
}

fn ac3() -> Check {
    let n = 401;
    let values: Vec<f64> = (0..n)
        .map(|k| {
            let r = if k == n - 1 { FRAC_PI_4 } else { FRAC_PI_4 * k as f64 / (n - 1) as f64 };
            engine(EntanglementParam::MAXIMAL, r, &NamedStrategy::C, &NamedStrategy::C).alice
        })
        .collect();
    for (k, w) in values.windows(2).enumerate() {
        ensure(w[1] < w[0], || format!("not decreasing at step {k}: {} -> {}", w[0], w[1]))?;
    }
    let min = values.iter().copied().fold(f64::INFINITY, f64::min);
    ensure(min >= 2.83, || format!("minimum {min} below 2.83"))?;
    let end = values[n - 1];
    let want = 1.0 + SQRT_2 / 2.0 + 0.5 + 0.625;
    ensure((end - want).abs() <= TOL, || format!("value at pi/4 {end}, want {want}"))?;
    Ok(format!("cooperation payoff strictly decreasing over {n} points, min {min:.6}, end {end:.15}"))
}

fn ac4() -> Check {
    let mut worst = 0.0f64;
    let mut points = 0;
    for r in r_grid() {
        for alpha in [0.0, FRAC_PI_4] {
            for theta in [0.0, FRAC_PI_2, PI] {
                let bob = NamedStrategy::Custom(StrategyParams::new(alpha, theta).map_err(|e| e.to_string())?);
                let got = engine(EntanglementParam::MAXIMAL, r, &NamedStrategy::Q, &bob);
                let err = got.max_abs_diff(&oracle::quantum_vs_move(accel(r), alpha, theta));
                ensure(err <= TOL, || format!("Q vs ({alpha},{theta}) at r={r}: error {err:e}"))?;
                worst = worst.max(err);
                points += 1;
            }
        }
        let qd = engine(EntanglementParam::MAXIMAL, r, &NamedStrategy::Q, &NamedStrategy::D).bob;
        let cd = engine(EntanglementParam::MAXIMAL, r, &NamedStrategy::C, &NamedStrategy::D).alice;
        ensure((qd - cd).abs() <= TOL, || format!("Bob(Q,D) {qd} != Alice(C,D) {cd} at r={r}"))?;
    }
    Ok(format!("{points} quantum-move points, max error {worst:.1e}; Bob(Q,D) = Alice(C,D) on grid"))
}

fn ac5() -> Check {
    let mut worst = 0.0f64;
    for r in r_grid() {
        for (bob, theta) in [(NamedStrategy::C, 0.0), (NamedStrategy::D, PI)] {
            let got = engine(EntanglementParam::MAXIMAL, r, &NamedStrategy::M, &bob);
            let err = got.max_abs_diff(&oracle::miracle_vs_classical(accel(r), theta));
            ensure(err <= TOL, || format!("M vs {bob} at r={r}: error {err:e}"))?;
            ensure(got.alice < got.bob, || format!("M vs {bob} at r={r}: Alice {} not below Bob {}", got.alice, got.bob))?;
            worst = worst.max(err);
        }
    }
    for bob in [NamedStrategy::C, NamedStrategy::D] {
        let got = engine(EntanglementParam::MAXIMAL, 0.0, &NamedStrategy::M, &bob);
        let err = got.max_abs_diff(&PayoffProfile::new(0.5, 3.0));
        ensure(err <= TOL, || format!("M vs {bob} at r=0: {got:?}"))?;
    }
    Ok(format!("miracle move vs C and D, max error {worst:.1e}, Alice below Bob everywhere"))
}

/// Nash profiles recomputed by trying every unilateral deviation.
fn brute_nash(t: &PayoffTable) -> Vec<(usize, usize)> {
    let n = t.size();
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let here = t.get(i, j);
            let alice_ok = (0..n).all(|k| t.get(k, j).alice <= here.alice);
            let bob_ok = (0..n).all(|k| t.get(i, k).bob <= here.bob);
            if alice_ok && bob_ok {
                out.push((i, j));
            }
        }
    }
    out
}

fn strictly_dominant(t: &PayoffTable, player: Player, s: usize) -> bool {
    let n = t.size();
    (0..n).filter(|&o| o != s).all(|o| (0..n).all(|k| t.payoff_of(player, s, k) > t.payoff_of(player, o, k)))
}

fn ac6() -> Check {
    timed(|| {
        let set = StrategySet::classical();
        let (c_idx, d_idx) = (0, 1);
        let table = |gamma: EntanglementParam, r: f64| {
            payoff_table(&GameSetup::new(gamma, accel(r)), &set).map_err(|e| e.to_string())
        };

        let t = table(EntanglementParam::UNENTANGLED, 0.0)?;
        ensure(brute_nash(&t) == vec![(d_idx, d_idx)], || "classical game: (D,D) not the unique Nash".into())?;
        ensure(find_nash(&t) == brute_nash(&t), || "classical game: analyzer disagrees".into())?;

        for r in r_grid().into_iter().filter(|&r| r > 0.0 && r < FRAC_PI_4) {
            let t = table(EntanglementParam::UNENTANGLED, r)?;
            ensure(strictly_dominant(&t, Player::Alice, d_idx), || format!("gamma=0, r={r}: D not strictly dominant"))?;
            let dom = find_dominant(&t, Player::Alice);
            ensure(
                matches!(dom, Some(d) if d.strategy == d_idx && d.kind == DominanceKind::Strict),
                || format!("gamma=0, r={r}: analyzer reports {dom:?}"),
            )?;
        }

        for r in r_grid() {
            let t = table(EntanglementParam::MAXIMAL, r)?;
            for player in [Player::Alice, Player::Bob] {
                ensure(strictly_dominant(&t, player, c_idx), || format!("gamma=pi/2, r={r}: C not strict for {player}"))?;
                let dom = find_dominant(&t, player);
                ensure(
                    matches!(dom, Some(d) if d.strategy == c_idx && d.kind == DominanceKind::Strict),
                    || format!("gamma=pi/2, r={r}: analyzer reports {dom:?} for {player}"),
                )?;
            }
            let nash = brute_nash(&t);
            ensure(nash == vec![(c_idx, c_idx)], || format!("gamma=pi/2, r={r}: Nash {nash:?}"))?;
            ensure(find_nash(&t) == nash && is_nash(&t, c_idx, c_idx), || format!("gamma=pi/2, r={r}: analyzer disagrees"))?;
        }
        Ok("classical (D,D); D strict for Alice at gamma=0; C strict for both and unique (C,C) at gamma=pi/2".into())
    })
}

/// Reduced two-player state after the channel, written out entrywise.
fn channel_closed_form(gamma: f64, r: f64) -> ComplexMatrix {
    let (sg, cg) = (gamma / 2.0).sin_cos();
    let (sr, cr) = r.sin_cos();
    let off = cr * cg * sg;
    ComplexMatrix::from_rows([
        [c(cr * cr * cg * cg, 0.0), ZERO, ZERO, c(0.0, -off)],
        [ZERO, c(cg * cg * sr * sr, 0.0), ZERO, ZERO],
        [ZERO, ZERO, ZERO, ZERO],
        [c(0.0, off), ZERO, ZERO, c(sg * sg, 0.0)],
    ])
}

fn ac7() -> Check {
    let n = 20;
    let mut worst_trace = 0.0f64;
    let mut worst_herm = 0.0f64;
    for i in 0..n {
        let gamma = FRAC_PI_2 * i as f64 / (n - 1) as f64;
        let g = EntanglementParam::new(gamma).map_err(|e| e.to_string())?;
        let psi = initial_state(g);
        for j in 0..n {
            let r = FRAC_PI_4 * j as f64 / (n - 1) as f64;
            let rho = unruh_channel(&psi, accel(r)).map_err(|e| format!("({gamma},{r}): {e}"))?;
            let m = rho.matrix();
            worst_trace = worst_trace.max((m.trace() - c(1.0, 0.0)).norm());
            worst_herm = worst_herm.max(m.hermiticity_deviation());
            ensure(rho.min_principal_minor() >= -1e-12, || format!("({gamma},{r}): not positive"))?;
        }
        let identity = unruh_channel(&psi, AccelerationParam::INERTIAL).map_err(|e| e.to_string())?;
        let pure = DensityMatrix::from_pure(&psi).map_err(|e| e.to_string())?;
        let err = identity.matrix().max_abs_diff(pure.matrix());
        ensure(err <= TOL, || format!("gamma={gamma}: r=0 channel moved the state by {err:e}"))?;
    }
    ensure(worst_trace <= TOL, || format!("trace error {worst_trace:e}"))?;
    ensure(worst_herm <= TOL, || format!("Hermiticity error {worst_herm:e}"))?;

    let pairs = [(0.0, 0.0), (FRAC_PI_2, FRAC_PI_4), (PI / 3.0, PI / 8.0), (0.4, 0.7), (1.2, 0.1)];
    let mut worst = 0.0f64;
    for (gamma, r) in pairs {
        let g = EntanglementParam::new(gamma).map_err(|e| e.to_string())?;
        let rho = unruh_channel(&initial_state(g), accel(r)).map_err(|e| e.to_string())?;
        let err = rho.matrix().max_abs_diff(&channel_closed_form(gamma, r));
        ensure(err <= 1e-13, || format!("({gamma},{r}): entrywise error {err:e}"))?;
        worst = worst.max(err);
    }
    Ok(format!(
        "{}x{} grid: trace {worst_trace:.1e}, Hermiticity {worst_herm:.1e}; closed form at 5 pairs {worst:.1e}",
        n, n
    ))
}

fn ac8() -> Check {
    let out = Command::new(env!("CARGO_BIN_EXE_qpd"))
        .args(["verify", "--suite", "all"])
        .output()
        .map_err(|e| e.to_string())?;
    ensure(out.status.code() == Some(0), || format!("verify all exited with {:?}", out.status.code()))?;
    let text = String::from_utf8_lossy(&out.stdout);
    for id in ["q-label", "defect-payoff-text", "miracle-inversion", "commutators"] {
        ensure(text.contains(&format!("note[{id}]")), || format!("missing note {id}"))?;
    }
    let mixed = ["CxD", "DxC"];
    ensure(mixed.iter().all(|p| text.contains(p)), || "commutator report lacks mixed pairs".into())?;
    Ok("verify all exit 0 with q-label, defect-payoff-text, miracle-inversion and commutator notes".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("AC1", "unentangled classical payoffs", ac1),
        ("AC2", "maximally entangled classical payoffs", ac2),
        ("AC3", "cooperation payoff curve", ac3),
        ("AC4", "quantum move against U(alpha, theta)", ac4),
        ("AC5", "miracle move against classical moves", ac5),
        ("AC6", "equilibrium claims", ac6),
        ("AC7", "acceleration channel properties", ac7),
        ("AC8", "discrepancy report", ac8),
    ];
    let mut failed = 0;
    for (id, title, check) in criteria {
        match check() {
            Ok(detail) => println!("[PASS] {id} {title}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("[FAIL] {id} {title}: {why}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
