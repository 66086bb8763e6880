use std::fmt::Write as _;

use qpd_core::equilibrium::{DominanceKind, EquilibriumReport, Player};
use qpd_core::sweep::format_number;
use qpd_core::verify::VerifyOutcome;
use qpd_core::{BestResponse, NamedStrategy, PayoffProfile};

pub struct PlayRecord<'a> {
    pub gamma: f64,
    pub r: f64,
    pub alice: &'a NamedStrategy,
    pub bob: &'a NamedStrategy,
    pub payoff: PayoffProfile,
}

impl PlayRecord<'_> {
    pub fn key_value(&self) -> String {
        format!(
            "gamma={}\nr={}\nalice_strategy={}\nbob_strategy={}\nalice_payoff={}\nbob_payoff={}\n",
            format_number(self.gamma),
            format_number(self.r),
            self.alice,
            self.bob,
            format_number(self.payoff.alice),
            format_number(self.payoff.bob),
        )
    }

    pub fn json(&self) -> String {
        let s = |v: &NamedStrategy| serde_json::to_string(&v.to_string()).expect("string");
        format!(
            "{{\"gamma\":{},\"r\":{},\"alice_strategy\":{},\"bob_strategy\":{},\"alice_payoff\":{},\"bob_payoff\":{}}}\n",
            format_number(self.gamma),
            format_number(self.r),
            s(self.alice),
            s(self.bob),
            format_number(self.payoff.alice),
            format_number(self.payoff.bob),
        )
    }
}

fn profile(report: &EquilibriumReport, (i, j): (usize, usize)) -> String {
    let s = report.table.strategies();
    format!("({},{})", s[i], s[j])
}

fn profile_list(report: &EquilibriumReport, list: &[(usize, usize)]) -> String {
    if list.is_empty() {
        return "none".into();
    }
    list.iter().map(|&p| profile(report, p)).collect::<Vec<_>>().join(" ")
}

pub fn equilibria(gamma: f64, r: f64, report: &EquilibriumReport) -> String {
    let strategies = report.table.strategies();
    let mut out = String::new();
    let _ = writeln!(out, "gamma={}", format_number(gamma));
    let _ = writeln!(out, "r={}", format_number(r));
    let names: Vec<String> = strategies.iter().map(|s| s.to_string()).collect();
    let _ = writeln!(out, "strategies={}", names.join(" "));
    for (i, j) in report.table.profiles() {
        let p = report.table.get(i, j);
        let _ = writeln!(
            out,
            "payoff{}={},{}",
            profile(report, (i, j)),
            format_number(p.alice),
            format_number(p.bob)
        );
    }
    let _ = writeln!(out, "nash={}", profile_list(report, &report.nash));
    for (player, dom) in [(Player::Alice, report.dominant_alice), (Player::Bob, report.dominant_bob)] {
        let text = match dom {
            Some(d) => format!(
                "{} {}",
                strategies[d.strategy],
                match d.kind {
                    DominanceKind::Strict => "strict",
                    DominanceKind::Weak => "weak",
                }
            ),
            None => "none".into(),
        };
        let _ = writeln!(out, "dominant_{player}={text}");
    }
    let _ = writeln!(out, "pareto={}", profile_list(report, &report.pareto));
    for br in &report.best_responses {
        let best: Vec<String> = br.best.iter().map(|&b| strategies[b].to_string()).collect();
        let _ = writeln!(
            out,
            "best_response_{}[vs {}]={}",
            br.responder,
            strategies[br.opponent],
            best.join(" ")
        );
    }
    out
}

pub fn best_response(responder: Player, opponent: &NamedStrategy, br: &BestResponse) -> String {
    format!(
        "responder={}\nopponent={}\nalpha={}\ntheta={}\npayoff={}\n",
        responder,
        opponent,
        format_number(br.params.alpha()),
        format_number(br.params.theta()),
        format_number(br.payoff),
    )
}

pub fn verify(outcomes: &[VerifyOutcome]) -> String {
    let mut out = String::new();
    for o in outcomes {
        let _ = writeln!(
            out,
            "suite={} points_checked={} max_abs_error={:e} tolerance={:e} passed={}",
            o.suite, o.points_checked, o.max_abs_error, o.tolerance, o.passed
        );
        for note in &o.discrepancy_notes {
            let _ = writeln!(out, "  note[{}]: {}", note.id, note.text);
        }
    }
    let all = outcomes.iter().all(|o| o.passed);
    let _ = writeln!(out, "overall={}", if all { "passed" } else { "FAILED" });
    out
}
