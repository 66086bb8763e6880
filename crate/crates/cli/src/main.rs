//! `qpd`: single games, sweeps, verification suites and equilibrium reports
//! for the quantum Prisoners' Dilemma with an accelerated player.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error, 3 I/O error.

mod render;

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use qpd_core::equilibrium::{analyze, best_response, Player, StrategySet};
use qpd_core::sweep::{fig2_rows, run_sweep, write_fig2_csv, write_sweep_csv, SweepSpec};
use qpd_core::verify::{self, Suite};
use qpd_core::{parse_angle, play, AccelerationParam, ClassicalPayoffTable, EntanglementParam, GameSetup, NamedStrategy};

#[derive(Parser, Debug)]
#[command(name = "qpd", version, about = "Quantum Prisoners' Dilemma with a uniformly accelerated player")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Payoff table options shared by the game commands.
#[derive(clap::Args, Debug)]
struct TableArgs {
    /// Symmetric table as R,S,T,P.
    #[arg(long, value_name = "R,S,T,P", value_parser = parse_table)]
    payoffs: Option<ClassicalPayoffTable>,

    /// TOML file overriding table entries (keys cc, cd, dc, dd as [alice, bob]).
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Play one strategy profile.
    Play {
        /// Entanglement gamma in [0, pi/2] (radians; "pi/2" style accepted).
        #[arg(long, value_parser = parse_angle_arg, allow_hyphen_values = true)]
        gamma: f64,
        /// Acceleration parameter r in [0, pi/4].
        #[arg(long, value_parser = parse_angle_arg, allow_hyphen_values = true)]
        r: f64,
        /// Alice's move: C, D, Q, M or alpha,theta.
        #[arg(long, value_parser = parse_strategy)]
        alice: NamedStrategy,
        /// Bob's move: C, D, Q, M or alpha,theta.
        #[arg(long, value_parser = parse_strategy)]
        bob: NamedStrategy,
        #[command(flatten)]
        table: TableArgs,
        /// Emit one JSON object instead of key=value lines.
        #[arg(long)]
        json: bool,
    },
    /// Sweep r and write one CSV row per (r, profile).
    Sweep {
        #[arg(long, value_parser = parse_angle_arg, allow_hyphen_values = true)]
        gamma: f64,
        #[arg(long, value_parser = parse_angle_arg, default_value = "0", allow_hyphen_values = true)]
        r_start: f64,
        #[arg(long, value_parser = parse_angle_arg, default_value = "pi/4", allow_hyphen_values = true)]
        r_end: f64,
        /// Number of grid points, endpoints included (at least 2).
        #[arg(long)]
        steps: usize,
        /// Profile ALICE:BOB, repeatable. Defaults to C:C C:D D:C D:D.
        #[arg(long = "profile", value_parser = parse_profile)]
        profiles: Vec<(NamedStrategy, NamedStrategy)>,
        #[command(flatten)]
        table: TableArgs,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Classical payoffs at maximal entanglement against r.
    Fig2 {
        #[arg(long)]
        steps: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare the engine against the closed-form payoffs.
    Verify {
        #[arg(long, default_value = "all", value_parser = parse_suite)]
        suite: Suite,
        /// Number of r grid points over [0, pi/4].
        #[arg(long, default_value_t = verify::DEFAULT_GRID)]
        grid: usize,
        #[arg(long, default_value_t = verify::DEFAULT_TOLERANCE)]
        tol: f64,
    },
    /// Payoff table, Nash profiles, dominance and Pareto front over a set.
    Equilibria {
        #[arg(long, value_parser = parse_angle_arg, allow_hyphen_values = true)]
        gamma: f64,
        #[arg(long, value_parser = parse_angle_arg, allow_hyphen_values = true)]
        r: f64,
        /// Comma list of moves, e.g. C,D,Q,M.
        #[arg(long)]
        set: String,
        #[command(flatten)]
        table: TableArgs,
    },
    /// Search the continuous move space for a best reply.
    BestResponse {
        #[arg(long, value_parser = parse_angle_arg, allow_hyphen_values = true)]
        gamma: f64,
        #[arg(long, value_parser = parse_angle_arg, allow_hyphen_values = true)]
        r: f64,
        #[arg(long, value_parser = parse_strategy)]
        opponent: NamedStrategy,
        #[arg(long, value_enum)]
        responder: Responder,
        /// Lattice points per axis (at least 8).
        #[arg(long, default_value_t = 64)]
        grid: usize,
        /// Maximum coordinate-ascent rounds after the lattice scan.
        #[arg(long, default_value_t = 200)]
        refine: usize,
        #[command(flatten)]
        table: TableArgs,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Responder {
    Alice,
    Bob,
}

impl From<Responder> for Player {
    fn from(r: Responder) -> Self {
        match r {
            Responder::Alice => Player::Alice,
            Responder::Bob => Player::Bob,
        }
    }
}

fn parse_angle_arg(s: &str) -> Result<f64, String> {
    parse_angle(s).map_err(|e| e.to_string())
}

fn parse_strategy(s: &str) -> Result<NamedStrategy, String> {
    s.parse().map_err(|e: qpd_core::Error| e.to_string())
}

fn parse_table(s: &str) -> Result<ClassicalPayoffTable, String> {
    ClassicalPayoffTable::parse_symmetric(s).map_err(|e| e.to_string())
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse().map_err(|_| {
        format!("unknown suite {s:?}; expected one of table2, eq8, eq11, eq13, commutators, all")
    })
}

fn parse_profile(s: &str) -> Result<(NamedStrategy, NamedStrategy), String> {
    let (a, b) = s
        .split_once(':')
        .ok_or_else(|| format!("profile {s:?} must look like ALICE:BOB"))?;
    Ok((parse_strategy(a)?, parse_strategy(b)?))
}

enum Failure {
    Usage(String),
    Io(String),
    Verification,
}

impl From<qpd_core::Error> for Failure {
    fn from(e: qpd_core::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn io_failure(path: &Option<PathBuf>, e: io::Error) -> Failure {
    match path {
        Some(p) => Failure::Io(format!("{}: {e}", p.display())),
        None => Failure::Io(format!("stdout: {e}")),
    }
}

impl TableArgs {
    fn resolve(&self) -> Result<ClassicalPayoffTable, Failure> {
        let base = self.payoffs.unwrap_or_default();
        match &self.config {
            None => Ok(base),
            Some(path) => {
                let text =
                    fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
                Ok(base.with_overrides_toml(&text)?)
            }
        }
    }
}

fn setup(gamma: f64, r: f64, table: &TableArgs) -> Result<GameSetup, Failure> {
    Ok(GameSetup::from_angles(gamma, r)?.with_table(table.resolve()?))
}

fn emit(out: &Option<PathBuf>, bytes: &[u8]) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, bytes).map_err(|e| io_failure(out, e)),
        None => {
            let mut stdout = io::stdout().lock();
            stdout
                .write_all(bytes)
                .and_then(|_| stdout.flush())
                .map_err(|e| io_failure(out, e))
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Play {
            gamma,
            r,
            alice,
            bob,
            table,
            json,
        } => {
            let s = setup(gamma, r, &table)?;
            let payoff = play(&s, &alice, &bob)?;
            let record = render::PlayRecord {
                gamma: s.gamma.value(),
                r: s.r.value(),
                alice: &alice,
                bob: &bob,
                payoff,
            };
            let text = if json { record.json() } else { record.key_value() };
            emit(&None, text.as_bytes())
        }
        Command::Sweep {
            gamma,
            r_start,
            r_end,
            steps,
            profiles,
            table,
            out,
        } => {
            let profiles = if profiles.is_empty() {
                SweepSpec::classical_profiles()
            } else {
                profiles
            };
            let spec = SweepSpec::new(
                EntanglementParam::new(gamma)?,
                AccelerationParam::new(r_start)?,
                AccelerationParam::new(r_end)?,
                steps,
                profiles,
            )?;
            let rows = run_sweep(&spec, &table.resolve()?)?;
            let mut buf = Vec::new();
            write_sweep_csv(&mut buf, &rows).map_err(|e| io_failure(&out, e))?;
            emit(&out, &buf)
        }
        Command::Fig2 { steps, out } => {
            let rows = fig2_rows(steps)?;
            let mut buf = Vec::new();
            write_fig2_csv(&mut buf, &rows).map_err(|e| io_failure(&out, e))?;
            emit(&out, &buf)
        }
        Command::Verify { suite, grid, tol } => {
            let outcomes = verify::run(suite, grid, tol)?;
            emit(&None, render::verify(&outcomes).as_bytes())?;
            if outcomes.iter().all(|o| o.passed) {
                Ok(())
            } else {
                Err(Failure::Verification)
            }
        }
        Command::Equilibria { gamma, r, set, table } => {
            let s = setup(gamma, r, &table)?;
            let set = StrategySet::parse(&set)?;
            let report = analyze(&s, &set)?;
            emit(&None, render::equilibria(s.gamma.value(), s.r.value(), &report).as_bytes())
        }
        Command::BestResponse {
            gamma,
            r,
            opponent,
            responder,
            grid,
            refine,
            table,
        } => {
            let s = setup(gamma, r, &table)?;
            let br = best_response(&s, &opponent, responder.into(), grid, refine)?;
            emit(&None, render::best_response(responder.into(), &opponent, &br).as_bytes())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}\n\nFor more information, try '--help'.");
            ExitCode::from(2)
        }
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
