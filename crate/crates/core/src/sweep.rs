//! Parameter sweeps over the acceleration parameter and their CSV output.

use std::f64::consts::FRAC_PI_4;
use std::io::{self, Write};

use crate::error::{Error, Result};
use crate::game::{EntanglementParam, NamedStrategy};
use crate::oracle::ClassicalProfile;
use crate::payoff::{play_batch, play_batch_serial, ClassicalPayoffTable, GamePoint, GameSetup, PayoffProfile};
use crate::unruh::AccelerationParam;

pub const SWEEP_HEADER: &str = "gamma,r,alice_strategy,bob_strategy,alice_payoff,bob_payoff";
pub const FIG2_HEADER: &str = "r,P_CC,P_DD,P_A_CD,P_A_DC";

/// Formats a double with 17 significant digits.
///
/// Plain decimal notation for magnitudes in `[1e-5, 1e17)`, scientific
/// otherwise; zero (of either sign) prints as `0.0000000000000000`.
pub fn format_number(x: f64) -> String {
    if x == 0.0 {
        return "0.0000000000000000".to_string();
    }
    let sci = format!("{x:.16e}");
    let exp: i32 = sci[sci.find('e').expect("exponent") + 1..].parse().expect("integer exponent");
    if (-5..=16).contains(&exp) {
        format!("{:.*}", (16 - exp) as usize, x)
    } else {
        sci
    }
}

/// Quotes a CSV field when it contains a separator or quote.
pub fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Inclusive, uniformly spaced grid with both endpoints hit exactly.
pub fn r_grid(start: AccelerationParam, end: AccelerationParam, steps: usize) -> Result<Vec<AccelerationParam>> {
    if steps < 2 {
        return Err(Error::Domain {
            name: "steps",
            value: steps as f64,
            min: 2.0,
            max: f64::INFINITY,
        });
    }
    let (a, b) = (start.value(), end.value());
    (0..steps)
        .map(|i| {
            let r = if i + 1 == steps {
                b
            } else {
                a + (b - a) * (i as f64 / (steps - 1) as f64)
            };
            AccelerationParam::new(r)
        })
        .collect()
}

/// Full range `[0, pi/4]`.
pub fn full_r_grid(steps: usize) -> Result<Vec<AccelerationParam>> {
    r_grid(AccelerationParam::INERTIAL, AccelerationParam::new(FRAC_PI_4)?, steps)
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepSpec {
    pub gamma: EntanglementParam,
    pub r_start: AccelerationParam,
    pub r_end: AccelerationParam,
    pub steps: usize,
    pub profiles: Vec<(NamedStrategy, NamedStrategy)>,
}

impl SweepSpec {
    pub fn new(
        gamma: EntanglementParam,
        r_start: AccelerationParam,
        r_end: AccelerationParam,
        steps: usize,
        profiles: Vec<(NamedStrategy, NamedStrategy)>,
    ) -> Result<Self> {
        if r_start > r_end {
            return Err(Error::Shape(format!(
                "r_start {} exceeds r_end {}",
                r_start.value(),
                r_end.value()
            )));
        }
        if steps < 2 {
            return Err(Error::Domain {
                name: "steps",
                value: steps as f64,
                min: 2.0,
                max: f64::INFINITY,
            });
        }
        if profiles.is_empty() {
            return Err(Error::StrategySet("no profiles to sweep".into()));
        }
        Ok(Self {
            gamma,
            r_start,
            r_end,
            steps,
            profiles,
        })
    }

    pub fn classical_profiles() -> Vec<(NamedStrategy, NamedStrategy)> {
        ClassicalProfile::ALL.iter().map(|p| p.moves()).collect()
    }

    fn points(&self, table: &ClassicalPayoffTable) -> Result<Vec<GamePoint>> {
        let grid = r_grid(self.r_start, self.r_end, self.steps)?;
        Ok(grid
            .iter()
            .flat_map(|&r| {
                self.profiles.iter().map(move |&(alice, bob)| GamePoint {
                    setup: GameSetup {
                        gamma: self.gamma,
                        r,
                        table: *table,
                    },
                    alice,
                    bob,
                })
            })
            .collect())
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SweepRow {
    pub gamma: f64,
    pub r: f64,
    pub alice: NamedStrategy,
    pub bob: NamedStrategy,
    pub payoff: PayoffProfile,
}

fn collect_rows(points: &[GamePoint], results: Vec<Result<PayoffProfile>>) -> Result<Vec<SweepRow>> {
    points
        .iter()
        .zip(results)
        .map(|(p, res)| {
            Ok(SweepRow {
                gamma: p.setup.gamma.value(),
                r: p.setup.r.value(),
                alice: p.alice,
                bob: p.bob,
                payoff: res?,
            })
        })
        .collect()
}

/// Rows in r-major order, profiles in the order given.
pub fn run_sweep(spec: &SweepSpec, table: &ClassicalPayoffTable) -> Result<Vec<SweepRow>> {
    let points = spec.points(table)?;
    let results = play_batch(&points);
    collect_rows(&points, results)
}

pub fn run_sweep_serial(spec: &SweepSpec, table: &ClassicalPayoffTable) -> Result<Vec<SweepRow>> {
    let points = spec.points(table)?;
    let results = play_batch_serial(&points);
    collect_rows(&points, results)
}

pub fn write_sweep_csv<W: Write>(mut out: W, rows: &[SweepRow]) -> io::Result<()> {
    writeln!(out, "{SWEEP_HEADER}")?;
    for row in rows {
        writeln!(
            out,
            "{},{},{},{},{},{}",
            format_number(row.gamma),
            format_number(row.r),
            csv_field(&row.alice.to_string()),
            csv_field(&row.bob.to_string()),
            format_number(row.payoff.alice),
            format_number(row.payoff.bob),
        )?;
    }
    Ok(())
}

/// Classical payoffs at maximal entanglement against `r`, computed by the
/// engine. The off-diagonal columns are Alice's payoffs; Bob's follow by
/// symmetry.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Fig2Row {
    pub r: f64,
    pub cc: f64,
    pub dd: f64,
    pub alice_cd: f64,
    pub alice_dc: f64,
}

pub fn fig2_rows(steps: usize) -> Result<Vec<Fig2Row>> {
    let spec = SweepSpec::new(
        EntanglementParam::MAXIMAL,
        AccelerationParam::INERTIAL,
        AccelerationParam::new(FRAC_PI_4)?,
        steps,
        SweepSpec::classical_profiles(),
    )?;
    let rows = run_sweep(&spec, &ClassicalPayoffTable::default())?;
    Ok(rows
        .chunks(4)
        .map(|c| Fig2Row {
            r: c[0].r,
            cc: c[0].payoff.alice,
            alice_cd: c[1].payoff.alice,
            alice_dc: c[2].payoff.alice,
            dd: c[3].payoff.alice,
        })
        .collect())
}

pub fn write_fig2_csv<W: Write>(mut out: W, rows: &[Fig2Row]) -> io::Result<()> {
    writeln!(out, "{FIG2_HEADER}")?;
    for row in rows {
        writeln!(
            out,
            "{},{},{},{},{}",
            format_number(row.r),
            format_number(row.cc),
            format_number(row.dd),
            format_number(row.alice_cd),
            format_number(row.alice_dc),
        )?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::StrategyParams;
    use proptest::prelude::*;
    use std::f64::consts::FRAC_PI_2;

    #[test]
    fn number_format() {
        assert_eq!(format_number(3.0), "3.0000000000000000");
        assert_eq!(format_number(2.8321067811865475), "2.8321067811865475");
        assert_eq!(format_number(0.0), "0.0000000000000000");
        assert_eq!(format_number(-0.0), "0.0000000000000000");
        assert_eq!(format_number(0.25), "0.25000000000000000");
        assert_eq!(format_number(1.1248198369963932e-32), "1.1248198369963932e-32");
        assert_eq!(format_number(-1.5), "-1.5000000000000000");
    }

    proptest! {
        #[test]
        fn number_format_round_trips(x in -1e6f64..1e6) {
            prop_assert_eq!(format_number(x).parse::<f64>().unwrap(), x);
        }
    }

    #[test]
    fn grid_is_inclusive() {
        let g = full_r_grid(5).unwrap();
        assert_eq!(g.len(), 5);
        assert_eq!(g[0].value(), 0.0);
        assert_eq!(g[4].value(), FRAC_PI_4);
        assert!(full_r_grid(1).is_err());
    }

    #[test]
    fn spec_validation() {
        let r0 = AccelerationParam::INERTIAL;
        let r1 = AccelerationParam::new(0.5).unwrap();
        let g = EntanglementParam::MAXIMAL;
        let p = SweepSpec::classical_profiles();
        assert!(SweepSpec::new(g, r1, r0, 3, p.clone()).is_err());
        assert!(SweepSpec::new(g, r0, r1, 1, p.clone()).is_err());
        assert!(SweepSpec::new(g, r0, r1, 3, vec![]).is_err());
        assert!(SweepSpec::new(g, r0, r1, 3, p).is_ok());
    }

    #[test]
    fn sweep_endpoints_and_order() {
        let spec = SweepSpec::new(
            EntanglementParam::MAXIMAL,
            AccelerationParam::INERTIAL,
            AccelerationParam::INFINITE,
            2,
            vec![(NamedStrategy::C, NamedStrategy::C)],
        )
        .unwrap();
        let rows = run_sweep(&spec, &ClassicalPayoffTable::default()).unwrap();
        assert_eq!(rows.len(), 2);
        assert!((rows[0].payoff.alice - 3.0).abs() < 1e-14);
        assert!((rows[1].payoff.alice - 2.8321067811865475).abs() < 1e-14);
    }

    #[test]
    fn parallel_sweep_matches_serial() {
        let custom = NamedStrategy::Custom(StrategyParams::new(0.3, 1.2).unwrap());
        let spec = SweepSpec::new(
            EntanglementParam::new(0.9).unwrap(),
            AccelerationParam::new(0.1).unwrap(),
            AccelerationParam::new(0.7).unwrap(),
            33,
            vec![(NamedStrategy::Q, custom), (NamedStrategy::M, NamedStrategy::D), (custom, custom)],
        )
        .unwrap();
        let t = ClassicalPayoffTable::default();
        assert_eq!(run_sweep(&spec, &t).unwrap(), run_sweep_serial(&spec, &t).unwrap());
    }

    #[test]
    fn csv_quotes_custom_strategies() {
        let rows = vec![SweepRow {
            gamma: FRAC_PI_2,
            r: 0.0,
            alice: NamedStrategy::Custom(StrategyParams::new(0.5, 1.0).unwrap()),
            bob: NamedStrategy::D,
            payoff: PayoffProfile::new(1.0, 2.0),
        }];
        let mut buf = Vec::new();
        write_sweep_csv(&mut buf, &rows).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(
            text,
            "gamma,r,alice_strategy,bob_strategy,alice_payoff,bob_payoff\n\
             1.5707963267948966,0.0000000000000000,\"0.5,1\",D,1.0000000000000000,2.0000000000000000\n"
        );
    }

    #[test]
    fn fig2_columns() {
        let rows = fig2_rows(9).unwrap();
        let first = rows[0];
        assert!((first.cc - 3.0).abs() < 1e-14);
        assert!((first.dd - 1.0).abs() < 1e-14);
        assert!((first.alice_cd - 5.0).abs() < 1e-14);
        assert!(first.alice_dc.abs() < 1e-14);
        let last = rows[8];
        assert_eq!(last.r, FRAC_PI_4);
        assert!((last.cc - 2.8321067811865475).abs() < 1e-13);
        assert!((last.dd - 1.4178932188134525).abs() < 1e-13);
        assert!((last.alice_cd - 4.142766952966369).abs() < 1e-13);
        assert!((last.alice_dc - 0.6072330470336311).abs() < 1e-13);
        assert!(rows.windows(2).all(|w| w[1].cc < w[0].cc));
    }
}
