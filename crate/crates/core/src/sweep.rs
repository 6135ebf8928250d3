//! One-parameter sweeps of the splitting and their CSV form.
//!
//! A sweep varies one parameter over a uniform inclusive grid and evaluates
//! one curve per set of fixed-parameter overrides. Rows are independent and
//! may be evaluated in parallel; the table is always in grid order.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use crate::charged::{self, ChargedConfig, MAX_LANDAU_INDEX};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::neutral::{self, NeutralConfig};
use crate::units::{self, NaturalValue, ParticleSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Param {
    Delta,
    PPerp,
    PPar,
    B,
    /// Landau index; only valid as an override.
    N,
}

impl Param {
    pub fn name(self) -> &'static str {
        match self {
            Param::Delta => "delta",
            Param::PPerp => "p_perp",
            Param::PPar => "p_par",
            Param::B => "b",
            Param::N => "n",
        }
    }

    fn applies_to_neutral(self) -> bool {
        matches!(self, Param::Delta | Param::PPerp | Param::PPar)
    }

    fn applies_to_charged(self) -> bool {
        matches!(self, Param::PPar | Param::B | Param::N)
    }
}

impl FromStr for Param {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "delta" => Ok(Param::Delta),
            "p_perp" | "p-perp" => Ok(Param::PPerp),
            "p_par" | "p-par" => Ok(Param::PPar),
            "b" => Ok(Param::B),
            "n" => Ok(Param::N),
            other => Err(Error::InvalidSweep(format!("unknown parameter {other:?}"))),
        }
    }
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridRange {
    pub start: f64,
    pub stop: f64,
    pub steps: usize,
}

impl GridRange {
    pub fn new(start: f64, stop: f64, steps: usize) -> Result<Self> {
        let r = GridRange { start, stop, steps };
        r.validate()?;
        Ok(r)
    }

    fn validate(&self) -> Result<()> {
        if !(self.start.is_finite() && self.stop.is_finite()) {
            return Err(Error::InvalidSweep("range bounds must be finite".into()));
        }
        if self.start >= self.stop {
            return Err(Error::InvalidSweep(format!(
                "range start {} must be below stop {}",
                self.start, self.stop
            )));
        }
        if self.steps < 2 {
            return Err(Error::InvalidSweep(format!(
                "range needs at least 2 steps, got {}",
                self.steps
            )));
        }
        Ok(())
    }

    /// Inclusive uniform grid; the last point is exactly `stop`.
    pub fn points(&self) -> Vec<f64> {
        let last = self.steps - 1;
        let width = self.stop - self.start;
        (0..self.steps)
            .map(|i| {
                if i == last {
                    self.stop
                } else {
                    self.start + width * (i as f64) / (last as f64)
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Curve {
    pub label: String,
    pub overrides: Vec<(Param, f64)>,
}

impl Curve {
    /// Curve with a single override, labelled `name=value`.
    pub fn single(param: Param, value: f64) -> Self {
        Curve {
            label: format!("{}={}", param.name(), value),
            overrides: vec![(param, value)],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BaseConfig {
    Neutral(NeutralConfig),
    Charged(ChargedConfig),
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub variable: Param,
    pub range: GridRange,
    pub curves: Vec<Curve>,
    pub base: BaseConfig,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        self.range.validate()?;
        let is_neutral = matches!(self.base, BaseConfig::Neutral(_));
        let fits = |p: Param| {
            if is_neutral {
                p.applies_to_neutral()
            } else {
                p.applies_to_charged()
            }
        };
        let family = if is_neutral { "neutral" } else { "charged" };
        if self.variable == Param::N || !fits(self.variable) {
            return Err(Error::InvalidSweep(format!(
                "cannot sweep {} for a {family} particle",
                self.variable
            )));
        }
        if self.curves.is_empty() {
            return Err(Error::InvalidSweep("at least one curve is required".into()));
        }
        let mut seen = HashSet::new();
        for curve in &self.curves {
            if curve.label.is_empty() || curve.label.contains([',', '\n', '\r']) {
                return Err(Error::InvalidSweep(format!(
                    "curve label {:?} is empty or contains a separator",
                    curve.label
                )));
            }
            if !seen.insert(curve.label.as_str()) {
                return Err(Error::InvalidSweep(format!(
                    "duplicate curve label {:?}",
                    curve.label
                )));
            }
            for &(p, v) in &curve.overrides {
                if !fits(p) {
                    return Err(Error::InvalidSweep(format!(
                        "curve {:?}: {p} does not apply to a {family} particle",
                        curve.label
                    )));
                }
                if p == self.variable {
                    return Err(Error::InvalidSweep(format!(
                        "curve {:?} overrides the swept variable {p}",
                        curve.label
                    )));
                }
                if !v.is_finite() {
                    return Err(Error::InvalidSweep(format!(
                        "curve {:?}: {p} must be finite",
                        curve.label
                    )));
                }
                if p == Param::N && (v < 0.0 || v.fract() != 0.0 || v > f64::from(MAX_LANDAU_INDEX))
                {
                    return Err(Error::InvalidSweep(format!(
                        "curve {:?}: Landau index must be a non-negative integer, got {v}",
                        curve.label
                    )));
                }
            }
        }
        Ok(())
    }

    fn evaluate(&self, curve: &Curve, x: f64) -> Result<f64> {
        let assignments = curve
            .overrides
            .iter()
            .copied()
            .chain(std::iter::once((self.variable, x)));
        let value = match self.base {
            BaseConfig::Neutral(base) => {
                let mut cfg = base;
                for (p, v) in assignments {
                    match p {
                        Param::Delta => cfg.delta = v,
                        Param::PPerp => cfg.p_perp = v,
                        Param::PPar => cfg.p_par = v,
                        Param::B | Param::N => unreachable!("validated"),
                    }
                }
                let cfg = NeutralConfig::new(cfg.p_par, cfg.p_perp, cfg.delta)?;
                neutral::splitting(&cfg).splitting
            }
            BaseConfig::Charged(base) => {
                let (mut p_par, mut b, mut n) = (base.p_par, base.b, base.n);
                for (p, v) in assignments {
                    match p {
                        Param::PPar => p_par = v,
                        Param::B => b = v,
                        Param::N => n = v as u32,
                        Param::Delta | Param::PPerp => unreachable!("validated"),
                    }
                }
                let cfg = ChargedConfig::new(p_par, b, n)?;
                charged::splitting(&cfg).splitting
            }
        };
        if value.is_finite() {
            Ok(value)
        } else {
            Err(Error::InvalidInput(format!("non-finite splitting {value}")))
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub x: f64,
    pub values: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepTable {
    pub abscissa_name: String,
    pub labels: Vec<String>,
    pub rows: Vec<Row>,
    pub spec: SweepSpec,
}

impl SweepTable {
    /// Values of one curve, in grid order.
    pub fn column(&self, label: &str) -> Option<Vec<f64>> {
        let k = self.labels.iter().position(|l| l == label)?;
        Some(self.rows.iter().map(|r| r.values[k]).collect())
    }

    pub fn xs(&self) -> Vec<f64> {
        self.rows.iter().map(|r| r.x).collect()
    }

    /// Converts abscissa and splittings to SI using `particle`: energies in J,
    /// momenta in kg·m/s, the field parameter in T.
    pub fn to_si(&self, particle: &ParticleSpec) -> Result<SweepTable> {
        particle.validate()?;
        let x_to_si = |x: f64| -> Result<f64> {
            match self.spec.variable {
                Param::Delta => units::to_si_energy(NaturalValue::energy(x)?, particle),
                Param::PPerp | Param::PPar => {
                    units::to_si_momentum(NaturalValue::momentum(x)?, particle)
                }
                Param::B => units::to_si_field(NaturalValue::field_parameter(x)?, particle),
                Param::N => unreachable!("validated"),
            }
        };
        let rows = self
            .rows
            .iter()
            .map(|r| {
                let values = r
                    .values
                    .iter()
                    .map(|&y| units::to_si_energy(NaturalValue::energy(y)?, particle))
                    .collect::<Result<Vec<_>>>()?;
                Ok(Row {
                    x: x_to_si(r.x)?,
                    values,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let unit = match self.spec.variable {
            Param::Delta => "J",
            Param::PPerp | Param::PPar => "kg_m_per_s",
            _ => "T",
        };
        let abscissa_name = match self.spec.variable {
            Param::B => format!("B_{unit}"),
            v => format!("{}_{unit}", v.name()),
        };
        Ok(SweepTable {
            abscissa_name,
            labels: self.labels.clone(),
            rows,
            spec: self.spec.clone(),
        })
    }
}

pub fn run_sweep(spec: &SweepSpec) -> Result<SweepTable> {
    run_sweep_with(spec, Execution::default())
}

pub fn run_sweep_with(spec: &SweepSpec, exec: Execution) -> Result<SweepTable> {
    spec.validate()?;
    let xs = spec.range.points();
    let rows = exec.map(&xs, |&x| -> Result<Row> {
        let values = spec
            .curves
            .iter()
            .map(|c| {
                spec.evaluate(c, x).map_err(|e| Error::Evaluation {
                    curve: c.label.clone(),
                    x,
                    source: Box::new(e),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Row { x, values })
    });
    Ok(SweepTable {
        abscissa_name: spec.variable.name().to_string(),
        labels: spec.curves.iter().map(|c| c.label.clone()).collect(),
        rows: rows.into_iter().collect::<Result<Vec<_>>>()?,
        spec: spec.clone(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Figure {
    Fig1,
    Fig2,
    Fig3,
    Fig4,
}

impl Figure {
    pub const ALL: [Figure; 4] = [Figure::Fig1, Figure::Fig2, Figure::Fig3, Figure::Fig4];
}

impl FromStr for Figure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fig1" => Ok(Figure::Fig1),
            "fig2" => Ok(Figure::Fig2),
            "fig3" => Ok(Figure::Fig3),
            "fig4" => Ok(Figure::Fig4),
            other => Err(Error::InvalidSweep(format!("unknown figure {other:?}"))),
        }
    }
}

impl fmt::Display for Figure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Figure::Fig1 => "fig1",
            Figure::Fig2 => "fig2",
            Figure::Fig3 => "fig3",
            Figure::Fig4 => "fig4",
        })
    }
}

/// Reconstructed parameter sets for the four published splitting plots.
///
/// Only the fixed parameter of each plot is published; ranges and curve
/// families are chosen to show every regime.
pub fn figure_preset(which: Figure) -> SweepSpec {
    let neutral = |p_par, p_perp, delta| {
        BaseConfig::Neutral(NeutralConfig {
            p_par,
            p_perp,
            delta,
        })
    };
    let curves = |p: Param, vs: &[f64]| vs.iter().map(|&v| Curve::single(p, v)).collect();
    match which {
        Figure::Fig1 => SweepSpec {
            variable: Param::Delta,
            range: GridRange {
                start: 0.0,
                stop: 3.0,
                steps: 301,
            },
            curves: curves(Param::PPerp, &[0.0, 0.5, 1.0, 1.5]),
            base: neutral(0.3, 0.0, 0.0),
        },
        Figure::Fig2 => SweepSpec {
            variable: Param::PPerp,
            range: GridRange {
                start: 0.0,
                stop: 3.0,
                steps: 301,
            },
            curves: curves(Param::PPar, &[0.0, 0.5, 1.0, 2.0]),
            base: neutral(0.0, 0.0, 0.3),
        },
        Figure::Fig3 => SweepSpec {
            variable: Param::PPerp,
            range: GridRange {
                start: 0.0,
                stop: 3.0,
                steps: 301,
            },
            curves: curves(Param::Delta, &[0.1, 0.3, 0.6, 0.9]),
            base: neutral(0.5, 0.0, 0.0),
        },
        Figure::Fig4 => SweepSpec {
            variable: Param::B,
            range: GridRange {
                start: 0.0,
                stop: 2.0,
                steps: 201,
            },
            curves: curves(Param::N, &[0.0, 1.0, 2.0, 5.0]),
            base: BaseConfig::Charged(ChargedConfig {
                p_par: 0.2,
                b: 0.0,
                n: 0,
            }),
        },
    }
}

/// Scientific notation with 9 significant digits, e.g. `5.72589096e-1`.
pub fn format_number(v: f64) -> String {
    format!("{v:.8e}")
}

pub fn to_csv(table: &SweepTable) -> String {
    let mut out = String::new();
    out.push_str(&table.abscissa_name);
    for l in &table.labels {
        out.push(',');
        out.push_str(l);
    }
    out.push('\n');
    for row in &table.rows {
        out.push_str(&format_number(row.x));
        for &v in &row.values {
            out.push(',');
            out.push_str(&format_number(v));
        }
        out.push('\n');
    }
    out
}

/// Header and numeric rows of a CSV produced by [`to_csv`].
#[derive(Debug, Clone, PartialEq)]
pub struct ParsedCsv {
    pub header: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

pub fn parse_csv(text: &str) -> Result<ParsedCsv> {
    let mut lines = text.lines();
    let header: Vec<String> = lines
        .next()
        .ok_or_else(|| Error::InvalidInput("empty CSV".into()))?
        .split(',')
        .map(str::to_string)
        .collect();
    let rows = lines
        .enumerate()
        .map(|(i, line)| {
            let row = line
                .split(',')
                .map(|f| {
                    f.parse::<f64>()
                        .map_err(|e| Error::InvalidInput(format!("row {}: {f:?}: {e}", i + 1)))
                })
                .collect::<Result<Vec<_>>>()?;
            if row.len() != header.len() {
                return Err(Error::InvalidInput(format!(
                    "row {} has {} fields, header has {}",
                    i + 1,
                    row.len(),
                    header.len()
                )));
            }
            Ok(row)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ParsedCsv { header, rows })
}
