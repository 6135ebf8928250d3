//! Command-line front end.
//!
//! Exit codes: 0 success, 1 domain error, 2 usage error, 3 verification
//! failure. Errors are written as one line `error:<category>: <message>`.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::charged::{self, ChargedConfig};
use crate::error::Error;
use crate::neutral::{self, NeutralConfig};
use crate::oracles::{run_verification, VerifyKind};
use crate::sweep::{
    self, figure_preset, format_number, BaseConfig, Curve, Figure, GridRange, Param, SweepSpec,
};
use crate::units::{self, FieldSpec, NaturalValue, ParticleSpec, Preset};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_VERIFY: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "spinsplit",
    version,
    about = "Relativistic spin splitting and Larmor frequency of spin-1/2 particles"
)]
struct Cli {
    /// Write results to this file instead of standard output
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate energies and the spin splitting at one configuration
    Eval {
        #[command(subcommand)]
        target: EvalTarget,
    },
    /// Tabulate the splitting over a one-parameter grid as CSV
    Sweep(SweepArgs),
    /// Compare the exact splitting with its low- or high-speed approximation
    Limits {
        #[command(subcommand)]
        target: LimitsTarget,
    },
    /// Check the closed forms against the numerical oracles
    Verify(VerifyArgs),
    /// Natural-unit scales and SI conversions for a particle
    Convert(ConvertArgs),
}

#[derive(Debug, Clone, Args)]
struct ParticleArgs {
    /// electron, proton, neutron, muon, or custom
    #[arg(long)]
    particle: Option<String>,
    /// Custom particle mass [kg]
    #[arg(long, allow_hyphen_values = true)]
    mass: Option<f64>,
    /// Custom particle charge [C]
    #[arg(long, allow_hyphen_values = true)]
    charge: Option<f64>,
    /// Custom magnetic dipole moment size [J/T]
    #[arg(long)]
    mdm: Option<f64>,
    /// Custom electric dipole moment size [C m]
    #[arg(long)]
    edm: Option<f64>,
}

#[derive(Debug, Clone, Args)]
struct SiArgs {
    /// Take fields in SI and report SI values alongside natural units
    #[arg(long)]
    si: bool,
    #[command(flatten)]
    particle: ParticleArgs,
    /// Electric field [V/m]
    #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
    e_field: f64,
    /// Magnetic field [T]
    #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
    b_tesla: f64,
}

#[derive(Debug, Subcommand)]
enum EvalTarget {
    Neutral {
        #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
        p_par: f64,
        #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
        p_perp: f64,
        /// Interaction energy [mc^2]; ignored with --si
        #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
        delta: f64,
        #[command(flatten)]
        si: SiArgs,
    },
    Charged {
        #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
        p_par: f64,
        /// Field parameter [m^2 c^2 / (hbar |q|) tesla]; ignored with --si
        #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
        b: f64,
        #[arg(long, default_value_t = 0)]
        n: u32,
        #[command(flatten)]
        si: SiArgs,
    },
}

#[derive(Debug, Args)]
struct SweepArgs {
    /// Reproduce one of the four reference plots
    #[arg(long, conflicts_with_all = ["var", "range", "curve"])]
    figure: Option<String>,
    /// Swept parameter: delta, p_perp, p_par, or b
    #[arg(long, requires = "range")]
    var: Option<String>,
    /// start:stop:steps, inclusive
    #[arg(long, allow_hyphen_values = true)]
    range: Option<String>,
    /// k=v[,k=v]... fixed-parameter overrides, one flag per curve
    #[arg(long, allow_hyphen_values = true)]
    curve: Vec<String>,
    #[arg(long, allow_hyphen_values = true)]
    p_par: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    p_perp: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    delta: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    b: Option<f64>,
    #[arg(long)]
    n: Option<u32>,
    /// Emit SI values (J, kg m/s, T) for the given particle
    #[arg(long)]
    si: bool,
    #[command(flatten)]
    particle: ParticleArgs,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum LimitRegime {
    Low,
    High,
}

#[derive(Debug, Subcommand)]
enum LimitsTarget {
    Neutral {
        #[arg(long, value_enum)]
        regime: LimitRegime,
        /// Comma-separated list of longitudinal momenta
        #[arg(long, value_delimiter = ',', required = true)]
        p_par: Vec<f64>,
        #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
        p_perp: f64,
        #[arg(long, allow_hyphen_values = true)]
        delta: f64,
    },
    Charged {
        #[arg(long, value_enum)]
        regime: LimitRegime,
        #[arg(long, value_delimiter = ',', required = true)]
        p_par: Vec<f64>,
        /// Comma-separated list of field parameters
        #[arg(long, value_delimiter = ',', required = true)]
        b: Vec<f64>,
        #[arg(long, default_value_t = 0)]
        n: u32,
    },
}

#[derive(Debug, Args)]
struct VerifyArgs {
    /// dirac or landau
    #[arg(long)]
    kind: String,
    #[arg(long, default_value_t = 1000)]
    samples: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long)]
    tol: f64,
    /// Also print the worst-case sample
    #[arg(long)]
    dump: bool,
}

#[derive(Debug, Args)]
struct ConvertArgs {
    #[command(flatten)]
    particle: ParticleArgs,
    /// Electric field [V/m]
    #[arg(long, allow_hyphen_values = true)]
    e_field: Option<f64>,
    /// Magnetic field [T]
    #[arg(long, allow_hyphen_values = true)]
    b_tesla: Option<f64>,
    /// Energy [mc^2] to express in joules
    #[arg(long, allow_hyphen_values = true)]
    energy: Option<f64>,
    /// Momentum [mc] to express in kg m/s
    #[arg(long, allow_hyphen_values = true)]
    momentum: Option<f64>,
    /// Splitting [mc^2] to express as a Larmor frequency
    #[arg(long, allow_hyphen_values = true)]
    splitting: Option<f64>,
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Domain(Error),
    Verification(String),
    Io(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Domain(e)
    }
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Domain(_) | CliError::Io(_) => EXIT_DOMAIN,
            CliError::Verification(_) => EXIT_VERIFY,
        }
    }

    fn line(&self) -> String {
        match self {
            CliError::Usage(m) => format!("error:usage: {m}"),
            CliError::Domain(e) => format!("error:{}: {e}", e.category()),
            CliError::Verification(m) => format!("error:verification-failed: {m}"),
            CliError::Io(m) => format!("error:io: {m}"),
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

/// Parses `args` (including the program name), runs the command, and returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            if code == EXIT_OK {
                let _ = stdout.write_all(text.as_bytes());
            } else {
                let first = text.lines().next().unwrap_or("invalid arguments");
                let first = first.strip_prefix("error: ").unwrap_or(first);
                let _ = writeln!(stderr, "error:usage: {first}");
            }
            return code;
        }
    };

    let mut out = String::new();
    let result = dispatch(&cli.command, &mut out);
    // Verification failures still print their report.
    if result.is_ok() || matches!(result, Err(CliError::Verification(_))) {
        if let Err(e) = emit(cli.out.as_ref(), &out, stdout) {
            let _ = writeln!(stderr, "{}", e.line());
            return e.exit_code();
        }
    }
    match result {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(stderr, "{}", e.line());
            e.exit_code()
        }
    }
}

fn emit(path: Option<&PathBuf>, text: &str, stdout: &mut dyn Write) -> CliResult<()> {
    match path {
        Some(p) => {
            std::fs::write(p, text).map_err(|e| CliError::Io(format!("{}: {e}", p.display())))
        }
        None => stdout
            .write_all(text.as_bytes())
            .map_err(|e| CliError::Io(e.to_string())),
    }
}

fn dispatch(cmd: &Command, out: &mut String) -> CliResult<()> {
    match cmd {
        Command::Eval { target } => eval(target, out),
        Command::Sweep(args) => sweep_cmd(args, out),
        Command::Limits { target } => limits(target, out),
        Command::Verify(args) => verify(args, out),
        Command::Convert(args) => convert(args, out),
    }
}

fn line(out: &mut String, key: &str, value: f64) {
    let _ = writeln!(out, "{key}: {}", format_number(value));
}

fn resolve_particle(args: &ParticleArgs) -> CliResult<Option<ParticleSpec>> {
    let Some(name) = args.particle.as_deref() else {
        if args.mass.is_some() || args.charge.is_some() || args.mdm.is_some() || args.edm.is_some()
        {
            return Err(CliError::Usage(
                "--mass/--charge/--mdm/--edm need --particle custom".into(),
            ));
        }
        return Ok(None);
    };
    if name.eq_ignore_ascii_case("custom") {
        let mass = args
            .mass
            .ok_or_else(|| CliError::Usage("--particle custom needs --mass".into()))?;
        let spec = ParticleSpec::new(
            "custom",
            mass,
            args.charge.unwrap_or(0.0),
            args.mdm.unwrap_or(0.0),
            args.edm.unwrap_or(0.0),
        )?;
        return Ok(Some(spec));
    }
    if args.mass.is_some() || args.charge.is_some() || args.mdm.is_some() || args.edm.is_some() {
        return Err(CliError::Usage(format!(
            "preset {name:?} cannot be combined with custom particle parameters"
        )));
    }
    let preset: Preset = name.parse().map_err(|_| {
        CliError::Usage(format!(
            "unknown particle {name:?}; expected electron, proton, neutron, muon, or custom"
        ))
    })?;
    Ok(Some(preset.spec()))
}

/// Particle and fields for `--si`, or `None` in natural-unit mode.
fn si_context(si: &SiArgs) -> CliResult<Option<(ParticleSpec, FieldSpec)>> {
    let particle = resolve_particle(&si.particle)?;
    if !si.si {
        if particle.is_some() || si.e_field != 0.0 || si.b_tesla != 0.0 {
            return Err(CliError::Usage(
                "--particle, --e-field and --b-tesla need --si".into(),
            ));
        }
        return Ok(None);
    }
    let particle = particle.ok_or_else(|| CliError::Usage("--si needs --particle".into()))?;
    let fields = FieldSpec::new(si.e_field, si.b_tesla)?;
    Ok(Some((particle, fields)))
}

fn eval(target: &EvalTarget, out: &mut String) -> CliResult<()> {
    match target {
        EvalTarget::Neutral {
            p_par,
            p_perp,
            delta,
            si,
        } => {
            let ctx = si_context(si)?;
            let delta = match &ctx {
                Some((p, f)) => units::delta_from_fields(p, f)?.value,
                None => *delta,
            };
            let cfg = NeutralConfig::new(*p_par, *p_perp, delta)?;
            let ev = neutral::eigenvalues(&cfg);
            let split = neutral::splitting(&cfg);
            line(out, "splitting", split.splitting);
            let _ = writeln!(out, "regime: {}", split.regime);
            line(out, "threshold", split.threshold);
            line(out, "delta", cfg.delta);
            line(out, "e_plus_up", ev.e_plus_up);
            line(out, "e_plus_down", ev.e_plus_down);
            line(out, "e_minus_up", ev.e_minus_up);
            line(out, "e_minus_down", ev.e_minus_down);
            if let Some((p, _)) = &ctx {
                line(
                    out,
                    "splitting_J",
                    units::to_si_energy(NaturalValue::energy(split.splitting)?, p)?,
                );
                line(
                    out,
                    "larmor_rad_per_s",
                    units::larmor_frequency(split.splitting, p),
                );
            }
        }
        EvalTarget::Charged { p_par, b, n, si } => {
            let ctx = si_context(si)?;
            let b = match &ctx {
                Some((p, f)) => units::b_param(p, f)?.value,
                None => *b,
            };
            let cfg = ChargedConfig::new(*p_par, b, *n)?;
            let split = charged::splitting(&cfg);
            let nonrel = charged::splitting_nonrel(&cfg);
            line(out, "splitting", split.splitting);
            line(out, "nonrel", nonrel);
            line(out, "b", cfg.b);
            line(out, "level_up", split.level_up);
            line(out, "level_down", split.level_down);
            if let Some((p, _)) = &ctx {
                line(
                    out,
                    "splitting_J",
                    units::to_si_energy(NaturalValue::energy(split.splitting)?, p)?,
                );
                line(
                    out,
                    "larmor_rad_per_s",
                    units::larmor_frequency(split.splitting, p),
                );
                line(
                    out,
                    "nonrel_larmor_rad_per_s",
                    units::larmor_frequency(nonrel, p),
                );
            }
        }
    }
    Ok(())
}

fn parse_range(text: &str) -> CliResult<GridRange> {
    let parts: Vec<&str> = text.split(':').collect();
    let bad = || CliError::Usage(format!("--range {text:?}: expected start:stop:steps"));
    if parts.len() != 3 {
        return Err(bad());
    }
    let start: f64 = parts[0].trim().parse().map_err(|_| bad())?;
    let stop: f64 = parts[1].trim().parse().map_err(|_| bad())?;
    let steps: usize = parts[2].trim().parse().map_err(|_| bad())?;
    Ok(GridRange::new(start, stop, steps)?)
}

fn parse_curve(text: &str) -> CliResult<Curve> {
    let overrides = text
        .split(',')
        .map(|kv| {
            let (k, v) = kv.split_once('=').ok_or_else(|| {
                CliError::Usage(format!("--curve {text:?}: expected k=v[,k=v]..."))
            })?;
            let param: Param = k.trim().parse().map_err(|_| {
                CliError::Usage(format!("--curve {text:?}: unknown parameter {k:?}"))
            })?;
            let value: f64 = v
                .trim()
                .parse()
                .map_err(|_| CliError::Usage(format!("--curve {text:?}: bad number {v:?}")))?;
            Ok((param, value))
        })
        .collect::<CliResult<Vec<_>>>()?;
    Ok(Curve {
        label: text.replace(',', ";"),
        overrides,
    })
}

fn sweep_cmd(args: &SweepArgs, out: &mut String) -> CliResult<()> {
    let particle = resolve_particle(&args.particle)?;
    if args.si && particle.is_none() {
        return Err(CliError::Usage("--si needs --particle".into()));
    }
    if !args.si && particle.is_some() {
        return Err(CliError::Usage("--particle needs --si".into()));
    }
    let spec = if let Some(fig) = &args.figure {
        let base_flags = [args.p_par, args.p_perp, args.delta, args.b];
        if base_flags.iter().any(Option::is_some) || args.n.is_some() {
            return Err(CliError::Usage("--figure fixes every parameter".into()));
        }
        let fig: Figure = fig
            .parse()
            .map_err(|_| CliError::Usage(format!("unknown figure {fig:?}; expected fig1..fig4")))?;
        figure_preset(fig)
    } else {
        let var = args
            .var
            .as_deref()
            .ok_or_else(|| CliError::Usage("sweep needs --figure or --var/--range".into()))?;
        let variable: Param = var
            .parse()
            .map_err(|_| CliError::Usage(format!("unknown sweep variable {var:?}")))?;
        let range = parse_range(args.range.as_deref().unwrap_or_default())?;
        let curves = if args.curve.is_empty() {
            vec![Curve {
                label: "splitting".into(),
                overrides: Vec::new(),
            }]
        } else {
            args.curve
                .iter()
                .map(|c| parse_curve(c))
                .collect::<CliResult<Vec<_>>>()?
        };
        let charged_keys = variable == Param::B
            || args.b.is_some()
            || args.n.is_some()
            || curves
                .iter()
                .flat_map(|c| &c.overrides)
                .any(|(p, _)| matches!(p, Param::B | Param::N));
        let base = if charged_keys {
            if args.delta.is_some() || args.p_perp.is_some() {
                return Err(CliError::Usage(
                    "--delta/--p-perp do not apply to a charged sweep".into(),
                ));
            }
            BaseConfig::Charged(ChargedConfig {
                p_par: args.p_par.unwrap_or(0.0),
                b: args.b.unwrap_or(0.0),
                n: args.n.unwrap_or(0),
            })
        } else {
            BaseConfig::Neutral(NeutralConfig {
                p_par: args.p_par.unwrap_or(0.0),
                p_perp: args.p_perp.unwrap_or(0.0),
                delta: args.delta.unwrap_or(0.0),
            })
        };
        SweepSpec {
            variable,
            range,
            curves,
            base,
        }
    };
    spec.validate()?;
    let mut table = sweep::run_sweep(&spec)?;
    if let Some(p) = &particle {
        table = table.to_si(p)?;
    }
    out.push_str(&sweep::to_csv(&table));
    Ok(())
}

fn rel_error(exact: f64, approx: f64) -> f64 {
    if exact == approx {
        0.0
    } else {
        ((approx - exact) / exact).abs()
    }
}

fn limits(target: &LimitsTarget, out: &mut String) -> CliResult<()> {
    match target {
        LimitsTarget::Neutral {
            regime,
            p_par,
            p_perp,
            delta,
        } => {
            let cfgs = p_par
                .iter()
                .map(|&p| NeutralConfig::new(p, *p_perp, *delta))
                .collect::<Result<Vec<_>, _>>()?;
            out.push_str("p_par,exact,approx,rel_error\n");
            for cfg in cfgs {
                let exact = neutral::splitting(&cfg).splitting;
                let approx = match regime {
                    LimitRegime::Low => neutral::splitting_low_speed(&cfg)?,
                    LimitRegime::High => neutral::splitting_high_speed(&cfg)?,
                };
                let _ = writeln!(
                    out,
                    "{},{},{},{}",
                    format_number(cfg.p_par),
                    format_number(exact),
                    format_number(approx),
                    format_number(rel_error(exact, approx))
                );
            }
        }
        LimitsTarget::Charged {
            regime,
            p_par,
            b,
            n,
        } => {
            let cfgs = p_par
                .iter()
                .flat_map(|&p| b.iter().map(move |&b| (p, b)))
                .map(|(p, b)| ChargedConfig::new(p, b, *n))
                .collect::<Result<Vec<_>, _>>()?;
            out.push_str("p_par,b,exact,approx,rel_error\n");
            for cfg in cfgs {
                let exact = charged::splitting(&cfg).splitting;
                let approx = match regime {
                    LimitRegime::Low => charged::splitting_low_field(&cfg),
                    LimitRegime::High => charged::splitting_high_speed(&cfg)?,
                };
                let _ = writeln!(
                    out,
                    "{},{},{},{},{}",
                    format_number(cfg.p_par),
                    format_number(cfg.b),
                    format_number(exact),
                    format_number(approx),
                    format_number(rel_error(exact, approx))
                );
            }
        }
    }
    Ok(())
}

fn verify(args: &VerifyArgs, out: &mut String) -> CliResult<()> {
    let kind: VerifyKind = args.kind.parse().map_err(|_| {
        CliError::Usage(format!(
            "unknown --kind {:?}; expected dirac or landau",
            args.kind
        ))
    })?;
    if args.samples == 0 {
        return Err(CliError::Usage("--samples must be at least 1".into()));
    }
    if !(args.tol.is_finite() && args.tol >= 0.0) {
        return Err(CliError::Usage(format!(
            "--tol must be a non-negative number, got {}",
            args.tol
        )));
    }
    let report = run_verification(kind, args.samples, args.seed, args.tol)?;
    let _ = writeln!(out, "{}", report.summary());
    if args.dump {
        if let Some(w) = &report.worst {
            let _ = write!(out, "worst index={}", w.index);
            for (k, v) in &w.params {
                let _ = write!(out, " {k}={}", format_number(*v));
            }
            let _ = writeln!(
                out,
                " closed_form={} oracle={} rel_error={}",
                format_number(w.closed_form),
                format_number(w.oracle),
                format_number(w.rel_error)
            );
        }
    }
    if report.pass {
        Ok(())
    } else {
        Err(CliError::Verification(format!(
            "max relative error {:e} exceeds {:e}",
            report.max_rel_error, report.tolerance
        )))
    }
}

fn convert(args: &ConvertArgs, out: &mut String) -> CliResult<()> {
    let p = resolve_particle(&args.particle)?
        .ok_or_else(|| CliError::Usage("convert needs --particle".into()))?;
    let _ = writeln!(out, "particle: {}", p.name);
    line(out, "rest_energy_J", p.rest_energy());
    line(out, "momentum_unit_kg_m_per_s", p.momentum_unit());
    if let Some(crit) = p.critical_field() {
        line(out, "critical_field_T", crit);
    }
    if args.e_field.is_some() || args.b_tesla.is_some() {
        let f = FieldSpec::new(args.e_field.unwrap_or(0.0), args.b_tesla.unwrap_or(0.0))?;
        line(out, "delta", units::delta_from_fields(&p, &f)?.value);
        if p.charge != 0.0 {
            line(out, "b", units::b_param(&p, &f)?.value);
        }
    }
    if let Some(e) = args.energy {
        line(
            out,
            "energy_J",
            units::to_si_energy(NaturalValue::energy(e)?, &p)?,
        );
    }
    if let Some(m) = args.momentum {
        line(
            out,
            "momentum_kg_m_per_s",
            units::to_si_momentum(NaturalValue::momentum(m)?, &p)?,
        );
    }
    if let Some(s) = args.splitting {
        NaturalValue::energy(s)?;
        line(out, "larmor_rad_per_s", units::larmor_frequency(s, &p));
    }
    Ok(())
}
