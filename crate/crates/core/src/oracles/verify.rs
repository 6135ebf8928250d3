//! Seeded comparison of closed forms against the oracles.

use std::fmt;
use std::str::FromStr;

use super::dirac::neutral_oracle;
use super::landau::{landau_oracle, DEFAULT_BOX_HALFWIDTH, DEFAULT_GRID_POINTS};
use super::rng::SplitMix64;
use crate::charged::{self, ChargedConfig};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::neutral::{self, NeutralConfig};

/// Closed-form neutral spectrum, ascending.
pub type DiracClosedForm = fn(&NeutralConfig) -> [f64; 4];
/// Closed-form relativistic Landau level `E_n^σ`.
pub type LandauClosedForm = fn(&ChargedConfig, i32) -> Result<f64>;

const LANDAU_N_MAX: u32 = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VerifyKind {
    Dirac,
    Landau,
}

impl FromStr for VerifyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dirac" => Ok(VerifyKind::Dirac),
            "landau" => Ok(VerifyKind::Landau),
            other => Err(Error::InvalidInput(format!(
                "unknown verification kind {other:?}"
            ))),
        }
    }
}

impl fmt::Display for VerifyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            VerifyKind::Dirac => "dirac",
            VerifyKind::Landau => "landau",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct WorstSample {
    pub index: usize,
    /// `(name, value)` pairs describing the drawn parameters.
    pub params: Vec<(&'static str, f64)>,
    pub closed_form: f64,
    pub oracle: f64,
    pub rel_error: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleReport {
    pub kind: VerifyKind,
    pub samples: usize,
    pub max_rel_error: f64,
    pub tolerance: f64,
    pub pass: bool,
    pub seed: u64,
    pub worst: Option<WorstSample>,
}

impl OracleReport {
    fn from_worst(
        kind: VerifyKind,
        samples: usize,
        seed: u64,
        tolerance: f64,
        worst: WorstSample,
    ) -> Self {
        let max_rel_error = worst.rel_error;
        OracleReport {
            kind,
            samples,
            max_rel_error,
            tolerance,
            pass: max_rel_error <= tolerance,
            seed,
            worst: Some(worst),
        }
    }

    /// One-line summary, e.g. `verify dirac samples=1000 seed=42 max_rel_error=... tol=... PASS`.
    pub fn summary(&self) -> String {
        format!(
            "verify {} samples={} seed={} max_rel_error={:.8e} tol={:.8e} {}",
            self.kind,
            self.samples,
            self.seed,
            self.max_rel_error,
            self.tolerance,
            if self.pass { "PASS" } else { "FAIL" }
        )
    }
}

fn rel_error(value: f64, reference: f64) -> f64 {
    let diff = (value - reference).abs();
    if diff == 0.0 {
        0.0
    } else {
        diff / reference.abs()
    }
}

/// Largest error wins; ties go to the lowest sample index, so the result
/// does not depend on evaluation order.
fn worst_of(samples: Vec<WorstSample>) -> WorstSample {
    samples
        .into_iter()
        .reduce(|a, b| {
            if b.rel_error.total_cmp(&a.rel_error).is_gt() {
                b
            } else {
                a
            }
        })
        .expect("at least one sample")
}

fn check_samples(samples: usize) -> Result<()> {
    if samples == 0 {
        Err(Error::InvalidInput("samples must be at least 1".into()))
    } else {
        Ok(())
    }
}

fn closed_form_spectrum(cfg: &NeutralConfig) -> [f64; 4] {
    neutral::eigenvalues(cfg).sorted()
}

pub fn run_verification(
    kind: VerifyKind,
    samples: usize,
    seed: u64,
    tol: f64,
) -> Result<OracleReport> {
    run_verification_with(kind, samples, seed, tol, Execution::default())
}

pub fn run_verification_with(
    kind: VerifyKind,
    samples: usize,
    seed: u64,
    tol: f64,
    exec: Execution,
) -> Result<OracleReport> {
    match kind {
        VerifyKind::Dirac => run_dirac_verification(samples, seed, tol, exec, closed_form_spectrum),
        VerifyKind::Landau => {
            run_landau_verification(samples, seed, tol, exec, charged::landau_level)
        }
    }
}

/// `p∥, p⊥, δ` uniform in `[0, 5)`; compares every sorted eigenvalue.
pub fn run_dirac_verification(
    samples: usize,
    seed: u64,
    tol: f64,
    exec: Execution,
    closed_form: DiracClosedForm,
) -> Result<OracleReport> {
    check_samples(samples)?;
    let mut rng = SplitMix64::new(seed);
    let configs: Vec<(usize, NeutralConfig)> = (0..samples)
        .map(|i| {
            let p_par = rng.uniform(0.0, 5.0);
            let p_perp = rng.uniform(0.0, 5.0);
            let delta = rng.uniform(0.0, 5.0);
            (
                i,
                NeutralConfig {
                    p_par,
                    p_perp,
                    delta,
                },
            )
        })
        .collect();
    let results =
        exec.map(&configs, |(i, cfg)| -> Result<WorstSample> {
            let oracle = neutral_oracle(cfg)?;
            let closed = closed_form(cfg);
            let (k, err) = (0..4).map(|k| (k, rel_error(closed[k], oracle[k]))).fold(
                (0, -1.0),
                |best, cur| if cur.1 > best.1 { cur } else { best },
            );
            Ok(WorstSample {
                index: *i,
                params: vec![
                    ("p_par", cfg.p_par),
                    ("p_perp", cfg.p_perp),
                    ("delta", cfg.delta),
                ],
                closed_form: closed[k],
                oracle: oracle[k],
                rel_error: err,
            })
        });
    let results = results.into_iter().collect::<Result<Vec<_>>>()?;
    Ok(OracleReport::from_worst(
        VerifyKind::Dirac,
        samples,
        seed,
        tol,
        worst_of(results),
    ))
}

/// `p∥ ∈ [0, 5)`, `b ∈ [0.01, 2)`, `n ∈ 0..=5`, random `σ`; the oracle level is
/// `√(1 + p∥² + (λ_n + σ)b)` with `λ_n` from the default grid.
pub fn run_landau_verification(
    samples: usize,
    seed: u64,
    tol: f64,
    exec: Execution,
    closed_form: LandauClosedForm,
) -> Result<OracleReport> {
    check_samples(samples)?;
    let ladder = landau_oracle(
        LANDAU_N_MAX as usize,
        DEFAULT_GRID_POINTS,
        DEFAULT_BOX_HALFWIDTH,
    )?;
    let mut rng = SplitMix64::new(seed);
    let draws: Vec<(usize, ChargedConfig, i32)> = (0..samples)
        .map(|i| {
            let p_par = rng.uniform(0.0, 5.0);
            let b = rng.uniform(0.01, 2.0);
            let n = rng.below(u64::from(LANDAU_N_MAX) + 1) as u32;
            let sigma = if rng.next_u64() & 1 == 0 { -1 } else { 1 };
            (i, ChargedConfig { p_par, b, n }, sigma)
        })
        .collect();
    let results = exec.map(&draws, |(i, cfg, sigma)| -> Result<WorstSample> {
        let lambda = ladder[cfg.n as usize];
        let oracle = (1.0 + cfg.p_par * cfg.p_par + (lambda + f64::from(*sigma)) * cfg.b).sqrt();
        let closed = closed_form(cfg, *sigma)?;
        Ok(WorstSample {
            index: *i,
            params: vec![
                ("p_par", cfg.p_par),
                ("b", cfg.b),
                ("n", f64::from(cfg.n)),
                ("sigma", f64::from(*sigma)),
            ],
            closed_form: closed,
            oracle,
            rel_error: rel_error(closed, oracle),
        })
    });
    let results = results.into_iter().collect::<Result<Vec<_>>>()?;
    Ok(OracleReport::from_worst(
        VerifyKind::Landau,
        samples,
        seed,
        tol,
        worst_of(results),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_samples_rejected() {
        assert!(matches!(
            run_verification(VerifyKind::Dirac, 0, 1, 1e-12),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn dirac_suite_passes() {
        let r = run_verification(VerifyKind::Dirac, 1000, 42, 1e-12).unwrap();
        assert!(r.pass, "{}", r.summary());
        assert_eq!(r.samples, 1000);
    }

    #[test]
    fn landau_suite_passes() {
        let r = run_verification(VerifyKind::Landau, 100, 7, 1e-3).unwrap();
        assert!(r.pass, "{}", r.summary());
    }

    #[test]
    fn deterministic_across_execution_modes() {
        for kind in [VerifyKind::Dirac, VerifyKind::Landau] {
            let a = run_verification_with(kind, 200, 9, 1e-3, Execution::Sequential).unwrap();
            let b = run_verification_with(kind, 200, 9, 1e-3, Execution::Parallel).unwrap();
            let c = run_verification_with(kind, 200, 9, 1e-3, Execution::Parallel).unwrap();
            assert_eq!(a, b);
            assert_eq!(b, c);
            assert_eq!(a.max_rel_error.to_bits(), b.max_rel_error.to_bits());
        }
    }

    fn corrupted_spectrum(cfg: &NeutralConfig) -> [f64; 4] {
        // rest energy off by one part in 1e9
        let t = 1.000_000_001 * 1.0f64.hypot(cfg.p_perp);
        let up = cfg.p_par.hypot(t + cfg.delta);
        let down = cfg.p_par.hypot(t - cfg.delta);
        let mut v = [-up, -down, down, up];
        v.sort_by(f64::total_cmp);
        v
    }

    fn corrupted_level(cfg: &ChargedConfig, sigma: i32) -> Result<f64> {
        let k = 2.0 * f64::from(cfg.n) + 1.5 + f64::from(sigma);
        Ok((1.0 + cfg.p_par * cfg.p_par + k * cfg.b).sqrt())
    }

    #[test]
    fn corrupted_closed_forms_fail() {
        let r = run_dirac_verification(1000, 42, 1e-12, Execution::default(), corrupted_spectrum)
            .unwrap();
        assert!(!r.pass);
        let r =
            run_landau_verification(100, 7, 1e-3, Execution::default(), corrupted_level).unwrap();
        assert!(!r.pass);
    }

    #[test]
    fn summary_line() {
        let r = run_verification(VerifyKind::Dirac, 3, 1, 1e-12).unwrap();
        let s = r.summary();
        assert!(s.starts_with("verify dirac samples=3 seed=1 max_rel_error="));
        assert!(s.ends_with("PASS"));
        assert!(!s.contains('\n'));
    }
}
