//! Acceptance suite: one line per criterion, non-zero exit if any fails.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use spinsplit::charged::{self, ChargedConfig};
use spinsplit::neutral::{self, NeutralConfig, Regime};
use spinsplit::oracles::{
    convergence_order, landau_oracle, run_verification, VerifyKind, DEFAULT_BOX_HALFWIDTH,
    DEFAULT_GRID_POINTS,
};
use spinsplit::sweep::parse_csv;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ncfg(p_par: f64, p_perp: f64, delta: f64) -> NeutralConfig {
    NeutralConfig::new(p_par, p_perp, delta).unwrap()
}

fn ccfg(p_par: f64, b: f64, n: u32) -> ChargedConfig {
    ChargedConfig::new(p_par, b, n).unwrap()
}

fn c1_oracle_equivalence() -> Outcome {
    let start = Instant::now();
    let r = run_verification(VerifyKind::Dirac, 1000, 42, 1e-12).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    ensure(r.pass, || r.summary())?;
    ensure(elapsed < Duration::from_secs(1), || {
        format!("took {elapsed:?}")
    })?;
    Ok(format!(
        "max_rel_error={:.3e} in {elapsed:?}",
        r.max_rel_error
    ))
}

fn c2_one_dimensional_reduction() -> Outcome {
    let close = |a: f64, b: f64| (a - b).abs() <= 1e-14 * b.abs().max(1.0);
    for &p in &[0.0, 0.01, 0.3, 1.0, 7.0] {
        for &d in &[0.1, 0.3, 0.9, 1.5, 4.0] {
            let c = ncfg(p, 0.0, d);
            let ev = neutral::eigenvalues(&c);
            let up = (p * p + (1.0 + d) * (1.0 + d)).sqrt();
            let down = (p * p + (1.0 - d) * (1.0 - d)).sqrt();
            ensure(
                close(ev.e_plus_up, up) && close(ev.e_plus_down, down),
                || format!("eigenvalues at p={p}, delta={d}"),
            )?;
            ensure(close(neutral::splitting(&c).splitting, up - down), || {
                format!("splitting at p={p}, delta={d}")
            })?;
            if p > 0.0 {
                let high = 2.0 * d / p;
                ensure(
                    close(neutral::splitting_high_speed(&c).unwrap(), high),
                    || format!("high-speed form at p={p}, delta={d}"),
                )?;
            }
            let rest = (1.0f64 + d).abs() - (1.0f64 - d).abs();
            let low = rest * (1.0 - p * p / (2.0 * (1.0 - d * d).abs()));
            ensure(
                close(neutral::splitting_low_speed(&c).unwrap(), low),
                || format!("low-speed form at p={p}, delta={d}"),
            )?;
        }
    }
    for &d in &[1.0, 2.0, 10.0] {
        let rest = neutral::splitting_at_rest(0.0, d).splitting;
        ensure((rest - 2.0).abs() <= 2.0 * f64::EPSILON, || {
            format!("rest splitting {rest} at delta={d}")
        })?;
        let full = neutral::splitting(&ncfg(0.0, 0.0, d)).splitting;
        ensure((full - 2.0).abs() <= 4.0 * f64::EPSILON, || {
            format!("splitting {full} at delta={d}")
        })?;
    }
    Ok("1D forms reproduced; rest splitting saturates at 2".into())
}

fn c3_regime_law() -> Outcome {
    let mut checked = 0;
    for &q in &[0.0, 1.0] {
        let t = (1.0f64 + q * q).sqrt();
        for i in 0..200 {
            let d = 3.0 * i as f64 / 199.0;
            let r = neutral::splitting_at_rest(q, d);
            let (expect, regime) = if d < t {
                (2.0 * d, Regime::Linear)
            } else {
                (2.0 * t, Regime::Saturated)
            };
            ensure((r.splitting - expect).abs() <= 1e-14, || {
                format!("p_perp={q}, delta={d}: {} vs {expect}", r.splitting)
            })?;
            ensure(r.regime == regime, || {
                format!("p_perp={q}, delta={d}: regime {}", r.regime)
            })?;
            ensure(neutral::regime(&ncfg(0.0, q, d)) == regime, || {
                format!("regime op at delta={d}")
            })?;
            checked += 1;
        }
    }
    Ok(format!("{checked} points"))
}

fn c4_low_speed_order() -> Outcome {
    let err = |p: f64| {
        let c = ncfg(p, 0.5, 0.3);
        (neutral::splitting(&c).splitting - neutral::splitting_low_speed(&c).unwrap()).abs()
    };
    let ratio = err(1e-2) / err(1e-3);
    ensure((5e3..=2e4).contains(&ratio), || {
        format!("ratio {ratio:.4e}")
    })?;
    Ok(format!("error ratio {ratio:.4e}"))
}

fn c5_high_speed_limits() -> Outcome {
    let mut worst: f64 = 0.0;
    for (p, tol) in [(100.0, 1e-3), (1000.0, 1e-5)] {
        for q in [0.0, 1.0] {
            let c = ncfg(p, q, 0.3);
            let rel = (neutral::splitting_high_speed(&c).unwrap()
                / neutral::splitting(&c).splitting
                - 1.0)
                .abs();
            ensure(rel <= tol, || format!("neutral p={p}, p_perp={q}: {rel:e}"))?;
            worst = worst.max(rel / tol);
        }
        for n in [0, 5] {
            let c = ccfg(p, 0.1, n);
            let rel = (charged::splitting_high_speed(&c).unwrap()
                / charged::splitting(&c).splitting
                - 1.0)
                .abs();
            ensure(rel <= tol, || format!("charged p={p}, n={n}: {rel:e}"))?;
            worst = worst.max(rel / tol);
        }
    }
    Ok(format!("worst error/threshold {worst:.3}"))
}

fn c6_monotonicity_grid() -> Outcome {
    let h = 1e-6;
    let mut worst: f64 = 0.0;
    for i in 1..=20 {
        let p = 3.0 * i as f64 / 20.0;
        for j in 1..=20 {
            let q = 3.0 * j as f64 / 20.0;
            for d in [0.1, 0.3, 0.5, 0.7, 0.9] {
                let (gp, gq) =
                    neutral::splitting_gradient(&ncfg(p, q, d)).map_err(|e| e.to_string())?;
                ensure(gp < 0.0 && gq > 0.0, || {
                    format!("signs at ({p}, {q}, {d}): {gp}, {gq}")
                })?;
                let s = |a: f64, b: f64| neutral::splitting(&ncfg(a, b, d)).splitting;
                let fp = (s(p + h, q) - s(p - h, q)) / (2.0 * h);
                let fq = (s(p, q + h) - s(p, q - h)) / (2.0 * h);
                let ep = ((gp - fp) / fp).abs();
                let eq = ((gq - fq) / fq).abs();
                ensure(ep <= 1e-6 && eq <= 1e-6, || {
                    format!("finite differences at ({p}, {q}, {d}): {ep:e}, {eq:e}")
                })?;
                worst = worst.max(ep).max(eq);
            }
        }
    }
    Ok(format!("2000 points, worst FD mismatch {worst:.3e}"))
}

fn c7_landau_ladder() -> Outcome {
    for b in [0.05, 0.5, 2.0] {
        for p in [0.0, 0.2, 1.0] {
            let seq: Vec<f64> = (0..=10)
                .map(|n| charged::splitting(&ccfg(p, b, n)).splitting)
                .collect();
            ensure(seq.windows(2).all(|w| w[1] < w[0]), || {
                format!("not decreasing at b={b}, p={p}")
            })?;
            ensure(seq.iter().all(|&s| s < b), || {
                format!("exceeds nonrelativistic value at b={b}, p={p}")
            })?;
        }
    }
    Ok("strict red shift over n = 0..10 on 9 (b, p) pairs".into())
}

fn c8_low_field_expansion() -> Outcome {
    let mut notes = Vec::new();
    for n in [0u32, 1, 3] {
        let err = |b: f64| {
            let c = ccfg(0.0, b, n);
            (charged::splitting(&c).splitting - charged::splitting_low_field(&c)).abs()
        };
        let ratio = err(1e-3) / err(1e-4);
        ensure((500.0..=2000.0).contains(&ratio), || {
            format!("n={n}: ratio {ratio:.4e}")
        })?;
        let coeff = |b: f64| (charged::splitting(&ccfg(0.0, b, n)).splitting - b) / (b * b);
        let b = 1e-3;
        let fitted = 2.0 * coeff(b / 2.0) - coeff(b);
        let expected = -(2.0 * f64::from(n) + 1.0) / 2.0;
        let rel = ((fitted - expected) / expected).abs();
        ensure(rel <= 0.01, || {
            format!("n={n}: b^2 coefficient {fitted} vs {expected}")
        })?;
        notes.push(format!("n={n}: ratio {ratio:.1}, c2 {fitted:.6}"));
    }
    Ok(notes.join("; "))
}

fn c9_landau_oracle() -> Outcome {
    let lambda =
        landau_oracle(5, DEFAULT_GRID_POINTS, DEFAULT_BOX_HALFWIDTH).map_err(|e| e.to_string())?;
    let mut worst: f64 = 0.0;
    for (n, l) in lambda.iter().enumerate() {
        let dev = (l - (2 * n + 1) as f64).abs();
        ensure(dev <= 1e-3, || format!("lambda_{n} = {l}"))?;
        worst = worst.max(dev);
        let order = convergence_order(n, DEFAULT_GRID_POINTS, DEFAULT_BOX_HALFWIDTH)
            .map_err(|e| e.to_string())?;
        ensure((1.8..=2.2).contains(&order), || {
            format!("order {order} for n={n}")
        })?;
    }
    for p in [0.0, 0.2, 1.0] {
        for b in [0.05, 0.5, 2.0] {
            for n in 0..=5u32 {
                for sigma in [-1, 1] {
                    let c = ccfg(p, b, n);
                    let closed = charged::landau_level(&c, sigma).unwrap();
                    let oracle = (1.0 + p * p + (lambda[n as usize] + f64::from(sigma)) * b).sqrt();
                    // |dE| = |dλ| b / (2E), with |dλ| ≤ 1e-3
                    let tol = 1e-3 * b / (2.0 * closed.min(oracle));
                    ensure((closed - oracle).abs() <= tol, || {
                        format!("E at p={p}, b={b}, n={n}, sigma={sigma}: {closed} vs {oracle}")
                    })?;
                }
            }
        }
    }
    Ok(format!("max |lambda_n - (2n+1)| = {worst:.3e}"))
}

fn sweep_figure(fig: &str) -> Result<(String, Duration), String> {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_spinsplit"))
        .args(["sweep", "--figure", fig])
        .output()
        .map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    ensure(out.status.success(), || {
        format!("{fig}: exit {:?}", out.status)
    })?;
    Ok((
        String::from_utf8(out.stdout).map_err(|e| e.to_string())?,
        elapsed,
    ))
}

fn columns(csv: &str) -> Result<(Vec<String>, Vec<Vec<f64>>), String> {
    let parsed = parse_csv(csv).map_err(|e| e.to_string())?;
    let cols = (0..parsed.header.len())
        .map(|k| parsed.rows.iter().map(|r| r[k]).collect())
        .collect();
    Ok((parsed.header, cols))
}

fn non_decreasing(v: &[f64]) -> bool {
    v.windows(2).all(|w| w[1] >= w[0])
}

fn c10_figures() -> Outcome {
    let mut slowest = Duration::ZERO;
    for fig in ["fig1", "fig2", "fig3", "fig4"] {
        let (a, t1) = sweep_figure(fig)?;
        let (b, t2) = sweep_figure(fig)?;
        ensure(a == b, || format!("{fig} output differs between runs"))?;
        ensure(
            t1 < Duration::from_secs(1) && t2 < Duration::from_secs(1),
            || format!("{fig} took {t1:?}/{t2:?}"),
        )?;
        slowest = slowest.max(t1).max(t2);
        let (header, cols) = columns(&a)?;
        let curves = &cols[1..];
        match fig {
            "fig1" => {
                let perps = [0.0f64, 0.5, 1.0, 1.5];
                for (col, q) in curves.iter().zip(perps) {
                    ensure(non_decreasing(col), || {
                        format!("fig1 p_perp={q} not monotone")
                    })?;
                    let cap = 2.0 * (1.0 + q * q).sqrt();
                    ensure(col.iter().all(|&v| v <= cap * (1.0 + 5e-9)), || {
                        format!("fig1 p_perp={q} above cap")
                    })?;
                }
                let last: Vec<f64> = curves.iter().map(|c| *c.last().unwrap()).collect();
                ensure(last.windows(2).all(|w| w[1] > w[0]), || {
                    "fig1 saturation not ordered by p_perp".into()
                })?;
            }
            "fig2" => {
                ensure(header[1] == "p_par=0", || {
                    format!("fig2 first curve {}", header[1])
                })?;
                ensure(
                    a.lines()
                        .skip(1)
                        .all(|l| l.split(',').nth(1) == Some("6.00000000e-1")),
                    || "fig2 p_par=0 line not flat at 6.00000000e-1".into(),
                )?;
                for c in &curves[1..] {
                    ensure(non_decreasing(c), || "fig2 curve not non-decreasing".into())?;
                    ensure(c.last() > c.first(), || {
                        "fig2 curve shows no blue shift".into()
                    })?;
                }
            }
            "fig3" => {
                let gains: Vec<f64> = curves
                    .iter()
                    .map(|c| c.last().unwrap() - c.first().unwrap())
                    .collect();
                ensure(curves.iter().all(|c| non_decreasing(c)), || {
                    "fig3 curve not non-decreasing".into()
                })?;
                ensure(gains.windows(2).all(|w| w[1] > w[0]), || {
                    format!("fig3 gains {gains:?} not increasing with delta")
                })?;
            }
            "fig4" => {
                for c in curves {
                    ensure(c.windows(2).all(|w| w[1] > w[0]), || {
                        "fig4 curve not increasing in b".into()
                    })?;
                }
                for row in 1..cols[0].len() {
                    ensure(curves.windows(2).all(|w| w[1][row] < w[0][row]), || {
                        format!("fig4 not decreasing in n at b={}", cols[0][row])
                    })?;
                }
            }
            _ => unreachable!(),
        }
    }
    Ok(format!("4 figures deterministic, slowest run {slowest:?}"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("oracle equivalence (neutral)", c1_oracle_equivalence),
        ("1D reduction", c2_one_dimensional_reduction),
        ("regime law", c3_regime_law),
        ("low-speed order (neutral)", c4_low_speed_order),
        ("high-speed limits", c5_high_speed_limits),
        ("monotonicity grids", c6_monotonicity_grid),
        ("Landau ladder red shift", c7_landau_ladder),
        ("low-field expansion (charged)", c8_low_field_expansion),
        ("Landau oracle", c9_landau_oracle),
        ("figure reproduction", c10_figures),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
