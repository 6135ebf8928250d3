//! Neutral particle with EDM/MDM coupling to collinear static fields.
//!
//! All quantities are in natural units: momenta in `mc`, energies in `mc²`.
//! The transverse momentum enters only through the transverse mass
//! `t = √(1 + p⊥²)`, which is also the regime threshold for `δ`.

use std::fmt;

use crate::error::{Error, Result};

/// Below this, `|1 + p⊥² − δ²|` makes the low-speed expansion singular.
pub const EXPANSION_SINGULARITY_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NeutralConfig {
    pub p_par: f64,
    pub p_perp: f64,
    pub delta: f64,
}

impl NeutralConfig {
    pub fn new(p_par: f64, p_perp: f64, delta: f64) -> Result<Self> {
        if !(p_par.is_finite() && p_perp.is_finite() && delta.is_finite()) {
            return Err(Error::InvalidInput(
                "neutral configuration must be finite".into(),
            ));
        }
        Ok(NeutralConfig {
            p_par,
            p_perp,
            delta,
        })
    }

    /// Same splitting, with both momenta folded onto the non-negative axis.
    pub fn canonical(self) -> Self {
        NeutralConfig {
            p_par: self.p_par.abs(),
            p_perp: self.p_perp.abs(),
            ..self
        }
    }

    /// `√(1 + p⊥²)`, the transverse mass and regime threshold.
    pub fn threshold(&self) -> f64 {
        threshold(self.p_perp)
    }
}

fn threshold(p_perp: f64) -> f64 {
    1.0f64.hypot(p_perp)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NeutralEigenvalues {
    pub e_plus_up: f64,
    pub e_plus_down: f64,
    pub e_minus_up: f64,
    pub e_minus_down: f64,
}

impl NeutralEigenvalues {
    pub fn sorted(&self) -> [f64; 4] {
        let mut v = [
            self.e_minus_up,
            self.e_minus_down,
            self.e_plus_down,
            self.e_plus_up,
        ];
        v.sort_by(f64::total_cmp);
        v
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Regime {
    /// `|δ|` below threshold: the rest splitting is `2δ`.
    Linear,
    /// `|δ|` at or above threshold: the rest splitting is pinned at `±2√(1+p⊥²)`.
    Saturated,
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Regime::Linear => "linear",
            Regime::Saturated => "saturated",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SplitResult {
    pub splitting: f64,
    pub regime: Regime,
    pub threshold: f64,
}

pub fn eigenvalues(cfg: &NeutralConfig) -> NeutralEigenvalues {
    let t = cfg.threshold();
    let up = cfg.p_par.hypot(t + cfg.delta);
    let down = cfg.p_par.hypot(t - cfg.delta);
    NeutralEigenvalues {
        e_plus_up: up,
        e_plus_down: down,
        e_minus_up: -up,
        e_minus_down: -down,
    }
}

pub fn regime(cfg: &NeutralConfig) -> Regime {
    regime_at(cfg.p_perp, cfg.delta)
}

fn regime_at(p_perp: f64, delta: f64) -> Regime {
    if delta.abs() < threshold(p_perp) {
        Regime::Linear
    } else {
        Regime::Saturated
    }
}

/// Spin splitting `Δ = E₊↑ − E₊↓`.
///
/// Evaluated as `4δt / (E₊↑ + E₊↓)`, which equals the difference exactly
/// (difference of squares is `4δt`) but keeps full precision when both
/// energies are large. The denominator is at least `2t ≥ 2`.
pub fn splitting(cfg: &NeutralConfig) -> SplitResult {
    let ev = eigenvalues(cfg);
    let t = cfg.threshold();
    SplitResult {
        splitting: 4.0 * cfg.delta * t / (ev.e_plus_up + ev.e_plus_down),
        regime: regime(cfg),
        threshold: t,
    }
}

/// Splitting at `p∥ = 0`: `|t + δ| − |t − δ|`.
pub fn splitting_at_rest(p_perp: f64, delta: f64) -> SplitResult {
    let t = threshold(p_perp);
    SplitResult {
        splitting: (t + delta).abs() - (t - delta).abs(),
        regime: regime_at(p_perp, delta),
        threshold: t,
    }
}

/// Second-order Taylor expansion in `p∥` about the rest splitting.
pub fn splitting_low_speed(cfg: &NeutralConfig) -> Result<f64> {
    let gap = 1.0 + cfg.p_perp * cfg.p_perp - cfg.delta * cfg.delta;
    if gap.abs() < EXPANSION_SINGULARITY_TOL {
        return Err(Error::SingularExpansion(gap.abs()));
    }
    let rest = splitting_at_rest(cfg.p_perp, cfg.delta).splitting;
    Ok(rest * (1.0 - cfg.p_par * cfg.p_par / (2.0 * gap.abs())))
}

/// Leading large-`p∥` behaviour `2δ√(1+p⊥²)/p∥`.
pub fn splitting_high_speed(cfg: &NeutralConfig) -> Result<f64> {
    if cfg.p_par == 0.0 {
        return Err(Error::ZeroMomentum);
    }
    Ok(2.0 * cfg.delta * cfg.threshold() / cfg.p_par)
}

/// Analytic `(∂Δ/∂p∥, ∂Δ/∂p⊥)`.
pub fn splitting_gradient(cfg: &NeutralConfig) -> Result<(f64, f64)> {
    let ev = eigenvalues(cfg);
    let (up, down) = (ev.e_plus_up, ev.e_plus_down);
    if up == 0.0 || down == 0.0 {
        return Err(Error::Degenerate);
    }
    let t = cfg.threshold();
    let delta = splitting(cfg).splitting;
    let d_par = -cfg.p_par * delta / (up * down);
    // dt/dp⊥ = p⊥/t; ∂E↑/∂t = (t+δ)/E↑, ∂E↓/∂t = (t−δ)/E↓
    let d_perp = cfg.p_perp / t * ((t + cfg.delta) * down - (t - cfg.delta) * up) / (up * down);
    Ok((d_par, d_perp))
}
