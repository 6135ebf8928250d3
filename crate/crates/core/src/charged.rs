//! Charged particle in a uniform magnetic field: relativistic and
//! nonrelativistic Landau levels and their spin splittings.
//!
//! Natural units, with the field carried by `b = ħ|q|B/(m²c²)`.

use crate::error::{Error, Result};

/// Largest accepted Landau index.
pub const MAX_LANDAU_INDEX: u32 = i32::MAX as u32;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChargedConfig {
    pub p_par: f64,
    pub b: f64,
    pub n: u32,
}

impl ChargedConfig {
    pub fn new(p_par: f64, b: f64, n: u32) -> Result<Self> {
        if !p_par.is_finite() || !b.is_finite() {
            return Err(Error::InvalidInput(
                "charged configuration must be finite".into(),
            ));
        }
        if b < 0.0 {
            return Err(Error::InvalidInput(format!(
                "field parameter b must be non-negative, got {b}"
            )));
        }
        if n > MAX_LANDAU_INDEX {
            return Err(Error::InvalidInput(format!(
                "Landau index {n} exceeds {MAX_LANDAU_INDEX}"
            )));
        }
        Ok(ChargedConfig { p_par, b, n })
    }

    /// `2n + 1 + σ`
    fn ladder(&self, sigma: i32) -> Result<f64> {
        match sigma {
            1 | -1 => Ok(2.0 * f64::from(self.n) + 1.0 + f64::from(sigma)),
            other => Err(Error::InvalidSpin(other)),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LandauSplitResult {
    pub splitting: f64,
    pub level_up: f64,
    pub level_down: f64,
}

/// `E_n^σ = √(1 + p∥² + (2n+1+σ)b)`
pub fn landau_level(cfg: &ChargedConfig, sigma: i32) -> Result<f64> {
    let k = cfg.ladder(sigma)?;
    Ok((1.0 + cfg.p_par * cfg.p_par + k * cfg.b).sqrt())
}

/// `Δ_n = E_n^{+1} − E_n^{−1}`, computed as `2b/(E↑ + E↓)`.
pub fn splitting(cfg: &ChargedConfig) -> LandauSplitResult {
    let rest = 1.0 + cfg.p_par * cfg.p_par;
    let n = f64::from(cfg.n);
    let up = (rest + 2.0 * (n + 1.0) * cfg.b).sqrt();
    let down = (rest + 2.0 * n * cfg.b).sqrt();
    LandauSplitResult {
        splitting: 2.0 * cfg.b / (up + down),
        level_up: up,
        level_down: down,
    }
}

/// Nonrelativistic splitting, `b` for every level and momentum.
pub fn splitting_nonrel(cfg: &ChargedConfig) -> f64 {
    cfg.b
}

/// `1 + p∥²/2 + ((2n+1+σ)/2)·b`
pub fn landau_level_nonrel(cfg: &ChargedConfig, sigma: i32) -> Result<f64> {
    let k = cfg.ladder(sigma)?;
    Ok(1.0 + 0.5 * cfg.p_par * cfg.p_par + 0.5 * k * cfg.b)
}

/// Expansion to second order in `b` and `p∥`.
pub fn splitting_low_field(cfg: &ChargedConfig) -> f64 {
    let b = cfg.b;
    let n = f64::from(cfg.n);
    b - (2.0 * n + 1.0) / 2.0 * b * b - 0.5 * b * cfg.p_par * cfg.p_par
}

/// Ultra-relativistic asymptote `b/p∥`, independent of `n`.
pub fn splitting_high_speed(cfg: &ChargedConfig) -> Result<f64> {
    if cfg.p_par == 0.0 {
        return Err(Error::ZeroMomentum);
    }
    Ok(cfg.b / cfg.p_par)
}

/// `∂Δ_n/∂p∥ = −p∥Δ_n/(E↑E↓)`
pub fn splitting_gradient_par(cfg: &ChargedConfig) -> f64 {
    let s = splitting(cfg);
    -cfg.p_par * s.splitting / (s.level_up * s.level_down)
}
