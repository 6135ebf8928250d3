//! Finite-difference transverse spectrum of a charged particle in the
//! Landau gauge.
//!
//! In oscillator units the transverse problem is `−ψ'' + ξ²ψ = λψ` with exact
//! eigenvalues `λ_n = 2n + 1`. Second-order central differences on a uniform
//! grid with Dirichlet walls give a symmetric tridiagonal matrix; its lowest
//! eigenvalues are found by Sturm-sequence bisection.

use crate::error::{Error, Result};

pub const DEFAULT_GRID_POINTS: usize = 2000;
pub const DEFAULT_BOX_HALFWIDTH: f64 = 12.0;
pub const MIN_GRID_POINTS: usize = 200;

/// Largest tolerated shift of the top requested level when the box doubles.
const BOX_TOL: f64 = 1e-8;

struct Tridiagonal {
    diag: Vec<f64>,
    /// constant off-diagonal entry
    off: f64,
}

impl Tridiagonal {
    /// `grid_points` interior nodes on `[−L, L]`, spacing `2L/(N+1)`.
    fn oscillator(grid_points: usize, halfwidth: f64) -> Self {
        let h = 2.0 * halfwidth / (grid_points as f64 + 1.0);
        let inv_h2 = 1.0 / (h * h);
        let diag = (1..=grid_points)
            .map(|i| {
                let x = -halfwidth + h * i as f64;
                2.0 * inv_h2 + x * x
            })
            .collect();
        Tridiagonal { diag, off: -inv_h2 }
    }

    /// Number of eigenvalues strictly below `x`.
    fn count_below(&self, x: f64) -> usize {
        let off2 = self.off * self.off;
        let mut count = 0;
        let mut q = 1.0;
        for (i, &d) in self.diag.iter().enumerate() {
            q = if i == 0 { d - x } else { d - x - off2 / q };
            if q == 0.0 {
                q = -f64::EPSILON * (d.abs() + self.off.abs());
            }
            if q < 0.0 {
                count += 1;
            }
        }
        count
    }

    /// `k`-th smallest eigenvalue (0-based).
    fn eigenvalue(&self, k: usize) -> f64 {
        let spread = 2.0 * self.off.abs();
        let mut lo = self.diag.iter().copied().fold(f64::INFINITY, f64::min) - spread;
        let mut hi = self.diag.iter().copied().fold(f64::NEG_INFINITY, f64::max) + spread;
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if self.count_below(mid) > k {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        0.5 * (lo + hi)
    }
}

/// Lowest `n_max + 1` eigenvalues of the discretized oscillator, no box check.
pub fn transverse_spectrum(
    n_max: usize,
    grid_points: usize,
    box_halfwidth: f64,
) -> Result<Vec<f64>> {
    if grid_points < MIN_GRID_POINTS {
        return Err(Error::InvalidInput(format!(
            "grid_points must be at least {MIN_GRID_POINTS}, got {grid_points}"
        )));
    }
    if !(box_halfwidth.is_finite() && box_halfwidth > 0.0) {
        return Err(Error::InvalidInput(format!(
            "box half-width must be positive, got {box_halfwidth}"
        )));
    }
    if n_max >= grid_points {
        return Err(Error::InvalidInput(format!(
            "cannot resolve level {n_max} on {grid_points} points"
        )));
    }
    let t = Tridiagonal::oscillator(grid_points, box_halfwidth);
    Ok((0..=n_max).map(|k| t.eigenvalue(k)).collect())
}

/// Lowest `n_max + 1` transverse eigenvalues `λ_n ≈ 2n + 1`.
///
/// The box is checked by doubling its half-width at fixed grid spacing; if
/// `λ_{n_max}` moves by more than `1e-8 · (2n_max + 1)` the box is too small.
pub fn landau_oracle(n_max: usize, grid_points: usize, box_halfwidth: f64) -> Result<Vec<f64>> {
    let levels = transverse_spectrum(n_max, grid_points, box_halfwidth)?;
    let wide = Tridiagonal::oscillator(2 * grid_points + 1, 2.0 * box_halfwidth);
    let shift = (wide.eigenvalue(n_max) - levels[n_max]).abs();
    if shift > BOX_TOL * (2 * n_max + 1) as f64 {
        return Err(Error::InsufficientBox {
            halfwidth: box_halfwidth,
            level: n_max,
            shift,
        });
    }
    Ok(levels)
}

/// Observed order `log₂(e_h / e_{h/2})` of the discretization error of
/// `λ_n`, from grids with `N` and `2N + 1` interior points (exactly half the spacing).
pub fn convergence_order(n: usize, grid_points: usize, box_halfwidth: f64) -> Result<f64> {
    let exact = (2 * n + 1) as f64;
    let coarse = transverse_spectrum(n, grid_points, box_halfwidth)?[n];
    let fine = transverse_spectrum(n, 2 * grid_points + 1, box_halfwidth)?[n];
    Ok(((coarse - exact).abs() / (fine - exact).abs()).log2())
}
