//! 4×4 Dirac Hamiltonian for a neutral particle and a Jacobi eigensolver.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::neutral::NeutralConfig;

pub type Mat4 = [[Complex64; 4]; 4];

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

const MAX_SWEEPS: usize = 64;

/// Dirac matrices in the standard (Dirac) representation, field axis `z`.
#[derive(Debug, Clone, PartialEq)]
pub struct DiracMatrices {
    pub alpha_x: Mat4,
    pub alpha_y: Mat4,
    pub alpha_z: Mat4,
    pub beta: Mat4,
    /// `Σ_z = diag(σ_z, σ_z)`, eigenvalues ±1.
    pub sigma_par: Mat4,
}

/// `[[0, σ], [σ, 0]]`
fn off_diagonal(pauli: [[Complex64; 2]; 2]) -> Mat4 {
    let mut m = [[ZERO; 4]; 4];
    for r in 0..2 {
        for c in 0..2 {
            m[r][c + 2] = pauli[r][c];
            m[r + 2][c] = pauli[r][c];
        }
    }
    m
}

fn diag(d: [f64; 4]) -> Mat4 {
    let mut m = [[ZERO; 4]; 4];
    for (i, v) in d.into_iter().enumerate() {
        m[i][i] = Complex64::new(v, 0.0);
    }
    m
}

pub(crate) fn mat_mul(a: &Mat4, b: &Mat4) -> Mat4 {
    let mut m = [[ZERO; 4]; 4];
    for r in 0..4 {
        for c in 0..4 {
            m[r][c] = (0..4).map(|k| a[r][k] * b[k][c]).sum();
        }
    }
    m
}

fn axpy(acc: &mut Mat4, scale: f64, m: &Mat4) {
    for r in 0..4 {
        for c in 0..4 {
            acc[r][c] += m[r][c] * scale;
        }
    }
}

impl DiracMatrices {
    pub fn standard() -> Self {
        let sx = [[ZERO, ONE], [ONE, ZERO]];
        let sy = [[ZERO, -I], [I, ZERO]];
        let sz = [[ONE, ZERO], [ZERO, -ONE]];
        DiracMatrices {
            alpha_x: off_diagonal(sx),
            alpha_y: off_diagonal(sy),
            alpha_z: off_diagonal(sz),
            beta: diag([1.0, 1.0, -1.0, -1.0]),
            sigma_par: diag([1.0, -1.0, 1.0, -1.0]),
        }
    }
}

/// `H = α_z p∥ + α_x p⊥ + β + βΣ_z δ` with `m = c = 1`.
pub fn neutral_hamiltonian(cfg: &NeutralConfig) -> Mat4 {
    let d = DiracMatrices::standard();
    let coupling = mat_mul(&d.beta, &d.sigma_par);
    let mut h = [[ZERO; 4]; 4];
    axpy(&mut h, cfg.p_par, &d.alpha_z);
    axpy(&mut h, cfg.p_perp, &d.alpha_x);
    axpy(&mut h, 1.0, &d.beta);
    axpy(&mut h, cfg.delta, &coupling);
    h
}

/// Four eigenvalues of the neutral Hamiltonian, ascending.
pub fn neutral_oracle(cfg: &NeutralConfig) -> Result<[f64; 4]> {
    hermitian_eigenvalues(&neutral_hamiltonian(cfg))
}

/// Eigenvalues of a Hermitian 4×4 matrix, ascending.
///
/// `A + iB` is embedded as the real symmetric `[[A, −B], [B, A]]`, whose
/// spectrum is that of `A + iB` with every eigenvalue doubled; cyclic Jacobi
/// diagonalizes the embedding and every second sorted value is returned.
pub fn hermitian_eigenvalues(h: &Mat4) -> Result<[f64; 4]> {
    let mut a = [[0.0f64; 8]; 8];
    for r in 0..4 {
        for c in 0..4 {
            let z = h[r][c];
            a[r][c] = z.re;
            a[r + 4][c + 4] = z.re;
            a[r][c + 4] = -z.im;
            a[r + 4][c] = z.im;
        }
    }
    let mut ev = jacobi_eigenvalues(a)?;
    ev.sort_by(f64::total_cmp);
    Ok([ev[0], ev[2], ev[4], ev[6]])
}

#[allow(clippy::needless_range_loop)]
fn jacobi_eigenvalues<const N: usize>(mut a: [[f64; N]; N]) -> Result<[f64; N]> {
    let scale: f64 = a.iter().flatten().map(|x| x * x).sum::<f64>().sqrt();
    if scale == 0.0 {
        return Ok([0.0; N]);
    }
    for _ in 0..MAX_SWEEPS {
        let off: f64 = (0..N)
            .flat_map(|r| (0..N).filter(move |&c| c != r).map(move |c| (r, c)))
            .map(|(r, c)| a[r][c] * a[r][c])
            .sum();
        if off.sqrt() <= f64::EPSILON * 1e-3 * scale {
            let mut d = [0.0; N];
            for (i, v) in d.iter_mut().enumerate() {
                *v = a[i][i];
            }
            return Ok(d);
        }
        for p in 0..N - 1 {
            for q in p + 1..N {
                let apq = a[p][q];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + theta.hypot(1.0));
                let c = 1.0 / t.hypot(1.0);
                let s = t * c;
                for k in 0..N {
                    let (akp, akq) = (a[k][p], a[k][q]);
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..N {
                    let (apk, aqk) = (a[p][k], a[q][k]);
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                a[p][q] = 0.0;
                a[q][p] = 0.0;
            }
        }
    }
    Err(Error::NonConvergence(MAX_SWEEPS))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn identity() -> Mat4 {
        diag([1.0; 4])
    }

    fn add(a: &Mat4, b: &Mat4) -> Mat4 {
        let mut m = *a;
        axpy(&mut m, 1.0, b);
        m
    }

    fn adjoint(a: &Mat4) -> Mat4 {
        let mut m = [[ZERO; 4]; 4];
        for r in 0..4 {
            for c in 0..4 {
                m[r][c] = a[c][r].conj();
            }
        }
        m
    }

    #[test]
    fn clifford_algebra_is_exact() {
        let d = DiracMatrices::standard();
        let zero = [[ZERO; 4]; 4];
        let all = [&d.alpha_x, &d.alpha_y, &d.alpha_z, &d.beta, &d.sigma_par];
        for m in all {
            assert_eq!(adjoint(m), *m);
            assert_eq!(mat_mul(m, m), identity());
        }
        for a in [&d.alpha_x, &d.alpha_y, &d.alpha_z] {
            assert_eq!(add(&mat_mul(a, &d.beta), &mat_mul(&d.beta, a)), zero);
        }
        let alphas = [&d.alpha_x, &d.alpha_y, &d.alpha_z];
        for i in 0..3 {
            for j in i + 1..3 {
                let anti = add(
                    &mat_mul(alphas[i], alphas[j]),
                    &mat_mul(alphas[j], alphas[i]),
                );
                assert_eq!(anti, zero);
            }
        }
        assert_eq!(
            mat_mul(&d.sigma_par, &d.beta),
            mat_mul(&d.beta, &d.sigma_par)
        );
    }

    #[test]
    fn rest_spectrum() {
        let ev = neutral_oracle(&NeutralConfig::new(0.0, 0.0, 0.0).unwrap()).unwrap();
        assert_eq!(ev, [-1.0, -1.0, 1.0, 1.0]);
    }

    #[test]
    fn example_spectrum() {
        let ev = neutral_oracle(&NeutralConfig::new(0.3, 0.0, 0.3).unwrap()).unwrap();
        let expect = [
            -1.334_166_406_412_633_4,
            -0.761_577_310_586_390_8,
            0.761_577_310_586_390_8,
            1.334_166_406_412_633_4,
        ];
        for (a, b) in ev.iter().zip(expect) {
            assert!((a - b).abs() <= 1e-14 * b.abs(), "{a} vs {b}");
        }
    }

    #[test]
    fn spectrum_is_symmetric() {
        for &(p, q, d) in &[(0.1, 2.0, 0.7), (4.0, 0.3, 3.3), (1.0, 1.0, 1.0)] {
            let ev = neutral_oracle(&NeutralConfig::new(p, q, d).unwrap()).unwrap();
            assert!((ev[0] + ev[3]).abs() < 1e-13);
            assert!((ev[1] + ev[2]).abs() < 1e-13);
        }
    }

    #[test]
    fn complex_hermitian_input() {
        // σ_y ⊕ 2σ_y has eigenvalues ±1, ±2
        let d = DiracMatrices::standard();
        let mut h = d.alpha_y;
        h[0][3] *= 2.0;
        h[3][0] *= 2.0;
        let ev = hermitian_eigenvalues(&h).unwrap();
        let want = [-2.0, -1.0, 1.0, 2.0];
        for (a, b) in ev.iter().zip(want) {
            assert!((a - b).abs() < 1e-14);
        }
    }
}
