//! Test-only oracles, deliberately independent of the library code paths.
#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use mpsplit_core::Matrix;

/// Tanh-sinh (double exponential) quadrature of `f` over `[a, b]`. Copes
/// with integrable endpoint singularities such as `x^{-1/2}` because the
/// nodes cluster doubly-exponentially at both ends and never touch them.
pub fn tanh_sinh(f: impl Fn(f64) -> f64, a: f64, b: f64) -> f64 {
    let half = 0.5 * (b - a);
    let h = 1.0 / 64.0;
    let pi2 = std::f64::consts::FRAC_PI_2;
    let mut sum = 0.0;
    let kmax = (6.0 / h) as i64;
    for k in -kmax..=kmax {
        let t = k as f64 * h;
        let u = pi2 * t.sinh();
        let cu = u.cosh();
        let w = pi2 * t.cosh() / (cu * cu);
        // Distance to the nearer endpoint, computed without cancellation.
        let ex = (-2.0 * u.abs()).exp();
        let gap = half * 2.0 * ex / (1.0 + ex);
        let node = if u < 0.0 { a + gap } else { b - gap };
        if gap <= 0.0 || node <= a || node >= b {
            continue;
        }
        sum += w * f(node);
    }
    sum * half * h
}

/// Raw Marchenko–Pastur density straight from the formula.
pub fn mp_density(x: f64, sigma_sq: f64, c: f64) -> f64 {
    let lm = sigma_sq * (1.0 - c.sqrt()).powi(2);
    let lp = sigma_sq * (1.0 + c.sqrt()).powi(2);
    if x <= lm || x >= lp || x <= 0.0 {
        return 0.0;
    }
    ((lp - x) * (x - lm)).sqrt() / (2.0 * std::f64::consts::PI * sigma_sq * c * x)
}

/// `F(x)` by quadrature of the raw density.
pub fn mp_cdf_oracle(x: f64, sigma_sq: f64, c: f64) -> f64 {
    let lm = sigma_sq * (1.0 - c.sqrt()).powi(2);
    let lp = sigma_sq * (1.0 + c.sqrt()).powi(2);
    if x <= lm {
        return 0.0;
    }
    if x >= lp {
        return 1.0;
    }
    tanh_sinh(|t| mp_density(t, sigma_sq, c), lm, x)
}

pub fn gaussian(rows: usize, cols: usize, seed: u64) -> Matrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let data = (0..rows * cols).map(|_| rng.sample::<f64, _>(StandardNormal)).collect();
    Matrix::new(rows, cols, data).unwrap()
}

pub fn uniform_matrix(rows: usize, cols: usize, seed: u64) -> Matrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let data = (0..rows * cols).map(|_| rng.random_range(-1.0..1.0)).collect();
    Matrix::new(rows, cols, data).unwrap()
}

/// Sup distance between an ascending sample's empirical CDF and `cdf`,
/// checked on both sides of every jump.
pub fn ks_distance(sorted: &[f64], cdf: impl Fn(f64) -> f64) -> f64 {
    let m = sorted.len() as f64;
    sorted
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            let f = cdf(x);
            (f - i as f64 / m).abs().max(((i + 1) as f64 / m - f).abs())
        })
        .fold(0.0, f64::max)
}

/// Largest eigenvalues of a symmetric matrix by plain Jacobi sweeps; used
/// only on small matrices as an independent eigen-solver.
pub fn jacobi_eigenvalues(mut a: Vec<Vec<f64>>) -> Vec<f64> {
    let n = a.len();
    for _ in 0..100 {
        let mut off = 0.0;
        for p in 0..n {
            for q in p + 1..n {
                off += a[p][q] * a[p][q];
            }
        }
        if off < 1e-30 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if a[p][q].abs() < 1e-300 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k][p];
                    let akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p][k];
                    let aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    let mut ev: Vec<f64> = (0..n).map(|i| a[i][i]).collect();
    ev.sort_by(f64::total_cmp);
    ev
}
