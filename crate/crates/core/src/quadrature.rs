//! Quadrature rules: periodic trapezoid for circle integrals and adaptive
//! Gauss–Legendre for radial integrals.

use std::f64::consts::{PI, TAU};
use std::sync::OnceLock;

pub const DEFAULT_THETA_NODES: usize = 4096;

/// Uniform nodes `θ_j = 2πj/n` on `[0, 2π)`.
pub fn theta_nodes(n: usize) -> impl ExactSizeIterator<Item = f64> + Clone {
    (0..n).map(move |j| TAU * j as f64 / n as f64)
}

/// `∫₀^{2π} f(θ) dθ` by the composite trapezoid rule, spectrally accurate for
/// smooth periodic integrands.
pub fn periodic_trapezoid<F: FnMut(f64) -> f64>(n: usize, mut f: F) -> f64 {
    let sum: f64 = theta_nodes(n).map(&mut f).sum();
    sum * TAU / n as f64
}

/// Gauss–Legendre nodes and weights on `[-1, 1]` via Newton on `Pₙ`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut z = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, z);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * z * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            if n == 1 {
                p0 = 1.0;
                p1 = z;
            }
            dp = n as f64 * (z * p1 - p0) / (z * z - 1.0);
            let dz = p1 / dp;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
        w[n - 1 - i] = w[i];
    }
    (x, w)
}

fn rule(n: usize) -> &'static (Vec<f64>, Vec<f64>) {
    static G10: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();
    static G21: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();
    match n {
        10 => G10.get_or_init(|| gauss_legendre(10)),
        21 => G21.get_or_init(|| gauss_legendre(21)),
        _ => unreachable!(),
    }
}

fn fixed<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64, n: usize) -> f64 {
    let (x, w) = rule(n);
    let (m, h) = ((a + b) / 2.0, (b - a) / 2.0);
    h * x.iter().zip(w).map(|(&xi, &wi)| wi * f(m + h * xi)).sum::<f64>()
}

/// Adaptive bisection comparing 10- and 21-point Gauss–Legendre on each
/// panel; stops when the panel estimates agree to `tol` (absolute, scaled by
/// the running magnitude of the integral).
pub fn adaptive_gauss_legendre<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64, tol: f64) -> f64 {
    let coarse = fixed(&mut f, a, b, 21);
    let scale = coarse.abs().max(f64::MIN_POSITIVE);
    let mut total = 0.0;
    let mut stack = vec![(a, b, coarse, 0u32)];
    while let Some((lo, hi, fine, depth)) = stack.pop() {
        let low = fixed(&mut f, lo, hi, 10);
        if (fine - low).abs() <= tol * scale * (hi - lo) / (b - a) || depth >= 40 {
            total += fine;
            continue;
        }
        let mid = (lo + hi) / 2.0;
        let left = fixed(&mut f, lo, mid, 21);
        let right = fixed(&mut f, mid, hi, 21);
        stack.push((mid, hi, right, depth + 1));
        stack.push((lo, mid, left, depth + 1));
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn legendre_weights_sum_to_two_and_integrate_polynomials() {
        for n in [1, 2, 5, 10, 21] {
            let (x, w) = gauss_legendre(n);
            assert!((w.iter().sum::<f64>() - 2.0).abs() < 1e-13, "n={n}");
            let deg = 2 * n - 1;
            let q: f64 = x.iter().zip(&w).map(|(xi, wi)| wi * xi.powi(deg as i32 - 1)).sum();
            let exact = if (deg - 1) % 2 == 0 { 2.0 / deg as f64 } else { 0.0 };
            assert!((q - exact).abs() < 1e-13, "n={n}");
        }
    }

    #[test]
    fn trapezoid_is_exact_for_trig_polynomials() {
        let v = periodic_trapezoid(64, |t| (3.0 * t).cos().powi(2) + 1.0);
        assert!((v - 3.0 * PI).abs() < 1e-13);
    }

    #[test]
    fn adaptive_handles_peaks() {
        let v = adaptive_gauss_legendre(|x| 1.0 / (1e-4 + x * x), -1.0, 1.0, 1e-12);
        let exact = 2.0 * (1.0 / 1e-4f64.sqrt()) * (1.0 / 1e-4f64.sqrt()).atan();
        assert!((v - exact).abs() / exact < 1e-10);
    }
}
