//! Aberth–Ehrlich simultaneous root iteration.

use std::f64::consts::TAU;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::C64;
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct AberthOptions {
    pub max_iterations: usize,
    /// Backward-error tolerance: `|q(z)| ≤ tol · Σ|cᵢ||z|ⁱ`.
    pub tolerance: f64,
    /// Seed for the initial circle offset and restart perturbations.
    pub seed: u64,
    pub max_restarts: usize,
}

impl Default for AberthOptions {
    fn default() -> Self {
        Self {
            max_iterations: 500,
            tolerance: 1e-12,
            seed: 0x5eed_a6e7,
            max_restarts: 8,
        }
    }
}

/// `(q(z), q'(z), Σ|cᵢ||z|ⁱ)` by Horner.
fn horner(coeffs: &[C64], z: C64) -> (C64, C64, f64) {
    let az = z.norm();
    let mut p = C64::new(0.0, 0.0);
    let mut dp = C64::new(0.0, 0.0);
    let mut bound = 0.0;
    for c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
        bound = bound * az + c.norm();
    }
    (p, dp, bound)
}

/// Roots of the ordinary polynomial with ascending coefficients `coeffs`.
///
/// The constant coefficient is assumed nonzero (callers strip the power of
/// `z` first), so every returned root is nonzero. Output is sorted by
/// modulus, then argument.
pub fn aberth_ehrlich(coeffs: &[C64], opts: &AberthOptions) -> Result<Vec<C64>> {
    let degree = coeffs.len().saturating_sub(1);
    match degree {
        0 => return Ok(Vec::new()),
        1 => return Ok(vec![-coeffs[0] / coeffs[1]]),
        _ => {}
    }
    let lead = coeffs[degree];
    let radius = (coeffs[0].norm() / lead.norm()).powf(1.0 / degree as f64);
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);

    let mut best: Option<(f64, Vec<C64>)> = None;
    for attempt in 0..=opts.max_restarts {
        let offset: f64 = rng.gen_range(0.0..TAU / degree as f64);
        let jitter = if attempt == 0 { 0.0 } else { 0.25 };
        let mut z: Vec<C64> = (0..degree)
            .map(|k| {
                let scale = 1.0 + jitter * rng.gen_range(-1.0..1.0);
                C64::from_polar(radius * scale, offset + TAU * k as f64 / degree as f64)
            })
            .collect();

        let (converged, residual) = iterate(coeffs, &mut z, opts);
        if converged {
            return Ok(sorted(z));
        }
        if best.as_ref().is_none_or(|(r, _)| residual < *r) {
            best = Some((residual, z));
        }
    }
    // Clusters of multiple roots only reach the square root of the working
    // precision; accept those when the backward error is still small.
    match best {
        Some((residual, z)) if residual <= 1e-9 => Ok(sorted(z)),
        Some((residual, _)) => Err(Error::NoConvergence(format!(
            "Aberth–Ehrlich: degree {degree}, backward error {residual:e} after {} restarts",
            opts.max_restarts
        ))),
        None => unreachable!(),
    }
}

fn iterate(coeffs: &[C64], z: &mut [C64], opts: &AberthOptions) -> (bool, f64) {
    let n = z.len();
    let mut residual = f64::INFINITY;
    for _ in 0..opts.max_iterations {
        let mut max_step = 0.0f64;
        for k in 0..n {
            let (p, dp, _) = horner(coeffs, z[k]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let repulsion: C64 = (0..n).filter(|&j| j != k).map(|j| (z[k] - z[j]).inv()).sum();
            let step = ratio / (C64::new(1.0, 0.0) - ratio * repulsion);
            if step.re.is_finite() && step.im.is_finite() {
                z[k] -= step;
                max_step = max_step.max(step.norm() / z[k].norm().max(f64::MIN_POSITIVE));
            }
        }
        residual = backward_error(coeffs, z);
        if residual <= opts.tolerance {
            return (true, residual);
        }
        if max_step <= 4.0 * f64::EPSILON {
            break;
        }
    }
    (false, residual)
}

fn backward_error(coeffs: &[C64], z: &[C64]) -> f64 {
    z.iter()
        .map(|&w| {
            let (p, _, bound) = horner(coeffs, w);
            if bound > 0.0 {
                p.norm() / bound
            } else {
                0.0
            }
        })
        .fold(0.0, f64::max)
}

fn sorted(mut z: Vec<C64>) -> Vec<C64> {
    z.sort_by(|a, b| {
        a.norm()
            .partial_cmp(&b.norm())
            .unwrap()
            .then(a.arg().partial_cmp(&b.arg()).unwrap())
    });
    z
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_matches_formula() {
        // z² + i√2 z + 1
        let c = [C64::new(1.0, 0.0), C64::new(0.0, 2f64.sqrt()), C64::new(1.0, 0.0)];
        let r = aberth_ehrlich(&c, &AberthOptions::default()).unwrap();
        let s = (6f64.sqrt() - 2f64.sqrt()) / 2.0;
        assert!((r[0] - C64::new(0.0, s)).norm() < 1e-13);
        assert!((r[1] - C64::new(0.0, -1.0 / s)).norm() < 1e-12);
    }

    #[test]
    fn double_roots_are_accepted() {
        // (z - 0.5)² (z + 2)
        let c = [
            C64::new(0.5, 0.0),
            C64::new(-1.75, 0.0),
            C64::new(1.0, 0.0),
            C64::new(1.0, 0.0),
        ];
        let r = aberth_ehrlich(&c, &AberthOptions::default()).unwrap();
        assert_eq!(r.len(), 3);
        assert!((r[0] - 0.5).norm() < 1e-6 && (r[1] - 0.5).norm() < 1e-6);
        assert!((r[2] + 2.0).norm() < 1e-12);
    }

    #[test]
    fn deterministic_for_fixed_seed() {
        let c: Vec<C64> = (0..9).map(|k| C64::new(k as f64 + 1.0, (k * k) as f64 * 0.1)).collect();
        let o = AberthOptions::default();
        assert_eq!(aberth_ehrlich(&c, &o).unwrap(), aberth_ehrlich(&c, &o).unwrap());
    }
}
