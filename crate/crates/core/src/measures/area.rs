use std::f64::consts::TAU;

use rayon::prelude::*;

use super::level::solve_radius;
use crate::error::{Error, Result};
use crate::laurent::{AnnulusWindow, LaurentPoly, C64};
use crate::quadrature::{adaptive_gauss_legendre, theta_nodes};
use crate::weierstrass::{Slab, WeierstrassData};

/// Tolerance of the adaptive radial quadrature.
pub const RADIAL_TOL: f64 = 1e-10;

/// Exact radial antiderivative of `½Σ|φᵢ(re^{iθ})|²·r` on one ray.
struct RayAntiderivative {
    lowest: i32,
    // C_k for k = lowest, lowest + 1, ...
    coeffs: Vec<f64>,
}

impl RayAntiderivative {
    fn new(phis: &[LaurentPoly; 3], theta: f64) -> Self {
        let lo = phis.iter().map(|p| p.lowest()).min().unwrap_or(0);
        let hi = phis.iter().map(|p| p.highest()).max().unwrap_or(0);
        let mut coeffs = vec![0.0; (2 * (hi - lo) + 1) as usize];
        for p in phis {
            let u: Vec<(i32, C64)> = p
                .terms()
                .map(|(m, c)| (m, c * C64::from_polar(1.0, f64::from(m) * theta)))
                .collect();
            for &(m, a) in &u {
                for &(n, b) in &u {
                    coeffs[(m + n - 2 * lo) as usize] += (a * b.conj()).re;
                }
            }
        }
        Self { lowest: 2 * lo, coeffs }
    }

    fn eval(&self, r: f64) -> f64 {
        let ln_r = r.ln();
        0.5 * self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, &c)| {
                let k = self.lowest + i as i32;
                if k == -2 {
                    c * ln_r
                } else {
                    c * r.powi(k + 2) / f64::from(k + 2)
                }
            })
            .sum::<f64>()
    }
}

/// Area of the part of the surface between the levels `h₋` and `h₊`:
/// exact in `r` along each ray, trapezoid in `θ`.
pub fn slab_area(data: &WeierstrassData, slab: &Slab, n_theta: usize) -> Result<f64> {
    if n_theta < 8 {
        return Err(Error::Domain(format!("need at least 8 theta nodes, got {n_theta}")));
    }
    data.height(C64::from_polar(data.window().geometric_mean(), 0.0))?;
    let thetas: Vec<f64> = theta_nodes(n_theta).collect();
    let strips = thetas
        .par_iter()
        .map(|&theta| {
            let lo = solve_radius(data, slab.h_minus(), theta)?;
            let hi = solve_radius(data, slab.h_plus(), theta)?;
            let a = RayAntiderivative::new(data.phis(), theta);
            Ok((a.eval(hi) - a.eval(lo)).abs())
        })
        .collect::<Result<Vec<f64>>>()?;
    Ok(strips.iter().sum::<f64>() * TAU / n_theta as f64)
}

/// `∫∫ K dA = −∫∫ (2|g′|/(1+|g|²))² dA(z)` over `window`, written with
/// `g = G₊/G₋` so that poles of `g` cause no trouble.
pub fn total_curvature(data: &WeierstrassData, window: &AnnulusWindow, n_theta: usize) -> Result<f64> {
    if n_theta < 8 {
        return Err(Error::Domain(format!("need at least 8 theta nodes, got {n_theta}")));
    }
    let (n, d) = (data.g_plus(), data.g_minus());
    let (dn, dd) = (n.derivative(), d.derivative());
    let (a, b) = (window.r_inner().ln(), window.r_outer().ln());
    let thetas: Vec<f64> = theta_nodes(n_theta).collect();
    let rays = thetas
        .par_iter()
        .map(|&theta| {
            let u = C64::from_polar(1.0, theta);
            let mut bad = false;
            let v = adaptive_gauss_legendre(
                |t| {
                    let z = u * t.exp();
                    let (nz, dz) = (n.eval_nonzero(z), d.eval_nonzero(z));
                    let w = dn.eval_nonzero(z) * dz - nz * dd.eval_nonzero(z);
                    let den = nz.norm_sqr() + dz.norm_sqr();
                    if den == 0.0 {
                        bad = true;
                        return 0.0;
                    }
                    let k = 2.0 * w.norm() / den;
                    k * k * z.norm_sqr()
                },
                a,
                b,
                RADIAL_TOL,
            );
            if bad || !v.is_finite() {
                Err(Error::Domain(format!(
                    "G₋ and G₊ vanish together on the ray θ = {theta}"
                )))
            } else {
                Ok(v)
            }
        })
        .collect::<Result<Vec<f64>>>()?;
    Ok(-rays.iter().sum::<f64>() * TAU / n_theta as f64)
}
