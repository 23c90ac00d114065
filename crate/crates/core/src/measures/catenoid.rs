use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::weierstrass::Slab;

/// A vertical catenoid (or its `cover`-fold cover) with vertical flux `f3`
/// and waist at height `center`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CatenoidParams {
    pub f3: f64,
    pub center: f64,
    pub cover: u32,
}

impl CatenoidParams {
    pub fn new(f3: f64, center: f64, cover: u32) -> Result<Self> {
        if !(f3.is_finite() && f3 > 0.0) || !center.is_finite() || cover == 0 {
            return Err(Error::Domain(format!(
                "catenoid needs f3 > 0, finite center and cover ≥ 1; got ({f3}, {center}, {cover})"
            )));
        }
        Ok(Self { f3, center, cover })
    }

    /// `a = k·2π/f3`, the exponential rate of `ℓ_C`.
    pub fn rate(&self) -> f64 {
        f64::from(self.cover) * TAU / self.f3
    }
}

/// `ℓ_C(h) = f3·cosh(k(2π/f3)(h − center))`.
pub fn catenoid_level_length(params: &CatenoidParams, h: f64) -> f64 {
    params.f3 * (params.rate() * (h - params.center)).cosh()
}

/// `∫ ℓ_C(h)²/f3 dh` over the slab, i.e. the area of the catenoid piece.
pub fn catenoid_slab_area(params: &CatenoidParams, slab: &Slab) -> f64 {
    let a = params.rate();
    let prim = |h: f64| {
        let x = h - params.center;
        params.f3 * (0.5 * x + (2.0 * a * x).sinh() / (4.0 * a))
    };
    prim(slab.h_plus()) - prim(slab.h_minus())
}

/// The root `u* ≈ 1.1996786` of `coth u = u`, by bisection on `[1, 2]`.
pub fn coth_fixed_point() -> f64 {
    let f = |u: f64| u * u.tanh() - 1.0;
    let (mut lo, mut hi) = (1.0, 2.0);
    while hi - lo > 1e-15 {
        let mid = 0.5 * (lo + hi);
        if f(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// The catenoid waist whose boundary circles are tangent to the rays from
/// the slab center: `a = u*/H`, `f3 = 2π/a`.
pub fn marginally_stable_waist(slab: &Slab) -> Result<CatenoidParams> {
    let half = slab.half_height();
    if half <= 0.0 {
        return Err(Error::Domain("degenerate slab".into()));
    }
    let a = coth_fixed_point() / half;
    CatenoidParams::new(TAU / a, slab.center(), 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn level_length_examples() {
        let p = CatenoidParams::new(TAU, 0.5, 1).unwrap();
        assert_eq!(catenoid_level_length(&p, 0.5), TAU);
        assert!((catenoid_level_length(&p, 1.5) - TAU * 1f64.cosh()).abs() < 1e-14);
        let p2 = CatenoidParams::new(3.0, 0.0, 2).unwrap();
        let h = 0.4;
        assert!((catenoid_level_length(&p2, h) / 3.0 - (2.0 * TAU * h / 3.0).cosh()).abs() < 1e-14);
    }

    #[test]
    fn slab_area_is_integral_of_length_squared() {
        let p = CatenoidParams::new(2.5, 0.1, 2).unwrap();
        let s = Slab::new(-0.3, 0.6).unwrap();
        let n = 2000;
        let h = s.thickness() / n as f64;
        let simpson: f64 = (0..=n)
            .map(|i| {
                let w = if i == 0 || i == n {
                    1.0
                } else if i % 2 == 1 {
                    4.0
                } else {
                    2.0
                };
                w * catenoid_level_length(&p, s.h_minus() + h * i as f64).powi(2) / p.f3
            })
            .sum::<f64>()
            * h
            / 3.0;
        assert!((catenoid_slab_area(&p, &s) - simpson).abs() < 1e-10);
    }

    #[test]
    fn waist_tangency() {
        let u = coth_fixed_point();
        assert!((u - 1.1996786).abs() < 1e-6);
        assert!((1.0 / u.tanh() - u).abs() < 1e-14);
        let s = Slab::new(1.0, 1.5).unwrap();
        let w = marginally_stable_waist(&s).unwrap();
        let a = TAU / w.f3;
        assert!((a - u / 0.25).abs() < 1e-12);
        assert_eq!(w.center, 1.25);
        // profile ρ(x) = cosh(ax)/a meets the ray ρ = x·ρ'(x) at the boundary
        let x = 0.25;
        assert!(((a * x).cosh() / a - x * (a * x).sinh()).abs() < 1e-13);
    }
}
