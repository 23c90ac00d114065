use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::laurent::{LaurentPoly, C64};
use crate::quadrature::periodic_trapezoid;
use crate::weierstrass::{Parity, WeierstrassData};

/// Step in `t = ln r` for the finite-difference cross-check of `L''`.
pub const FD_STEP: f64 = 1e-3;

fn check_radius(data: &WeierstrassData, r: f64) -> Result<()> {
    if !data.window().contains(r) {
        let w = data.window();
        return Err(Error::Domain(format!(
            "radius {r} outside the window ({}, {})",
            w.r_inner(),
            w.r_outer()
        )));
    }
    Ok(())
}

/// `L(r) = ½∫₀^{2π}(|F₋| + |F₊|) dθ` by the trapezoid rule.
pub fn circle_length(data: &WeierstrassData, r: f64, nodes: usize) -> Result<f64> {
    check_radius(data, r)?;
    Ok(circle_length_quadrature(data, r, nodes))
}

fn circle_length_quadrature(data: &WeierstrassData, r: f64, nodes: usize) -> f64 {
    0.5 * periodic_trapezoid(nodes, |t| {
        let z = C64::from_polar(r, t);
        data.f_minus().eval_nonzero(z).norm() + data.f_plus().eval_nonzero(z).norm()
    })
}

fn parity_shift(data: &WeierstrassData) -> i32 {
    match data.parity() {
        Parity::Even => 0,
        Parity::Odd => 1,
    }
}

// π Σ (2n+s)^p (|aₙ|² + |bₙ|²) r^{2n+s}
fn moment(data: &WeierstrassData, r: f64, power: i32) -> f64 {
    let s = parity_shift(data);
    let term = |g: &LaurentPoly| -> f64 {
        g.terms()
            .map(|(n, c)| {
                let e = 2 * n + s;
                (e as f64).powi(power) * c.norm_sqr() * r.powi(e)
            })
            .sum()
    };
    PI * (term(data.g_minus()) + term(data.g_plus()))
}

/// `L(r)` in closed form from the Laurent coefficients of `G±`.
pub fn circle_length_closed(data: &WeierstrassData, r: f64) -> Result<f64> {
    check_radius(data, r)?;
    Ok(moment(data, r, 0))
}

/// `d²L/dt²` at `t = ln r` in closed form: `π Σ (2n+s)²(|aₙ|²+|bₙ|²) r^{2n+s}`
/// with `s = 0` for even and `s = 1` for odd parity.
pub fn circle_length_dd(data: &WeierstrassData, r: f64) -> Result<f64> {
    check_radius(data, r)?;
    Ok(moment(data, r, 2))
}

/// Central second difference of the quadrature `L` in `t` with step `step`.
pub fn circle_length_dd_fd(data: &WeierstrassData, r: f64, step: f64, nodes: usize) -> Result<f64> {
    check_radius(data, r * (-step).exp())?;
    check_radius(data, r * step.exp())?;
    let l = |t: f64| circle_length_quadrature(data, r * t.exp(), nodes);
    Ok((l(step) - 2.0 * l(0.0) + l(-step)) / (step * step))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ProfileSample {
    pub t: f64,
    pub l: f64,
    pub l2: f64,
}

/// `(t, L, L'')` on a grid strictly increasing in `t`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CircleLengthProfile {
    pub samples: Vec<ProfileSample>,
}

pub fn length_profile(data: &WeierstrassData, n: usize) -> CircleLengthProfile {
    let samples = data
        .window()
        .log_grid(n)
        .into_iter()
        .map(|r| ProfileSample {
            t: r.ln(),
            l: moment(data, r, 0),
            l2: moment(data, r, 2),
        })
        .collect();
    CircleLengthProfile { samples }
}

/// Range of `L'' − cL` (absolute and relative to `L`) over a grid.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DefectRange {
    pub c: f64,
    pub min: f64,
    pub max: f64,
    pub min_relative: f64,
    pub max_relative: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConvexityReport {
    /// Gauss-map winding number on the circle through the geometric mean.
    pub k: i32,
    /// Defects for `c = k²`, `2`, `4`, in that order.
    pub defects: [DefectRange; 3],
}

impl ConvexityReport {
    pub fn defect(&self, c: f64) -> Option<&DefectRange> {
        self.defects.iter().find(|d| d.c == c)
    }
}

pub fn convexity_report(data: &WeierstrassData, grid: &[f64]) -> Result<ConvexityReport> {
    if grid.is_empty() {
        return Err(Error::Domain("empty radius grid".into()));
    }
    for &r in grid {
        check_radius(data, r)?;
    }
    let k = data.gauss_winding(data.window().geometric_mean())?;
    let values: Vec<(f64, f64)> = grid.iter().map(|&r| (moment(data, r, 0), moment(data, r, 2))).collect();
    let range = |c: f64| {
        let mut d = DefectRange {
            c,
            min: f64::INFINITY,
            max: f64::NEG_INFINITY,
            min_relative: f64::INFINITY,
            max_relative: f64::NEG_INFINITY,
        };
        for &(l, l2) in &values {
            let v = l2 - c * l;
            d.min = d.min.min(v);
            d.max = d.max.max(v);
            d.min_relative = d.min_relative.min(v / l);
            d.max_relative = d.max_relative.max(v / l);
        }
        d
    };
    Ok(ConvexityReport {
        k,
        defects: [range(f64::from(k * k)), range(2.0), range(4.0)],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::AnnulusWindow;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn cover(k: i32) -> WeierstrassData {
        let (gm, gp, parity) = if k % 2 == 0 {
            (k / 2, -k / 2, Parity::Even)
        } else {
            ((k - 1) / 2, -(k + 1) / 2, Parity::Odd)
        };
        WeierstrassData::from_g_pair(
            LaurentPoly::monomial(gm, c(1.0, 0.0)),
            LaurentPoly::monomial(gp, c(1.0, 0.0)),
            parity,
            AnnulusWindow::new((-1f64).exp(), 1f64.exp()).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn catenoid_and_double_cover_lengths() {
        let d1 = cover(1);
        let d2 = cover(2);
        for r in [0.5, 1.0, 2.0] {
            let l1 = circle_length(&d1, r, 4096).unwrap();
            assert!((l1 - PI * (r + 1.0 / r)).abs() < 1e-12);
            let l2 = circle_length(&d2, r, 4096).unwrap();
            assert!((l2 - PI * (r * r + 1.0 / (r * r))).abs() < 1e-12);
            assert!((circle_length_closed(&d2, r).unwrap() - l2).abs() < 1e-12);
        }
        assert!(circle_length(&d1, 3.0, 64).is_err());
    }

    #[test]
    fn cover_laws() {
        for k in 1..=3 {
            let d = cover(k);
            for r in d.window().log_grid(11) {
                let l = circle_length_closed(&d, r).unwrap();
                let l2 = circle_length_dd(&d, r).unwrap();
                assert!((l2 - f64::from(k * k) * l).abs() <= 1e-12 * l);
            }
        }
    }

    #[test]
    fn closed_form_matches_finite_differences() {
        let gm = LaurentPoly::from_terms([(-1, c(0.3, 0.2)), (0, c(1.0, -0.5)), (2, c(0.1, 0.4))]).unwrap();
        let gp = LaurentPoly::from_terms([(-2, c(0.2, 0.0)), (1, c(-0.7, 0.3))]).unwrap();
        for parity in [Parity::Even, Parity::Odd] {
            let d = WeierstrassData::from_g_pair(gm.clone(), gp.clone(), parity, AnnulusWindow::new(1.9, 2.6).unwrap());
            let Ok(d) = d else { continue };
            let r = d.window().geometric_mean();
            let exact = circle_length_dd(&d, r).unwrap();
            let fd = circle_length_dd_fd(&d, r, FD_STEP, 4096).unwrap();
            assert!((exact - fd).abs() <= 1e-5 * exact.abs(), "{parity:?}: {exact} vs {fd}");
            let l = circle_length(&d, r, 4096).unwrap();
            assert!((l - circle_length_closed(&d, r).unwrap()).abs() <= 1e-12 * l);
        }
    }

    #[test]
    fn convexity_report_for_double_cover() {
        let d = cover(2);
        let rep = convexity_report(&d, &d.window().log_grid(21)).unwrap();
        assert_eq!(rep.k, -2);
        let four = rep.defect(4.0).unwrap();
        assert!(four.min_relative.abs() < 1e-12 && four.max_relative.abs() < 1e-12);
        assert!(rep.defect(2.0).unwrap().min > 0.0);
    }

    #[test]
    fn profile_is_increasing_in_t() {
        let p = length_profile(&cover(1), 9);
        assert_eq!(p.samples.len(), 9);
        assert!(p.samples.windows(2).all(|w| w[0].t < w[1].t));
        assert!(p.samples.iter().all(|s| s.l > 0.0 && (s.l - s.l2).abs() < 1e-12 * s.l));
    }
}
