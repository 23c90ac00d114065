use std::f64::consts::TAU;

use serde::Serialize;

use super::{MeasureReport, RunConfig, Verdict, STRICT_REL};
use crate::error::{Error, Result};
use crate::measures::{catenoid_level_length, catenoid_slab_area, slab_area, trace_level, CatenoidParams, LevelCurve};
use crate::weierstrass::{Slab, WeierstrassData};

/// Expected side of the comparison surface relative to the catenoid.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Expectation {
    SigmaBelow,
    SigmaAbove,
}

impl Expectation {
    fn suffix(self) -> &'static str {
        match self {
            Expectation::SigmaBelow => "below_catenoid",
            Expectation::SigmaAbove => "above_catenoid",
        }
    }

    // positive when the expectation holds
    fn signed(self, sigma: f64, cat: f64) -> f64 {
        match self {
            Expectation::SigmaBelow => (cat - sigma) / cat,
            Expectation::SigmaAbove => (sigma - cat) / cat,
        }
    }
}

fn require_symmetric(sigma: &WeierstrassData) -> Result<()> {
    if !sigma.symmetry_check() {
        return Err(Error::Precondition("comparison needs reflection-symmetric data".into()));
    }
    Ok(())
}

/// Traced `ℓ_Σ(h)` against the closed-form `ℓ_C(h)` on `grid`.
pub fn compare_lengths(
    sigma: &WeierstrassData,
    cat: &CatenoidParams,
    slab: &Slab,
    grid: &[f64],
    expectation: Expectation,
    config: &RunConfig,
) -> Result<MeasureReport> {
    require_symmetric(sigma)?;
    let f3 = sigma.flux()?.f3;
    if (f3 - cat.f3).abs() > 1e-9 * f3.abs() {
        return Err(Error::Precondition(format!(
            "flux mismatch: surface {f3}, catenoid {}",
            cat.f3
        )));
    }
    if let Some(h) = grid.iter().find(|&&h| h < slab.h_minus() || h > slab.h_plus()) {
        return Err(Error::Domain(format!("height {h} outside the slab")));
    }

    let mut report = MeasureReport::new("compare_lengths", config);
    report.input("catenoid", cat);
    report.input("slab", slab);
    let center = slab.center();
    let waist = trace_level(sigma, center, config.n_theta)?.length;
    let mut ell_sigma = Vec::with_capacity(grid.len());
    let mut ell_cat = Vec::with_capacity(grid.len());
    let mut margins = Vec::new();
    let (mut worst, mut worst_h) = (f64::INFINITY, f64::NAN);
    let mut flux_gap = f64::NEG_INFINITY;
    for &h in grid {
        let ls = if h == center {
            waist
        } else {
            trace_level(sigma, h, config.n_theta)?.length
        };
        let lc = catenoid_level_length(cat, h);
        ell_sigma.push([h, ls]);
        ell_cat.push([h, lc]);
        flux_gap = flux_gap.max((f3 - ls) / f3);
        if h != center {
            let m = expectation.signed(ls, lc);
            margins.push([h, m]);
            if m < worst {
                worst = m;
                worst_h = h;
            }
        }
    }

    report.quantity("f3", f3);
    report.quantity("waist_length", waist);
    report.quantity("min_relative_margin", worst);
    report.quantity("worst_height", worst_h);
    report.verdict(
        "waist_length_equals_flux",
        Verdict::at_most((waist - f3).abs() / f3, 1e-6),
    );
    report.verdict("flux_lower_bound", Verdict::at_most(flux_gap, 1e-9));
    report.verdict(
        format!("ell_sigma_{}", expectation.suffix()),
        Verdict::exceeds(worst, STRICT_REL),
    );
    let failing = margins.iter().filter(|m| m[1] <= STRICT_REL).count();
    if failing > 0 {
        report.note(format!(
            "{failing} of {} nonzero heights violate the expected ordering; worst at h = {worst_h}",
            margins.len()
        ));
    }
    report.series.insert("ell_sigma".into(), ell_sigma);
    report.series.insert("ell_catenoid".into(), ell_cat);
    report.series.insert("relative_margin".into(), margins);
    Ok(report)
}

/// `Area(Σ ∩ slab)` against the catenoid piece over the same slab. The
/// catenoid's flux need not match (the marginally stable waist has its own).
pub fn compare_areas(
    sigma: &WeierstrassData,
    cat: &CatenoidParams,
    slab: &Slab,
    expectation: Expectation,
    config: &RunConfig,
) -> Result<MeasureReport> {
    require_symmetric(sigma)?;
    let mut report = MeasureReport::new("compare_areas", config);
    report.input("catenoid", cat);
    report.input("slab", slab);
    let a_sigma = slab_area(sigma, slab, config.n_theta)?;
    let a_cat = catenoid_slab_area(cat, slab);
    let m = expectation.signed(a_sigma, a_cat);
    report.quantity("area_sigma", a_sigma);
    report.quantity("area_catenoid", a_cat);
    report.quantity("relative_margin", m);
    report.verdict(
        format!("area_sigma_{}", expectation.suffix()),
        Verdict::exceeds(m, STRICT_REL),
    );
    Ok(report)
}

fn centroid_winding(curve: &LevelCurve) -> Option<i32> {
    let n = curve.nodes.len() / curve.multiplicity;
    let pts: Vec<[f64; 2]> = curve.nodes[..n].iter().map(|p| [p.x1, p.x2]).collect();
    let c = pts
        .iter()
        .fold([0.0, 0.0], |a, p| [a[0] + p[0] / n as f64, a[1] + p[1] / n as f64]);
    let scale = pts.iter().map(|p| p[0].hypot(p[1])).fold(0.0, f64::max);
    if pts.iter().any(|p| (p[0] - c[0]).hypot(p[1] - c[1]) <= 1e-6 * scale) {
        return None;
    }
    let total: f64 = (0..n)
        .map(|i| {
            let (p, q) = (pts[i], pts[(i + 1) % n]);
            let (a, b) = ([p[0] - c[0], p[1] - c[1]], [q[0] - c[0], q[1] - c[1]]);
            (a[0] * b[1] - a[1] * b[0]).atan2(a[0] * b[0] + a[1] * b[1])
        })
        .sum();
    Some((total / TAU).round() as i32)
}

/// Planar classification of `n_levels` levels spanning the slab. With
/// `expected`, every level must show exactly that many crossings.
pub fn classify_levels(
    sigma: &WeierstrassData,
    slab: &Slab,
    n_levels: usize,
    expected: Option<usize>,
    config: &RunConfig,
) -> Result<MeasureReport> {
    let mut report = MeasureReport::new("classify_levels", config);
    report.input("slab", slab);
    let mut crossings = Vec::new();
    let mut multiplicity = Vec::new();
    let mut rotation = Vec::new();
    let mut winding = Vec::new();
    for h in slab.grid(n_levels.max(2)) {
        let c = trace_level(sigma, h, config.n_theta)?;
        crossings.push([h, c.self_intersections as f64]);
        multiplicity.push([h, c.multiplicity as f64]);
        rotation.push([h, f64::from(c.rotation_index)]);
        winding.push([h, centroid_winding(&c).map_or(f64::NAN, f64::from)]);
        if c.multiplicity > 1 {
            report.note(format!(
                "h = {h}: curve retraced {} times; crossings of the retraced copies are degenerate and not counted",
                c.multiplicity
            ));
        }
    }
    let range = |v: &[[f64; 2]]| {
        v.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), p| {
            (a.min(p[1]), b.max(p[1]))
        })
    };
    let (cmin, cmax) = range(&crossings);
    let (mmin, mmax) = range(&multiplicity);
    report.quantity("self_intersections_min", cmin);
    report.quantity("self_intersections_max", cmax);
    report.quantity("multiplicity_min", mmin);
    report.quantity("multiplicity_max", mmax);
    if let Some(e) = expected {
        let bad = crossings.iter().filter(|p| p[1] != e as f64).count();
        report.verdict(format!("self_intersections_equal_{e}"), Verdict::flag(bad == 0));
    }
    report.series.insert("self_intersections".into(), crossings);
    report.series.insert("multiplicity".into(), multiplicity);
    report.series.insert("rotation_index".into(), rotation);
    report.series.insert("centroid_winding".into(), winding);
    Ok(report)
}
