//! Constructors for the explicit families: catenoid covers, the perturbed
//! double cover, and the winding-zero "figure-eight" annuli. Also the
//! admissible-window and slab-clipping rules shared by the experiments.

use std::f64::consts::{E, TAU};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::laurent::{AnnulusWindow, LaurentPoly, C64};
use crate::measures::CatenoidParams;
use crate::quadrature::{theta_nodes, DEFAULT_THETA_NODES};
use crate::weierstrass::{Parity, Slab, WeierstrassData, COEFF_TOL};

pub const DEFAULT_MARGIN: f64 = 0.05;

/// Factor applied to the attained height range to get a "thin" slab.
pub const THIN_FACTOR: f64 = 0.25;

fn nonzero(name: &str, c: C64) -> Result<()> {
    if !(c.re.is_finite() && c.im.is_finite()) {
        return Err(Error::NonFinite("family parameter"));
    }
    if c.norm() == 0.0 {
        return Err(Error::InadmissibleParameters(format!("{name} must be nonzero")));
    }
    Ok(())
}

fn constraint_holds(square: C64, twice_product: C64) -> bool {
    let scale = square.norm().max(twice_product.norm()).max(f64::MIN_POSITIVE);
    (square + twice_product).norm() <= COEFF_TOL * scale
}

/// `k`-fold cover of the vertical catenoid with flux `(0, 0, f3)`, waist at
/// height `center`, on the window `(e⁻¹, e)`.
pub fn catenoid_cover(k: u32, f3: f64, center: f64) -> Result<(WeierstrassData, CatenoidParams)> {
    let params = CatenoidParams::new(f3, center, k)?;
    let s = C64::new((f3 / TAU).sqrt(), 0.0);
    let k = k as i32;
    let (lo, hi, parity) = if k % 2 == 0 {
        (k / 2, -k / 2, Parity::Even)
    } else {
        ((k - 1) / 2, -(k + 1) / 2, Parity::Odd)
    };
    let data = WeierstrassData::from_g_pair(
        LaurentPoly::monomial(lo, s),
        LaurentPoly::monomial(hi, s),
        parity,
        AnnulusWindow::new(1.0 / E, E)?,
    )?
    .with_height_offset(center);
    Ok((data, params))
}

/// `G₋ = c₁z + ε₁ + δ₁z⁻¹`, `G₊ = c₂z⁻¹ + ε₂ + δ₂z` with `εⱼ² + 2δⱼcⱼ = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PerturbedCoverParams {
    pub c1: C64,
    pub c2: C64,
    pub eps1: C64,
    pub eps2: C64,
    pub delta1: C64,
    pub delta2: C64,
}

impl PerturbedCoverParams {
    /// Solves `δⱼ = −εⱼ²/(2cⱼ)`.
    pub fn solve(c1: C64, eps1: C64, c2: C64, eps2: C64) -> Result<Self> {
        nonzero("c1", c1)?;
        nonzero("c2", c2)?;
        for (c, e) in [(c1, eps1), (c2, eps2)] {
            if !(e.re.is_finite() && e.im.is_finite()) {
                return Err(Error::NonFinite("family parameter"));
            }
            if e.norm() >= c.norm() / 4.0 {
                return Err(Error::InadmissibleParameters(format!(
                    "perturbation |ε| = {} is not small against |c| = {}",
                    e.norm(),
                    c.norm()
                )));
            }
        }
        Ok(Self {
            c1,
            c2,
            eps1,
            eps2,
            delta1: -eps1 * eps1 / (2.0 * c1),
            delta2: -eps2 * eps2 / (2.0 * c2),
        })
    }

    /// The reflection-symmetric choice `c₂ = c̄₁`, `ε₂ = ε̄₁`.
    pub fn symmetric(c1: C64, eps1: C64) -> Result<Self> {
        Self::solve(c1, eps1, c1.conj(), eps1.conj())
    }

    pub fn validate(&self) -> Result<()> {
        nonzero("c1", self.c1)?;
        nonzero("c2", self.c2)?;
        if !constraint_holds(self.eps1 * self.eps1, 2.0 * self.delta1 * self.c1)
            || !constraint_holds(self.eps2 * self.eps2, 2.0 * self.delta2 * self.c2)
        {
            return Err(Error::InadmissibleParameters("ε² + 2δc ≠ 0".into()));
        }
        Ok(())
    }

    pub fn g_pair(&self) -> Result<(LaurentPoly, LaurentPoly)> {
        Ok((
            LaurentPoly::from_terms([(1, self.c1), (0, self.eps1), (-1, self.delta1)])?,
            LaurentPoly::from_terms([(-1, self.c2), (0, self.eps2), (1, self.delta2)])?,
        ))
    }
}

/// Perturbed double cover from `(c₁, ε₁)`; `symmetric` selects the
/// reflection-symmetric second triple, otherwise `c₂ = 1`, `ε₂ = 0`.
pub fn perturbed_two_cover(c1: C64, eps1: C64, symmetric: bool) -> Result<WeierstrassData> {
    let params = if symmetric {
        PerturbedCoverParams::symmetric(c1, eps1)?
    } else {
        PerturbedCoverParams::solve(c1, eps1, C64::new(1.0, 0.0), C64::new(0.0, 0.0))?
    };
    perturbed_two_cover_with(&params, DEFAULT_MARGIN)
}

pub fn perturbed_two_cover_with(params: &PerturbedCoverParams, margin: f64) -> Result<WeierstrassData> {
    params.validate()?;
    let (gm, gp) = params.g_pair()?;
    let window = admissible_annulus(&gm, &gp, margin).map_err(inadmissible)?;
    WeierstrassData::from_g_pair(gm, gp, Parity::Even, window)
}

fn inadmissible(e: Error) -> Error {
    match e {
        Error::EmptyWindow(msg) => Error::InadmissibleParameters(msg),
        e => e,
    }
}

/// `G₋ = a₋₁z⁻¹ + a₀ + a₁z`, `G₊ = b₋₁z⁻¹ + b₀ + b₁z` with
/// `a₀² + 2a₋₁a₁ = 0 = b₀² + 2b₋₁b₁`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct FigureEightParams {
    pub a_m1: C64,
    pub a_0: C64,
    pub a_1: C64,
    pub b_m1: C64,
    pub b_0: C64,
    pub b_1: C64,
}

impl FigureEightParams {
    /// Principal square roots `a₀ = √(−2a₋₁a₁)`, `b₀ = √(−2b₋₁b₁)`.
    pub fn solve(a_m1: C64, a_1: C64, b_m1: C64, b_1: C64) -> Result<Self> {
        for (name, c) in [("a_m1", a_m1), ("a_1", a_1), ("b_m1", b_m1), ("b_1", b_1)] {
            nonzero(name, c)?;
        }
        Ok(Self {
            a_m1,
            a_0: (-2.0 * a_m1 * a_1).sqrt(),
            a_1,
            b_m1,
            b_0: (-2.0 * b_m1 * b_1).sqrt(),
            b_1,
        })
    }

    /// `bₙ = conj(a₋ₙ)`.
    pub fn symmetric(a_m1: C64, a_1: C64) -> Result<Self> {
        nonzero("a_m1", a_m1)?;
        nonzero("a_1", a_1)?;
        let a_0 = (-2.0 * a_m1 * a_1).sqrt();
        Ok(Self {
            a_m1,
            a_0,
            a_1,
            b_m1: a_1.conj(),
            b_0: a_0.conj(),
            b_1: a_m1.conj(),
        })
    }

    pub fn validate(&self) -> Result<()> {
        for (name, c) in [
            ("a_m1", self.a_m1),
            ("a_0", self.a_0),
            ("a_1", self.a_1),
            ("b_m1", self.b_m1),
            ("b_0", self.b_0),
            ("b_1", self.b_1),
        ] {
            nonzero(name, c)?;
        }
        if !constraint_holds(self.a_0 * self.a_0, 2.0 * self.a_m1 * self.a_1)
            || !constraint_holds(self.b_0 * self.b_0, 2.0 * self.b_m1 * self.b_1)
        {
            return Err(Error::InadmissibleParameters(
                "a₀² + 2a₋₁a₁ ≠ 0 or b₀² + 2b₋₁b₁ ≠ 0".into(),
            ));
        }
        Ok(())
    }

    pub fn g_pair(&self) -> Result<(LaurentPoly, LaurentPoly)> {
        Ok((
            LaurentPoly::from_terms([(-1, self.a_m1), (0, self.a_0), (1, self.a_1)])?,
            LaurentPoly::from_terms([(-1, self.b_m1), (0, self.b_0), (1, self.b_1)])?,
        ))
    }
}

/// Winding-zero annulus from `(a₋₁, a₁)`; `symmetric` selects
/// `bₙ = conj(a₋ₙ)`, otherwise `b₋₁ = 2·conj(a₁)`, `b₁ = conj(a₋₁)/2`.
pub fn figure_eight(a_m1: C64, a_1: C64, symmetric: bool) -> Result<WeierstrassData> {
    let params = if symmetric {
        FigureEightParams::symmetric(a_m1, a_1)?
    } else {
        FigureEightParams::solve(a_m1, a_1, 2.0 * a_1.conj(), 0.5 * a_m1.conj())?
    };
    figure_eight_with(&params, DEFAULT_MARGIN)
}

pub fn figure_eight_with(params: &FigureEightParams, margin: f64) -> Result<WeierstrassData> {
    params.validate()?;
    let (gm, gp) = params.g_pair()?;
    let window = admissible_annulus(&gm, &gp, margin).map_err(inadmissible)?;
    WeierstrassData::from_g_pair(gm, gp, Parity::Even, window)
}

/// The gap between consecutive root moduli of `G₋` and `G₊` that contains
/// their geometric mean, shrunk by `1 + margin` at both ends. Without roots
/// the gap is `(e⁻¹, e)`.
pub fn admissible_annulus(g_minus: &LaurentPoly, g_plus: &LaurentPoly, margin: f64) -> Result<AnnulusWindow> {
    if !(margin > 0.0 && margin < 1.0) {
        return Err(Error::Domain(format!("margin must lie in (0, 1), got {margin}")));
    }
    let mut moduli: Vec<f64> = g_minus
        .roots()?
        .into_iter()
        .chain(g_plus.roots()?)
        .map(|z| z.norm())
        .collect();
    moduli.sort_by(f64::total_cmp);
    let (lo, hi) = if moduli.is_empty() {
        (1.0 / E, E)
    } else {
        let anchor = (moduli.iter().map(|m| m.ln()).sum::<f64>() / moduli.len() as f64).exp();
        moduli
            .windows(2)
            .map(|w| (w[0], w[1]))
            .find(|&(a, b)| a < anchor && anchor < b)
            .ok_or_else(|| Error::EmptyWindow(format!("no gap between root moduli {moduli:?} contains {anchor}")))?
    };
    let (lo, hi) = (lo * (1.0 + margin), hi / (1.0 + margin));
    if lo >= hi {
        return Err(Error::EmptyWindow(format!(
            "gap ({lo}, {hi}) vanishes after the margin"
        )));
    }
    AnnulusWindow::new(lo, hi)
}

/// The heights attained on every ray: from the highest point of the lower
/// boundary circle to the lowest point of the upper one.
pub fn attained_range(data: &WeierstrassData, n_theta: usize) -> Result<Slab> {
    let w = data.window();
    let circle = |r: f64| -> Result<(f64, f64)> {
        let mut ext = (f64::INFINITY, f64::NEG_INFINITY);
        for t in theta_nodes(n_theta) {
            let h = data.height(C64::from_polar(r, t))?;
            ext = (ext.0.min(h), ext.1.max(h));
        }
        Ok(ext)
    };
    let (inner, outer) = (circle(w.r_inner())?, circle(w.r_outer())?);
    let (lo, hi) = if inner.0 + inner.1 <= outer.0 + outer.1 {
        (inner.1, outer.0)
    } else {
        (outer.1, inner.0)
    };
    // stay clear of the sampled extremes by a rounding-sized amount
    let pad = 1e-9 * (hi - lo).abs().max(lo.abs().max(hi.abs()).max(1.0) * 1e-3);
    Slab::new(lo + pad, hi - pad)
        .map_err(|_| Error::EmptySlab(format!("boundary circles overlap in height: ({lo}, {hi})")))
}

/// Largest slab inside both `slab` and the attained height range.
pub fn clip_to_slab(data: &WeierstrassData, slab: &Slab) -> Result<Slab> {
    let range = attained_range(data, DEFAULT_THETA_NODES)?;
    let (lo, hi) = (range.h_minus().max(slab.h_minus()), range.h_plus().min(slab.h_plus()));
    Slab::new(lo, hi).map_err(|_| {
        Error::EmptySlab(format!(
            "requested ({}, {}) misses the attained range ({}, {})",
            slab.h_minus(),
            slab.h_plus(),
            range.h_minus(),
            range.h_plus()
        ))
    })
}

/// The attained range scaled by [`THIN_FACTOR`] about its center.
pub fn thin_slab(data: &WeierstrassData) -> Result<Slab> {
    attained_range(data, DEFAULT_THETA_NODES)?.scaled(THIN_FACTOR)
}

/// Family description accepted by the command line.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilySpec {
    pub family: FamilyKind,
    pub params: serde_json::Value,
    #[serde(default = "default_margin")]
    pub margin: f64,
    #[serde(default = "default_true")]
    pub symmetric: bool,
}

fn default_margin() -> f64 {
    DEFAULT_MARGIN
}

fn default_true() -> bool {
    true
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyKind {
    Catenoid,
    PerturbedTwoCover,
    FigureEight,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CatenoidSpec {
    #[serde(default = "one")]
    k: u32,
    f3: f64,
    #[serde(default)]
    center: f64,
}

fn one() -> u32 {
    1
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PerturbedSpec {
    c1: [f64; 2],
    eps1: [f64; 2],
    c2: Option<[f64; 2]>,
    eps2: Option<[f64; 2]>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FigureEightSpec {
    a_m1: [f64; 2],
    a_1: [f64; 2],
    b_m1: Option<[f64; 2]>,
    b_1: Option<[f64; 2]>,
}

fn cx(v: [f64; 2]) -> C64 {
    C64::new(v[0], v[1])
}

fn pair(symmetric: bool, a: Option<[f64; 2]>, b: Option<[f64; 2]>, names: &str) -> Result<Option<(C64, C64)>> {
    match (symmetric, a, b) {
        (true, None, None) => Ok(None),
        (false, Some(a), Some(b)) => Ok(Some((cx(a), cx(b)))),
        (true, _, _) => Err(Error::Domain(format!("{names} are implied by symmetric = true"))),
        (false, _, _) => Err(Error::Domain(format!("{names} are required when symmetric = false"))),
    }
}

impl FamilySpec {
    pub fn build(&self) -> Result<WeierstrassData> {
        let params = self.params.clone();
        match self.family {
            FamilyKind::Catenoid => {
                let p: CatenoidSpec = serde_json::from_value(params)?;
                Ok(catenoid_cover(p.k, p.f3, p.center)?.0)
            }
            FamilyKind::PerturbedTwoCover => {
                let p: PerturbedSpec = serde_json::from_value(params)?;
                let q = match pair(self.symmetric, p.c2, p.eps2, "c2 and eps2")? {
                    None => PerturbedCoverParams::symmetric(cx(p.c1), cx(p.eps1))?,
                    Some((c2, e2)) => PerturbedCoverParams::solve(cx(p.c1), cx(p.eps1), c2, e2)?,
                };
                perturbed_two_cover_with(&q, self.margin)
            }
            FamilyKind::FigureEight => {
                let p: FigureEightSpec = serde_json::from_value(params)?;
                let q = match pair(self.symmetric, p.b_m1, p.b_1, "b_m1 and b_1")? {
                    None => FigureEightParams::symmetric(cx(p.a_m1), cx(p.a_1))?,
                    Some((bm, bp)) => FigureEightParams::solve(cx(p.a_m1), cx(p.a_1), bm, bp)?,
                };
                figure_eight_with(&q, self.margin)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn catenoid_covers() {
        for k in 1..=3 {
            let (d, p) = catenoid_cover(k, TAU, 0.0).unwrap();
            assert_eq!(p.cover, k);
            let f = d.flux().unwrap();
            assert!((f.f3 - TAU).abs() < 1e-14);
            assert_eq!(d.gauss_winding(1.0).unwrap(), -(k as i32));
            assert!(d.period_check().well_defined);
        }
        let (d, _) = catenoid_cover(1, 3.0, 0.4).unwrap();
        assert!((d.height(c(1.0, 0.0)).unwrap() - 0.4).abs() < 1e-15);
    }

    #[test]
    fn figure_eight_window_and_flux() {
        let d = figure_eight(c(1.0, 0.0), c(1.0, 0.0), true).unwrap();
        let w = d.window();
        let (m1, m2) = ((6f64.sqrt() - 2f64.sqrt()) / 2.0, (6f64.sqrt() + 2f64.sqrt()) / 2.0);
        assert!((w.r_inner() - m1 * 1.05).abs() < 1e-10);
        assert!((w.r_outer() - m2 / 1.05).abs() < 1e-10);
        assert!((w.r_inner() - 0.5435).abs() < 1e-4 && (w.r_outer() - 1.8399).abs() < 1e-4);
        let f = d.flux().unwrap();
        assert!((f.f3 - TAU * 4.0).abs() < 1e-12);
        assert_eq!(d.gauss_winding(1.0).unwrap(), 0);
        assert!(d.symmetry_check());
    }

    #[test]
    fn perturbed_cover_window_and_limit() {
        let d = perturbed_two_cover(c(1.0, 0.0), c(0.05, 0.0), true).unwrap();
        let w = d.window();
        assert!((w.r_inner() - 0.05 * (1.0 + 3f64.sqrt()) / 2.0 * 1.05).abs() < 1e-10);
        assert!((w.r_inner() * w.r_outer() - 1.0).abs() < 1e-12);
        assert!(d.period_check().well_defined && d.symmetry_check());
        assert_eq!(d.gauss_winding(1.0).unwrap(), -2);

        let zero = perturbed_two_cover(c(1.0, 0.0), c(0.0, 0.0), true).unwrap();
        assert!(zero.f_minus().approx_eq(&LaurentPoly::monomial(2, c(1.0, 0.0)), 0.0));
        assert!(perturbed_two_cover(c(1.0, 0.0), c(0.3, 0.0), true).is_err());
    }

    #[test]
    fn constraint_violations_are_rejected() {
        let mut p = FigureEightParams::symmetric(c(1.0, 0.0), c(1.0, 0.0)).unwrap();
        p.a_0 = (c(-1.9, 0.0)).sqrt();
        assert!(matches!(
            figure_eight_with(&p, 0.05),
            Err(Error::InadmissibleParameters(_))
        ));
        assert!(figure_eight(c(0.0, 0.0), c(1.0, 0.0), true).is_err());
    }

    #[test]
    fn admissible_annulus_rules() {
        let one = LaurentPoly::constant(c(1.0, 0.0));
        let w = admissible_annulus(&one, &LaurentPoly::monomial(-1, c(1.0, 0.0)), 0.05).unwrap();
        assert!((w.r_inner() - 1.05 / E).abs() < 1e-15 && (w.r_outer() - E / 1.05).abs() < 1e-15);
        let unit = LaurentPoly::from_real_terms([(1, 1.0), (-1, -1.0)]).unwrap();
        assert!(matches!(
            admissible_annulus(&unit, &one, 0.05),
            Err(Error::EmptyWindow(_))
        ));
        assert!(admissible_annulus(&one, &one, 1.5).is_err());
    }

    #[test]
    fn clipping() {
        let (d, _) = catenoid_cover(1, TAU, 0.0).unwrap();
        let s = clip_to_slab(&d, &Slab::new(-10.0, 10.0).unwrap()).unwrap();
        // backed off the exact range (−1, 1) by 1e-9 of the thickness
        assert!((s.h_minus() + 1.0).abs() < 1e-8 && (s.h_plus() - 1.0).abs() < 1e-8 && s.h_plus() < 1.0);
        let small = Slab::new(-0.1, 0.1).unwrap();
        assert_eq!(clip_to_slab(&d, &small).unwrap(), small);
        assert!(matches!(
            clip_to_slab(&d, &Slab::new(5.0, 6.0).unwrap()),
            Err(Error::EmptySlab(_))
        ));

        let fe = figure_eight(c(1.0, 0.0), c(1.0, 0.0), true).unwrap();
        let thin = thin_slab(&fe).unwrap();
        assert!(thin.center().abs() < 1e-12);
        assert!((thin.h_plus() - 0.224).abs() < 2e-3, "{thin:?}");
    }

    #[test]
    fn family_spec_parsing() {
        let spec: FamilySpec = serde_json::from_str(
            r#"{"family":"figure_eight","params":{"a_m1":[1,0],"a_1":[1,0]},"margin":0.05,"symmetric":true}"#,
        )
        .unwrap();
        assert_eq!(
            spec.build().unwrap(),
            figure_eight(c(1.0, 0.0), c(1.0, 0.0), true).unwrap()
        );
        let bad: FamilySpec = serde_json::from_str(r#"{"family":"catenoid","params":{"f3":1,"radius":2}}"#).unwrap();
        assert!(bad.build().is_err());
        assert!(serde_json::from_str::<FamilySpec>(r#"{"family":"catenoid","params":{},"extra":1}"#).is_err());
    }
}
