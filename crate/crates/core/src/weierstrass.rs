//! The surface data model.
//!
//! A minimal annulus with vertical flux is encoded by two Laurent polynomials
//! `G₋, G₊` and a parity. With `F± = G±²` (even) or `F± = z·G±²` (odd):
//!
//! ```text
//! ψ₃ = G₋G₊ (·z),   g = G₊/G₋,   F₋ = ψ₃/g,   F₊ = ψ₃·g
//! φ₁ = (F₋ − F₊)/2z,  φ₂ = i(F₋ + F₊)/2z,  φ₃ = ψ₃/z
//! ```
//!
//! and the immersion is `X = Re ∫ (φ₁, φ₂, φ₃) dz`.

use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::laurent::{finite, AnnulusWindow, LaurentPoly, LogTermAntiderivative, C64};
use crate::quadrature;

/// Tolerance for coefficient-level predicates (relative to the largest
/// coefficient involved).
pub const COEFF_TOL: f64 = 1e-12;

/// Tolerance for the numerical reflection predicate used for odd parity.
pub const SYMMETRY_GRID_TOL: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    /// `F± = G±²`; even winding class.
    Even,
    /// `F± = z·G±²`; odd winding class.
    Odd,
}

/// The open slab `h₋ < x₃ < h₊`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, try_from = "RawSlab")]
pub struct Slab {
    h_minus: f64,
    h_plus: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSlab {
    h_minus: f64,
    h_plus: f64,
}

impl TryFrom<RawSlab> for Slab {
    type Error = Error;
    fn try_from(s: RawSlab) -> Result<Self> {
        Slab::new(s.h_minus, s.h_plus)
    }
}

impl Slab {
    pub fn new(h_minus: f64, h_plus: f64) -> Result<Self> {
        if h_minus.is_finite() && h_plus.is_finite() && h_minus < h_plus {
            Ok(Self { h_minus, h_plus })
        } else {
            Err(Error::Domain(format!(
                "slab needs finite h₋ < h₊, got ({h_minus}, {h_plus})"
            )))
        }
    }

    pub fn symmetric(half_height: f64) -> Result<Self> {
        Self::new(-half_height, half_height)
    }

    pub fn h_minus(&self) -> f64 {
        self.h_minus
    }

    pub fn h_plus(&self) -> f64 {
        self.h_plus
    }

    pub fn center(&self) -> f64 {
        0.5 * (self.h_minus + self.h_plus)
    }

    pub fn half_height(&self) -> f64 {
        0.5 * (self.h_plus - self.h_minus)
    }

    pub fn thickness(&self) -> f64 {
        self.h_plus - self.h_minus
    }

    /// Same center, thickness multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        let (c, h) = (self.center(), self.half_height() * factor);
        Self::new(c - h, c + h)
    }

    /// `n ≥ 2` equally spaced heights from `h₋` to `h₊` inclusive.
    pub fn grid(&self, n: usize) -> Vec<f64> {
        let step = self.thickness() / (n - 1) as f64;
        (0..n)
            .map(|i| {
                if i == n - 1 {
                    self.h_plus
                } else {
                    self.h_minus + step * i as f64
                }
            })
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FluxVector {
    pub f1: f64,
    pub f2: f64,
    pub f3: f64,
}

impl FluxVector {
    pub fn horizontal_norm(&self) -> f64 {
        self.f1.hypot(self.f2)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PeriodVerdict {
    pub well_defined: bool,
    pub vertical_flux: bool,
    /// `z⁻¹` coefficients of `φ₁, φ₂, φ₃`.
    #[serde(serialize_with = "ser_complex3")]
    pub residues: [C64; 3],
}

fn ser_complex3<S: serde::Serializer>(r: &[C64; 3], s: S) -> std::result::Result<S::Ok, S::Error> {
    let v: Vec<[f64; 2]> = r.iter().map(|c| [c.re, c.im]).collect();
    v.serialize(s)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MetricFactor {
    /// Conformal factor: `ds = λ|dz|`.
    pub lambda: f64,
    /// `μ = |z|λ`, the density of circle length in `θ`.
    pub mu: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct WeierstrassData {
    g_minus: LaurentPoly,
    g_plus: LaurentPoly,
    parity: Parity,
    window: AnnulusWindow,
    height_offset: f64,
    f_minus: LaurentPoly,
    f_plus: LaurentPoly,
    psi3: LaurentPoly,
    phi: [LaurentPoly; 3],
    primitives: [LogTermAntiderivative; 3],
}

/// The JSON document exchanged by the CLI.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeierstrassDoc {
    pub parity: Parity,
    pub g_minus: LaurentPoly,
    pub g_plus: LaurentPoly,
    pub window: AnnulusWindow,
    #[serde(default, skip_serializing_if = "is_zero")]
    pub height_offset: f64,
}

fn is_zero(x: &f64) -> bool {
    *x == 0.0
}

impl Serialize for WeierstrassData {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_doc().serialize(s)
    }
}

impl<'de> Deserialize<'de> for WeierstrassData {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let doc = WeierstrassDoc::deserialize(d)?;
        WeierstrassData::from_doc(doc).map_err(serde::de::Error::custom)
    }
}

fn root_moduli_inside(p: &LaurentPoly, window: &AnnulusWindow) -> Result<Vec<f64>> {
    Ok(p.roots()?
        .into_iter()
        .map(|z| z.norm())
        .filter(|&m| window.r_inner() <= m && m <= window.r_outer())
        .collect())
}

impl WeierstrassData {
    /// Builds the data from `(G₋, G₊, parity)` on `window`. `ψ₃` is taken as
    /// `G₋G₊` (times `z` for odd parity) so that the Gauss map is `G₊/G₋`.
    pub fn from_g_pair(
        g_minus: LaurentPoly,
        g_plus: LaurentPoly,
        parity: Parity,
        window: AnnulusWindow,
    ) -> Result<Self> {
        if g_minus.is_zero() || g_plus.is_zero() {
            return Err(Error::Domain("G₋ and G₊ must be nonzero".into()));
        }
        let mut moduli = root_moduli_inside(&g_minus, &window)?;
        moduli.extend(root_moduli_inside(&g_plus, &window)?);
        if !moduli.is_empty() {
            moduli.sort_by(f64::total_cmp);
            return Err(Error::InadmissibleWindow {
                r_inner: window.r_inner(),
                r_outer: window.r_outer(),
                moduli,
            });
        }

        let shift = match parity {
            Parity::Even => 0,
            Parity::Odd => 1,
        };
        let f_minus = (&g_minus * &g_minus).shift(shift);
        let f_plus = (&g_plus * &g_plus).shift(shift);
        let psi3 = (&g_minus * &g_plus).shift(shift);
        let half = C64::new(0.5, 0.0);
        let i_half = C64::new(0.0, 0.5);
        let phi = [
            (&f_minus - &f_plus).scale(half).shift(-1),
            (&f_minus + &f_plus).scale(i_half).shift(-1),
            psi3.shift(-1),
        ];
        let primitives = [
            phi[0].antiderivative(),
            phi[1].antiderivative(),
            phi[2].antiderivative(),
        ];
        Ok(Self {
            g_minus,
            g_plus,
            parity,
            window,
            height_offset: 0.0,
            f_minus,
            f_plus,
            psi3,
            phi,
            primitives,
        })
    }

    /// Builds the data from `f` and `g = g_num/g_den` (`φ₃ = fg`).
    ///
    /// `F₋ = ψ₃/g = z·f` and `F₊ = ψ₃·g = z·f·g²`; the parity is whichever of
    /// `F±` or `F±/z` admits exact Laurent square roots.
    pub fn from_fg(f: &LaurentPoly, g_num: &LaurentPoly, g_den: &LaurentPoly, window: AnnulusWindow) -> Result<Self> {
        const ROOT_TOL: f64 = 1e-10;
        if f.is_zero() || g_num.is_zero() || g_den.is_zero() {
            return Err(Error::Domain("f, g_num and g_den must be nonzero".into()));
        }
        let f_minus = f.shift(1);
        let f_plus = (&(&f_minus * g_num) * g_num)
            .div_exact(&(g_den * g_den), ROOT_TOL)
            .ok_or_else(|| Error::UnsupportedData("z·f·g² is not a Laurent polynomial".into()))?;
        let psi3_target = (&f_minus * g_num)
            .div_exact(g_den, ROOT_TOL)
            .ok_or_else(|| Error::UnsupportedData("z·f·g is not a Laurent polynomial".into()))?;

        let split = |shift: i32| -> Option<(LaurentPoly, LaurentPoly)> {
            Some((
                f_minus.shift(-shift).sqrt_exact(ROOT_TOL)?,
                f_plus.shift(-shift).sqrt_exact(ROOT_TOL)?,
            ))
        };
        let (parity, gm, mut gp) = if let Some((a, b)) = split(0) {
            (Parity::Even, a, b)
        } else if let Some((a, b)) = split(1) {
            (Parity::Odd, a, b)
        } else {
            return Err(Error::ParityUndetermined);
        };

        let shift = if parity == Parity::Odd { 1 } else { 0 };
        let psi3 = (&gm * &gp).shift(shift);
        if !psi3.approx_eq(&psi3_target, ROOT_TOL) {
            if psi3.approx_eq(&-&psi3_target, ROOT_TOL) {
                gp = -&gp;
            } else {
                return Err(Error::UnsupportedData(
                    "square roots of F± do not reproduce ψ₃ = z·f·g".into(),
                ));
            }
        }
        Self::from_g_pair(gm, gp, parity, window)
    }

    pub fn from_doc(doc: WeierstrassDoc) -> Result<Self> {
        if !doc.height_offset.is_finite() {
            return Err(Error::NonFinite("height_offset"));
        }
        Ok(Self::from_g_pair(doc.g_minus, doc.g_plus, doc.parity, doc.window)?.with_height_offset(doc.height_offset))
    }

    pub fn to_doc(&self) -> WeierstrassDoc {
        WeierstrassDoc {
            parity: self.parity,
            g_minus: self.g_minus.clone(),
            g_plus: self.g_plus.clone(),
            window: self.window,
            height_offset: self.height_offset,
        }
    }

    /// Translates the surface vertically by `offset`.
    pub fn with_height_offset(mut self, offset: f64) -> Self {
        self.height_offset = offset;
        self
    }

    /// Same surface on a different window (roots are re-checked).
    pub fn with_window(&self, window: AnnulusWindow) -> Result<Self> {
        Ok(
            Self::from_g_pair(self.g_minus.clone(), self.g_plus.clone(), self.parity, window)?
                .with_height_offset(self.height_offset),
        )
    }

    pub fn g_minus(&self) -> &LaurentPoly {
        &self.g_minus
    }
    pub fn g_plus(&self) -> &LaurentPoly {
        &self.g_plus
    }
    pub fn parity(&self) -> Parity {
        self.parity
    }
    pub fn window(&self) -> AnnulusWindow {
        self.window
    }
    pub fn height_offset(&self) -> f64 {
        self.height_offset
    }
    pub fn f_minus(&self) -> &LaurentPoly {
        &self.f_minus
    }
    pub fn f_plus(&self) -> &LaurentPoly {
        &self.f_plus
    }
    pub fn psi3(&self) -> &LaurentPoly {
        &self.psi3
    }
    pub fn phi1(&self) -> &LaurentPoly {
        &self.phi[0]
    }
    pub fn phi2(&self) -> &LaurentPoly {
        &self.phi[1]
    }
    pub fn phi3(&self) -> &LaurentPoly {
        &self.phi[2]
    }
    pub fn phis(&self) -> &[LaurentPoly; 3] {
        &self.phi
    }

    /// `g(z) = G₊(z)/G₋(z)`.
    pub fn gauss_map(&self, z: C64) -> Result<C64> {
        Ok(self.g_plus.eval(z)? / self.g_minus.eval(z)?)
    }

    pub fn period_check(&self) -> PeriodVerdict {
        self.period_check_with(COEFF_TOL)
    }

    /// Vertical flux ⇔ `F₋` and `F₊` have zero circle mean; well defined ⇔
    /// additionally `Res φ₃` is real so the height is single valued.
    pub fn period_check_with(&self, tol: f64) -> PeriodVerdict {
        let zero_mean = |f: &LaurentPoly| f.coeff(0).norm() <= tol * f.max_abs_coeff().max(f64::MIN_POSITIVE);
        let vertical_flux = zero_mean(&self.f_minus) && zero_mean(&self.f_plus);
        let residues = [self.phi[0].coeff(-1), self.phi[1].coeff(-1), self.phi[2].coeff(-1)];
        let scale = self.phi[2].max_abs_coeff().max(f64::MIN_POSITIVE);
        let real_height = residues[2].im.abs() <= tol * scale;
        PeriodVerdict {
            well_defined: vertical_flux && real_height,
            vertical_flux,
            residues,
        }
    }

    /// `Fᵢ = Im ∮ φᵢ dz = 2π Re Res φᵢ`.
    pub fn flux(&self) -> Result<FluxVector> {
        let v = self.period_check();
        if !v.well_defined {
            return Err(Error::Precondition(
                "flux requires data passing the period check".into(),
            ));
        }
        let [r1, r2, r3] = v.residues;
        Ok(FluxVector {
            f1: TAU * r1.re,
            f2: TAU * r2.re,
            f3: TAU * r3.re,
        })
    }

    fn log_anchor(&self) -> f64 {
        self.window.geometric_mean().ln()
    }

    fn check_point(z: C64) -> Result<()> {
        if !finite(z) {
            return Err(Error::NonFinite("surface point"));
        }
        if z.norm() == 0.0 {
            return Err(Error::Domain("z = 0 is outside every annulus".into()));
        }
        Ok(())
    }

    fn check_height_single_valued(&self) -> Result<()> {
        let l = self.primitives[2].log_coefficient;
        if l.im.abs() > COEFF_TOL * self.phi[2].max_abs_coeff().max(f64::MIN_POSITIVE) {
            return Err(Error::MultivaluedHeight(l.im));
        }
        Ok(())
    }

    /// `x₃(z)`, normalised to have zero mean on `|z| = √(r_inner·r_outer)`
    /// (plus the height offset).
    pub fn height(&self, z: C64) -> Result<f64> {
        Self::check_point(z)?;
        self.check_height_single_valued()?;
        Ok(self.height_at(z))
    }

    pub(crate) fn height_at(&self, z: C64) -> f64 {
        let p = &self.primitives[2];
        p.poly_part.eval_nonzero(z).re + p.log_coefficient.re * (z.norm().ln() - self.log_anchor()) + self.height_offset
    }

    /// `X(z) = Re ∫ Φ dz` with the same zero-mean normalisation as
    /// [`height`](Self::height) in every coordinate.
    pub fn immerse(&self, z: C64) -> Result<[f64; 3]> {
        Self::check_point(z)?;
        if !self.period_check().well_defined {
            return Err(Error::Precondition(
                "immersion requires data passing the period check".into(),
            ));
        }
        self.check_height_single_valued()?;
        for (i, p) in self.primitives[..2].iter().enumerate() {
            let scale = self.phi[i].max_abs_coeff().max(f64::MIN_POSITIVE);
            if p.log_coefficient.im.abs() > COEFF_TOL * scale {
                return Err(Error::MultivaluedImmersion {
                    coordinate: i + 1,
                    imag: p.log_coefficient.im,
                });
            }
        }
        Ok(self.immerse_at(z))
    }

    pub(crate) fn immerse_at(&self, z: C64) -> [f64; 3] {
        let anchor = self.log_anchor();
        let coord = |i: usize| {
            let p = &self.primitives[i];
            p.poly_part.eval_nonzero(z).re + p.log_coefficient.re * (z.norm().ln() - anchor)
        };
        [coord(0), coord(1), self.height_at(z)]
    }

    /// `λ = √(½Σ|φᵢ|²)` and `μ = |z|λ`.
    pub fn metric_factor(&self, z: C64) -> Result<MetricFactor> {
        Self::check_point(z)?;
        Ok(self.metric_at(z))
    }

    pub(crate) fn metric_at(&self, z: C64) -> MetricFactor {
        let s: f64 = self.phi.iter().map(|p| p.eval_nonzero(z).norm_sqr()).sum();
        let lambda = (0.5 * s).sqrt();
        MetricFactor {
            lambda,
            mu: z.norm() * lambda,
        }
    }

    /// `μ = ½|ψ₃|(1/|g| + |g|)`; requires `g(z)` finite and nonzero.
    pub fn mu_from_psi3(&self, z: C64) -> Result<f64> {
        Self::check_point(z)?;
        let g = self.gauss_map(z)?;
        let ag = g.norm();
        if !(ag.is_finite() && ag > 0.0) {
            return Err(Error::Domain(format!("Gauss map is {g} at {z}")));
        }
        Ok(0.5 * self.psi3.eval_nonzero(z).norm() * (1.0 / ag + ag))
    }

    /// Reflection symmetry through `{x₃ = 0}` under `z ↦ 1/z̄`.
    ///
    /// Even parity uses the coefficient test `bₙ = conj(a₋ₙ)`; odd parity uses
    /// the pointwise identities `g(1/z̄)·conj(g(z)) = 1` and
    /// `ψ₃(1/z̄) = conj(ψ₃(z))` on three circles.
    pub fn symmetry_check(&self) -> bool {
        match self.parity {
            Parity::Even => self.g_plus.approx_eq(&self.g_minus.reflect(), COEFF_TOL),
            Parity::Odd => self.symmetry_on_grid(64),
        }
    }

    fn symmetry_on_grid(&self, n: usize) -> bool {
        let w = self.window;
        if !w.contains(1.0) {
            return false;
        }
        // largest q < 1 with both q and 1/q in the window
        let q = w.r_inner().max(1.0 / w.r_outer());
        let q = q.sqrt();
        let radii = [q, 1.0, 1.0 / q];
        let psi_scale = self.psi3.max_abs_coeff().max(f64::MIN_POSITIVE);
        radii.iter().all(|&r| {
            quadrature::theta_nodes(n).all(|t| {
                let z = C64::from_polar(r, t);
                let zr = z.conj().inv();
                let (Ok(g), Ok(gr)) = (self.gauss_map(z), self.gauss_map(zr)) else {
                    return false;
                };
                let gauss_ok = (gr * g.conj() - 1.0).norm() <= SYMMETRY_GRID_TOL;
                let dpsi = self.psi3.eval_nonzero(zr) - self.psi3.eval_nonzero(z).conj();
                gauss_ok && dpsi.norm() <= SYMMETRY_GRID_TOL * psi_scale * r.max(1.0 / r).powi(4)
            })
        })
    }

    /// Winding number of `g = G₊/G₋` on `|z| = r`.
    pub fn gauss_winding(&self, r: f64) -> Result<i32> {
        if !self.window.contains(r) {
            return Err(Error::Domain(format!("radius {r} outside the window")));
        }
        Ok(self.g_plus.winding_on_circle(r)? - self.g_minus.winding_on_circle(r)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn catenoid(cc: f64) -> WeierstrassData {
        let s = cc.sqrt();
        WeierstrassData::from_g_pair(
            LaurentPoly::constant(c(s, 0.0)),
            LaurentPoly::monomial(-1, c(s, 0.0)),
            Parity::Odd,
            AnnulusWindow::new((-1f64).exp(), 1f64.exp()).unwrap(),
        )
        .unwrap()
    }

    // widest gap between root moduli, unless the data is reflection
    // symmetric, in which case the window is inversion invariant
    fn figure_eight(a: [C64; 3], b: [C64; 3]) -> WeierstrassData {
        let gm = LaurentPoly::from_terms([(-1, a[0]), (0, a[1]), (1, a[2])]).unwrap();
        let gp = LaurentPoly::from_terms([(-1, b[0]), (0, b[1]), (1, b[2])]).unwrap();
        let window = if gp.approx_eq(&gm.reflect(), 1e-12) {
            AnnulusWindow::new(0.6, 1.0 / 0.6).unwrap()
        } else {
            let mut m: Vec<f64> = gm
                .roots()
                .unwrap()
                .iter()
                .chain(&gp.roots().unwrap())
                .map(|z| z.norm())
                .collect();
            m.sort_by(f64::total_cmp);
            let (lo, hi) = m
                .windows(2)
                .map(|w| (w[0], w[1]))
                .max_by(|x, y| (x.1 / x.0).total_cmp(&(y.1 / y.0)))
                .unwrap();
            AnnulusWindow::new(lo * 1.01, hi / 1.01).unwrap()
        };
        WeierstrassData::from_g_pair(gm, gp, Parity::Even, window).unwrap()
    }

    fn symmetric_eight() -> WeierstrassData {
        let a0 = c(0.0, 2f64.sqrt());
        figure_eight([c(1.0, 0.0), a0, c(1.0, 0.0)], [c(1.0, 0.0), a0.conj(), c(1.0, 0.0)])
    }

    #[test]
    fn catenoid_from_g_pair() {
        let d = catenoid(2.0);
        assert!(d.phi3().approx_eq(&LaurentPoly::monomial(-1, c(2.0, 0.0)), 1e-15));
        let g = d.gauss_map(c(0.5, 0.5)).unwrap();
        assert!((g - c(0.5, 0.5).inv()).norm() < 1e-15);
        assert_eq!(d.gauss_winding(1.0).unwrap(), -1);
    }

    #[test]
    fn perturbed_cover_f_minus_expansion() {
        let (c1, e1, d1) = (c(1.1, 0.2), c(0.05, -0.02), c(0.001, 0.003));
        let (c2, e2, d2) = (c(0.9, 0.0), c(0.01, 0.04), c(-0.002, 0.0));
        let gm = LaurentPoly::from_terms([(1, c1), (0, e1), (-1, d1)]).unwrap();
        let gp = LaurentPoly::from_terms([(-1, c2), (0, e2), (1, d2)]).unwrap();
        let d = WeierstrassData::from_g_pair(gm, gp, Parity::Even, AnnulusWindow::new(0.5, 2.0).unwrap()).unwrap();
        let expect = LaurentPoly::from_terms([
            (2, c1 * c1),
            (1, c1 * e1 * 2.0),
            (0, e1 * e1 + c1 * d1 * 2.0),
            (-1, e1 * d1 * 2.0),
            (-2, d1 * d1),
        ])
        .unwrap();
        assert!(d.f_minus().approx_eq(&expect, 1e-14));
    }

    #[test]
    fn figure_eight_phi3_numerator() {
        let a = [c(0.7, 0.1), c(-0.3, 0.9), c(1.2, -0.4)];
        let b = [c(0.5, -0.6), c(0.8, 0.2), c(-0.1, 1.1)];
        let d = figure_eight(a, b);
        // z³φ₃ = a₋₁b₋₁ + (a₋₁b₀+a₀b₋₁)z + (a₋₁b₁+a₀b₀+a₁b₋₁)z² + (a₀b₁+a₁b₀)z³ + a₁b₁z⁴
        let num = LaurentPoly::from_terms([
            (0, a[0] * b[0]),
            (1, a[0] * b[1] + a[1] * b[0]),
            (2, a[0] * b[2] + a[1] * b[1] + a[2] * b[0]),
            (3, a[1] * b[2] + a[2] * b[1]),
            (4, a[2] * b[2]),
        ])
        .unwrap();
        assert!(d.phi3().shift(3).approx_eq(&num, 1e-14));
    }

    #[test]
    fn identity_five_and_conformality() {
        let d = figure_eight(
            [c(0.7, 0.1), c(-0.3, 0.9), c(1.2, -0.4)],
            [c(0.5, -0.6), c(0.8, 0.2), c(-0.1, 1.1)],
        );
        let psi1 = d.phi1().shift(1);
        let psi2 = d.phi2().shift(1);
        let i = c(0.0, 1.0);
        assert!((&psi1 - &psi2.scale(i)).approx_eq(d.f_minus(), 1e-14));
        assert!((&-&psi1 - &psi2.scale(i)).approx_eq(d.f_plus(), 1e-14));
        let conf = &(&(d.phi1() * d.phi1()) + &(d.phi2() * d.phi2())) + &(d.phi3() * d.phi3());
        assert!(conf.max_abs_coeff() <= 1e-14 * d.phi1().max_abs_coeff().powi(2));
        assert!((d.psi3() * d.psi3()).approx_eq(&(d.f_minus() * d.f_plus()), 1e-13));
    }

    #[test]
    fn from_fg_recovers_catenoid_and_double_cover() {
        let w = AnnulusWindow::new(0.5, 2.0).unwrap();
        let d = WeierstrassData::from_fg(
            &LaurentPoly::constant(c(1.0, 0.0)),
            &LaurentPoly::monomial(-1, c(1.0, 0.0)),
            &LaurentPoly::constant(c(1.0, 0.0)),
            w,
        )
        .unwrap();
        assert_eq!(d.parity(), Parity::Odd);
        assert!(d.f_minus().approx_eq(&LaurentPoly::monomial(1, c(1.0, 0.0)), 1e-14));
        assert!(d.f_plus().approx_eq(&LaurentPoly::monomial(-1, c(1.0, 0.0)), 1e-14));

        let (d1, d2) = (c(0.8, 0.3), c(1.5, -0.5));
        let cover = WeierstrassData::from_fg(
            &LaurentPoly::monomial(1, d2),
            &LaurentPoly::monomial(-2, d1),
            &LaurentPoly::constant(c(1.0, 0.0)),
            w,
        )
        .unwrap();
        assert_eq!(cover.parity(), Parity::Even);
        assert!(cover.f_minus().approx_eq(&LaurentPoly::monomial(2, d2), 1e-13));
        assert!(cover
            .f_plus()
            .approx_eq(&LaurentPoly::monomial(-2, d2 * d1 * d1), 1e-13));
        assert!(cover.phi3().approx_eq(&LaurentPoly::monomial(-1, d1 * d2), 1e-13));
    }

    #[test]
    fn from_fg_figure_eight_and_errors() {
        let a0 = c(0.0, 2f64.sqrt());
        let gm = LaurentPoly::from_terms([(-1, c(1.0, 0.0)), (0, a0), (1, c(1.0, 0.0))]).unwrap();
        let gp = gm.reflect();
        let f = (&gm * &gm).shift(-1);
        let w = AnnulusWindow::new(0.6, 1.6).unwrap();
        let d = WeierstrassData::from_fg(&f, &gp, &gm, w).unwrap();
        assert_eq!(d.parity(), Parity::Even);
        let reference = symmetric_eight();
        assert!(d.phi3().approx_eq(reference.phi3(), 1e-12));
        assert!(d.phi1().approx_eq(reference.phi1(), 1e-12));

        let bad = WeierstrassData::from_fg(
            &LaurentPoly::constant(c(1.0, 0.0)),
            &LaurentPoly::constant(c(1.0, 0.0)),
            &LaurentPoly::from_real_terms([(0, 1.0), (1, 3.0)]).unwrap(),
            w,
        );
        assert!(matches!(bad, Err(Error::UnsupportedData(_))));

        // z·f = z·(1 + z) is neither a square nor z times a square
        let undetermined = WeierstrassData::from_fg(
            &LaurentPoly::from_real_terms([(0, 1.0), (1, 1.0)]).unwrap(),
            &LaurentPoly::constant(c(1.0, 0.0)),
            &LaurentPoly::constant(c(1.0, 0.0)),
            w,
        );
        assert!(matches!(undetermined, Err(Error::ParityUndetermined)));
    }

    #[test]
    fn window_with_roots_is_rejected() {
        let gm = LaurentPoly::from_real_terms([(1, 1.0), (-1, -1.0)]).unwrap();
        let err = WeierstrassData::from_g_pair(gm.clone(), gm, Parity::Even, AnnulusWindow::new(0.5, 2.0).unwrap())
            .unwrap_err();
        match err {
            Error::InadmissibleWindow { moduli, .. } => assert_eq!(moduli.len(), 4),
            e => panic!("unexpected {e}"),
        }
    }

    #[test]
    fn period_check_examples() {
        let d = symmetric_eight();
        let v = d.period_check();
        assert!(v.well_defined && v.vertical_flux);

        // a₀² + 2a₋₁a₁ = 0.1
        let a0 = c(-1.9f64, 0.0).sqrt();
        let bad = figure_eight([c(1.0, 0.0), a0, c(1.0, 0.0)], [c(1.0, 0.0), a0.conj(), c(1.0, 0.0)]);
        let v = bad.period_check();
        assert!(!v.vertical_flux && !v.well_defined);
        assert!(bad.flux().is_err());
        assert!(bad.immerse(c(1.0, 0.0)).is_err());
    }

    #[test]
    fn catenoid_immersion_values() {
        let d = catenoid(1.0);
        let x = d.immerse(c(1.0, 0.0)).unwrap();
        assert!((x[0] - 1.0).abs() < 1e-15 && x[1].abs() < 1e-15 && x[2].abs() < 1e-15);
        let x = d.immerse(c(0.0, 1.0)).unwrap();
        assert!(x[0].abs() < 1e-15 && (x[1] + 1.0).abs() < 1e-15);
        let e = 1f64.exp();
        let x = d.immerse(C64::from_polar(e, 0.4)).unwrap();
        assert!((x[0].hypot(x[1]) - 1f64.cosh()).abs() < 1e-14);
        assert!((x[2] - 1.0).abs() < 1e-15);
        for r in [0.5, 1.3, 2.0] {
            assert!((d.height(C64::from_polar(r, 0.7)).unwrap() - f64::ln(r)).abs() < 1e-15);
        }
    }

    #[test]
    fn catenoid_metric() {
        let d = catenoid(1.0);
        let m = d.metric_factor(c(0.0, 1.0)).unwrap();
        assert!((m.lambda - 1.0).abs() < 1e-15);
        for r in [0.4, 1.7] {
            let m = d.metric_factor(C64::from_polar(r, 1.1)).unwrap();
            assert!((m.mu - 0.5 * (r + 1.0 / r)).abs() < 1e-14);
        }
    }

    #[test]
    fn mu_routes_agree() {
        let d = figure_eight(
            [c(0.7, 0.1), c(-0.3, 0.9), c(1.2, -0.4)],
            [c(0.5, -0.6), c(0.8, 0.2), c(-0.1, 1.1)],
        );
        for (r, t) in [(0.7, 0.3), (1.0, 2.0), (1.4, -1.0)] {
            let z = C64::from_polar(r, t);
            let a = d.metric_factor(z).unwrap().mu;
            let b = d.mu_from_psi3(z).unwrap();
            assert!((a - b).abs() <= 1e-12 * a);
        }
    }

    #[test]
    fn flux_of_catenoid_and_symmetric_eight() {
        let f = catenoid(1.5).flux().unwrap();
        assert!((f.f3 - TAU * 1.5).abs() < 1e-13 && f.horizontal_norm() == 0.0);
        let f = symmetric_eight().flux().unwrap();
        assert!((f.f3 - TAU * 4.0).abs() < 1e-12);
        assert!(f.horizontal_norm() <= 1e-12 * f.f3);
    }

    #[test]
    fn height_is_odd_under_inversion_for_symmetric_data() {
        let d = symmetric_eight();
        for (r, t) in [(0.8, 0.2), (1.2, 2.5), (0.65, -1.3)] {
            let z = C64::from_polar(r, t);
            let h = d.height(z).unwrap();
            let hr = d.height(z.conj().inv()).unwrap();
            assert!((h + hr).abs() < 1e-13);
        }
        let gm = d.window().geometric_mean();
        let mean = quadrature::periodic_trapezoid(256, |t| d.height(C64::from_polar(gm, t)).unwrap());
        assert!(mean.abs() < 1e-13);
    }

    #[test]
    fn symmetry_check_cases() {
        assert!(symmetric_eight().symmetry_check());
        let a0 = c(0.0, 2f64.sqrt());
        let broken = figure_eight(
            [c(1.0, 0.0), a0, c(1.0, 0.0)],
            [c(1.0, 0.0), a0.conj() + 0.1, c(1.0, 0.0)],
        );
        assert!(!broken.symmetry_check());
        assert!(catenoid(1.0).symmetry_check());
    }

    #[test]
    fn gauss_winding_of_symmetric_eight_is_zero() {
        let d = symmetric_eight();
        for r in [0.7, 1.0, 1.5] {
            assert_eq!(d.gauss_winding(r).unwrap(), 0);
        }
        assert!(d.gauss_winding(3.0).is_err());
    }

    #[test]
    fn doc_round_trip() {
        let d = symmetric_eight().with_height_offset(0.25);
        let s = serde_json::to_string(&d).unwrap();
        let back: WeierstrassData = serde_json::from_str(&s).unwrap();
        assert_eq!(back, d);
        assert!(serde_json::from_str::<WeierstrassData>(
            r#"{"parity":"even","g_minus":[[0,1,0]],"g_plus":[[0,1,0]],"window":{"r_inner":0.5,"r_outer":2},"extra":1}"#
        )
        .is_err());
    }

    #[test]
    fn slab_basics() {
        assert!(Slab::new(1.0, 1.0).is_err());
        let s = Slab::new(-1.0, 3.0).unwrap();
        assert_eq!((s.center(), s.half_height()), (1.0, 2.0));
        let g = s.grid(5);
        assert_eq!(g, vec![-1.0, 0.0, 1.0, 2.0, 3.0]);
        assert_eq!(s.scaled(0.25).unwrap(), Slab::new(0.5, 1.5).unwrap());
    }
}
