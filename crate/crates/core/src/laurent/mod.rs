//! Finite Laurent polynomials `Σ cₙ zⁿ` over an annulus.
//!
//! Coefficients live in a sparse exponent map; anything with magnitude below
//! [`PRUNE_THRESHOLD`] is dropped so that `lowest`/`highest` always point at
//! nonzero coefficients. A dense copy is kept for split Horner evaluation.

mod roots;
mod serde_impl;

use std::collections::BTreeMap;
use std::f64::consts::{PI, TAU};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::quadrature;

pub use roots::{aberth_ehrlich, AberthOptions};

pub type C64 = Complex<f64>;

pub const PRUNE_THRESHOLD: f64 = 1e-300;

/// Relative distance of a root to a test circle below which winding numbers
/// are refused.
pub const DEGENERATE_CONTOUR_TOL: f64 = 1e-9;

pub(crate) fn finite(c: C64) -> bool {
    c.re.is_finite() && c.im.is_finite()
}

#[derive(Clone, PartialEq, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i32, C64>,
    lowest: i32,
    dense: Vec<C64>,
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries(self.terms.iter().map(|(n, c)| (n, c.re, c.im)))
            .finish()
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (n, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            match n {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})z")?,
                _ => write!(f, "({c})z^{n}")?,
            }
        }
        Ok(())
    }
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: C64) -> Self {
        Self::monomial(0, c)
    }

    pub fn monomial(n: i32, c: C64) -> Self {
        Self::from_map(BTreeMap::from([(n, c)]))
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs. Repeated
    /// exponents are summed. Non-finite coefficients are rejected.
    pub fn from_terms<I>(terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (i32, C64)>,
    {
        let mut map = BTreeMap::new();
        for (n, c) in terms {
            if !finite(c) {
                return Err(Error::NonFinite("Laurent coefficient"));
            }
            *map.entry(n).or_insert(C64::new(0.0, 0.0)) += c;
        }
        Ok(Self::from_map(map))
    }

    /// Same as [`from_terms`](Self::from_terms) for real coefficients.
    pub fn from_real_terms<I>(terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (i32, f64)>,
    {
        Self::from_terms(terms.into_iter().map(|(n, c)| (n, C64::new(c, 0.0))))
    }

    fn from_map(mut terms: BTreeMap<i32, C64>) -> Self {
        terms.retain(|_, c| c.norm() >= PRUNE_THRESHOLD);
        let (lowest, dense) = match (terms.keys().next(), terms.keys().next_back()) {
            (Some(&lo), Some(&hi)) => {
                let mut dense = vec![C64::new(0.0, 0.0); (hi - lo) as usize + 1];
                for (&n, &c) in &terms {
                    dense[(n - lo) as usize] = c;
                }
                (lo, dense)
            }
            _ => (0, Vec::new()),
        };
        Self { terms, lowest, dense }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Lowest exponent with a nonzero coefficient (0 for the zero polynomial).
    pub fn lowest(&self) -> i32 {
        self.lowest
    }

    /// Highest exponent with a nonzero coefficient (0 for the zero polynomial).
    pub fn highest(&self) -> i32 {
        self.terms.keys().next_back().copied().unwrap_or(0)
    }

    pub fn coeff(&self, n: i32) -> C64 {
        self.terms.get(&n).copied().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, C64)> + '_ {
        self.terms.iter().map(|(&n, &c)| (n, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.terms.values().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn sum_abs_coeffs(&self) -> f64 {
        self.terms.values().map(|c| c.norm()).sum()
    }

    /// Evaluates the polynomial at `z ≠ 0`.
    pub fn eval(&self, z: C64) -> Result<C64> {
        if !finite(z) {
            return Err(Error::NonFinite("evaluation point"));
        }
        if z.norm() == 0.0 {
            return Err(Error::Domain("Laurent polynomial evaluated at z = 0".into()));
        }
        Ok(self.eval_nonzero(z))
    }

    /// Split Horner: nonnegative powers in `z`, negative powers in `1/z`.
    /// The caller guarantees `z ≠ 0`.
    pub(crate) fn eval_nonzero(&self, z: C64) -> C64 {
        if self.dense.is_empty() {
            return C64::new(0.0, 0.0);
        }
        let lo = self.lowest;
        let hi = lo + self.dense.len() as i32 - 1;
        let at = |n: i32| self.dense[(n - lo) as usize];

        let mut pos = C64::new(0.0, 0.0);
        if hi >= 0 {
            for n in (lo.max(0)..=hi).rev() {
                pos = pos * z + at(n);
            }
            if lo > 0 {
                pos *= z.powi(lo);
            }
        }
        let mut neg = C64::new(0.0, 0.0);
        if lo < 0 {
            let w = z.inv();
            let top = hi.min(-1);
            // Σ_{m=-top}^{-lo} c_{-m} w^m = w^{-top} Σ_{j} ...
            for n in lo..=top {
                neg = neg * w + at(n);
            }
            neg *= w.powi(-top);
        }
        pos + neg
    }

    /// Multiplies by `zᵏ`.
    pub fn shift(&self, k: i32) -> Self {
        Self::from_map(self.terms.iter().map(|(&n, &c)| (n + k, c)).collect())
    }

    pub fn scale(&self, s: C64) -> Self {
        Self::from_map(self.terms.iter().map(|(&n, &c)| (n, c * s)).collect())
    }

    pub fn conj(&self) -> Self {
        Self::from_map(self.terms.iter().map(|(&n, &c)| (n, c.conj())).collect())
    }

    /// The polynomial `z ↦ conj(p(1/z̄))`, i.e. coefficients `conj(c₋ₙ)`.
    pub fn reflect(&self) -> Self {
        Self::from_map(self.terms.iter().map(|(&n, &c)| (-n, c.conj())).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::from_map(
            self.terms
                .iter()
                .filter(|(&n, _)| n != 0)
                .map(|(&n, &c)| (n - 1, c * n as f64))
                .collect(),
        )
    }

    /// Termwise antiderivative; the `z⁻¹` coefficient becomes the log term.
    pub fn antiderivative(&self) -> LogTermAntiderivative {
        LogTermAntiderivative {
            poly_part: Self::from_map(
                self.terms
                    .iter()
                    .filter(|(&n, _)| n != -1)
                    .map(|(&n, &c)| (n + 1, c / (n + 1) as f64))
                    .collect(),
            ),
            log_coefficient: self.coeff(-1),
        }
    }

    /// `(1/2π)∫ p(re^{iθ}) dθ`, which is exactly the constant coefficient.
    pub fn circle_mean(&self, r: f64) -> Result<C64> {
        check_radius(r)?;
        Ok(self.coeff(0))
    }

    /// `∫₀^{2π} |p(re^{iθ})|² dθ = 2π Σ |cₙ|² r^{2n}`.
    pub fn circle_l2(&self, r: f64) -> Result<f64> {
        check_radius(r)?;
        Ok(TAU
            * self
                .terms
                .iter()
                .map(|(&n, c)| c.norm_sqr() * r.powi(2 * n))
                .sum::<f64>())
    }

    /// Coefficients of the ordinary polynomial `z^{-lowest} p(z)`, ascending.
    pub fn ordinary_coeffs(&self) -> &[C64] {
        &self.dense
    }

    /// All roots in `ℂ∖{0}` with multiplicity.
    pub fn roots(&self) -> Result<Vec<C64>> {
        self.roots_with(&AberthOptions::default())
    }

    pub fn roots_with(&self, opts: &AberthOptions) -> Result<Vec<C64>> {
        if self.is_zero() {
            return Err(Error::Domain("roots of the zero polynomial".into()));
        }
        aberth_ehrlich(&self.dense, opts)
    }

    /// Winding number of `p` along `|z| = r`, counted algebraically as the
    /// number of roots inside the circle plus `lowest`.
    pub fn winding_on_circle(&self, r: f64) -> Result<i32> {
        check_radius(r)?;
        let roots = self.roots()?;
        let mut inside = 0;
        for z in &roots {
            let m = z.norm();
            if (m - r).abs() <= DEGENERATE_CONTOUR_TOL * r {
                return Err(Error::DegenerateContour {
                    radius: r,
                    root_modulus: m,
                });
            }
            if m < r {
                inside += 1;
            }
        }
        Ok(inside + self.lowest)
    }

    /// Trapezoid estimate of `(1/2π)∫ ∂_θ arg p(re^{iθ}) dθ = (1/2π)∫ Re(z p'/p) dθ`.
    pub fn winding_numeric(&self, r: f64, nodes: usize) -> Result<f64> {
        check_radius(r)?;
        if self.is_zero() {
            return Err(Error::Domain("winding of the zero polynomial".into()));
        }
        let dp = self.derivative();
        let integral = quadrature::periodic_trapezoid(nodes, |theta| {
            let z = C64::from_polar(r, theta);
            (z * dp.eval_nonzero(z) / self.eval_nonzero(z)).re
        });
        Ok(integral / TAU)
    }

    /// Coefficientwise comparison, relative to the larger max-coefficient.
    pub fn approx_eq(&self, other: &Self, rel_tol: f64) -> bool {
        let scale = self.max_abs_coeff().max(other.max_abs_coeff()).max(f64::MIN_POSITIVE);
        let diff = self - other;
        diff.max_abs_coeff() <= rel_tol * scale
    }

    /// Exact division `self / divisor`, or `None` when the remainder does not
    /// vanish to `rel_tol` relative to the dividend.
    pub fn div_exact(&self, divisor: &Self, rel_tol: f64) -> Option<Self> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let mut rem: Vec<C64> = self.dense.clone();
        let den = &divisor.dense;
        if rem.len() < den.len() {
            return None;
        }
        let dq = den.len() - 1;
        let lead = den[dq];
        let qlen = rem.len() - dq;
        let mut quot = vec![C64::new(0.0, 0.0); qlen];
        for i in (0..qlen).rev() {
            let q = rem[i + dq] / lead;
            quot[i] = q;
            for (j, d) in den.iter().enumerate() {
                rem[i + j] -= q * d;
            }
        }
        let scale = self.max_abs_coeff();
        if rem.iter().any(|c| c.norm() > rel_tol * scale) {
            return None;
        }
        let shift = self.lowest - divisor.lowest;
        Self::from_terms(quot.into_iter().enumerate().map(|(i, c)| (i as i32 + shift, c))).ok()
    }

    /// A Laurent polynomial `s` with `s² = self`, if one exists.
    ///
    /// The top coefficient uses the principal square root; the rest follow by
    /// back-substitution from the top down and the result is verified.
    pub fn sqrt_exact(&self, rel_tol: f64) -> Option<Self> {
        if self.is_zero() {
            return Some(Self::zero());
        }
        let (lo, hi) = (self.lowest, self.highest());
        if lo.rem_euclid(2) != 0 || hi.rem_euclid(2) != 0 {
            return None;
        }
        let (slo, shi) = (lo / 2, hi / 2);
        let len = (shi - slo) as usize + 1;
        // s[j] is the coefficient of z^{shi - j}
        let mut s = vec![C64::new(0.0, 0.0); len];
        s[0] = self.coeff(hi).sqrt();
        for j in 1..len {
            let mut acc = self.coeff(2 * shi - j as i32);
            for i in 1..j {
                acc -= s[i] * s[j - i];
            }
            s[j] = acc / (s[0] * 2.0);
        }
        let root = Self::from_terms(s.into_iter().enumerate().map(|(j, c)| (shi - j as i32, c))).ok()?;
        (&root * &root).approx_eq(self, rel_tol).then_some(root)
    }
}

fn check_radius(r: f64) -> Result<()> {
    if r.is_finite() && r > 0.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!("radius must be positive and finite, got {r}")))
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut map = self.terms.clone();
        for (&n, &c) in &rhs.terms {
            *map.entry(n).or_default() += c;
        }
        LaurentPoly::from_map(map)
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut map = self.terms.clone();
        for (&n, &c) in &rhs.terms {
            *map.entry(n).or_default() -= c;
        }
        LaurentPoly::from_map(map)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(C64::new(-1.0, 0.0))
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    /// Exact coefficient convolution.
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut map = BTreeMap::new();
        for (&n, &a) in &self.terms {
            for (&m, &b) in &rhs.terms {
                *map.entry(n + m).or_insert(C64::new(0.0, 0.0)) += a * b;
            }
        }
        LaurentPoly::from_map(map)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// `∫p dz = poly_part + log_coefficient · log z`.
#[derive(Clone, Debug, PartialEq)]
pub struct LogTermAntiderivative {
    pub poly_part: LaurentPoly,
    pub log_coefficient: C64,
}

impl LogTermAntiderivative {
    /// Recovers the integrand: `poly_part' + log_coefficient / z`.
    pub fn derivative(&self) -> LaurentPoly {
        &self.poly_part.derivative() + &LaurentPoly::monomial(-1, self.log_coefficient)
    }

    /// `Re` of the antiderivative along a branch of `log z`, with the log
    /// measured from `log_anchor` (i.e. `Re(c)(ln|z| − log_anchor) − Im(c)·arg z`).
    pub fn real_part(&self, z: C64, log_anchor: f64) -> f64 {
        let l = self.log_coefficient;
        self.poly_part.eval_nonzero(z).re + l.re * (z.norm().ln() - log_anchor) - l.im * z.arg()
    }
}

/// The open annulus `r_inner < |z| < r_outer`.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
#[serde(deny_unknown_fields, try_from = "RawWindow")]
pub struct AnnulusWindow {
    r_inner: f64,
    r_outer: f64,
}

#[derive(serde::Deserialize)]
#[serde(deny_unknown_fields)]
struct RawWindow {
    r_inner: f64,
    r_outer: f64,
}

impl TryFrom<RawWindow> for AnnulusWindow {
    type Error = Error;
    fn try_from(w: RawWindow) -> Result<Self> {
        AnnulusWindow::new(w.r_inner, w.r_outer)
    }
}

impl AnnulusWindow {
    pub fn new(r_inner: f64, r_outer: f64) -> Result<Self> {
        if r_inner.is_finite() && r_outer.is_finite() && 0.0 < r_inner && r_inner < r_outer {
            Ok(Self { r_inner, r_outer })
        } else {
            Err(Error::Domain(format!(
                "annulus window needs 0 < r_inner < r_outer < ∞, got ({r_inner}, {r_outer})"
            )))
        }
    }

    pub fn r_inner(&self) -> f64 {
        self.r_inner
    }

    pub fn r_outer(&self) -> f64 {
        self.r_outer
    }

    pub fn geometric_mean(&self) -> f64 {
        (self.r_inner * self.r_outer).sqrt()
    }

    pub fn contains(&self, r: f64) -> bool {
        self.r_inner < r && r < self.r_outer
    }

    /// `n` radii uniform in `t = ln r`, strictly inside the window and
    /// symmetric about the geometric mean. With odd `n` the geometric-mean
    /// radius is one of them.
    pub fn log_grid(&self, n: usize) -> Vec<f64> {
        let (a, b) = (self.r_inner.ln(), self.r_outer.ln());
        let h = (b - a) / (n as f64 + 1.0);
        (1..=n).map(|i| (a + h * i as f64).exp()).collect()
    }
}

/// Period of `log` around the origin, used by winding and flux identities.
pub const TWO_PI_I: C64 = C64::new(0.0, 2.0 * PI);
