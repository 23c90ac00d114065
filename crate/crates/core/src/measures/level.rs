use std::f64::consts::TAU;

use rayon::prelude::*;
use rustfft::FftPlanner;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::laurent::C64;
use crate::quadrature::theta_nodes;
use crate::weierstrass::{Slab, WeierstrassData};

/// Crossing points closer than this (relative to the curve size) are merged.
pub const MERGE_TOL: f64 = 1e-9;

const PROBES: usize = 32;
const MAX_NEWTON: usize = 200;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LevelNode {
    pub theta: f64,
    pub r: f64,
    pub x1: f64,
    pub x2: f64,
    pub x3: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Crossing {
    pub x1: f64,
    pub x2: f64,
}

/// The level set `Σ ∩ {x₃ = h}` traced as a graph `r(θ)` over the circle.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LevelCurve {
    pub h: f64,
    pub nodes: Vec<LevelNode>,
    /// `ℓ(h)`, counted with multiplicity.
    pub length: f64,
    /// Transversal self-crossings of one traversal of the planar curve.
    pub self_intersections: usize,
    /// Number of times the planar curve retraces itself (1 when embedded
    /// or immersed with isolated crossings, k for a k-fold cover).
    pub multiplicity: usize,
    pub crossings: Vec<Crossing>,
    /// Tangent winding number of one traversal.
    pub rotation_index: i32,
}

impl LevelCurve {
    pub fn max_height_error(&self) -> f64 {
        self.nodes.iter().map(|n| (n.x3 - self.h).abs()).fold(0.0, f64::max)
    }

    /// CSV with header `theta,r,x1,x2,x3` and 17 significant digits.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("theta,r,x1,x2,x3\n");
        for n in &self.nodes {
            out.push_str(&format!(
                "{:.16e},{:.16e},{:.16e},{:.16e},{:.16e}\n",
                n.theta, n.r, n.x1, n.x2, n.x3
            ));
        }
        out
    }
}

/// The unique `r` in the window with `x₃(re^{iθ}) = h`.
pub fn level_radius(data: &WeierstrassData, h: f64, theta: f64) -> Result<f64> {
    if !h.is_finite() || !theta.is_finite() {
        return Err(Error::NonFinite("level_radius input"));
    }
    data.height(C64::from_polar(data.window().geometric_mean(), theta))?;
    solve_radius(data, h, theta)
}

pub(super) fn solve_radius(data: &WeierstrassData, h: f64, theta: f64) -> Result<f64> {
    let (u, w) = (C64::from_polar(1.0, theta), data.window());
    let (a, b) = (w.r_inner().ln(), w.r_outer().ln());
    let at = |t: f64| u * t.exp();
    let f = |t: f64| data.height_at(at(t)) - h;

    let probe = |j: usize| a + (b - a) * j as f64 / (PROBES - 1) as f64;
    let values: Vec<f64> = (0..PROBES).map(|j| f(probe(j))).collect();
    let changes: Vec<usize> = (0..PROBES - 1)
        .filter(|&j| (values[j] > 0.0) != (values[j + 1] > 0.0))
        .collect();
    let j = match changes.as_slice() {
        [] => return Err(Error::HeightOutOfRange { height: h, theta }),
        [j] => *j,
        _ => return Err(Error::NonMonotoneRay { theta }),
    };
    let (mut lo, mut hi) = (probe(j), probe(j + 1));
    let slope = |t: f64| data.psi3().eval_nonzero(at(t)).re;
    let sign = slope(lo) > 0.0;
    for i in 0..PROBES {
        let s = slope(lo + (hi - lo) * i as f64 / (PROBES - 1) as f64);
        if s == 0.0 || (s > 0.0) != sign {
            return Err(Error::NonMonotoneRay { theta });
        }
    }

    let f_lo_positive = values[j] > 0.0;
    let mut t = 0.5 * (lo + hi);
    for _ in 0..MAX_NEWTON {
        let v = f(t);
        if v == 0.0 {
            return Ok(t.exp());
        }
        if (v > 0.0) == f_lo_positive {
            lo = t;
        } else {
            hi = t;
        }
        let mut next = t - v / slope(t);
        if !(next > lo.min(hi) && next < lo.max(hi)) {
            next = 0.5 * (lo + hi);
        }
        if (next - t).abs() <= 1e-15 * t.abs().max(1.0) {
            return Ok(next.exp());
        }
        t = next;
    }
    Err(Error::NoConvergence(format!(
        "level radius at h = {h}, theta = {theta}"
    )))
}

fn spectral_derivative(values: &[f64]) -> Vec<f64> {
    let n = values.len();
    let mut planner = FftPlanner::<f64>::new();
    let mut buf: Vec<C64> = values.iter().map(|&v| C64::new(v, 0.0)).collect();
    planner.plan_fft_forward(n).process(&mut buf);
    for (j, c) in buf.iter_mut().enumerate() {
        let k = if 2 * j < n {
            j as f64
        } else if 2 * j == n {
            0.0
        } else {
            j as f64 - n as f64
        };
        *c *= C64::new(0.0, k);
    }
    planner.plan_fft_inverse(n).process(&mut buf);
    buf.iter().map(|c| c.re / n as f64).collect()
}

/// Traces `Σ_h` on `n_theta` uniform angles and measures it.
pub fn trace_level(data: &WeierstrassData, h: f64, n_theta: usize) -> Result<LevelCurve> {
    if n_theta < 8 {
        return Err(Error::Domain(format!("need at least 8 theta nodes, got {n_theta}")));
    }
    if !h.is_finite() {
        return Err(Error::NonFinite("level height"));
    }
    data.immerse(C64::from_polar(data.window().geometric_mean(), 0.0))?;

    let thetas: Vec<f64> = theta_nodes(n_theta).collect();
    let radii = thetas
        .par_iter()
        .map(|&t| solve_radius(data, h, t))
        .collect::<Result<Vec<f64>>>()?;
    let dr = spectral_derivative(&radii);

    let pieces: Vec<(LevelNode, f64)> = thetas
        .par_iter()
        .zip(&radii)
        .zip(&dr)
        .map(|((&theta, &r), &drdt)| {
            let z = C64::from_polar(r, theta);
            let [x1, x2, x3] = data.immerse_at(z);
            let speed = data.metric_at(z).lambda * drdt.hypot(r);
            (LevelNode { theta, r, x1, x2, x3 }, speed)
        })
        .collect();
    let length = pieces.iter().map(|p| p.1).sum::<f64>() * TAU / n_theta as f64;
    let nodes: Vec<LevelNode> = pieces.into_iter().map(|p| p.0).collect();

    let points: Vec<[f64; 2]> = nodes.iter().map(|n| [n.x1, n.x2]).collect();
    let multiplicity = traversal_multiplicity(&points);
    let fundamental = fundamental_arc(data, h, &points, multiplicity)?;
    let crossings = self_crossings(&fundamental);
    Ok(LevelCurve {
        h,
        length,
        self_intersections: crossings.len(),
        multiplicity,
        rotation_index: rotation_index(&fundamental),
        crossings,
        nodes,
    })
}

fn curve_scale(points: &[[f64; 2]]) -> f64 {
    points
        .iter()
        .map(|p| p[0].hypot(p[1]))
        .fold(0.0, f64::max)
        .max(f64::MIN_POSITIVE)
}

/// Number of times the closed curve through `points` is traversed: the gcd of
/// the frequencies carrying non-negligible Fourier mass in `x₁ + ix₂`.
fn traversal_multiplicity(points: &[[f64; 2]]) -> usize {
    let n = points.len();
    let mut buf: Vec<C64> = points.iter().map(|p| C64::new(p[0], p[1])).collect();
    FftPlanner::<f64>::new().plan_fft_forward(n).process(&mut buf);
    let peak = buf.iter().skip(1).map(|c| c.norm()).fold(0.0, f64::max);
    if peak == 0.0 {
        return 1;
    }
    let g = buf
        .iter()
        .enumerate()
        .skip(1)
        .filter(|(_, c)| c.norm() > MERGE_TOL * peak)
        .map(|(j, _)| j.min(n - j))
        .fold(0, gcd);
    g.max(1)
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// One traversal of an `m`-fold level curve, resampled when `m` does not
/// divide the node count.
fn fundamental_arc(data: &WeierstrassData, h: f64, points: &[[f64; 2]], m: usize) -> Result<Vec<[f64; 2]>> {
    let n = points.len();
    if n.is_multiple_of(m) {
        return Ok(points[..n / m].to_vec());
    }
    let k = n.div_ceil(m);
    (0..k)
        .into_par_iter()
        .map(|j| {
            let theta = TAU * j as f64 / (m * k) as f64;
            let z = C64::from_polar(solve_radius(data, h, theta)?, theta);
            let [x1, x2, _] = data.immerse_at(z);
            Ok([x1, x2])
        })
        .collect()
}

fn cross(a: [f64; 2], b: [f64; 2]) -> f64 {
    a[0] * b[1] - a[1] * b[0]
}

fn sub(a: [f64; 2], b: [f64; 2]) -> [f64; 2] {
    [a[0] - b[0], a[1] - b[1]]
}

/// Crossing points of the closed polyline through `points`, found by a sweep
/// over segment x-extents and merged within [`MERGE_TOL`].
fn self_crossings(points: &[[f64; 2]]) -> Vec<Crossing> {
    const SLACK: f64 = 1e-12;
    let n = points.len();
    if n < 4 {
        return Vec::new();
    }
    let seg = |i: usize| (points[i], points[(i + 1) % n]);
    let mut order: Vec<usize> = (0..n).collect();
    let xmin = |i: usize| seg(i).0[0].min(seg(i).1[0]);
    let xmax = |i: usize| seg(i).0[0].max(seg(i).1[0]);
    order.sort_by(|&a, &b| xmin(a).total_cmp(&xmin(b)));

    let mut found: Vec<[f64; 2]> = Vec::new();
    for (pos, &i) in order.iter().enumerate() {
        let (p1, p2) = seg(i);
        let (ylo, yhi) = (p1[1].min(p2[1]), p1[1].max(p2[1]));
        for &j in &order[pos + 1..] {
            if xmin(j) > xmax(i) {
                break;
            }
            let gap = i.abs_diff(j);
            if gap <= 1 || gap == n - 1 {
                continue;
            }
            let (q1, q2) = seg(j);
            if q1[1].max(q2[1]) < ylo || q1[1].min(q2[1]) > yhi {
                continue;
            }
            let (d1, d2) = (sub(p2, p1), sub(q2, q1));
            let denom = cross(d1, d2);
            if denom.abs() <= 1e-14 * d1[0].hypot(d1[1]) * d2[0].hypot(d2[1]) {
                continue;
            }
            let w = sub(q1, p1);
            let s = cross(w, d2) / denom;
            let t = cross(w, d1) / denom;
            if (-SLACK..=1.0 + SLACK).contains(&s) && (-SLACK..=1.0 + SLACK).contains(&t) {
                found.push([p1[0] + s * d1[0], p1[1] + s * d1[1]]);
            }
        }
    }

    let tol = MERGE_TOL * curve_scale(points);
    let mut merged: Vec<[f64; 2]> = Vec::new();
    for p in found {
        if !merged.iter().any(|q| (p[0] - q[0]).hypot(p[1] - q[1]) <= tol) {
            merged.push(p);
        }
    }
    merged.sort_by(|a, b| a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1])));
    merged.into_iter().map(|[x1, x2]| Crossing { x1, x2 }).collect()
}

fn rotation_index(points: &[[f64; 2]]) -> i32 {
    let n = points.len();
    let edge = |i: usize| sub(points[(i + 1) % n], points[i]);
    let total: f64 = (0..n)
        .map(|i| {
            let (a, b) = (edge(i), edge((i + 1) % n));
            cross(a, b).atan2(a[0] * b[0] + a[1] * b[1])
        })
        .sum();
    (total / TAU).round() as i32
}

/// Height of the shortest level in `slab`: coarse grid of `n_grid` traced
/// levels, refined by golden-section search. Returns `(h₀, ℓ(h₀))`.
pub fn waist_height(data: &WeierstrassData, slab: &Slab, n_grid: usize, n_theta: usize) -> Result<(f64, f64)> {
    let n_grid = n_grid.max(3);
    let grid = slab.grid(n_grid);
    let len = |h: f64| trace_level(data, h, n_theta).map(|c| c.length);
    let lengths = grid.iter().map(|&h| len(h)).collect::<Result<Vec<_>>>()?;
    let best = (0..n_grid)
        .min_by(|&a, &b| lengths[a].total_cmp(&lengths[b]))
        .unwrap_or(0);
    let (mut a, mut b) = (grid[best.saturating_sub(1)], grid[(best + 1).min(n_grid - 1)]);
    let phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - phi * (b - a);
    let mut d = a + phi * (b - a);
    let (mut fc, mut fd) = (len(c)?, len(d)?);
    while (b - a).abs() > 1e-8 * slab.thickness() {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - phi * (b - a);
            fc = len(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + phi * (b - a);
            fd = len(d)?;
        }
    }
    let h0 = 0.5 * (a + b);
    let l0 = len(h0)?;
    if lengths[best] < l0 {
        return Ok((grid[best], lengths[best]));
    }
    Ok((h0, l0))
}
