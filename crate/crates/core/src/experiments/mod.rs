//! Named, machine-checkable experiments. Every scenario produces a
//! [`MeasureReport`]; a failed inequality is a failing verdict, never an
//! error, and construction or tracing failures are recorded in the report.

mod catalog;
mod compare;

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::families::THIN_FACTOR;
use crate::quadrature::DEFAULT_THETA_NODES;
use crate::weierstrass::{Slab, WeierstrassData, COEFF_TOL};

pub use catalog::{check_data, ScenarioKind};
pub use compare::{classify_levels, compare_areas, compare_lengths, Expectation};

/// Relative margin below which a strict inequality is not certified.
pub const STRICT_REL: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunConfig {
    pub n_theta: usize,
    /// Coefficient-equality tolerance for the period and symmetry predicates.
    pub tol: f64,
    pub seed: u64,
    /// Heights in length comparisons (odd, so the slab center is included).
    pub n_heights: usize,
    /// Radii in `t = ln r` grids (odd, so the geometric mean is included).
    pub n_t: usize,
    /// Random data sets in randomized scenarios.
    pub random_sets: usize,
    /// Perturbation size of the default perturbed double cover.
    pub eps1: f64,
    /// Factor applied to the attained height range to get the default slab.
    pub thin_factor: f64,
    /// Explicit slab (clipped to the attained range) instead of the default.
    pub slab: Option<Slab>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            n_theta: DEFAULT_THETA_NODES,
            tol: COEFF_TOL,
            seed: 0x5eed,
            n_heights: 33,
            n_t: 51,
            random_sets: 100,
            eps1: 0.05,
            thin_factor: THIN_FACTOR,
            slab: None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Verdict {
    pub pass: bool,
    /// Signed distance to failure: positive on the passing side.
    pub margin: f64,
    pub tolerance: f64,
}

impl Verdict {
    /// `value ≤ tol`.
    pub fn at_most(value: f64, tol: f64) -> Self {
        Self {
            pass: value <= tol,
            margin: tol - value,
            tolerance: tol,
        }
    }

    /// `margin > slack`.
    pub fn exceeds(margin: f64, slack: f64) -> Self {
        Self {
            pass: margin > slack,
            margin,
            tolerance: slack,
        }
    }

    pub fn flag(pass: bool) -> Self {
        Self {
            pass,
            margin: if pass { 1.0 } else { -1.0 },
            tolerance: 0.0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Provenance {
    pub tool: &'static str,
    pub version: &'static str,
    pub config: RunConfig,
    pub inputs: BTreeMap<String, serde_json::Value>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Failure {
    pub message: String,
    pub numerical: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MeasureReport {
    pub scenario: String,
    pub quantities: BTreeMap<String, f64>,
    pub verdicts: BTreeMap<String, Verdict>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub series: BTreeMap<String, Vec<[f64; 2]>>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub diagnostics: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure: Option<Failure>,
    pub provenance: Provenance,
}

impl MeasureReport {
    pub fn new(scenario: impl Into<String>, config: &RunConfig) -> Self {
        Self {
            scenario: scenario.into(),
            quantities: BTreeMap::new(),
            verdicts: BTreeMap::new(),
            series: BTreeMap::new(),
            diagnostics: Vec::new(),
            failure: None,
            provenance: Provenance {
                tool: env!("CARGO_PKG_NAME"),
                version: env!("CARGO_PKG_VERSION"),
                config: config.clone(),
                inputs: BTreeMap::new(),
            },
        }
    }

    pub fn quantity(&mut self, name: impl Into<String>, value: f64) {
        self.quantities.insert(name.into(), value);
    }

    pub fn verdict(&mut self, name: impl Into<String>, v: Verdict) {
        self.verdicts.insert(name.into(), v);
    }

    pub fn note(&mut self, msg: impl Into<String>) {
        self.diagnostics.push(msg.into());
    }

    pub fn input(&mut self, name: impl Into<String>, value: impl Serialize) {
        let v = serde_json::to_value(value).unwrap_or(serde_json::Value::Null);
        self.provenance.inputs.insert(name.into(), v);
    }

    pub fn fail_with(&mut self, e: &Error) {
        self.failure = Some(Failure {
            message: e.to_string(),
            numerical: e.is_numerical(),
        });
    }

    /// Adds every verdict, quantity, series and note of `other`, with names
    /// prefixed by `prefix.` unless `prefix` is empty.
    pub fn absorb(&mut self, prefix: &str, other: MeasureReport) {
        let key = |k: String| if prefix.is_empty() { k } else { format!("{prefix}.{k}") };
        for (k, v) in other.quantities {
            self.quantities.insert(key(k), v);
        }
        for (k, v) in other.verdicts {
            self.verdicts.insert(key(k), v);
        }
        for (k, v) in other.series {
            self.series.insert(key(k), v);
        }
        self.diagnostics.extend(other.diagnostics.into_iter().map(|d| {
            if prefix.is_empty() {
                d
            } else {
                format!("{prefix}: {d}")
            }
        }));
        if self.failure.is_none() {
            self.failure = other.failure;
        }
    }

    pub fn all_pass(&self) -> bool {
        self.failure.is_none() && self.verdicts.values().all(|v| v.pass)
    }

    /// `0` all pass, `1` a failing verdict, `3` numerical failure, `2` any
    /// other failure (invalid input).
    pub fn exit_status(&self) -> i32 {
        match &self.failure {
            Some(f) if f.numerical => 3,
            Some(_) => 2,
            None if self.all_pass() => 0,
            None => 1,
        }
    }

    /// Verdicts whose name starts with `prefix`.
    pub fn verdicts_with<'a>(&'a self, prefix: &'a str) -> impl Iterator<Item = (&'a String, &'a Verdict)> + 'a {
        self.verdicts.iter().filter(move |(k, _)| k.starts_with(prefix))
    }
}

/// A catalog entry, optionally run on caller-supplied data.
#[derive(Clone, Debug)]
pub struct Scenario {
    pub kind: ScenarioKind,
    pub data: Option<WeierstrassData>,
    pub config: RunConfig,
}

impl Scenario {
    pub fn new(kind: ScenarioKind) -> Self {
        Self {
            kind,
            data: None,
            config: RunConfig::default(),
        }
    }

    pub fn with_data(mut self, data: WeierstrassData) -> Self {
        self.data = Some(data);
        self
    }

    pub fn with_config(mut self, config: RunConfig) -> Self {
        self.config = config;
        self
    }
}

/// Runs one scenario. Never returns an error: failures become the report's
/// `failure` record.
pub fn run_scenario(s: &Scenario) -> MeasureReport {
    let mut report = MeasureReport::new(s.kind.name(), &s.config);
    if let Some(d) = &s.data {
        report.input("data", d);
    }
    if let Err(e) = catalog::run(s, &mut report) {
        report.fail_with(&e);
    }
    report
}

/// Runs every catalog scenario in parallel, in catalog order.
pub fn run_catalog(config: &RunConfig) -> Vec<MeasureReport> {
    use rayon::prelude::*;
    ScenarioKind::ALL
        .par_iter()
        .map(|&k| run_scenario(&Scenario::new(k).with_config(config.clone())))
        .collect()
}

pub(crate) fn default_slab(data: &WeierstrassData, config: &RunConfig) -> Result<Slab> {
    match &config.slab {
        Some(s) => crate::families::clip_to_slab(data, s),
        None => crate::families::attained_range(data, config.n_theta.max(256))?.scaled(config.thin_factor),
    }
}

/// `n` heights spanning the slab with the center exactly in the middle.
pub(crate) fn height_grid(slab: &Slab, n: usize) -> Vec<f64> {
    let n = n.max(3) | 1;
    let (c, h) = (slab.center(), slab.half_height());
    (0..n)
        .map(|i| {
            let s = (2 * i) as f64 / (n - 1) as f64 - 1.0;
            c + h * s
        })
        .collect()
}
