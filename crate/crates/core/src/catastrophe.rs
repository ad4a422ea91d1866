//! Relocalization catastrophes: parameter values where the ground state
//! jumps between well families.
//!
//! A one-parameter family of potentials is described by a [`FamilyPath`];
//! along it the gap `Delta = E0(outer candidate) - E0(inner candidate)` is
//! evaluated either from the harmonic well models or from the numerical
//! spectrum. A catastrophe is a sign change of `Delta`; its location is
//! pinned by bisection. Numerically the same event shows up as the ground
//! state's dominant localization region flipping, which
//! [`relocalization_scan`] tracks directly.

use crate::perturbation::{self, PerturbationError};
use crate::potential::{ArnoldPotential, PotentialError, ShiftParameters};
use crate::spectral::{self, GridSpec, Parity, SpectralError};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CatastropheError {
    #[error("invalid path point: {0}")]
    InvalidPoint(String),
    #[error("degenerate potential at swept value {value}: {reason}")]
    Degenerate { value: f64, reason: String },
    #[error(
        "gap does not change sign on [{lo}, {hi}] (Delta = {delta_lo:.6e} and \
         {delta_hi:.6e}): no catastrophe on this segment"
    )]
    NoSignChange {
        lo: f64,
        hi: f64,
        delta_lo: f64,
        delta_hi: f64,
    },
    #[error("no {class}-dominant state among the {count} computed states")]
    MissingClass { class: &'static str, count: usize },
    #[error(transparent)]
    Potential(#[from] PotentialError),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
    #[error(transparent)]
    Perturbation(#[from] PerturbationError),
}

/// The one-parameter families studied for catastrophes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PathKind {
    /// Double barrier with alpha = r beta at fixed beta; swept value is the
    /// ratio r.
    K5MuRatio,
    /// Double barrier at fixed alpha; swept value is beta.
    K5AlphaBeta,
    /// Triple barrier with beta = alpha, gamma = (1 + eta) alpha at fixed
    /// alpha; swept value is eta.
    K7Eta,
    /// Triple barrier on the equal-depth surface beta = gamma = sigma alpha
    /// at fixed alpha; swept value is sigma. Carries no catastrophe.
    K7Sigma,
}

impl PathKind {
    pub fn fixed_name(&self) -> &'static str {
        match self {
            PathKind::K5MuRatio => "beta",
            PathKind::K5AlphaBeta | PathKind::K7Eta | PathKind::K7Sigma => "alpha",
        }
    }

    pub fn swept_name(&self) -> &'static str {
        match self {
            PathKind::K5MuRatio => "r",
            PathKind::K5AlphaBeta => "beta",
            PathKind::K7Eta => "eta",
            PathKind::K7Sigma => "sigma",
        }
    }
}

/// A path through parameter space: one fixed generator, one swept value.
#[derive(Debug, Clone, Copy)]
pub struct FamilyPath {
    pub kind: PathKind,
    /// Value of the fixed generator (see [`PathKind::fixed_name`]).
    pub fixed: f64,
    /// Mass term used by both estimators.
    pub lambda_sq: f64,
}

impl FamilyPath {
    pub fn new(kind: PathKind, fixed: f64) -> Result<Self, CatastropheError> {
        if !(fixed.is_finite() && fixed > 0.0) {
            return Err(CatastropheError::InvalidPoint(format!(
                "fixed {} must be positive, got {fixed}",
                kind.fixed_name()
            )));
        }
        Ok(Self {
            kind,
            fixed,
            lambda_sq: 1.0,
        })
    }

    pub fn with_lambda_sq(mut self, lambda_sq: f64) -> Result<Self, CatastropheError> {
        if !(lambda_sq.is_finite() && lambda_sq > 0.0) {
            return Err(CatastropheError::InvalidPoint(format!(
                "lambda_sq must be positive, got {lambda_sq}"
            )));
        }
        self.lambda_sq = lambda_sq;
        Ok(self)
    }

    /// Instantiate the shift parameters at a swept value.
    pub fn shift_at(&self, value: f64) -> Result<ShiftParameters, CatastropheError> {
        if !value.is_finite() {
            return Err(CatastropheError::InvalidPoint(format!(
                "swept {} must be finite, got {value}",
                self.kind.swept_name()
            )));
        }
        let params: Vec<f64> = match self.kind {
            PathKind::K5MuRatio => vec![value * self.fixed, self.fixed],
            PathKind::K5AlphaBeta => vec![self.fixed, value],
            PathKind::K7Eta => vec![self.fixed, self.fixed, (1.0 + value) * self.fixed],
            PathKind::K7Sigma => vec![self.fixed, value * self.fixed, value * self.fixed],
        };
        if let Some(p) = params.iter().find(|&&p| p <= 0.0) {
            return Err(CatastropheError::Degenerate {
                value,
                reason: format!(
                    "generator collapses to {p}: the potential loses its wells"
                ),
            });
        }
        ShiftParameters::with_default_weights(&params).map_err(CatastropheError::from)
    }
}

/// How to evaluate the gap.
#[derive(Debug, Clone, Copy)]
pub enum Estimator {
    /// Leading-order harmonic well models.
    Harmonic,
    /// Ground energies of the two localization classes from the finite-
    /// difference solver.
    Numeric(NumericConfig),
}

#[derive(Debug, Clone, Copy)]
pub struct NumericConfig {
    pub points: usize,
    pub n_states: usize,
    /// Box half-width; `None` selects it from the well geometry per point.
    pub half_width: Option<f64>,
}

impl Default for NumericConfig {
    fn default() -> Self {
        Self {
            points: 2001,
            n_states: 6,
            half_width: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EstimatorKind {
    Harmonic,
    Numeric,
}

impl Estimator {
    fn kind(&self) -> EstimatorKind {
        match self {
            Estimator::Harmonic => EstimatorKind::Harmonic,
            Estimator::Numeric(_) => EstimatorKind::Numeric,
        }
    }
}

/// One gap evaluation along a path.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct LocusSample {
    /// Swept parameter value.
    pub value: f64,
    /// Delta = E0(outer) - E0(inner): positive means the inner/central
    /// candidate is the ground state.
    pub delta: f64,
    pub estimator: EstimatorKind,
    /// True when this sample is the midpoint of a converged sign-change
    /// bracket rather than a plain evaluation.
    pub bracketing: bool,
}

/// Largest barrier radius, separating "inner" from "outer" wells.
fn outer_barrier_radius(shift: &ShiftParameters) -> f64 {
    crate::potential::extrema(shift)
        .iter()
        .filter(|r| r.kind == crate::potential::ExtremumKind::Maximum)
        .fold(0.0f64, |acc, r| acc.max(r.position))
}

fn harmonic_gap(shift: &ShiftParameters, lambda_sq: f64) -> Result<f64, CatastropheError> {
    let wells = perturbation::well_models(shift, lambda_sq)?;
    let barrier = outer_barrier_radius(shift);
    let mut inner = f64::INFINITY;
    let mut outer = f64::INFINITY;
    for w in &wells {
        let e0 = w.level(0);
        if w.x_min < barrier {
            inner = inner.min(e0);
        } else {
            outer = outer.min(e0);
        }
    }
    if !inner.is_finite() {
        return Err(CatastropheError::MissingClass {
            class: "inner",
            count: wells.len(),
        });
    }
    if !outer.is_finite() {
        return Err(CatastropheError::MissingClass {
            class: "outer",
            count: wells.len(),
        });
    }
    Ok(outer - inner)
}

/// Per-state inner weight: total localization weight of the regions whose
/// midpoints sit inside the outermost barrier radius.
fn inner_weights(result: &spectral::SpectralResult, barrier: f64) -> Vec<f64> {
    result
        .localization
        .iter()
        .map(|row| {
            result
                .regions
                .iter()
                .zip(row)
                .filter(|((lo, hi), _)| ((lo + hi) * 0.5).abs() < barrier)
                .map(|(_, w)| w)
                .sum()
        })
        .collect()
}

fn numeric_solve(
    shift: &ShiftParameters,
    lambda_sq: f64,
    cfg: &NumericConfig,
) -> Result<spectral::SpectralResult, CatastropheError> {
    let pot = ArnoldPotential::from_shift(shift);
    let grid = match cfg.half_width {
        Some(l) => GridSpec::new(l, cfg.points, lambda_sq)?,
        None => GridSpec::auto_for(&pot, cfg.n_states, lambda_sq, cfg.points)?,
    };
    spectral::solve(&pot, &grid, cfg.n_states).map_err(CatastropheError::from)
}

fn numeric_gap(
    shift: &ShiftParameters,
    lambda_sq: f64,
    cfg: &NumericConfig,
) -> Result<f64, CatastropheError> {
    let result = numeric_solve(shift, lambda_sq, cfg)?;
    let barrier = outer_barrier_radius(shift);
    let weights = inner_weights(&result, barrier);
    let mut inner = None;
    let mut outer = None;
    for (i, &w) in weights.iter().enumerate() {
        if w > 0.5 && inner.is_none() {
            inner = Some(result.energies[i]);
        }
        if w < 0.5 && outer.is_none() {
            outer = Some(result.energies[i]);
        }
        if inner.is_some() && outer.is_some() {
            break;
        }
    }
    let inner = inner.ok_or(CatastropheError::MissingClass {
        class: "inner",
        count: weights.len(),
    })?;
    let outer = outer.ok_or(CatastropheError::MissingClass {
        class: "outer",
        count: weights.len(),
    })?;
    Ok(outer - inner)
}

/// Evaluate the gap at one swept value.
pub fn gap(
    path: &FamilyPath,
    value: f64,
    estimator: &Estimator,
) -> Result<LocusSample, CatastropheError> {
    let shift = path.shift_at(value)?;
    let delta = match estimator {
        Estimator::Harmonic => harmonic_gap(&shift, path.lambda_sq)?,
        Estimator::Numeric(cfg) => numeric_gap(&shift, path.lambda_sq, cfg)?,
    };
    Ok(LocusSample {
        value,
        delta,
        estimator: estimator.kind(),
        bracketing: false,
    })
}

pub const DEFAULT_ROOT_TOL: f64 = 1e-8;

/// Bisect the gap's sign change on `[lo, hi]` down to `tol` on the swept
/// parameter. Requires opposite signs at the ends.
pub fn critical_root(
    path: &FamilyPath,
    interval: (f64, f64),
    estimator: &Estimator,
    tol: f64,
) -> Result<LocusSample, CatastropheError> {
    let (mut lo, mut hi) = interval;
    if !(lo < hi) {
        return Err(CatastropheError::InvalidPoint(format!(
            "interval [{lo}, {hi}] is empty"
        )));
    }
    let mut d_lo = gap(path, lo, estimator)?.delta;
    let d_hi = gap(path, hi, estimator)?.delta;
    if d_lo == 0.0 {
        return Ok(LocusSample {
            value: lo,
            delta: 0.0,
            estimator: estimator.kind(),
            bracketing: true,
        });
    }
    if d_lo.signum() == d_hi.signum() {
        return Err(CatastropheError::NoSignChange {
            lo,
            hi,
            delta_lo: d_lo,
            delta_hi: d_hi,
        });
    }
    let mut d_mid = d_lo;
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        d_mid = gap(path, mid, estimator)?.delta;
        if d_mid.signum() == d_lo.signum() {
            lo = mid;
            d_lo = d_mid;
        } else {
            hi = mid;
        }
    }
    Ok(LocusSample {
        value: 0.5 * (lo + hi),
        delta: d_mid,
        estimator: estimator.kind(),
        bracketing: true,
    })
}

/// One point of a critical curve; `critical` is `None` when the branch has
/// no root at this fixed value.
#[derive(Debug, Clone, Serialize)]
pub struct LocusPoint {
    pub fixed: f64,
    pub branch: &'static str,
    pub critical: Option<f64>,
    pub delta_residual: Option<f64>,
}

/// Search brackets per path kind. The upper k5 branch follows the
/// asymptote beta ~ alpha, the lower one is the anomalous small-beta root;
/// roots that do not exist are reported as `None`, never invented.
fn branch_brackets(kind: PathKind, fixed: f64) -> Vec<(&'static str, f64, f64)> {
    match kind {
        PathKind::K5AlphaBeta => vec![
            ("lower", 1e-4 * (1.0 + fixed), fixed),
            ("upper", fixed, 4.0 * fixed + 4.0),
        ],
        PathKind::K5MuRatio => vec![("main", 1e-3, 1.0)],
        PathKind::K7Eta => vec![("main", 0.0, 0.5)],
        PathKind::K7Sigma => vec![("main", 0.2, 2.0)],
    }
}

/// Map `critical_root` across a grid of fixed values (in parallel), keeping
/// grid order in the output. Missing roots and degenerate points become
/// `None` entries.
pub fn locus_curve(
    kind: PathKind,
    lambda_sq: f64,
    fixed_values: &[f64],
    estimator: &Estimator,
    tol: f64,
) -> Result<Vec<LocusPoint>, CatastropheError> {
    let points: Vec<Vec<LocusPoint>> = fixed_values
        .par_iter()
        .map(|&fixed| {
            let path = match FamilyPath::new(kind, fixed)
                .and_then(|p| p.with_lambda_sq(lambda_sq))
            {
                Ok(p) => p,
                Err(_) => {
                    return branch_brackets(kind, fixed)
                        .into_iter()
                        .map(|(branch, _, _)| LocusPoint {
                            fixed,
                            branch,
                            critical: None,
                            delta_residual: None,
                        })
                        .collect();
                }
            };
            branch_brackets(kind, fixed)
                .into_iter()
                .map(|(branch, lo, hi)| {
                    match critical_root(&path, (lo, hi), estimator, tol) {
                        Ok(sample) => LocusPoint {
                            fixed,
                            branch,
                            critical: Some(sample.value),
                            delta_residual: Some(sample.delta),
                        },
                        Err(_) => LocusPoint {
                            fixed,
                            branch,
                            critical: None,
                            delta_residual: None,
                        },
                    }
                })
                .collect()
        })
        .collect();
    Ok(points.into_iter().flatten().collect())
}

/// One numeric scan sample: the ground state's energy, inner localization
/// weight, and parity at a swept value.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ScanSample {
    pub value: f64,
    pub ground_energy: f64,
    pub inner_weight: f64,
    pub parity: Parity,
}

/// Solve the family across a grid of swept values (in parallel) and report
/// the ground state's localization at each.
pub fn relocalization_scan(
    path: &FamilyPath,
    values: &[f64],
    cfg: &NumericConfig,
) -> Result<Vec<ScanSample>, CatastropheError> {
    values
        .par_iter()
        .map(|&value| {
            let shift = path.shift_at(value)?;
            let result = numeric_solve(&shift, path.lambda_sq, cfg)?;
            let barrier = outer_barrier_radius(&shift);
            let inner = inner_weights(&result, barrier);
            Ok(ScanSample {
                value,
                ground_energy: result.energies[0],
                inner_weight: inner[0],
                parity: result.parities[0],
            })
        })
        .collect()
}

/// Where the ground state's inner weight crosses 1/2, linearly interpolated
/// between the bracketing samples; `None` when the scan never crosses.
pub fn relocalization_crossing(samples: &[ScanSample]) -> Option<f64> {
    for w in samples.windows(2) {
        let (a, b) = (w[0], w[1]);
        if (a.inner_weight - 0.5) * (b.inner_weight - 0.5) <= 0.0
            && a.inner_weight != b.inner_weight
        {
            let t = (0.5 - a.inner_weight) / (b.inner_weight - a.inner_weight);
            return Some(a.value + t * (b.value - a.value));
        }
    }
    None
}
