//! Deep-well energy estimates.
//!
//! Each minimum of the potential carries a harmonic model: with t2 the
//! quadratic Taylor coefficient at the minimum, the leading-order levels are
//! `E_n = depth + (2n+1) Lambda sqrt(t2)`. The curvatures come from the
//! exact rational route (`W'(xi) + 2 xi W''(xi)` at the squared minimum), so
//! the closed-form identities below hold to rounding, not to grid accuracy.
//!
//! Two closed forms specific to small N are exposed as well: the cubic
//! anharmonic coupling of the double-barrier outer wells (with its
//! smallness bounds), and the inner/outer level gap on the triple-barrier
//! equal-depth surface beta = gamma.

use crate::potential::{ArnoldPotential, ExtremumKind, ShiftParameters};
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum PerturbationError {
    #[error("not a well: curvature t2 = {0} is not positive")]
    NotAWell(f64),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error(
        "formula requires the beta = gamma surface; got beta^2 = {beta_sq}, \
         gamma^2 = {gamma_sq}"
    )]
    OffPath { beta_sq: f64, gamma_sq: f64 },
}

/// Whether a well sits at the origin or comes as a mirror pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Multiplicity {
    Central,
    Pair,
}

/// Harmonic model of one potential minimum.
#[derive(Debug, Clone, Copy)]
pub struct WellModel {
    /// 0 for the origin, shell index + 1 for a ring pair.
    pub ring: usize,
    /// Nonnegative minimum position.
    pub x_min: f64,
    /// V(x_min).
    pub depth: f64,
    /// Quadratic Taylor coefficient t2 = V''(x_min)/2 (omega^2 in the
    /// level-spacing sense: spacing = 2 Lambda sqrt(omega_sq)).
    pub omega_sq: f64,
    pub multiplicity: Multiplicity,
    pub lambda: f64,
}

impl WellModel {
    /// E_n = depth + (2n+1) Lambda sqrt(t2).
    pub fn level(&self, n: usize) -> f64 {
        self.depth + (2.0 * n as f64 + 1.0) * self.lambda * self.omega_sq.sqrt()
    }
}

/// Harmonic models of every minimum (origin and positive rings), with exact
/// curvatures evaluated at the exact squared shell radii.
pub fn well_models(
    shift: &ShiftParameters,
    lambda_sq: f64,
) -> Result<Vec<WellModel>, PerturbationError> {
    if !(lambda_sq.is_finite() && lambda_sq > 0.0) {
        return Err(PerturbationError::Invalid(format!(
            "lambda_sq must be positive, got {lambda_sq}"
        )));
    }
    let pot = ArnoldPotential::from_shift(shift);
    let shells = shift.shells_exact();
    let lambda = lambda_sq.sqrt();
    let mut out = Vec::new();
    for rec in crate::potential::extrema(shift) {
        if rec.kind != ExtremumKind::Minimum || rec.position < 0.0 {
            continue;
        }
        let xi = if rec.ring == 0 {
            BigRational::zero()
        } else {
            shells[rec.ring - 1].clone()
        };
        let t2 = pot
            .curvature_half_exact(&xi)
            .to_f64()
            .unwrap_or(f64::NAN);
        out.push(WellModel {
            ring: rec.ring,
            x_min: rec.position.max(0.0),
            depth: rec.value,
            omega_sq: t2,
            multiplicity: if rec.ring == 0 {
                Multiplicity::Central
            } else {
                Multiplicity::Pair
            },
            lambda,
        });
    }
    Ok(out)
}

/// Leading-order levels E_0..E_{n_max} of one well.
pub fn harmonic_levels(well: &WellModel, n_max: usize) -> Result<Vec<f64>, PerturbationError> {
    if !(well.omega_sq > 0.0) {
        return Err(PerturbationError::NotAWell(well.omega_sq));
    }
    Ok((0..=n_max).map(|n| well.level(n)).collect())
}

/// Cubic-coupling diagnostic of the double-barrier (N = 2) outer wells.
///
/// In the oscillator length rho of the outer well, the cubic Taylor term
/// carries the dimensionless strength lambda_cubic; it is pinched between
/// 7 rho / (3R) and 9 rho / (3R) exactly when alpha^2 < beta^2, which is the
/// regime where the anharmonic correction is asymptotically negligible.
#[derive(Debug, Clone, Copy)]
pub struct PerturbationCoupling {
    /// Oscillator length of the outer well: rho^4 = Lambda^2 / (12 R^2 beta^2).
    pub rho: f64,
    /// lambda_cubic = 4 R rho^5 (2 R^2 + 3 beta^2) / Lambda^2.
    pub lambda_cubic: f64,
    /// Lower bound 7 rho / (3R).
    pub lower: f64,
    /// Upper bound 9 rho / (3R).
    pub upper: f64,
    /// True when alpha^2 < beta^2, the hypothesis of the bounds.
    pub in_regime: bool,
}

pub fn cubic_coupling(
    shift: &ShiftParameters,
    lambda_sq: f64,
) -> Result<PerturbationCoupling, PerturbationError> {
    if shift.n() != 2 {
        return Err(PerturbationError::Invalid(format!(
            "cubic coupling is a double-barrier diagnostic; got N = {}",
            shift.n()
        )));
    }
    let p = shift.params();
    let (alpha, beta) = (p[0], p[1]);
    if beta <= 0.0 {
        return Err(PerturbationError::Invalid(
            "beta must be positive (outer wells must exist)".to_string(),
        ));
    }
    let beta_sq = beta * beta;
    let r_sq = alpha * alpha + 2.0 * beta_sq;
    let r = r_sq.sqrt();
    let rho = (lambda_sq / (12.0 * r_sq * beta_sq)).sqrt().sqrt();
    let lambda_cubic = 4.0 * r * rho.powi(5) * (2.0 * r_sq + 3.0 * beta_sq) / lambda_sq;
    Ok(PerturbationCoupling {
        rho,
        lambda_cubic,
        lower: 7.0 * rho / (3.0 * r),
        upper: 9.0 * rho / (3.0 * r),
        in_regime: alpha * alpha < beta_sq,
    })
}

fn require_equal_depth_surface(shift: &ShiftParameters) -> Result<(), PerturbationError> {
    if shift.n() != 3 {
        return Err(PerturbationError::Invalid(format!(
            "gap formula is a triple-barrier result; got N = {}",
            shift.n()
        )));
    }
    let sq = shift.params_sq();
    if sq[1] != sq[2] {
        return Err(PerturbationError::OffPath {
            beta_sq: shift.params()[1].powi(2),
            gamma_sq: shift.params()[2].powi(2),
        });
    }
    if sq[0].is_zero() || sq[1].is_zero() {
        return Err(PerturbationError::Invalid(
            "alpha and beta must be positive on the equal-depth surface".to_string(),
        ));
    }
    Ok(())
}

/// Inner/outer level gap on the equal-depth surface beta = gamma = sigma
/// alpha: Delta_n = 12 (2n+1) alpha^3 sigma^2 (sqrt(1 + 6 sigma^2) - 1)
/// Lambda. Strictly positive for every valid input.
pub fn doublet_gap_formula(
    shift: &ShiftParameters,
    lambda: f64,
    n: usize,
) -> Result<f64, PerturbationError> {
    require_equal_depth_surface(shift)?;
    let p = shift.params();
    let alpha = p[0];
    let sigma_sq = (p[1] * p[1]) / (alpha * alpha);
    let factor = (1.0 + 6.0 * sigma_sq).sqrt() - 1.0;
    Ok(12.0 * (2.0 * n as f64 + 1.0) * alpha.powi(3) * sigma_sq * factor * lambda)
}

/// Same gap from the exact Taylor curvatures: (2n+1) (Omega - omega) Lambda
/// with omega, Omega the harmonic frequencies of the inner and outer wells.
/// The two routes agree to rounding on the equal-depth surface.
pub fn doublet_gap_curvature(
    shift: &ShiftParameters,
    lambda: f64,
    n: usize,
) -> Result<f64, PerturbationError> {
    require_equal_depth_surface(shift)?;
    let pot = ArnoldPotential::from_shift(shift);
    let shells = shift.shells_exact();
    let omega_sq = pot
        .curvature_half_exact(&shells[0])
        .to_f64()
        .unwrap_or(f64::NAN);
    let omega_cap_sq = pot
        .curvature_half_exact(&shells[2])
        .to_f64()
        .unwrap_or(f64::NAN);
    if !(omega_sq > 0.0) {
        return Err(PerturbationError::NotAWell(omega_sq));
    }
    if !(omega_cap_sq > 0.0) {
        return Err(PerturbationError::NotAWell(omega_cap_sq));
    }
    Ok((2.0 * n as f64 + 1.0) * (omega_cap_sq.sqrt() - omega_sq.sqrt()) * lambda)
}

/// Ground-level estimates of the double-barrier family at Lambda = lambda:
/// central well E0 = sqrt(3) alpha R lambda, outer wells
/// E0 = (alpha^2 - beta^2) R^4 + 2 sqrt(3) beta R lambda, R^2 = alpha^2 +
/// 2 beta^2.
pub fn ground_energy_estimates_k5(
    shift: &ShiftParameters,
    lambda: f64,
) -> Result<(f64, f64), PerturbationError> {
    if shift.n() != 2 {
        return Err(PerturbationError::Invalid(format!(
            "double-barrier estimate; got N = {}",
            shift.n()
        )));
    }
    let p = shift.params();
    let (alpha, beta) = (p[0], p[1]);
    let r_sq = alpha * alpha + 2.0 * beta * beta;
    let r = r_sq.sqrt();
    let central = 3f64.sqrt() * alpha * r * lambda;
    let outer = (alpha * alpha - beta * beta) * r_sq * r_sq + 2.0 * 3f64.sqrt() * beta * r * lambda;
    Ok((central, outer))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn shift2(alpha: f64, beta: f64) -> ShiftParameters {
        ShiftParameters::with_default_weights(&[alpha, beta]).unwrap()
    }

    fn shift3(alpha: f64, beta: f64, gamma: f64) -> ShiftParameters {
        ShiftParameters::with_default_weights(&[alpha, beta, gamma]).unwrap()
    }

    #[test]
    fn triple_barrier_well_models_reference() {
        // (1,1,1): wells at +-1 and +-sqrt(7), both of depth -49, with
        // curvatures 144 and 1008
        let shift = shift3(1.0, 1.0, 1.0);
        let wells = well_models(&shift, 1.0).unwrap();
        assert_eq!(wells.len(), 2);
        assert_eq!(wells[0].ring, 1);
        assert!((wells[0].x_min - 1.0).abs() < 1e-12);
        assert!((wells[0].depth + 49.0).abs() < 1e-12);
        assert!((wells[0].omega_sq - 144.0).abs() < 1e-9);
        assert_eq!(wells[0].multiplicity, Multiplicity::Pair);
        assert_eq!(wells[1].ring, 3);
        assert!((wells[1].x_min - 7f64.sqrt()).abs() < 1e-12);
        assert!((wells[1].depth + 49.0).abs() < 1e-12);
        assert!((wells[1].omega_sq - 1008.0).abs() < 1e-9);
        let inner = harmonic_levels(&wells[0], 1).unwrap();
        assert!((inner[0] - (-49.0 + 12.0)).abs() < 1e-9);
        assert!((inner[1] - (-49.0 + 36.0)).abs() < 1e-9);
    }

    #[test]
    fn single_barrier_levels_match_closed_form() {
        // N = 1: E_n = -alpha^4 + 2 (2n+1) alpha at Lambda = 1
        for &alpha in &[2.0f64, 3.0, 5.0] {
            let shift = ShiftParameters::with_default_weights(&[alpha]).unwrap();
            let wells = well_models(&shift, 1.0).unwrap();
            assert_eq!(wells.len(), 1);
            let levels = harmonic_levels(&wells[0], 2).unwrap();
            for (n, &e) in levels.iter().enumerate() {
                let exact = -alpha.powi(4) + 2.0 * (2.0 * n as f64 + 1.0) * alpha;
                assert!((e - exact).abs() < 1e-9, "alpha {alpha} n {n}: {e} vs {exact}");
            }
        }
    }

    #[test]
    fn harmonic_levels_reject_barriers() {
        let barrier = WellModel {
            ring: 0,
            x_min: 0.0,
            depth: 0.0,
            omega_sq: -3.0,
            multiplicity: Multiplicity::Central,
            lambda: 1.0,
        };
        assert!(matches!(
            harmonic_levels(&barrier, 1),
            Err(PerturbationError::NotAWell(_))
        ));
    }

    #[test]
    fn cubic_coupling_reference_numbers() {
        // (alpha, beta) = (1, 2): R = 3, rho^4 = 1/432, lambda = 360 rho^5
        let c = cubic_coupling(&shift2(1.0, 2.0), 1.0).unwrap();
        let rho = (1.0f64 / 432.0).powf(0.25);
        assert!((c.rho - rho).abs() < 1e-15);
        assert!((c.lambda_cubic - 360.0 * rho.powi(5)).abs() < 1e-15);
        assert!((c.lower - 7.0 * rho / 9.0).abs() < 1e-15);
        assert!((c.upper - rho).abs() < 1e-15);
        assert!(c.in_regime);
        assert!(c.lower < c.lambda_cubic && c.lambda_cubic < c.upper);
    }

    #[test]
    fn cubic_coupling_boundary_hits_upper_bound() {
        // alpha = beta makes lambda_cubic equal the upper bound exactly
        let c = cubic_coupling(&shift2(1.5, 1.5), 1.0).unwrap();
        assert!(!c.in_regime, "bound hypothesis is strict");
        assert!(
            ((c.lambda_cubic - c.upper) / c.upper).abs() < 1e-12,
            "{} vs {}",
            c.lambda_cubic,
            c.upper
        );
    }

    #[test]
    fn cubic_coupling_decays_with_beta() {
        let lam = |beta: f64| cubic_coupling(&shift2(1.0, beta), 1.0).unwrap().lambda_cubic;
        let (l2, l4, l8) = (lam(2.0), lam(4.0), lam(8.0));
        assert!(l2 > l4 && l4 > l8);
        // O(1/beta^2): doubling beta quarters lambda, up to subleading terms
        let ratio = l8 / l4;
        assert!((ratio - 0.25).abs() < 0.05, "decay ratio {ratio}");
    }

    #[test]
    fn doublet_gap_sigma_one_reference() {
        // alpha = 1, sigma = 1: Delta_0 = 12 (sqrt(7) - 1)
        let shift = shift3(1.0, 1.0, 1.0);
        let d = doublet_gap_formula(&shift, 1.0, 0).unwrap();
        assert!((d - 12.0 * (7f64.sqrt() - 1.0)).abs() < 1e-12);
        let via_curv = doublet_gap_curvature(&shift, 1.0, 0).unwrap();
        assert!(
            ((d - via_curv) / d).abs() < 1e-12,
            "formula {d} vs curvature {via_curv}"
        );
    }

    #[test]
    fn doublet_gap_off_path_rejected() {
        let shift = shift3(1.0, 1.0, 1.5);
        assert!(matches!(
            doublet_gap_formula(&shift, 1.0, 0),
            Err(PerturbationError::OffPath { .. })
        ));
        assert!(matches!(
            doublet_gap_curvature(&shift, 1.0, 0),
            Err(PerturbationError::OffPath { .. })
        ));
    }

    #[test]
    fn doublet_gap_small_sigma_asymptote() {
        // Delta_n -> 36 (2n+1) alpha^3 sigma^4 as sigma -> 0
        let alpha = 1.7;
        let sigma = 0.01;
        let shift = shift3(alpha, sigma * alpha, sigma * alpha);
        for n in 0..3 {
            let d = doublet_gap_formula(&shift, 1.0, n).unwrap();
            let asym = 36.0 * (2.0 * n as f64 + 1.0) * alpha.powi(3) * sigma.powi(4);
            assert!(
                ((d - asym) / asym).abs() < 0.01,
                "n {n}: {d} vs asymptote {asym}"
            );
        }
    }

    #[test]
    fn k5_ground_estimates_reference() {
        // alpha = beta = 1: R = sqrt(3), central 3, outer 6
        let (c, o) = ground_energy_estimates_k5(&shift2(1.0, 1.0), 1.0).unwrap();
        assert!((c - 3.0).abs() < 1e-12);
        assert!((o - 6.0).abs() < 1e-12);
        // alpha = 1, beta = 2: central 3 sqrt(3), outer -243 + 12 sqrt(3)
        let (c, o) = ground_energy_estimates_k5(&shift2(1.0, 2.0), 1.0).unwrap();
        assert!((c - 3.0 * 3f64.sqrt()).abs() < 1e-12);
        assert!((o - (-243.0 + 12.0 * 3f64.sqrt())).abs() < 1e-12);
    }

    #[test]
    fn k5_estimates_agree_with_well_models() {
        for &(alpha, beta) in &[(1.0, 1.0), (1.0, 2.0), (0.7, 1.9), (2.5, 3.0)] {
            let shift = shift2(alpha, beta);
            let (c, o) = ground_energy_estimates_k5(&shift, 1.0).unwrap();
            let wells = well_models(&shift, 1.0).unwrap();
            let central = wells.iter().find(|w| w.ring == 0).unwrap();
            let outer = wells.iter().find(|w| w.ring == 2).unwrap();
            assert!(
                (central.level(0) - c).abs() < 1e-9 * (1.0 + c.abs()),
                "central at ({alpha}, {beta})"
            );
            assert!(
                (outer.level(0) - o).abs() < 1e-9 * (1.0 + o.abs()),
                "outer at ({alpha}, {beta})"
            );
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]

        #[test]
        fn cubic_bound_holds_below_the_diagonal(
            alpha in 0.05f64..2.0,
            extra in 0.05f64..2.0,
        ) {
            let beta = alpha + extra;
            let c = cubic_coupling(&shift2(alpha, beta), 1.0).unwrap();
            prop_assert!(c.in_regime);
            prop_assert!(c.lower < c.lambda_cubic,
                "lower {} vs lambda {}", c.lower, c.lambda_cubic);
            prop_assert!(c.lambda_cubic < c.upper,
                "lambda {} vs upper {}", c.lambda_cubic, c.upper);
        }

        #[test]
        fn gap_routes_agree_everywhere(
            alpha in 0.2f64..3.0,
            sigma in 0.1f64..2.0,
            n in 0usize..4,
        ) {
            let shift = shift3(alpha, sigma * alpha, sigma * alpha);
            let f = doublet_gap_formula(&shift, 1.0, n).unwrap();
            let c = doublet_gap_curvature(&shift, 1.0, n).unwrap();
            prop_assert!(f > 0.0, "gap must be strictly positive");
            prop_assert!(((f - c) / f).abs() < 1e-12, "formula {f} vs curvature {c}");
        }
    }
}
