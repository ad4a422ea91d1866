//! Symmetric multi-well polynomial potentials of the Arnold family and their
//! bound-state physics.
//!
//! The library is organized around one construction: an even polynomial
//! potential of degree 2(N+1) whose derivative factorizes over N concentric
//! shells,
//!
//! ```text
//! V'(x) = 2(N+1) * x * (x^2 - s_0)(x^2 - s_1) ... (x^2 - s_{N-1})
//! ```
//!
//! with the shell ladder `s_j = s_{j-1} + w_j * p_j^2` generated by real
//! parameters `p = (alpha, beta, ...)` and positive integer weights `w`.
//! Around that sit:
//!
//! - [`potential`]: exact construction of the coefficients, extrema,
//!   closed-form landmark values, Taylor recentering, coefficient-to-shell
//!   inversion;
//! - [`diophantine`]: the integer divisibility structure of the coupling
//!   polynomials and the search for the minimal weight tuples;
//! - [`spectral`]: a finite-difference Dirichlet eigensolver for the lowest
//!   bound states, with parity, localization, and doublet diagnostics;
//! - [`perturbation`]: deep-well harmonic and anharmonic estimates;
//! - [`catastrophe`]: relocalization loci in parameter space, where the
//!   ground state jumps between wells.

// `!(a < b)` instead of `a >= b` throughout: the negation also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod catastrophe;
pub mod diophantine;
pub mod perturbation;
pub(crate) mod poly;
pub mod potential;
pub mod spectral;

pub use catastrophe::{
    CatastropheError, Estimator, EstimatorKind, FamilyPath, LocusPoint, LocusSample,
    NumericConfig, PathKind, ScanSample,
};
pub use potential::{
    ArnoldPotential, ExtremumKind, ExtremumRecord, PotentialError, PotentialJson,
    ShiftParameters,
};
pub use spectral::{GridSpec, Parity, SpectralError, SpectralResult};
