//! Construction and exact algebra of the symmetric multi-well family.
//!
//! A member with N barriers ("wells between walls") is the even polynomial
//!
//! ```text
//! V(x) = sum_{m=0}^{N} (-1)^m C(N+1, m) c_m^2 x^{2(N+1-m)},   c_0^2 = 1,
//! ```
//!
//! whose derivative factorizes over N shell radii,
//!
//! ```text
//! V'(x) = 2(N+1) x (x^2 - s_0)(x^2 - s_1)...(x^2 - s_{N-1}),
//! ```
//!
//! with the ladder `s_0 = p_0^2`, `s_j = s_{j-1} + w_j p_j^2` built from the
//! well-geometry parameters `p = (alpha, beta, gamma, ...)` and positive
//! integer weights `w`. Squared quantities are carried as exact rationals, so
//! coupling construction, extremum values, and Taylor recentering incur no
//! truncation error; `f64` views are cached for the numerical layers.

use crate::poly;
use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum PotentialError {
    #[error("invalid shift parameters: {0}")]
    InvalidShift(String),
    #[error("not an {n}-barrier potential: {reason}")]
    NotMultiWell { n: usize, reason: String },
    #[error("unsupported barrier count N={0}: {1}")]
    UnsupportedN(usize, String),
    #[error("invalid raw couplings: {0}")]
    InvalidCouplings(String),
}

/// Reference weight tuples (w_1..w_{N-1}) for N = 1..=8. These are the
/// lexicographically minimal tuples that keep every coupling polynomial
/// integral; the diophantine search reproduces them and the acceptance suite
/// pins N = 3, 4.
pub const REFERENCE_WEIGHTS: [&[u64]; 8] = [
    &[],
    &[2],
    &[3, 3],
    &[4, 6, 12],
    &[5, 10, 10, 10],
    &[6, 15, 20, 30, 60],
    &[7, 21, 105, 35, 105, 105],
    &[8, 28, 56, 70, 280, 140, 280],
];

/// Default weight tuple for a given barrier count.
pub fn default_weights(n: usize) -> Result<Vec<u64>, PotentialError> {
    REFERENCE_WEIGHTS
        .get(n.wrapping_sub(1))
        .map(|w| w.to_vec())
        .ok_or_else(|| {
            PotentialError::UnsupportedN(
                n,
                "no reference weight tuple beyond N=8; pass weights explicitly \
                 (diophantine::minimal_weights can search for one)"
                    .into(),
            )
        })
}

fn rat_u(v: u128) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

fn rational_from_f64(v: f64, what: &str) -> Result<BigRational, PotentialError> {
    if !v.is_finite() {
        return Err(PotentialError::InvalidShift(format!(
            "{what} must be finite, got {v}"
        )));
    }
    Ok(BigRational::from_f64(v).expect("finite f64 is rational"))
}

/// Well geometry: N shell generators and N-1 integer weights.
///
/// The squared generators are stored exactly; the ladder of squared shell
/// radii is strictly increasing precisely when all generators past `alpha`
/// are nonzero.
#[derive(Debug, Clone, PartialEq)]
pub struct ShiftParameters {
    n: usize,
    params_sq: Vec<BigRational>,
    params_f64: Vec<f64>,
    weights: Vec<u64>,
}

impl ShiftParameters {
    /// From real generators `(alpha, beta, ...)`; each is squared exactly.
    pub fn new(params: &[f64], weights: &[u64]) -> Result<Self, PotentialError> {
        let params_sq = params
            .iter()
            .map(|&p| rational_from_f64(p, "shift parameter").map(|r| &r * &r))
            .collect::<Result<Vec<_>, _>>()?;
        Self::validated(params_sq, params.to_vec(), weights.to_vec())
    }

    /// From exact squared generators, e.g. `beta^2 = 2/3`.
    pub fn from_squares(
        params_sq: Vec<BigRational>,
        weights: Vec<u64>,
    ) -> Result<Self, PotentialError> {
        let params_f64 = params_sq
            .iter()
            .map(|s| s.to_f64().unwrap_or(f64::NAN).sqrt())
            .collect();
        Self::validated(params_sq, params_f64, weights)
    }

    /// Generators with the reference weight tuple for their length.
    pub fn with_default_weights(params: &[f64]) -> Result<Self, PotentialError> {
        Self::new(params, &default_weights(params.len())?)
    }

    fn validated(
        params_sq: Vec<BigRational>,
        params_f64: Vec<f64>,
        weights: Vec<u64>,
    ) -> Result<Self, PotentialError> {
        let n = params_sq.len();
        if n == 0 {
            return Err(PotentialError::InvalidShift(
                "at least one generator (alpha) required".into(),
            ));
        }
        if weights.len() != n - 1 {
            return Err(PotentialError::InvalidShift(format!(
                "N={n} needs {} weights, got {}",
                n - 1,
                weights.len()
            )));
        }
        if let Some(w) = weights.iter().find(|&&w| w == 0) {
            return Err(PotentialError::InvalidShift(format!(
                "weights must be positive integers, got {w}"
            )));
        }
        if let Some(p) = params_sq.iter().find(|p| p.is_negative()) {
            return Err(PotentialError::InvalidShift(format!(
                "squared generators must be nonnegative, got {p}"
            )));
        }
        Ok(Self {
            n,
            params_sq,
            params_f64,
            weights,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Generators `(alpha, beta, ...)` as reals.
    pub fn params(&self) -> &[f64] {
        &self.params_f64
    }

    /// Exact squared generators.
    pub fn params_sq(&self) -> &[BigRational] {
        &self.params_sq
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    /// Squared shell radii `s_0 <= s_1 <= ...`, exact.
    pub fn shells_exact(&self) -> Vec<BigRational> {
        let mut acc = BigRational::zero();
        let mut out = Vec::with_capacity(self.n);
        for (j, p) in self.params_sq.iter().enumerate() {
            let w = if j == 0 { 1 } else { self.weights[j - 1] };
            acc += p * BigRational::from_integer(BigInt::from(w));
            out.push(acc.clone());
        }
        out
    }

    /// Squared shell radii as f64.
    pub fn shells(&self) -> Vec<f64> {
        self.shells_exact()
            .iter()
            .map(|s| s.to_f64().unwrap_or(f64::NAN))
            .collect()
    }

    /// Stationary rings: origin plus `+-sqrt(s_j)`, classified and valued.
    pub fn extrema(&self) -> Vec<ExtremumRecord> {
        extrema(self)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ExtremumKind {
    Minimum,
    Maximum,
    /// Merged or flat ring (repeated shell, or a shell collapsed onto the
    /// origin). Kept in the listing rather than silently dropped.
    Degenerate,
}

/// One stationary ring of the potential. `ring` is 0 for the origin and
/// `j + 1` for the shell pair `+-sqrt(s_j)`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ExtremumRecord {
    pub ring: usize,
    pub position: f64,
    pub value: f64,
    pub kind: ExtremumKind,
}

/// The potential itself: exact binomial-convention couplings plus cached
/// f64 views for the numerical layers.
#[derive(Debug, Clone)]
pub struct ArnoldPotential {
    n: usize,
    couplings_sq: Vec<BigRational>,
    couplings_sq_f64: Vec<f64>,
    lambda_sq: f64,
}

impl ArnoldPotential {
    /// Expand `prod_j (xi - s_j)` and divide each coefficient by its binomial
    /// factor. Division happens in exact rational arithmetic, so the result
    /// is exact for every weight tuple; the reference tuples additionally
    /// keep integer generators mapping to integer couplings.
    pub fn from_shift(shift: &ShiftParameters) -> Self {
        let shells = shift.shells_exact();
        let c = poly::from_roots(&shells); // monic in xi, ascending
        let n = shift.n;
        let mut couplings_sq = Vec::with_capacity(n);
        for m in 1..=n {
            // coefficient of xi^{N-m} equals (-1)^m C(N,m) c_m^2
            let coeff = &c[n - m];
            let binom = rat_u(poly::binomial(n as u64, m as u64));
            let sign = if m % 2 == 0 { 1 } else { -1 };
            couplings_sq.push(coeff * BigRational::from_i64(sign).unwrap() / binom);
        }
        Self::from_exact_couplings(n, couplings_sq, 1.0)
            .expect("shell construction yields nonnegative couplings for valid shifts")
    }

    /// From binomial-convention squared couplings `(c_1^2, ..., c_N^2)`.
    pub fn from_exact_couplings(
        n: usize,
        couplings_sq: Vec<BigRational>,
        lambda_sq: f64,
    ) -> Result<Self, PotentialError> {
        if n == 0 || couplings_sq.len() != n {
            return Err(PotentialError::InvalidCouplings(format!(
                "expected {n} squared couplings, got {}",
                couplings_sq.len()
            )));
        }
        if !(lambda_sq.is_finite() && lambda_sq > 0.0) {
            return Err(PotentialError::InvalidCouplings(format!(
                "lambda_sq must be positive, got {lambda_sq}"
            )));
        }
        let couplings_sq_f64 = couplings_sq
            .iter()
            .map(|c| c.to_f64().unwrap_or(f64::NAN))
            .collect();
        Ok(Self {
            n,
            couplings_sq,
            couplings_sq_f64,
            lambda_sq,
        })
    }

    /// From f64 squared couplings (converted losslessly to rationals).
    pub fn from_couplings(
        n: usize,
        couplings_sq: &[f64],
        lambda_sq: f64,
    ) -> Result<Self, PotentialError> {
        let exact = couplings_sq
            .iter()
            .map(|&c| rational_from_f64(c, "coupling"))
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_exact_couplings(n, exact, lambda_sq)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Polynomial degree 2(N+1).
    pub fn degree(&self) -> usize {
        2 * (self.n + 1)
    }

    /// Mass term Lambda^2 = hbar^2 / (2 mu) associated with this potential.
    pub fn lambda_sq(&self) -> f64 {
        self.lambda_sq
    }

    pub fn with_lambda_sq(mut self, lambda_sq: f64) -> Result<Self, PotentialError> {
        if !(lambda_sq.is_finite() && lambda_sq > 0.0) {
            return Err(PotentialError::InvalidCouplings(format!(
                "lambda_sq must be positive, got {lambda_sq}"
            )));
        }
        self.lambda_sq = lambda_sq;
        Ok(self)
    }

    /// Squared couplings `(c_1^2, ..., c_N^2)` as f64.
    pub fn couplings_sq(&self) -> &[f64] {
        &self.couplings_sq_f64
    }

    /// Squared couplings, exact.
    pub fn couplings_sq_exact(&self) -> &[BigRational] {
        &self.couplings_sq
    }

    /// `W(xi)` with `V(x) = W(x^2)`, coefficients ascending, length N+2.
    pub fn xi_poly_exact(&self) -> Vec<BigRational> {
        let n = self.n;
        let mut w = vec![BigRational::zero(); n + 2];
        w[n + 1] = rat_u(1);
        for m in 1..=n {
            let binom = poly::binomial((n + 1) as u64, m as u64) as i64;
            let sign = if m % 2 == 0 { binom } else { -binom };
            w[n + 1 - m] = &self.couplings_sq[m - 1] * BigRational::from_i64(sign).unwrap();
        }
        w
    }

    fn xi_poly(&self) -> Vec<f64> {
        self.xi_poly_exact()
            .iter()
            .map(|c| c.to_f64().unwrap_or(f64::NAN))
            .collect()
    }

    /// Coefficients of `V` in powers of `x` (ascending, length 2N+3; odd
    /// entries zero).
    pub fn x_coeffs(&self) -> Vec<f64> {
        let w = self.xi_poly();
        let mut out = vec![0.0; 2 * w.len() - 1];
        for (j, wj) in w.iter().enumerate() {
            out[2 * j] = *wj;
        }
        out
    }

    /// Exact variant of [`Self::x_coeffs`].
    pub fn x_coeffs_exact(&self) -> Vec<BigRational> {
        let w = self.xi_poly_exact();
        let mut out = vec![BigRational::zero(); 2 * w.len() - 1];
        for (j, wj) in w.iter().enumerate() {
            out[2 * j] = wj.clone();
        }
        out
    }

    /// Monic shell polynomial `C(xi) = prod (xi - s_j)` recovered from the
    /// couplings (coefficient of `xi^{N-m}` is `(-1)^m C(N,m) c_m^2`).
    pub fn shell_poly(&self) -> Vec<f64> {
        let n = self.n;
        let mut c = vec![0.0; n + 1];
        c[n] = 1.0;
        for m in 1..=n {
            let binom = poly::binomial(n as u64, m as u64) as f64;
            let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
            c[n - m] = sign * binom * self.couplings_sq_f64[m - 1];
        }
        c
    }

    /// `V(x)`, evaluated through `xi = x^2` so parity is exact by
    /// construction.
    pub fn evaluate(&self, x: f64) -> f64 {
        let xi = x * x;
        poly::eval(&self.xi_poly(), &xi)
    }

    /// Exact potential value at squared position `xi`.
    pub fn evaluate_xi_exact(&self, xi: &BigRational) -> BigRational {
        poly::eval(&self.xi_poly_exact(), xi)
    }

    /// Taylor coefficients of `V(x0 + y)` in powers of `y` (length 2N+3).
    pub fn taylor_at(&self, x0: f64) -> Vec<f64> {
        poly::taylor_shift(&self.x_coeffs(), &x0)
    }

    /// Exact Taylor recentering at rational `x0`.
    pub fn taylor_at_exact(&self, x0: &BigRational) -> Vec<BigRational> {
        poly::taylor_shift(&self.x_coeffs_exact(), x0)
    }

    /// Half second derivative `V''/2` at squared position `xi`, exact:
    /// with `V(x) = W(x^2)` this is `W'(xi) + 2 xi W''(xi)`. Equals the
    /// quadratic Taylor coefficient at `x0 = sqrt(xi)` without needing `x0`
    /// itself to be rational.
    pub fn curvature_half_exact(&self, xi: &BigRational) -> BigRational {
        let w = self.xi_poly_exact();
        let w1 = poly::derivative(&w);
        let w2 = poly::derivative(&w1);
        poly::eval(&w1, xi) + rat_u(2) * xi * poly::eval(&w2, xi)
    }

    /// f64 view of [`Self::curvature_half_exact`], for box sizing and quick
    /// harmonic scales.
    pub fn curvature_half(&self, xi: f64) -> f64 {
        let w = self.xi_poly();
        let w1 = poly::derivative(&w);
        let w2 = poly::derivative(&w1);
        poly::eval(&w1, &xi) + 2.0 * xi * poly::eval(&w2, &xi)
    }

    /// Invert couplings back to well geometry: the shell polynomial's roots
    /// are taken from the eigenvalues of its companion matrix, polished by
    /// one Newton step each, then differenced down the ladder. `weights`
    /// defaults to the reference tuple for this N.
    pub fn couplings_to_shifts(
        &self,
        weights: Option<&[u64]>,
    ) -> Result<ShiftParameters, PotentialError> {
        let n = self.n;
        let weights = match weights {
            Some(w) => w.to_vec(),
            None => default_weights(n)?,
        };
        let c = self.shell_poly();

        let scale = c.iter().fold(1.0_f64, |a, b| a.max(b.abs()));
        let mut roots = if n == 1 {
            vec![-c[0]]
        } else {
            // companion matrix: subdiagonal ones, last column -c[0..n]
            let companion = DMatrix::<f64>::from_fn(n, n, |i, j| {
                if j == n - 1 {
                    -c[i]
                } else if i == j + 1 {
                    1.0
                } else {
                    0.0
                }
            });
            let eig = companion.complex_eigenvalues();
            let mut roots = Vec::with_capacity(n);
            for ev in eig.iter() {
                if ev.im.abs() > 1e-8 * (1.0 + ev.re.abs()) {
                    return Err(PotentialError::NotMultiWell {
                        n,
                        reason: format!(
                            "shell polynomial has a complex root pair at {} +- {}i",
                            ev.re, ev.im
                        ),
                    });
                }
                roots.push(ev.re);
            }
            roots
        };
        roots.sort_by(|a, b| a.partial_cmp(b).expect("finite roots"));

        // one Newton polish per root
        let dc = poly::derivative(&c);
        for r in roots.iter_mut() {
            let d = poly::eval(&dc, r);
            if d.abs() > 1e-12 * scale {
                *r -= poly::eval(&c, r) / d;
            }
        }

        let tol = 1e-9 * (1.0 + scale);
        let mut params = Vec::with_capacity(n);
        let mut prev = 0.0;
        for (j, &s) in roots.iter().enumerate() {
            if s < -tol {
                return Err(PotentialError::NotMultiWell {
                    n,
                    reason: format!("negative squared shell radius {s}"),
                });
            }
            let w = if j == 0 { 1 } else { weights[j - 1] };
            let delta = s - prev;
            if delta < -tol {
                return Err(PotentialError::NotMultiWell {
                    n,
                    reason: format!("shell ladder not increasing at ring {j}"),
                });
            }
            params.push((delta.max(0.0) / w as f64).sqrt());
            prev = s;
        }
        ShiftParameters::new(&params, &weights)
    }

    /// Serializable form: plain couplings always, plus the generator form
    /// when one is known or recoverable. Output is always valid input.
    pub fn to_json(&self, shift: Option<&ShiftParameters>) -> PotentialJson {
        let owned;
        let shift = match shift {
            Some(s) => Some(s),
            None => {
                owned = self.couplings_to_shifts(None).ok();
                owned.as_ref()
            }
        };
        PotentialJson {
            n: self.n as u32,
            params: shift.map(|s| s.params().to_vec()),
            weights: shift.map(|s| s.weights().to_vec()),
            couplings: Some(self.raw_couplings()),
            lambda_sq: Some(self.lambda_sq),
        }
    }

    /// Plain polynomial couplings `(c_1, ..., c_2N)` with `c_j` multiplying
    /// `x^{2N+1-j}`; even-indexed entries vanish for the symmetric family.
    pub fn raw_couplings(&self) -> Vec<f64> {
        let n = self.n;
        let mut out = vec![0.0; 2 * n];
        for m in 1..=n {
            let binom = poly::binomial((n + 1) as u64, m as u64) as f64;
            let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
            out[2 * m - 2] = sign * binom * self.couplings_sq_f64[m - 1];
        }
        out
    }

    /// Parse plain polynomial couplings into the binomial convention.
    pub fn from_raw_couplings(
        n: usize,
        raw: &[f64],
        lambda_sq: f64,
    ) -> Result<Self, PotentialError> {
        if n == 0 {
            return Err(PotentialError::InvalidCouplings("N must be >= 1".into()));
        }
        if raw.len() != 2 * n {
            return Err(PotentialError::InvalidCouplings(format!(
                "N={n} expects 2N={} raw couplings (c_1..c_2N), got {}",
                2 * n,
                raw.len()
            )));
        }
        let mut couplings_sq = Vec::with_capacity(n);
        for m in 1..=n {
            let odd = raw[2 * m - 2];
            let binom = poly::binomial((n + 1) as u64, m as u64) as f64;
            let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
            let c_sq = sign * odd / binom;
            if c_sq < 0.0 {
                return Err(PotentialError::InvalidCouplings(format!(
                    "coupling c_{} = {odd} has the wrong sign for the \
                     alternating symmetric family",
                    2 * m - 1
                )));
            }
            couplings_sq.push(c_sq);
        }
        for (j, &even) in raw.iter().enumerate() {
            if j % 2 == 1 && even != 0.0 {
                return Err(PotentialError::InvalidCouplings(format!(
                    "c_{} = {even}: odd powers of x break the x -> -x symmetry \
                     this crate is restricted to",
                    j + 1
                )));
            }
        }
        Self::from_couplings(n, &couplings_sq, lambda_sq)
    }
}

/// JSON form of a potential. On output every field is present; on input
/// exactly one of `params` / `couplings` must be given.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PotentialJson {
    #[serde(rename = "N")]
    pub n: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub params: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub couplings: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda_sq: Option<f64>,
}

impl PotentialJson {
    /// Resolve to a potential plus (when recoverable) its well geometry.
    pub fn resolve(&self) -> Result<(ArnoldPotential, Option<ShiftParameters>), PotentialError> {
        let n = self.n as usize;
        let lambda_sq = self.lambda_sq.unwrap_or(1.0);
        match (&self.params, &self.couplings) {
            (Some(params), Some(raw)) => {
                let (pot, shift) = PotentialJson {
                    n: self.n,
                    params: Some(params.clone()),
                    weights: self.weights.clone(),
                    couplings: None,
                    lambda_sq: self.lambda_sq,
                }
                .resolve()?;
                let derived = pot.raw_couplings();
                if raw.len() != derived.len() {
                    return Err(PotentialError::InvalidCouplings(format!(
                        "N={n} expects {} couplings, got {}",
                        derived.len(),
                        raw.len()
                    )));
                }
                for (j, (&given, &want)) in raw.iter().zip(&derived).enumerate() {
                    if (given - want).abs() > 1e-9 * want.abs().max(given.abs()).max(1.0) {
                        return Err(PotentialError::InvalidCouplings(format!(
                            "params and couplings disagree: c_{} = {given} but the \
                             given params produce {want}",
                            j + 1
                        )));
                    }
                }
                Ok((pot, shift))
            }
            (None, None) => Err(PotentialError::InvalidCouplings(
                "one of params or couplings is required".into(),
            )),
            (Some(params), None) => {
                if params.len() != n {
                    return Err(PotentialError::InvalidShift(format!(
                        "N={n} expects {n} params, got {}",
                        params.len()
                    )));
                }
                let shift = match &self.weights {
                    Some(w) => ShiftParameters::new(params, w)?,
                    None => ShiftParameters::with_default_weights(params)?,
                };
                let pot = ArnoldPotential::from_shift(&shift).with_lambda_sq(lambda_sq)?;
                Ok((pot, Some(shift)))
            }
            (None, Some(raw)) => {
                let pot = ArnoldPotential::from_raw_couplings(n, raw, lambda_sq)?;
                let shift = pot.couplings_to_shifts(self.weights.as_deref()).ok();
                Ok((pot, shift))
            }
        }
    }
}

/// Classify every stationary ring by the sign walk of `V'` across the
/// distinct shells. Repeated shells (and shells collapsed onto the origin)
/// are flagged degenerate rather than dropped.
pub fn extrema(shift: &ShiftParameters) -> Vec<ExtremumRecord> {
    let pot = ArnoldPotential::from_shift(shift);
    let shells = shift.shells_exact();

    // group exactly-equal shells
    struct Group {
        xi: BigRational,
        mult: usize,
        first: usize,
    }
    let mut groups: Vec<Group> = Vec::new();
    for (j, s) in shells.iter().enumerate() {
        match groups.last_mut() {
            Some(g) if g.xi == *s => g.mult += 1,
            _ => groups.push(Group {
                xi: s.clone(),
                mult: 1,
                first: j,
            }),
        }
    }
    let zero_mult = groups
        .iter()
        .find(|g| g.xi.is_zero())
        .map(|g| g.mult)
        .unwrap_or(0);
    let positive: Vec<&Group> = groups.iter().filter(|g| !g.xi.is_zero()).collect();

    // sign of V' on (shell_k, shell_{k+1}) for x > 0, walked from +infinity
    let mut sign_above = 1i32;
    let mut kinds = vec![ExtremumKind::Degenerate; positive.len()];
    for (idx, g) in positive.iter().enumerate().rev() {
        let sign_below = if g.mult % 2 == 1 {
            -sign_above
        } else {
            sign_above
        };
        kinds[idx] = if g.mult > 1 {
            ExtremumKind::Degenerate
        } else if sign_below < 0 && sign_above > 0 {
            ExtremumKind::Minimum
        } else {
            ExtremumKind::Maximum
        };
        sign_above = sign_below;
    }
    // sign_above is now the sign of V' just right of the origin
    let origin_kind = if zero_mult > 0 {
        ExtremumKind::Degenerate
    } else if sign_above > 0 {
        ExtremumKind::Minimum
    } else {
        ExtremumKind::Maximum
    };

    let mut right: Vec<ExtremumRecord> = Vec::new();
    for (g, kind) in positive.iter().zip(kinds.iter()) {
        let value = pot
            .evaluate_xi_exact(&g.xi)
            .to_f64()
            .unwrap_or(f64::NAN);
        let position = g.xi.to_f64().unwrap_or(f64::NAN).sqrt();
        right.push(ExtremumRecord {
            ring: g.first + 1,
            position,
            value,
            kind: *kind,
        });
    }

    let mut out: Vec<ExtremumRecord> = right
        .iter()
        .rev()
        .map(|r| ExtremumRecord {
            ring: r.ring,
            position: -r.position,
            value: r.value,
            kind: r.kind,
        })
        .collect();
    out.push(ExtremumRecord {
        ring: 0,
        position: 0.0,
        value: 0.0,
        kind: origin_kind,
    });
    out.extend(right);
    out
}

/// One closed-form landmark (position and depth/height of a stationary ring).
#[derive(Debug, Clone, Copy)]
pub struct Landmark {
    pub label: &'static str,
    pub position: f64,
    pub value: f64,
}

/// Closed-form landmark depths for N = 1, 2, 3 (the cases with compact
/// formulas). Positive-position entries only; the mirror ring is implied.
pub fn closed_form_landmarks(shift: &ShiftParameters) -> Result<Vec<Landmark>, PotentialError> {
    let p = shift.params();
    match shift.n() {
        1 => {
            let a = p[0];
            Ok(vec![
                Landmark {
                    label: "origin_maximum",
                    position: 0.0,
                    value: 0.0,
                },
                Landmark {
                    label: "well_minimum",
                    position: a,
                    value: -a.powi(4),
                },
            ])
        }
        2 => {
            let (a, b) = (p[0], p[1]);
            let (a2, b2) = (a * a, b * b);
            let r2 = a2 + 2.0 * b2;
            Ok(vec![
                Landmark {
                    label: "origin_minimum",
                    position: 0.0,
                    value: 0.0,
                },
                Landmark {
                    label: "barrier_maximum",
                    position: a,
                    value: a2 * a2 * (a2 + 3.0 * b2),
                },
                Landmark {
                    label: "outer_minimum",
                    position: r2.sqrt(),
                    value: (a2 - b2) * r2 * r2,
                },
            ])
        }
        3 => {
            let (a, b, g) = (p[0], p[1], p[2]);
            let (a2, b2, g2) = (a * a, b * b, g * g);
            let t2 = a2 + 3.0 * b2;
            let r2 = a2 + 3.0 * b2 + 3.0 * g2;
            let inner = -(a2 * a2 + 8.0 * a2 * b2 + 4.0 * a2 * g2 + 18.0 * b2 * b2
                + 18.0 * b2 * g2)
                * a2
                * a2;
            let mid = (3.0 * b2 * b2 + 6.0 * b2 * g2 - a2 * (a2 + 2.0 * b2 + 4.0 * g2)) * t2 * t2;
            let outer = -(a2 * a2 + 2.0 * a2 * b2 + 3.0 * g2 * g2 - 3.0 * b2 * b2
                - 2.0 * a2 * g2)
                * r2
                * r2;
            Ok(vec![
                Landmark {
                    label: "origin_maximum",
                    position: 0.0,
                    value: 0.0,
                },
                Landmark {
                    label: "inner_minimum",
                    position: a,
                    value: inner,
                },
                Landmark {
                    label: "intermediate_maximum",
                    position: t2.sqrt(),
                    value: mid,
                },
                Landmark {
                    label: "outer_minimum",
                    position: r2.sqrt(),
                    value: outer,
                },
            ])
        }
        n => Err(PotentialError::UnsupportedN(
            n,
            "closed-form landmarks are tabulated for N = 1, 2, 3 only".into(),
        )),
    }
}
