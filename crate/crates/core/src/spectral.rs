//! Finite-difference bound-state solver.
//!
//! Discretizes -L^2 psi'' + V(x) psi = E psi on a uniform symmetric grid
//! with Dirichlet ends (second-order central differences), extracts the
//! lowest eigenpairs of the resulting symmetric tridiagonal matrix by
//! bisection on Sturm sequence counts followed by inverse iteration, and
//! post-processes parity, per-region localization weights, node counts,
//! and tunneling-doublet splittings.
//!
//! Accuracy is certified by grid refinement: the error is O(h^2), so the
//! Richardson ratio (E(2h) - E(4h)) / (E(h) - E(2h)) sits near 4 and the
//! extrapolated value E(h) + (E(h) - E(2h)) / 3 serves as the oracle.

use crate::potential::{ArnoldPotential, ExtremumKind, ShiftParameters};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SpectralError {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error(
        "requested {requested} states but only {safe} lie safely below the \
         boundary wall V(+-L) = {wall:.6e}; enlarge the box"
    )]
    UnsafeStates {
        requested: usize,
        safe: usize,
        wall: f64,
    },
    #[error(
        "state {state} leaks into the boundary: edge amplitude is {leak:.3e} \
         of the peak (box half-width too small)"
    )]
    BoundaryLeak { state: usize, leak: f64 },
    #[error("regions do not partition the domain: {0}")]
    BadPartition(String),
    #[error("cannot derive a default region partition: {0}")]
    NoPartition(String),
}

/// Uniform symmetric grid with Dirichlet truncation at +-L.
///
/// Interior points only: x_i = -L + (i+1) h, h = 2L/(M+1). M is odd so the
/// mid-point sits exactly at the origin, which keeps mirror symmetry exact
/// on the grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    half_width: f64,
    points: usize,
    lambda_sq: f64,
}

impl GridSpec {
    pub const MIN_POINTS: usize = 64;

    pub fn new(half_width: f64, points: usize, lambda_sq: f64) -> Result<Self, SpectralError> {
        if !(half_width.is_finite() && half_width > 0.0) {
            return Err(SpectralError::InvalidGrid(format!(
                "half-width must be positive and finite, got {half_width}"
            )));
        }
        if points < Self::MIN_POINTS {
            return Err(SpectralError::InvalidGrid(format!(
                "need at least {} grid points, got {points}",
                Self::MIN_POINTS
            )));
        }
        if points.is_multiple_of(2) {
            return Err(SpectralError::InvalidGrid(format!(
                "point count must be odd so x = 0 is a grid node, got {points}"
            )));
        }
        if !(lambda_sq.is_finite() && lambda_sq > 0.0) {
            return Err(SpectralError::InvalidGrid(format!(
                "lambda_sq must be positive and finite, got {lambda_sq}"
            )));
        }
        Ok(Self {
            half_width,
            points,
            lambda_sq,
        })
    }

    /// Pick a half-width for an Arnold potential: walk outward from the
    /// outermost well until the wall clears the highest requested level by
    /// ten harmonic quanta of the outer well.
    pub fn auto_for(
        pot: &ArnoldPotential,
        n_states: usize,
        lambda_sq: f64,
        points: usize,
    ) -> Result<Self, SpectralError> {
        let lambda = lambda_sq.sqrt();
        let shift = pot
            .couplings_to_shifts(Some(&vec![1; pot.n() - 1]))
            .map_err(|e| SpectralError::NoPartition(format!("cannot place wells: {e}")))?;
        let records = crate::potential::extrema(&shift);
        let minima: Vec<_> = records
            .iter()
            .filter(|r| r.kind == ExtremumKind::Minimum && r.position >= 0.0)
            .collect();
        if minima.is_empty() {
            return Err(SpectralError::NoPartition(
                "potential has no minimum".to_string(),
            ));
        }
        let mut e_max = f64::NEG_INFINITY;
        let mut omega_outer = 0.0;
        let mut r_outer: f64 = 0.0;
        for rec in &minima {
            let xi = rec.position * rec.position;
            let t2 = pot.curvature_half(xi).max(0.0);
            let top = rec.value + (2.0 * n_states as f64 + 1.0) * lambda * t2.sqrt();
            e_max = e_max.max(top);
            if rec.position >= r_outer {
                r_outer = rec.position;
                omega_outer = t2.sqrt();
            }
        }
        let wall_target = e_max + 10.0 * lambda * omega_outer;
        // Walk out from the outer well accumulating the WKB suppression
        // exponent above e_max (midpoint rule, fine steps so a steep climb
        // is not credited for a whole step); stop once the wall is both
        // high and opaque enough for the 1e-6 amplitude floor
        // (exp(-18) << 1e-6).
        let dx = 0.002 * (r_outer + 1.0);
        let mut half_width = r_outer;
        let mut opacity = 0.0;
        loop {
            let mid = pot.evaluate(half_width + 0.5 * dx);
            half_width += dx;
            if mid > e_max {
                opacity += (mid - e_max).sqrt() / lambda * dx;
            }
            if pot.evaluate(half_width) >= wall_target && opacity >= 18.0 {
                break;
            }
            if half_width > 1e4 {
                return Err(SpectralError::InvalidGrid(
                    "auto box search ran away; supply an explicit half-width".to_string(),
                ));
            }
        }
        Self::new(half_width, points, lambda_sq)
    }

    pub fn half_width(&self) -> f64 {
        self.half_width
    }

    pub fn points(&self) -> usize {
        self.points
    }

    pub fn lambda_sq(&self) -> f64 {
        self.lambda_sq
    }

    pub fn step(&self) -> f64 {
        2.0 * self.half_width / (self.points as f64 + 1.0)
    }

    pub fn xs(&self) -> Vec<f64> {
        let h = self.step();
        (0..self.points)
            .map(|i| -self.half_width + (i as f64 + 1.0) * h)
            .collect()
    }

    /// Same box, halved step (M -> 2M + 1 keeps oddness and the origin node).
    pub fn refined(&self) -> Self {
        Self {
            half_width: self.half_width,
            points: 2 * self.points + 1,
            lambda_sq: self.lambda_sq,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
    Indeterminate,
}

impl std::fmt::Display for Parity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Parity::Even => write!(f, "even"),
            Parity::Odd => write!(f, "odd"),
            Parity::Indeterminate => write!(f, "indeterminate"),
        }
    }
}

/// Eigenpairs plus derived diagnostics. Wavefunctions are L2-normalized
/// with trapezoid weights (h * sum psi^2 = 1).
#[derive(Debug, Clone)]
pub struct SpectralResult {
    pub half_width: f64,
    pub step: f64,
    pub lambda_sq: f64,
    pub xs: Vec<f64>,
    pub energies: Vec<f64>,
    pub wavefunctions: Vec<Vec<f64>>,
    pub parities: Vec<Parity>,
    pub node_counts: Vec<usize>,
    /// Region partition used for the localization weights, ascending.
    pub regions: Vec<(f64, f64)>,
    /// localization[state][region], each row summing to 1.
    pub localization: Vec<Vec<f64>>,
    /// (lower pair index n, E_odd - E_even) for flagged tunneling doublets.
    pub splittings: Vec<(usize, f64)>,
}

impl SpectralResult {
    pub fn n_states(&self) -> usize {
        self.energies.len()
    }

    /// Sum of the localization weights over regions whose midpoint lies
    /// strictly outside [-radius, radius].
    pub fn weight_outside(&self, state: usize, radius: f64) -> f64 {
        self.regions
            .iter()
            .zip(&self.localization[state])
            .filter(|((lo, hi), _)| (lo + hi) * 0.5 > radius || (lo + hi) * 0.5 < -radius)
            .map(|(_, w)| w)
            .sum()
    }
}

const PARITY_TOL: f64 = 1e-6;
const LEAK_TOL: f64 = 1e-6;
const NODE_FLOOR: f64 = 1e-8;
const DEFAULT_GAP_FACTOR: f64 = 0.2;

/// Solve an Arnold potential with the default localization partition
/// (cuts at the barrier maxima).
pub fn solve(
    pot: &ArnoldPotential,
    grid: &GridSpec,
    n_states: usize,
) -> Result<SpectralResult, SpectralError> {
    let shift = pot
        .couplings_to_shifts(Some(&vec![1; pot.n() - 1]))
        .map_err(|e| SpectralError::NoPartition(format!("cannot place barrier cuts: {e}")))?;
    let regions = barrier_partition(&shift, grid.half_width());
    solve_fn_with_regions(|x| pot.evaluate(x), grid, n_states, regions)
}

/// Solve an arbitrary confining potential; localization falls back to the
/// trivial single-region partition.
pub fn solve_fn<F: Fn(f64) -> f64>(
    v: F,
    grid: &GridSpec,
    n_states: usize,
) -> Result<SpectralResult, SpectralError> {
    let l = grid.half_width();
    solve_fn_with_regions(v, grid, n_states, vec![(-l, l)])
}

/// Solve with an explicit localization partition.
pub fn solve_fn_with_regions<F: Fn(f64) -> f64>(
    v: F,
    grid: &GridSpec,
    n_states: usize,
    regions: Vec<(f64, f64)>,
) -> Result<SpectralResult, SpectralError> {
    let m = grid.points();
    if n_states == 0 {
        return Err(SpectralError::InvalidGrid(
            "must request at least one state".to_string(),
        ));
    }
    if n_states > m / 4 {
        return Err(SpectralError::InvalidGrid(format!(
            "{n_states} states on {m} points leaves no resolution margin"
        )));
    }
    validate_partition(&regions, grid.half_width())?;

    let h = grid.step();
    let xs = grid.xs();
    let kin = grid.lambda_sq() / (h * h);
    let diag: Vec<f64> = xs.iter().map(|&x| v(x) + 2.0 * kin).collect();
    let off = -kin;

    let energies = lowest_eigenvalues(&diag, off, n_states);

    // every returned level must sit below the boundary wall
    let wall = v(-grid.half_width()).min(v(grid.half_width()));
    let safe = energies.iter().filter(|&&e| e < wall).count();
    if safe < n_states {
        return Err(SpectralError::UnsafeStates {
            requested: n_states,
            safe,
            wall,
        });
    }

    let mut wavefunctions = eigenvectors(&diag, off, &energies, h);

    // For a mirror-symmetric potential every eigenvector has definite
    // parity; any admixture in the computed ones is numerical. Pairs closer
    // than the solver can resolve are rebuilt by explicit projection, and
    // residual-sized minority components (inverse iteration stops on the
    // residual test, which is blind to a small mirror admixture from a
    // nearby level) are stripped afterwards.
    let t_scale = diag.iter().fold(0.0f64, |a, &d| a.max(d.abs())) + 2.0 * off.abs();
    let symmetric = diag
        .iter()
        .zip(diag.iter().rev())
        .all(|(a, b)| (a - b).abs() <= 1e-12 * t_scale);
    if symmetric {
        let degeneracy_floor = 64.0 * f64::EPSILON * t_scale;
        let mut k = 0;
        while k + 1 < energies.len() {
            if (energies[k + 1] - energies[k]).abs() < degeneracy_floor {
                parity_project_pair(&mut wavefunctions, k, h);
                k += 2;
            } else {
                k += 1;
            }
        }
        for psi in wavefunctions.iter_mut() {
            purify_parity(psi, h);
        }
    }

    for (state, psi) in wavefunctions.iter().enumerate() {
        let peak = psi.iter().fold(0.0f64, |a, &b| a.max(b.abs()));
        let leak = psi[0].abs().max(psi[m - 1].abs()) / peak;
        if leak > LEAK_TOL {
            return Err(SpectralError::BoundaryLeak { state, leak });
        }
    }

    let parities: Vec<Parity> = wavefunctions
        .iter()
        .map(|psi| classify_parity(psi, PARITY_TOL))
        .collect();
    let node_counts: Vec<usize> = wavefunctions.iter().map(|psi| count_nodes(psi)).collect();
    let localization = localization_weights(&xs, &wavefunctions, h, &regions)?;
    let splittings = doublet_splittings(&energies, &parities, DEFAULT_GAP_FACTOR);

    Ok(SpectralResult {
        half_width: grid.half_width(),
        step: h,
        lambda_sq: grid.lambda_sq(),
        xs,
        energies,
        wavefunctions,
        parities,
        node_counts,
        regions,
        localization,
        splittings,
    })
}

// ---------------------------------------------------------------------------
// tridiagonal eigensolver: Sturm bisection + inverse iteration
// ---------------------------------------------------------------------------

/// Number of eigenvalues strictly below `lambda`, by counting negative
/// pivots of the LDL^T factorization of T - lambda I.
fn sturm_count(diag: &[f64], off: f64, lambda: f64, pivmin: f64) -> usize {
    let e_sq = off * off;
    let mut count = 0usize;
    let mut q = diag[0] - lambda;
    if q.abs() <= pivmin {
        q = -pivmin;
    }
    if q < 0.0 {
        count += 1;
    }
    for &d in &diag[1..] {
        q = d - lambda - e_sq / q;
        if q.abs() <= pivmin {
            q = -pivmin;
        }
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

fn lowest_eigenvalues(diag: &[f64], off: f64, n_states: usize) -> Vec<f64> {
    let pivmin = (off * off).max(1.0) * f64::MIN_POSITIVE;
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for &d in diag {
        lo = lo.min(d - 2.0 * off.abs());
        hi = hi.max(d + 2.0 * off.abs());
    }
    let mut out = Vec::with_capacity(n_states);
    for k in 0..n_states {
        // invariant: count(a) <= k < count(b)
        let mut a = if k == 0 { lo } else { out[k - 1] };
        let mut b = hi;
        for _ in 0..220 {
            let tol = f64::EPSILON * (a.abs() + b.abs()) + 2.0 * pivmin;
            if b - a <= tol {
                break;
            }
            let mid = 0.5 * (a + b);
            if sturm_count(diag, off, mid, pivmin) > k {
                b = mid;
            } else {
                a = mid;
            }
        }
        out.push(0.5 * (a + b));
    }
    out
}

/// Partial-pivot LU of the tridiagonal T - lambda I (three U bands plus the
/// pivot pattern), then repeated solves for inverse iteration.
struct TriLu {
    dd: Vec<f64>,  // U main diagonal
    du: Vec<f64>,  // U first super-diagonal
    du2: Vec<f64>, // U second super-diagonal (pivoting fill-in)
    dl: Vec<f64>,  // L multipliers
    swap: Vec<bool>,
}

impl TriLu {
    fn factor(diag: &[f64], off: f64, lambda: f64) -> Self {
        let n = diag.len();
        let mut dd: Vec<f64> = diag.iter().map(|&d| d - lambda).collect();
        let mut du = vec![off; n.saturating_sub(1)];
        let mut du2 = vec![0.0; n.saturating_sub(2)];
        let mut dl = vec![off; n.saturating_sub(1)];
        let mut swap = vec![false; n.saturating_sub(1)];
        let tiny = f64::EPSILON * (diag.iter().fold(0.0f64, |a, &b| a.max(b.abs())) + off.abs());
        for i in 0..n - 1 {
            if dd[i].abs() >= dl[i].abs() {
                // no interchange
                let pivot = if dd[i].abs() <= tiny * f64::EPSILON {
                    tiny.max(f64::MIN_POSITIVE)
                } else {
                    dd[i]
                };
                dd[i] = pivot;
                let fact = dl[i] / pivot;
                dl[i] = fact;
                dd[i + 1] -= fact * du[i];
                if i < n - 2 {
                    du2[i] = 0.0;
                }
            } else {
                let fact = dd[i] / dl[i];
                dd[i] = dl[i];
                dl[i] = fact;
                let temp = du[i];
                du[i] = dd[i + 1];
                dd[i + 1] = temp - fact * dd[i + 1];
                if i < n - 2 {
                    du2[i] = du[i + 1];
                    du[i + 1] *= -fact;
                }
                swap[i] = true;
            }
        }
        if dd[n - 1].abs() <= tiny * f64::EPSILON {
            dd[n - 1] = tiny.max(f64::MIN_POSITIVE);
        }
        Self {
            dd,
            du,
            du2,
            dl,
            swap,
        }
    }

    fn solve_in_place(&self, b: &mut [f64]) {
        let n = b.len();
        for i in 0..n - 1 {
            if self.swap[i] {
                b.swap(i, i + 1);
            }
            b[i + 1] -= self.dl[i] * b[i];
        }
        b[n - 1] /= self.dd[n - 1];
        if n >= 2 {
            b[n - 2] = (b[n - 2] - self.du[n - 2] * b[n - 1]) / self.dd[n - 2];
        }
        for i in (0..n.saturating_sub(2)).rev() {
            b[i] = (b[i] - self.du[i] * b[i + 1] - self.du2[i] * b[i + 2]) / self.dd[i];
        }
    }
}

fn lcg_fill(seed: u64, out: &mut [f64]) {
    let mut s = seed
        .wrapping_mul(0x9E37_79B9_7F4A_7C15)
        .wrapping_add(0x2545_F491_4F6C_DD1D);
    for v in out.iter_mut() {
        s = s
            .wrapping_mul(6_364_136_223_846_793_005)
            .wrapping_add(1_442_695_040_888_963_407);
        *v = ((s >> 11) as f64) / ((1u64 << 53) as f64) - 0.5;
    }
}

fn norm2(v: &[f64]) -> f64 {
    v.iter().map(|&x| x * x).sum::<f64>().sqrt()
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(&x, &y)| x * y).sum()
}

fn eigenvectors(diag: &[f64], off: f64, energies: &[f64], h: f64) -> Vec<Vec<f64>> {
    let n = diag.len();
    let scale = diag.iter().fold(0.0f64, |a, &b| a.max(b.abs())) + 2.0 * off.abs();
    let cluster_tol = 1e3 * f64::EPSILON * scale.max(1.0);
    let mut out: Vec<Vec<f64>> = Vec::with_capacity(energies.len());
    let mut cluster_start = 0usize;
    for (k, &e) in energies.iter().enumerate() {
        if k > 0 && (e - energies[k - 1]).abs() > cluster_tol {
            cluster_start = k;
        }
        let lu = TriLu::factor(diag, off, e);
        let mut v = vec![0.0; n];
        lcg_fill(k as u64 + 1, &mut v);
        let nrm = norm2(&v);
        v.iter_mut().for_each(|x| *x /= nrm);
        for _ in 0..4 {
            lu.solve_in_place(&mut v);
            // keep the vector independent of earlier cluster members
            for prev in &out[cluster_start..] {
                let c = dot(&v, prev);
                v.iter_mut().zip(prev).for_each(|(x, &p)| *x -= c * p);
            }
            let nrm = norm2(&v);
            if !(nrm.is_finite() && nrm > 0.0) {
                lcg_fill(k as u64 + 17, &mut v);
                continue;
            }
            v.iter_mut().for_each(|x| *x /= nrm);
            let res = residual_inf(diag, off, e, &v);
            if res <= 32.0 * f64::EPSILON * scale {
                break;
            }
        }
        // keep unit 2-norm while extracting so the projections above stay
        // orthogonal; physical normalization happens after the loop
        out.push(v);
    }
    for v in &mut out {
        normalize_state(v, h);
    }
    out
}

fn residual_inf(diag: &[f64], off: f64, e: f64, v: &[f64]) -> f64 {
    let n = v.len();
    let mut worst = 0.0f64;
    for i in 0..n {
        let mut r = (diag[i] - e) * v[i];
        if i > 0 {
            r += off * v[i - 1];
        }
        if i + 1 < n {
            r += off * v[i + 1];
        }
        worst = worst.max(r.abs());
    }
    worst
}

/// Trapezoid normalization (Dirichlet exterior: every interior node carries
/// weight h) plus a deterministic sign: the peak entry is positive.
fn normalize_state(v: &mut [f64], h: f64) {
    let nrm = (h * v.iter().map(|&x| x * x).sum::<f64>()).sqrt();
    let mut peak_idx = 0;
    let mut peak = 0.0f64;
    for (i, &x) in v.iter().enumerate() {
        if x.abs() > peak {
            peak = x.abs();
            peak_idx = i;
        }
    }
    let sign = if v[peak_idx] < 0.0 { -1.0 } else { 1.0 };
    v.iter_mut().for_each(|x| *x *= sign / nrm);
}

/// Drop a minority mirror component of bounded size; a large one means a
/// genuine half-mixture, which only the pair projection may untangle.
fn purify_parity(psi: &mut Vec<f64>, h: f64) {
    let n = psi.len();
    let even: Vec<f64> = (0..n).map(|i| 0.5 * (psi[i] + psi[n - 1 - i])).collect();
    let odd: Vec<f64> = (0..n).map(|i| 0.5 * (psi[i] - psi[n - 1 - i])).collect();
    let ne = norm2(&even);
    let no = norm2(&odd);
    let (mut keep, minority, majority) = if ne >= no {
        (even, no, ne)
    } else {
        (odd, ne, no)
    };
    if minority > 0.0 && minority <= 0.25 * majority {
        normalize_state(&mut keep, h);
        *psi = keep;
    }
}

fn parity_project_pair(wavefunctions: &mut [Vec<f64>], k: usize, h: f64) {
    let n = wavefunctions[k].len();
    let mirror = |v: &[f64], sign: f64| -> Vec<f64> {
        (0..n).map(|i| 0.5 * (v[i] + sign * v[n - 1 - i])).collect()
    };
    // pick, from the two raw vectors, the strongest even and odd components
    let mut best_even: Option<Vec<f64>> = None;
    let mut best_even_norm = 0.0;
    let mut best_odd: Option<Vec<f64>> = None;
    let mut best_odd_norm = 0.0;
    for idx in [k, k + 1] {
        let even = mirror(&wavefunctions[idx], 1.0);
        let ne = norm2(&even);
        if ne > best_even_norm {
            best_even_norm = ne;
            best_even = Some(even);
        }
        let odd = mirror(&wavefunctions[idx], -1.0);
        let no = norm2(&odd);
        if no > best_odd_norm {
            best_odd_norm = no;
            best_odd = Some(odd);
        }
    }
    if let (Some(mut even), Some(mut odd)) = (best_even, best_odd) {
        if best_even_norm > 1e-8 && best_odd_norm > 1e-8 {
            normalize_state(&mut even, h);
            normalize_state(&mut odd, h);
            // tunneling convention: the symmetric member lies lower
            wavefunctions[k] = even;
            wavefunctions[k + 1] = odd;
        }
    }
}

// ---------------------------------------------------------------------------
// diagnostics
// ---------------------------------------------------------------------------

/// Mirror test on the symmetric grid; `tol` is relative to the peak.
pub fn classify_parity(psi: &[f64], tol: f64) -> Parity {
    let n = psi.len();
    let peak = psi.iter().fold(0.0f64, |a, &b| a.max(b.abs()));
    if peak == 0.0 {
        return Parity::Indeterminate;
    }
    let mut even_dev = 0.0f64;
    let mut odd_dev = 0.0f64;
    for i in 0..n {
        let m = psi[n - 1 - i];
        even_dev = even_dev.max((psi[i] - m).abs());
        odd_dev = odd_dev.max((psi[i] + m).abs());
    }
    if even_dev <= tol * peak {
        Parity::Even
    } else if odd_dev <= tol * peak {
        Parity::Odd
    } else {
        Parity::Indeterminate
    }
}

/// Interior sign changes above a noise floor relative to the peak.
pub fn count_nodes(psi: &[f64]) -> usize {
    let peak = psi.iter().fold(0.0f64, |a, &b| a.max(b.abs()));
    let floor = NODE_FLOOR * peak;
    let mut nodes = 0usize;
    let mut last_sign = 0i8;
    for &x in psi {
        if x.abs() <= floor {
            continue;
        }
        let s = if x > 0.0 { 1i8 } else { -1i8 };
        if last_sign != 0 && s != last_sign {
            nodes += 1;
        }
        last_sign = s;
    }
    nodes
}

fn validate_partition(regions: &[(f64, f64)], half_width: f64) -> Result<(), SpectralError> {
    if regions.is_empty() {
        return Err(SpectralError::BadPartition("no regions given".to_string()));
    }
    let tol = 1e-9 * (1.0 + half_width);
    for &(lo, hi) in regions {
        if !(lo < hi) {
            return Err(SpectralError::BadPartition(format!(
                "region [{lo}, {hi}] is empty or inverted"
            )));
        }
    }
    if (regions[0].0 + half_width).abs() > tol {
        return Err(SpectralError::BadPartition(format!(
            "first region starts at {} instead of {}",
            regions[0].0, -half_width
        )));
    }
    if (regions[regions.len() - 1].1 - half_width).abs() > tol {
        return Err(SpectralError::BadPartition(format!(
            "last region ends at {} instead of {}",
            regions[regions.len() - 1].1,
            half_width
        )));
    }
    for w in regions.windows(2) {
        if (w[0].1 - w[1].0).abs() > tol {
            return Err(SpectralError::BadPartition(format!(
                "gap or overlap between {:?} and {:?}",
                w[0], w[1]
            )));
        }
    }
    Ok(())
}

/// Probability weight of each state over each region. Grid points are
/// assigned to the region containing them; a point sitting exactly on a
/// shared cut contributes half to each side, which preserves the exact
/// left-right symmetry of parity eigenstates.
pub fn localization_weights(
    xs: &[f64],
    wavefunctions: &[Vec<f64>],
    h: f64,
    regions: &[(f64, f64)],
) -> Result<Vec<Vec<f64>>, SpectralError> {
    if xs.len() < 2 {
        return Err(SpectralError::BadPartition("empty grid".to_string()));
    }
    // interior nodes span [-L + h, L - h], so L = last node + step
    let half_width = xs[xs.len() - 1] + (xs[1] - xs[0]);
    validate_partition(regions, half_width)?;
    let mut weights = vec![vec![0.0; regions.len()]; wavefunctions.len()];
    let mut region_idx = 0usize;
    for (i, &x) in xs.iter().enumerate() {
        while region_idx + 1 < regions.len() && x > regions[region_idx].1 {
            region_idx += 1;
        }
        let on_cut = region_idx + 1 < regions.len() && x == regions[region_idx].1;
        for (state, psi) in wavefunctions.iter().enumerate() {
            let p = h * psi[i] * psi[i];
            if on_cut {
                weights[state][region_idx] += 0.5 * p;
                weights[state][region_idx + 1] += 0.5 * p;
            } else {
                weights[state][region_idx] += p;
            }
        }
    }
    Ok(weights)
}

/// Partition of [-L, L] that cuts at every barrier-maximum position.
pub fn barrier_partition(shift: &ShiftParameters, half_width: f64) -> Vec<(f64, f64)> {
    let cuts: Vec<f64> = crate::potential::extrema(shift)
        .iter()
        .filter(|r| r.kind == ExtremumKind::Maximum && r.position.abs() < half_width)
        .map(|r| r.position)
        .collect();
    cuts_to_regions(&cuts, half_width)
}

/// Partition of [-L, L] that cuts at every stationary-shell radius, giving
/// the 2N + 1 regions used by the CSV localization columns.
pub fn shell_partition(shift: &ShiftParameters, half_width: f64) -> Vec<(f64, f64)> {
    let mut cuts = Vec::new();
    for s in shift.shells() {
        let r = s.max(0.0).sqrt();
        if r > 0.0 && r < half_width {
            cuts.push(-r);
            cuts.push(r);
        }
    }
    cuts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    cuts_to_regions(&cuts, half_width)
}

fn cuts_to_regions(cuts: &[f64], half_width: f64) -> Vec<(f64, f64)> {
    let mut edges = Vec::with_capacity(cuts.len() + 2);
    edges.push(-half_width);
    edges.extend_from_slice(cuts);
    edges.push(half_width);
    edges.windows(2).map(|w| (w[0], w[1])).collect()
}

/// Flag consecutive level pairs whose gap is below `gap_factor` times the
/// spacing to the nearest outside neighbor. The reported splitting is the
/// signed E_odd - E_even, positive in the textbook even-below-odd case.
pub fn doublet_splittings(
    energies: &[f64],
    parities: &[Parity],
    gap_factor: f64,
) -> Vec<(usize, f64)> {
    let len = energies.len();
    let mut out = Vec::new();
    let mut n = 0usize;
    while n + 1 < len {
        let gap = energies[n + 1] - energies[n];
        let mut spacing = f64::INFINITY;
        if n > 0 {
            spacing = spacing.min(energies[n] - energies[n - 1]);
        }
        if n + 2 < len {
            spacing = spacing.min(energies[n + 2] - energies[n + 1]);
        }
        if spacing.is_finite() && gap < gap_factor * spacing {
            let splitting = match (parities[n], parities[n + 1]) {
                (Parity::Odd, Parity::Even) => energies[n] - energies[n + 1],
                _ => energies[n + 1] - energies[n],
            };
            out.push((n, splitting));
            n += 2;
        } else {
            n += 1;
        }
    }
    out
}

// ---------------------------------------------------------------------------
// grid-refinement oracle
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct ConvergenceRow {
    pub step: f64,
    pub points: usize,
    pub energies: Vec<f64>,
}

#[derive(Debug, Clone)]
pub struct ConvergenceTable {
    /// Coarsest grid first; each row halves the step of the previous one.
    pub rows: Vec<ConvergenceRow>,
    /// True when |E(h) - E(h/2)| shrank at every refinement for every level.
    pub monotone: bool,
}

impl ConvergenceTable {
    /// Richardson ratios (E(4h) - E(2h)) / (E(2h) - E(h)) per refinement
    /// triple; near 4 for clean second-order convergence.
    pub fn ratios(&self, level: usize) -> Vec<f64> {
        self.rows
            .windows(3)
            .map(|w| {
                (w[0].energies[level] - w[1].energies[level])
                    / (w[1].energies[level] - w[2].energies[level])
            })
            .collect()
    }

    /// h^2 extrapolation from the two finest grids.
    pub fn extrapolated(&self, level: usize) -> f64 {
        let n = self.rows.len();
        let fine = self.rows[n - 1].energies[level];
        let coarse = self.rows[n - 2].energies[level];
        fine + (fine - coarse) / 3.0
    }
}

pub fn convergence_study(
    pot: &ArnoldPotential,
    grid: &GridSpec,
    refinements: usize,
    n_states: usize,
) -> Result<ConvergenceTable, SpectralError> {
    convergence_study_fn(|x| pot.evaluate(x), grid, refinements, n_states)
}

pub fn convergence_study_fn<F: Fn(f64) -> f64>(
    v: F,
    grid: &GridSpec,
    refinements: usize,
    n_states: usize,
) -> Result<ConvergenceTable, SpectralError> {
    let mut rows = Vec::with_capacity(refinements + 1);
    let mut g = *grid;
    for _ in 0..=refinements {
        let h = g.step();
        let xs = g.xs();
        let kin = g.lambda_sq() / (h * h);
        let diag: Vec<f64> = xs.iter().map(|&x| v(x) + 2.0 * kin).collect();
        let energies = lowest_eigenvalues(&diag, -kin, n_states);
        rows.push(ConvergenceRow {
            step: h,
            points: g.points(),
            energies,
        });
        g = g.refined();
    }
    let mut monotone = true;
    for level in 0..n_states {
        for w in rows.windows(3) {
            let d1 = (w[0].energies[level] - w[1].energies[level]).abs();
            let d2 = (w[1].energies[level] - w[2].energies[level]).abs();
            if d2 > d1 {
                monotone = false;
            }
        }
    }
    Ok(ConvergenceTable { rows, monotone })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::potential::ShiftParameters;

    fn ho_grid() -> GridSpec {
        GridSpec::new(8.0, 4095, 1.0).unwrap()
    }

    #[test]
    fn harmonic_oscillator_levels_parities_nodes() {
        let grid = ho_grid();
        let r = solve_fn(|x| x * x, &grid, 6).unwrap();
        for n in 0..6 {
            let exact = 2.0 * n as f64 + 1.0;
            assert!(
                (r.energies[n] - exact).abs() < 1e-4,
                "E_{n} = {} vs {exact}",
                r.energies[n]
            );
            let expect = if n % 2 == 0 { Parity::Even } else { Parity::Odd };
            assert_eq!(r.parities[n], expect, "parity of state {n}");
            assert_eq!(r.node_counts[n], n, "node count of state {n}");
        }
        assert!(r.splittings.is_empty(), "equidistant spectrum has no doublets");
        // single-region localization sums to one
        for w in &r.localization {
            assert!((w.iter().sum::<f64>() - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn quartic_ground_energy_matches_extrapolation() {
        let grid = GridSpec::new(6.0, 1023, 1.0).unwrap();
        let table = convergence_study_fn(|x| x * x * x * x, &grid, 3, 1).unwrap();
        for ratio in table.ratios(0) {
            assert!((3.5..=4.5).contains(&ratio), "Richardson ratio {ratio}");
        }
        let oracle = table.extrapolated(0);
        // independent value for -psi'' + x^4 psi
        assert!((oracle - 1.060_362_090_484_182_9).abs() < 1e-7, "oracle {oracle}");
        let fine = table.rows.last().unwrap().energies[0];
        assert!((fine - oracle).abs() < 1e-4);
        assert!(table.monotone);
    }

    #[test]
    fn scaling_law_quadratic_wells() {
        for &omega in &[1.0f64, 2.0, 5.0] {
            for &lambda in &[0.1f64, 1.0, 6.0] {
                let rho = (lambda / omega).sqrt();
                let half_width = (9.0 * rho).max(1.0);
                let grid = GridSpec::new(half_width, 2047, lambda * lambda).unwrap();
                let table =
                    convergence_study_fn(|x| omega * omega * x * x, &grid, 2, 1).unwrap();
                let e0 = table.extrapolated(0);
                let exact = lambda * omega;
                assert!(
                    ((e0 - exact) / exact).abs() < 1e-6,
                    "omega {omega} lambda {lambda}: {e0} vs {exact}"
                );
            }
        }
    }

    #[test]
    fn double_barrier_tunneling_doublet() {
        // two wells at +-2, barrier 16 high: clearly resolvable splitting
        let shift = ShiftParameters::with_default_weights(&[2.0]).unwrap();
        let pot = ArnoldPotential::from_shift(&shift);
        let grid = GridSpec::new(4.5, 2047, 1.0).unwrap();
        let r = solve(&pot, &grid, 4).unwrap();
        assert!(r.energies[1] > r.energies[0], "strictly split doublet");
        let gap = r.energies[1] - r.energies[0];
        let spacing = r.energies[2] - r.energies[1];
        assert!(gap < 0.1 * spacing, "gap {gap} vs spacing {spacing}");
        assert_eq!(r.parities[0], Parity::Even);
        assert_eq!(r.parities[1], Parity::Odd);
        assert_eq!(r.node_counts[0], 0);
        assert_eq!(r.node_counts[1], 1);
        assert_eq!(r.splittings.len(), 2, "two doublets among four states");
        assert_eq!(r.splittings[0].0, 0);
        assert!(r.splittings[0].1 > 0.0, "even member lies lower");
        // symmetric double well: every eigenstate splits half-half across
        // the origin cut
        for w in &r.localization {
            assert_eq!(w.len(), 2);
            assert!((w[0] - 0.5).abs() < 1e-6, "left weight {}", w[0]);
        }
    }

    #[test]
    fn deep_double_well_parity_survives_degeneracy() {
        // alpha = 3: the true splitting is far below f64 resolution of the
        // eigenvalues, so the pair exercises the projection path
        let shift = ShiftParameters::with_default_weights(&[3.0]).unwrap();
        let pot = ArnoldPotential::from_shift(&shift);
        let grid = GridSpec::new(5.5, 4095, 1.0).unwrap();
        let r = solve(&pot, &grid, 2).unwrap();
        assert!(r.energies[1] - r.energies[0] >= 0.0);
        assert_eq!(r.parities[0], Parity::Even, "projection restores parity");
        assert_eq!(r.parities[1], Parity::Odd);
        assert_eq!(r.node_counts[1], 1);
    }

    #[test]
    fn semiclassical_limit_sinks_to_minimum() {
        // (alpha, beta) = (1, 2): min V = -243 at x = +-3
        let shift = ShiftParameters::with_default_weights(&[1.0, 2.0]).unwrap();
        let pot = ArnoldPotential::from_shift(&shift);
        let mut last = f64::INFINITY;
        for &lambda in &[1.0f64, 0.5, 0.25, 0.125] {
            let grid = GridSpec::new(4.2, 2047, lambda * lambda).unwrap();
            let r = solve(&pot, &grid, 1).unwrap();
            let above_min = r.energies[0] + 243.0;
            assert!(above_min > 0.0, "ground energy sits above the minimum");
            assert!(above_min < last, "E0 - min V must decrease with lambda");
            last = above_min;
        }
    }

    #[test]
    fn boundary_leak_is_detected() {
        let grid = GridSpec::new(3.0, 255, 1.0).unwrap();
        let err = solve_fn(|x| x * x, &grid, 3).unwrap_err();
        match err {
            SpectralError::BoundaryLeak { .. } | SpectralError::UnsafeStates { .. } => {}
            other => panic!("expected a box-size failure, got {other}"),
        }
    }

    #[test]
    fn unsafe_state_count_is_rejected() {
        let grid = GridSpec::new(4.0, 511, 1.0).unwrap();
        let err = solve_fn(|x| x * x, &grid, 12).unwrap_err();
        match err {
            SpectralError::UnsafeStates { safe, .. } => assert!(safe < 12),
            other => panic!("expected UnsafeStates, got {other}"),
        }
    }

    #[test]
    fn asymmetric_potential_flags_indeterminate_parity() {
        let grid = GridSpec::new(9.0, 1023, 1.0).unwrap();
        let r = solve_fn(|x| x * x + 0.3 * x, &grid, 2).unwrap();
        assert_eq!(r.parities[0], Parity::Indeterminate);
        assert_eq!(r.parities[1], Parity::Indeterminate);
    }

    #[test]
    fn grid_validation() {
        assert!(GridSpec::new(0.0, 101, 1.0).is_err());
        assert!(GridSpec::new(2.0, 30, 1.0).is_err());
        assert!(GridSpec::new(2.0, 100, 1.0).is_err(), "even point count");
        assert!(GridSpec::new(2.0, 101, 0.0).is_err());
        let g = GridSpec::new(2.0, 101, 1.0).unwrap();
        assert_eq!(g.xs().len(), 101);
        assert_eq!(g.xs()[50], 0.0, "origin is a grid node");
        let r = g.refined();
        assert_eq!(r.points(), 203);
        assert!((r.step() - g.step() / 2.0).abs() < 1e-15);
    }

    #[test]
    fn partition_validation_rejects_gaps() {
        let shift = ShiftParameters::with_default_weights(&[2.0]).unwrap();
        let pot = ArnoldPotential::from_shift(&shift);
        let grid = GridSpec::new(4.5, 255, 1.0).unwrap();
        let bad = vec![(-4.5, -1.0), (1.0, 4.5)];
        let err = solve_fn_with_regions(|x| pot.evaluate(x), &grid, 1, bad).unwrap_err();
        assert!(matches!(err, SpectralError::BadPartition(_)));
    }

    #[test]
    fn partitions_from_shift_geometry() {
        // N = 2, barrier maxima at +-alpha = +-1; shells at 1 and 9
        let shift = ShiftParameters::with_default_weights(&[1.0, 2.0]).unwrap();
        let b = barrier_partition(&shift, 5.0);
        assert_eq!(b.len(), 3);
        assert!((b[0].1 + 1.0).abs() < 1e-12);
        assert!((b[1].1 - 1.0).abs() < 1e-12);
        let s = shell_partition(&shift, 5.0);
        assert_eq!(s.len(), 5);
        assert!((s[1].1 + 1.0).abs() < 1e-12);
        assert!((s[3].1 - 3.0).abs() < 1e-12);
    }

    #[test]
    fn auto_box_clears_requested_levels() {
        let shift = ShiftParameters::with_default_weights(&[1.0, 2.0]).unwrap();
        let pot = ArnoldPotential::from_shift(&shift);
        let grid = GridSpec::auto_for(&pot, 6, 1.0, 2047).unwrap();
        assert!(grid.half_width() > 3.0, "box reaches past the outer wells");
        let r = solve(&pot, &grid, 6).unwrap();
        assert_eq!(r.energies.len(), 6);
        for n in 0..6 {
            assert_eq!(r.node_counts[n], n, "node theorem at state {n}");
        }
    }
}
