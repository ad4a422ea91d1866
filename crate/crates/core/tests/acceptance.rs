//! End-to-end acceptance checks. Each test prints one `criterion N:
//! PASS/FAIL` line (visible under `--nocapture`; the test verdicts mirror
//! them) and enforces its runtime budget.

use std::time::{Duration, Instant};

use arnold_core::catastrophe::{
    critical_root, relocalization_crossing, relocalization_scan, Estimator, FamilyPath,
    NumericConfig, PathKind,
};
use arnold_core::diophantine::{check_divisibility, minimal_weights, reference_weights};
use arnold_core::perturbation::{doublet_gap_curvature, doublet_gap_formula};
use arnold_core::spectral::{self, convergence_study_fn, doublet_splittings, Parity};
use arnold_core::{ArnoldPotential, GridSpec, ShiftParameters};
use num_bigint::BigInt;
use num_rational::BigRational;

fn verdict(criterion: usize, ok: bool, detail: &str) {
    let label = if ok { "PASS" } else { "FAIL" };
    println!("criterion {criterion}: {label} - {detail}");
    assert!(ok, "criterion {criterion}: {detail}");
}

fn within(elapsed: Duration, budget: Duration) -> bool {
    elapsed <= budget
}

fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Deterministic uniform draws for the randomized identities.
struct Draws(u64);

impl Draws {
    fn new(seed: u64) -> Self {
        Draws(
            seed.wrapping_mul(0x9E37_79B9_7F4A_7C15)
                .wrapping_add(0xD1B5_4A32_D192_ED03),
        )
    }

    fn unit(&mut self) -> f64 {
        self.0 = self
            .0
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        (self.0 >> 11) as f64 / (1u64 << 53) as f64
    }

    fn range(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.unit()
    }

    fn index(&mut self, n: usize) -> usize {
        ((self.unit() * n as f64) as usize).min(n - 1)
    }
}

#[test]
fn criterion_01_triple_barrier_coupling_identity() {
    let t0 = Instant::now();
    let shift = ShiftParameters::new(&[1.0, 1.0, 1.0], &[3, 3]).unwrap();
    let pot = ArnoldPotential::from_shift(&shift);
    let elapsed = t0.elapsed();
    let got = pot.couplings_sq_exact().to_vec();
    let want = vec![rat(4, 1), rat(13, 1), rat(28, 1)];
    let ok = got == want && within(elapsed, Duration::from_millis(1));
    verdict(
        1,
        ok,
        &format!("(a^2,b^2,c^2) = (4,13,28) exact in {elapsed:?} (budget 1 ms)"),
    );
}

#[test]
fn criterion_02_quad_barrier_coefficient_vector() {
    let t0 = Instant::now();
    let squares = vec![rat(1, 1), rat(2, 3), rat(5, 6), rat(1, 3)];
    let shift = ShiftParameters::from_squares(squares, vec![4, 6, 12]).unwrap();
    let pot = ArnoldPotential::from_shift(&shift);
    let coeffs = pot.x_coeffs_exact();
    let elapsed = t0.elapsed();
    // descending even powers x^10 .. x^2
    let got: Vec<BigRational> = (1..=5).map(|k| coeffs[2 * (5 - k) + 2].clone()).collect();
    let want = vec![
        rat(1, 1),
        rat(-65, 2),
        rat(355, 1),
        rat(-39860, 27),
        rat(54340, 27),
    ];
    let ok = got == want && within(elapsed, Duration::from_millis(10));
    verdict(
        2,
        ok,
        &format!("coefficient vector (1, -65/2, 355, -39860/27, 54340/27) exact in {elapsed:?} (budget 10 ms)"),
    );
}

#[test]
fn criterion_03_weight_tuples_validated_and_minimized() {
    let t0 = Instant::now();
    let mut ok = true;
    let mut notes = Vec::new();
    for n in 2..=8usize {
        let reference = reference_weights(n).unwrap();
        let checked = check_divisibility(n, reference).unwrap();
        if !checked.valid {
            ok = false;
            notes.push(format!("reference tuple for N={n} rejected"));
        }
    }
    for (n, pinned) in [(3usize, vec![3u64, 3]), (4, vec![4, 6, 12])] {
        let found = minimal_weights(n, 512).unwrap();
        if found.weights != pinned {
            ok = false;
            notes.push(format!(
                "N={n}: minimal search gave {:?}, proved minimum is {pinned:?}",
                found.weights
            ));
        }
    }
    for n in 5..=8usize {
        let found = minimal_weights(n, 512).unwrap();
        let checked = check_divisibility(n, &found.weights).unwrap();
        if !checked.valid {
            ok = false;
            notes.push(format!("N={n}: search returned invalid tuple"));
            continue;
        }
        let reference = reference_weights(n).unwrap().to_vec();
        let relation = if found.weights == reference {
            "identical".to_string()
        } else {
            format!("differs from published {:?}", reference)
        };
        notes.push(format!("N={n}: found {:?}, {relation}", found.weights));
    }
    let elapsed = t0.elapsed();
    ok = ok && within(elapsed, Duration::from_secs(60));
    verdict(
        3,
        ok,
        &format!("{}; total {elapsed:?} (budget 60 s)", notes.join("; ")),
    );
}

#[test]
fn criterion_04_double_barrier_doublet_structure() {
    let t0 = Instant::now();
    let pot = ArnoldPotential::from_raw_couplings(
        2,
        &[-61.0 / 25.0, 0.0, 36.0 / 25.0, 0.0],
        1.0 / 36.0,
    )
    .unwrap();
    let grid = GridSpec::new(2.2, 8191, 1.0 / 36.0).unwrap();
    let result = spectral::solve(&pot, &grid, 7).unwrap();
    let e = &result.energies;
    let barrier = {
        let shift = pot.couplings_to_shifts(None).unwrap();
        shift.shells()[0].sqrt()
    };

    let mut ok = true;
    let mut notes = Vec::new();

    if result.parities[0] != Parity::Even {
        ok = false;
        notes.push("ground state not even".to_string());
    }
    let central0 = 1.0 - result.weight_outside(0, barrier);
    if central0 <= 0.5 {
        ok = false;
    }
    notes.push(format!("ground central weight {central0:.3}"));

    let first_gap = e[2] - e[1];
    let spacing = e[3] - e[2];
    if first_gap >= 0.02 * spacing {
        ok = false;
    }
    notes.push(format!(
        "doublet(1,2) gap {first_gap:.2e} vs 0.02*(E3-E2) = {:.2e}",
        0.02 * spacing
    ));
    if result.parities[1] != Parity::Odd || result.parities[2] != Parity::Even {
        ok = false;
    }
    notes.push(format!(
        "state parities ({}, {}) expect (odd, even)",
        result.parities[1], result.parities[2]
    ));
    for state in [1usize, 2] {
        let outer = result.weight_outside(state, barrier);
        if outer <= 0.8 {
            ok = false;
            notes.push(format!("state {state} outer weight {outer:.3}"));
        }
    }
    let second_gap = e[6] - e[5];
    let below = e[5] - e[4];
    if second_gap >= 0.02 * below {
        ok = false;
    }
    notes.push(format!(
        "doublet(5,6) gap {second_gap:.2e} vs 0.02*(E5-E4) = {:.2e}",
        0.02 * below
    ));
    let flagged: Vec<usize> = doublet_splittings(e, &result.parities, 0.2)
        .into_iter()
        .map(|(n, _)| n)
        .collect();
    if !flagged.contains(&1) || !flagged.contains(&5) {
        ok = false;
        notes.push(format!("doublet detector flagged {flagged:?}"));
    }

    let elapsed = t0.elapsed();
    ok = ok && within(elapsed, Duration::from_secs(30));
    verdict(
        4,
        ok,
        &format!("{}; {elapsed:?} (budget 30 s)", notes.join("; ")),
    );
}

#[test]
fn criterion_05_deep_well_estimate_sharpens() {
    let t0 = Instant::now();
    let ratio_at = |alpha: f64| -> f64 {
        let shift = ShiftParameters::with_default_weights(&[alpha]).unwrap();
        let pot = ArnoldPotential::from_shift(&shift);
        let grid = GridSpec::auto_for(&pot, 1, 1.0, 4095).unwrap();
        let result = spectral::solve(&pot, &grid, 1).unwrap();
        let estimate = -alpha.powi(4) + 2.0 * alpha;
        (result.energies[0] - estimate).abs() / (4.0 * alpha)
    };
    let r3 = ratio_at(3.0);
    let r5 = ratio_at(5.0);
    let elapsed = t0.elapsed();
    let ok = r5 < r3 && within(elapsed, Duration::from_secs(20));
    verdict(
        5,
        ok,
        &format!("relative residual {r5:.2e} (alpha=5) < {r3:.2e} (alpha=3); {elapsed:?} (budget 20 s)"),
    );
}

#[test]
fn criterion_06_doublet_gap_identity() {
    let t0 = Instant::now();
    let mut draws = Draws::new(0x5eed_0006);
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let alpha = draws.range(0.2, 3.0);
        let sigma = draws.range(0.1, 2.0);
        let n = draws.index(5);
        let shift =
            ShiftParameters::with_default_weights(&[alpha, sigma * alpha, sigma * alpha]).unwrap();
        let formula = doublet_gap_formula(&shift, 1.0, n).unwrap();
        let curvature = doublet_gap_curvature(&shift, 1.0, n).unwrap();
        let rel = (formula - curvature).abs() / curvature.abs();
        worst = worst.max(rel);
    }
    let elapsed = t0.elapsed();
    let ok = worst < 1e-12 && within(elapsed, Duration::from_secs(1));
    verdict(
        6,
        ok,
        &format!("worst relative gap-route disagreement {worst:.2e} over 100 draws; {elapsed:?} (budget 1 s)"),
    );
}

#[test]
fn criterion_07_equal_depth_identity() {
    let t0 = Instant::now();
    let mut draws = Draws::new(0x5eed_0007);
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let alpha = draws.range(0.3, 3.0);
        let sigma = draws.range(0.1, 2.0);
        let shift =
            ShiftParameters::with_default_weights(&[alpha, sigma * alpha, sigma * alpha]).unwrap();
        let pot = ArnoldPotential::from_shift(&shift);
        let shells = shift.shells();
        let outer = shells[2].sqrt();
        let inner_depth = pot.evaluate(alpha);
        let outer_depth = pot.evaluate(outer);
        let rel = (inner_depth - outer_depth).abs() / inner_depth.abs().max(outer_depth.abs());
        worst = worst.max(rel);
    }
    let elapsed = t0.elapsed();
    let ok = worst < 1e-12 && within(elapsed, Duration::from_secs(1));
    verdict(
        7,
        ok,
        &format!("worst relative depth mismatch {worst:.2e} over 100 draws; {elapsed:?} (budget 1 s)"),
    );
}

#[test]
fn criterion_08_critical_curve_asymptote_and_lower_branch() {
    let t0 = Instant::now();
    let path = FamilyPath::new(PathKind::K5AlphaBeta, 3.0).unwrap();
    let upper = critical_root(&path, (3.0, 16.0), &Estimator::Harmonic, 1e-9).unwrap();
    let asym = (upper.value / 3.0 - 1.0).abs();

    let mut lower_found = None;
    for &alpha in &[0.3f64, 0.5, 0.8, 1.0, 1.1] {
        let p = FamilyPath::new(PathKind::K5AlphaBeta, alpha).unwrap();
        if let Ok(root) = critical_root(&p, (1e-4 * (1.0 + alpha), alpha), &Estimator::Harmonic, 1e-9)
        {
            lower_found = Some((alpha, root.value));
            break;
        }
    }
    let elapsed = t0.elapsed();
    let ok = asym < 0.1 && lower_found.is_some() && within(elapsed, Duration::from_secs(5));
    let lower_note = match lower_found {
        Some((a, b)) => format!("lower root beta = {b:.4} at alpha = {a}"),
        None => "no lower root found in [0.3, 1.5]".to_string(),
    };
    verdict(
        8,
        ok,
        &format!(
            "beta_crit(3) = {:.4}, |beta_crit/alpha - 1| = {asym:.3}; {lower_note}; {elapsed:?} (budget 5 s)",
            upper.value
        ),
    );
}

#[test]
fn criterion_09_numeric_relocalization_matches_prediction() {
    let t0 = Instant::now();
    let path = FamilyPath::new(PathKind::K5AlphaBeta, 1.0).unwrap();
    let predicted = critical_root(&path, (0.9, 1.5), &Estimator::Harmonic, 1e-9)
        .unwrap()
        .value;

    let values: Vec<f64> = (0..=32).map(|i| 0.85 + 0.02 * i as f64).collect();
    let cfg = NumericConfig {
        points: 2001,
        n_states: 4,
        half_width: None,
    };
    let samples = relocalization_scan(&path, &values, &cfg).unwrap();
    let all_even = samples.iter().all(|s| s.parity == Parity::Even);
    let crossing = relocalization_crossing(&samples);
    let elapsed = t0.elapsed();

    let (ok_flip, note) = match crossing {
        Some(beta) => {
            let rel = (beta - predicted).abs() / predicted;
            (
                rel < 0.2,
                format!("flip at beta = {beta:.4}, harmonic prediction {predicted:.4}, deviation {:.1}%", rel * 100.0),
            )
        }
        None => (false, "no localization flip in the scan window".to_string()),
    };
    let ok = ok_flip && all_even && within(elapsed, Duration::from_secs(300));
    verdict(
        9,
        ok,
        &format!(
            "{note}; ground parity even throughout = {all_even}; {elapsed:?} (budget 5 min)"
        ),
    );
}

#[test]
fn criterion_10_grid_convergence_oracle() {
    let t0 = Instant::now();
    let mut ok = true;
    let mut notes = Vec::new();

    for (name, f) in [
        ("x^2", (|x: f64| x * x) as fn(f64) -> f64),
        ("x^4", (|x: f64| x.powi(4)) as fn(f64) -> f64),
    ] {
        let grid = GridSpec::new(8.0, 511, 1.0).unwrap();
        let table = convergence_study_fn(f, &grid, 3, 3).unwrap();
        for level in 0..3 {
            for ratio in table.ratios(level) {
                if !(3.5..=4.5).contains(&ratio) {
                    ok = false;
                    notes.push(format!("{name} level {level} ratio {ratio:.3}"));
                }
            }
        }
        notes.push(format!("{name} ratios second-order"));
    }

    let grid = GridSpec::new(8.0, 4095, 1.0).unwrap();
    let result = spectral::solve_fn(|x| x * x, &grid, 6).unwrap();
    let mut worst = 0.0f64;
    for n in 0..6 {
        let exact = 2.0 * n as f64 + 1.0;
        worst = worst.max((result.energies[n] - exact).abs());
    }
    if worst >= 1e-4 {
        ok = false;
    }
    notes.push(format!("harmonic levels off by {worst:.2e} (tol 1e-4)"));

    let elapsed = t0.elapsed();
    ok = ok && within(elapsed, Duration::from_secs(30));
    verdict(
        10,
        ok,
        &format!("{}; {elapsed:?} (budget 30 s)", notes.join("; ")),
    );
}
