//! Bundled figure reproductions: each target solves or sweeps its fixed
//! configuration and writes a CSV/SVG pair into the output directory.

use crate::{csvio, svg, CliError};
use arnold_core::catastrophe::{self, Estimator, PathKind};
use arnold_core::potential::extrema;
use arnold_core::spectral::{shell_partition, solve_fn_with_regions};
use arnold_core::{ArnoldPotential, GridSpec, LocusPoint, ShiftParameters};
use std::path::Path;

pub const TARGETS: [&str; 6] = ["fig1", "fig2", "fig3", "fig4", "fig5", "fig6"];

pub fn run(target: &str, out_dir: &Path) -> Result<(), CliError> {
    std::fs::create_dir_all(out_dir).map_err(|e| {
        CliError::Runtime(format!("cannot create {}: {e}", out_dir.display()))
    })?;
    match target {
        "fig1" => fig1(out_dir),
        "fig2" => fig2(out_dir),
        "fig3" => fig3(out_dir),
        "fig4" => fig4(out_dir),
        "fig5" => fig5(out_dir),
        "fig6" => fig6(out_dir),
        "all" => TARGETS.iter().try_for_each(|t| run(t, out_dir)),
        other => Err(CliError::Validation(format!(
            "unknown figure \"{other}\"; expected one of fig1..fig6 or all"
        ))),
    }
}

fn write_pair(out_dir: &Path, stem: &str, csv: &str, svg_text: &str) -> Result<(), CliError> {
    let csv_path = out_dir.join(format!("{stem}.csv"));
    let svg_path = out_dir.join(format!("{stem}.svg"));
    csvio::write_file(&csv_path, csv)?;
    csvio::write_file(&svg_path, svg_text)?;
    println!("wrote {}", csv_path.display());
    println!("wrote {}", svg_path.display());
    Ok(())
}

fn sample_curve(pot: &ArnoldPotential, half: f64, n: usize) -> Vec<(f64, f64)> {
    (0..=n)
        .map(|i| {
            let x = -half + 2.0 * half * i as f64 / n as f64;
            (x, pot.evaluate(x))
        })
        .collect()
}

/// Potential-profile figure: curve clipped a little above the highest
/// barrier, wells fully visible.
fn potential_figure(
    out_dir: &Path,
    stem: &str,
    title: &str,
    shift: &ShiftParameters,
) -> Result<(), CliError> {
    let pot = ArnoldPotential::from_shift(shift);
    let r_out = shift.shells().last().copied().unwrap_or(1.0).max(0.0).sqrt();
    let half = 1.17 * r_out;
    let samples = sample_curve(&pot, half, 800);
    let records = extrema(shift);
    let v_min = records.iter().map(|r| r.value).fold(0.0f64, f64::min);
    let v_top = records.iter().map(|r| r.value).fold(0.0f64, f64::max);
    let span = (v_top - v_min).max(1e-12);
    let frame = svg::Frame {
        x_min: -half,
        x_max: half,
        y_min: v_min - 0.08 * span,
        y_max: v_top + 0.30 * span,
    };
    let body = svg::curve(&frame, &samples, svg::CURVE_COLOR, 1.8);
    let doc = svg::document(&frame, title, "x", "V(x)", &body);
    write_pair(out_dir, stem, &csvio::xy_csv("x", "V", &samples), &doc)
}

/// Triple-well spectrum: V = x^6 - (61/25) x^4 + (36/25) x^2 at
/// lambda^2 = 1/36, seven lowest levels drawn over their classically
/// allowed intervals.
fn fig1(out_dir: &Path) -> Result<(), CliError> {
    let lambda_sq = 1.0 / 36.0;
    let pot = ArnoldPotential::from_raw_couplings(
        2,
        &[-61.0 / 25.0, 0.0, 36.0 / 25.0, 0.0],
        lambda_sq,
    )?;
    let half = 2.2;
    let grid = GridSpec::new(half, 8191, lambda_sq)?;
    let shift = pot.couplings_to_shifts(Some(&[1]))?;
    let regions = shell_partition(&shift, half);
    let result = solve_fn_with_regions(|x| pot.evaluate(x), &grid, 7, regions)?;

    let samples = sample_curve(&pot, half, 800);
    let v_min = samples.iter().map(|&(_, v)| v).fold(f64::INFINITY, f64::min);
    let e_top = result.energies.last().copied().unwrap_or(1.0);
    let span = e_top - v_min;
    let frame = svg::Frame {
        x_min: -half,
        x_max: half,
        y_min: v_min - 0.08 * span,
        y_max: e_top + 0.12 * span,
    };
    let mut body = svg::curve(&frame, &samples, svg::CURVE_COLOR, 1.8);
    let mut segs = Vec::new();
    for &e in &result.energies {
        for (x0, x1) in svg::allowed_intervals(&samples, e) {
            segs.push((x0, x1, e));
        }
    }
    body.push_str(&svg::segments(&frame, &segs, svg::LEVEL_COLOR));
    let doc = svg::document(
        &frame,
        "Triple-well potential and its seven lowest levels",
        "x",
        "V(x), E_n",
        &body,
    );
    write_pair(out_dir, "fig1", &csvio::spectrum_csv(&result), &doc)
}

/// Four-well potential at unit generators; its coupling tuple is printed
/// because the values are exact small integers.
fn fig2(out_dir: &Path) -> Result<(), CliError> {
    let shift = ShiftParameters::new(&[1.0, 1.0, 1.0], &[3, 3])?;
    let pot = ArnoldPotential::from_shift(&shift);
    let tuple: Vec<String> = pot
        .couplings_sq_exact()
        .iter()
        .map(|c| c.to_string())
        .collect();
    println!("(a^2,b^2,c^2) = ({})", tuple.join(","));
    potential_figure(out_dir, "fig2", "Four-well potential, N = 3", &shift)
}

/// Relocalization locus in the (alpha, beta) plane: both critical branches
/// of the two-barrier family from the harmonic estimator, with the
/// asymptote beta = alpha as a guide line.
fn fig3(out_dir: &Path) -> Result<(), CliError> {
    let fixed: Vec<f64> = range_grid(0.3, 3.0, 0.05);
    let points = catastrophe::locus_curve(
        PathKind::K5AlphaBeta,
        1.0,
        &fixed,
        &Estimator::Harmonic,
        catastrophe::DEFAULT_ROOT_TOL,
    )?;
    let y_top = points
        .iter()
        .filter_map(|p| p.critical)
        .fold(3.0f64, f64::max);
    let frame = svg::Frame {
        x_min: 0.3,
        x_max: 3.0,
        y_min: 0.0,
        y_max: 1.1 * y_top,
    };
    let mut body = svg::curve(
        &frame,
        &[(0.3, 0.3), (3.0, 3.0)],
        svg::GUIDE_COLOR,
        0.8,
    );
    body.push_str(&branch_curves(&frame, &points));
    let doc = svg::document(
        &frame,
        "Critical beta branches over alpha (harmonic estimator)",
        "alpha",
        "beta_crit",
        &body,
    );
    write_pair(out_dir, "fig3", &csvio::locus_csv(&points), &doc)
}

/// Relocalization interface eta_crit(alpha) for the three-barrier family
/// with gamma = (1 + eta) alpha.
fn fig4(out_dir: &Path) -> Result<(), CliError> {
    let fixed: Vec<f64> = range_grid(1.0, 4.0, 0.05);
    let points = catastrophe::locus_curve(
        PathKind::K7Eta,
        1.0,
        &fixed,
        &Estimator::Harmonic,
        catastrophe::DEFAULT_ROOT_TOL,
    )?;
    let y_top = points
        .iter()
        .filter_map(|p| p.critical)
        .fold(1e-6f64, f64::max);
    let frame = svg::Frame {
        x_min: 1.0,
        x_max: 4.0,
        y_min: 0.0,
        y_max: 1.15 * y_top,
    };
    let body = branch_curves(&frame, &points);
    let doc = svg::document(
        &frame,
        "Critical eta over alpha (harmonic estimator)",
        "alpha",
        "eta_crit",
        &body,
    );
    write_pair(out_dir, "fig4", &csvio::locus_csv(&points), &doc)
}

/// Five-well potential from the exact-square generator set
/// (1, 2/3, 5/6, 1/3) with weights (4, 6, 12).
fn fig5(out_dir: &Path) -> Result<(), CliError> {
    let shift = ShiftParameters::new(
        &[
            1.0,
            (2.0f64 / 3.0).sqrt(),
            (5.0f64 / 6.0).sqrt(),
            (1.0f64 / 3.0).sqrt(),
        ],
        &[4, 6, 12],
    )?;
    potential_figure(out_dir, "fig5", "Five-well potential, N = 4", &shift)
}

/// Six-well potential from the squared generators
/// (15, 8, 6, 6, 5)/16 with weights (5, 10, 10, 10).
fn fig6(out_dir: &Path) -> Result<(), CliError> {
    let shift = ShiftParameters::new(
        &[
            (15.0f64 / 16.0).sqrt(),
            (8.0f64 / 16.0).sqrt(),
            (6.0f64 / 16.0).sqrt(),
            (6.0f64 / 16.0).sqrt(),
            (5.0f64 / 16.0).sqrt(),
        ],
        &[5, 10, 10, 10],
    )?;
    potential_figure(out_dir, "fig6", "Six-well potential, N = 5", &shift)
}

/// Inclusive lo..hi grid with the given step (hi kept when it sits on the
/// step lattice up to rounding).
pub fn range_grid(lo: f64, hi: f64, step: f64) -> Vec<f64> {
    let count = ((hi - lo) / step + 1e-9).floor() as usize;
    (0..=count).map(|k| lo + k as f64 * step).collect()
}

/// One polyline per branch, split where a root is missing.
fn branch_curves(frame: &svg::Frame, points: &[LocusPoint]) -> String {
    let mut branches: Vec<&str> = Vec::new();
    for p in points {
        if !branches.contains(&p.branch) {
            branches.push(p.branch);
        }
    }
    let mut body = String::new();
    for (bi, branch) in branches.iter().enumerate() {
        let color = svg::BRANCH_COLORS[bi % svg::BRANCH_COLORS.len()];
        let mut run: Vec<(f64, f64)> = Vec::new();
        for p in points.iter().filter(|p| p.branch == *branch) {
            match p.critical {
                Some(c) => run.push((p.fixed, c)),
                None => {
                    if run.len() > 1 {
                        body.push_str(&svg::curve(frame, &run, color, 1.8));
                    }
                    run.clear();
                }
            }
        }
        if run.len() > 1 {
            body.push_str(&svg::curve(frame, &run, color, 1.8));
        }
    }
    body
}
