//! CSV emission. Everything numeric goes through [`fnum`] so identical
//! inputs give byte-identical files.

use crate::CliError;
use arnold_core::{LocusPoint, ScanSample, SpectralResult};
use std::path::Path;

/// 12 significant digits, scientific; the bit-stable interchange format.
pub fn fnum(x: f64) -> String {
    format!("{x:.11e}")
}

pub fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents)
        .map_err(|e| CliError::Runtime(format!("cannot write {}: {e}", path.display())))
}

/// Spectrum rows: n, E, parity, splitting partner (empty when the state is
/// not part of a flagged doublet), then one weight column per region.
pub fn spectrum_csv(result: &SpectralResult) -> String {
    let mut partner: Vec<Option<usize>> = vec![None; result.n_states()];
    for &(pair, _) in &result.splittings {
        partner[pair] = Some(pair + 1);
        partner[pair + 1] = Some(pair);
    }
    let mut out = String::from("n,E,parity,splitting_partner");
    for r in 0..result.regions.len() {
        out.push_str(&format!(",weight_region_{r}"));
    }
    out.push('\n');
    for (n, energy) in result.energies.iter().enumerate() {
        out.push_str(&format!(
            "{n},{},{},{}",
            fnum(*energy),
            result.parities[n],
            partner[n].map(|p| p.to_string()).unwrap_or_default()
        ));
        for w in &result.localization[n] {
            out.push(',');
            out.push_str(&fnum(*w));
        }
        out.push('\n');
    }
    out
}

/// Wavefunction dump: x, then one column per state.
pub fn psi_csv(result: &SpectralResult) -> String {
    let mut out = String::from("x");
    for n in 0..result.n_states() {
        out.push_str(&format!(",psi_{n}"));
    }
    out.push('\n');
    for (i, &x) in result.xs.iter().enumerate() {
        out.push_str(&fnum(x));
        for psi in &result.wavefunctions {
            out.push(',');
            out.push_str(&fnum(psi[i]));
        }
        out.push('\n');
    }
    out
}

/// Critical-curve rows; branches without a root keep their row with empty
/// value cells so the grid stays visible in the file.
pub fn locus_csv(points: &[LocusPoint]) -> String {
    let mut out = String::from("fixed_value,branch,critical_value,delta_residual\n");
    for p in points {
        out.push_str(&format!(
            "{},{},{},{}\n",
            fnum(p.fixed),
            p.branch,
            p.critical.map(fnum).unwrap_or_default(),
            p.delta_residual.map(fnum).unwrap_or_default()
        ));
    }
    out
}

pub fn scan_csv(samples: &[ScanSample]) -> String {
    let mut out = String::from("swept_value,ground_energy,inner_weight,parity\n");
    for s in samples {
        out.push_str(&format!(
            "{},{},{},{}\n",
            fnum(s.value),
            fnum(s.ground_energy),
            fnum(s.inner_weight),
            s.parity
        ));
    }
    out
}

/// Two-column curve samples (potential profiles).
pub fn xy_csv(x_name: &str, y_name: &str, rows: &[(f64, f64)]) -> String {
    let mut out = format!("{x_name},{y_name}\n");
    for (x, y) in rows {
        out.push_str(&fnum(*x));
        out.push(',');
        out.push_str(&fnum(*y));
        out.push('\n');
    }
    out
}
