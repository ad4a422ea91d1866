//! Run-configuration parsing: strict JSON with every violation reported in
//! one pass, so a misconfigured file never half-works.

use arnold_core::PotentialJson;
use serde_json::Value;

pub const SCHEMA_VERSION: i64 = 1;

pub const DEFAULT_STATES: usize = 6;
pub const DEFAULT_POINTS: usize = 2001;
pub const DEFAULT_LEVEL_MAX: usize = 3;

/// Validated run configuration for `solve` and `estimate`.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub potential: PotentialJson,
    /// Explicit box half-width; `None` selects it from the well geometry.
    pub half_width: Option<f64>,
    pub points: usize,
    pub states: usize,
    /// Highest harmonic level printed by `estimate`.
    pub level_max: usize,
}

/// Parse and validate; on failure returns every violation found, one per
/// entry, never just the first.
pub fn parse_config(text: &str) -> Result<RunConfig, Vec<String>> {
    let value: Value = match serde_json::from_str(text) {
        Ok(v) => v,
        Err(e) => return Err(vec![format!("not valid JSON: {e}")]),
    };
    let mut errs = Vec::new();
    let root = match value.as_object() {
        Some(map) => map,
        None => return Err(vec!["top level must be a JSON object".to_string()]),
    };

    for key in root.keys() {
        if !matches!(key.as_str(), "schema" | "potential" | "grid" | "states" | "level_max") {
            errs.push(format!("unknown key \"{key}\" at top level"));
        }
    }

    match root.get("schema") {
        None => errs.push("missing required key \"schema\"".to_string()),
        Some(v) => match v.as_i64() {
            Some(SCHEMA_VERSION) => {}
            Some(other) => errs.push(format!(
                "unsupported schema version {other}; this build reads schema {SCHEMA_VERSION}"
            )),
            None => errs.push(format!("\"schema\" must be the integer {SCHEMA_VERSION}")),
        },
    }

    let potential = match root.get("potential") {
        None => {
            errs.push("missing required key \"potential\"".to_string());
            None
        }
        Some(v) => parse_potential(v, &mut errs),
    };

    let mut half_width = None;
    let mut points = DEFAULT_POINTS;
    if let Some(v) = root.get("grid") {
        match v.as_object() {
            None => errs.push("\"grid\" must be an object".to_string()),
            Some(map) => {
                for key in map.keys() {
                    if !matches!(key.as_str(), "half_width" | "points") {
                        errs.push(format!("unknown key \"{key}\" in \"grid\""));
                    }
                }
                if let Some(h) = map.get("half_width") {
                    match h.as_f64() {
                        Some(x) if x.is_finite() && x > 0.0 => half_width = Some(x),
                        _ => errs.push(format!(
                            "\"grid.half_width\" must be a positive number, got {h}"
                        )),
                    }
                }
                if let Some(p) = map.get("points") {
                    match p.as_u64() {
                        Some(m) if m >= 64 && m % 2 == 1 => points = m as usize,
                        _ => errs.push(format!(
                            "\"grid.points\" must be an odd integer >= 64, got {p}"
                        )),
                    }
                }
            }
        }
    }

    let mut states = DEFAULT_STATES;
    if let Some(v) = root.get("states") {
        match v.as_u64() {
            Some(s) if (1..=64).contains(&s) => states = s as usize,
            _ => errs.push(format!("\"states\" must be an integer in 1..=64, got {v}")),
        }
    }

    let mut level_max = DEFAULT_LEVEL_MAX;
    if let Some(v) = root.get("level_max") {
        match v.as_u64() {
            Some(k) if k <= 16 => level_max = k as usize,
            _ => errs.push(format!("\"level_max\" must be an integer in 0..=16, got {v}")),
        }
    }

    match (errs.is_empty(), potential) {
        (true, Some(potential)) => Ok(RunConfig {
            potential,
            half_width,
            points,
            states,
            level_max,
        }),
        _ => Err(errs),
    }
}

fn parse_potential(v: &Value, errs: &mut Vec<String>) -> Option<PotentialJson> {
    let map = match v.as_object() {
        Some(m) => m,
        None => {
            errs.push("\"potential\" must be an object".to_string());
            return None;
        }
    };
    let before = errs.len();

    for key in map.keys() {
        if !matches!(key.as_str(), "N" | "params" | "weights" | "couplings" | "lambda_sq") {
            errs.push(format!("unknown key \"{key}\" in \"potential\""));
        }
    }

    let n = match map.get("N") {
        None => {
            errs.push("missing required key \"potential.N\"".to_string());
            0
        }
        Some(v) => match v.as_u64() {
            Some(n) if (1..=10).contains(&n) => n as u32,
            _ => {
                errs.push(format!("\"potential.N\" must be an integer in 1..=10, got {v}"));
                0
            }
        },
    };

    let params = map
        .get("params")
        .map(|v| number_list(v, "potential.params", errs));
    let couplings = map
        .get("couplings")
        .map(|v| number_list(v, "potential.couplings", errs));
    match (&params, &couplings) {
        (Some(_), Some(_)) => errs.push(
            "\"potential.params\" and \"potential.couplings\" are mutually exclusive; \
             give exactly one"
                .to_string(),
        ),
        (None, None) => errs.push(
            "one of \"potential.params\" or \"potential.couplings\" is required".to_string(),
        ),
        _ => {}
    }
    if n > 0 {
        if let Some(Some(p)) = &params {
            if p.len() != n as usize {
                errs.push(format!(
                    "\"potential.params\" must list N = {n} generators, got {}",
                    p.len()
                ));
            }
        }
        if let Some(Some(c)) = &couplings {
            if c.len() != 2 * n as usize {
                errs.push(format!(
                    "\"potential.couplings\" must list 2N = {} couplings c_1..c_2N, got {}",
                    2 * n,
                    c.len()
                ));
            }
        }
    }

    let weights = match map.get("weights") {
        None => None,
        Some(v) => match v.as_array() {
            Some(arr) => {
                let mut out = Vec::with_capacity(arr.len());
                let mut ok = true;
                for (i, w) in arr.iter().enumerate() {
                    match w.as_u64() {
                        Some(w) if w >= 1 => out.push(w),
                        _ => {
                            errs.push(format!(
                                "\"potential.weights[{i}]\" must be a positive integer, got {w}"
                            ));
                            ok = false;
                        }
                    }
                }
                if ok && n > 0 && out.len() != n as usize - 1 {
                    errs.push(format!(
                        "\"potential.weights\" must list N - 1 = {} entries, got {}",
                        n - 1,
                        out.len()
                    ));
                }
                if ok {
                    Some(out)
                } else {
                    None
                }
            }
            None => {
                errs.push(format!("\"potential.weights\" must be an array, got {v}"));
                None
            }
        },
    };

    let lambda_sq = match map.get("lambda_sq") {
        None => None,
        Some(v) => match v.as_f64() {
            Some(x) if x.is_finite() && x > 0.0 => Some(x),
            _ => {
                errs.push(format!(
                    "\"potential.lambda_sq\" must be a positive number, got {v}"
                ));
                None
            }
        },
    };

    if errs.len() > before {
        return None;
    }
    Some(PotentialJson {
        n,
        params: params.flatten(),
        weights,
        couplings: couplings.flatten(),
        lambda_sq,
    })
}

fn number_list(v: &Value, what: &str, errs: &mut Vec<String>) -> Option<Vec<f64>> {
    let arr = match v.as_array() {
        Some(a) => a,
        None => {
            errs.push(format!("\"{what}\" must be an array of numbers, got {v}"));
            return None;
        }
    };
    let mut out = Vec::with_capacity(arr.len());
    for (i, x) in arr.iter().enumerate() {
        match x.as_f64() {
            Some(x) if x.is_finite() => out.push(x),
            _ => {
                errs.push(format!("\"{what}[{i}]\" must be a finite number, got {x}"));
                return None;
            }
        }
    }
    Some(out)
}
