//! Minimal hand-rolled SVG plotting: a framed axes box, sampled curves
//! clipped to the frame, and horizontal level segments. All coordinates are
//! formatted to fixed precision so identical inputs give identical files.

pub const CURVE_COLOR: &str = "#1f3a5f";
pub const LEVEL_COLOR: &str = "#b3402a";
pub const BRANCH_COLORS: [&str; 3] = ["#1f3a5f", "#b3402a", "#3a7d44"];
pub const GUIDE_COLOR: &str = "#999999";

const W: f64 = 800.0;
const H: f64 = 520.0;
const ML: f64 = 70.0;
const MR: f64 = 24.0;
const MT: f64 = 40.0;
const MB: f64 = 52.0;

/// Data-to-pixel mapping for one plot.
#[derive(Debug, Clone, Copy)]
pub struct Frame {
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
}

impl Frame {
    fn px(&self, x: f64) -> f64 {
        ML + (x - self.x_min) / (self.x_max - self.x_min) * (W - ML - MR)
    }

    fn py(&self, y: f64) -> f64 {
        H - MB - (y - self.y_min) / (self.y_max - self.y_min) * (H - MT - MB)
    }

    fn contains_y(&self, y: f64) -> bool {
        y >= self.y_min && y <= self.y_max
    }
}

fn c(v: f64) -> String {
    format!("{v:.2}")
}

/// Round tick step: 1, 2, or 5 times a power of ten near `span / 5`.
fn tick_step(span: f64) -> f64 {
    let raw = span / 5.0;
    let pow = 10f64.powf(raw.log10().floor());
    let frac = raw / pow;
    let mult = if frac < 1.5 {
        1.0
    } else if frac < 3.5 {
        2.0
    } else if frac < 7.5 {
        5.0
    } else {
        10.0
    };
    mult * pow
}

fn ticks(lo: f64, hi: f64) -> (Vec<f64>, usize) {
    let step = tick_step(hi - lo);
    let decimals = (-step.log10().floor()).max(0.0) as usize;
    let mut out = Vec::new();
    let mut k = (lo / step).ceil() as i64;
    while (k as f64) * step <= hi + 1e-9 * step {
        out.push(k as f64 * step);
        k += 1;
    }
    (out, decimals)
}

/// Wrap plot body in the document: background, axes box, ticks, labels.
pub fn document(frame: &Frame, title: &str, x_label: &str, y_label: &str, body: &str) -> String {
    let mut s = String::new();
    s.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{W}\" height=\"{H}\" \
         viewBox=\"0 0 {W} {H}\">\n"
    ));
    s.push_str(&format!(
        "<rect x=\"0\" y=\"0\" width=\"{W}\" height=\"{H}\" fill=\"#ffffff\"/>\n"
    ));
    s.push_str(&format!(
        "<text x=\"{}\" y=\"24\" font-family=\"sans-serif\" font-size=\"15\" \
         text-anchor=\"middle\" fill=\"#222222\">{title}</text>\n",
        c((ML + W - MR) / 2.0)
    ));

    let (xt, xd) = ticks(frame.x_min, frame.x_max);
    for t in xt {
        let px = frame.px(t);
        s.push_str(&format!(
            "<line x1=\"{0}\" y1=\"{1}\" x2=\"{0}\" y2=\"{2}\" stroke=\"#bbbbbb\" \
             stroke-width=\"0.5\"/>\n",
            c(px),
            c(MT),
            c(H - MB)
        ));
        s.push_str(&format!(
            "<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"12\" \
             text-anchor=\"middle\" fill=\"#444444\">{t:.*}</text>\n",
            c(px),
            c(H - MB + 18.0),
            xd
        ));
    }
    let (yt, yd) = ticks(frame.y_min, frame.y_max);
    for t in yt {
        let py = frame.py(t);
        s.push_str(&format!(
            "<line x1=\"{1}\" y1=\"{0}\" x2=\"{2}\" y2=\"{0}\" stroke=\"#bbbbbb\" \
             stroke-width=\"0.5\"/>\n",
            c(py),
            c(ML),
            c(W - MR)
        ));
        s.push_str(&format!(
            "<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"12\" \
             text-anchor=\"end\" fill=\"#444444\">{t:.*}</text>\n",
            c(ML - 8.0),
            c(py + 4.0),
            yd
        ));
    }

    s.push_str(body);

    s.push_str(&format!(
        "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"none\" \
         stroke=\"#444444\" stroke-width=\"1\"/>\n",
        c(ML),
        c(MT),
        c(W - ML - MR),
        c(H - MT - MB)
    ));
    s.push_str(&format!(
        "<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"13\" \
         text-anchor=\"middle\" fill=\"#222222\">{x_label}</text>\n",
        c((ML + W - MR) / 2.0),
        c(H - 12.0)
    ));
    s.push_str(&format!(
        "<text x=\"18\" y=\"{}\" font-family=\"sans-serif\" font-size=\"13\" \
         text-anchor=\"middle\" fill=\"#222222\" transform=\"rotate(-90 18 {})\">{y_label}\
         </text>\n",
        c((MT + H - MB) / 2.0),
        c((MT + H - MB) / 2.0)
    ));
    s.push_str("</svg>\n");
    s
}

/// Sampled curve as one or more polylines, clipped to the frame's y-range
/// (segments are split at the boundary with linear interpolation).
pub fn curve(frame: &Frame, pts: &[(f64, f64)], color: &str, width: f64) -> String {
    let mut runs: Vec<Vec<(f64, f64)>> = Vec::new();
    let mut cur: Vec<(f64, f64)> = Vec::new();
    let clip_y = |y: f64| y.clamp(frame.y_min, frame.y_max);
    for w in pts.windows(2) {
        let (x0, y0) = w[0];
        let (x1, y1) = w[1];
        let in0 = frame.contains_y(y0);
        let in1 = frame.contains_y(y1);
        match (in0, in1) {
            (true, true) => {
                if cur.is_empty() {
                    cur.push((x0, y0));
                }
                cur.push((x1, y1));
            }
            (true, false) => {
                if cur.is_empty() {
                    cur.push((x0, y0));
                }
                let yb = clip_y(y1);
                let t = (yb - y0) / (y1 - y0);
                cur.push((x0 + t * (x1 - x0), yb));
                runs.push(std::mem::take(&mut cur));
            }
            (false, true) => {
                let yb = clip_y(y0);
                let t = (yb - y0) / (y1 - y0);
                cur.push((x0 + t * (x1 - x0), yb));
                cur.push((x1, y1));
            }
            (false, false) => {}
        }
    }
    if !cur.is_empty() {
        runs.push(cur);
    }
    let mut s = String::new();
    for run in runs {
        let coords: Vec<String> = run
            .iter()
            .map(|&(x, y)| format!("{},{}", c(frame.px(x)), c(frame.py(y))))
            .collect();
        s.push_str(&format!(
            "<polyline points=\"{}\" fill=\"none\" stroke=\"{color}\" \
             stroke-width=\"{width}\" stroke-linejoin=\"round\"/>\n",
            coords.join(" ")
        ));
    }
    s
}

/// Horizontal segments (x0, x1, y), e.g. energy levels over their
/// classically allowed intervals.
pub fn segments(frame: &Frame, segs: &[(f64, f64, f64)], color: &str) -> String {
    let mut s = String::new();
    for &(x0, x1, y) in segs {
        if !frame.contains_y(y) {
            continue;
        }
        s.push_str(&format!(
            "<line x1=\"{}\" y1=\"{2}\" x2=\"{}\" y2=\"{2}\" stroke=\"{color}\" \
             stroke-width=\"1.6\"/>\n",
            c(frame.px(x0)),
            c(frame.px(x1)),
            c(frame.py(y))
        ));
    }
    s
}

/// Maximal x-intervals where the sampled curve lies at or below `e`, with
/// linearly interpolated endpoints: the classically allowed regions.
pub fn allowed_intervals(samples: &[(f64, f64)], e: f64) -> Vec<(f64, f64)> {
    let mut out: Vec<(f64, f64)> = Vec::new();
    let mut start: Option<f64> = None;
    let cross = |a: (f64, f64), b: (f64, f64)| a.0 + (e - a.1) / (b.1 - a.1) * (b.0 - a.0);
    for (i, &(x, v)) in samples.iter().enumerate() {
        let inside = v <= e;
        match (start, inside) {
            (None, true) => {
                start = Some(if i == 0 { x } else { cross(samples[i - 1], (x, v)) });
            }
            (Some(s), false) => {
                out.push((s, cross(samples[i - 1], (x, v))));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s, samples.last().unwrap().0));
    }
    out
}
