//! CSV rows, PGM heatmaps and their sidecar files. All writers produce
//! `String`s so that byte-level determinism is easy to test.

use std::fmt::Write as _;

use ptq_core::experiment::{BackendKind, ExperimentPoint, Grid};
use ptq_core::pt_model::Observable;

use crate::config::{observable_name, RunConfig};

pub const CSV_HEADER: &str = "r,t,backend,p0,p1,p2,p0_raw,p0_postselected,kept,shots,seed";

/// `x` to 12 significant digits, plain decimal for moderate magnitudes and
/// scientific otherwise, trailing zeros trimmed.
pub fn fmt_sig(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{x:.11e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..15).contains(&exp) {
        let decimals = (11 - exp).max(0) as usize;
        trim_zeros(format!("{x:.decimals$}"))
    } else {
        format!("{}e{exp}", trim_zeros(mantissa.to_string()))
    }
}

fn trim_zeros(s: String) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

pub fn csv_header(kind: BackendKind) -> String {
    if kind == BackendKind::Ion {
        format!("{CSV_HEADER},ion")
    } else {
        CSV_HEADER.to_string()
    }
}

/// Header plus one LF-terminated row per point; a missing post-selected
/// value is an empty field.
pub fn write_csv(points: &[ExperimentPoint], kind: BackendKind, seed: u64) -> String {
    let mut out = String::with_capacity(points.len() * 120);
    out.push_str(&csv_header(kind));
    out.push('\n');
    for p in points {
        let post = p.p0_postselected.map(fmt_sig).unwrap_or_default();
        let _ = write!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{}",
            fmt_sig(p.r),
            fmt_sig(p.t),
            kind,
            fmt_sig(p.p_exact[0]),
            fmt_sig(p.p_exact[1]),
            fmt_sig(p.p_exact[2]),
            fmt_sig(p.p0_raw),
            post,
            p.postselect_kept,
            p.shots,
            seed
        );
        if kind == BackendKind::Ion {
            let _ = write!(out, ",{}", p.ion.map(|i| i.to_string()).unwrap_or_default());
        }
        out.push('\n');
    }
    out
}

/// Value a heatmap pixel shows. The theory backend plots the exact
/// distribution; hardware backends plot the sampled estimate.
pub fn heatmap_value(p: &ExperimentPoint, kind: BackendKind, observable: Observable) -> Option<f64> {
    match (kind, observable) {
        (BackendKind::Theory, Observable::ReturnProbability) => Some(p.p_exact[0]),
        (BackendKind::Theory, Observable::Postselected) => {
            let denom = p.p_exact[0] + p.p_exact[1];
            (denom > 0.0).then(|| p.p_exact[0] / denom)
        }
        (_, Observable::ReturnProbability) => Some(p.p0_raw),
        (_, Observable::Postselected) => p.p0_postselected,
    }
}

/// 8-bit grayscale image, `width = t_steps`, `height = r_steps`, row 0 at
/// `r_max`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Heatmap {
    pub width: usize,
    pub height: usize,
    pub pixels: Vec<u8>,
    /// `(row, col)` of pixels with no value, rendered as 0.
    pub missing: Vec<(usize, usize)>,
}

pub fn to_pixel(v: f64) -> u8 {
    (255.0 * v.clamp(0.0, 1.0)).round() as u8
}

impl Heatmap {
    /// `points` must be in sweep (r-major) order over `grid`.
    pub fn from_points(points: &[ExperimentPoint], grid: &Grid, kind: BackendKind, observable: Observable) -> Self {
        let (width, height) = (grid.t_steps, grid.r_steps);
        let mut pixels = vec![0u8; width * height];
        let mut missing = Vec::new();
        for (idx, p) in points.iter().enumerate() {
            let (i, j) = (idx / width, idx % width);
            let row = height - 1 - i;
            match heatmap_value(p, kind, observable) {
                Some(v) => pixels[row * width + j] = to_pixel(v),
                None => missing.push((row, j)),
            }
        }
        missing.sort_unstable();
        Heatmap { width, height, pixels, missing }
    }

    pub fn get(&self, row: usize, col: usize) -> u8 {
        self.pixels[row * self.width + col]
    }

    /// ASCII PGM (`P2`, maxval 255), one image row per line.
    pub fn to_pgm(&self) -> String {
        let mut out = format!("P2\n{} {}\n255\n", self.width, self.height);
        for row in self.pixels.chunks(self.width.max(1)) {
            let line: Vec<String> = row.iter().map(u8::to_string).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }

    /// Parses the output of [`to_pgm`](Self::to_pgm).
    pub fn parse_pgm(text: &str) -> Option<Self> {
        let mut tokens = text.split_whitespace();
        if tokens.next()? != "P2" {
            return None;
        }
        let width: usize = tokens.next()?.parse().ok()?;
        let height: usize = tokens.next()?.parse().ok()?;
        if tokens.next()? != "255" {
            return None;
        }
        let pixels: Vec<u8> = tokens.map(|t| t.parse().ok()).collect::<Option<_>>()?;
        (pixels.len() == width * height).then_some(Heatmap { width, height, pixels, missing: Vec::new() })
    }

    /// Sidecar listing missing pixels as `row,col,r,t`.
    pub fn mask_csv(&self, grid: &Grid) -> String {
        let mut out = String::from("row,col,r,t\n");
        for &(row, col) in &self.missing {
            let i = self.height - 1 - row;
            let _ = writeln!(out, "{row},{col},{},{}", fmt_sig(grid.r_at(i)), fmt_sig(grid.t_at(col)));
        }
        out
    }
}

/// `key = value` metadata describing how the numbers were produced.
pub fn metadata(cfg: &RunConfig) -> String {
    let b = &cfg.backend;
    let g = &cfg.grid;
    let mut out = String::new();
    let _ = writeln!(out, "generator = ptqsim {}", env!("CARGO_PKG_VERSION"));
    let _ = writeln!(out, "backend = {}", b.kind);
    let _ = writeln!(out, "shots = {}", b.shots);
    let _ = writeln!(out, "seed = {}", b.seed);
    let _ = writeln!(out, "observable = {}", observable_name(cfg.observable));
    let _ = writeln!(out, "r = {}..{} x {}", fmt_sig(g.r_min), fmt_sig(g.r_max), g.r_steps);
    let _ = writeln!(out, "t = {}..{} x {}", fmt_sig(g.t_min), fmt_sig(g.t_max), g.t_steps);
    let _ = writeln!(out, "confusion = {}", cfg.confusion_source());
    if b.kind == BackendKind::Ion {
        let eps: Vec<String> = b.epsilon.iter().map(|&e| fmt_sig(e)).collect();
        let label = if cfg.epsilon_is_default { " (synthetic default)" } else { "" };
        let _ = writeln!(out, "ions = {}", b.ion_count);
        let _ = writeln!(out, "epsilon = {}{label}", eps.join(", "));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn significant_digits() {
        assert_eq!(fmt_sig(0.0), "0");
        assert_eq!(fmt_sig(1.0), "1");
        assert_eq!(fmt_sig(1.2), "1.2");
        assert_eq!(fmt_sig(1.0 / 3.0), "0.333333333333");
        assert_eq!(fmt_sig(2.0 / 3.0), "0.666666666667");
        assert_eq!(fmt_sig(123.456), "123.456");
        assert_eq!(fmt_sig(0.99999999999999), "1");
        assert_eq!(fmt_sig(1e-9), "1e-9");
        assert_eq!(fmt_sig(-2.5e-7), "-2.5e-7");
        assert_eq!(fmt_sig(std::f64::consts::PI), "3.14159265359");
    }

    #[test]
    fn pixel_scaling() {
        assert_eq!(to_pixel(1.0), 255);
        assert_eq!(to_pixel(0.0), 0);
        assert_eq!(to_pixel(1.5), 255);
        assert_eq!(to_pixel(-0.1), 0);
        assert_eq!(to_pixel(0.5), 128);
    }

    #[test]
    fn pgm_roundtrip() {
        let h = Heatmap { width: 3, height: 2, pixels: vec![0, 1, 2, 253, 254, 255], missing: vec![] };
        let text = h.to_pgm();
        assert_eq!(text, "P2\n3 2\n255\n0 1 2\n253 254 255\n");
        assert_eq!(Heatmap::parse_pgm(&text).unwrap(), h);
    }
}
