//! Browser bindings for the static demo page in `www/`.
//!
//! Each export is a thin wrapper over a plain function with a `String`
//! error so the logic can be tested without a JS runtime.

use std::fmt::Write as _;

use ptq_core::block_encoding::qutrit_circuit;
use ptq_core::experiment::{sweep, BackendConfig, BackendKind, Grid};
use ptq_core::pt_model::{self, PTParams};
use ptq_core::transpiler::{equivalent, parse_circuit, transpile_ion, transpile_transmon, write_circuit, Circuit};
use wasm_bindgen::prelude::*;

/// Largest grid the page may request in one call.
pub const MAX_POINTS: usize = 40_000;

/// Heatmap values in r-major order (row `i` is `r_i`, ascending). Points
/// where post-selection kept no shots are `NaN`.
pub fn heatmap_values(
    backend: &str,
    observable: &str,
    r_steps: usize,
    t_steps: usize,
    r_max: f64,
    t_max: f64,
    seed: u64,
) -> Result<Vec<f64>, String> {
    let kind: BackendKind = backend.parse().map_err(|e: ptq_core::Error| e.to_string())?;
    let postselect = match observable {
        "return_prob" => false,
        "postselected" => true,
        other => return Err(format!("unknown observable `{other}`")),
    };
    let grid = Grid { r_min: 0.0, r_max, r_steps, t_min: 0.0, t_max, t_steps };
    grid.validate().map_err(|e| e.to_string())?;
    if grid.len() > MAX_POINTS {
        return Err(format!("grid has {} points, the limit is {MAX_POINTS}", grid.len()));
    }
    let backend = BackendConfig { seed, ..BackendConfig::for_kind(kind) };
    let points = sweep(&grid, &backend).map_err(|e| e.to_string())?;
    Ok(points
        .iter()
        .map(|p| match (kind, postselect) {
            (BackendKind::Theory, false) => p.p_exact[0],
            (BackendKind::Theory, true) => p.p_exact[0] / (p.p_exact[0] + p.p_exact[1]),
            (_, false) => p.p0_raw,
            (_, true) => p.p0_postselected.unwrap_or(f64::NAN),
        })
        .collect())
}

fn list(out: &mut String, title: &str, c: &Circuit) {
    let s = c.stats();
    let _ = writeln!(out, "{title} (physical={} virtual={})", s.physical_count, s.virtual_count);
    for line in write_circuit(c).lines() {
        let _ = writeln!(out, "  {line}");
    }
}

/// Plain-text summary of one `(r, t)` point: closed-form quantities, the
/// three-gate circuit and both hardware compilations.
pub fn point_report(r: f64, t: f64) -> Result<String, String> {
    let p = PTParams::new(r, t).map_err(|e| e.to_string())?;
    let sv = pt_model::singular_values(&p);
    let a = pt_model::angles(&p);
    let (first, last) = a.outer();
    let c = qutrit_circuit(&p);
    let mut out = String::new();
    let _ = writeln!(out, "r = {r}, t = {t}");
    let _ = writeln!(out, "sigma+ = {:.9}  sigma- = {:.9}", sv.sigma_plus, sv.sigma_minus);
    let _ = writeln!(out, "phi = {:.9}  theta = {:.9}  outer = ({first:.9}, {last:.9})", a.phi, a.theta);
    let _ = writeln!(out, "return probability = {:.9}", pt_model::return_probability(&p));
    let _ = writeln!(out, "post-selected population = {:.9}", pt_model::postselected_population(&p));
    out.push('\n');
    list(&mut out, "logical", &c);
    list(&mut out, "ion", &transpile_ion(&c).map_err(|e| e.to_string())?);
    list(&mut out, "transmon", &transpile_transmon(&c).map_err(|e| e.to_string())?);
    Ok(out)
}

/// Transpiles circuit text for `"ion"` or `"transmon"`, refusing to return
/// a result that does not reproduce the input unitary.
pub fn transpile(text: &str, target: &str) -> Result<String, String> {
    let c = parse_circuit(text).map_err(|e| e.to_string())?;
    let out = match target {
        "ion" => transpile_ion(&c),
        "transmon" => transpile_transmon(&c),
        other => return Err(format!("unknown target `{other}`")),
    }
    .map_err(|e| e.to_string())?;
    if !equivalent(&c, &out, 1e-10, false) {
        return Err("transpiled circuit is not equivalent to the input".into());
    }
    let s = out.stats();
    Ok(format!("{}# physical={} virtual={}\n", write_circuit(&out), s.physical_count, s.virtual_count))
}

#[wasm_bindgen(js_name = heatmap)]
pub fn js_heatmap(
    backend: &str,
    observable: &str,
    r_steps: usize,
    t_steps: usize,
    r_max: f64,
    t_max: f64,
    seed: u32,
) -> Result<Vec<f64>, JsError> {
    heatmap_values(backend, observable, r_steps, t_steps, r_max, t_max, u64::from(seed)).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = pointReport)]
pub fn js_point_report(r: f64, t: f64) -> Result<String, JsError> {
    point_report(r, t).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = transpile)]
pub fn js_transpile(text: &str, target: &str) -> Result<String, JsError> {
    transpile(text, target).map_err(|e| JsError::new(&e))
}
