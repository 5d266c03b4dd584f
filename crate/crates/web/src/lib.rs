//! wasm-bindgen entry points for the static demo page. Each returns a JSON string.

use multicox::basis::{build_basis_report, BasisRequest};
use multicox::connection::CoxeterSystem;
use multicox::group::{CoxeterType, Multiplicity};
use multicox::report::{BasisReport, InfoReport};
use serde_json::json;
use wasm_bindgen::prelude::*;

/// Largest group the page will enumerate.
const PAGE_ORDER_BOUND: usize = 2_000;

fn system(kind: &str) -> Result<CoxeterSystem, String> {
    let t: CoxeterType = kind.parse().map_err(|e: multicox::Error| e.to_string())?;
    CoxeterSystem::build(t, None, PAGE_ORDER_BOUND).map_err(|e| e.to_string())
}

pub fn info_json(kind: &str) -> Result<String, String> {
    let sys = system(kind)?;
    serde_json::to_string(&InfoReport::new(&sys)).map_err(|e| e.to_string())
}

/// `orbit_m` holds one 0/1 value per orbit.
pub fn basis_json(kind: &str, orbit_m: &[u32], k: u32) -> Result<String, String> {
    let sys = system(kind)?;
    let m = Multiplicity::per_orbit(&sys.arrangement, orbit_m).map_err(|e| e.to_string())?;
    let req = BasisRequest::automatic(&sys, m, k).map_err(|e| e.to_string())?;
    let res = build_basis_report(&sys, &req).map_err(|e| e.to_string())?;
    serde_json::to_string(&BasisReport::new(&sys, &req, &res)).map_err(|e| e.to_string())
}

/// Lower-triangular `L` with `L·Lᵀ = g`.
fn cholesky(g: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = g.len();
    let mut l = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in 0..=i {
            let s: f64 = (0..j).map(|k| l[i][k] * l[j][k]).sum();
            l[i][j] = if i == j {
                (g[i][i] - s).sqrt()
            } else {
                (g[i][j] - s) / l[j][j]
            };
        }
    }
    l
}

/// Unit direction vectors of the reflecting lines of a rank-2 group, in
/// Euclidean coordinates. Drawing only; these are floating point.
pub fn lines_json(kind: &str) -> Result<String, String> {
    let sys = system(kind)?;
    if sys.rank() != 2 {
        return Err(format!("{kind} has rank {}; only rank 2 can be drawn", sys.rank()));
    }
    let gram: Vec<Vec<f64>> = sys
        .group
        .datum()
        .gram
        .iter()
        .map(|r| r.iter().map(|s| s.to_f64()).collect())
        .collect();
    let l = cholesky(&gram);
    let lines: Vec<_> = sys
        .arrangement
        .hyperplanes()
        .iter()
        .map(|h| {
            let a: Vec<f64> = h.form.iter().map(|s| s.to_f64()).collect();
            // Lᵀa is the root in orthonormal coordinates; the line is its perpendicular.
            let u = [l[0][0] * a[0] + l[1][0] * a[1], l[1][1] * a[1]];
            let norm = u[0].hypot(u[1]);
            json!({ "orbit": h.orbit, "label": h.alpha.to_string(), "dir": [-u[1] / norm, u[0] / norm] })
        })
        .collect();
    Ok(json!({ "type": kind, "lines": lines }).to_string())
}

#[wasm_bindgen]
pub fn group_info(kind: &str) -> Result<String, JsValue> {
    info_json(kind).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn build_basis(kind: &str, orbit_m: Vec<u32>, k: u32) -> Result<String, JsValue> {
    basis_json(kind, &orbit_m, k).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn arrangement_lines(kind: &str) -> Result<String, JsValue> {
    lines_json(kind).map_err(|e| JsValue::from_str(&e))
}
