//! WebAssembly bindings for the browser demo in `www/`.
//!
//! Every export returns a JSON string or throws an `Error` carrying the message.

pub mod demo;

use serde::Serialize;
use wasm_bindgen::prelude::*;

fn json<T: Serialize>(r: Result<T, String>) -> Result<String, JsError> {
    r.map_err(|e| JsError::new(&e))
        .and_then(|v| serde_json::to_string(&v).map_err(|e| JsError::new(&e.to_string())))
}

#[wasm_bindgen(js_name = bratuProfile)]
pub fn bratu_profile(
    lambda: f64,
    order: usize,
    branch: &str,
    grid: usize,
) -> Result<String, JsError> {
    json(demo::bratu_profile(lambda, order, branch, grid))
}

#[wasm_bindgen(js_name = foldDiagram)]
pub fn fold_diagram(lambda: f64, theta_max: f64, samples: usize) -> Result<String, JsError> {
    json(demo::fold_diagram(lambda, theta_max, samples))
}

#[wasm_bindgen(js_name = seriesOp)]
pub fn series_op(op: &str, coeffs: &str, m: u32) -> Result<String, JsError> {
    json(demo::series_op(op, coeffs, m))
}
