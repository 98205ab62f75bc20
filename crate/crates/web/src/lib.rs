//! WebAssembly bindings for the browser demo in `www/`. Each export has a
//! plain Rust counterpart returning `Result<String, String>` so the logic
//! runs and is tested natively.

use primspec::report::{order_dot, order_edges, Report};
use primspec::topology::closure;
use primspec::{parse_graph, PrimSpace, PrimSubset};
use wasm_bindgen::prelude::*;

fn space_of(graph: &str) -> Result<PrimSpace, String> {
    let g = parse_graph(graph).map_err(|e| e.to_string())?;
    PrimSpace::new(&g).map_err(|e| e.to_string())
}

/// Full report, with the specialization order, as JSON.
pub fn analyze_graph(graph: &str) -> Result<String, String> {
    let space = space_of(graph)?;
    let report = Report::build(&space, false).and_then(|r| r.with_order(&space, false)).map_err(|e| e.to_string())?;
    serde_json::to_string(&report).map_err(|e| e.to_string())
}

/// Closure of a subset given in JSON or inline form.
pub fn closure_of(graph: &str, set: &str) -> Result<String, String> {
    let space = space_of(graph)?;
    let set = PrimSubset::parse(&space, set).map_err(|e| e.to_string())?;
    let closed = closure(&space, &set).map_err(|e| e.to_string())?;
    serde_json::to_string(&closed.to_json(&space, false)).map_err(|e| e.to_string())
}

/// Specialization order as `{"edges": [...], "dot": "..."}`.
pub fn order_of(graph: &str) -> Result<String, String> {
    let space = space_of(graph)?;
    let edges = order_edges(&space, false).map_err(|e| e.to_string())?;
    let dot = order_dot(&space, false).map_err(|e| e.to_string())?;
    Ok(serde_json::json!({ "edges": edges, "dot": dot }).to_string())
}

#[wasm_bindgen]
pub fn analyze(graph: &str) -> Result<String, JsError> {
    analyze_graph(graph).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = closure)]
pub fn closure_js(graph: &str, set: &str) -> Result<String, JsError> {
    closure_of(graph, set).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn order(graph: &str) -> Result<String, JsError> {
    order_of(graph).map_err(|e| JsError::new(&e))
}
