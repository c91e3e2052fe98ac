//! Browser bindings for a few interactive operations. Every export takes and returns
//! JSON text; failures come back as `{"error": code, "message": ...}`.

use hyperspace::graph::ElementKind;
use hyperspace::homotopy::{path_to_canonical, vietoris_path, HyperPath};
use hyperspace::metric::hausdorff;
use hyperspace::rational::{fmt_q, parse_q, to_f64};
use hyperspace::subsets::direction_set;
use hyperspace::wedge::{model_stats, parse_wedge};
use hyperspace::{fixtures, parse_graph, parse_set, ClosedSubset, RayGraph, Q};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

fn fail(e: hyperspace::Error) -> Value {
    json!({"error": e.code(), "message": e.to_string()})
}

fn graph_from(text: &str) -> hyperspace::Result<RayGraph> {
    match text.trim().strip_prefix('@') {
        Some(name) => fixtures::by_name(name).ok_or_else(|| hyperspace::Error::UnknownKind(name.to_string())),
        None => parse_graph(text),
    }
}

/// Element strips for drawing: one entry per element, intervals as floats, tails to `null`.
fn layout(g: &RayGraph, set: &ClosedSubset) -> Value {
    let elements: Vec<Value> = g
        .element_ids()
        .map(|e| {
            let el = g.element(e);
            let pieces: Vec<Value> = set
                .intervals(e)
                .iter()
                .map(|iv| json!([to_f64(&iv.lo), iv.hi.as_ref().map(to_f64)]))
                .collect();
            let end = match el.kind {
                ElementKind::Edge { to, .. } => Some(g.vertex_name(to)),
                ElementKind::Ray { .. } => None,
            };
            json!({
                "id": el.id,
                "ray": el.is_ray(),
                "from": g.vertex_name(el.start()),
                "to": end,
                "length": el.length().as_ref().map(to_f64),
                "pieces": pieces,
            })
        })
        .collect();
    let vertices: Vec<&str> = set.vertices().iter().map(|v| g.vertex_name(*v)).collect();
    json!({"literal": set.format(g), "elements": elements, "vertices": vertices})
}

pub fn distance_json(graph: &str, a: &str, b: &str) -> Value {
    let run = || -> hyperspace::Result<Value> {
        let g = graph_from(graph)?;
        let (a, b) = (parse_set(a, &g)?, parse_set(b, &g)?);
        Ok(json!({
            "distance": hausdorff(&g, &a, &b).to_string(),
            "directions_a": direction_set(&g, &a).to_string(),
            "directions_b": direction_set(&g, &b).to_string(),
            "a": layout(&g, &a),
            "b": layout(&g, &b),
        }))
    };
    run().unwrap_or_else(fail)
}

pub fn path_frame_json(graph: &str, a: &str, n: usize, t: &str, to_whole: bool) -> Value {
    let run = || -> hyperspace::Result<Value> {
        let g = graph_from(graph)?;
        let a = parse_set(a, &g)?;
        let t: Q = parse_q(t)?;
        let path: HyperPath = if to_whole { vietoris_path(&g, &a, n)? } else { path_to_canonical(&g, &a, n)? };
        let stage = (0..path.stage_count())
            .find(|&i| {
                let (lo, hi) = path.stage_range(i);
                lo <= t && (t < hi || i + 1 == path.stage_count())
            })
            .expect("t lies in some stage");
        let stages: Vec<&str> = path.legs().iter().map(|l| l.stage.kind().name()).collect();
        Ok(json!({
            "t": fmt_q(&t),
            "stage": stages[stage],
            "stages": stages,
            "set": layout(&g, &path.eval(t)?),
        }))
    };
    run().unwrap_or_else(fail)
}

pub fn wedge_json(expr: &str) -> Value {
    let run = || -> hyperspace::Result<Value> {
        let model = parse_wedge(expr)?.model()?;
        let stats = model_stats(&model);
        Ok(json!({
            "report": model.report(),
            "components": stats.components,
            "dims": stats.dims,
        }))
    };
    run().unwrap_or_else(fail)
}

#[wasm_bindgen]
pub fn distance(graph: &str, a: &str, b: &str) -> String {
    distance_json(graph, a, b).to_string()
}

/// The path from `a` (to its canonical element, or to the whole space) evaluated at `t`.
#[wasm_bindgen]
pub fn path_frame(graph: &str, a: &str, n: usize, t: &str, to_whole: bool) -> String {
    path_frame_json(graph, a, n, t, to_whole).to_string()
}

#[wasm_bindgen]
pub fn wedge(expr: &str) -> String {
    wedge_json(expr).to_string()
}
