//! Browser bindings. Every export takes and returns JSON strings, so the
//! page needs no generated glue beyond the function names; errors come back
//! as plain messages.

use std::f64::consts::PI;

use ddsl::io::{self, ModelFile};
use ddsl::{product_update, CheckContext, Product, Registry, SimplicialModel};
use serde::Serialize;
use wasm_bindgen::prelude::wasm_bindgen;

type Out = Result<String, String>;

#[derive(Serialize)]
struct Verdict {
    face: Vec<String>,
    result: bool,
}

#[derive(Serialize)]
struct Point {
    id: String,
    agent: String,
    props: Vec<String>,
    x: f64,
    y: f64,
}

/// Positions plus the edges and triangles to draw.
#[derive(Serialize)]
struct Layout {
    vertices: Vec<Point>,
    edges: Vec<[usize; 2]>,
    triangles: Vec<[usize; 3]>,
}

fn model(json: &str) -> Result<SimplicialModel, String> {
    io::model_from_json(json).map_err(|e| format!("model: {e}"))
}

fn to_json<T: Serialize>(v: &T) -> Out {
    serde_json::to_string(v).map_err(|e| e.to_string())
}

/// Evaluates `formula` at every face. `updates` is a JSON object mapping
/// names to update models, referenced as `[name.simplex]`.
#[wasm_bindgen]
pub fn check(model_json: &str, updates_json: &str, formula: &str) -> Out {
    let m = model(model_json)?;
    let mut reg = Registry::new();
    if !updates_json.trim().is_empty() {
        let map: serde_json::Map<String, serde_json::Value> =
            serde_json::from_str(updates_json).map_err(|e| format!("updates: {e}"))?;
        for (name, v) in map {
            let u = io::update_from_json(&v.to_string()).map_err(|e| format!("update {name}: {e}"))?;
            reg.insert(name, u).map_err(|e| e.to_string())?;
        }
    }
    let f = ddsl::parse(formula).map_err(|e| e.to_string())?;
    let verdicts = CheckContext::with_updates(m.clone(), reg)
        .verdicts(&f)
        .map_err(|e| e.to_string())?;
    let rows: Vec<Verdict> = m
        .faces()
        .iter()
        .zip(verdicts)
        .map(|(x, result)| Verdict { face: m.face_ids(x), result })
        .collect();
    to_json(&rows)
}

/// Product update; returns the new model, or `null` when it is empty.
#[wasm_bindgen]
pub fn update(model_json: &str, update_json: &str) -> Out {
    let m = model(model_json)?;
    let u = io::update_from_json(update_json).map_err(|e| format!("update: {e}"))?;
    match product_update(&CheckContext::new(m), &u).map_err(|e| e.to_string())? {
        Product::Updated(p) => Ok(io::model_to_json(&p)),
        Product::Empty => Ok("null".into()),
    }
}

/// `op` is `skeleton` (arg: dimension), `star` or `link` (arg: comma-separated
/// vertex ids).
#[wasm_bindgen]
pub fn subcomplex(model_json: &str, op: &str, arg: &str) -> Out {
    let m = model(model_json)?;
    let face = || {
        let ids: Vec<&str> = arg.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
        m.face(&ids).map_err(|e| e.to_string())
    };
    let r = match op {
        "skeleton" => m.skeleton(arg.trim().parse().map_err(|_| format!("`{arg}` is not a dimension"))?),
        "star" => m.star(&face()?).map_err(|e| e.to_string())?,
        "link" => m.link(&face()?).map_err(|e| e.to_string())?,
        _ => return Err(format!("unknown operation `{op}`")),
    };
    Ok(io::model_to_json(&r))
}

/// Vertices on a circle, grouped by agent, with the 1- and 2-faces.
#[wasm_bindgen]
pub fn layout(model_json: &str) -> Out {
    let m = model(model_json)?;
    let file = ModelFile::from_model(&m);
    let mut order: Vec<usize> = (0..m.vertices().len()).collect();
    order.sort_by_key(|&i| (m.color_of(i), m.vertex(i).id().to_string()));
    let n = order.len().max(1) as f64;
    let mut vertices: Vec<Point> = file
        .vertices
        .into_iter()
        .map(|v| Point { id: v.id, agent: v.agent.to_string(), props: v.props, x: 0.0, y: 0.0 })
        .collect();
    for (k, &i) in order.iter().enumerate() {
        let t = 2.0 * PI * k as f64 / n - PI / 2.0;
        vertices[i].x = 0.5 + 0.4 * t.cos();
        vertices[i].y = 0.5 + 0.4 * t.sin();
    }
    let faces = m.faces();
    let edges = faces.iter().filter(|f| f.len() == 2).map(|f| [f.vertices()[0], f.vertices()[1]]).collect();
    let triangles = faces
        .iter()
        .filter(|f| f.len() == 3)
        .map(|f| [f.vertices()[0], f.vertices()[1], f.vertices()[2]])
        .collect();
    to_json(&Layout { vertices, edges, triangles })
}

/// Built-in models and update models: `{"models": {...}, "updates": {...}}`.
#[wasm_bindgen]
pub fn presets() -> String {
    let models: serde_json::Map<String, serde_json::Value> = ddsl::scenarios::models()
        .into_iter()
        .map(|(n, m)| (n.to_string(), serde_json::to_value(ModelFile::from_model(&m)).expect("serializes")))
        .collect();
    let updates: serde_json::Map<String, serde_json::Value> = ddsl::scenarios::updates()
        .into_iter()
        .map(|(n, u)| {
            let v: serde_json::Value = serde_json::from_str(&io::update_to_json(&u)).expect("valid json");
            (n.to_string(), v)
        })
        .collect();
    serde_json::json!({"models": models, "updates": updates}).to_string()
}
