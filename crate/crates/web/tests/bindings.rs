use ddsl_web::{check, layout, presets, subcomplex, update};
use serde_json::Value;

fn preset(kind: &str, name: &str) -> String {
    let all: Value = serde_json::from_str(&presets()).unwrap();
    all[kind][name].to_string()
}

#[test]
fn presets_cover_every_scenario() {
    let all: Value = serde_json::from_str(&presets()).unwrap();
    assert_eq!(all["models"].as_object().unwrap().len(), 8);
    assert_eq!(all["updates"].as_object().unwrap().len(), 3);
}

#[test]
fn check_reports_every_face() {
    let m = preset("models", "joint_attendance");
    let rows: Vec<Value> = serde_json::from_str(&check(&m, "", "D{a,b,c}(p@a & p@b & ~p@c)").unwrap()).unwrap();
    assert_eq!(rows.len(), 7);
    let facet = rows.iter().find(|r| r["face"].as_array().unwrap().len() == 3).unwrap();
    assert_eq!(facet["result"], true);
}

#[test]
fn check_with_named_updates() {
    let m = preset("models", "undecided_guest");
    let updates = format!("{{\"U\": {}}}", preset("updates", "simple_choice"));
    let rows: Vec<Value> =
        serde_json::from_str(&check(&m, &updates, "[U.X'] D{a,b,c}(p@a & p@b & p@c)").unwrap()).unwrap();
    let x = rows.iter().find(|r| r["face"] == serde_json::json!(["v1", "v2", "v3"])).unwrap();
    assert_eq!(x["result"], true);
}

#[test]
fn errors_are_messages() {
    let m = preset("models", "joint_attendance");
    assert!(check(&m, "", "p@a &").unwrap_err().contains("syntax"));
    assert!(check("{}", "", "true").unwrap_err().starts_with("model"));
    assert!(subcomplex(&m, "shrink", "").is_err());
}

#[test]
fn update_and_subcomplexes() {
    let m = preset("models", "undecided_guest");
    let p: Value = serde_json::from_str(&update(&m, &preset("updates", "ghosting")).unwrap()).unwrap();
    assert_eq!(p["facets"].as_array().unwrap().len(), 1);
    let fan = preset("models", "hexagonal_fan");
    let link: Value = serde_json::from_str(&subcomplex(&fan, "link", "v").unwrap()).unwrap();
    assert_eq!(link["facets"].as_array().unwrap().len(), 6);
    let skel: Value = serde_json::from_str(&subcomplex(&fan, "skeleton", "0").unwrap()).unwrap();
    assert_eq!(skel["facets"].as_array().unwrap().len(), 7);
}

#[test]
fn layout_lists_edges_and_triangles() {
    let l: Value = serde_json::from_str(&layout(&preset("models", "linked_pair")).unwrap()).unwrap();
    assert_eq!(l["vertices"].as_array().unwrap().len(), 5);
    assert_eq!(l["edges"].as_array().unwrap().len(), 6);
    assert_eq!(l["triangles"].as_array().unwrap().len(), 2);
}
