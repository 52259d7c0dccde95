//! Graphviz export.
//!
//! One node per vertex, one edge per 1-face, and a comment per facet of
//! dimension two or more (DOT has no way to draw filled simplices).

use std::fmt::Write;

use crate::complex::SimplicialModel;

const PALETTE: [&str; 8] = [
    "#e06666", "#6fa8dc", "#93c47d", "#ffd966", "#8e7cc3", "#f6b26b", "#76a5af", "#c27ba0",
];

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('"', "\\\""))
}

pub fn to_dot(m: &SimplicialModel, name: &str) -> String {
    let mut out = String::new();
    writeln!(out, "graph {} {{", quote(name)).unwrap();
    writeln!(out, "  node [shape=circle, style=filled];").unwrap();
    for f in m.facets().iter().filter(|f| f.len() >= 3) {
        writeln!(out, "  // facet {}", m.face_ids(f).join(" ")).unwrap();
    }
    for (i, v) in m.vertices().iter().enumerate() {
        let mut label = v.id().to_string();
        for p in v.labels() {
            label.push_str("\\n");
            label.push_str(&p.to_string());
        }
        writeln!(
            out,
            "  {} [label={}, fillcolor={}, xlabel={}];",
            quote(v.id()),
            quote(&label),
            quote(PALETTE[m.color_of(i) % PALETTE.len()]),
            quote(v.color().as_str())
        )
        .unwrap();
    }
    for f in m.faces().iter().filter(|f| f.len() == 2) {
        let ids = m.face_ids(f);
        writeln!(out, "  {} -- {};", quote(&ids[0]), quote(&ids[1])).unwrap();
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{build_model, Vertex};

    #[test]
    fn triangle_counts() {
        let m = build_model(
            vec!["a".into(), "b".into(), "c".into()],
            vec![
                Vertex::with_props("x", "a", ["p"]),
                Vertex::with_props("y", "b", Vec::<String>::new()),
                Vertex::with_props("z", "c", Vec::<String>::new()),
            ],
            vec![vec!["x", "y", "z"]],
        )
        .unwrap();
        let dot = to_dot(&m, "t");
        assert_eq!(dot.matches(" -- ").count(), 3);
        assert_eq!(dot.matches("// facet").count(), 1);
        assert_eq!(dot.matches("xlabel=").count(), 3);
        assert!(dot.contains("x\\np@a"));
        assert_eq!(dot, to_dot(&m, "t"));
    }
}
