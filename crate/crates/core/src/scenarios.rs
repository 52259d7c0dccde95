//! The party-invitation scenarios used throughout the docs and tests.
//!
//! Agent `a` hosts a party, `b` and `c` are invited; `p@x` reads "x commits to
//! coming".

use std::collections::BTreeMap;

use crate::complex::{build_model, AgentId, SimplicialModel, Vertex};
use crate::dynamics::{Event, UpdateModel};
use crate::formula::parse;

fn abc() -> Vec<AgentId> {
    vec!["a".into(), "b".into(), "c".into()]
}

fn v(id: &str, agent: &str, p: bool) -> Vertex {
    Vertex::with_props(id, agent, if p { vec!["p"] } else { vec![] })
}

fn model(vertices: Vec<Vertex>, facets: &[&[&str]]) -> SimplicialModel {
    build_model(abc(), vertices, facets.iter().map(|f| f.to_vec()).collect())
        .expect("scenario models are valid")
}

/// Everyone answered: `a` and `b` come, `c` does not. Facet `{va,vb,vc}`.
pub fn joint_attendance() -> SimplicialModel {
    model(
        vec![v("va", "a", true), v("vb", "b", true), v("vc", "c", false)],
        &[&["va", "vb", "vc"]],
    )
}

/// `c` never answered: a single edge `{va,vb}` over a three-agent roster.
pub fn silent_guest() -> SimplicialModel {
    model(vec![v("va", "a", true), v("vb", "b", true)], &[&["va", "vb"]])
}

/// Only pairwise agreements: the hollow triangle.
pub fn pairwise_only() -> SimplicialModel {
    model(
        vec![v("va", "a", true), v("vb", "b", true), v("vc", "c", true)],
        &[&["va", "vb"], &["va", "vc"], &["vb", "vc"]],
    )
}

/// `b` and `c` come together or not at all; the host comes anyway.
/// `X = {v1,v2,v3}` (all come), `Y = {v1,v4,v5}` (only the host), sharing `v1`.
pub fn linked_pair() -> SimplicialModel {
    model(
        vec![
            v("v1", "a", true),
            v("v2", "b", true),
            v("v3", "c", true),
            v("v4", "b", false),
            v("v5", "c", false),
        ],
        &[&["v1", "v2", "v3"], &["v1", "v4", "v5"]],
    )
}

/// Same complex as [`linked_pair`]; here the edge `W' = {v1,v4}` of
/// `Y' = {v1,v4,v5}` stands for `b` declining when `c` is absent.
pub fn conditional_pair() -> SimplicialModel {
    linked_pair()
}

/// `a` and `c` come, `b` will let them know. `X = {v1,v2,v3}` with `p@b`,
/// `Y = {v1,v3,v4}` with `~p@b`; they share the edge `{v1,v3}` (`c`, `a`).
pub fn undecided_guest() -> SimplicialModel {
    model(
        vec![
            v("v1", "c", true),
            v("v2", "b", true),
            v("v3", "a", true),
            v("v4", "b", false),
        ],
        &[&["v1", "v2", "v3"], &["v1", "v3", "v4"]],
    )
}

/// Four configurations `X = {v1,v2,v3}`, `Z = {v1,v2,v4}`,
/// `W = {v2,v5,v6}` and `Y = {v1,v7,v8}`.
pub fn four_configurations() -> SimplicialModel {
    model(
        vec![
            v("v1", "a", true),
            v("v2", "b", true),
            v("v3", "c", false),
            v("v4", "c", true),
            v("v5", "a", false),
            v("v6", "c", false),
            v("v7", "c", false),
            v("v8", "b", false),
        ],
        &[
            &["v1", "v2", "v3"],
            &["v1", "v2", "v4"],
            &["v2", "v5", "v6"],
            &["v1", "v7", "v8"],
        ],
    )
}

/// Six triangles around an `a`-colored center `v`; the rim alternates `b`, `c`.
pub fn hexagonal_fan() -> SimplicialModel {
    let mut vertices = vec![v("v", "a", false)];
    let rim: Vec<String> = (0..6).map(|i| format!("r{i}")).collect();
    for (i, id) in rim.iter().enumerate() {
        vertices.push(v(id, if i % 2 == 0 { "b" } else { "c" }, false));
    }
    let facets: Vec<Vec<&str>> = (0..6)
        .map(|i| vec!["v", rim[i].as_str(), rim[(i + 1) % 6].as_str()])
        .collect();
    build_model(abc(), vertices, facets).expect("fan is valid")
}

fn update(events: &[(&str, &str, &str)], facets: &[&[&str]], named: &[(&str, &[&str])]) -> UpdateModel {
    let events = events
        .iter()
        .map(|(id, a, com)| Event::new(*id, *a, parse(com).expect("scenario formula")))
        .collect();
    let named: BTreeMap<String, Vec<String>> = named
        .iter()
        .map(|(n, ids)| (n.to_string(), ids.iter().map(|s| s.to_string()).collect()))
        .collect();
    UpdateModel::new(abc(), events, facets.iter().map(|f| f.to_vec()).collect(), named)
        .expect("scenario update models are valid")
}

/// `b` decides to come; `a` and `c` keep their commitments. Simplex `X'`.
pub fn simple_choice() -> UpdateModel {
    update(
        &[("alpha_a", "a", "true"), ("alpha_b", "b", "p@b"), ("alpha_c", "c", "true")],
        &[&["alpha_a", "alpha_b", "alpha_c"]],
        &[("X'", &["alpha_a", "alpha_b", "alpha_c"])],
    )
}

/// `a` and `c` decide jointly to come (`AC`); `b` separately declines (`B`).
pub fn partial_disagreement() -> UpdateModel {
    update(
        &[("beta_a", "a", "p@a"), ("beta_b", "b", "~p@b"), ("beta_c", "c", "p@c")],
        &[&["beta_a", "beta_c"], &["beta_b"]],
        &[("AC", &["beta_a", "beta_c"]), ("B", &["beta_b"])],
    )
}

/// `b` drops out of the conversation entirely. Simplex `G` over `a`, `c`.
pub fn ghosting() -> UpdateModel {
    update(
        &[("gamma_a", "a", "true"), ("gamma_c", "c", "true")],
        &[&["gamma_a", "gamma_c"]],
        &[("G", &["gamma_a", "gamma_c"])],
    )
}

/// Every scenario model by name.
pub fn models() -> Vec<(&'static str, SimplicialModel)> {
    vec![
        ("joint_attendance", joint_attendance()),
        ("silent_guest", silent_guest()),
        ("pairwise_only", pairwise_only()),
        ("linked_pair", linked_pair()),
        ("conditional_pair", conditional_pair()),
        ("undecided_guest", undecided_guest()),
        ("four_configurations", four_configurations()),
        ("hexagonal_fan", hexagonal_fan()),
    ]
}

/// Every scenario update model by name.
pub fn updates() -> Vec<(&'static str, UpdateModel)> {
    vec![
        ("simple_choice", simple_choice()),
        ("partial_disagreement", partial_disagreement()),
        ("ghosting", ghosting()),
    ]
}
