//! Shared test helpers: random models and brute-force oracles written
//! directly from the definitions, without the face table.

#![allow(dead_code)]

use std::collections::BTreeSet;

use ddsl::{build_model, AgentId, Error, Face, Formula, Node, SimplicialModel, Vertex};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Ids = BTreeSet<String>;

/// A random chromatic model over 2 or 3 agents with props `p`, `q`.
pub fn random_model(seed: u64) -> SimplicialModel {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let names = ["a", "b", "c"];
    let n = rng.gen_range(2..=3);
    let agents: Vec<AgentId> = names[..n].iter().map(|s| AgentId::from(*s)).collect();
    let pools: Vec<usize> = (0..n).map(|_| rng.gen_range(1..=3)).collect();
    let mut vertices = Vec::new();
    for (i, a) in names[..n].iter().enumerate() {
        for k in 0..pools[i] {
            let props: Vec<&str> = ["p", "q"].into_iter().filter(|_| rng.gen_bool(0.5)).collect();
            vertices.push(Vertex::with_props(format!("{a}{k}"), *a, props));
        }
    }
    let mut facets: Vec<Vec<String>> = Vec::new();
    for _ in 0..rng.gen_range(1..=4) {
        let mut f = Vec::new();
        for (i, a) in names[..n].iter().enumerate() {
            if rng.gen_bool(0.7) {
                f.push(format!("{a}{}", rng.gen_range(0..pools[i])));
            }
        }
        if f.is_empty() {
            f.push("a0".to_string());
        }
        facets.push(f);
    }
    let used: BTreeSet<&String> = facets.iter().flatten().collect();
    vertices.retain(|v| used.contains(&v.id().to_string()));
    build_model(agents, vertices, facets).expect("random model is valid")
}

pub fn ids(m: &SimplicialModel, f: &Face) -> Ids {
    m.face_ids(f).into_iter().collect()
}

pub fn facet_ids(m: &SimplicialModel) -> Vec<Ids> {
    m.facets().iter().map(|f| ids(m, f)).collect()
}

fn color(m: &SimplicialModel, id: &str) -> AgentId {
    m.vertex(m.vertex_by_id(id).unwrap()).color().clone()
}

fn powerset(s: &Ids) -> Vec<Ids> {
    let v: Vec<&String> = s.iter().collect();
    (1u32..(1 << v.len()))
        .map(|bits| {
            (0..v.len())
                .filter(|i| bits & (1 << i) != 0)
                .map(|i| v[i].clone())
                .collect()
        })
        .collect()
}

/// All faces: nonempty subsets of some facet.
pub fn faces_oracle(m: &SimplicialModel) -> BTreeSet<Ids> {
    facet_ids(m).iter().flat_map(powerset).collect()
}

pub fn faces_of(m: &SimplicialModel) -> BTreeSet<Ids> {
    m.faces().iter().map(|f| ids(m, f)).collect()
}

/// Faces of the star of `x`: faces `Y` with `x ∪ Y` a face.
pub fn star_oracle(m: &SimplicialModel, x: &Ids) -> BTreeSet<Ids> {
    let all = faces_oracle(m);
    all.iter()
        .filter(|y| all.contains(&y.union(x).cloned().collect::<Ids>()))
        .cloned()
        .collect()
}

pub fn link_oracle(m: &SimplicialModel, x: &Ids) -> BTreeSet<Ids> {
    star_oracle(m, x)
        .into_iter()
        .filter(|y| y.is_disjoint(x))
        .collect()
}

pub fn colors(m: &SimplicialModel, x: &Ids) -> BTreeSet<AgentId> {
    x.iter().map(|v| color(m, v)).collect()
}

/// Reference semantics for static formulas, by direct quantification over
/// the oracle's face set.
pub fn naive_sat(m: &SimplicialModel, x: &Ids, f: &Formula) -> bool {
    match f.node() {
        Node::Atom(p) => x.iter().any(|v| {
            let vx = m.vertex(m.vertex_by_id(v).unwrap());
            vx.color() == &p.owner && vx.labels().contains(p)
        }),
        Node::Not(g) => !naive_sat(m, x, g),
        Node::And(l, r) => naive_sat(m, x, l) && naive_sat(m, x, r),
        Node::Commit(g, body) => {
            if !g.is_subset(&colors(m, x)) {
                return false;
            }
            let xg: Ids = x.iter().filter(|v| g.contains(&color(m, v))).cloned().collect();
            faces_oracle(m)
                .iter()
                .filter(|y| xg.is_subset(y))
                .all(|y| naive_sat(m, y, body))
        }
        Node::Action(..) => panic!("naive_sat handles static formulas only"),
    }
}

/// Checks every topology property against the oracles; returns a failure
/// description instead of panicking so both drivers can report it.
pub fn topology_properties(m: &SimplicialModel) -> Result<(), String> {
    let faces = faces_of(m);
    if faces != faces_oracle(m) {
        return Err("face table differs from downward closure of facets".into());
    }
    for f in m.faces() {
        if m.color_set(f).unwrap().len() != f.len() {
            return Err(format!("face {} is not chromatic", m.format_face(f)));
        }
    }
    for k in 0..=m.dimension() + 1 {
        let skel = m.skeleton(k);
        let expect: BTreeSet<Ids> = faces.iter().filter(|x| x.len() <= k + 1).cloned().collect();
        if faces_of(&skel) != expect {
            return Err(format!("{k}-skeleton has the wrong faces"));
        }
    }
    let n = m.agents().len();
    let full = m.faces().iter().any(|f| f.len() == n);
    let all_colors = m.faces().iter().any(|f| m.color_set(f).unwrap().len() == n);
    if full != all_colors {
        return Err("size/color maximal face theorem fails".into());
    }
    for f in m.faces() {
        let x = ids(m, f);
        let star = m.star(f).unwrap();
        if faces_of(&star) != star_oracle(m, &x) {
            return Err(format!("star of {} differs from oracle", m.format_face(f)));
        }
        let want = link_oracle(m, &x);
        match m.link(f) {
            Ok(link) => {
                let got = faces_of(&link);
                if got != want {
                    return Err(format!("link of {} differs from oracle", m.format_face(f)));
                }
                let mine = m.color_set(f).unwrap();
                for y in &got {
                    if !colors(m, y).is_disjoint(&mine) {
                        return Err(format!("link of {} reuses a color", m.format_face(f)));
                    }
                }
            }
            Err(Error::EmptyResult) if want.is_empty() => {}
            Err(e) => return Err(format!("link of {}: {e}", m.format_face(f))),
        }
    }
    Ok(())
}
