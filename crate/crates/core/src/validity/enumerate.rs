//! Exhaustive enumeration of small models up to isomorphism.
//!
//! Agents are named `a`, `b`, ... and propositions `p`, `q`, .... A candidate
//! fixes, for every agent, a sorted multiset of vertex valuations (vertex ids
//! `a0`, `a1`, ...) and then an antichain of chromatic faces covering every
//! vertex as the facet set. Candidates are canonicalized by minimizing the
//! facet list over all valuation-preserving permutations inside each agent's
//! vertices; only the first candidate of each class is kept.

use std::collections::HashSet;

use serde::Serialize;

use crate::complex::{build_model, AgentId, SimplicialModel, Vertex};
use crate::error::{Error, Result};

pub const DEFAULT_CEILING: u128 = 5_000_000;

const PROP_NAMES: [&str; 6] = ["p", "q", "r", "s", "t", "u"];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct EnumerationBounds {
    pub num_agents: usize,
    pub props_per_agent: usize,
    pub max_vertices_per_agent: usize,
    pub max_facets: usize,
}

impl EnumerationBounds {
    pub fn new(
        num_agents: usize,
        props_per_agent: usize,
        max_vertices_per_agent: usize,
        max_facets: usize,
    ) -> Self {
        EnumerationBounds {
            num_agents,
            props_per_agent,
            max_vertices_per_agent,
            max_facets,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidBounds(m.to_string()));
        if !(1..=26).contains(&self.num_agents) {
            return bad("number of agents must be between 1 and 26");
        }
        if self.props_per_agent > PROP_NAMES.len() {
            return bad("at most 6 propositions per agent");
        }
        if self.max_vertices_per_agent == 0 {
            return bad("at least one vertex per agent");
        }
        if self.max_facets == 0 {
            return bad("at least one facet");
        }
        Ok(())
    }

    pub fn agents(&self) -> Vec<AgentId> {
        (0..self.num_agents)
            .map(|i| AgentId::new(((b'a' + i as u8) as char).to_string()))
            .collect()
    }

    pub fn props(&self) -> Vec<&'static str> {
        PROP_NAMES[..self.props_per_agent].to_vec()
    }
}

impl std::fmt::Display for EnumerationBounds {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{} agents, {} props/agent, <= {} vertices/agent, <= {} facets",
            self.num_agents, self.props_per_agent, self.max_vertices_per_agent, self.max_facets
        )
    }
}

/// Non-decreasing sequences of length `0..=max_len` over `0..alphabet`.
fn multisets(alphabet: usize, max_len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    let mut frontier = vec![vec![]];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for s in &frontier {
            let lo = s.last().copied().unwrap_or(0);
            for x in lo..alphabet {
                let mut t: Vec<usize> = s.clone();
                t.push(x);
                next.push(t);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let mut r: u128 = 1;
    for i in 0..k {
        r = r.saturating_mul(n - i) / (i + 1);
    }
    r
}

/// One per-agent choice of vertex valuations for every agent.
fn configs(b: &EnumerationBounds) -> Vec<Vec<Vec<usize>>> {
    let per_agent = multisets(1 << b.props_per_agent, b.max_vertices_per_agent);
    let mut out: Vec<Vec<Vec<usize>>> = vec![vec![]];
    for _ in 0..b.num_agents {
        let mut next = Vec::with_capacity(out.len() * per_agent.len());
        for prefix in &out {
            for m in &per_agent {
                let mut c = prefix.clone();
                c.push(m.clone());
                next.push(c);
            }
        }
        out = next;
    }
    out
}

/// Number of candidate (valuation, facet set) pairs the enumeration visits.
pub fn estimate(b: &EnumerationBounds) -> Result<u128> {
    b.validate()?;
    let per_agent = multisets(1 << b.props_per_agent, b.max_vertices_per_agent);
    // histogram of vertex counts per agent choice
    let mut by_len = vec![0u128; b.max_vertices_per_agent + 1];
    for m in &per_agent {
        by_len[m.len()] += 1;
    }
    // dist[n] = number of configs whose chromatic face count is n
    let mut dist: std::collections::BTreeMap<u128, u128> = [(1u128, 1u128)].into();
    for _ in 0..b.num_agents {
        let mut next = std::collections::BTreeMap::new();
        for (&prod, &count) in &dist {
            for (k, &c) in by_len.iter().enumerate() {
                *next.entry(prod.saturating_mul(k as u128 + 1)).or_insert(0u128) +=
                    count.saturating_mul(c);
            }
        }
        dist = next;
    }
    let mut total: u128 = 0;
    for (prod, count) in dist {
        let faces = prod - 1;
        let mut per: u128 = 0;
        for k in 1..=b.max_facets as u128 {
            per = per.saturating_add(binomial(faces, k));
        }
        total = total.saturating_add(per.saturating_mul(count));
    }
    Ok(total)
}

pub fn enumerate_models(b: &EnumerationBounds) -> Result<Vec<SimplicialModel>> {
    enumerate_models_with_ceiling(b, DEFAULT_CEILING)
}

pub fn enumerate_models_with_ceiling(
    b: &EnumerationBounds,
    ceiling: u128,
) -> Result<Vec<SimplicialModel>> {
    let estimate = estimate(b)?;
    if estimate > ceiling {
        return Err(Error::BoundsTooLarge { estimate, ceiling });
    }
    let agents = b.agents();
    let props = b.props();
    let mut out = Vec::new();
    for config in configs(b) {
        // vertex list: (agent, valuation)
        let mut verts: Vec<(usize, usize)> = Vec::new();
        for (a, vals) in config.iter().enumerate() {
            verts.extend(vals.iter().map(|&v| (a, v)));
        }
        if verts.is_empty() {
            continue;
        }
        let faces = chromatic_faces(&config);
        let perms = symmetries(&config);
        let n = verts.len();
        let mut seen: HashSet<Vec<Vec<usize>>> = HashSet::new();
        let mut emit = |choice: &[usize]| {
            let facets: Vec<&Vec<usize>> = choice.iter().map(|&i| &faces[i]).collect();
            let key = perms
                .iter()
                .map(|p| {
                    let mut k: Vec<Vec<usize>> = facets
                        .iter()
                        .map(|f| {
                            let mut g: Vec<usize> = f.iter().map(|&v| p[v]).collect();
                            g.sort_unstable();
                            g
                        })
                        .collect();
                    k.sort();
                    k
                })
                .min()
                .expect("identity permutation");
            if seen.insert(key) {
                out.push(materialize(&agents, &props, &config, &facets));
            }
        };
        for_each_antichain(&faces, n, b.max_facets, &mut emit);
    }
    Ok(out)
}

fn vertex_id(agents: &[AgentId], a: usize, i: usize) -> String {
    format!("{}{}", agents[a], i)
}

fn materialize(
    agents: &[AgentId],
    props: &[&str],
    config: &[Vec<usize>],
    facets: &[&Vec<usize>],
) -> SimplicialModel {
    let mut ids = Vec::new();
    let mut vertices = Vec::new();
    for (a, vals) in config.iter().enumerate() {
        for (i, &val) in vals.iter().enumerate() {
            let id = vertex_id(agents, a, i);
            let labels: Vec<&str> = props
                .iter()
                .enumerate()
                .filter(|(j, _)| val & (1 << j) != 0)
                .map(|(_, p)| *p)
                .collect();
            vertices.push(Vertex::with_props(id.clone(), agents[a].clone(), labels));
            ids.push(id);
        }
    }
    let facets: Vec<Vec<&str>> = facets
        .iter()
        .map(|f| f.iter().map(|&v| ids[v].as_str()).collect())
        .collect();
    build_model(agents.to_vec(), vertices, facets).expect("enumerated models are valid")
}

/// All nonempty sets picking at most one vertex per agent, as sorted global
/// vertex indices, ordered by size then lexicographically.
fn chromatic_faces(config: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut faces: Vec<Vec<usize>> = vec![vec![]];
    let mut offset = 0;
    for vals in config {
        let mut next = Vec::with_capacity(faces.len() * (vals.len() + 1));
        for f in &faces {
            next.push(f.clone());
            for i in 0..vals.len() {
                let mut g = f.clone();
                g.push(offset + i);
                next.push(g);
            }
        }
        faces = next;
        offset += vals.len();
    }
    faces.retain(|f| !f.is_empty());
    faces.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    faces
}

/// Vertex permutations that stay inside an agent and preserve valuations.
fn symmetries(config: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let n: usize = config.iter().map(Vec::len).sum();
    let mut perms: Vec<Vec<usize>> = vec![(0..n).collect()];
    let mut offset = 0;
    for vals in config {
        let mut start = 0;
        while start < vals.len() {
            let mut end = start;
            while end < vals.len() && vals[end] == vals[start] {
                end += 1;
            }
            let block: Vec<usize> = (offset + start..offset + end).collect();
            if block.len() > 1 {
                let mut next = Vec::new();
                for p in &perms {
                    for arrangement in permutations(&block) {
                        let mut q = p.clone();
                        for (from, to) in block.iter().zip(&arrangement) {
                            q[*from] = *to;
                        }
                        next.push(q);
                    }
                }
                perms = next;
            }
            start = end;
        }
        offset += vals.len();
    }
    perms
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let x = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

fn is_subset(a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|x| b.binary_search(x).is_ok())
}

/// Calls `emit` with every antichain of at most `max` faces (as increasing
/// index lists) that covers all `n` vertices.
fn for_each_antichain(faces: &[Vec<usize>], n: usize, max: usize, emit: &mut dyn FnMut(&[usize])) {
    fn go(
        faces: &[Vec<usize>],
        n: usize,
        max: usize,
        start: usize,
        chosen: &mut Vec<usize>,
        emit: &mut dyn FnMut(&[usize]),
    ) {
        if !chosen.is_empty() {
            let covered = chosen.iter().map(|&i| faces[i].len()).sum::<usize>() >= n
                && (0..n).all(|v| chosen.iter().any(|&i| faces[i].contains(&v)));
            if covered {
                emit(chosen);
            }
        }
        if chosen.len() == max {
            return;
        }
        for j in start..faces.len() {
            let f = &faces[j];
            if chosen
                .iter()
                .any(|&i| is_subset(&faces[i], f) || is_subset(f, &faces[i]))
            {
                continue;
            }
            chosen.push(j);
            go(faces, n, max, j + 1, chosen, emit);
            chosen.pop();
        }
    }
    go(faces, n, max, 0, &mut Vec::new(), emit);
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multiset_counts() {
        // lengths 0..=2 over 2 symbols: 1 + 2 + 3
        assert_eq!(multisets(2, 2).len(), 6);
        assert_eq!(multisets(1, 3).len(), 4);
    }

    #[test]
    fn tiny_bounds() {
        assert_eq!(enumerate_models(&EnumerationBounds::new(1, 0, 1, 1)).unwrap().len(), 1);
        assert_eq!(enumerate_models(&EnumerationBounds::new(1, 1, 1, 1)).unwrap().len(), 2);
    }

    #[test]
    fn ceiling_is_enforced() {
        let b = EnumerationBounds::new(3, 1, 2, 2);
        assert!(matches!(
            enumerate_models_with_ceiling(&b, 10),
            Err(Error::BoundsTooLarge { .. })
        ));
    }

    #[test]
    fn invalid_bounds() {
        assert!(matches!(
            enumerate_models(&EnumerationBounds::new(0, 1, 1, 1)),
            Err(Error::InvalidBounds(_))
        ));
        assert!(matches!(
            enumerate_models(&EnumerationBounds::new(1, 1, 0, 1)),
            Err(Error::InvalidBounds(_))
        ));
    }

    #[test]
    fn estimate_counts_candidates() {
        // one agent, one vertex: one face, one facet choice, two valuations
        assert_eq!(estimate(&EnumerationBounds::new(1, 1, 1, 1)).unwrap(), 2);
    }
}
