//! Chromatic simplicial models.
//!
//! A model stores its facets only; every nonempty subset of a facet is a face.
//! Vertices are kept sorted by id, so a [`Face`] (a sorted list of vertex
//! indices) has a canonical form and two faces are equal iff their vertex sets are.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Colors are tracked as bit masks over the roster.
pub const MAX_AGENTS: usize = 64;

/// Owner of the reserved proposition used to spell out `true` / `false`.
pub(crate) const RESERVED_AGENT: &str = "_";

pub(crate) fn is_ident(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct AgentId(String);

impl AgentId {
    pub fn new(name: impl Into<String>) -> Self {
        AgentId(name.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub(crate) fn reserved() -> Self {
        AgentId(RESERVED_AGENT.to_string())
    }

    pub fn is_reserved(&self) -> bool {
        self.0 == RESERVED_AGENT
    }
}

impl fmt::Display for AgentId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for AgentId {
    fn from(s: &str) -> Self {
        AgentId::new(s)
    }
}

/// A proposition `base` owned by `owner`, written `base@owner`.
///
/// Propositions with different owners are different propositions even when
/// they share a base name.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PropId {
    pub base: String,
    pub owner: AgentId,
}

impl PropId {
    pub fn new(base: impl Into<String>, owner: impl Into<AgentId>) -> Self {
        PropId {
            base: base.into(),
            owner: owner.into(),
        }
    }
}

impl fmt::Display for PropId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", self.base, self.owner)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vertex {
    id: String,
    color: AgentId,
    labels: BTreeSet<PropId>,
}

impl Vertex {
    /// `labels` are the propositions true at this vertex; the owner of each
    /// must be the vertex's color (checked when the model is built).
    pub fn new(
        id: impl Into<String>,
        color: impl Into<AgentId>,
        labels: impl IntoIterator<Item = PropId>,
    ) -> Self {
        Vertex {
            id: id.into(),
            color: color.into(),
            labels: labels.into_iter().collect(),
        }
    }

    /// Shorthand taking base names; the owner is the vertex color.
    pub fn with_props<S: Into<String>>(
        id: impl Into<String>,
        color: impl Into<AgentId>,
        props: impl IntoIterator<Item = S>,
    ) -> Self {
        let color = color.into();
        let labels = props
            .into_iter()
            .map(|p| PropId::new(p, color.clone()))
            .collect();
        Vertex {
            id: id.into(),
            color,
            labels,
        }
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn color(&self) -> &AgentId {
        &self.color
    }

    pub fn labels(&self) -> &BTreeSet<PropId> {
        &self.labels
    }

    pub fn holds(&self, base: &str) -> bool {
        self.labels.iter().any(|p| p.base == base)
    }
}

/// A face of a particular model: sorted, duplicate-free vertex indices.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Face(Vec<usize>);

impl Face {
    pub(crate) fn from_sorted(v: Vec<usize>) -> Self {
        debug_assert!(v.windows(2).all(|w| w[0] < w[1]));
        Face(v)
    }

    pub(crate) fn from_unsorted(mut v: Vec<usize>) -> Self {
        v.sort_unstable();
        v.dedup();
        Face(v)
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn dimension(&self) -> usize {
        self.0.len() - 1
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn is_subset(&self, other: &Face) -> bool {
        let mut it = other.0.iter();
        self.0.iter().all(|v| it.any(|w| w == v))
    }

    pub fn intersection(&self, other: &Face) -> Vec<usize> {
        self.0
            .iter()
            .copied()
            .filter(|v| other.contains(*v))
            .collect()
    }

    /// All nonempty subsets, in no particular order.
    pub(crate) fn subsets(&self) -> impl Iterator<Item = Face> + '_ {
        let n = self.0.len();
        (1u64..(1u64 << n)).map(move |bits| {
            Face(
                (0..n)
                    .filter(|i| bits & (1 << i) != 0)
                    .map(|i| self.0[i])
                    .collect(),
            )
        })
    }
}

#[derive(Debug)]
struct FaceTable {
    faces: Vec<Face>,
    index: HashMap<Face, usize>,
    /// `cofaces[i]` lists every face containing face `i` (including itself).
    cofaces: Vec<Vec<usize>>,
    masks: Vec<u64>,
}

/// A chromatic simplicial model `(C, χ, l)`.
#[derive(Debug)]
pub struct SimplicialModel {
    agents: Vec<AgentId>,
    vertices: Vec<Vertex>,
    colors: Vec<usize>,
    vertex_index: HashMap<String, usize>,
    facets: Vec<Face>,
    table: OnceLock<FaceTable>,
}

impl Clone for SimplicialModel {
    fn clone(&self) -> Self {
        SimplicialModel {
            agents: self.agents.clone(),
            vertices: self.vertices.clone(),
            colors: self.colors.clone(),
            vertex_index: self.vertex_index.clone(),
            facets: self.facets.clone(),
            table: OnceLock::new(),
        }
    }
}

impl PartialEq for SimplicialModel {
    fn eq(&self, other: &Self) -> bool {
        self.agents == other.agents && self.vertices == other.vertices && self.facets == other.facets
    }
}

impl Eq for SimplicialModel {}

pub(crate) fn validate_roster(agents: &[AgentId]) -> Result<()> {
    if agents.is_empty() {
        return Err(Error::EmptyRoster);
    }
    if agents.len() > MAX_AGENTS {
        return Err(Error::TooManyAgents {
            got: agents.len(),
            max: MAX_AGENTS,
        });
    }
    let mut seen = BTreeSet::new();
    for a in agents {
        if !is_ident(a.as_str()) {
            return Err(Error::InvalidIdentifier(a.to_string()));
        }
        if !seen.insert(a) {
            return Err(Error::DuplicateAgent(a.to_string()));
        }
    }
    Ok(())
}

/// Drops duplicate facets and facets contained in another one, then sorts.
pub(crate) fn normalize_facets(mut facets: Vec<Face>) -> Vec<Face> {
    facets.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
    facets.dedup();
    let mut kept: Vec<Face> = Vec::with_capacity(facets.len());
    for f in facets {
        if !kept.iter().any(|k| f.is_subset(k)) {
            kept.push(f);
        }
    }
    kept.sort();
    kept
}

/// Validated construction from user-facing parts; facets name vertices by id.
pub fn build_model<S: AsRef<str>>(
    agents: Vec<AgentId>,
    vertices: Vec<Vertex>,
    facets: Vec<Vec<S>>,
) -> Result<SimplicialModel> {
    validate_roster(&agents)?;
    if facets.is_empty() {
        return Err(Error::EmptyComplex);
    }
    let mut vertices = vertices;
    vertices.sort_by(|a, b| a.id.cmp(&b.id));
    for w in vertices.windows(2) {
        if w[0].id == w[1].id {
            return Err(Error::DuplicateVertex(w[0].id.clone()));
        }
    }
    let mut colors = Vec::with_capacity(vertices.len());
    for v in &vertices {
        if v.id.is_empty() || v.id.contains(',') {
            return Err(Error::InvalidIdentifier(v.id.clone()));
        }
        let c = agents
            .iter()
            .position(|a| *a == v.color)
            .ok_or_else(|| Error::UnknownAgent {
                agent: v.color.to_string(),
                context: format!("color of vertex `{}`", v.id),
            })?;
        for p in &v.labels {
            if p.owner != v.color {
                return Err(Error::ForeignProposition {
                    vertex: v.id.clone(),
                    color: v.color.to_string(),
                    prop: p.to_string(),
                });
            }
            if !is_ident(&p.base) {
                return Err(Error::InvalidIdentifier(p.base.clone()));
            }
        }
        colors.push(c);
    }
    let vertex_index: HashMap<String, usize> = vertices
        .iter()
        .enumerate()
        .map(|(i, v)| (v.id.clone(), i))
        .collect();

    let mut faces = Vec::with_capacity(facets.len());
    for f in &facets {
        if f.is_empty() {
            return Err(Error::EmptyComplex);
        }
        let mut idx = Vec::with_capacity(f.len());
        for id in f {
            let id = id.as_ref();
            idx.push(
                *vertex_index
                    .get(id)
                    .ok_or_else(|| Error::DanglingVertexRef(id.to_string()))?,
            );
        }
        let face = Face::from_unsorted(idx);
        check_chromatic(&face, &vertices, &colors)?;
        faces.push(face);
    }
    let facets = normalize_facets(faces);
    let mut used = vec![false; vertices.len()];
    for f in &facets {
        for &v in f.vertices() {
            used[v] = true;
        }
    }
    if let Some(i) = used.iter().position(|u| !u) {
        return Err(Error::DanglingVertexRef(vertices[i].id.clone()));
    }
    Ok(SimplicialModel {
        agents,
        vertices,
        colors,
        vertex_index,
        facets,
        table: OnceLock::new(),
    })
}

fn check_chromatic(face: &Face, vertices: &[Vertex], colors: &[usize]) -> Result<()> {
    let mut mask = 0u64;
    for &v in face.vertices() {
        let bit = 1u64 << colors[v];
        if mask & bit != 0 {
            return Err(Error::ChromaViolation {
                facet: face.vertices().iter().map(|&i| vertices[i].id.clone()).collect(),
                agent: vertices[v].color.to_string(),
            });
        }
        mask |= bit;
    }
    Ok(())
}

impl SimplicialModel {
    /// Builds a model from vertices already known to be valid, keeping only
    /// vertices used by some facet. Facets index into `vertices`.
    pub(crate) fn assemble(
        agents: Vec<AgentId>,
        vertices: Vec<Vertex>,
        facets: Vec<Face>,
    ) -> Result<SimplicialModel> {
        if facets.is_empty() {
            return Err(Error::EmptyComplex);
        }
        let mut used: Vec<usize> = facets.iter().flat_map(|f| f.vertices().iter().copied()).collect();
        used.sort_unstable();
        used.dedup();
        let kept: Vec<&Vertex> = used.iter().map(|&i| &vertices[i]).collect();
        let ids: Vec<Vec<&str>> = facets
            .iter()
            .map(|f| f.vertices().iter().map(|&i| vertices[i].id.as_str()).collect())
            .collect();
        build_model(agents, kept.into_iter().cloned().collect(), ids)
    }

    /// Same roster and vertices, different facets (indices into `self`).
    pub(crate) fn with_facets(&self, facets: Vec<Face>) -> Result<SimplicialModel> {
        Self::assemble(self.agents.clone(), self.vertices.clone(), facets)
    }

    pub fn agents(&self) -> &[AgentId] {
        &self.agents
    }

    pub fn agent_index(&self, a: &AgentId) -> Option<usize> {
        self.agents.iter().position(|x| x == a)
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn vertex(&self, i: usize) -> &Vertex {
        &self.vertices[i]
    }

    pub fn vertex_by_id(&self, id: &str) -> Option<usize> {
        self.vertex_index.get(id).copied()
    }

    /// Roster index of the color of vertex `i`.
    pub fn color_of(&self, i: usize) -> usize {
        self.colors[i]
    }

    pub fn facets(&self) -> &[Face] {
        &self.facets
    }

    /// `n` where the roster has `n + 1` agents.
    pub fn top_dimension(&self) -> usize {
        self.agents.len() - 1
    }

    pub fn dimension(&self) -> usize {
        self.facets.iter().map(Face::dimension).max().unwrap_or(0)
    }

    pub fn is_pure(&self) -> bool {
        self.facets
            .iter()
            .all(|f| f.dimension() == self.top_dimension())
    }

    fn table(&self) -> &FaceTable {
        self.table.get_or_init(|| {
            let mut set = BTreeSet::new();
            for f in &self.facets {
                set.extend(f.subsets());
            }
            let mut faces: Vec<Face> = set.into_iter().collect();
            faces.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
            let index: HashMap<Face, usize> =
                faces.iter().cloned().enumerate().map(|(i, f)| (f, i)).collect();
            let mut cofaces = vec![Vec::new(); faces.len()];
            for (j, f) in faces.iter().enumerate() {
                for sub in f.subsets() {
                    cofaces[index[&sub]].push(j);
                }
            }
            for c in &mut cofaces {
                c.sort_unstable();
            }
            let masks = faces.iter().map(|f| self.mask_of(f.vertices())).collect();
            FaceTable {
                faces,
                index,
                cofaces,
                masks,
            }
        })
    }

    /// All faces: every nonempty subset of every facet, ordered by size then
    /// vertex indices.
    pub fn faces(&self) -> &[Face] {
        &self.table().faces
    }

    pub fn face_count(&self) -> usize {
        self.table().faces.len()
    }

    pub fn face_index(&self, face: &Face) -> Option<usize> {
        self.table().index.get(face).copied()
    }

    /// Indices of the faces containing face `i`.
    pub fn cofaces(&self, i: usize) -> &[usize] {
        &self.table().cofaces[i]
    }

    /// Color mask of face `i`.
    pub fn face_mask(&self, i: usize) -> u64 {
        self.table().masks[i]
    }

    pub fn mask_of(&self, vertices: &[usize]) -> u64 {
        vertices.iter().fold(0, |m, &v| m | (1u64 << self.colors[v]))
    }

    pub fn contains_face(&self, face: &Face) -> bool {
        !face.is_empty() && self.facets.iter().any(|f| face.is_subset(f))
    }

    /// Resolves a list of vertex ids (any order) to a face of this model.
    pub fn face<S: AsRef<str>>(&self, ids: &[S]) -> Result<Face> {
        let mut idx = Vec::with_capacity(ids.len());
        for id in ids {
            let id = id.as_ref();
            idx.push(
                self.vertex_by_id(id)
                    .ok_or_else(|| Error::UnknownVertex(id.to_string()))?,
            );
        }
        let face = Face::from_unsorted(idx);
        if self.contains_face(&face) {
            Ok(face)
        } else {
            Err(Error::UnknownFace(
                ids.iter().map(|s| s.as_ref().to_string()).collect(),
            ))
        }
    }

    pub fn face_ids(&self, face: &Face) -> Vec<String> {
        face.vertices()
            .iter()
            .map(|&i| self.vertices[i].id.clone())
            .collect()
    }

    pub fn format_face(&self, face: &Face) -> String {
        format!("{{{}}}", self.face_ids(face).join(","))
    }

    fn require_face(&self, face: &Face) -> Result<()> {
        if face.vertices().iter().all(|&v| v < self.vertices.len()) && self.contains_face(face) {
            Ok(())
        } else {
            Err(Error::UnknownFace(
                face.vertices()
                    .iter()
                    .map(|&i| {
                        self.vertices
                            .get(i)
                            .map_or_else(|| format!("#{i}"), |v| v.id.clone())
                    })
                    .collect(),
            ))
        }
    }

    /// `χ(X)`.
    pub fn color_set(&self, face: &Face) -> Result<BTreeSet<AgentId>> {
        self.require_face(face)?;
        Ok(face
            .vertices()
            .iter()
            .map(|&v| self.vertices[v].color.clone())
            .collect())
    }

    /// `l(X)`.
    pub fn label_set(&self, face: &Face) -> Result<BTreeSet<PropId>> {
        self.require_face(face)?;
        Ok(face
            .vertices()
            .iter()
            .flat_map(|&v| self.vertices[v].labels.iter().cloned())
            .collect())
    }

    /// The `k`-skeleton: all faces of dimension at most `k`.
    pub fn skeleton(&self, k: usize) -> SimplicialModel {
        if k >= self.dimension() {
            return self.clone();
        }
        let mut facets = Vec::new();
        for f in &self.facets {
            if f.len() <= k + 1 {
                facets.push(f.clone());
            } else {
                facets.extend(f.subsets().filter(|s| s.len() == k + 1));
            }
        }
        self.with_facets(normalize_facets(facets))
            .expect("skeleton of a valid model is valid")
    }

    /// Subcomplex generated by the facets containing `face`.
    pub fn star(&self, face: &Face) -> Result<SimplicialModel> {
        self.require_face(face)?;
        let facets: Vec<Face> = self
            .facets
            .iter()
            .filter(|f| face.is_subset(f))
            .cloned()
            .collect();
        self.with_facets(facets)
    }

    /// Faces of the star of `face` sharing no vertex with it.
    pub fn link(&self, face: &Face) -> Result<SimplicialModel> {
        self.require_face(face)?;
        let facets: Vec<Face> = self
            .facets
            .iter()
            .filter(|f| face.is_subset(f))
            .map(|f| {
                Face::from_sorted(
                    f.vertices()
                        .iter()
                        .copied()
                        .filter(|v| !face.contains(*v))
                        .collect(),
                )
            })
            .filter(|f| !f.is_empty())
            .collect();
        if facets.is_empty() {
            return Err(Error::EmptyResult);
        }
        self.with_facets(normalize_facets(facets))
    }

    /// Color- and label-preserving isomorphism test (vertex ids ignored).
    pub fn is_isomorphic(&self, other: &SimplicialModel) -> bool {
        if self.agents.iter().collect::<BTreeSet<_>>() != other.agents.iter().collect::<BTreeSet<_>>()
            || self.vertices.len() != other.vertices.len()
            || self.facets.len() != other.facets.len()
        {
            return false;
        }
        let sig = |m: &SimplicialModel, v: usize| {
            let vx = &m.vertices[v];
            (vx.color.clone(), vx.labels.iter().map(|p| p.base.clone()).collect::<Vec<_>>())
        };
        let target: BTreeSet<Vec<usize>> = other.facets.iter().map(|f| f.vertices().to_vec()).collect();
        let n = self.vertices.len();
        let mut map = vec![usize::MAX; n];
        let mut taken = vec![false; n];
        fn search(
            a: &SimplicialModel,
            b: &SimplicialModel,
            i: usize,
            map: &mut Vec<usize>,
            taken: &mut Vec<bool>,
            target: &BTreeSet<Vec<usize>>,
            sig: &dyn Fn(&SimplicialModel, usize) -> (AgentId, Vec<String>),
        ) -> bool {
            if i == map.len() {
                let image: BTreeSet<Vec<usize>> = a
                    .facets
                    .iter()
                    .map(|f| {
                        let mut v: Vec<usize> = f.vertices().iter().map(|&x| map[x]).collect();
                        v.sort_unstable();
                        v
                    })
                    .collect();
                return &image == target;
            }
            for j in 0..map.len() {
                if !taken[j] && sig(a, i) == sig(b, j) {
                    taken[j] = true;
                    map[i] = j;
                    if search(a, b, i + 1, map, taken, target, sig) {
                        return true;
                    }
                    taken[j] = false;
                }
            }
            false
        }
        search(self, other, 0, &mut map, &mut taken, &target, &sig)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tri() -> SimplicialModel {
        build_model(
            vec!["a".into(), "b".into(), "c".into()],
            vec![
                Vertex::with_props("va", "a", ["p"]),
                Vertex::with_props("vb", "b", ["p"]),
                Vertex::with_props("vc", "c", Vec::<String>::new()),
            ],
            vec![vec!["va", "vb", "vc"]],
        )
        .unwrap()
    }

    #[test]
    fn single_triangle_basics() {
        let m = tri();
        assert_eq!(m.dimension(), 2);
        assert!(m.is_pure());
        assert_eq!(m.face_count(), 7);
        let x = m.face(&["vc", "va", "vb"]).unwrap();
        assert_eq!(m.color_set(&x).unwrap().len(), 3);
    }

    #[test]
    fn absorbed_facets_are_dropped() {
        let m = build_model(
            vec!["a".into(), "b".into(), "c".into()],
            vec![
                Vertex::with_props("v1", "a", Vec::<String>::new()),
                Vertex::with_props("v2", "b", Vec::<String>::new()),
                Vertex::with_props("v3", "c", Vec::<String>::new()),
            ],
            vec![vec!["v1", "v2"], vec!["v1", "v2", "v3"], vec!["v3", "v2", "v1"]],
        )
        .unwrap();
        assert_eq!(m.facets().len(), 1);
        assert_eq!(m.facets()[0].len(), 3);
    }

    #[test]
    fn construction_errors() {
        let roster = || vec![AgentId::from("a"), AgentId::from("b")];
        let no_facets: Vec<Vec<&str>> = vec![];
        assert!(matches!(
            build_model(roster(), vec![], no_facets),
            Err(Error::EmptyComplex)
        ));
        assert!(matches!(
            build_model(
                roster(),
                vec![
                    Vertex::with_props("x", "a", Vec::<String>::new()),
                    Vertex::with_props("y", "a", Vec::<String>::new()),
                ],
                vec![vec!["x", "y"]],
            ),
            Err(Error::ChromaViolation { .. })
        ));
        assert!(matches!(
            build_model(
                roster(),
                vec![Vertex::new("x", "a", [PropId::new("p", "b")])],
                vec![vec!["x"]],
            ),
            Err(Error::ForeignProposition { .. })
        ));
        assert!(matches!(
            build_model(
                roster(),
                vec![Vertex::with_props("x", "a", Vec::<String>::new())],
                vec![vec!["x", "nope"]],
            ),
            Err(Error::DanglingVertexRef(v)) if v == "nope"
        ));
        // declared but never used
        assert!(matches!(
            build_model(
                roster(),
                vec![
                    Vertex::with_props("x", "a", Vec::<String>::new()),
                    Vertex::with_props("y", "b", Vec::<String>::new()),
                ],
                vec![vec!["x"]],
            ),
            Err(Error::DanglingVertexRef(v)) if v == "y"
        ));
        assert!(matches!(
            build_model(
                roster(),
                vec![Vertex::with_props("x", "z", Vec::<String>::new())],
                vec![vec!["x"]],
            ),
            Err(Error::UnknownAgent { .. })
        ));
    }

    #[test]
    fn single_vertex_with_no_labels() {
        let m = build_model(
            vec!["a".into()],
            vec![Vertex::with_props("x", "a", Vec::<String>::new())],
            vec![vec!["x"]],
        )
        .unwrap();
        let x = m.face(&["x"]).unwrap();
        assert_eq!(m.color_set(&x).unwrap(), BTreeSet::from([AgentId::from("a")]));
        assert!(m.label_set(&x).unwrap().is_empty());
    }

    #[test]
    fn unknown_face_is_rejected() {
        let m = tri();
        assert!(matches!(m.face(&["va", "zz"]), Err(Error::UnknownVertex(_))));
        let bogus = Face::from_sorted(vec![0, 7]);
        assert!(matches!(m.color_set(&bogus), Err(Error::UnknownFace(_))));
        assert!(matches!(m.star(&bogus), Err(Error::UnknownFace(_))));
    }

    #[test]
    fn skeleton_and_link_edge_cases() {
        let m = tri();
        let s0 = m.skeleton(0);
        assert_eq!(s0.facets().len(), 3);
        assert_eq!(s0.dimension(), 0);
        assert_eq!(m.skeleton(5), m);
        let top = m.facets()[0].clone();
        assert!(matches!(m.link(&top), Err(Error::EmptyResult)));
        assert_eq!(m.star(&top).unwrap(), m);
    }
}
