//! Commitment update models, product update and composition.
//!
//! # Action semantics
//!
//! `[α]φ` is evaluated in the product of the model with the update model
//! restricted to the closure of the simplex `α`. A face `X` of the model is
//! *executable* when `χ(X) ⊆ χ(α)` and the pair of `X` with the matching part
//! of `α` survives in that product, i.e. some face `Z ⊇ X` colored inside
//! `χ(α)` satisfies the commitment of every event matched with `Z`. At an
//! executable face `φ` is evaluated at the lifted face, elsewhere `[α]φ` holds
//! vacuously. When `χ(X) = χ(α)` this is exactly "if the commitments hold at
//! `X` then `φ` holds at `(X, α)`"; the extension to smaller faces is what
//! makes the reduction laws in [`crate::translation`] sound.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Arc;

use crate::checker::CheckContext;
use crate::complex::{
    build_model, is_ident, normalize_facets, AgentId, Face, SimplicialModel, Vertex,
};
use crate::error::{Error, Result};
use crate::formula::{ActionRef, Formula, Group};

/// An event vertex of an update model.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Event {
    pub id: String,
    pub agent: AgentId,
    pub com: Formula,
}

impl Event {
    pub fn new(id: impl Into<String>, agent: impl Into<AgentId>, com: Formula) -> Self {
        Event {
            id: id.into(),
            agent: agent.into(),
            com,
        }
    }
}

/// A commitment update model `(E, χ, com)` with named joint actions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UpdateModel {
    /// Event complex; vertices carry no labels.
    frame: SimplicialModel,
    /// Indexed like `frame.vertices()`.
    com: Vec<Formula>,
    named: BTreeMap<String, Face>,
}

fn is_action_name(s: &str) -> bool {
    !s.is_empty()
        && s.split(';').all(is_ident)
}

impl UpdateModel {
    /// Commitment formulas must be static.
    pub fn new<S: AsRef<str>>(
        agents: Vec<AgentId>,
        events: Vec<Event>,
        facets: Vec<Vec<S>>,
        named: BTreeMap<String, Vec<String>>,
    ) -> Result<Self> {
        for e in &events {
            if !e.com.is_static() {
                return Err(Error::DynamicCommitment(e.id.clone()));
            }
        }
        Self::new_unchecked(agents, events, facets, named)
    }

    fn new_unchecked<S: AsRef<str>>(
        agents: Vec<AgentId>,
        events: Vec<Event>,
        facets: Vec<Vec<S>>,
        named: BTreeMap<String, Vec<String>>,
    ) -> Result<Self> {
        let mut coms: HashMap<String, Formula> = HashMap::new();
        let vertices = events
            .into_iter()
            .map(|e| {
                coms.insert(e.id.clone(), e.com);
                Vertex::new(e.id, e.agent, [])
            })
            .collect();
        let frame = build_model(agents, vertices, facets)?;
        let com = frame
            .vertices()
            .iter()
            .map(|v| coms[v.id()].clone())
            .collect();
        let mut faces = BTreeMap::new();
        for (name, ids) in named {
            if !is_action_name(&name) {
                return Err(Error::InvalidIdentifier(name));
            }
            let face = frame.face(&ids).map_err(|_| Error::UnknownSimplex {
                model: String::from("(being built)"),
                name: name.clone(),
            })?;
            faces.insert(name, face);
        }
        Ok(UpdateModel {
            frame,
            com,
            named: faces,
        })
    }

    pub fn agents(&self) -> &[AgentId] {
        self.frame.agents()
    }

    /// The event complex (as an unlabeled simplicial model).
    pub fn frame(&self) -> &SimplicialModel {
        &self.frame
    }

    pub fn events(&self) -> impl Iterator<Item = Event> + '_ {
        self.frame
            .vertices()
            .iter()
            .zip(&self.com)
            .map(|(v, c)| Event::new(v.id(), v.color().clone(), c.clone()))
    }

    pub fn com(&self, event: usize) -> &Formula {
        &self.com[event]
    }

    pub fn named(&self) -> &BTreeMap<String, Face> {
        &self.named
    }

    pub fn simplex(&self, name: &str) -> Option<&Face> {
        self.named.get(name)
    }

    /// Colors of a named simplex.
    pub fn simplex_colors(&self, name: &str) -> Option<Group> {
        let f = self.named.get(name)?;
        Some(
            f.vertices()
                .iter()
                .map(|&v| self.frame.vertex(v).color().clone())
                .collect(),
        )
    }

    /// Event of the named simplex colored `agent`, if any.
    pub fn simplex_event(&self, name: &str, agent: &AgentId) -> Option<usize> {
        self.named
            .get(name)?
            .vertices()
            .iter()
            .copied()
            .find(|&v| self.frame.vertex(v).color() == agent)
    }

    /// The update model generated by one named simplex.
    pub fn restrict(&self, name: &str) -> Option<UpdateModel> {
        let face = self.named.get(name)?;
        let events = face
            .vertices()
            .iter()
            .map(|&v| {
                let x = self.frame.vertex(v);
                Event::new(x.id(), x.color().clone(), self.com[v].clone())
            })
            .collect();
        let ids = self.frame.face_ids(face);
        let named = BTreeMap::from([(name.to_string(), ids.clone())]);
        Some(
            Self::new_unchecked(self.agents().to_vec(), events, vec![ids], named)
                .expect("a simplex of a valid update model is a valid update model"),
        )
    }

    fn same_roster(&self, agents: &[AgentId]) -> Result<()> {
        let l: BTreeSet<_> = self.agents().iter().collect();
        let r: BTreeSet<_> = agents.iter().collect();
        if l == r {
            Ok(())
        } else {
            Err(Error::RosterMismatch {
                left: agents.iter().map(ToString::to_string).collect(),
                right: self.agents().iter().map(ToString::to_string).collect(),
            })
        }
    }
}

/// Named update models, the environment action references resolve in.
#[derive(Clone, Debug, Default)]
pub struct Registry {
    models: BTreeMap<String, Arc<UpdateModel>>,
}

impl Registry {
    pub fn new() -> Self {
        Self::default()
    }

    /// Replaces any model of the same name.
    pub fn insert(&mut self, name: impl Into<String>, model: UpdateModel) -> Result<()> {
        let name = name.into();
        if !is_action_name(&name) {
            return Err(Error::InvalidIdentifier(name));
        }
        self.models.insert(name, Arc::new(model));
        Ok(())
    }

    pub fn get(&self, name: &str) -> Option<&Arc<UpdateModel>> {
        self.models.get(name)
    }

    pub fn contains(&self, name: &str) -> bool {
        self.models.contains_key(name)
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.models.keys().map(String::as_str)
    }

    pub fn is_empty(&self) -> bool {
        self.models.is_empty()
    }

    pub fn resolve(&self, a: &ActionRef) -> Result<(&Arc<UpdateModel>, &Face)> {
        let u = self
            .models
            .get(&a.model)
            .ok_or_else(|| Error::UnresolvedActionRef(a.to_string()))?;
        let f = u.simplex(&a.simplex).ok_or_else(|| Error::UnknownSimplex {
            model: a.model.clone(),
            name: a.simplex.clone(),
        })?;
        Ok((u, f))
    }

    /// Every action reference of `f` resolves.
    pub fn check_refs(&self, f: &Formula) -> Result<()> {
        for a in f.actions() {
            self.resolve(&a)?;
        }
        Ok(())
    }
}

/// Result of a product update.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Product {
    Updated(SimplicialModel),
    /// No pair of faces survived.
    Empty,
}

impl Product {
    pub fn model(&self) -> Option<&SimplicialModel> {
        match self {
            Product::Updated(m) => Some(m),
            Product::Empty => None,
        }
    }
}

pub fn product_vertex_id(source: &str, event: &str) -> String {
    format!("{source}/{event}")
}

/// `C ⊗ U`; commitments are evaluated in the context's model and registry.
pub fn product_update(ctx: &CheckContext, update: &UpdateModel) -> Result<Product> {
    let mut ev = ctx.evaluator();
    let coms = (0..update.com.len())
        .map(|e| ev.eval(&update.com[e]))
        .collect::<Result<Vec<_>>>()?;
    build_product(ctx.model(), update, &coms)
}

/// `com_truth[e][i]`: commitment of event `e` at face `i` of `model`.
pub(crate) fn build_product(
    model: &SimplicialModel,
    update: &UpdateModel,
    com_truth: &[Arc<Vec<bool>>],
) -> Result<Product> {
    update.same_roster(model.agents())?;
    let frame = &update.frame;
    // roster index in `frame` -> roster index in `model`
    let remap: Vec<usize> = frame
        .agents()
        .iter()
        .map(|a| model.agent_index(a).expect("rosters agree"))
        .collect();
    let mut by_mask: HashMap<u64, Vec<usize>> = HashMap::new();
    for (j, f) in frame.faces().iter().enumerate() {
        let mask = f
            .vertices()
            .iter()
            .fold(0u64, |m, &v| m | 1 << remap[frame.color_of(v)]);
        by_mask.entry(mask).or_default().push(j);
    }

    let mut pairs: Vec<Vec<(usize, usize)>> = Vec::new();
    for (i, x) in model.faces().iter().enumerate() {
        let Some(candidates) = by_mask.get(&model.face_mask(i)) else {
            continue;
        };
        for &j in candidates {
            let xe = &frame.faces()[j];
            if xe.vertices().iter().all(|&e| com_truth[e][i]) {
                let mut pair: Vec<(usize, usize)> = x
                    .vertices()
                    .iter()
                    .map(|&v| {
                        let c = model.color_of(v);
                        let e = *xe
                            .vertices()
                            .iter()
                            .find(|&&e| remap[frame.color_of(e)] == c)
                            .expect("equal color sets");
                        (v, e)
                    })
                    .collect();
                pair.sort_unstable();
                pairs.push(pair);
            }
        }
    }
    if pairs.is_empty() {
        return Ok(Product::Empty);
    }

    let mut index: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for p in &pairs {
        for &ve in p {
            index.insert(ve, 0);
        }
    }
    let mut vertices = Vec::with_capacity(index.len());
    for (n, (&(v, e), slot)) in index.iter_mut().enumerate() {
        *slot = n;
        let src = model.vertex(v);
        vertices.push(Vertex::new(
            product_vertex_id(src.id(), frame.vertex(e).id()),
            src.color().clone(),
            src.labels().iter().cloned(),
        ));
    }
    let facets = normalize_facets(
        pairs
            .iter()
            .map(|p| Face::from_unsorted(p.iter().map(|ve| index[ve]).collect()))
            .collect(),
    );
    let ids: Vec<Vec<String>> = facets
        .iter()
        .map(|f| f.vertices().iter().map(|&i| vertices[i].id().to_string()).collect())
        .collect();
    build_model(model.agents().to_vec(), vertices, ids).map(Product::Updated)
}

/// The all-`⊤` update whose simplices mirror the color pattern of `model`'s
/// facets. Each facet pattern is named by its agents joined with `_`.
pub fn identity_for(model: &SimplicialModel) -> UpdateModel {
    let patterns: Vec<Face> = normalize_facets(
        model
            .facets()
            .iter()
            .map(|f| Face::from_unsorted(f.vertices().iter().map(|&v| model.color_of(v)).collect()))
            .collect(),
    );
    let agents = model.agents();
    let event_id = |c: usize| format!("e_{}", agents[c]);
    let mut used = BTreeSet::new();
    for p in &patterns {
        used.extend(p.vertices().iter().copied());
    }
    let events = used
        .iter()
        .map(|&c| Event::new(event_id(c), agents[c].clone(), Formula::top()))
        .collect();
    let facets: Vec<Vec<String>> = patterns
        .iter()
        .map(|p| p.vertices().iter().map(|&c| event_id(c)).collect())
        .collect();
    let named = patterns
        .iter()
        .zip(&facets)
        .map(|(p, ids)| {
            let name: Vec<&str> = p.vertices().iter().map(|&c| agents[c].as_str()).collect();
            (name.join("_"), ids.clone())
        })
        .collect();
    UpdateModel::new(agents.to_vec(), events, facets, named).expect("identity update is valid")
}

/// One simplex over the whole roster, named `all`, with trivial commitments.
pub fn top_update(agents: &[AgentId]) -> UpdateModel {
    let events: Vec<Event> = agents
        .iter()
        .map(|a| Event::new(format!("t_{a}"), a.clone(), Formula::top()))
        .collect();
    let ids: Vec<String> = events.iter().map(|e| e.id.clone()).collect();
    let named = BTreeMap::from([("all".to_string(), ids.clone())]);
    UpdateModel::new(agents.to_vec(), events, vec![ids], named).expect("top update is valid")
}

pub fn compose_name(left: &str, right: &str) -> String {
    format!("{left};{right}")
}

/// Sequential composition of two registered update models.
///
/// For every pair of named simplices `x` of `left` and `y` of `right` whose
/// colors overlap there is one simplex `x;y` over the shared colors. Its
/// `a`-event has commitment `⟨left.x⟩ com(y_a)`, so composed commitments
/// mention `left` by name and are evaluated against a registry containing it.
/// Pairs with disjoint colors yield no simplex.
pub fn compose(reg: &Registry, left: &str, right: &str) -> Result<UpdateModel> {
    let u = reg
        .get(left)
        .ok_or_else(|| Error::UnresolvedActionRef(left.to_string()))?;
    let v = reg
        .get(right)
        .ok_or_else(|| Error::UnresolvedActionRef(right.to_string()))?;
    v.same_roster(u.agents())?;

    let mut events: BTreeMap<String, Event> = BTreeMap::new();
    let mut facets: Vec<Vec<String>> = Vec::new();
    let mut named: BTreeMap<String, Vec<String>> = BTreeMap::new();
    for (x, xf) in &u.named {
        for (y, yf) in &v.named {
            let mut ids = Vec::new();
            for &e1 in xf.vertices() {
                let agent = u.frame.vertex(e1).color();
                let Some(&e2) = yf
                    .vertices()
                    .iter()
                    .find(|&&e2| v.frame.vertex(e2).color() == agent)
                else {
                    continue;
                };
                let id = format!("{x}:{};{}", u.frame.vertex(e1).id(), v.frame.vertex(e2).id());
                let com = Formula::diamond(ActionRef::new(left, x.clone()), v.com[e2].clone());
                let event = Event::new(id.clone(), agent.clone(), com);
                match events.get(&id) {
                    Some(prev) if *prev != event => return Err(Error::CompositionClash(id)),
                    _ => {
                        events.insert(id.clone(), event);
                    }
                }
                ids.push(id);
            }
            if !ids.is_empty() {
                named.insert(compose_name(x, y), ids.clone());
                facets.push(ids);
            }
        }
    }
    if facets.is_empty() {
        return Err(Error::EmptyResult);
    }
    UpdateModel::new_unchecked(
        u.agents().to_vec(),
        events.into_values().collect(),
        facets,
        named,
    )
}

/// Composes and registers the result under [`compose_name`]; returns the name.
pub fn compose_into(reg: &mut Registry, left: &str, right: &str) -> Result<String> {
    let name = compose_name(left, right);
    if !reg.contains(&name) {
        let m = compose(reg, left, right)?;
        reg.insert(name.clone(), m)?;
    }
    Ok(name)
}

/// Static formula true exactly at the faces where `[a]` is executable.
///
/// With `present(x) = D{x}⊤` and `absent(x) = ¬present(x)`, the formula is
/// the disjunction over nonempty `H ⊆ χ(a)` of "the face is colored exactly
/// `H`" and `¬D_H ¬P`, where `P` says that every present color lies in `χ(a)`
/// and every present agent's commitment holds.
pub fn precondition(reg: &Registry, a: &ActionRef) -> Result<Formula> {
    let (u, _) = reg.resolve(a)?;
    let colors = u.simplex_colors(&a.simplex).expect("resolved");
    let roster: Vec<AgentId> = u.agents().to_vec();
    let present = |x: &AgentId| Formula::commit_to([x.clone()], Formula::top());
    let absent = |x: &AgentId| Formula::not(present(x));

    let mut p = Vec::new();
    for x in roster.iter().filter(|x| !colors.contains(*x)) {
        p.push(absent(x));
    }
    for x in &colors {
        let e = u.simplex_event(&a.simplex, x).expect("color of the simplex");
        let com = &u.com[e];
        if !com.is_top() {
            p.push(Formula::implies(present(x), com.clone()));
        }
    }
    let p = Formula::conj(p);
    let not_p = Formula::not(p);

    let members: Vec<&AgentId> = colors.iter().collect();
    let mut terms = Vec::new();
    for bits in 1u64..(1u64 << members.len()) {
        let h: Group = (0..members.len())
            .filter(|i| bits & (1 << i) != 0)
            .map(|i| members[i].clone())
            .collect();
        let exact: Vec<Formula> = roster
            .iter()
            .map(|x| if h.contains(x) { present(x) } else { absent(x) })
            .collect();
        let reach = Formula::not(Formula::commit(h, not_p.clone()));
        terms.push(Formula::and(Formula::conj(exact), reach));
    }
    Ok(Formula::disj(terms))
}
