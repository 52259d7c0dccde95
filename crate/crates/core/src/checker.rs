//! Model checking at pointed models.
//!
//! [`Evaluator`] computes, for a formula, its truth value at every face of a
//! model at once. Subformula results are memoized per node, which keeps
//! translated formulas (large DAGs with heavy sharing) cheap to check.

use std::collections::HashMap;
use std::sync::Arc;

use crate::complex::{Face, SimplicialModel};
use crate::dynamics::{build_product, Product, Registry};
use crate::error::{Error, Result};
use crate::formula::{ActionRef, Formula, Node};

/// A model together with the update models action references resolve in.
#[derive(Clone, Debug)]
pub struct CheckContext {
    model: Arc<SimplicialModel>,
    registry: Arc<Registry>,
}

impl CheckContext {
    pub fn new(model: SimplicialModel) -> Self {
        Self::with_updates(model, Registry::new())
    }

    pub fn with_updates(model: SimplicialModel, registry: Registry) -> Self {
        CheckContext {
            model: Arc::new(model),
            registry: Arc::new(registry),
        }
    }

    pub fn from_shared(model: Arc<SimplicialModel>, registry: Arc<Registry>) -> Self {
        CheckContext { model, registry }
    }

    pub fn model(&self) -> &SimplicialModel {
        &self.model
    }

    pub fn registry(&self) -> &Registry {
        &self.registry
    }

    pub fn evaluator(&self) -> Evaluator {
        Evaluator::new(self.model.clone(), self.registry.clone())
    }

    /// Truth value at every face, indexed like `model().faces()`.
    pub fn verdicts(&self, f: &Formula) -> Result<Vec<bool>> {
        self.registry.check_refs(f)?;
        Ok(self.evaluator().eval(f)?.to_vec())
    }

    pub fn satisfies(&self, face: &Face, f: &Formula) -> Result<bool> {
        let i = self
            .model
            .face_index(face)
            .ok_or_else(|| Error::UnknownFace(face_ids(&self.model, face)))?;
        Ok(self.verdicts(f)?[i])
    }

    pub fn valid_in_model(&self, f: &Formula) -> Result<bool> {
        Ok(self.verdicts(f)?.iter().all(|&b| b))
    }
}

fn face_ids(m: &SimplicialModel, face: &Face) -> Vec<String> {
    face.vertices()
        .iter()
        .map(|&i| {
            m.vertices()
                .get(i)
                .map_or_else(|| format!("#{i}"), |v| v.id().to_string())
        })
        .collect()
}

pub fn satisfies(ctx: &CheckContext, face: &Face, f: &Formula) -> Result<bool> {
    ctx.satisfies(face, f)
}

pub fn valid_in_model(ctx: &CheckContext, f: &Formula) -> Result<bool> {
    ctx.valid_in_model(f)
}

struct ActionSlot {
    inner: Option<Box<Evaluator>>,
    /// Face of the restricted product each face of the model lifts to, if
    /// the action is executable there.
    lift: Vec<Option<usize>>,
}

/// Memoizing whole-model evaluator. Not shared between threads; create one
/// per worker.
pub struct Evaluator {
    model: Arc<SimplicialModel>,
    registry: Arc<Registry>,
    // keeps the keyed node alive so its address is not reused
    memo: HashMap<usize, (Formula, Arc<Vec<bool>>)>,
    actions: HashMap<ActionRef, ActionSlot>,
}

impl Evaluator {
    pub fn new(model: Arc<SimplicialModel>, registry: Arc<Registry>) -> Self {
        Evaluator {
            model,
            registry,
            memo: HashMap::new(),
            actions: HashMap::new(),
        }
    }

    pub fn model(&self) -> &SimplicialModel {
        &self.model
    }

    pub fn eval(&mut self, f: &Formula) -> Result<Arc<Vec<bool>>> {
        if let Some((_, v)) = self.memo.get(&f.ptr()) {
            return Ok(v.clone());
        }
        let v = Arc::new(self.compute(f)?);
        self.memo.insert(f.ptr(), (f.clone(), v.clone()));
        Ok(v)
    }

    fn compute(&mut self, f: &Formula) -> Result<Vec<bool>> {
        let m = self.model.clone();
        let n = m.face_count();
        Ok(match f.node() {
            Node::Atom(p) => match m.agent_index(&p.owner) {
                None => vec![false; n],
                Some(c) => m
                    .faces()
                    .iter()
                    .map(|x| {
                        x.vertices().iter().any(|&v| m.color_of(v) == c && m.vertex(v).labels().contains(p))
                    })
                    .collect(),
            },
            Node::Not(g) => self.eval(g)?.iter().map(|b| !b).collect(),
            Node::And(a, b) => {
                let a = self.eval(a)?;
                let b = self.eval(b)?;
                a.iter().zip(b.iter()).map(|(x, y)| *x && *y).collect()
            }
            Node::Commit(group, body) => {
                let mut gmask = 0u64;
                for a in group {
                    let c = m.agent_index(a).ok_or_else(|| Error::UnknownAgent {
                        agent: a.to_string(),
                        context: format!("group of `{f}`"),
                    })?;
                    gmask |= 1 << c;
                }
                let body = self.eval(body)?;
                // all_co[k]: body holds at every coface of face k
                let mut all_co: HashMap<usize, bool> = HashMap::new();
                (0..n)
                    .map(|i| {
                        if m.face_mask(i) & gmask != gmask {
                            return false;
                        }
                        let core: Vec<usize> = m.faces()[i]
                            .vertices()
                            .iter()
                            .copied()
                            .filter(|&v| gmask & (1 << m.color_of(v)) != 0)
                            .collect();
                        let k = m
                            .face_index(&Face::from_sorted(core))
                            .expect("subface of a face");
                        *all_co
                            .entry(k)
                            .or_insert_with(|| m.cofaces(k).iter().all(|&j| body[j]))
                    })
                    .collect()
            }
            Node::Action(a, body) => {
                self.prepare_action(a)?;
                let slot = self.actions.get_mut(a).expect("prepared");
                match slot.inner.as_mut() {
                    None => vec![true; n],
                    Some(inner) => {
                        let inner_truth = inner.eval(body)?;
                        slot.lift
                            .iter()
                            .map(|l| l.map_or(true, |j| inner_truth[j]))
                            .collect()
                    }
                }
            }
        })
    }

    fn prepare_action(&mut self, a: &ActionRef) -> Result<()> {
        if self.actions.contains_key(a) {
            return Ok(());
        }
        let registry = self.registry.clone();
        let (u, alpha) = registry.resolve(a)?;
        let u = u.clone();
        let alpha_ids = u.frame().face_ids(alpha);
        let restricted = u.restrict(&a.simplex).expect("resolved");
        let coms = (0..restricted.frame().vertices().len())
            .map(|e| self.eval(restricted.com(e)))
            .collect::<Result<Vec<_>>>()?;
        let m = self.model.clone();
        let slot = match build_product(&m, &restricted, &coms)? {
            Product::Empty => ActionSlot {
                inner: None,
                lift: vec![None; m.face_count()],
            },
            Product::Updated(p) => {
                let event_of: HashMap<&crate::complex::AgentId, &str> = alpha
                    .vertices()
                    .iter()
                    .zip(&alpha_ids)
                    .map(|(&e, id)| (u.frame().vertex(e).color(), id.as_str()))
                    .collect();
                let lift = m
                    .faces()
                    .iter()
                    .map(|x| {
                        let mut ids = Vec::with_capacity(x.len());
                        for &v in x.vertices() {
                            let src = m.vertex(v);
                            let e = event_of.get(src.color())?;
                            ids.push(crate::dynamics::product_vertex_id(src.id(), e));
                        }
                        let mut idx = Vec::with_capacity(ids.len());
                        for id in &ids {
                            idx.push(p.vertex_by_id(id)?);
                        }
                        p.face_index(&Face::from_unsorted(idx))
                    })
                    .collect();
                ActionSlot {
                    inner: Some(Box::new(Evaluator::new(Arc::new(p), self.registry.clone()))),
                    lift,
                }
            }
        };
        self.actions.insert(a.clone(), slot);
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{build_model, Vertex};
    use crate::formula::parse;

    fn edge() -> SimplicialModel {
        build_model(
            vec!["a".into(), "b".into(), "c".into()],
            vec![
                Vertex::with_props("x", "a", ["p"]),
                Vertex::with_props("y", "b", ["p"]),
            ],
            vec![vec!["x", "y"]],
        )
        .unwrap()
    }

    #[test]
    fn absent_agent_atoms_are_false_and_negations_true() {
        let ctx = CheckContext::new(edge());
        let xy = ctx.model().face(&["x", "y"]).unwrap();
        assert!(!ctx.satisfies(&xy, &parse("p@c").unwrap()).unwrap());
        assert!(ctx.satisfies(&xy, &parse("~p@c").unwrap()).unwrap());
        assert!(!ctx.satisfies(&xy, &parse("D{c} ~p@c").unwrap()).unwrap());
    }

    #[test]
    fn unknown_group_agent_is_an_error() {
        let ctx = CheckContext::new(edge());
        assert!(matches!(
            ctx.valid_in_model(&parse("D{z} true").unwrap()),
            Err(Error::UnknownAgent { .. })
        ));
    }

    #[test]
    fn unresolved_action_is_an_error() {
        let ctx = CheckContext::new(edge());
        assert!(matches!(
            ctx.valid_in_model(&parse("[U.x] true").unwrap()),
            Err(Error::UnresolvedActionRef(_))
        ));
    }

    #[test]
    fn unknown_face_is_an_error() {
        let ctx = CheckContext::new(edge());
        let bogus = Face::from_unsorted(vec![0, 5]);
        assert!(matches!(
            ctx.satisfies(&bogus, &Formula::top()),
            Err(Error::UnknownFace(_))
        ));
    }
}
