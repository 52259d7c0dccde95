//! Formulas of the static and dynamic languages.
//!
//! Formulas are immutable and cheaply clonable. Shared subterms stay shared,
//! which matters for translated formulas: they are DAGs whose tree expansion
//! can be exponentially larger.

mod parser;
mod print;

use std::collections::BTreeSet;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::complex::{AgentId, PropId};

pub use parser::parse;

/// A nonempty set of agents.
pub type Group = BTreeSet<AgentId>;

/// Names a joint action: simplex `simplex` of the update model `model`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ActionRef {
    pub model: String,
    pub simplex: String,
}

impl ActionRef {
    pub fn new(model: impl Into<String>, simplex: impl Into<String>) -> Self {
        ActionRef {
            model: model.into(),
            simplex: simplex.into(),
        }
    }
}

impl fmt::Display for ActionRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{}", self.model, self.simplex)
    }
}

#[derive(Debug, PartialEq, Eq, Hash)]
pub enum Node {
    Atom(PropId),
    Not(Formula),
    And(Formula, Formula),
    Commit(Group, Formula),
    Action(ActionRef, Formula),
}

#[derive(Clone)]
pub struct Formula(Arc<Node>);

const RESERVED_BASE: &str = "bot";

impl Formula {
    fn wrap(n: Node) -> Self {
        Formula(Arc::new(n))
    }

    pub fn node(&self) -> &Node {
        &self.0
    }

    /// Identity of this particular node, stable while the formula is alive.
    pub(crate) fn ptr(&self) -> usize {
        Arc::as_ptr(&self.0) as usize
    }

    pub fn atom(p: PropId) -> Self {
        Self::wrap(Node::Atom(p))
    }

    /// `base@owner`.
    pub fn prop(base: &str, owner: &str) -> Self {
        Self::atom(PropId::new(base, owner))
    }

    pub fn not(f: Formula) -> Self {
        Self::wrap(Node::Not(f))
    }

    pub fn and(l: Formula, r: Formula) -> Self {
        Self::wrap(Node::And(l, r))
    }

    /// `¬(¬l ∧ ¬r)`.
    pub fn or(l: Formula, r: Formula) -> Self {
        Self::not(Self::and(Self::not(l), Self::not(r)))
    }

    /// `¬(l ∧ ¬r)`.
    pub fn implies(l: Formula, r: Formula) -> Self {
        Self::not(Self::and(l, Self::not(r)))
    }

    /// `(l → r) ∧ (r → l)`.
    pub fn iff(l: Formula, r: Formula) -> Self {
        Self::and(Self::implies(l.clone(), r.clone()), Self::implies(r, l))
    }

    /// # Panics
    /// If `group` is empty.
    pub fn commit(group: Group, body: Formula) -> Self {
        assert!(!group.is_empty(), "commitment group must be nonempty");
        Self::wrap(Node::Commit(group, body))
    }

    pub fn commit_to<I, A>(agents: I, body: Formula) -> Self
    where
        I: IntoIterator<Item = A>,
        A: Into<AgentId>,
    {
        Self::commit(agents.into_iter().map(Into::into).collect(), body)
    }

    pub fn action(a: ActionRef, body: Formula) -> Self {
        Self::wrap(Node::Action(a, body))
    }

    /// `⟨a⟩body`, i.e. `¬[a]¬body`.
    pub fn diamond(a: ActionRef, body: Formula) -> Self {
        Self::not(Self::action(a, Self::not(body)))
    }

    /// `p ∧ ¬p` for a reserved proposition no model can label.
    pub fn bottom() -> Self {
        let r = Self::atom(Self::reserved_prop());
        Self::and(r.clone(), Self::not(r))
    }

    pub fn top() -> Self {
        Self::not(Self::bottom())
    }

    pub(crate) fn reserved_prop() -> PropId {
        PropId::new(RESERVED_BASE, AgentId::reserved())
    }

    pub fn is_bottom(&self) -> bool {
        match self.node() {
            Node::And(l, r) => match (l.node(), r.node()) {
                (Node::Atom(p), Node::Not(n)) => {
                    p.owner.is_reserved()
                        && p.base == RESERVED_BASE
                        && matches!(n.node(), Node::Atom(q) if q == p)
                }
                _ => false,
            },
            _ => false,
        }
    }

    pub fn is_top(&self) -> bool {
        matches!(self.node(), Node::Not(f) if f.is_bottom())
    }

    /// Balanced conjunction; `⊤` when empty.
    pub fn conj(items: Vec<Formula>) -> Self {
        Self::balanced(items, Self::and).unwrap_or_else(Self::top)
    }

    /// Balanced disjunction; `⊥` when empty.
    pub fn disj(items: Vec<Formula>) -> Self {
        Self::balanced(items, Self::or).unwrap_or_else(Self::bottom)
    }

    fn balanced(mut items: Vec<Formula>, op: fn(Formula, Formula) -> Formula) -> Option<Formula> {
        if items.len() <= 1 {
            return items.pop();
        }
        let right = items.split_off(items.len() / 2);
        let l = Self::balanced(items, op)?;
        let r = Self::balanced(right, op)?;
        Some(op(l, r))
    }

    /// True iff no action modality occurs.
    pub fn is_static(&self) -> bool {
        let mut stack = vec![self];
        let mut seen = std::collections::HashSet::new();
        while let Some(f) = stack.pop() {
            if !seen.insert(f.ptr()) {
                continue;
            }
            match f.node() {
                Node::Atom(_) => {}
                Node::Not(g) | Node::Commit(_, g) => stack.push(g),
                Node::And(a, b) => {
                    stack.push(a);
                    stack.push(b);
                }
                Node::Action(..) => return false,
            }
        }
        true
    }

    /// Every subformula occurrence in pre-order, the formula itself first.
    pub fn subformulas(&self) -> Vec<Formula> {
        let mut out = Vec::new();
        let mut stack = vec![self.clone()];
        while let Some(f) = stack.pop() {
            match f.node() {
                Node::Atom(_) => {}
                Node::Not(g) | Node::Commit(_, g) | Node::Action(_, g) => stack.push(g.clone()),
                Node::And(a, b) => {
                    stack.push(b.clone());
                    stack.push(a.clone());
                }
            }
            out.push(f);
        }
        out
    }

    /// Action references occurring in the formula, sorted and deduplicated.
    pub fn actions(&self) -> BTreeSet<ActionRef> {
        let mut out = BTreeSet::new();
        let mut stack = vec![self];
        let mut seen = std::collections::HashSet::new();
        while let Some(f) = stack.pop() {
            if !seen.insert(f.ptr()) {
                continue;
            }
            match f.node() {
                Node::Atom(_) => {}
                Node::Not(g) | Node::Commit(_, g) => stack.push(g),
                Node::Action(a, g) => {
                    out.insert(a.clone());
                    stack.push(g);
                }
                Node::And(a, b) => {
                    stack.push(a);
                    stack.push(b);
                }
            }
        }
        out
    }

    /// Number of distinct nodes (shared subterms counted once).
    pub fn dag_size(&self) -> usize {
        let mut stack = vec![self];
        let mut seen = std::collections::HashSet::new();
        while let Some(f) = stack.pop() {
            if !seen.insert(f.ptr()) {
                continue;
            }
            match f.node() {
                Node::Atom(_) => {}
                Node::Not(g) | Node::Commit(_, g) | Node::Action(_, g) => stack.push(g),
                Node::And(a, b) => {
                    stack.push(a);
                    stack.push(b);
                }
            }
        }
        seen.len()
    }

    pub fn depth(&self) -> usize {
        match self.node() {
            Node::Atom(_) => 0,
            Node::Not(g) | Node::Commit(_, g) | Node::Action(_, g) => 1 + g.depth(),
            Node::And(a, b) => 1 + a.depth().max(b.depth()),
        }
    }
}

impl PartialEq for Formula {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Eq for Formula {}

impl Hash for Formula {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.hash(state)
    }
}

impl fmt::Debug for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Formula({self})")
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        print::write(self, f)
    }
}

impl std::str::FromStr for Formula {
    type Err = crate::Error;

    fn from_str(s: &str) -> crate::Result<Self> {
        parse(s)
    }
}
