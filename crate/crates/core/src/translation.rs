//! Elimination of action boxes.
//!
//! `t` commutes with the static connectives and rewrites boxes with the
//! reduction laws, where `pre(α)` is [`crate::dynamics::precondition`]:
//!
//! | rule                  | rewrite                                   |
//! |-----------------------|-------------------------------------------|
//! | `t-box-atom`          | `[α]p        ⇒ pre(α) → p`                |
//! | `t-box-neg`           | `[α]¬φ       ⇒ pre(α) → ¬[α]φ`            |
//! | `t-box-and`           | `[α](φ ∧ ψ)  ⇒ [α]φ ∧ [α]ψ`               |
//! | `t-box-D`             | `[α]D_H φ    ⇒ pre(α) → D_H [α]φ`         |
//! | `t-box-box`           | `[α][β]φ     ⇒ [α;β]φ`                    |
//! | `t-box-box-disjoint`  | `[α][β]φ     ⇒ ⊤` if `χ(α) ∩ χ(β) = ∅`    |
//!
//! The complexity measure is `c(p) = 1`, `c(¬φ) = 1 + c(φ)`,
//! `c(φ ∧ ψ) = 1 + max(c(φ), c(ψ))`, `c(D_G φ) = 1 + c(φ)` and
//! `c([α]φ) = (4 + c(pre(α))) · c(φ)`. Every step of `t` hands strictly less
//! complex formulas to its recursive calls; the trace records this.

use std::collections::HashMap;
use std::fmt;

use crate::dynamics::{compose_into, precondition, Registry};
use crate::error::Result;
use crate::formula::{ActionRef, Formula, Node};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceStep {
    pub rule: &'static str,
    /// Complexity of the formula being translated.
    pub before: u64,
    /// Largest complexity handed to a recursive call (0 for atoms).
    pub after: u64,
    /// Nesting depth of the call.
    pub depth: usize,
}

#[derive(Clone, Debug)]
pub struct TranslationReport {
    pub input: Formula,
    pub output: Formula,
    pub trace: Vec<TraceStep>,
}

impl TranslationReport {
    pub fn strictly_decreasing(&self) -> bool {
        self.trace.iter().all(|s| s.before > s.after)
    }

    pub fn max_depth(&self) -> usize {
        self.trace.iter().map(|s| s.depth + 1).max().unwrap_or(0)
    }
}

impl fmt::Display for TraceStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:indent$}{} {} -> {}",
            "",
            self.rule,
            self.before,
            self.after,
            indent = 2 * self.depth
        )
    }
}

pub fn complexity(reg: &Registry, f: &Formula) -> Result<u64> {
    Measure::new(reg.clone()).c(f)
}

/// Translates `f` into the static language. Compositions needed along the way
/// are built in a private copy of `reg`.
pub fn translate(reg: &Registry, f: &Formula) -> Result<TranslationReport> {
    reg.check_refs(f)?;
    let mut t = Translator {
        m: Measure::new(reg.clone()),
        memo: HashMap::new(),
        boxes: HashMap::new(),
        trace: Vec::new(),
    };
    let output = t.t(f, 0)?;
    debug_assert!(output.is_static());
    Ok(TranslationReport {
        input: f.clone(),
        output,
        trace: t.trace,
    })
}

struct Measure {
    reg: Registry,
    pre: HashMap<ActionRef, Formula>,
    memo: HashMap<usize, (Formula, u64)>,
}

impl Measure {
    fn new(reg: Registry) -> Self {
        Measure {
            reg,
            pre: HashMap::new(),
            memo: HashMap::new(),
        }
    }

    fn pre(&mut self, a: &ActionRef) -> Result<Formula> {
        if let Some(p) = self.pre.get(a) {
            return Ok(p.clone());
        }
        let p = precondition(&self.reg, a)?;
        self.pre.insert(a.clone(), p.clone());
        Ok(p)
    }

    fn c(&mut self, f: &Formula) -> Result<u64> {
        if let Some((_, v)) = self.memo.get(&f.ptr()) {
            return Ok(*v);
        }
        let v = match f.node() {
            Node::Atom(_) => 1,
            Node::Not(g) | Node::Commit(_, g) => self.c(g)?.saturating_add(1),
            Node::And(a, b) => self.c(a)?.max(self.c(b)?).saturating_add(1),
            Node::Action(a, g) => {
                let pre = self.pre(a)?;
                let cp = self.c(&pre)?;
                cp.saturating_add(4).saturating_mul(self.c(g)?)
            }
        };
        self.memo.insert(f.ptr(), (f.clone(), v));
        Ok(v)
    }
}

struct Translator {
    m: Measure,
    memo: HashMap<usize, (Formula, Formula)>,
    // [α]φ keyed by (α, node of φ); rewrites rebuild box nodes, so pointer
    // identity of the box itself would miss repeats
    boxes: HashMap<(ActionRef, usize), (Formula, Formula)>,
    trace: Vec<TraceStep>,
}

impl Translator {
    fn step(&mut self, rule: &'static str, before: u64, after: u64, depth: usize) {
        self.trace.push(TraceStep {
            rule,
            before,
            after,
            depth,
        });
    }

    fn t(&mut self, f: &Formula, depth: usize) -> Result<Formula> {
        if let Some((_, out)) = self.memo.get(&f.ptr()) {
            return Ok(out.clone());
        }
        if let Node::Action(a, body) = f.node() {
            if let Some((_, out)) = self.boxes.get(&(a.clone(), body.ptr())) {
                return Ok(out.clone());
            }
        }
        let before = self.m.c(f)?;
        let out = match f.node() {
            Node::Atom(_) => {
                self.step("t-atom", before, 0, depth);
                f.clone()
            }
            Node::Not(g) => {
                let cg = self.m.c(g)?;
                self.step("t-neg", before, cg, depth);
                let tg = self.t(g, depth + 1)?;
                if tg.ptr() == g.ptr() {
                    f.clone()
                } else {
                    Formula::not(tg)
                }
            }
            Node::And(a, b) => {
                let after = self.m.c(a)?.max(self.m.c(b)?);
                self.step("t-and", before, after, depth);
                let ta = self.t(a, depth + 1)?;
                let tb = self.t(b, depth + 1)?;
                if ta.ptr() == a.ptr() && tb.ptr() == b.ptr() {
                    f.clone()
                } else {
                    Formula::and(ta, tb)
                }
            }
            Node::Commit(g, body) => {
                let cb = self.m.c(body)?;
                self.step("t-D", before, cb, depth);
                let tb = self.t(body, depth + 1)?;
                if tb.ptr() == body.ptr() {
                    f.clone()
                } else {
                    Formula::commit(g.clone(), tb)
                }
            }
            Node::Action(a, body) => {
                let (rule, rewritten) = self.rewrite_box(a, body)?;
                let after = self.m.c(&rewritten)?;
                self.step(rule, before, after, depth);
                let out = self.t(&rewritten, depth + 1)?;
                self.boxes
                    .insert((a.clone(), body.ptr()), (body.clone(), out.clone()));
                out
            }
        };
        self.memo.insert(f.ptr(), (f.clone(), out.clone()));
        Ok(out)
    }

    fn rewrite_box(&mut self, a: &ActionRef, body: &Formula) -> Result<(&'static str, Formula)> {
        let boxed = |g: &Formula| Formula::action(a.clone(), g.clone());
        Ok(match body.node() {
            Node::Atom(_) => ("t-box-atom", Formula::implies(self.m.pre(a)?, body.clone())),
            Node::Not(g) => (
                "t-box-neg",
                Formula::implies(self.m.pre(a)?, Formula::not(boxed(g))),
            ),
            Node::And(l, r) => ("t-box-and", Formula::and(boxed(l), boxed(r))),
            Node::Commit(h, g) => (
                "t-box-D",
                Formula::implies(self.m.pre(a)?, Formula::commit(h.clone(), boxed(g))),
            ),
            Node::Action(b, g) => {
                let reg = &mut self.m.reg;
                let ca = reg.resolve(a)?.0.simplex_colors(&a.simplex).expect("resolved");
                let cb = reg.resolve(b)?.0.simplex_colors(&b.simplex).expect("resolved");
                if ca.is_disjoint(&cb) {
                    ("t-box-box-disjoint", Formula::top())
                } else {
                    let name = compose_into(reg, &a.model, &b.model)?;
                    let simplex = crate::dynamics::compose_name(&a.simplex, &b.simplex);
                    (
                        "t-box-box",
                        Formula::action(ActionRef::new(name, simplex), g.clone()),
                    )
                }
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse;

    #[test]
    fn static_formulas_translate_to_themselves() {
        let f = parse("D{a}(p@a & ~q@b)").unwrap();
        let r = translate(&Registry::new(), &f).unwrap();
        assert_eq!(r.output, f);
        assert_eq!(
            r.trace.iter().map(|s| s.rule).collect::<Vec<_>>(),
            ["t-D", "t-and", "t-atom", "t-neg", "t-atom"]
        );
        assert!(r.strictly_decreasing());
    }

    #[test]
    fn static_complexity() {
        let reg = Registry::new();
        assert_eq!(complexity(&reg, &parse("p@a").unwrap()).unwrap(), 1);
        assert_eq!(complexity(&reg, &parse("~p@a").unwrap()).unwrap(), 2);
        assert_eq!(complexity(&reg, &parse("D{a}(p@a & ~q@a)").unwrap()).unwrap(), 4);
        assert_eq!(complexity(&reg, &Formula::top()).unwrap(), 4);
    }
}
