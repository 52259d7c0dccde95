//! Executable soundness suite: axiom schemas, reduction laws and the
//! translation, all checked over every enumerated model and face.

use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;

use super::enumerate::{enumerate_models, EnumerationBounds};
use super::gen::{update_schedule, FormulaGen};
use crate::checker::Evaluator;
use crate::complex::{AgentId, Face, SimplicialModel};
use crate::dynamics::{compose_into, precondition, Registry};
use crate::error::Result;
use crate::formula::{ActionRef, Formula, Group};
use crate::translation::{complexity, translate};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Expect {
    Valid,
    /// Known not to be valid; the suite must find a counterexample.
    Invalid,
}

#[derive(Clone, Debug)]
pub struct Witness {
    pub formula: Formula,
    pub model_index: usize,
    pub model: SimplicialModel,
    pub face: Face,
}

#[derive(Clone, Debug)]
pub struct SchemaRow {
    pub name: &'static str,
    pub expect: Expect,
    pub instances: usize,
    /// Number of (model, face, instance) evaluations.
    pub checks: u64,
    pub witness: Option<Witness>,
}

impl SchemaRow {
    pub fn passed(&self) -> bool {
        match self.expect {
            Expect::Valid => self.witness.is_none(),
            Expect::Invalid => self.witness.is_some(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub bounds: EnumerationBounds,
    pub seed: u64,
    /// Generated formulas per schema instantiation.
    pub samples: usize,
    pub depth: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            bounds: EnumerationBounds::new(2, 1, 2, 2),
            seed: 17,
            samples: 24,
            depth: 3,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub bounds: EnumerationBounds,
    pub seed: u64,
    pub models: usize,
    pub rows: Vec<SchemaRow>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(SchemaRow::passed)
    }

    pub fn instances(&self) -> usize {
        self.rows.iter().map(|r| r.instances).sum()
    }

    pub fn row(&self, name: &str) -> Option<&SchemaRow> {
        self.rows.iter().find(|r| r.name == name)
    }
}

/// Compact one-line rendering: `a0{p} b0{} | {a0,b0} {a1}`.
pub fn describe(m: &SimplicialModel) -> String {
    let vertices: Vec<String> = m
        .vertices()
        .iter()
        .map(|v| {
            let props: Vec<&str> = v.labels().iter().map(|p| p.base.as_str()).collect();
            format!("{}{{{}}}", v.id(), props.join(","))
        })
        .collect();
    let facets: Vec<String> = m.facets().iter().map(|f| m.format_face(f)).collect();
    format!("{} | {}", vertices.join(" "), facets.join(" "))
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "bounds: {}", self.bounds)?;
        writeln!(f, "seed: {}", self.seed)?;
        writeln!(f, "models: {}", self.models)?;
        writeln!(
            f,
            "{:<18} {:<8} {:>9} {:>10}  result",
            "schema", "expect", "instances", "checks"
        )?;
        for r in &self.rows {
            let expect = match r.expect {
                Expect::Valid => "valid",
                Expect::Invalid => "invalid",
            };
            let result = match (&r.witness, r.expect) {
                (None, Expect::Valid) => "pass".to_string(),
                (None, Expect::Invalid) => "FAIL (no counterexample found)".to_string(),
                (Some(w), Expect::Valid) => format!(
                    "FAIL (model #{} at {})",
                    w.model_index,
                    w.model.format_face(&w.face)
                ),
                (Some(w), Expect::Invalid) => format!(
                    "refuted (model #{} at {})",
                    w.model_index,
                    w.model.format_face(&w.face)
                ),
            };
            writeln!(
                f,
                "{:<18} {:<8} {:>9} {:>10}  {}",
                r.name, expect, r.instances, r.checks, result
            )?;
        }
        for r in &self.rows {
            if let Some(w) = &r.witness {
                writeln!(f, "{}: {}", r.name, w.formula)?;
                writeln!(f, "  in {}", describe(&w.model))?;
            }
        }
        write!(f, "overall: {}", if self.passed() { "pass" } else { "FAIL" })
    }
}

fn groups(agents: &[AgentId]) -> Vec<Group> {
    (1u64..(1 << agents.len()))
        .map(|bits| {
            agents
                .iter()
                .enumerate()
                .filter(|(i, _)| bits & (1 << i) != 0)
                .map(|(_, a)| a.clone())
                .collect()
        })
        .collect()
}

fn d(g: &Group, f: Formula) -> Formula {
    Formula::commit(g.clone(), f)
}

fn imp(a: Formula, b: Formula) -> Formula {
    Formula::implies(a, b)
}

fn taut(a: &Formula, b: &Formula, c: &Formula) -> Vec<Formula> {
    let (a, b, c) = (|| a.clone(), || b.clone(), || c.clone());
    let n = Formula::not;
    let and = Formula::and;
    let or = Formula::or;
    vec![
        imp(a(), a()),
        or(a(), n(a())),
        n(and(a(), n(a()))),
        imp(n(n(a())), a()),
        imp(a(), n(n(a()))),
        imp(and(a(), b()), a()),
        imp(and(a(), b()), b()),
        imp(a(), imp(b(), a())),
        imp(imp(a(), imp(b(), c())), imp(imp(a(), b()), imp(a(), c()))),
        imp(imp(n(a()), n(b())), imp(b(), a())),
        imp(and(a(), b()), and(b(), a())),
        imp(or(a(), b()), or(b(), a())),
        imp(a(), or(a(), b())),
        imp(n(or(a(), b())), n(a())),
        imp(and(imp(a(), b()), imp(b(), c())), imp(a(), c())),
        imp(imp(a(), b()), imp(n(b()), n(a()))),
        imp(n(and(a(), b())), or(n(a()), n(b()))),
        imp(and(a(), or(b(), c())), or(and(a(), b()), and(a(), c()))),
        imp(imp(imp(a(), b()), a()), a()),
        or(imp(a(), b()), imp(b(), a())),
    ]
}

struct Schema {
    name: &'static str,
    expect: Expect,
    instances: Vec<Formula>,
}

/// Registry with the update schedule and all pairwise compositions, plus
/// every named action of the schedule.
pub fn schedule_registry(seed: u64, agents: &[AgentId], props: &[&str]) -> Result<(Registry, Vec<ActionRef>)> {
    let mut reg = Registry::new();
    let mut actions = Vec::new();
    let schedule = update_schedule(seed, agents, props);
    for (name, u) in &schedule {
        for simplex in u.named().keys() {
            actions.push(ActionRef::new(name.clone(), simplex.clone()));
        }
        reg.insert(name.clone(), u.clone())?;
    }
    for (l, _) in &schedule {
        for (r, _) in &schedule {
            compose_into(&mut reg, l, r)?;
        }
    }
    Ok((reg, actions))
}

fn schemas(cfg: &SuiteConfig, reg: &mut Registry, actions: &[ActionRef]) -> Result<Vec<Schema>> {
    let agents = cfg.bounds.agents();
    let props = cfg.bounds.props();
    let groups = groups(&agents);
    let mut g = FormulaGen::new(cfg.seed, &agents, &props);
    let samples: Vec<(Formula, Formula, Formula)> = (0..cfg.samples)
        .map(|_| (g.formula(cfg.depth), g.formula(cfg.depth), g.formula(cfg.depth)))
        .collect();
    let atoms: Vec<(AgentId, Formula)> = agents
        .iter()
        .flat_map(|a| props.iter().map(move |p| (a.clone(), Formula::prop(p, a.as_str()))))
        .collect();
    let single = |a: &AgentId| Group::from([a.clone()]);
    let mut out = Vec::new();

    let mut k = Vec::new();
    let mut t = Vec::new();
    let mut four = Vec::new();
    let mut five = Vec::new();
    for (phi, psi, _) in &samples {
        for grp in &groups {
            k.push(imp(
                d(grp, imp(phi.clone(), psi.clone())),
                imp(d(grp, phi.clone()), d(grp, psi.clone())),
            ));
            t.push(imp(d(grp, phi.clone()), phi.clone()));
            four.push(imp(d(grp, phi.clone()), d(grp, d(grp, phi.clone()))));
            five.push(imp(
                Formula::not(d(grp, phi.clone())),
                d(grp, Formula::not(d(grp, phi.clone()))),
            ));
        }
    }
    out.push(Schema { name: "K", expect: Expect::Valid, instances: k });
    out.push(Schema { name: "T", expect: Expect::Valid, instances: t });
    out.push(Schema { name: "4", expect: Expect::Valid, instances: four });

    let mut wn_pos = Vec::new();
    let mut wn_guarded = Vec::new();
    let mut wn_literal = Vec::new();
    for (a, p) in &atoms {
        let ga = single(a);
        wn_pos.push(imp(p.clone(), d(&ga, p.clone())));
        wn_guarded.push(imp(
            Formula::and(d(&ga, Formula::top()), Formula::not(p.clone())),
            d(&ga, Formula::not(p.clone())),
        ));
        wn_literal.push(imp(Formula::not(p.clone()), d(&ga, Formula::not(p.clone()))));
    }
    out.push(Schema { name: "WN+", expect: Expect::Valid, instances: wn_pos });
    out.push(Schema { name: "WN- (guarded)", expect: Expect::Valid, instances: wn_guarded });
    out.push(Schema {
        name: "N-surrogate",
        expect: Expect::Valid,
        instances: vec![Formula::disj(
            agents.iter().map(|a| d(&single(a), Formula::top())).collect(),
        )],
    });
    let mut tauts = Vec::new();
    for (a, b, c) in samples.iter().take(4) {
        tauts.extend(taut(a, b, c));
    }
    out.push(Schema { name: "Taut", expect: Expect::Valid, instances: tauts });

    let mut r1 = Vec::new();
    let mut r2 = Vec::new();
    let mut r3 = Vec::new();
    let mut r4 = Vec::new();
    let mut r5 = Vec::new();
    let boxed = |a: &ActionRef, f: &Formula| Formula::action(a.clone(), f.clone());
    for a in actions {
        let pre = precondition(reg, a)?;
        for (_, p) in &atoms {
            r1.push(Formula::iff(boxed(a, p), imp(pre.clone(), p.clone())));
        }
        for (phi, psi, _) in &samples {
            r2.push(Formula::iff(
                boxed(a, &Formula::not(phi.clone())),
                imp(pre.clone(), Formula::not(boxed(a, phi))),
            ));
            r3.push(Formula::iff(
                boxed(a, &Formula::and(phi.clone(), psi.clone())),
                Formula::and(boxed(a, phi), boxed(a, psi)),
            ));
            for grp in &groups {
                r4.push(Formula::iff(
                    boxed(a, &d(grp, phi.clone())),
                    imp(pre.clone(), d(grp, boxed(a, phi))),
                ));
            }
        }
    }
    for a in actions {
        let ca = reg.resolve(a)?.0.simplex_colors(&a.simplex).expect("resolved");
        for b in actions {
            let cb = reg.resolve(b)?.0.simplex_colors(&b.simplex).expect("resolved");
            let name = compose_into(reg, &a.model, &b.model)?;
            let ab = ActionRef::new(name, crate::dynamics::compose_name(&a.simplex, &b.simplex));
            for (phi, _, _) in samples.iter().take(cfg.samples.div_ceil(4)) {
                let lhs = boxed(a, &boxed(b, phi));
                r5.push(if ca.is_disjoint(&cb) {
                    lhs
                } else {
                    Formula::iff(lhs, boxed(&ab, phi))
                });
            }
        }
    }
    out.push(Schema { name: "R1 box-atom", expect: Expect::Valid, instances: r1 });
    out.push(Schema { name: "R2 box-neg", expect: Expect::Valid, instances: r2 });
    out.push(Schema { name: "R3 box-and", expect: Expect::Valid, instances: r3 });
    out.push(Schema { name: "R4 box-D", expect: Expect::Valid, instances: r4 });
    out.push(Schema { name: "R5 box-box", expect: Expect::Valid, instances: r5 });

    let mut mono = Vec::new();
    for (phi, _, _) in &samples {
        for small in &groups {
            for big in &groups {
                if small.len() < big.len() && small.is_subset(big) {
                    mono.push(imp(d(small, phi.clone()), d(big, phi.clone())));
                }
            }
        }
    }
    // atoms make the classic witnesses reachable even if the samples miss them
    for (_, p) in &atoms {
        for grp in &groups {
            five.push(imp(
                Formula::not(d(grp, p.clone())),
                d(grp, Formula::not(d(grp, p.clone()))),
            ));
        }
    }
    out.push(Schema { name: "5", expect: Expect::Invalid, instances: five });
    out.push(Schema { name: "monotonicity", expect: Expect::Invalid, instances: mono });
    out.push(Schema { name: "WN- (literal)", expect: Expect::Invalid, instances: wn_literal });
    Ok(out)
}

pub fn axiom_suite(cfg: &SuiteConfig) -> Result<SuiteReport> {
    let models = enumerate_models(&cfg.bounds)?;
    let agents = cfg.bounds.agents();
    let props = cfg.bounds.props();
    let (mut reg, actions) = schedule_registry(cfg.seed, &agents, &props)?;
    let schemas = schemas(cfg, &mut reg, &actions)?;
    let reg = Arc::new(reg);

    // per model, per schema: first failing (instance, face) and check count
    let per_model: Vec<Vec<(Option<(usize, usize)>, u64)>> = models
        .par_iter()
        .map(|m| {
            let m = Arc::new(m.clone());
            let mut ev = Evaluator::new(m.clone(), reg.clone());
            schemas
                .iter()
                .map(|s| {
                    let mut first = None;
                    for (k, f) in s.instances.iter().enumerate() {
                        let v = ev.eval(f)?;
                        if first.is_none() {
                            if let Some(face) = v.iter().position(|b| !b) {
                                first = Some((k, face));
                            }
                        }
                    }
                    Ok((first, (s.instances.len() * m.face_count()) as u64))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;

    let rows = schemas
        .iter()
        .enumerate()
        .map(|(si, s)| {
            let checks = per_model.iter().map(|r| r[si].1).sum();
            let witness = per_model.iter().enumerate().find_map(|(mi, r)| {
                r[si].0.map(|(k, face)| Witness {
                    formula: s.instances[k].clone(),
                    model_index: mi,
                    model: models[mi].clone(),
                    face: models[mi].faces()[face].clone(),
                })
            });
            SchemaRow {
                name: s.name,
                expect: s.expect,
                instances: s.instances.len(),
                checks,
                witness,
            }
        })
        .collect();
    Ok(SuiteReport {
        bounds: cfg.bounds,
        seed: cfg.seed,
        models: models.len(),
        rows,
    })
}

#[derive(Clone, Debug)]
pub struct TranslationConfig {
    pub bounds: EnumerationBounds,
    pub seed: u64,
    pub formulas: usize,
    pub depth: usize,
}

impl Default for TranslationConfig {
    fn default() -> Self {
        TranslationConfig {
            bounds: EnumerationBounds::new(2, 1, 2, 2),
            seed: 29,
            formulas: 60,
            depth: 4,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Mismatch {
    pub formula: Formula,
    pub model_index: usize,
    pub face: Face,
}

#[derive(Clone, Debug)]
pub struct TranslationCheck {
    pub bounds: EnumerationBounds,
    pub seed: u64,
    pub formulas: usize,
    pub models: usize,
    /// (model, face, formula) comparisons made.
    pub triples: u64,
    pub mismatches: Vec<Mismatch>,
    /// Translations with a trace step that does not decrease complexity.
    pub non_decreasing: usize,
    /// Translations whose rewrite chains are longer than `c(input)`.
    pub overlong: usize,
    pub trace_steps: usize,
    pub max_input_complexity: u64,
}

impl TranslationCheck {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty() && self.non_decreasing == 0 && self.overlong == 0
    }
}

impl fmt::Display for TranslationCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "bounds: {}", self.bounds)?;
        writeln!(f, "seed: {}", self.seed)?;
        writeln!(f, "formulas: {}", self.formulas)?;
        writeln!(f, "models: {}", self.models)?;
        writeln!(f, "triples: {}", self.triples)?;
        writeln!(f, "trace steps: {}", self.trace_steps)?;
        writeln!(f, "max input complexity: {}", self.max_input_complexity)?;
        writeln!(f, "non-decreasing traces: {}", self.non_decreasing)?;
        writeln!(f, "overlong chains: {}", self.overlong)?;
        writeln!(f, "mismatches: {}", self.mismatches.len())?;
        for m in self.mismatches.iter().take(5) {
            writeln!(f, "  model #{} face {:?}: {}", m.model_index, m.face.vertices(), m.formula)?;
        }
        write!(f, "overall: {}", if self.passed() { "pass" } else { "FAIL" })
    }
}

/// Translates seeded dynamic formulas and compares both sides on every face
/// of every enumerated model.
pub fn translation_suite(cfg: &TranslationConfig) -> Result<TranslationCheck> {
    let models = enumerate_models(&cfg.bounds)?;
    let agents = cfg.bounds.agents();
    let props = cfg.bounds.props();
    let (reg, actions) = schedule_registry(cfg.seed, &agents, &props)?;
    let mut g = FormulaGen::new(cfg.seed, &agents, &props).with_actions(actions);

    let mut pairs = Vec::with_capacity(cfg.formulas);
    let mut non_decreasing = 0;
    let mut overlong = 0;
    let mut trace_steps = 0;
    let mut max_input_complexity = 0;
    for _ in 0..cfg.formulas {
        let f = g.dynamic_formula(cfg.depth);
        let report = translate(&reg, &f)?;
        let c = complexity(&reg, &f)?;
        max_input_complexity = max_input_complexity.max(c);
        trace_steps += report.trace.len();
        if !report.strictly_decreasing() {
            non_decreasing += 1;
        }
        if report.max_depth() as u64 > c {
            overlong += 1;
        }
        pairs.push((f, report.output));
    }

    let reg = Arc::new(reg);
    let results: Vec<(u64, Vec<Mismatch>)> = models
        .par_iter()
        .enumerate()
        .map(|(mi, m)| {
            let m = Arc::new(m.clone());
            let mut ev = Evaluator::new(m.clone(), reg.clone());
            let mut triples = 0u64;
            let mut bad = Vec::new();
            for (f, t) in &pairs {
                let lhs = ev.eval(f)?;
                let rhs = ev.eval(t)?;
                triples += m.face_count() as u64;
                if let Some(i) = (0..lhs.len()).find(|&i| lhs[i] != rhs[i]) {
                    bad.push(Mismatch {
                        formula: f.clone(),
                        model_index: mi,
                        face: m.faces()[i].clone(),
                    });
                }
            }
            Ok((triples, bad))
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(TranslationCheck {
        bounds: cfg.bounds,
        seed: cfg.seed,
        formulas: cfg.formulas,
        models: models.len(),
        triples: results.iter().map(|r| r.0).sum(),
        mismatches: results.into_iter().flat_map(|r| r.1).collect(),
        non_decreasing,
        overlong,
        trace_steps,
        max_input_complexity,
    })
}
