//! Seeded random formulas and update models.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::complex::AgentId;
use crate::dynamics::{Event, UpdateModel};
use crate::formula::{ActionRef, Formula, Group};

/// Random formulas over a roster, optionally with action boxes.
pub struct FormulaGen {
    rng: ChaCha8Rng,
    agents: Vec<AgentId>,
    props: Vec<String>,
    actions: Vec<ActionRef>,
}

impl FormulaGen {
    pub fn new(seed: u64, agents: &[AgentId], props: &[&str]) -> Self {
        FormulaGen {
            rng: ChaCha8Rng::seed_from_u64(seed),
            agents: agents.to_vec(),
            props: props.iter().map(|s| s.to_string()).collect(),
            actions: Vec::new(),
        }
    }

    pub fn with_actions(mut self, actions: Vec<ActionRef>) -> Self {
        self.actions = actions;
        self
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn atom(&mut self) -> Formula {
        if self.props.is_empty() {
            return if self.rng.gen_bool(0.5) {
                Formula::top()
            } else {
                Formula::bottom()
            };
        }
        let p = self.props.choose(&mut self.rng).expect("nonempty").clone();
        let a = self.agents.choose(&mut self.rng).expect("nonempty roster").clone();
        Formula::prop(&p, a.as_str())
    }

    pub fn group(&mut self) -> Group {
        loop {
            let g: Group = self
                .agents
                .iter()
                .filter(|_| self.rng.gen_bool(0.5))
                .cloned()
                .collect();
            if !g.is_empty() {
                return g;
            }
        }
    }

    /// A formula built from `¬`, `∧`, `D_G` and (if any were given) action
    /// boxes, of depth at most `depth`.
    pub fn formula(&mut self, depth: usize) -> Formula {
        if depth == 0 || self.rng.gen_ratio(1, 5) {
            return self.atom();
        }
        let kinds = if self.actions.is_empty() { 4 } else { 6 };
        match self.rng.gen_range(0..kinds) {
            0 => Formula::not(self.formula(depth - 1)),
            1 => {
                let l = self.formula(depth - 1);
                Formula::and(l, self.formula(depth - 1))
            }
            2 | 3 => {
                let g = self.group();
                Formula::commit(g, self.formula(depth - 1))
            }
            _ => {
                let a = self.actions.choose(&mut self.rng).expect("nonempty").clone();
                Formula::action(a, self.formula(depth - 1))
            }
        }
    }

    /// A formula of depth at most `depth` with at least one action box.
    pub fn dynamic_formula(&mut self, depth: usize) -> Formula {
        assert!(!self.actions.is_empty() && depth > 0);
        loop {
            let f = self.formula(depth);
            if !f.is_static() {
                return f;
            }
        }
    }
}

/// A small fixed family of update models over `agents`, with random static
/// commitments of depth at most 1. Names are `u0`, `u1`, ...
///
/// - `u0`: one simplex over the whole roster (`all`);
/// - `u1`: the first two agents jointly (`pair`) and the first agent alone
///   with another commitment (`solo`), only if there are two or more agents;
/// - `u2`: every agent on its own (`x_<agent>`), trivial commitments.
pub fn update_schedule(seed: u64, agents: &[AgentId], props: &[&str]) -> Vec<(String, UpdateModel)> {
    let mut g = FormulaGen::new(seed, agents, props);
    let mut out = Vec::new();

    let events: Vec<Event> = agents
        .iter()
        .map(|a| Event::new(format!("u0_{a}"), a.clone(), g.formula(1)))
        .collect();
    let ids: Vec<String> = events.iter().map(|e| e.id.clone()).collect();
    out.push((
        "u0".to_string(),
        UpdateModel::new(
            agents.to_vec(),
            events,
            vec![ids.clone()],
            BTreeMap::from([("all".to_string(), ids)]),
        )
        .expect("valid update model"),
    ));

    if agents.len() >= 2 {
        let (a, b) = (&agents[0], &agents[1]);
        let events = vec![
            Event::new(format!("u1_{a}"), a.clone(), g.formula(1)),
            Event::new(format!("u1_{b}"), b.clone(), g.formula(1)),
            Event::new(format!("u1_{a}_solo"), a.clone(), g.formula(1)),
        ];
        let pair = vec![events[0].id.clone(), events[1].id.clone()];
        let solo = vec![events[2].id.clone()];
        out.push((
            "u1".to_string(),
            UpdateModel::new(
                agents.to_vec(),
                events,
                vec![pair.clone(), solo.clone()],
                BTreeMap::from([("pair".to_string(), pair), ("solo".to_string(), solo)]),
            )
            .expect("valid update model"),
        ));
    }

    let events: Vec<Event> = agents
        .iter()
        .map(|a| Event::new(format!("u2_{a}"), a.clone(), Formula::top()))
        .collect();
    let facets: Vec<Vec<String>> = events.iter().map(|e| vec![e.id.clone()]).collect();
    let named = agents
        .iter()
        .zip(&facets)
        .map(|(a, f)| (format!("x_{a}"), f.clone()))
        .collect();
    out.push((
        "u2".to_string(),
        UpdateModel::new(agents.to_vec(), events, facets, named).expect("valid update model"),
    ));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generation_is_deterministic() {
        let agents = vec![AgentId::from("a"), AgentId::from("b")];
        let mut g1 = FormulaGen::new(7, &agents, &["p"]);
        let mut g2 = FormulaGen::new(7, &agents, &["p"]);
        for _ in 0..50 {
            let f = g1.formula(4);
            assert!(f.depth() <= 4);
            assert_eq!(f.to_string(), g2.formula(4).to_string());
        }
    }
}
