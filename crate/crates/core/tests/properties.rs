mod common;

use std::sync::Arc;

use common::*;
use ddsl::dynamics::{identity_for, precondition};
use ddsl::io::{model_from_json, model_to_json};
use ddsl::validity::gen::{update_schedule, FormulaGen};
use ddsl::validity::suite::schedule_registry;
use ddsl::{
    complexity, parse, product_update, translate, ActionRef, AgentId, CheckContext, Evaluator, Formula, Group,
    Product, Registry,
};
use proptest::prelude::*;

fn gen_for(m: &ddsl::SimplicialModel, seed: u64) -> FormulaGen {
    FormulaGen::new(seed, m.agents(), &["p", "q"])
}

fn single(a: &AgentId) -> Group {
    Group::from([a.clone()])
}

fn all_true(ctx: &CheckContext, f: &Formula) -> bool {
    ctx.valid_in_model(f).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn print_then_parse_is_identity(seed in any::<u64>(), depth in 0usize..=6) {
        let agents: Vec<AgentId> = ["a", "b", "c"].map(AgentId::from).to_vec();
        let actions = vec![ActionRef::new("u0", "all"), ActionRef::new("u1;u2", "pair;x_a")];
        let mut g = FormulaGen::new(seed, &agents, &["p", "q"]).with_actions(actions);
        let f = g.formula(depth);
        let text = f.to_string();
        prop_assert_eq!(parse(&text).unwrap(), f.clone(), "{}", text);
        let mut h = FormulaGen::new(seed ^ 1, &agents, &["p"]);
        let (x, y) = (h.formula(2), h.formula(2));
        for derived in [Formula::or(x.clone(), y.clone()), Formula::implies(x.clone(), y.clone()), Formula::iff(x, y)] {
            prop_assert_eq!(parse(&derived.to_string()).unwrap(), derived);
        }
    }

    #[test]
    fn commitment_axioms_hold(seed in any::<u64>(), fseed in any::<u64>()) {
        let m = random_model(seed);
        let ctx = CheckContext::new(m.clone());
        let mut g = gen_for(&m, fseed);
        let (phi, psi, grp) = (g.formula(3), g.formula(3), g.group());
        let d = |f: Formula| Formula::commit(grp.clone(), f);
        let imp = Formula::implies;
        prop_assert!(all_true(&ctx, &imp(d(phi.clone()), phi.clone())), "T");
        prop_assert!(all_true(&ctx, &imp(d(phi.clone()), d(d(phi.clone())))), "4");
        prop_assert!(all_true(
            &ctx,
            &imp(d(imp(phi.clone(), psi.clone())), imp(d(phi.clone()), d(psi.clone())))
        ), "K");
        for a in m.agents() {
            for p in ["p", "q"] {
                let atom = Formula::prop(p, a.as_str());
                let da = |f: Formula| Formula::commit(single(a), f);
                prop_assert!(all_true(&ctx, &imp(atom.clone(), da(atom.clone()))), "WN+");
                prop_assert!(all_true(&ctx, &imp(
                    Formula::and(da(Formula::top()), Formula::not(atom.clone())),
                    da(Formula::not(atom.clone())),
                )), "WN- guarded");
            }
        }
        // every face contains some agent, and that agent commits to true there
        let n = Formula::disj(m.agents().iter().map(|a| Formula::commit(single(a), Formula::top())).collect());
        prop_assert!(all_true(&ctx, &n), "N surrogate");
    }

    #[test]
    fn products_are_valid_models_with_source_labels(seed in any::<u64>(), useed in any::<u64>()) {
        let m = random_model(seed);
        let ctx = CheckContext::new(m.clone());
        for (_, u) in update_schedule(useed, m.agents(), &["p", "q"]) {
            if let Product::Updated(p) = product_update(&ctx, &u).unwrap() {
                // revalidated from scratch through the file format
                let again = model_from_json(&model_to_json(&p)).unwrap();
                prop_assert_eq!(&again, &p);
                for v in p.vertices() {
                    let (src, _) = v.id().split_once('/').unwrap();
                    let s = m.vertex(m.vertex_by_id(src).unwrap());
                    prop_assert_eq!(s.labels(), v.labels());
                    prop_assert_eq!(s.color(), v.color());
                }
            }
        }
    }

    #[test]
    fn identity_update_is_an_isomorphism(seed in any::<u64>()) {
        let m = random_model(seed);
        let ctx = CheckContext::new(m.clone());
        let Product::Updated(p) = product_update(&ctx, &identity_for(&m)).unwrap() else {
            panic!("identity update cannot be empty");
        };
        prop_assert!(p.is_isomorphic(&m));
    }

    #[test]
    fn reduction_laws_hold(seed in any::<u64>(), fseed in any::<u64>()) {
        let m = random_model(seed);
        let agents = m.agents().to_vec();
        let (mut reg, actions) = schedule_registry(fseed, &agents, &["p", "q"]).unwrap();
        let mut g = gen_for(&m, fseed);
        let (phi, psi, grp) = (g.formula(2), g.formula(2), g.group());
        let mut laws = Vec::new();
        for a in &actions {
            let pre = precondition(&reg, a).unwrap();
            let bx = |f: Formula| Formula::action(a.clone(), f);
            let imp = Formula::implies;
            for atom in [Formula::prop("p", agents[0].as_str()), Formula::prop("q", agents[1].as_str())] {
                laws.push(Formula::iff(bx(atom.clone()), imp(pre.clone(), atom)));
            }
            laws.push(Formula::iff(bx(Formula::not(phi.clone())), imp(pre.clone(), Formula::not(bx(phi.clone())))));
            laws.push(Formula::iff(bx(Formula::and(phi.clone(), psi.clone())), Formula::and(bx(phi.clone()), bx(psi.clone()))));
            laws.push(Formula::iff(
                bx(Formula::commit(grp.clone(), phi.clone())),
                imp(pre.clone(), Formula::commit(grp.clone(), bx(phi.clone()))),
            ));
            for b in &actions {
                let ca = reg.resolve(a).unwrap().0.simplex_colors(&a.simplex).unwrap();
                let cb = reg.resolve(b).unwrap().0.simplex_colors(&b.simplex).unwrap();
                let lhs = bx(Formula::action(b.clone(), phi.clone()));
                if ca.is_disjoint(&cb) {
                    laws.push(lhs);
                } else {
                    let name = ddsl::dynamics::compose_into(&mut reg, &a.model, &b.model).unwrap();
                    let ab = ActionRef::new(name, ddsl::dynamics::compose_name(&a.simplex, &b.simplex));
                    laws.push(Formula::iff(lhs, Formula::action(ab, phi.clone())));
                }
            }
        }
        let mut ev = Evaluator::new(Arc::new(m.clone()), Arc::new(reg));
        for law in &laws {
            prop_assert!(ev.eval(law).unwrap().iter().all(|b| *b), "{}", law);
        }
    }

    #[test]
    fn translation_is_static_decreasing_and_equivalent(seed in any::<u64>(), fseed in any::<u64>()) {
        let m = random_model(seed);
        let agents = m.agents().to_vec();
        let (reg, actions) = schedule_registry(fseed, &agents, &["p", "q"]).unwrap();
        let mut g = gen_for(&m, fseed).with_actions(actions);
        let f = g.dynamic_formula(4);
        let report = translate(&reg, &f).unwrap();
        prop_assert!(report.output.is_static());
        prop_assert!(report.strictly_decreasing());
        prop_assert!(report.max_depth() as u64 <= complexity(&reg, &f).unwrap());
        let mut ev = Evaluator::new(Arc::new(m), Arc::new(reg));
        prop_assert_eq!(ev.eval(&f).unwrap(), ev.eval(&report.output).unwrap(), "{}", f);
    }
}

#[test]
fn empty_product_makes_boxes_vacuous() {
    let m = ddsl::scenarios::joint_attendance();
    let mut reg = Registry::new();
    // every event demands p@c, which holds at no face of this model
    let u = ddsl::io::update_from_json(
        r#"{"agents":["a","b","c"],
            "vertices":[{"id":"e_a","agent":"a","com":"p@c"},{"id":"e_b","agent":"b","com":"p@c"},{"id":"e_c","agent":"c","com":"p@c"}],
            "facets":[["e_a","e_b","e_c"]],
            "named":{"all":["e_a","e_b","e_c"]}}"#,
    )
    .unwrap();
    let ctx = CheckContext::new(m.clone());
    assert!(matches!(product_update(&ctx, &u).unwrap(), Product::Empty));
    reg.insert("U", u).unwrap();
    let ctx = CheckContext::with_updates(m, reg);
    assert!(ctx.valid_in_model(&"[U.all] false".parse().unwrap()).unwrap());
}
