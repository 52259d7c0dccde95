use std::collections::BTreeSet;

use ddsl::dot::to_dot;
use ddsl::scenarios::*;
use ddsl::{product_update, CheckContext, Formula, Product, Registry, SimplicialModel, UpdateModel};

fn holds(m: &SimplicialModel, face: &[&str], f: &str) -> bool {
    let ctx = CheckContext::new(m.clone());
    ctx.satisfies(&m.face(face).unwrap(), &f.parse().unwrap()).unwrap()
}

fn holds_with(m: &SimplicialModel, name: &str, u: UpdateModel, face: &[&str], f: &str) -> bool {
    let mut reg = Registry::new();
    reg.insert(name, u).unwrap();
    let ctx = CheckContext::with_updates(m.clone(), reg);
    ctx.satisfies(&m.face(face).unwrap(), &f.parse().unwrap()).unwrap()
}

fn facet_ids(m: &SimplicialModel) -> BTreeSet<Vec<String>> {
    m.facets().iter().map(|f| m.face_ids(f)).collect()
}

#[test]
fn version1_everyone_answered() {
    let m = joint_attendance();
    assert!(holds(&m, &["va", "vb", "vc"], "D{a,b,c}(p@a & p@b & ~p@c)"));
    assert!(!holds(&m, &["va", "vb", "vc"], "D{a,b,c}(p@a & p@b & p@c)"));
}

#[test]
fn version2_silent_guest() {
    let m = silent_guest();
    let x = ["va", "vb"];
    assert!(holds(&m, &x, "D{a,b}(p@a & p@b)"));
    assert!(!holds(&m, &x, "D{a,b,c}(p@a & p@b & ~p@c)"));
    assert!(!holds(&m, &x, "D{a,b,c}(p@a & p@b & p@c)"));
    assert!(!holds(&m, &x, "D{c} ~p@c"));
    assert!(holds(&m, &x, "~D{c} ~p@c"));
}

/// Classical negation of an absent agent's atom is true; the prose reading
/// that calls it false is not what the satisfaction clauses give.
#[test]
fn version2_not_p_c_at_x_prime_is_true_known_discrepancy() {
    assert!(holds(&silent_guest(), &["va", "vb"], "~p@c"));
}

#[test]
fn version3_pairwise_only() {
    let m = pairwise_only();
    for (x, g) in [(["va", "vb"], "a,b"), (["va", "vc"], "a,c"), (["vb", "vc"], "b,c")] {
        let (l, r) = (&g[..1], &g[2..]);
        assert!(holds(&m, &x, &format!("D{{{g}}}(p@{l} & p@{r})")));
        assert!(!holds(&m, &x, "D{a,b,c}(p@a & p@b & p@c)"));
    }
}

#[test]
fn version4_linked_pair() {
    let m = linked_pair();
    let x = ["v1", "v2", "v3"];
    let y = ["v1", "v4", "v5"];
    assert!(holds(&m, &x, "D{a,b,c}(p@a & p@b & p@c)"));
    assert!(holds(&m, &y, "D{a,b,c}(p@a & ~p@b & ~p@c)"));
    assert!(holds(&m, &x, "D{a} p@a"));
    assert!(holds(&m, &y, "D{a} p@a"));
}

#[test]
fn version5_conditional_pair() {
    let m = conditional_pair();
    assert!(!holds(&m, &["v1", "v4"], "D{a,b,c}(p@a & p@b & ~p@c)"));
    assert!(!holds(&m, &["v1", "v4", "v5"], "D{a,b}(p@a & p@b & ~p@c)"));
}

#[test]
fn version6_undecided_guest() {
    let m = undecided_guest();
    assert!(holds(&m, &["v1", "v2", "v3"], "D{a,c}(p@a & p@c)"));
    assert!(holds(&m, &["v1", "v3", "v4"], "D{a,c}(p@a & p@c)"));
    assert!(holds(&m, &["v1", "v3"], "D{a,c}(p@a & p@c)"));
    assert!(!holds(&m, &["v1", "v3"], "D{a,b,c}(p@a & p@b & p@c)"));
}

#[test]
fn four_configurations_need_both_agents() {
    let m = four_configurations();
    let x = ["v1", "v2", "v3"];
    assert!(holds(&m, &x, "D{a,b}(p@a & p@b)"));
    assert!(!holds(&m, &x, "D{a}(p@a & p@b)"));
    assert!(!holds(&m, &x, "D{b}(p@a & p@b)"));
}

#[test]
fn atom_fails_where_owner_is_absent() {
    let m = joint_attendance();
    let verdicts = CheckContext::new(m.clone()).verdicts(&"p@a".parse().unwrap()).unwrap();
    let vb = m.face(&["vb"]).unwrap();
    assert!(!verdicts[m.face_index(&vb).unwrap()]);
    assert!(!CheckContext::new(m).valid_in_model(&"p@a".parse().unwrap()).unwrap());
}

#[test]
fn truth_constants_everywhere() {
    for (_, m) in models() {
        let ctx = CheckContext::new(m);
        assert!(ctx.verdicts(&"true".parse().unwrap()).unwrap().iter().all(|b| *b));
        assert!(ctx.verdicts(&"false".parse().unwrap()).unwrap().iter().all(|b| !*b));
    }
}

/// The atom used to spell falsum does not matter.
#[test]
fn falsum_matches_any_contradiction() {
    for (_, m) in models() {
        let ctx = CheckContext::new(m.clone());
        let bot = ctx.verdicts(&Formula::bottom()).unwrap();
        for a in m.agents() {
            let p = Formula::prop("p", a.as_str());
            let contra = Formula::and(p.clone(), Formula::not(p));
            assert_eq!(bot, ctx.verdicts(&contra).unwrap());
        }
    }
}

#[test]
fn face_counts_and_colors() {
    assert_eq!(pairwise_only().face_count(), 6);
    assert_eq!(undecided_guest().face_count(), 11);
    assert_eq!(linked_pair().face_count(), 13);
    let m = silent_guest();
    assert!(!m.is_pure());
    assert_eq!(m.dimension(), 1);
    let x = m.face(&["va", "vb"]).unwrap();
    let colors: Vec<String> = m.color_set(&x).unwrap().iter().map(|a| a.to_string()).collect();
    assert_eq!(colors, ["a", "b"]);
    let labels: Vec<String> = m.label_set(&x).unwrap().iter().map(|p| p.to_string()).collect();
    assert_eq!(labels, ["p@a", "p@b"]);
}

#[test]
fn hexagonal_fan_star_and_link() {
    let m = hexagonal_fan();
    let v = m.face(&["v"]).unwrap();
    assert_eq!(m.star(&v).unwrap().facets().len(), 6);
    let link = m.link(&v).unwrap();
    assert_eq!(link.facets().len(), 6);
    assert!(link.facets().iter().all(|f| f.len() == 2));
    assert_eq!(link.vertices().len(), 6);
    let facet = m.face(&["v", "r0", "r1"]).unwrap();
    assert!(matches!(m.link(&facet), Err(ddsl::Error::EmptyResult)));
}

#[test]
fn linked_pair_star_and_link_of_host() {
    let m = linked_pair();
    let v1 = m.face(&["v1"]).unwrap();
    assert_eq!(m.star(&v1).unwrap().facets().len(), 2);
    let link = m.link(&v1).unwrap();
    let want: BTreeSet<Vec<String>> = [vec!["v2", "v3"], vec!["v4", "v5"]]
        .into_iter()
        .map(|f| f.into_iter().map(String::from).collect())
        .collect();
    assert_eq!(facet_ids(&link), want);
}

#[test]
fn linked_pair_dot_shape() {
    let dot = to_dot(&linked_pair(), "linked_pair");
    assert_eq!(dot.matches("xlabel=").count(), 5);
    assert_eq!(dot.matches(" -- ").count(), 6);
    assert_eq!(dot.matches("// facet").count(), 2);
}

#[test]
fn simple_choice_makes_everyone_commit() {
    let m = undecided_guest();
    assert!(holds_with(&m, "U", simple_choice(), &["v1", "v2", "v3"], "[U.X'] D{a,b,c}(p@a & p@b & p@c)"));
    let ctx = CheckContext::new(m);
    let Product::Updated(p) = product_update(&ctx, &simple_choice()).unwrap() else {
        panic!("nonempty product expected");
    };
    assert_eq!(p.facets().len(), 1);
    assert_eq!(p.facets()[0].len(), 3);
    let labels: Vec<String> = p.label_set(&p.facets()[0]).unwrap().iter().map(|l| l.to_string()).collect();
    assert_eq!(labels, ["p@a", "p@b", "p@c"]);
}

#[test]
fn ghosting_leaves_one_edge() {
    let m = undecided_guest();
    assert!(holds_with(&m, "G", ghosting(), &["v1", "v3"], "[G.G] D{a,c}(p@a & p@c)"));
    let Product::Updated(p) = product_update(&CheckContext::new(m), &ghosting()).unwrap() else {
        panic!("nonempty product expected");
    };
    assert_eq!(p.facets().len(), 1);
    assert_eq!(p.face_ids(&p.facets()[0]), ["v1/gamma_c", "v3/gamma_a"]);
}

#[test]
fn partial_disagreement_splits_off_b() {
    let m = undecided_guest();
    let Product::Updated(p) = product_update(&CheckContext::new(m), &partial_disagreement()).unwrap() else {
        panic!("nonempty product expected");
    };
    let want: BTreeSet<Vec<String>> = [vec!["v1/beta_c", "v3/beta_a"], vec!["v4/beta_b"]]
        .into_iter()
        .map(|f| f.into_iter().map(String::from).collect())
        .collect();
    assert_eq!(facet_ids(&p), want);
    assert!(holds(&p, &["v4/beta_b"], "D{b} ~p@b"));
}

/// At `X` the `b` event's commitment `~p@b` fails, so `(X, AC ∪ B)` has no
/// match and the box over the joint action is vacuously true there.
#[test]
fn partial_disagreement_box_is_vacuous_when_unmatched() {
    let m = undecided_guest();
    assert!(holds_with(
        &m,
        "P",
        partial_disagreement(),
        &["v1", "v2", "v3"],
        "[P.AC] D{a,b,c}(p@a & p@c & ~p@b)"
    ));
}
