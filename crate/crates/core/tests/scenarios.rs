//! Scenario regressions. Values marked "oracle" were computed independently
//! with a sympy implementation of the same conventions.

use std::collections::{BTreeMap, BTreeSet};

use stableforms::catalog::{
    algebra, g2_a46_branch, g2_incompatibility_check, list_scenarios, run_scenario, scenario, CatalogError,
    SCENARIO_IDS,
};
use stableforms::exterior::{cediff, generic_two_form};
use stableforms::linalg::Matrix;
use stableforms::scalars::{parse_scalar, Scalar, Symbol};
use stableforms::stable_forms::hitchin_lambda;

fn s(text: &str) -> Scalar {
    parse_scalar(text).unwrap()
}

fn run(id: &str) -> stableforms::catalog::ScenarioReport {
    run_scenario(id, &BTreeMap::new()).unwrap()
}

#[test]
fn thirteen_stable_ids() {
    assert_eq!(list_scenarios(), SCENARIO_IDS.to_vec());
    assert!(list_scenarios().contains(&"g1_opt2_case1"));
    assert!(list_scenarios().contains(&"g4_a56zero"));
    assert_eq!(
        run_scenario("nope", &BTreeMap::new()).unwrap_err(),
        CatalogError::UnknownScenario("nope".into())
    );
}

#[test]
fn structure_scenarios_are_half_flat_and_compatible() {
    for id in &SCENARIO_IDS[..8] {
        let r = run(id);
        for item in ["half_flat", "nondegeneracy", "omega_anti_invariant", "nijenhuis_nonzero", "K_traceless"] {
            assert!(r.item(item).unwrap().matched, "{id}/{item}");
        }
        let a = r.analysis.unwrap();
        let pair = a.pair.unwrap();
        assert!(pair.compatible && pair.half_flat, "{id}");
        assert!(a.curvature.unwrap().ricci.is_symmetric(), "{id}");
    }
}

#[test]
fn mismatches_are_exactly_the_known_ones() {
    let mut found = BTreeSet::new();
    for id in list_scenarios() {
        for c in run(id).comparisons.iter().filter(|c| !c.matched) {
            found.insert(format!("{id}/{}", c.item));
        }
    }
    let known: BTreeSet<String> = [
        "g4_general/scalar_curvature[a46^2-a56^2>0]",
        "g4_general/scalar_curvature[a46^2-a56^2<0]",
        "g4_a56zero/ricci_operator",
        "g2_closed_degeneracy/closed_degeneracy",
        "g5_closed_degeneracy/closed_degeneracy",
        "g5_closed_degeneracy/wedge_conditions",
    ]
    .into_iter()
    .map(String::from)
    .collect();
    assert_eq!(found, known);
}

#[test]
fn g1_second_option_cases_share_scalar_curvature() {
    let r1 = run("g1_opt2_case1").analysis.unwrap().curvature.unwrap().scalar;
    let r2 = run("g1_opt2_case2").analysis.unwrap().curvature.unwrap().scalar;
    assert_eq!(r1, r2);
    assert_eq!(r1, s("(8*a56^7*a13-8*a56^6*a46*a14-1)/(a14^2*a56)"));
    // the para-complex case follows the (a46^4 - 1) substitution of the complex one
    assert!(run("g1_opt2_case2").item("J").unwrap().matched);
}

#[test]
fn g1_zero_scalar_curvature_substitution() {
    let a13 = Symbol::intern("a13").unwrap();
    let subs = BTreeMap::from([(a13, s("(a46^8+8*a56^6*a46*a14)/(8*a56^7)"))]);
    let r = run_scenario("g1_opt1", &subs).unwrap();
    assert_eq!(r.item("scalar_curvature").unwrap().actual, "0");
    assert!(r.item("scalar_curvature").unwrap().matched);
    let curv = r.analysis.unwrap().curvature.unwrap();
    assert!(curv.scalar.is_zero() && !curv.ricci.is_zero());
}

#[test]
fn oracle_generic_lambda_of_g1() {
    let d = cediff(&algebra("g1").unwrap(), &generic_two_form(6)).unwrap();
    assert_eq!(
        hitchin_lambda(&d).unwrap(),
        s("a46^4+4*a16*a56^3+4*a35*a56^3+4*a36^2*a56^2-4*a36*a46^2*a56-4*a45*a46*a56^2")
    );
}

#[test]
fn oracle_g4_curvature() {
    let r = run("g4_general");
    let canonical = r.analysis.unwrap().curvature.unwrap().scalar;
    assert_eq!(canonical, s("-(a46^2-a56^2)/(a13*(a24*a56-a25*a46))"));

    let a = run("g4_a56zero").analysis.unwrap();
    let zero: BTreeMap<Symbol, Scalar> =
        ["a14", "a24"].iter().map(|n| (Symbol::intern(n).unwrap(), Scalar::zero())).collect();
    let op = a.curvature.unwrap().ricci_op.try_map(|x| x.substitute(&zero)).unwrap();
    let c = s("a46/(2*a13*a25)");
    let expected = Matrix::diagonal(&[1, 1, 1, -1, 1, -1].map(|k| c.scale_int(k)));
    assert_eq!(op, expected);
}

#[test]
fn oracle_g5_wedge_condition() {
    let l = algebra("g5").unwrap();
    let w = generic_two_form(6);
    let conditions: Vec<Scalar> = w
        .wedge(&cediff(&l, &w).unwrap())
        .unwrap()
        .terms()
        .map(|(_, c)| c.clone())
        .collect();
    assert!(conditions.contains(&s("-a34*a56+a35*a46-a36*a45")));
}

#[test]
fn g2_weakenings() {
    assert!(g2_incompatibility_check());
    let w = g2_a46_branch().unwrap();
    let ratio = w.pfaffian.checked_div(&s("a15*a23*a46")).unwrap();
    assert!(ratio.is_constant() && !ratio.is_zero());
    assert!(w.solution[&Symbol::intern("a13").unwrap()].is_zero());
    assert!(w.solution[&Symbol::intern("a34").unwrap()].is_zero());
}

#[test]
fn constrained_forms_satisfy_the_pair_conditions() {
    for id in &SCENARIO_IDS[..8] {
        let sc = scenario(id).unwrap();
        let omega = sc.constrained_omega().unwrap();
        let d = cediff(&sc.algebra, &omega).unwrap();
        assert!(omega.wedge(&d).unwrap().is_zero(), "{id}");
        for c in &sc.nondegeneracy_assumptions {
            assert!(!c.is_zero(), "{id}");
        }
    }
}
