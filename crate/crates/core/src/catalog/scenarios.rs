//! The published (ω, dω) constructions on g1..g5, each with the values it
//! is expected to reproduce, and a runner that recomputes everything and
//! compares item by item.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use super::algebras::algebra;
use crate::curvature::{associated_metric, curvature, metric_compatible, torsion_free, CurvatureError};
use crate::exterior::{
    cediff, closed_family, generic_two_form, is_nondegenerate2, parse_form, two_form_cube, ExteriorError, Form,
    MultiIndex,
};
use crate::lie_algebra::{LieAlg, Subspace};
use crate::linalg::{solve_linear, LinalgError, Matrix};
use crate::pipeline::{analyze, Analysis, Failure, Options};
use crate::scalars::{parse_scalar, Point, Scalar, ScalarError, Symbol};
use crate::stable_forms::{hitchin_lambda, StableError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("unknown scenario `{0}`")]
    UnknownScenario(String),
    #[error("{0}")]
    Pipeline(Failure),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    Exterior(#[from] ExteriorError),
    #[error(transparent)]
    Stable(#[from] StableError),
    #[error(transparent)]
    Curvature(#[from] CurvatureError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

pub type Subs = Vec<(Symbol, Scalar)>;

#[derive(Debug, Clone)]
pub struct Scenario {
    pub id: &'static str,
    pub algebra_id: &'static str,
    pub algebra: LieAlg,
    /// The ω family before any constraint is imposed.
    pub omega: Form,
    /// Solutions of `ω ∧ dω = 0`, applied simultaneously.
    pub constraints: Subs,
    /// A further choice of parameters made after the constraints.
    pub specialization: Subs,
    pub nondegeneracy_assumptions: Vec<Scalar>,
    pub expected: Expected,
}

#[derive(Debug, Clone)]
pub enum Expected {
    Structure(Box<StructureExpected>),
    ClosedForms(ClosedExpected),
}

/// Scalar curvature as printed: either an exact field element, or
/// `|abs_arg| * factor`, which is checked separately on each sign branch.
#[derive(Debug, Clone)]
pub enum ScalarExpected {
    Exact(Scalar),
    AbsBranches { abs_arg: Scalar, factor: Scalar },
}

#[derive(Debug, Clone, Default)]
pub struct StructureExpected {
    pub omega: Option<Form>,
    pub d_omega: Option<Form>,
    /// `λ` before the specialization.
    pub family_lambda: Option<Scalar>,
    pub lambda: Option<Scalar>,
    pub k: Option<Matrix>,
    pub j: Option<Matrix>,
    pub eps: i32,
    pub eigen: Option<(Vec<Vec<Scalar>>, Vec<Vec<Scalar>>)>,
    pub metric: Option<Matrix>,
    /// Ricci operator after the given substitutions.
    pub ricci: Option<(Subs, Matrix)>,
    pub scalar: Option<ScalarExpected>,
    /// A substitution that makes the scalar curvature vanish with `Ric != 0`.
    pub scalar_zero: Option<Subs>,
    pub einstein: Option<bool>,
    pub signature: Option<(usize, usize)>,
}

#[derive(Debug, Clone)]
pub struct ClosedExpected {
    /// The closed 2-forms, as a family in the free coefficients.
    pub family: Form,
    /// Whether every closed form is stated to be degenerate.
    pub degenerate: bool,
    /// `λ(dω)` for the generic ω.
    pub generic_lambda: Option<Scalar>,
    /// The printed `ω ∧ dω = 0` system for the generic ω.
    pub conditions: Vec<Scalar>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Comparison {
    pub item: String,
    pub matched: bool,
    pub expected: String,
    pub actual: String,
}

#[derive(Debug, Clone)]
pub struct ScenarioReport {
    pub id: String,
    pub algebra_id: String,
    /// Pipeline output for structure scenarios.
    pub analysis: Option<Analysis>,
    /// The solved closed family for degeneracy checks.
    pub closed_family: Option<Form>,
    pub comparisons: Vec<Comparison>,
}

impl ScenarioReport {
    pub fn all_match(&self) -> bool {
        self.comparisons.iter().all(|c| c.matched)
    }

    pub fn first_mismatch(&self) -> Option<&Comparison> {
        self.comparisons.iter().find(|c| !c.matched)
    }

    pub fn item(&self, name: &str) -> Option<&Comparison> {
        self.comparisons.iter().find(|c| c.item == name)
    }

    pub fn items_with_prefix<'a>(&'a self, prefix: &'a str) -> impl Iterator<Item = &'a Comparison> + 'a {
        self.comparisons.iter().filter(move |c| c.item.starts_with(prefix))
    }
}

pub const SCENARIO_IDS: [&str; 13] = [
    "g1_opt1",
    "g1_opt2_case1",
    "g1_opt2_case2",
    "g2_main",
    "g3_main",
    "g4_general",
    "g4_a56zero",
    "g5_main",
    "g1_closed_degeneracy",
    "g2_closed_degeneracy",
    "g3_closed_degeneracy",
    "g4_closed_degeneracy",
    "g5_closed_degeneracy",
];

pub fn list_scenarios() -> Vec<&'static str> {
    SCENARIO_IDS.to_vec()
}

fn s(text: &str) -> Scalar {
    parse_scalar(text).expect("catalog scalar literal")
}

fn form(text: &str) -> Form {
    parse_form(text, 6).expect("catalog form literal")
}

fn sym(name: &str) -> Symbol {
    Symbol::intern(name).expect("catalog symbol")
}

fn subs(pairs: &[(&str, &str)]) -> Subs {
    pairs.iter().map(|(k, v)| (sym(k), s(v))).collect()
}

fn mat(rows: &[[&str; 6]; 6]) -> Matrix {
    Matrix::from_rows(rows.iter().map(|r| r.iter().map(|x| s(x)).collect()).collect())
}

fn diag(factor: &str, signs: [i64; 6]) -> Matrix {
    let f = s(factor);
    Matrix::diagonal(&signs.map(|c| f.scale_int(c)))
}

/// Vectors written as 1-form literals, e.g. `a56*e1 + a46*e3`.
fn vecs(items: &[&str]) -> Vec<Vec<Scalar>> {
    items
        .iter()
        .map(|t| {
            let f = form(t);
            (1..=6).map(|i| f.coeff_of(&[i])).collect()
        })
        .collect()
}

fn algebra_of(id: &str) -> LieAlg {
    algebra(id).expect("catalog algebra")
}

// Closed 2-form families (with any free coefficient left symbolic).
const G1_CLOSED: &str = "a12*e12+a13*e13+a14*e14+a15*e15+a23*e23+a15*e24+a25*e25-a25*e34";
const G2_CLOSED: &str = "a12*e12+a13*e13+a14*e14+a15*e15+a23*e23-a34*e25+a34*e34";
const G3_CLOSED: &str = "a12*e12+a13*e13+a14*e14+a15*e15+a23*e23+a24*e24+a25*e25+a25*e34+a35*e35";
const G4_CLOSED: &str = "a12*e12+a13*e13+a14*e14+a15*e15+a23*e23+a24*e24+a25*e25-a15*e34+a35*e35";
const G5_CLOSED: &str = "a12*e12+a13*e13+a14*e14+a15*e15+a23*e23+a24*e24+a25*e25+a34*e34";

fn with_terms(base: &str, extra: &str) -> Form {
    form(&format!("{base}+{extra}"))
}

/// The almost complex / para-complex structure of the g1 second option,
/// written through `t = a46^4 + 1` (λ = -1) or `t = a46^4 - 1` (λ = 1).
fn g1_opt2_structure(t: &str) -> Matrix {
    let rows = [
        ["-a46^2", "-2*a46*a56", "-2*a56^2", "0", "0", "0"],
        ["T/(2*a46*a56)", "a46^2", "2*a46*a56", "2*a56^2", "0", "0"],
        ["0", "0", "-a46^2", "-2*a46*a56", "0", "0"],
        ["0", "0", "T/(2*a46*a56)", "a46^2", "0", "0"],
        ["0", "0", "-T/(2*a56^2)", "-T/(2*a46*a56)", "a46^2", "2*a56^2"],
        ["0", "0", "T^2/(8*a46^2*a56^4)", "0", "-T/(2*a56^2)", "-a46^2"],
    ];
    let t = format!("({t})");
    Matrix::from_rows(
        rows.iter()
            .map(|r| r.iter().map(|x| s(&x.replace('T', &t))).collect())
            .collect(),
    )
}

fn g1_opt1() -> Scenario {
    let r = "(8*a13*a56^7-8*a14*a46*a56^6-a46^8)/(a14^2*a46^6*a56)";
    Scenario {
        id: "g1_opt1",
        algebra_id: "g1",
        algebra: algebra_of("g1"),
        omega: with_terms(G1_CLOSED, "a46*e46+a56*e56"),
        constraints: subs(&[("a15", "0"), ("a25", "0"), ("a12", "a13*a46/a56"), ("a23", "-a14")]),
        specialization: vec![],
        nondegeneracy_assumptions: vec![s("a14*a56")],
        expected: Expected::Structure(Box::new(StructureExpected {
            omega: Some(form("a13*a46/a56*e12+a13*e13+a14*e14-a14*e23+a46*e46+a56*e56")),
            d_omega: Some(form("-a46*e136+a46*e245-a56*e146-a56*e236+a56*e345")),
            lambda: Some(s("a46^4")),
            k: Some(mat(&[
                ["-a46^2", "-2*a46*a56", "-2*a56^2", "0", "0", "0"],
                ["0", "a46^2", "2*a46*a56", "2*a56^2", "0", "0"],
                ["0", "0", "-a46^2", "-2*a46*a56", "0", "0"],
                ["0", "0", "0", "a46^2", "0", "0"],
                ["0", "0", "0", "0", "a46^2", "2*a56^2"],
                ["0", "0", "0", "0", "0", "-a46^2"],
            ])),
            eps: 1,
            eigen: Some((
                vecs(&["a56^3*e1-a56*a46^2*e3+a46^3*e4", "-a56*e1+a46*e2", "e5"]),
                vecs(&["e1", "-a56*e2+a46*e3", "-a56^2*e5+a46^2*e6"]),
            )),
            metric: Some(mat(&[
                ["0", "a13*a46/a56", "a13", "a14", "0", "0"],
                ["a13*a46/a56", "2*a13", "(2*a13*a56+a14*a46)/a46", "2*a14*a56/a46", "0", "0"],
                [
                    "a13",
                    "(2*a13*a56+a14*a46)/a46",
                    "2*a56*(a13*a56+a14*a46)/a46^2",
                    "2*a14*a56^2/a46^2",
                    "0",
                    "0",
                ],
                ["a14", "2*a14*a56/a46", "2*a14*a56^2/a46^2", "0", "0", "-a46"],
                ["0", "0", "0", "0", "0", "-a56"],
                ["0", "0", "0", "-a46", "-a56", "-2*a56^3/a46^2"],
            ])),
            scalar: Some(ScalarExpected::Exact(s(r))),
            scalar_zero: Some(subs(&[("a13", "(a46^8+8*a56^6*a46*a14)/(8*a56^7)")])),
            einstein: Some(false),
            signature: Some((3, 3)),
            ..Default::default()
        })),
    }
}

fn g1_opt2(case: u8) -> Scenario {
    let (id, a45, lambda, t, eps, signature) = match case {
        1 => ("g1_opt2_case1", "(a46^4+1)/(4*a46*a56^2)", "-1", "1+a46^4", -1, (2, 4)),
        _ => ("g1_opt2_case2", "(a46^4-1)/(4*a46*a56^2)", "1", "a46^4-1", 1, (3, 3)),
    };
    let r = "(8*a56^7*a13-8*a56^6*a46*a14-1)/(a14^2*a56)";
    Scenario {
        id,
        algebra_id: "g1",
        algebra: algebra_of("g1"),
        omega: with_terms(G1_CLOSED, "a45*e45+a46*e46+a56*e56"),
        constraints: subs(&[("a25", "0"), ("a15", "0"), ("a12", "a13*a46/a56"), ("a23", "-a14")]),
        specialization: subs(&[("a45", a45)]),
        nondegeneracy_assumptions: vec![s("a14*a56")],
        expected: Expected::Structure(Box::new(StructureExpected {
            omega: Some(form("a13*a46/a56*e12+a13*e13+a14*e14-a14*e23+a45*e45+a46*e46+a56*e56")),
            d_omega: Some(form(
                "a45*e234-a45*e135-a46*e136+a46*e245-a56*e146-a56*e236+a56*e345",
            )),
            family_lambda: Some(s("a46^4-4*a46*a45*a56^2")),
            lambda: Some(s(lambda)),
            j: Some(g1_opt2_structure(t)),
            eps,
            scalar: Some(ScalarExpected::Exact(s(r))),
            scalar_zero: (case == 1).then(|| subs(&[("a13", "(1+8*a56^6*a46*a14)/(8*a56^7)")])),
            einstein: Some(false),
            signature: Some(signature),
            ..Default::default()
        })),
    }
}

fn g2_main() -> Scenario {
    Scenario {
        id: "g2_main",
        algebra_id: "g2",
        algebra: algebra_of("g2"),
        omega: with_terms(G2_CLOSED, "a46*e46"),
        constraints: subs(&[("a13", "0"), ("a34", "0")]),
        specialization: vec![],
        nondegeneracy_assumptions: vec![s("a23*a15*a46")],
        expected: Expected::Structure(Box::new(StructureExpected {
            omega: Some(form("a12*e12+a14*e14+a15*e15+a23*e23+a46*e46")),
            d_omega: Some(form("a46*(-e136+e245)")),
            lambda: Some(s("a46^4")),
            k: Some(diag("a46^2", [-1, 1, -1, 1, 1, -1])),
            eps: 1,
            eigen: Some((vecs(&["e2", "e4", "e5"]), vecs(&["e1", "e3", "e6"]))),
            metric: Some(mat(&[
                ["0", "a12", "0", "a14", "a15", "0"],
                ["a12", "0", "-a23", "0", "0", "0"],
                ["0", "-a23", "0", "0", "0", "0"],
                ["a14", "0", "0", "0", "0", "-a46"],
                ["a15", "0", "0", "0", "0", "0"],
                ["0", "0", "0", "-a46", "0", "0"],
            ])),
            ricci: Some((subs(&[("a14", "0")]), diag("a46/(2*a15*a23)", [-1, -1, -1, 1, -1, 1]))),
            signature: Some((3, 3)),
            ..Default::default()
        })),
    }
}

fn g3_main() -> Scenario {
    Scenario {
        id: "g3_main",
        algebra_id: "g3",
        algebra: algebra_of("g3"),
        omega: with_terms(G3_CLOSED, "a46*e46"),
        constraints: subs(&[("a12", "0"), ("a25", "0"), ("a35", "0")]),
        specialization: vec![],
        nondegeneracy_assumptions: vec![s("a15*a23*a46")],
        expected: Expected::Structure(Box::new(StructureExpected {
            omega: Some(form("a13*e13+a14*e14+a15*e15+a23*e23+a24*e24+a46*e46")),
            d_omega: Some(form("-a46*(e126+e345)")),
            lambda: Some(s("a46^4")),
            k: Some(diag("a46^2", [-1, -1, 1, 1, 1, -1])),
            eps: 1,
            eigen: Some((vecs(&["e3", "e4", "e5"]), vecs(&["e1", "e2", "e6"]))),
            metric: Some(mat(&[
                ["0", "0", "a13", "a14", "a15", "0"],
                ["0", "0", "a23", "a24", "0", "0"],
                ["a13", "a23", "0", "0", "0", "0"],
                ["a14", "a24", "0", "0", "0", "-a46"],
                ["a15", "0", "0", "0", "0", "0"],
                ["0", "0", "0", "-a46", "0", "0"],
            ])),
            ricci: Some((
                subs(&[("a14", "0"), ("a24", "0")]),
                diag("a46/(2*a15*a23)", [-1, -1, -1, 1, -1, 1]),
            )),
            signature: Some((3, 3)),
            ..Default::default()
        })),
    }
}

fn g4_general() -> Scenario {
    let k = "a46^2";
    let m = "a56^2";
    let mut kmat = Matrix::diagonal(&[
        s(&format!("-{k}-{m}")),
        s(&format!("-{k}+{m}")),
        s(&format!("{k}+{m}")),
        s(&format!("{k}-{m}")),
        s(&format!("{k}-{m}")),
        s(&format!("-{k}+{m}")),
    ]);
    kmat[(0, 2)] = s("2*a46*a56");
    kmat[(2, 0)] = s("-2*a46*a56");
    Scenario {
        id: "g4_general",
        algebra_id: "g4",
        algebra: algebra_of("g4"),
        omega: with_terms(G4_CLOSED, "a46*e46+a56*e56"),
        constraints: subs(&[
            ("a12", "a23*a56/a46"),
            ("a15", "a14*a56/a46"),
            ("a35", "-a14*a56^2/a46^2"),
        ]),
        specialization: vec![],
        nondegeneracy_assumptions: vec![s("a46*a56"), s("a13*(a24*a56-a25*a46)")],
        expected: Expected::Structure(Box::new(StructureExpected {
            d_omega: Some(form("(a56*e1-a46*e3)*e45+(-a46*e1+a56*e3)*e26")),
            lambda: Some(s("(a46^2-a56^2)^2")),
            k: Some(kmat),
            eps: 1,
            eigen: Some((
                vecs(&["a56*e1+a46*e3", "e4", "e5"]),
                vecs(&["a46*e1+a56*e3", "e2", "e6"]),
            )),
            scalar: Some(ScalarExpected::AbsBranches {
                abs_arg: s("a46^2-a56^2"),
                factor: s("1/(a13*(a24*a56-a25*a46))"),
            }),
            einstein: Some(false),
            signature: Some((3, 3)),
            ..Default::default()
        })),
    }
}

fn g4_a56zero() -> Scenario {
    Scenario {
        id: "g4_a56zero",
        algebra_id: "g4",
        algebra: algebra_of("g4"),
        omega: with_terms(G4_CLOSED, "a46*e46"),
        constraints: subs(&[("a12", "0"), ("a15", "0"), ("a35", "0")]),
        specialization: vec![],
        nondegeneracy_assumptions: vec![s("a13*a25*a46")],
        expected: Expected::Structure(Box::new(StructureExpected {
            omega: Some(form("a13*e13+a14*e14+a23*e23+a24*e24+a25*e25+a46*e46")),
            d_omega: Some(form("-a46*e126-a46*e345")),
            lambda: Some(s("a46^4")),
            k: Some(diag("a46^2", [-1, -1, 1, 1, 1, -1])),
            eps: 1,
            eigen: Some((vecs(&["e3", "e4", "e5"]), vecs(&["e1", "e2", "e6"]))),
            metric: Some(mat(&[
                ["0", "0", "a13", "a14", "0", "0"],
                ["0", "0", "a23", "a24", "a25", "0"],
                ["a13", "a23", "0", "0", "0", "0"],
                ["a14", "a24", "0", "0", "0", "-a46"],
                ["0", "a25", "0", "0", "0", "0"],
                ["0", "0", "0", "-a46", "0", "0"],
            ])),
            ricci: Some((
                subs(&[("a14", "0"), ("a24", "0")]),
                diag("a46/(2*a25*a23)", [-1, -1, -1, 1, -1, 1]),
            )),
            einstein: Some(false),
            signature: Some((3, 3)),
            ..Default::default()
        })),
    }
}

fn g5_main() -> Scenario {
    Scenario {
        id: "g5_main",
        algebra_id: "g5",
        algebra: algebra_of("g5"),
        omega: with_terms(G5_CLOSED, "a56*e56"),
        constraints: subs(&[("a34", "0"), ("a12", "0")]),
        specialization: vec![],
        nondegeneracy_assumptions: vec![s("a56*(a13*a24-a14*a23)")],
        expected: Expected::Structure(Box::new(StructureExpected {
            omega: Some(form("a13*e13+a14*e14+a15*e15+a23*e23+a24*e24+a25*e25+a56*e56")),
            d_omega: Some(form("-a56*e126+a56*e345")),
            lambda: Some(s("a56^4")),
            k: Some(diag("a56^2", [1, 1, -1, -1, -1, 1])),
            eps: 1,
            eigen: Some((vecs(&["e1", "e2", "e6"]), vecs(&["e3", "e4", "e5"]))),
            metric: Some(mat(&[
                ["0", "0", "-a13", "-a14", "-a15", "0"],
                ["0", "0", "-a23", "-a24", "-a25", "0"],
                ["-a13", "-a23", "0", "0", "0", "0"],
                ["-a14", "-a24", "0", "0", "0", "0"],
                ["-a15", "-a25", "0", "0", "0", "a56"],
                ["0", "0", "0", "0", "a56", "0"],
            ])),
            ricci: Some((
                subs(&[("a15", "0"), ("a25", "0")]),
                diag("a56/(2*a13*a24-2*a14*a23)", [-1, -1, -1, -1, 1, 1]),
            )),
            signature: Some((3, 3)),
            ..Default::default()
        })),
    }
}

fn closed_scenario(id: &'static str, algebra_id: &'static str, closed: ClosedExpected) -> Scenario {
    Scenario {
        id,
        algebra_id,
        algebra: algebra_of(algebra_id),
        omega: generic_two_form(6),
        constraints: vec![],
        specialization: vec![],
        nondegeneracy_assumptions: vec![],
        expected: Expected::ClosedForms(closed),
    }
}

fn closed_degeneracy(n: u8) -> Scenario {
    match n {
        1 => closed_scenario(
            "g1_closed_degeneracy",
            "g1",
            ClosedExpected {
                family: form(G1_CLOSED),
                degenerate: true,
                generic_lambda: None,
                conditions: vec![],
            },
        ),
        2 => closed_scenario(
            "g2_closed_degeneracy",
            "g2",
            ClosedExpected {
                family: form(G2_CLOSED),
                degenerate: false,
                generic_lambda: Some(s("(a46^2-2*a36*a56)^2")),
                conditions: vec![],
            },
        ),
        3 => closed_scenario(
            "g3_closed_degeneracy",
            "g3",
            ClosedExpected {
                family: form(G3_CLOSED),
                degenerate: true,
                generic_lambda: Some(s("a46^4")),
                conditions: vec![
                    s("a12*a46-a14*a26-a23*a56+a24*a16+a25*a36-a35*a26"),
                    s("a25*a46-a24*a56-a26*a45"),
                    s("a35*a46-a36*a45-a34*a56"),
                ],
            },
        ),
        4 => closed_scenario(
            "g4_closed_degeneracy",
            "g4",
            ClosedExpected {
                family: form(G4_CLOSED),
                degenerate: true,
                generic_lambda: Some(s("(a46^2-a56^2)^2")),
                conditions: vec![
                    s("-a12*a46+a14*a26-a16*a24+a23*a56-a25*a36+a26*a35"),
                    s("-a14*a56+a15*a46-a16*a45"),
                    s("a34*a56-a35*a46+a36*a45"),
                ],
            },
        ),
        _ => closed_scenario(
            "g5_closed_degeneracy",
            "g5",
            ClosedExpected {
                family: form(G5_CLOSED),
                degenerate: false,
                generic_lambda: Some(s("a56^4")),
                conditions: vec![
                    s("a34*a56+a35*a46-a36*a45"),
                    s("a12*a56-a15*a26+a16*a25-a23*a46+a24*a36-a26*a34"),
                ],
            },
        ),
    }
}

pub fn scenario(id: &str) -> Result<Scenario, CatalogError> {
    Ok(match id {
        "g1_opt1" => g1_opt1(),
        "g1_opt2_case1" => g1_opt2(1),
        "g1_opt2_case2" => g1_opt2(2),
        "g2_main" => g2_main(),
        "g3_main" => g3_main(),
        "g4_general" => g4_general(),
        "g4_a56zero" => g4_a56zero(),
        "g5_main" => g5_main(),
        "g1_closed_degeneracy" => closed_degeneracy(1),
        "g2_closed_degeneracy" => closed_degeneracy(2),
        "g3_closed_degeneracy" => closed_degeneracy(3),
        "g4_closed_degeneracy" => closed_degeneracy(4),
        "g5_closed_degeneracy" => closed_degeneracy(5),
        _ => return Err(CatalogError::UnknownScenario(id.to_string())),
    })
}

fn to_map(s: &Subs) -> BTreeMap<Symbol, Scalar> {
    s.iter().cloned().collect()
}

impl Scenario {
    /// ω with the constraints and the specialization applied.
    pub fn constrained_omega(&self) -> Result<Form, ScalarError> {
        self.omega
            .substitute(&to_map(&self.constraints))?
            .substitute(&to_map(&self.specialization))
    }
}

/// Display helpers shared by comparison lines and reports.
pub fn format_matrix(m: &Matrix) -> String {
    let rows: Vec<String> = m.to_strings().iter().map(|r| r.join(", ")).collect();
    format!("[{}]", rows.join("; "))
}

pub fn format_vector(v: &[Scalar]) -> String {
    let terms = v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| {
        (MultiIndex::from_indices(&[i]).expect("single index"), x.clone())
    });
    Form::from_terms(v.len(), 1, terms).to_string()
}

pub fn format_vectors(vs: &[Vec<Scalar>]) -> String {
    let parts: Vec<String> = vs.iter().map(|v| format_vector(v)).collect();
    format!("{{{}}}", parts.join(", "))
}

struct Recorder(Vec<Comparison>);

impl Recorder {
    fn push(&mut self, item: impl Into<String>, matched: bool, expected: impl Into<String>, actual: impl Into<String>) {
        self.0.push(Comparison {
            item: item.into(),
            matched,
            expected: expected.into(),
            actual: actual.into(),
        });
    }

    fn eq<T: PartialEq>(&mut self, item: &str, expected: &T, actual: &T, show: impl Fn(&T) -> String) {
        self.push(item, expected == actual, show(expected), show(actual));
    }

    fn check(&mut self, item: &str, holds: bool) {
        self.push(item, holds, "true", holds.to_string());
    }
}

fn sub_matrix(m: &Matrix, subs: &BTreeMap<Symbol, Scalar>) -> Result<Matrix, ScalarError> {
    if subs.is_empty() {
        return Ok(m.clone());
    }
    m.try_map(|x| x.substitute(subs))
}

fn sub_vecs(vs: &[Vec<Scalar>], subs: &BTreeMap<Symbol, Scalar>) -> Result<Vec<Vec<Scalar>>, ScalarError> {
    vs.iter().map(|v| v.iter().map(|x| x.substitute(subs)).collect()).collect()
}

/// Runs the full chain for a scenario and compares every expected item.
/// `extra_subs` are applied to the constrained ω and to the expected values.
pub fn run_scenario(id: &str, extra_subs: &BTreeMap<Symbol, Scalar>) -> Result<ScenarioReport, CatalogError> {
    run_scenario_with(id, extra_subs, &Options::default())
}

pub fn run_scenario_with(
    id: &str,
    extra_subs: &BTreeMap<Symbol, Scalar>,
    opts: &Options,
) -> Result<ScenarioReport, CatalogError> {
    let sc = scenario(id)?;
    match &sc.expected {
        Expected::Structure(exp) => run_structure(&sc, exp, extra_subs, opts),
        Expected::ClosedForms(exp) => run_closed(&sc, exp),
    }
}

fn run_structure(
    sc: &Scenario,
    exp: &StructureExpected,
    extra_subs: &BTreeMap<Symbol, Scalar>,
    opts: &Options,
) -> Result<ScenarioReport, CatalogError> {
    let l = &sc.algebra;
    let family = sc.omega.substitute(&to_map(&sc.constraints))?.substitute(extra_subs)?;
    let omega = sc.constrained_omega()?.substitute(extra_subs)?;
    // expected values are stated before the specialization and extra
    // substitutions; both are pushed through them
    let mut extra = extra_subs.clone();
    for (k, v) in &sc.specialization {
        extra.insert(*k, v.substitute(extra_subs)?);
    }
    let extra = &extra;
    let mut opts = opts.clone();
    opts.subs = BTreeMap::new();
    let a = analyze(l, &omega, &opts);
    if let Some(f) = &a.failure {
        return Err(CatalogError::Pipeline(f.clone()));
    }
    let (Some(d_omega), Some(st), Some(m), Some(curv), Some(pair)) =
        (&a.d_omega, &a.structure, &a.metric, &a.curvature, &a.pair)
    else {
        unreachable!("complete analysis without failure");
    };
    let mut r = Recorder(Vec::new());
    let show_form = |f: &Form| f.to_string();
    let show_scalar = |x: &Scalar| x.to_string();

    // forms and the pair conditions
    if let Some(e) = &exp.omega {
        r.eq("omega", &e.substitute(extra)?, &omega, show_form);
    }
    if let Some(e) = &exp.d_omega {
        r.eq("d_omega", &e.substitute(extra)?, d_omega, show_form);
    }
    r.check("half_flat", pair.half_flat && pair.compatible);
    let (nondeg, pf) = is_nondegenerate2(&omega)?;
    let cert = sc
        .nondegeneracy_assumptions
        .iter()
        .try_fold(Scalar::one(), |acc, c| c.substitute(extra).map(|c| &acc * &c))?;
    r.push(
        "nondegeneracy",
        nondeg && certificate_covers(&pf, &cert),
        format!("omega^3 != 0 whenever {cert} != 0"),
        format!("coefficient of e123456 in omega^3 = {pf}"),
    );

    // Hitchin layer
    if let Some(e) = &exp.family_lambda {
        let lam = hitchin_lambda(&cediff(l, &family)?)?;
        r.eq("family_lambda", &e.substitute(extra_subs)?, &lam, show_scalar);
    }
    if let Some(e) = &exp.lambda {
        r.eq("lambda", &e.substitute(extra)?, &st.lambda, show_scalar);
    }
    if let Some(e) = &exp.k {
        r.eq("K", &sub_matrix(e, extra)?, &st.k, format_matrix);
    }
    let k2 = st.k.mul(&st.k);
    r.eq("K_squared", &Matrix::identity(6).scale(&st.lambda), &k2, format_matrix);
    r.check("K_traceless", st.k.trace().is_zero());

    // structure layer
    r.eq("epsilon", &exp.eps, &st.eps, |e| e.to_string());
    if let Some(e) = &exp.j {
        r.eq("J", &sub_matrix(e, extra)?, &st.j, format_matrix);
    }
    let eps_id = Matrix::identity(6).scale(&Scalar::from_int(st.eps as i64));
    r.eq("J_squared", &eps_id, &st.j.mul(&st.j), format_matrix);
    r.check("omega_anti_invariant", a.omega_compatible == Some(true));
    if let (Some((plus, minus)), Some((ep, em))) = (&a.eigen, &exp.eigen) {
        let ep = Subspace::span(6, sub_vecs(ep, extra)?);
        let em = Subspace::span(6, sub_vecs(em, extra)?);
        r.push("E_plus", &ep == plus, format_vectors(ep.basis()), format_vectors(plus.basis()));
        r.push("E_minus", &em == minus, format_vectors(em.basis()), format_vectors(minus.basis()));
    }
    if let Some((wp, wm)) = &a.eigen_witnesses {
        let ranks = a.eigen.as_ref().map(|(p, q)| (p.dim(), q.dim()));
        r.push(
            "eigen_not_bracket_closed",
            wp.is_some() && wm.is_some() && ranks == Some((3, 3)),
            "rank 3, not closed (both)",
            format!(
                "ranks {:?}, E+ {}, E- {}",
                ranks.unwrap_or_default(),
                if wp.is_some() { "not closed" } else { "closed" },
                if wm.is_some() { "not closed" } else { "closed" }
            ),
        );
    }
    r.push(
        "nijenhuis_nonzero",
        a.nijenhuis_zero == Some(false),
        "N != 0",
        if a.nijenhuis_zero == Some(false) { "N != 0" } else { "N = 0" },
    );

    // metric and curvature
    if let Some(e) = &exp.metric {
        r.eq("metric", &sub_matrix(e, extra)?, &m.g, format_matrix);
    }
    r.check("torsion_free", torsion_free(l, &curv.gamma));
    r.check("metric_compatible", metric_compatible(m, &curv.gamma));
    r.check("ricci_symmetric", curv.ricci.is_symmetric());
    r.eq("scalar_is_ricci_trace", &curv.ricci_op.trace(), &curv.scalar, show_scalar);
    if let Some((rsubs, e)) = &exp.ricci {
        let rsubs = to_map(rsubs);
        let actual = substituted_or_recomputed(l, &omega, &curv.ricci_op, &rsubs, &opts, |a| {
            a.curvature.as_ref().map(|c| c.ricci_op.clone())
        })?;
        r.eq("ricci_operator", &sub_matrix(e, extra)?, &actual, format_matrix);
    }
    match &exp.scalar {
        Some(ScalarExpected::Exact(e)) => {
            r.eq("scalar_curvature", &e.substitute(extra)?, &curv.scalar, show_scalar);
        }
        Some(ScalarExpected::AbsBranches { abs_arg, factor }) => {
            let abs_arg = abs_arg.substitute(extra)?;
            let factor = factor.substitute(extra)?;
            for (label, point) in branch_points(&abs_arg, &omega, &opts)? {
                let sign = abs_arg.sign_at(&point)?;
                let oriented = st.oriented_at(&point)?;
                let metric = associated_metric(&omega, &oriented)?;
                let scalar = curvature(l, &metric).scalar;
                let expected = &(&abs_arg * &factor) * &Scalar::from_int(sign as i64);
                r.eq(&format!("scalar_curvature[{label}]"), &expected, &scalar, show_scalar);
            }
        }
        None => {}
    }
    if let Some(zs) = &exp.scalar_zero {
        let zs = to_map(zs);
        let scalar = curv.scalar.substitute(&zs)?;
        let ricci = substituted_or_recomputed(l, &omega, &curv.ricci, &zs, &opts, |a| {
            a.curvature.as_ref().map(|c| c.ricci.clone())
        })?;
        r.push(
            "scalar_zero_ricci_nonzero",
            scalar.is_zero() && !ricci.is_zero(),
            "R = 0, Ric != 0",
            format!("R = {scalar}, Ric {}", if ricci.is_zero() { "= 0" } else { "!= 0" }),
        );
    }
    if let Some(e) = exp.einstein {
        r.eq("einstein", &e, &curv.einstein, |b| b.to_string());
    }
    if let Some(e) = exp.signature {
        let got: Vec<(usize, usize)> = a.signatures.iter().map(|s| s.signature).collect();
        r.push(
            "signature",
            got.len() >= 3 && got.iter().all(|g| *g == e),
            format!("{e:?} at every sample point"),
            format!("{got:?}"),
        );
    }

    Ok(ScenarioReport {
        id: sc.id.to_string(),
        algebra_id: sc.algebra_id.to_string(),
        analysis: Some(a),
        closed_family: None,
        comparisons: r.0,
    })
}

/// Whether the numerator of the Pfaffian only vanishes where `cert` does,
/// i.e. it divides a power of `cert`.
fn certificate_covers(pf: &Scalar, cert: &Scalar) -> bool {
    let num = Scalar::from_poly(pf.numer().clone());
    let power = cert.pow(num.numer().total_degree().max(1));
    match power.checked_div(&num) {
        Ok(q) => q.denom().is_constant(),
        Err(_) => false,
    }
}

/// Applies `subs` to an already computed matrix; where that hits a pole,
/// recomputes from the substituted ω instead.
fn substituted_or_recomputed(
    l: &LieAlg,
    omega: &Form,
    computed: &Matrix,
    subs: &BTreeMap<Symbol, Scalar>,
    opts: &Options,
    pick: impl Fn(&Analysis) -> Option<Matrix>,
) -> Result<Matrix, CatalogError> {
    match sub_matrix(computed, subs) {
        Ok(m) => Ok(m),
        Err(ScalarError::DivisionByZero) | Err(ScalarError::PoleAtPoint) => {
            let mut o = opts.clone();
            o.sample_points = 0;
            let a = analyze(l, &omega.substitute(subs)?, &o);
            if let Some(f) = a.failure.clone() {
                return Err(CatalogError::Pipeline(f));
            }
            Ok(pick(&a).expect("curvature computed"))
        }
        Err(e) => Err(e.into()),
    }
}

/// One sample point on each side of `abs_arg = 0`, both giving a
/// non-degenerate metric. Sample points are generated as in the pipeline;
/// when none of the first few lands on a branch, the values of the two
/// highest symbols of `abs_arg` are swapped.
fn branch_points(abs_arg: &Scalar, omega: &Form, opts: &Options) -> Result<Vec<(String, Point)>, CatalogError> {
    let support = omega.terms().fold(abs_arg.support(), |acc, (_, c)| acc | c.support());
    let symbols: Vec<Symbol> = Symbol::coefficients().filter(|s| support & (1 << s.index()) != 0).collect();
    let mut found: BTreeMap<i32, Point> = BTreeMap::new();
    let arg_symbols = abs_arg.symbols();
    let (_, pf) = is_nondegenerate2(omega)?;
    for k in 0..opts.retry_budget.max(1) {
        let base = crate::curvature::sample_point(&symbols, k, &opts.sample_overrides);
        let mut candidates = vec![base.clone()];
        if let [.., x, y] = arg_symbols.as_slice() {
            let mut swapped = base.clone();
            let (vx, vy) = (base[x].clone(), base[y].clone());
            swapped.insert(*x, vy);
            swapped.insert(*y, vx);
            candidates.push(swapped);
        }
        for p in candidates {
            let Ok(sign) = abs_arg.sign_at(&p) else { continue };
            if sign == 0 || found.contains_key(&sign) {
                continue;
            }
            if !matches!(pf.sign_at(&p), Ok(s) if s != 0) {
                continue;
            }
            found.insert(sign, p);
        }
        if found.len() == 2 {
            break;
        }
    }
    let arg = abs_arg.to_string();
    Ok(found
        .into_iter()
        .rev()
        .map(|(sign, p)| (format!("{arg}{}0", if sign > 0 { ">" } else { "<" }), p))
        .collect())
}

fn run_closed(sc: &Scenario, exp: &ClosedExpected) -> Result<ScenarioReport, CatalogError> {
    let l = &sc.algebra;
    let generic = generic_two_form(6);
    let solution = closed_family(l, &generic)?;
    let family = generic.substitute(&solution)?;
    let mut r = Recorder(Vec::new());
    r.push(
        "closed_family",
        family_span(&exp.family)? == family_span(&family)?,
        exp.family.to_string(),
        family.to_string(),
    );
    let cube = two_form_cube(&family)?;
    let degenerate = cube.is_zero();
    let show = |d: &bool| if *d { "degenerate (omega^3 = 0)".to_string() } else { "non-degenerate".to_string() };
    r.eq("closed_degeneracy", &exp.degenerate, &degenerate, show);

    let d_generic = cediff(l, &generic)?;
    if let Some(e) = &exp.generic_lambda {
        let lam = hitchin_lambda(&d_generic)?;
        r.eq("generic_lambda", e, &lam, |x| x.to_string());
    }
    if !exp.conditions.is_empty() {
        let computed: Vec<Scalar> = generic.wedge(&d_generic)?.terms().map(|(_, c)| c.clone()).collect();
        let matched = same_up_to_constants(&exp.conditions, &computed);
        let show = |v: &Vec<Scalar>| v.iter().map(|c| format!("{c} = 0")).collect::<Vec<_>>().join(", ");
        r.push("wedge_conditions", matched, show(&exp.conditions), show(&computed));
    }
    Ok(ScenarioReport {
        id: sc.id.to_string(),
        algebra_id: sc.algebra_id.to_string(),
        analysis: None,
        closed_family: Some(family),
        comparisons: r.0,
    })
}

/// The linear space of 2-forms swept out by a family that is linear in its
/// symbols, so that differently parametrized families compare equal.
fn family_span(f: &Form) -> Result<Subspace, ScalarError> {
    let pairs: Vec<MultiIndex> = (0..6)
        .flat_map(|i| (i + 1..6).map(move |j| MultiIndex::from_indices(&[i, j]).expect("distinct")))
        .collect();
    let symbols: BTreeSet<Symbol> = f.terms().flat_map(|(_, c)| c.symbols()).collect();
    let mut vectors = Vec::new();
    for s in &symbols {
        let point: BTreeMap<Symbol, Scalar> = symbols
            .iter()
            .map(|t| (*t, if t == s { Scalar::one() } else { Scalar::zero() }))
            .collect();
        let g = f.substitute(&point)?;
        vectors.push(pairs.iter().map(|m| g.coeff(*m)).collect());
    }
    Ok(Subspace::span(pairs.len(), vectors))
}

/// Each list entry is a non-zero constant multiple of an entry of the
/// other list.
fn same_up_to_constants(a: &[Scalar], b: &[Scalar]) -> bool {
    let proportional = |x: &Scalar, y: &Scalar| x.checked_div(y).map(|q| q.is_constant()).unwrap_or(false);
    let covers = |p: &[Scalar], q: &[Scalar]| p.iter().all(|x| q.iter().any(|y| proportional(x, y)));
    covers(a, b) && covers(b, a)
}

/// Outcome of weakening closedness by adding `extra` to the closed family
/// and imposing `ω ∧ dω = 0`, solved linearly for the closed-family
/// coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Weakening {
    pub solution: BTreeMap<Symbol, Scalar>,
    pub omega: Form,
    /// Coefficient of `e^{123456}` in `ω^3`.
    pub pfaffian: Scalar,
}

pub fn weaken_closed(l: &LieAlg, closed: &Form, extra: &Form) -> Result<Weakening, CatalogError> {
    let omega = closed.add(extra)?;
    let d = cediff(l, &omega)?;
    let eqs: Vec<Scalar> = omega.wedge(&d)?.terms().map(|(_, c)| c.clone()).collect();
    let fixed: BTreeSet<Symbol> = extra.terms().flat_map(|(_, c)| c.symbols()).collect();
    let unknowns: Vec<Symbol> = closed
        .terms()
        .flat_map(|(_, c)| c.symbols())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .filter(|s| !fixed.contains(s))
        .rev()
        .collect();
    let solution = solve_linear(&eqs, &unknowns)?;
    let omega = omega.substitute(&solution)?;
    let (_, pfaffian) = is_nondegenerate2(&omega)?;
    Ok(Weakening {
        solution,
        omega,
        pfaffian,
    })
}

/// On g2, adding `a36 e^{36} + a56 e^{56}` to the closed family and
/// imposing `ω ∧ dω = 0` forces `ω^3 = 0` identically.
pub fn g2_incompatibility_check() -> bool {
    weaken_closed(&algebra_of("g2"), &form(G2_CLOSED), &form("a36*e36+a56*e56"))
        .map(|w| w.pfaffian.is_zero())
        .unwrap_or(false)
}

/// The g2 branch with `a46 != 0`, for contrast with the incompatible one.
pub fn g2_a46_branch() -> Result<Weakening, CatalogError> {
    weaken_closed(&algebra_of("g2"), &form(G2_CLOSED), &form("a46*e46"))
}
