//! JSON reports. Every report is a `serde_json` object, so keys come out
//! sorted; scalars and forms are stored in their canonical text form.

use serde_json::{json, Map, Value};

use stableforms::catalog::{Comparison, ScenarioReport};
use stableforms::lie_algebra::series::dims;
use stableforms::lie_algebra::{format_brackets, LieAlg, NilpotencyStep};
use stableforms::linalg::Matrix;
use stableforms::pipeline::{Analysis, PipelineError, Stage};
use stableforms::scalars::{Point, Scalar};
use stableforms::stable_forms::StableError;

pub const SCHEMA: &str = "stableforms/1";

/// Shown in place of `J` when `sqrt(|λ|)` has no rational-function form.
pub const SYMBOLIC_J: &str = "K/sqrt(|lambda|)";

pub fn envelope() -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("schema".into(), SCHEMA.into());
    m
}

pub fn matrix(m: &Matrix) -> Value {
    json!(m.to_strings())
}

fn vector(v: &[Scalar]) -> Value {
    Value::Array(v.iter().map(|x| x.to_string().into()).collect())
}

fn point(p: &Point) -> Value {
    Value::Object(p.iter().map(|(s, v)| (s.name(), v.to_string().into())).collect())
}

pub fn algebra(input: &str, l: &LieAlg) -> Value {
    let step = match l.nilpotency_step() {
        NilpotencyStep::Step(s) => json!(s),
        NilpotencyStep::NotNilpotent => json!("not nilpotent"),
    };
    json!({
        "input": input,
        "dim": l.dim(),
        "brackets": format_brackets(l),
        "series_dims": dims(&l.lower_central_series()),
        "step": step,
        "jacobi": l.jacobi_defect().is_empty(),
    })
}

/// Whether a failure only means `J` cannot be written down exactly.
pub fn is_symbolic_only(a: &Analysis) -> bool {
    matches!(
        &a.failure,
        Some(f) if f.stage == Stage::Structure
            && matches!(f.error, PipelineError::Stable(StableError::NonSquareLambda(_)))
    )
}

pub fn analysis(a: &Analysis, out: &mut Map<String, Value>) {
    let mut put = |k: &str, v: Value| {
        out.insert(k.to_string(), v);
    };
    if let Some(o) = &a.omega {
        put("omega", o.to_string().into());
    }
    if let Some(d) = &a.d_omega {
        put("d_omega", d.to_string().into());
    }
    if let Some(k) = &a.k {
        put("K", matrix(k));
    }
    if let Some(l) = &a.lambda {
        put("lambda", l.to_string().into());
    }
    if let Some(p) = &a.pair {
        put(
            "pair",
            json!({
                "compatible": p.compatible,
                "normalized": p.normalized,
                "half_flat": p.half_flat,
            }),
        );
    }
    if let Some(s) = &a.structure {
        put("epsilon", json!(s.eps));
        put("structure", if s.is_para_complex() { "para-complex" } else { "complex" }.into());
        put("J_or_P", matrix(&s.j));
        put("sqrt_abs_lambda", s.root.to_string().into());
    } else if is_symbolic_only(a) {
        put("J_or_P", SYMBOLIC_J.into());
    }
    if let Some(c) = a.omega_compatible {
        put("omega_anti_invariant", c.into());
    }
    if let Some((plus, minus)) = &a.eigen {
        let basis = |s: &stableforms::lie_algebra::Subspace| Value::Array(s.basis().iter().map(|v| vector(v)).collect());
        put("eigenbases", json!({ "E+": basis(plus), "E-": basis(minus) }));
    }
    if let Some((wp, wm)) = &a.eigen_witnesses {
        put("eigen_bracket_closed", json!({ "E+": wp.is_none(), "E-": wm.is_none() }));
    }
    if let Some(n) = a.nijenhuis_zero {
        put("nijenhuis_zero", n.into());
    }
    if let Some(m) = &a.metric {
        put("metric", matrix(&m.g));
    }
    if let Some(c) = &a.curvature {
        put("ricci", matrix(&c.ricci));
        put("ricci_operator", matrix(&c.ricci_op));
        put("scalar_curvature", c.scalar.to_string().into());
        put("einstein", c.einstein.into());
    }
    if !a.signatures.is_empty() {
        put("signature", a.stable_signature().map_or(Value::Null, |(p, n)| json!([p, n])));
        let samples = a
            .signatures
            .iter()
            .map(|s| json!({ "point": point(&s.point), "signature": [s.signature.0, s.signature.1] }))
            .collect();
        put("signature_samples", Value::Array(samples));
    }
    if let Some(f) = &a.failure {
        put("failure", json!({ "stage": f.stage.to_string(), "message": f.to_string() }));
    }
}

fn comparison(c: &Comparison) -> Value {
    json!({
        "item": c.item,
        "matched": c.matched,
        "expected": c.expected,
        "actual": c.actual,
    })
}

pub fn scenario(r: &ScenarioReport, l: &LieAlg) -> Map<String, Value> {
    let mut out = envelope();
    out.insert("scenario".into(), r.id.clone().into());
    out.insert("algebra".into(), algebra(&r.algebra_id, l));
    if let Some(a) = &r.analysis {
        let mut m = Map::new();
        analysis(a, &mut m);
        out.insert("analysis".into(), Value::Object(m));
    }
    if let Some(f) = &r.closed_family {
        out.insert("closed_family".into(), f.to_string().into());
    }
    out.insert("comparisons".into(), r.comparisons.iter().map(comparison).collect());
    out.insert("all_match".into(), r.all_match().into());
    if let Some(c) = r.first_mismatch() {
        out.insert("first_mismatch".into(), c.item.clone().into());
    }
    out
}
