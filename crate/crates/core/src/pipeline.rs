//! The full chain for a 2-form `ω` on a six-dimensional Lie algebra:
//! `dω`, the Hitchin structure of `dω`, its eigen-distributions, the
//! associated metric `g(X, Y) = ω(X, JY)`, curvature and sampled inertia.
//!
//! Each stage runs only if the previous one succeeded; the first failure
//! is recorded together with the stage it happened in, and everything
//! computed up to that point is kept.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::curvature::{
    associated_metric, curvature, sample_signature, CurvatureError, CurvatureReport, Metric, DEFAULT_RETRY_BUDGET,
};
use crate::exterior::{cediff, ExteriorError, Form};
use crate::lie_algebra::{LieAlg, Subspace};
use crate::linalg::Matrix;
use crate::scalars::{Point, Scalar, ScalarError, Symbol};
use crate::stable_forms::{
    bracket_closed, eigen_distributions, hitchin_k, is_integrable, omega_compatible, pair_report, eps_from_k,
    BracketWitness, EpsStructure, PairReport, StableError,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Stage {
    Substitution,
    Differential,
    Hitchin,
    Structure,
    Metric,
    Curvature,
    Signature,
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Stage::Substitution => "substitution",
            Stage::Differential => "differential",
            Stage::Hitchin => "hitchin",
            Stage::Structure => "structure",
            Stage::Metric => "metric",
            Stage::Curvature => "curvature",
            Stage::Signature => "signature",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PipelineError {
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    Exterior(#[from] ExteriorError),
    #[error(transparent)]
    Stable(#[from] StableError),
    #[error(transparent)]
    Curvature(#[from] CurvatureError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub stage: Stage,
    pub error: PipelineError,
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} stage: {}", self.stage, self.error)
    }
}

#[derive(Debug, Clone)]
pub struct Options {
    pub subs: BTreeMap<Symbol, Scalar>,
    /// Values pinned at every sample point.
    pub sample_overrides: Point,
    pub retry_budget: usize,
    pub sample_points: usize,
    pub curvature: bool,
}

impl Default for Options {
    fn default() -> Options {
        Options {
            subs: BTreeMap::new(),
            sample_overrides: Point::new(),
            retry_budget: DEFAULT_RETRY_BUDGET,
            sample_points: 3,
            curvature: true,
        }
    }
}

/// Signature of the metric at one sample point, oriented so that `J` is
/// `K / |sqrt(λ)|` there.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SampledSignature {
    pub signature: (usize, usize),
    pub point: Point,
}

#[derive(Debug, Clone, Default)]
pub struct Analysis {
    pub omega: Option<Form>,
    pub d_omega: Option<Form>,
    pub k: Option<Matrix>,
    pub lambda: Option<Scalar>,
    pub structure: Option<EpsStructure>,
    pub pair: Option<PairReport>,
    pub omega_compatible: Option<bool>,
    /// `(E+, E-)` for para-complex structures.
    pub eigen: Option<(Subspace, Subspace)>,
    /// Bracket-closure witnesses for `E+` and `E-`; `None` entries are closed.
    pub eigen_witnesses: Option<(Option<BracketWitness>, Option<BracketWitness>)>,
    pub nijenhuis_zero: Option<bool>,
    pub metric: Option<Metric>,
    pub curvature: Option<CurvatureReport>,
    pub signatures: Vec<SampledSignature>,
    pub failure: Option<Failure>,
}

impl Analysis {
    fn fail(mut self, stage: Stage, error: impl Into<PipelineError>) -> Analysis {
        self.failure = Some(Failure {
            stage,
            error: error.into(),
        });
        self
    }

    /// The signature if every sample point agrees on it.
    pub fn stable_signature(&self) -> Option<(usize, usize)> {
        let first = self.signatures.first()?.signature;
        self.signatures.iter().all(|s| s.signature == first).then_some(first)
    }
}

pub fn analyze(l: &LieAlg, omega: &Form, opts: &Options) -> Analysis {
    let mut a = Analysis::default();
    let omega = match omega.substitute(&opts.subs) {
        Ok(o) => o,
        Err(e) => return a.fail(Stage::Substitution, e),
    };
    if let Err(e) = omega.expect_degree(2) {
        return a.fail(Stage::Substitution, e);
    }
    a.omega = Some(omega.clone());

    let d_omega = match cediff(l, &omega) {
        Ok(d) => d,
        Err(e) => return a.fail(Stage::Differential, e),
    };
    a.d_omega = Some(d_omega.clone());

    let k = match hitchin_k(&d_omega) {
        Ok(k) => k,
        Err(e) => return a.fail(Stage::Hitchin, e),
    };
    let lambda = &k.mul(&k).trace() * &Scalar::ratio(1, 6);
    a.k = Some(k.clone());
    a.lambda = Some(lambda.clone());
    match pair_report(l, &omega, &d_omega) {
        Ok(p) => a.pair = Some(p),
        Err(e) => return a.fail(Stage::Hitchin, e),
    }

    let s = match eps_from_k(k, lambda) {
        Ok(s) => s,
        Err(e) => return a.fail(Stage::Structure, e),
    };
    a.structure = Some(s.clone());
    match omega_compatible(&omega, &s) {
        Ok(c) => a.omega_compatible = Some(c),
        Err(e) => return a.fail(Stage::Structure, e),
    }
    a.nijenhuis_zero = Some(is_integrable(l, &s));
    if s.is_para_complex() {
        match eigen_distributions(&s) {
            Ok((plus, minus)) => {
                a.eigen_witnesses = Some((bracket_closed(l, &plus), bracket_closed(l, &minus)));
                a.eigen = Some((plus, minus));
            }
            Err(e) => return a.fail(Stage::Structure, e),
        }
    }

    let m = match associated_metric(&omega, &s) {
        Ok(m) => m,
        Err(e) => return a.fail(Stage::Metric, e),
    };
    a.metric = Some(m.clone());

    if opts.curvature {
        a.curvature = Some(curvature(l, &m));
    }

    for k in 0..opts.sample_points {
        match oriented_signature(&m.g, &s, k, opts) {
            Ok(sig) => a.signatures.push(sig),
            Err(e) => return a.fail(Stage::Signature, e),
        }
    }
    a
}

/// Signature at the `k`-th sample point with `J` taken as `K / |sqrt(λ)|`:
/// if the chosen root is negative there the metric changes sign.
pub fn oriented_signature(
    g: &Matrix,
    s: &EpsStructure,
    k: usize,
    opts: &Options,
) -> Result<SampledSignature, CurvatureError> {
    let ((p, n), point) = sample_signature(g, &[&s.root], k, &opts.sample_overrides, opts.retry_budget)?;
    let signature = if s.root.sign_at(&point)? < 0 { (n, p) } else { (p, n) };
    Ok(SampledSignature { signature, point })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{g2, g5};
    use crate::exterior::parse_form;

    #[test]
    fn g2_main_chain() {
        let omega = parse_form("a12*e12+a14*e14+a15*e15+a23*e23+a46*e46", 6).unwrap();
        let a = analyze(&g2(), &omega, &Options::default());
        assert!(a.failure.is_none(), "{:?}", a.failure);
        assert_eq!(a.lambda, Some(Scalar::a(4, 6).pow(4)));
        assert_eq!(a.nijenhuis_zero, Some(false));
        assert_eq!(a.stable_signature(), Some((3, 3)));
        let p = a.pair.unwrap();
        assert!(p.compatible && p.half_flat);
    }

    #[test]
    fn degenerate_omega_stops_at_metric() {
        let omega = parse_form("e56", 6).unwrap();
        let a = analyze(&g5(), &omega, &Options::default());
        assert_eq!(a.lambda, Some(Scalar::one()));
        assert_eq!(a.failure.as_ref().map(|f| f.stage), Some(Stage::Metric));
        assert!(a.structure.is_some());
    }

    #[test]
    fn abelian_is_unstable() {
        let omega = parse_form("e12+e34+e56", 6).unwrap();
        let a = analyze(&LieAlg::abelian(6), &omega, &Options::default());
        let f = a.failure.unwrap();
        assert_eq!(f.stage, Stage::Structure);
        assert_eq!(f.error, PipelineError::Stable(StableError::UnstableForm));
    }
}
