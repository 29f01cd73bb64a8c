//! Left-invariant pseudo-Riemannian geometry: the associated metric
//! `g(X, Y) = ω(X, JY)`, Levi-Civita connection, curvature and inertia.
//!
//! Index layout: `gamma[i][j][n] = Γ^n_ij` is the `e_n` component of
//! `∇_{e_i} e_j`; `riemann[i][j][k][s] = R^s_ijk` is the `e_s` component of
//! `R(e_i, e_j) e_k`; `Ric_nm = Σ_i R^i_nmi`.

use thiserror::Error;

use crate::exterior::Form;
use crate::lie_algebra::LieAlg;
use crate::linalg::{inertia, LinalgError, Matrix};
use crate::scalars::{Point, Rational, Scalar, ScalarError, Symbol};
use crate::stable_forms::{omega_compatible, EpsStructure, StableError};

pub const DEFAULT_RETRY_BUDGET: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CurvatureError {
    #[error("ω(JX, JY) != -ε ω(X, Y); the associated bilinear form is not symmetric")]
    AsymmetricResult,
    #[error("metric is singular")]
    SingularMetric,
    #[error("no non-degenerate sample point found within {0} retries")]
    DegeneratePoint(usize),
    #[error(transparent)]
    Stable(#[from] StableError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Metric {
    pub g: Matrix,
    pub ginv: Matrix,
}

impl Metric {
    pub fn new(g: Matrix) -> Result<Metric, CurvatureError> {
        if !g.is_symmetric() {
            return Err(CurvatureError::AsymmetricResult);
        }
        let ginv = g.inverse().map_err(|e| match e {
            LinalgError::Singular => CurvatureError::SingularMetric,
            _ => CurvatureError::AsymmetricResult,
        })?;
        Ok(Metric { g, ginv })
    }

    pub fn dim(&self) -> usize {
        self.g.rows()
    }
}

/// `g_ij = ω(e_i, J e_j)`.
pub fn associated_metric(omega: &Form, s: &EpsStructure) -> Result<Metric, CurvatureError> {
    if !omega_compatible(omega, s)? {
        return Err(CurvatureError::AsymmetricResult);
    }
    let w = omega.two_form_matrix().map_err(StableError::from)?;
    Metric::new(w.mul(&s.j))
}

/// Dense rank-3 table, `t[(i * n + j) * n + k]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tensor3 {
    n: usize,
    data: Vec<Scalar>,
}

impl Tensor3 {
    fn zeros(n: usize) -> Tensor3 {
        Tensor3 {
            n,
            data: vec![Scalar::zero(); n * n * n],
        }
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.data[(i * self.n + j) * self.n + k]
    }

    fn set(&mut self, i: usize, j: usize, k: usize, x: Scalar) {
        self.data[(i * self.n + j) * self.n + k] = x;
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }
}

/// Dense rank-4 table, `t[((i * n + j) * n + k) * n + s]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tensor4 {
    n: usize,
    data: Vec<Scalar>,
}

impl Tensor4 {
    pub fn get(&self, i: usize, j: usize, k: usize, s: usize) -> &Scalar {
        &self.data[((i * self.n + j) * self.n + k) * self.n + s]
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }
}

fn sum_products<'a>(pairs: impl Iterator<Item = (&'a Scalar, &'a Scalar)>) -> Scalar {
    let mut acc = Scalar::zero();
    for (a, b) in pairs {
        if !a.is_zero() && !b.is_zero() {
            acc = &acc + &(a * b);
        }
    }
    acc
}

/// `Γ^n_ij = ½ g^{kn} (g_pk C^p_ij + g_pj C^p_ki + g_ip C^p_kj)`.
pub fn christoffel(l: &LieAlg, m: &Metric) -> Tensor3 {
    let n = l.dim();
    let g = &m.g;
    // lowered: 2 g(∇_i e_j, e_k)
    let mut low = Tensor3::zeros(n);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let mut acc = Scalar::zero();
                for p in 0..n {
                    for (c, gg) in [
                        (l.c(i, j, p), &g[(p, k)]),
                        (l.c(k, i, p), &g[(p, j)]),
                        (l.c(k, j, p), &g[(i, p)]),
                    ] {
                        if !c.is_zero() && !gg.is_zero() {
                            acc = &acc + &(c * gg);
                        }
                    }
                }
                low.set(i, j, k, acc);
            }
        }
    }
    let half = Scalar::ratio(1, 2);
    let mut gamma = Tensor3::zeros(n);
    for i in 0..n {
        for j in 0..n {
            for r in 0..n {
                let v = sum_products((0..n).map(|k| (low.get(i, j, k), &m.ginv[(k, r)])));
                gamma.set(i, j, r, &v * &half);
            }
        }
    }
    gamma
}

/// `R^s_ijk = Γ^s_ip Γ^p_jk - Γ^s_jp Γ^p_ik - C^p_ij Γ^s_pk`.
pub fn riemann(l: &LieAlg, gamma: &Tensor3) -> Tensor4 {
    let n = l.dim();
    let mut data = Vec::with_capacity(n * n * n * n);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for s in 0..n {
                    if i == j {
                        data.push(Scalar::zero());
                        continue;
                    }
                    let a = sum_products((0..n).map(|p| (gamma.get(i, p, s), gamma.get(j, k, p))));
                    let b = sum_products((0..n).map(|p| (gamma.get(j, p, s), gamma.get(i, k, p))));
                    let c = sum_products((0..n).map(|p| (l.c(i, j, p), gamma.get(p, k, s))));
                    data.push(&(&a - &b) - &c);
                }
            }
        }
    }
    Tensor4 { n, data }
}

/// `Ric_nm = Σ_i R^i_{i n m}`.
pub fn ricci(r: &Tensor4) -> Matrix {
    let n = r.dim();
    Matrix::from_fn(n, n, |a, b| (0..n).map(|i| r.get(i, a, b, i).clone()).sum())
}

pub fn ricci_operator(m: &Metric, ric: &Matrix) -> Matrix {
    m.ginv.mul(ric)
}

pub fn scalar_curvature(m: &Metric, ric: &Matrix) -> Scalar {
    let n = m.dim();
    let mut acc = Scalar::zero();
    for i in 0..n {
        for j in 0..n {
            if !m.ginv[(i, j)].is_zero() && !ric[(i, j)].is_zero() {
                acc = &acc + &(&m.ginv[(i, j)] * &ric[(i, j)]);
            }
        }
    }
    acc
}

/// `Ric = c g` for some field element `c`.
pub fn is_einstein(m: &Metric, ric: &Matrix) -> bool {
    ric.proportionality(&m.g).is_some()
}

/// `R_ijkl = g(R(e_i, e_j) e_k, e_l)`.
pub fn lowered_riemann(m: &Metric, r: &Tensor4) -> Tensor4 {
    let n = m.dim();
    let mut data = Vec::with_capacity(n.pow(4));
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    data.push(sum_products((0..n).map(|s| (r.get(i, j, k, s), &m.g[(s, l)]))));
                }
            }
        }
    }
    Tensor4 { n, data }
}

/// `Γ^k_ij - Γ^k_ji = C^k_ij` for all indices.
pub fn torsion_free(l: &LieAlg, gamma: &Tensor3) -> bool {
    let n = l.dim();
    (0..n).all(|i| {
        (0..n).all(|j| (0..n).all(|k| &(gamma.get(i, j, k) - gamma.get(j, i, k)) == l.c(i, j, k)))
    })
}

/// `g(∇_k e_i, e_j) + g(e_i, ∇_k e_j) = 0` for all indices.
pub fn metric_compatible(m: &Metric, gamma: &Tensor3) -> bool {
    let n = m.dim();
    (0..n).all(|k| {
        (0..n).all(|i| {
            (0..n).all(|j| {
                let a = sum_products((0..n).map(|r| (gamma.get(k, i, r), &m.g[(r, j)])));
                let b = sum_products((0..n).map(|r| (gamma.get(k, j, r), &m.g[(i, r)])));
                (&a + &b).is_zero()
            })
        })
    })
}

/// `R_ijkl = R_klij` and `R_ijkl = -R_jikl`.
pub fn pair_symmetric(lowered: &Tensor4) -> bool {
    let n = lowered.dim();
    (0..n).all(|i| {
        (0..n).all(|j| {
            (0..n).all(|k| {
                (0..n).all(|l| {
                    let x = lowered.get(i, j, k, l);
                    x == lowered.get(k, l, i, j) && x == &-lowered.get(j, i, k, l)
                })
            })
        })
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurvatureReport {
    pub gamma: Tensor3,
    pub riemann: Tensor4,
    pub ricci: Matrix,
    pub ricci_op: Matrix,
    pub scalar: Scalar,
    pub einstein: bool,
}

pub fn curvature(l: &LieAlg, m: &Metric) -> CurvatureReport {
    let gamma = christoffel(l, m);
    let riemann = riemann(l, &gamma);
    let ricci = ricci(&riemann);
    let ricci_op = ricci_operator(m, &ricci);
    let scalar = scalar_curvature(m, &ricci);
    let einstein = is_einstein(m, &ricci);
    CurvatureReport {
        gamma,
        riemann,
        ricci,
        ricci_op,
        scalar,
        einstein,
    }
}

/// Inertia `(n_plus, n_minus)` of `g` at a point; `DegeneratePoint(0)` if
/// the point is a pole or `g` degenerates there.
pub fn signature_at(m: &Matrix, point: &Point) -> Result<(usize, usize), CurvatureError> {
    let values = match m.eval(point) {
        Ok(v) => v,
        Err(ScalarError::PoleAtPoint) => return Err(CurvatureError::DegeneratePoint(0)),
        Err(e) => return Err(e.into()),
    };
    let (p, n, z) = inertia(&values);
    if z > 0 {
        return Err(CurvatureError::DegeneratePoint(0));
    }
    Ok((p, n))
}

fn nth_prime(k: usize) -> u64 {
    let mut count = 0;
    let mut c = 1u64;
    loop {
        c += 1;
        if (2..c).take_while(|d| d * d <= c).all(|d| c % d != 0) {
            if count == k {
                return c;
            }
            count += 1;
        }
    }
}

/// The `k`-th deterministic sample point for the given symbols: symbol with
/// canonical index `i` gets the `(i + k)`-th prime (`a12 -> 2, a13 -> 3, ...`
/// for `k = 0`). User overrides win.
pub fn sample_point(symbols: &[Symbol], k: usize, overrides: &Point) -> Point {
    symbols
        .iter()
        .map(|&s| {
            let v = overrides
                .get(&s)
                .cloned()
                .unwrap_or_else(|| Rational::from_integer(nth_prime(s.index() + k).into()));
            (s, v)
        })
        .collect()
}

/// Signature at the `k`-th sample point, perturbing the last assigned
/// symbol (in canonical order) by `+1, +2, ...` up to `budget` times when
/// the point is a pole or degenerate. Returns the point actually used.
pub fn sample_signature(
    m: &Matrix,
    extra: &[&Scalar],
    k: usize,
    overrides: &Point,
    budget: usize,
) -> Result<((usize, usize), Point), CurvatureError> {
    let support = extra.iter().fold(m.support(), |acc, x| acc | x.support());
    let symbols: Vec<Symbol> = (0..32)
        .filter(|i| support & (1 << i) != 0)
        .map(Symbol::from_index)
        .collect();
    let mut point = sample_point(&symbols, k, overrides);
    let last = symbols.iter().rev().find(|s| !overrides.contains_key(s)).copied();
    for attempt in 0..=budget {
        if attempt > 0 {
            let Some(s) = last else { break };
            let v = point.get_mut(&s).expect("assigned");
            *v += Rational::from_integer(1.into());
        }
        // extra scalars (e.g. the square root of λ) must not vanish either
        let extra_ok = extra.iter().all(|x| matches!(x.sign_at(&point), Ok(s) if s != 0));
        if !extra_ok {
            continue;
        }
        match signature_at(m, &point) {
            Ok(sig) => return Ok((sig, point)),
            Err(CurvatureError::DegeneratePoint(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(CurvatureError::DegeneratePoint(budget))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::g2;
    use crate::exterior::parse_form;
    use crate::stable_forms::eps_structure;

    fn f(text: &str) -> Form {
        parse_form(text, 6).unwrap()
    }

    #[test]
    fn flat_abelian() {
        let l = LieAlg::abelian(6);
        let m = Metric::new(Matrix::identity(6)).unwrap();
        let r = curvature(&l, &m);
        assert!(r.gamma.is_zero() && r.riemann.is_zero());
        assert!(r.einstein);
        assert!(r.scalar.is_zero());
    }

    #[test]
    fn g2_metric_and_ricci() {
        let omega = f("a12*e12+a14*e14+a15*e15+a23*e23+a46*e46");
        let d = crate::exterior::cediff(&g2(), &omega).unwrap();
        let s = eps_structure(&d).unwrap();
        let m = associated_metric(&omega, &s).unwrap();
        assert_eq!(m.g[(0, 1)], Scalar::a(1, 2));
        let r = curvature(&g2(), &m);
        assert!(torsion_free(&g2(), &r.gamma));
        assert!(metric_compatible(&m, &r.gamma));
        assert!(r.ricci.is_symmetric());
        assert_eq!(r.ricci_op.trace(), r.scalar);
        // scaling the metric leaves the connection unchanged
        let scaled = Metric::new(m.g.scale(&Scalar::from_int(3))).unwrap();
        assert_eq!(christoffel(&g2(), &scaled), r.gamma);
        let ((p, n), _) = sample_signature(&m.g, &[], 0, &Point::new(), DEFAULT_RETRY_BUDGET).unwrap();
        assert_eq!((p, n), (3, 3));
    }

    #[test]
    fn signature_of_identity_and_retries() {
        assert_eq!(signature_at(&Matrix::identity(6), &Point::new()).unwrap(), (6, 0));
        // a12 - 3 vanishes at the first point (a12 = 3 for k = 1), retry shifts a12
        let m = Matrix::diagonal(&["a12-3".parse().unwrap(), Scalar::one()]);
        let ((p, n), point) = sample_signature(&m, &[], 1, &Point::new(), 2).unwrap();
        assert_eq!((p, n), (2, 0));
        assert_eq!(point[&Symbol::coefficient(1, 2)], Rational::from_integer(4.into()));
        assert_eq!(
            sample_signature(&m, &[], 1, &Point::new(), 0),
            Err(CurvatureError::DegeneratePoint(0))
        );
    }

    #[test]
    fn incompatible_structure_is_rejected() {
        let s = eps_structure(&f("e123+e456")).unwrap();
        assert_eq!(associated_metric(&f("e12+e34+e56"), &s), Err(CurvatureError::AsymmetricResult));
    }
}
