//! Stable 3-forms on a 6-dimensional space: the operator `K_Ω` defined by
//! `ι_{K(X)} μ = ι_X Ω ∧ Ω` with `μ = e^{123456}`, the invariant
//! `λ = tr(K²)/6`, the induced ε-structure and the dual form.

use thiserror::Error;

use crate::exterior::{cediff, ExteriorError, Form, MultiIndex};
use crate::lie_algebra::{LieAlg, Subspace};
use crate::linalg::Matrix;
use crate::scalars::{Point, Scalar, ScalarError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StableError {
    #[error("3-form is unstable (lambda = 0)")]
    UnstableForm,
    #[error("sqrt(|lambda|) is not a rational function: lambda = {0}")]
    NonSquareLambda(Scalar),
    #[error("structure is almost complex, not para-complex")]
    NotParaComplex,
    #[error(transparent)]
    Exterior(#[from] ExteriorError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

const DIM: usize = 6;

fn require(form: &Form, degree: usize) -> Result<(), StableError> {
    form.expect_degree(degree)?;
    if form.dim() != DIM {
        return Err(ExteriorError::DimensionMismatch(form.dim(), DIM).into());
    }
    Ok(())
}

/// The vector `X` with `ι_X e^{123456} = η`.
pub fn iso_lambda5(eta: &Form) -> Result<Vec<Scalar>, StableError> {
    require(eta, 5)?;
    let full = MultiIndex::from_mask(0b11_1111);
    Ok((0..DIM)
        .map(|i| {
            let c = eta.coeff(full.without(i));
            if i % 2 == 0 {
                c
            } else {
                -c
            }
        })
        .collect())
}

/// `K_Ω`; column `j` is `A(ι_{e_j} Ω ∧ Ω)`.
pub fn hitchin_k(omega: &Form) -> Result<Matrix, StableError> {
    require(omega, 3)?;
    let mut k = Matrix::zeros(DIM, DIM);
    for j in 0..DIM {
        let eta = omega.interior_basis(j)?.wedge(omega)?;
        for (i, x) in iso_lambda5(&eta)?.into_iter().enumerate() {
            k[(i, j)] = x;
        }
    }
    Ok(k)
}

pub fn hitchin_lambda(omega: &Form) -> Result<Scalar, StableError> {
    let k = hitchin_k(omega)?;
    Ok(&k.mul(&k).trace() * &Scalar::ratio(1, 6))
}

/// `J = K / sqrt(|λ|)` with `J² = ε Id`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EpsStructure {
    pub k: Matrix,
    pub lambda: Scalar,
    /// `+1` para-complex, `-1` complex.
    pub eps: i32,
    /// `sqrt(|λ|)` as used for `J`; for non-constant `λ` the root with
    /// positive leading coefficient, unless re-oriented at a point.
    pub root: Scalar,
    pub j: Matrix,
}

impl EpsStructure {
    /// Chooses the branch with `root > 0` at `point`, so that `J` is
    /// `K / |sqrt(λ)|` there.
    pub fn oriented_at(&self, point: &Point) -> Result<EpsStructure, ScalarError> {
        if self.root.sign_at(point)? >= 0 {
            return Ok(self.clone());
        }
        Ok(EpsStructure {
            root: -&self.root,
            j: self.j.neg(),
            ..self.clone()
        })
    }

    pub fn is_para_complex(&self) -> bool {
        self.eps == 1
    }
}

pub fn eps_structure(omega: &Form) -> Result<EpsStructure, StableError> {
    let k = hitchin_k(omega)?;
    let lambda = &k.mul(&k).trace() * &Scalar::ratio(1, 6);
    eps_from_k(k, lambda)
}

pub(crate) fn eps_from_k(k: Matrix, lambda: Scalar) -> Result<EpsStructure, StableError> {
    if lambda.is_zero() {
        return Err(StableError::UnstableForm);
    }
    let (eps, root) = if let Some(r) = lambda.sqrt_exact() {
        (1, r)
    } else if let Some(r) = (-&lambda).sqrt_exact() {
        (-1, r)
    } else {
        return Err(StableError::NonSquareLambda(lambda));
    };
    let inv = root.inv()?;
    let j = k.scale(&inv);
    Ok(EpsStructure {
        k,
        lambda,
        eps,
        root,
        j,
    })
}

/// `Ω̂ = J^* Ω`.
pub fn dual_form(omega: &Form, s: &EpsStructure) -> Result<Form, StableError> {
    require(omega, 3)?;
    Ok(omega.pullback(&s.j)?)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairReport {
    pub compatible: bool,
    /// `None` when `Ω` is unstable or `J` has no rational form.
    pub normalized: Option<bool>,
    pub half_flat: bool,
    pub dual: Option<Form>,
}

pub fn pair_report(l: &LieAlg, omega2: &Form, omega3: &Form) -> Result<PairReport, StableError> {
    require(omega2, 2)?;
    require(omega3, 3)?;
    let compatible = omega2.wedge(omega3)?.is_zero();
    let d_omega2 = cediff(l, omega2)?;
    let half_flat = cediff(l, omega3)?.is_zero() && omega2.wedge(&d_omega2)?.is_zero();
    let (normalized, dual) = match eps_structure(omega3) {
        Ok(s) => {
            let dual = dual_form(omega3, &s)?;
            let lhs = dual.wedge(omega3)?;
            let rhs = omega2.wedge_power(3).scale(&Scalar::ratio(2, 3));
            (Some(lhs == rhs), Some(dual))
        }
        Err(StableError::UnstableForm) | Err(StableError::NonSquareLambda(_)) => (None, None),
        Err(e) => return Err(e),
    };
    Ok(PairReport {
        compatible,
        normalized,
        half_flat,
        dual,
    })
}

/// `(E+, E-)`, the `±1` eigenspaces of a para-complex `J`.
pub fn eigen_distributions(s: &EpsStructure) -> Result<(Subspace, Subspace), StableError> {
    if !s.is_para_complex() {
        return Err(StableError::NotParaComplex);
    }
    let id = Matrix::identity(DIM);
    let plus = Subspace::span(DIM, s.j.sub(&id).nullspace());
    let minus = Subspace::span(DIM, s.j.add(&id).nullspace());
    Ok((plus, minus))
}

/// Witness that a subspace is not closed under the bracket.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BracketWitness {
    pub x: Vec<Scalar>,
    pub y: Vec<Scalar>,
    pub bracket: Vec<Scalar>,
}

/// `None` when `[W, W] ⊆ W`, otherwise a pair of basis vectors whose bracket
/// leaves `W`.
pub fn bracket_closed(l: &LieAlg, w: &Subspace) -> Option<BracketWitness> {
    let b = w.basis();
    for (i, x) in b.iter().enumerate() {
        for y in &b[i + 1..] {
            let z = l.bracket(x, y);
            if !w.contains(&z) {
                return Some(BracketWitness {
                    x: x.clone(),
                    y: y.clone(),
                    bracket: z,
                });
            }
        }
    }
    None
}

/// `N(e_i, e_j)` for `i < j` (0-based), with
/// `N(X,Y) = [JX,JY] + ε[X,Y] - J[JX,Y] - J[X,JY]`.
pub fn nijenhuis(l: &LieAlg, s: &EpsStructure) -> Vec<(usize, usize, Vec<Scalar>)> {
    let n = l.dim();
    let cols: Vec<Vec<Scalar>> = (0..n).map(|j| s.j.column(j)).collect();
    let unit = |i: usize| {
        let mut v = vec![Scalar::zero(); n];
        v[i] = Scalar::one();
        v
    };
    let eps = Scalar::from_int(s.eps as i64);
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let a = l.bracket(&cols[i], &cols[j]);
            let b = l.bracket_basis(i, j);
            let c = l.bracket(&cols[i], &unit(j));
            let d = l.bracket(&unit(i), &cols[j]);
            let cd: Vec<Scalar> = c.iter().zip(&d).map(|(x, y)| x + y).collect();
            let jcd = s.j.mul_vec(&cd);
            let v: Vec<Scalar> = (0..n).map(|k| &(&a[k] + &(&eps * &b[k])) - &jcd[k]).collect();
            out.push((i, j, v));
        }
    }
    out
}

pub fn is_integrable(l: &LieAlg, s: &EpsStructure) -> bool {
    nijenhuis(l, s).iter().all(|(_, _, v)| v.iter().all(Scalar::is_zero))
}

/// `ω(JX, JY) = -ε ω(X, Y)`, i.e. `Jᵀ W J = -ε W`.
pub fn omega_compatible(omega2: &Form, s: &EpsStructure) -> Result<bool, StableError> {
    let w = omega2.two_form_matrix()?;
    let lhs = s.j.transpose().mul(&w).mul(&s.j);
    Ok(lhs == w.scale(&Scalar::from_int(-(s.eps as i64))))
}
