//! Left-invariant forms on an `n`-dimensional Lie algebra, written in the
//! dual basis `e^1, ..., e^n`. Wedge products carry no normalizing factors.

mod diff;
mod literal;

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::linalg::{LinalgError, Matrix};
use crate::scalars::{Scalar, ScalarError, Symbol};

pub use diff::{cediff, closed_family, is_closed, wedge_closure_conditions};
pub use literal::parse_form;

/// Largest supported ambient dimension (basis labels are single digits).
pub const MAX_DIM: usize = 9;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExteriorError {
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("expected a form of degree {expected}, found degree {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("basis index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Strictly increasing multi-index, stored as a bitmask of 0-based indices.
/// Ordered lexicographically on the sorted index lists.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct MultiIndex(u16);

impl MultiIndex {
    pub const EMPTY: MultiIndex = MultiIndex(0);

    pub fn from_mask(mask: u16) -> MultiIndex {
        MultiIndex(mask)
    }

    /// From 0-based indices; `None` on repetition.
    pub fn from_indices(indices: &[usize]) -> Option<MultiIndex> {
        let mut m = 0u16;
        for &i in indices {
            assert!(i < 16, "index {i} out of range");
            if m & (1 << i) != 0 {
                return None;
            }
            m |= 1 << i;
        }
        Some(MultiIndex(m))
    }

    pub fn mask(self) -> u16 {
        self.0
    }

    pub fn degree(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 & (1 << i) != 0
    }

    /// Sorted 0-based indices.
    pub fn indices(self) -> impl Iterator<Item = usize> {
        (0..16).filter(move |&i| self.0 & (1 << i) != 0)
    }

    /// Number of indices strictly below `i`.
    pub fn rank_of(self, i: usize) -> usize {
        (self.0 & ((1u16 << i) - 1)).count_ones() as usize
    }

    pub fn without(self, i: usize) -> MultiIndex {
        MultiIndex(self.0 & !(1 << i))
    }

    /// `e^self ∧ e^other = sign * e^(self ∪ other)`; `None` if they overlap.
    pub fn wedge(self, other: MultiIndex) -> Option<(MultiIndex, i64)> {
        if self.0 & other.0 != 0 {
            return None;
        }
        // one transposition per pair (a in self, b in other) with a > b
        let mut inversions = 0;
        for b in other.indices() {
            inversions += (self.0 >> (b + 1)).count_ones();
        }
        let sign = if inversions % 2 == 0 { 1 } else { -1 };
        Some((MultiIndex(self.0 | other.0), sign))
    }

    /// Basis label with 1-based digits, e.g. `e136`.
    pub fn label(self) -> String {
        let digits: String = self.indices().map(|i| char::from(b'1' + i as u8)).collect();
        format!("e{digits}")
    }
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.indices().cmp(other.indices())
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// Homogeneous form with no stored zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Form {
    dim: usize,
    degree: usize,
    coeffs: BTreeMap<MultiIndex, Scalar>,
}

impl Form {
    pub fn zero(dim: usize, degree: usize) -> Form {
        assert!(dim <= MAX_DIM, "dimension {dim} not supported");
        Form {
            dim,
            degree,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn scalar(dim: usize, c: Scalar) -> Form {
        let mut f = Form::zero(dim, 0);
        f.add_term(MultiIndex::EMPTY, c);
        f
    }

    /// `e^{i1 ... ik}` from 1-based indices in any order, with the
    /// permutation sign.
    pub fn basis(dim: usize, indices: &[usize]) -> Result<Form, ExteriorError> {
        let mut f = Form::scalar(dim, Scalar::one());
        for &i in indices {
            if i == 0 || i > dim {
                return Err(ExteriorError::IndexOutOfRange(i));
            }
            f = f.wedge(&Form::one_form(dim, i - 1))?;
        }
        Ok(f)
    }

    /// `e^k`, 0-based.
    pub fn one_form(dim: usize, k: usize) -> Form {
        let mut f = Form::zero(dim, 1);
        f.add_term(MultiIndex(1 << k), Scalar::one());
        f
    }

    pub fn from_terms(dim: usize, degree: usize, terms: impl IntoIterator<Item = (MultiIndex, Scalar)>) -> Form {
        let mut f = Form::zero(dim, degree);
        for (m, c) in terms {
            assert_eq!(m.degree(), degree, "inhomogeneous term {m:?}");
            f.add_term(m, c);
        }
        f
    }

    pub(crate) fn add_term(&mut self, m: MultiIndex, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.get_mut(&m) {
            Some(old) => {
                let s = &*old + &c;
                if s.is_zero() {
                    self.coeffs.remove(&m);
                } else {
                    *old = s;
                }
            }
            None => {
                self.coeffs.insert(m, c);
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, m: MultiIndex) -> Scalar {
        self.coeffs.get(&m).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Coefficient of `e^{indices}` (1-based, sorted).
    pub fn coeff_of(&self, indices: &[usize]) -> Scalar {
        let zero_based: Vec<usize> = indices.iter().map(|i| i - 1).collect();
        MultiIndex::from_indices(&zero_based).map_or_else(Scalar::zero, |m| self.coeff(m))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Scalar)> {
        self.coeffs.iter()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn check_same(&self, other: &Form) -> Result<(), ExteriorError> {
        if self.dim != other.dim {
            return Err(ExteriorError::DimensionMismatch(self.dim, other.dim));
        }
        if self.degree != other.degree && !self.is_zero() && !other.is_zero() {
            return Err(ExteriorError::DegreeMismatch {
                expected: self.degree,
                found: other.degree,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Form) -> Result<Form, ExteriorError> {
        self.check_same(other)?;
        if self.is_zero() {
            return Ok(other.clone());
        }
        let mut out = self.clone();
        for (m, c) in &other.coeffs {
            out.add_term(*m, c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Form) -> Result<Form, ExteriorError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Form {
        self.map_coeffs(|c| -c)
    }

    pub fn scale(&self, s: &Scalar) -> Form {
        if s.is_zero() {
            return Form::zero(self.dim, self.degree);
        }
        self.map_coeffs(|c| c * s)
    }

    fn map_coeffs(&self, mut f: impl FnMut(&Scalar) -> Scalar) -> Form {
        let mut out = Form::zero(self.dim, self.degree);
        for (m, c) in &self.coeffs {
            out.add_term(*m, f(c));
        }
        out
    }

    pub fn wedge(&self, other: &Form) -> Result<Form, ExteriorError> {
        if self.dim != other.dim {
            return Err(ExteriorError::DimensionMismatch(self.dim, other.dim));
        }
        let degree = self.degree + other.degree;
        let mut out = Form::zero(self.dim, degree);
        if degree > self.dim {
            return Ok(out);
        }
        for (a, x) in &self.coeffs {
            for (b, y) in &other.coeffs {
                if let Some((m, sign)) = a.wedge(*b) {
                    let p = x * y;
                    out.add_term(m, if sign < 0 { -p } else { p });
                }
            }
        }
        Ok(out)
    }

    /// `self ∧ self ∧ ... ∧ self` (`k` factors).
    pub fn wedge_power(&self, k: usize) -> Form {
        let mut out = Form::scalar(self.dim, Scalar::one());
        for _ in 0..k {
            out = out.wedge(self).expect("same dimension");
        }
        out
    }

    /// Interior product `ι_X`, an antiderivation with `ι_X e^j = X^j`.
    pub fn interior(&self, x: &[Scalar]) -> Result<Form, ExteriorError> {
        if x.len() != self.dim {
            return Err(ExteriorError::DimensionMismatch(self.dim, x.len()));
        }
        if self.degree == 0 {
            return Err(ExteriorError::DegreeMismatch {
                expected: 1,
                found: 0,
            });
        }
        let mut out = Form::zero(self.dim, self.degree - 1);
        for (m, c) in &self.coeffs {
            for i in m.indices() {
                if x[i].is_zero() {
                    continue;
                }
                let t = c * &x[i];
                out.add_term(m.without(i), if m.rank_of(i) % 2 == 0 { t } else { -t });
            }
        }
        Ok(out)
    }

    /// `ι_{e_i}`, 0-based.
    pub fn interior_basis(&self, i: usize) -> Result<Form, ExteriorError> {
        let mut x = vec![Scalar::zero(); self.dim];
        x[i] = Scalar::one();
        self.interior(&x)
    }

    /// Coefficient-wise substitution; terms that vanish are dropped.
    pub fn substitute(&self, subs: &BTreeMap<Symbol, Scalar>) -> Result<Form, ScalarError> {
        let mut out = Form::zero(self.dim, self.degree);
        for (m, c) in &self.coeffs {
            out.add_term(*m, c.substitute(subs)?);
        }
        Ok(out)
    }

    /// Pullback by the linear map `M`, with `M^* e^i = sum_a M[i][a] e^a`.
    pub fn pullback(&self, m: &Matrix) -> Result<Form, ExteriorError> {
        if m.rows() != self.dim || m.cols() != self.dim {
            return Err(ExteriorError::DimensionMismatch(self.dim, m.rows()));
        }
        let images: Vec<Form> = (0..self.dim)
            .map(|i| {
                Form::from_terms(
                    self.dim,
                    1,
                    (0..self.dim).map(|a| (MultiIndex(1 << a), m[(i, a)].clone())),
                )
            })
            .collect();
        let mut out = Form::zero(self.dim, self.degree);
        for (idx, c) in &self.coeffs {
            let mut t = Form::scalar(self.dim, c.clone());
            for i in idx.indices() {
                t = t.wedge(&images[i])?;
            }
            out = out.add(&t)?;
        }
        Ok(out)
    }

    /// Antisymmetric matrix `W` of a 2-form, `W[i][j] = ω(e_i, e_j)`.
    pub fn two_form_matrix(&self) -> Result<Matrix, ExteriorError> {
        self.expect_degree(2)?;
        let mut w = Matrix::zeros(self.dim, self.dim);
        for (m, c) in &self.coeffs {
            let ij: Vec<usize> = m.indices().collect();
            w[(ij[0], ij[1])] = c.clone();
            w[(ij[1], ij[0])] = -c;
        }
        Ok(w)
    }

    pub fn expect_degree(&self, degree: usize) -> Result<(), ExteriorError> {
        if self.degree != degree {
            return Err(ExteriorError::DegreeMismatch {
                expected: degree,
                found: self.degree,
            });
        }
        Ok(())
    }

    /// Bitmask of all symbols occurring in coefficients.
    pub fn support(&self) -> u32 {
        self.coeffs.values().fold(0, |m, c| m | c.support())
    }
}

/// `sum_{i<j} a_ij e^{ij}` in dimension 6.
pub fn generic_two_form(dim: usize) -> Form {
    assert_eq!(dim, 6, "generic coefficient symbols exist for dimension 6");
    let mut f = Form::zero(dim, 2);
    for s in Symbol::coefficients() {
        let (i, j) = s.coefficient_indices().expect("coefficient symbol");
        f.add_term(
            MultiIndex::from_indices(&[i - 1, j - 1]).expect("distinct"),
            Scalar::symbol(s),
        );
    }
    f
}

/// `ω ∧ ω ∧ ω` for a 2-form in dimension 6.
pub fn two_form_cube(omega: &Form) -> Result<Form, ExteriorError> {
    omega.expect_degree(2)?;
    if omega.dim() != 6 {
        return Err(ExteriorError::DimensionMismatch(omega.dim(), 6));
    }
    Ok(omega.wedge_power(3))
}

/// Non-degeneracy of a 2-form on a 6-space; the certificate is the
/// coefficient of `e^{123456}` in `ω^3` (six times the Pfaffian).
pub fn is_nondegenerate2(omega: &Form) -> Result<(bool, Scalar), ExteriorError> {
    let cube = two_form_cube(omega)?;
    let c = cube.coeff(MultiIndex(0b11_1111));
    Ok((!c.is_zero(), c))
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&literal::format_form(self))
    }
}

impl fmt::Debug for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Form[{}]({})", self.degree, self)
    }
}
