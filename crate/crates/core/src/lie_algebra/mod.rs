//! Lie algebras given by structure constants `[e_i, e_j] = C^k_ij e_k`.
//!
//! Public constructors and reports use 1-based basis labels (`e1..en`);
//! [`LieAlg::c`] and vector components are 0-based.

pub mod series;
mod subspace;
mod tuple;

use std::fmt;

use thiserror::Error;

use crate::scalars::{Scalar, ScalarError};

pub use series::NilpotencyStep;
pub use subspace::Subspace;
pub use tuple::parse_tuple;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LieError {
    #[error("basis index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("entry {entry} references e^{index}, which is not below it")]
    NotNilpotentOrder { entry: usize, index: usize },
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// Bracket `[e_i, e_j] = sum_k coeffs[k] e_k` with 1-based `i < j`.
pub type Bracket = (usize, usize, Vec<Scalar>);

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LieAlg {
    dim: usize,
    c: Vec<Scalar>,
}

impl LieAlg {
    pub fn abelian(dim: usize) -> LieAlg {
        LieAlg {
            dim,
            c: vec![Scalar::zero(); dim * dim * dim],
        }
    }

    /// Builds the algebra from its non-zero brackets; the antisymmetric
    /// partner `[e_j, e_i]` is filled in.
    pub fn from_brackets(dim: usize, brackets: &[Bracket]) -> Result<LieAlg, LieError> {
        let mut l = LieAlg::abelian(dim);
        for (i, j, v) in brackets {
            for &index in [i, j] {
                if index == 0 || index > dim {
                    return Err(LieError::IndexOutOfRange { index, dim });
                }
            }
            if v.len() != dim {
                return Err(LieError::IndexOutOfRange { index: v.len(), dim });
            }
            if i == j {
                return Err(LieError::IndexOutOfRange { index: *j, dim });
            }
            for (k, x) in v.iter().enumerate() {
                l.set_c(i - 1, j - 1, k, x.clone());
            }
        }
        Ok(l)
    }

    /// Shorthand for integer brackets `[e_i, e_j] = c e_k`, all 1-based.
    pub fn from_basis_brackets(dim: usize, brackets: &[(usize, usize, usize, i64)]) -> Result<LieAlg, LieError> {
        let mut l = LieAlg::abelian(dim);
        for &(i, j, k, coeff) in brackets {
            for index in [i, j, k] {
                if index == 0 || index > dim {
                    return Err(LieError::IndexOutOfRange { index, dim });
                }
            }
            let old = l.c(i - 1, j - 1, k - 1).clone();
            l.set_c(i - 1, j - 1, k - 1, old + Scalar::from_int(coeff));
        }
        Ok(l)
    }

    fn set_c(&mut self, i: usize, j: usize, k: usize, x: Scalar) {
        let n = self.dim;
        self.c[(j * n + i) * n + k] = -&x;
        self.c[(i * n + j) * n + k] = x;
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `C^k_ij`, 0-based.
    #[inline]
    pub fn c(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.c[(i * self.dim + j) * self.dim + k]
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> Vec<Scalar> {
        (0..self.dim).map(|k| self.c(i, j, k).clone()).collect()
    }

    pub fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let n = self.dim;
        let mut out = vec![Scalar::zero(); n];
        for i in 0..n {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if y[j].is_zero() || i == j {
                    continue;
                }
                let xy = &x[i] * &y[j];
                for (k, o) in out.iter_mut().enumerate() {
                    let c = self.c(i, j, k);
                    if !c.is_zero() {
                        *o = &*o + &(&xy * c);
                    }
                }
            }
        }
        out
    }

    pub fn is_abelian(&self) -> bool {
        self.c.iter().all(Scalar::is_zero)
    }

    /// Non-zero brackets `[e_i, e_j]`, `i < j`, 1-based.
    pub fn brackets(&self) -> Vec<Bracket> {
        let mut out = Vec::new();
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                let v = self.bracket_basis(i, j);
                if v.iter().any(|x| !x.is_zero()) {
                    out.push((i + 1, j + 1, v));
                }
            }
        }
        out
    }

    /// Every triple `i < j < k` (1-based) where
    /// `[[e_i,e_j],e_k] + [[e_j,e_k],e_i] + [[e_k,e_i],e_j]` is non-zero.
    pub fn jacobi_defect(&self) -> Vec<(usize, usize, usize, Vec<Scalar>)> {
        let n = self.dim;
        let unit = |i: usize| {
            let mut v = vec![Scalar::zero(); n];
            v[i] = Scalar::one();
            v
        };
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let a = self.bracket(&self.bracket_basis(i, j), &unit(k));
                    let b = self.bracket(&self.bracket_basis(j, k), &unit(i));
                    let c = self.bracket(&self.bracket_basis(k, i), &unit(j));
                    let sum: Vec<Scalar> = (0..n).map(|m| &(&a[m] + &b[m]) + &c[m]).collect();
                    if sum.iter().any(|x| !x.is_zero()) {
                        out.push((i + 1, j + 1, k + 1, sum));
                    }
                }
            }
        }
        out
    }
}

fn format_vector(v: &[Scalar]) -> String {
    let mut parts = Vec::new();
    for (k, x) in v.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        let coeff = if x.is_one() {
            String::new()
        } else if x == &Scalar::from_int(-1) {
            "-".to_string()
        } else if x.numer().len() > 1 {
            format!("({x})*")
        } else {
            format!("{x}*")
        };
        parts.push(format!("{coeff}e{}", k + 1));
    }
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" + ").replace("+ -", "- ")
    }
}

impl fmt::Debug for LieAlg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LieAlg(dim {}", self.dim)?;
        for (i, j, v) in self.brackets() {
            write!(f, ", [e{i},e{j}] = {}", format_vector(&v))?;
        }
        write!(f, ")")
    }
}

/// Human-readable bracket list, e.g. `[e1,e2] = e3`.
pub fn format_brackets(l: &LieAlg) -> Vec<String> {
    l.brackets()
        .into_iter()
        .map(|(i, j, v)| format!("[e{i},e{j}] = {}", format_vector(&v)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn g1() -> LieAlg {
        LieAlg::from_basis_brackets(
            6,
            &[(1, 2, 3, 1), (1, 3, 4, 1), (1, 4, 5, 1), (2, 3, 5, 1), (3, 4, 6, 1), (2, 5, 6, -1)],
        )
        .unwrap()
    }

    #[test]
    fn antisymmetric_completion() {
        let l = g1();
        assert_eq!(l.c(1, 0, 2), &Scalar::from_int(-1));
        assert_eq!(l.c(4, 1, 5), &Scalar::one());
        assert_eq!(l.brackets().len(), 6);
        assert_eq!(format_brackets(&l)[5], "[e3,e4] = e6");
    }

    #[test]
    fn index_errors() {
        assert_eq!(
            LieAlg::from_basis_brackets(6, &[(1, 7, 3, 1)]),
            Err(LieError::IndexOutOfRange { index: 7, dim: 6 })
        );
    }

    #[test]
    fn jacobi() {
        assert!(g1().jacobi_defect().is_empty());
        assert!(LieAlg::abelian(6).jacobi_defect().is_empty());
        // C^5_23 is not constrained by Jacobi on this bracket pattern
        let rescaled = LieAlg::from_basis_brackets(
            6,
            &[(1, 2, 3, 1), (1, 3, 4, 1), (1, 4, 5, 1), (2, 3, 5, 2), (3, 4, 6, 1), (2, 5, 6, -1)],
        )
        .unwrap();
        assert!(rescaled.jacobi_defect().is_empty());
        let broken = LieAlg::from_basis_brackets(
            6,
            &[(1, 2, 3, 1), (1, 3, 4, 1), (1, 4, 5, 1), (2, 3, 5, 1), (3, 4, 6, 2), (2, 5, 6, -1)],
        )
        .unwrap();
        let defect = broken.jacobi_defect();
        assert_eq!(defect.len(), 1);
        assert_eq!((defect[0].0, defect[0].1, defect[0].2), (1, 2, 4));
        assert!(!broken.jacobi_defect().is_empty());
    }
}
