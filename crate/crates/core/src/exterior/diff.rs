use std::collections::{BTreeMap, BTreeSet};

use crate::lie_algebra::LieAlg;
use crate::linalg::solve_linear;
use crate::scalars::{Scalar, Symbol};

use super::{ExteriorError, Form, MultiIndex};

/// `de^k = -sum_{i<j} C^k_ij e^{ij}`.
fn d_basis_one_forms(l: &LieAlg) -> Vec<Form> {
    let n = l.dim();
    (0..n)
        .map(|k| {
            let mut f = Form::zero(n, 2);
            for i in 0..n {
                for j in i + 1..n {
                    let c = l.c(i, j, k);
                    if !c.is_zero() {
                        f.add_term(MultiIndex::from_indices(&[i, j]).expect("distinct"), -c);
                    }
                }
            }
            f
        })
        .collect()
}

/// Chevalley–Eilenberg differential, extended from `de^k` as a graded
/// derivation: `d e^I = sum_m (-1)^m e^{I - i_m} ∧ de^{i_m}`.
pub fn cediff(l: &LieAlg, alpha: &Form) -> Result<Form, ExteriorError> {
    if l.dim() != alpha.dim() {
        return Err(ExteriorError::DimensionMismatch(l.dim(), alpha.dim()));
    }
    let n = alpha.dim();
    let de = d_basis_one_forms(l);
    let mut out = Form::zero(n, alpha.degree() + 1);
    for (m, c) in alpha.terms() {
        for (pos, i) in m.indices().enumerate() {
            if de[i].is_zero() {
                continue;
            }
            let rest = Form::from_terms(n, m.degree() - 1, [(m.without(i), Scalar::one())]);
            let t = rest.wedge(&de[i])?.scale(c);
            out = out.add(&if pos % 2 == 0 { t } else { t.neg() })?;
        }
    }
    Ok(out)
}

pub fn is_closed(l: &LieAlg, alpha: &Form) -> Result<bool, ExteriorError> {
    Ok(cediff(l, alpha)?.is_zero())
}

/// Non-zero coefficients of `ω ∧ dω`; their common vanishing is the
/// condition `ω ∧ dω = 0`.
pub fn wedge_closure_conditions(l: &LieAlg, omega: &Form) -> Result<Vec<(MultiIndex, Scalar)>, ExteriorError> {
    omega.expect_degree(2)?;
    let f = omega.wedge(&cediff(l, omega)?)?;
    Ok(f.terms().map(|(m, c)| (*m, c.clone())).collect())
}

/// Solves `dω = 0` for the coefficient symbols of `ω`. Later symbols in the
/// canonical order are eliminated first, so the family is expressed through
/// the earlier ones (e.g. `a34 = -a25`).
pub fn closed_family(l: &LieAlg, omega: &Form) -> Result<BTreeMap<Symbol, Scalar>, ExteriorError> {
    let d = cediff(l, omega)?;
    let eqs: Vec<Scalar> = d.terms().map(|(_, c)| c.clone()).collect();
    let symbols: BTreeSet<Symbol> = omega.terms().flat_map(|(_, c)| c.symbols()).collect();
    let unknowns: Vec<Symbol> = symbols.into_iter().rev().collect();
    Ok(solve_linear(&eqs, &unknowns)?)
}
