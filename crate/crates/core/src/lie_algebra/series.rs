use crate::linalg::Matrix;
use crate::scalars::Scalar;

use super::{LieAlg, Subspace};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NilpotencyStep {
    Step(usize),
    NotNilpotent,
}

impl LieAlg {
    /// `[U, W]` as a subspace.
    pub fn bracket_span(&self, u: &Subspace, w: &Subspace) -> Subspace {
        let mut vectors = Vec::new();
        for x in u.basis() {
            for y in w.basis() {
                vectors.push(self.bracket(x, y));
            }
        }
        Subspace::span(self.dim(), vectors)
    }

    /// `C^0 = g, C^{k+1} = [g, C^k]` until it stabilizes.
    pub fn lower_central_series(&self) -> Vec<Subspace> {
        let g = Subspace::full(self.dim());
        iterate(g, |c| self.bracket_span(&Subspace::full(self.dim()), c))
    }

    /// `D^0 = g, D^{k+1} = [D^k, D^k]` until it stabilizes.
    pub fn derived_series(&self) -> Vec<Subspace> {
        iterate(Subspace::full(self.dim()), |d| self.bracket_span(d, d))
    }

    /// `g_0 = 0, g_l = {X : [X, g] in g_{l-1}}` until it stabilizes.
    pub fn ascending_central_series(&self) -> Vec<Subspace> {
        iterate(Subspace::zero(self.dim()), |prev| self.preimage_center(prev))
    }

    pub fn center(&self) -> Subspace {
        self.preimage_center(&Subspace::zero(self.dim()))
    }

    /// `{X : [X, e_j] in w for all j}`.
    fn preimage_center(&self, w: &Subspace) -> Subspace {
        let n = self.dim();
        let ann = w.annihilator();
        // rows: f([X, e_j]) = sum_i X^i sum_k f_k C^k_ij
        let mut rows = Vec::new();
        for f in &ann {
            for j in 0..n {
                let row: Vec<Scalar> = (0..n)
                    .map(|i| {
                        (0..n)
                            .filter(|&k| !f[k].is_zero())
                            .map(|k| &f[k] * self.c(i, j, k))
                            .sum()
                    })
                    .collect();
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
        if rows.is_empty() {
            return Subspace::full(n);
        }
        Subspace::span(n, Matrix::from_rows(rows).nullspace())
    }

    /// Least `s` with `C^s = 0` in the lower central series.
    pub fn nilpotency_step(&self) -> NilpotencyStep {
        let series = self.lower_central_series();
        match series.last() {
            Some(last) if last.dim() == 0 => NilpotencyStep::Step(series.len() - 1),
            _ => NilpotencyStep::NotNilpotent,
        }
    }
}

fn iterate(start: Subspace, mut next: impl FnMut(&Subspace) -> Subspace) -> Vec<Subspace> {
    let mut out = vec![start];
    loop {
        let n = next(out.last().expect("non-empty"));
        if &n == out.last().expect("non-empty") {
            return out;
        }
        out.push(n);
    }
}

pub fn dims(series: &[Subspace]) -> Vec<usize> {
    series.iter().map(Subspace::dim).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie_algebra::tests::g1;

    #[test]
    fn g1_series() {
        let l = g1();
        assert_eq!(dims(&l.lower_central_series()), vec![6, 4, 3, 2, 1, 0]);
        assert_eq!(l.nilpotency_step(), NilpotencyStep::Step(5));
        assert_eq!(l.center(), Subspace::of_basis(6, &[6]));
        let asc = l.ascending_central_series();
        assert_eq!(asc.last().unwrap().dim(), 6);
    }

    #[test]
    fn abelian_series() {
        let l = LieAlg::abelian(4);
        assert_eq!(dims(&l.lower_central_series()), vec![4, 0]);
        assert_eq!(l.center().dim(), 4);
        assert_eq!(l.nilpotency_step(), NilpotencyStep::Step(1));
    }

    #[test]
    fn non_nilpotent() {
        // [e1, e2] = e2
        let l = LieAlg::from_basis_brackets(2, &[(1, 2, 2, 1)]).unwrap();
        assert_eq!(l.nilpotency_step(), NilpotencyStep::NotNilpotent);
        assert_eq!(dims(&l.derived_series()), vec![2, 1, 0]);
    }
}
