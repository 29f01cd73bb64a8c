use crate::linalg::Matrix;
use crate::scalars::Scalar;

/// Linear subspace of `Scalar^n`, stored as the non-zero rows of a reduced
/// row echelon basis so that equal subspaces have identical bases.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vec<Scalar>>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Subspace {
        Subspace {
            ambient,
            basis: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Subspace {
        Subspace::span(ambient, Matrix::identity(ambient).to_rows())
    }

    /// Span of arbitrary (possibly dependent) vectors.
    pub fn span(ambient: usize, vectors: Vec<Vec<Scalar>>) -> Subspace {
        let vectors: Vec<Vec<Scalar>> = vectors
            .into_iter()
            .filter(|v| v.iter().any(|x| !x.is_zero()))
            .collect();
        if vectors.is_empty() {
            return Subspace::zero(ambient);
        }
        assert!(vectors.iter().all(|v| v.len() == ambient), "vector length");
        let (r, pivots) = Matrix::from_rows(vectors).rref();
        Subspace {
            ambient,
            basis: (0..pivots.len()).map(|i| r.row(i).to_vec()).collect(),
        }
    }

    /// Span of standard basis vectors, 1-based labels as in `e1..en`.
    pub fn of_basis(ambient: usize, labels: &[usize]) -> Subspace {
        Subspace::span(
            ambient,
            labels
                .iter()
                .map(|&l| {
                    let mut v = vec![Scalar::zero(); ambient];
                    v[l - 1] = Scalar::one();
                    v
                })
                .collect(),
        )
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.basis
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        if v.iter().all(Scalar::is_zero) {
            return true;
        }
        let mut rows = self.basis.clone();
        rows.push(v.to_vec());
        Matrix::from_rows(rows).rank() == self.dim()
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.basis.iter().all(|v| other.contains(v))
    }

    /// Row vectors spanning the annihilator `{f : f(v) = 0 for v in self}`.
    pub fn annihilator(&self) -> Vec<Vec<Scalar>> {
        if self.basis.is_empty() {
            return Matrix::identity(self.ambient).to_rows();
        }
        Matrix::from_rows(self.basis.clone()).nullspace()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn span_equality_ignores_generators() {
        let a = Scalar::a(4, 6);
        let b = Scalar::a(5, 6);
        let z = Scalar::zero;
        let one = Scalar::one;
        let w1 = Subspace::span(
            3,
            vec![vec![b.clone(), z(), a.clone()], vec![z(), one(), z()]],
        );
        let w2 = Subspace::span(
            3,
            vec![
                vec![b.clone(), one(), a.clone()],
                vec![z(), Scalar::from_int(2), z()],
                vec![b.clone(), z(), a.clone()],
            ],
        );
        assert_eq!(w1, w2);
        assert_eq!(w1.dim(), 2);
        assert!(w1.contains(&[b, z(), a]));
        assert!(!w1.contains(&[one(), z(), z()]));
        assert_eq!(w1.annihilator().len(), 1);
    }
}
