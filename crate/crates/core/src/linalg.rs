//! Dense matrices over [`Scalar`] and exact inertia of rational symmetric
//! matrices.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Index, IndexMut};

use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::scalars::{Point, Poly, Rational, Scalar, ScalarError, Symbol};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("matrix is singular")]
    Singular,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("equation {0} is not linear in the unknowns")]
    Nonlinear(usize),
    #[error("linear system is inconsistent")]
    Inconsistent,
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Matrix {
        Matrix {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Matrix {
        Matrix::from_fn(n, n, |i, j| if i == j { Scalar::one() } else { Scalar::zero() })
    }

    pub fn diagonal(entries: &[Scalar]) -> Matrix {
        let n = entries.len();
        Matrix::from_fn(n, n, |i, j| if i == j { entries[i].clone() } else { Scalar::zero() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Matrix {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Builds from row vectors; all rows must have equal length.
    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Matrix {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_int_rows(rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Scalar::from_int(x)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn map(&self, f: impl FnMut(&Scalar) -> Scalar) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn try_map<E>(&self, f: impl FnMut(&Scalar) -> Result<Scalar, E>) -> Result<Matrix, E> {
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect::<Result<_, _>>()?,
        })
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        self.map(|x| x * c)
    }

    pub fn neg(&self) -> Matrix {
        self.map(|x| -x)
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix product shape");
        Matrix::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = Scalar::zero();
            for k in 0..self.cols {
                let a = &self[(i, k)];
                let b = &other[(k, j)];
                if !a.is_zero() && !b.is_zero() {
                    acc = &acc + &(a * b);
                }
            }
            acc
        })
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = Scalar::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn trace(&self) -> Scalar {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)].clone()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self[(i, j)].is_zero()))
    }

    /// Common factor `c` with `self = c * other`, if one exists. A zero matrix
    /// is proportional to anything with `c = 0`.
    pub fn proportionality(&self, other: &Matrix) -> Option<Scalar> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return None;
        }
        let Some(k) = other.data.iter().position(|x| !x.is_zero()) else {
            return self.is_zero().then(Scalar::zero);
        };
        let c = self.data[k].checked_div(&other.data[k]).ok()?;
        (self == &other.scale(&c)).then_some(c)
    }

    /// Reduced row echelon form and pivot columns. Pivots are chosen as the
    /// first non-zero entry of each column.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m[(r, c)].inv().expect("pivot is non-zero");
            for j in c..m.cols {
                let v = &m[(r, j)] * &inv;
                m[(r, j)] = v;
            }
            for i in 0..m.rows {
                if i == r || m[(i, c)].is_zero() {
                    continue;
                }
                let f = m[(i, c)].clone();
                for j in c..m.cols {
                    if m[(r, j)].is_zero() {
                        continue;
                    }
                    let v = &m[(i, j)] - &(&f * &m[(r, j)]);
                    m[(i, j)] = v;
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{x : self * x = 0}`, one vector per free column, with a 1 in
    /// that column.
    pub fn nullspace(&self) -> Vec<Vec<Scalar>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Scalar::zero(); self.cols];
                v[f] = Scalar::one();
                for (row, &p) in pivots.iter().enumerate() {
                    v[p] = -&r[(row, f)];
                }
                v
            })
            .collect()
    }

    pub fn inverse(&self) -> Result<Matrix, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::DimensionMismatch(format!(
                "inverse of a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        let mut m = self.clone();
        let mut inv = Matrix::identity(n);
        for c in 0..n {
            // smallest pivot keeps intermediate expressions small
            let p = (c..n)
                .filter(|&i| !m[(i, c)].is_zero())
                .min_by_key(|&i| m[(i, c)].size())
                .ok_or(LinalgError::Singular)?;
            m.swap_rows(c, p);
            inv.swap_rows(c, p);
            let pinv = m[(c, c)].inv().expect("pivot is non-zero");
            for j in 0..n {
                let a = &m[(c, j)] * &pinv;
                m[(c, j)] = a;
                let b = &inv[(c, j)] * &pinv;
                inv[(c, j)] = b;
            }
            for i in 0..n {
                if i == c || m[(i, c)].is_zero() {
                    continue;
                }
                let f = m[(i, c)].clone();
                for j in 0..n {
                    if !m[(c, j)].is_zero() {
                        let v = &m[(i, j)] - &(&f * &m[(c, j)]);
                        m[(i, j)] = v;
                    }
                    if !inv[(c, j)].is_zero() {
                        let v = &inv[(i, j)] - &(&f * &inv[(c, j)]);
                        inv[(i, j)] = v;
                    }
                }
            }
        }
        Ok(inv)
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn eval(&self, point: &Point) -> Result<Vec<Vec<Rational>>, ScalarError> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|x| x.eval(point)).collect())
            .collect()
    }

    pub fn support(&self) -> u32 {
        self.data.iter().fold(0, |m, x| m | x.support())
    }

    pub fn to_strings(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(Scalar::to_string).collect())
            .collect()
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Scalar;

    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(Scalar::to_string).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Solves `eqs = 0`, affine-linear in `unknowns` with coefficients in the
/// remaining symbols. Pivots follow the order of `unknowns`, so earlier
/// unknowns are expressed through later ones. Free unknowns are omitted
/// from the result.
pub fn solve_linear(eqs: &[Scalar], unknowns: &[Symbol]) -> Result<BTreeMap<Symbol, Scalar>, LinalgError> {
    let mask: u32 = unknowns.iter().fold(0, |m, s| m | (1 << s.index()));
    let n = unknowns.len();
    let mut rows = Vec::new();
    for (e, eq) in eqs.iter().enumerate() {
        if eq.is_zero() {
            continue;
        }
        if eq.denom().support() & mask != 0 {
            return Err(LinalgError::Nonlinear(e));
        }
        let den = Scalar::from_poly(eq.denom().clone());
        let mut rest = eq.numer().clone();
        let mut row = vec![Scalar::zero(); n + 1];
        for (k, u) in unknowns.iter().enumerate() {
            let cs = rest.coeffs_in(u.index());
            if cs.len() > 2 {
                return Err(LinalgError::Nonlinear(e));
            }
            if let Some(c) = cs.get(1) {
                if c.support() & mask != 0 {
                    return Err(LinalgError::Nonlinear(e));
                }
                row[k] = Scalar::from_poly(c.clone()).checked_div(&den).expect("non-zero");
            }
            rest = cs.into_iter().next().unwrap_or_else(Poly::zero);
        }
        // move the constant part to the right-hand side
        row[n] = -Scalar::from_poly(rest).checked_div(&den).expect("non-zero");
        rows.push(row);
    }
    let mut out = BTreeMap::new();
    if rows.is_empty() {
        return Ok(out);
    }
    let (r, pivots) = Matrix::from_rows(rows).rref();
    if pivots.contains(&n) {
        return Err(LinalgError::Inconsistent);
    }
    for (row, &p) in pivots.iter().enumerate() {
        let mut v = r[(row, n)].clone();
        for f in (0..n).filter(|f| !pivots.contains(f)) {
            if !r[(row, f)].is_zero() {
                v = &v - &(&r[(row, f)] * &Scalar::symbol(unknowns[f]));
            }
        }
        out.insert(unknowns[p], v);
    }
    Ok(out)
}

/// Inertia `(n_plus, n_minus, n_zero)` of a symmetric rational matrix by
/// symmetric Gaussian elimination (congruence transformations only).
pub fn inertia(m: &[Vec<Rational>]) -> (usize, usize, usize) {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m.to_vec();
    let (mut pos, mut neg, mut zero) = (0, 0, 0);
    for k in 0..n {
        if a[k][k].is_zero() {
            if let Some(j) = (k + 1..n).find(|&j| !a[j][j].is_zero()) {
                a.swap(k, j);
                for row in a.iter_mut() {
                    row.swap(k, j);
                }
            } else if let Some(j) = (k + 1..n).find(|&j| !a[k][j].is_zero()) {
                // row/column k += row/column j makes the diagonal 2*a[k][j]
                for c in 0..n {
                    let v = a[j][c].clone();
                    a[k][c] += v;
                }
                for row in a.iter_mut() {
                    let v = row[j].clone();
                    row[k] += v;
                }
            } else {
                zero += 1;
                continue;
            }
        }
        let p = a[k][k].clone();
        if p.is_positive() {
            pos += 1;
        } else {
            neg += 1;
        }
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let f = &a[i][k] / &p;
            for c in k..n {
                let v = &f * &a[k][c];
                a[i][c] -= v;
            }
            for r in a.iter_mut().skip(k) {
                let v = &f * &r[k];
                r[i] -= v;
            }
        }
    }
    (pos, neg, zero)
}
