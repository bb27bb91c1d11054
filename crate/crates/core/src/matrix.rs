//! Dense matrices over an exact field, with the handful of linear-algebra
//! primitives the rest of the crate is built from (echelon forms, kernels,
//! images, solving, subspace arithmetic).
//!
//! Subspaces are represented by matrices whose columns form a basis.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::field::Field;

#[derive(Clone, PartialEq)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Field> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self[(r, c)])?;
            }
        }
        write!(f, "] ({}x{})", self.rows, self.cols)
    }
}

impl<F> std::ops::Index<(usize, usize)> for Matrix<F> {
    type Output = F;
    fn index(&self, (r, c): (usize, usize)) -> &F {
        &self.data[r * self.cols + c]
    }
}

impl<F> std::ops::IndexMut<(usize, usize)> for Matrix<F> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut F {
        &mut self.data[r * self.cols + c]
    }
}

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![F::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = F::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Build from row vectors; `cols` is needed when there are no rows.
    pub fn from_rows(rows: Vec<Vec<F>>, cols: usize) -> Self {
        let r = rows.len();
        let mut data = Vec::with_capacity(r * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged matrix rows");
            data.extend(row);
        }
        Matrix { rows: r, cols, data }
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&v| F::from_i64(v)).collect()).collect(), cols)
    }

    /// Single column vector.
    pub fn column(v: Vec<F>) -> Self {
        let n = v.len();
        Matrix { rows: n, cols: 1, data: v }
    }

    pub fn unit_column(n: usize, i: usize) -> Self {
        let mut m = Self::zeros(n, 1);
        m[(i, 0)] = F::one();
        m
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

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn col(&self, c: usize) -> Self {
        Self::from_fn(self.rows, 1, |r, _| self[(r, c)].clone())
    }

    pub fn col_vec(&self, c: usize) -> Vec<F> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn row_vec(&self, r: usize) -> Vec<F> {
        self.data[r * self.cols..(r + 1) * self.cols].to_vec()
    }

    pub fn entries(&self) -> &[F] {
        &self.data
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Matrix<G> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].clone())
    }

    pub fn scale(&self, s: &F) -> Self {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x.clone() * s.clone()).collect() }
    }

    pub fn select_cols(&self, idx: &[usize]) -> Self {
        Self::from_fn(self.rows, idx.len(), |r, c| self[(r, idx[c])].clone())
    }

    pub fn select_rows(&self, idx: &[usize]) -> Self {
        Self::from_fn(idx.len(), self.cols, |r, c| self[(idx[r], c)].clone())
    }

    /// Rows `start..end`.
    pub fn row_range(&self, start: usize, end: usize) -> Self {
        Self::from_fn(end - start, self.cols, |r, c| self[(start + r, c)].clone())
    }

    pub fn col_range(&self, start: usize, end: usize) -> Self {
        Self::from_fn(self.rows, end - start, |r, c| self[(r, start + c)].clone())
    }

    /// Copy `block` into `self` with its top-left corner at `(r0, c0)`.
    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Self) {
        for r in 0..block.rows {
            for c in 0..block.cols {
                self[(r0 + r, c0 + c)] = block[(r, c)].clone();
            }
        }
    }

    pub fn hstack(parts: &[&Self], rows: usize) -> Self {
        let cols = parts.iter().map(|p| p.cols).sum();
        let mut m = Self::zeros(rows, cols);
        let mut c0 = 0;
        for p in parts {
            assert_eq!(p.rows, rows, "hstack row mismatch");
            m.set_block(0, c0, p);
            c0 += p.cols;
        }
        m
    }

    pub fn vstack(parts: &[&Self], cols: usize) -> Self {
        let rows = parts.iter().map(|p| p.rows).sum();
        let mut m = Self::zeros(rows, cols);
        let mut r0 = 0;
        for p in parts {
            assert_eq!(p.cols, cols, "vstack column mismatch");
            m.set_block(r0, 0, p);
            r0 += p.rows;
        }
        m
    }

    pub fn block_diag(parts: &[&Self]) -> Self {
        let rows = parts.iter().map(|p| p.rows).sum();
        let cols = parts.iter().map(|p| p.cols).sum();
        let mut m = Self::zeros(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for p in parts {
            m.set_block(r0, c0, p);
            r0 += p.rows;
            c0 += p.cols;
        }
        m
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = Self::identity(self.rows);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Reduced row echelon form together with pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m[(r, col)].is_zero()) else {
                continue;
            };
            if p != row {
                for c in 0..m.cols {
                    m.data.swap(p * m.cols + c, row * m.cols + c);
                }
            }
            let inv = m[(row, col)].inv();
            for c in col..m.cols {
                if !m[(row, c)].is_zero() {
                    m[(row, c)] = m[(row, c)].clone() * inv.clone();
                }
            }
            for r in 0..m.rows {
                if r == row || m[(r, col)].is_zero() {
                    continue;
                }
                let f = m[(r, col)].clone();
                for c in col..m.cols {
                    if m[(row, c)].is_zero() {
                        continue;
                    }
                    let v = m[(r, c)].clone() - f.clone() * m[(row, c)].clone();
                    m[(r, c)] = v;
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the null space, as columns. The basis vector for free column
    /// `f` has a one in position `f` and zeros at the other free positions.
    pub fn kernel(&self) -> Self {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut k = Self::zeros(self.cols, free.len());
        for (j, &f) in free.iter().enumerate() {
            k[(f, j)] = F::one();
            for (i, &p) in pivots.iter().enumerate() {
                k[(p, j)] = -r[(i, f)].clone();
            }
        }
        k
    }

    /// Basis of the column space, taken from the columns of `self`.
    pub fn column_space(&self) -> Self {
        let (_, pivots) = self.rref();
        self.select_cols(&pivots)
    }

    /// Particular solution `x` of `self * x = b` (free variables set to zero).
    pub fn solve(&self, b: &Self) -> Option<Self> {
        assert_eq!(self.rows, b.rows, "solve: row mismatch");
        let aug = Self::hstack(&[self, b], self.rows);
        let (r, pivots) = aug.rref();
        if pivots.iter().any(|&p| p >= self.cols) {
            return None;
        }
        let mut x = Self::zeros(self.cols, b.cols);
        for (i, &p) in pivots.iter().enumerate() {
            for c in 0..b.cols {
                x[(p, c)] = r[(i, self.cols + c)].clone();
            }
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let sol = self.solve(&Self::identity(self.rows))?;
        if self.rank() == self.rows {
            Some(sol)
        } else {
            None
        }
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }
}

impl<'a, F: Field> Mul<&'a Matrix<F>> for &'a Matrix<F> {
    type Output = Matrix<F>;
    fn mul(self, o: &Matrix<F>) -> Matrix<F> {
        assert_eq!(self.cols, o.rows, "matrix product shape mismatch {}x{} * {}x{}", self.rows, self.cols, o.rows, o.cols);
        let mut m: Matrix<F> = Matrix::zeros(self.rows, o.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..o.cols {
                    let b = &o[(k, c)];
                    if b.is_zero() {
                        continue;
                    }
                    let v = m[(r, c)].clone() + a.clone() * b.clone();
                    m[(r, c)] = v;
                }
            }
        }
        m
    }
}

impl<'a, F: Field> Add<&'a Matrix<F>> for &'a Matrix<F> {
    type Output = Matrix<F>;
    fn add(self, o: &Matrix<F>) -> Matrix<F> {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "matrix sum shape mismatch");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a.clone() + b.clone()).collect(),
        }
    }
}

impl<'a, F: Field> Sub<&'a Matrix<F>> for &'a Matrix<F> {
    type Output = Matrix<F>;
    fn sub(self, o: &Matrix<F>) -> Matrix<F> {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "matrix difference shape mismatch");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a.clone() - b.clone()).collect(),
        }
    }
}

impl<'a, F: Field> Neg for &'a Matrix<F> {
    type Output = Matrix<F>;
    fn neg(self) -> Matrix<F> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| -a.clone()).collect() }
    }
}

/// Coordinates of the columns of `v` in the basis `basis`, if they lie in its span.
pub fn coordinates<F: Field>(basis: &Matrix<F>, v: &Matrix<F>) -> Option<Matrix<F>> {
    if basis.cols() == 0 {
        return if v.is_zero() { Some(Matrix::zeros(0, v.cols())) } else { None };
    }
    basis.solve(v)
}

/// Basis of `U ∩ W` for column-basis matrices in the same ambient space.
pub fn intersect<F: Field>(u: &Matrix<F>, w: &Matrix<F>) -> Matrix<F> {
    let n = u.rows();
    if u.cols() == 0 || w.cols() == 0 {
        return Matrix::zeros(n, 0);
    }
    let stacked = Matrix::hstack(&[u, &(-w)], n);
    let k = stacked.kernel();
    let coeffs = k.row_range(0, u.cols());
    (u * &coeffs).column_space()
}

/// Basis of `U + W`.
pub fn span_sum<F: Field>(u: &Matrix<F>, w: &Matrix<F>) -> Matrix<F> {
    Matrix::hstack(&[u, w], u.rows()).column_space()
}

/// Vectors `C` such that the columns of `[sub | C]` form a basis of the span of
/// `[sub | ambient]`. Candidates are taken from the columns of `ambient` in order.
pub fn complement<F: Field>(sub: &Matrix<F>, ambient: &Matrix<F>) -> Matrix<F> {
    let n = sub.rows().max(ambient.rows());
    let joined = Matrix::hstack(&[sub, ambient], n);
    let (_, pivots) = joined.rref();
    let picked: Vec<usize> = pivots.iter().filter(|&&p| p >= sub.cols()).map(|&p| p - sub.cols()).collect();
    ambient.select_cols(&picked)
}

/// Whether `U ⊆ W`.
pub fn is_subspace<F: Field>(u: &Matrix<F>, w: &Matrix<F>) -> bool {
    coordinates(w, u).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    type Q = BigRational;

    fn m(rows: &[&[i64]]) -> Matrix<Q> {
        Matrix::from_i64_rows(rows)
    }

    #[test]
    fn rref_and_rank() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(a.rank(), 2);
        let k = a.kernel();
        assert_eq!(k.cols(), 1);
        assert!((&a * &k).is_zero());
    }

    #[test]
    fn solve_and_inverse() {
        let a = m(&[&[2, 1], &[1, 1]]);
        let inv = a.inverse().unwrap();
        assert_eq!(&a * &inv, Matrix::identity(2));
        let b = m(&[&[3], &[2]]);
        assert_eq!(a.solve(&b).unwrap(), m(&[&[1], &[1]]));
        let singular = m(&[&[1, 1], &[1, 1]]);
        assert!(singular.inverse().is_none());
        assert!(singular.solve(&m(&[&[1], &[0]])).is_none());
    }

    #[test]
    fn subspace_operations() {
        let u = m(&[&[1, 0], &[0, 1], &[0, 0]]);
        let w = m(&[&[0, 0], &[1, 0], &[0, 1]]);
        let i = intersect(&u, &w);
        assert_eq!(i.cols(), 1);
        assert_eq!(span_sum(&u, &w).cols(), 3);
        let c = complement(&i, &u);
        assert_eq!(c.cols(), 1);
        assert_eq!(Matrix::hstack(&[&i, &c], 3).rank(), 2);
        assert!(is_subspace(&i, &u) && is_subspace(&i, &w));
    }

    #[test]
    fn empty_shapes() {
        let z: Matrix<Q> = Matrix::zeros(0, 3);
        assert_eq!(z.kernel().cols(), 3);
        let e: Matrix<Q> = Matrix::zeros(3, 0);
        assert_eq!(e.rank(), 0);
        assert_eq!((&z * &Matrix::zeros(3, 2)).rows(), 0);
        assert!(coordinates(&Matrix::<Q>::zeros(2, 0), &Matrix::zeros(2, 1)).is_some());
    }
}
