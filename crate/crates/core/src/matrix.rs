//! Dense matrices over an exact field, with row reduction.

use std::fmt;
use std::ops::{Index, IndexMut};

use crate::error::{Error, Result};
use crate::field::{is_zero_vec, Field};
use crate::modp::Fp;
use crate::scalar::Scalar;

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix<F: Field> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
    ctx: F::Ctx,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(ctx: &F::Ctx, rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![F::zero(ctx); rows * cols], ctx: ctx.clone() }
    }

    pub fn identity(ctx: &F::Ctx, n: usize) -> Self {
        let mut m = Self::zeros(ctx, n, n);
        for i in 0..n {
            m[(i, i)] = F::one(ctx);
        }
        m
    }

    pub fn from_fn(ctx: &F::Ctx, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data, ctx: ctx.clone() }
    }

    /// Builds from row vectors; all rows must have length `cols`.
    pub fn from_rows(ctx: &F::Ctx, cols: usize, rows: &[Vec<F>]) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch { expected: cols, got: r.len() });
            }
            data.extend(r.iter().cloned());
        }
        Ok(Matrix { rows: rows.len(), cols, data, ctx: ctx.clone() })
    }

    /// Matrix whose columns are the given vectors of length `rows`.
    pub fn from_columns(ctx: &F::Ctx, rows: usize, cols: &[Vec<F>]) -> Result<Self> {
        Ok(Self::from_rows(ctx, rows, cols)?.transpose())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn ctx(&self) -> &F::Ctx {
        &self.ctx
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<F> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn row_vectors(&self) -> Vec<Vec<F>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn entries(&self) -> &[F] {
        &self.data
    }

    pub fn into_entries(self) -> Vec<F> {
        self.data
    }

    /// Reinterprets a row-major entry list as a `rows × cols` matrix.
    pub fn from_entries(ctx: &F::Ctx, rows: usize, cols: usize, data: Vec<F>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch { expected: rows * cols, got: data.len() });
        }
        Ok(Matrix { rows, cols, data, ctx: ctx.clone() })
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(&self.ctx, self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vec(&self.data)
    }

    pub fn scale(&self, a: &F) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x.times(a)).collect(),
            ctx: self.ctx.clone(),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "shape mismatch");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a.plus(b)).collect(),
            ctx: self.ctx.clone(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "shape mismatch");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a.minus(b)).collect(),
            ctx: self.ctx.clone(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows, "shape mismatch");
        let mut out = Self::zeros(&self.ctx, self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i * self.cols + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = &o.data[k * o.cols + j];
                    if !b.is_zero() {
                        out.data[i * o.cols + j].add_mul(a, b);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        assert_eq!(self.cols, v.len(), "shape mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = F::zero(&self.ctx);
                for (a, b) in self.row(i).iter().zip(v) {
                    acc.add_mul(a, b);
                }
                acc
            })
            .collect()
    }

    pub fn trace(&self) -> F {
        let mut acc = F::zero(&self.ctx);
        for i in 0..self.rows.min(self.cols) {
            acc = acc.plus(&self[(i, i)]);
        }
        acc
    }

    /// Reduced row-echelon form and the pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        (m, pivots)
    }

    fn rref_in_place(&mut self) -> Vec<usize> {
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(pr) = (r..rows).find(|&i| !self.data[i * cols + c].is_zero()) else {
                continue;
            };
            if pr != r {
                for j in 0..cols {
                    self.data.swap(pr * cols + j, r * cols + j);
                }
            }
            let inv = self.data[r * cols + c].inverse().expect("nonzero pivot");
            for j in c..cols {
                self.data[r * cols + j] = self.data[r * cols + j].times(&inv);
            }
            let pivot_row: Vec<F> = self.data[r * cols..(r + 1) * cols].to_vec();
            for i in 0..rows {
                if i == r {
                    continue;
                }
                let factor = self.data[i * cols + c].clone();
                if factor.is_zero() {
                    continue;
                }
                for j in c..cols {
                    if !pivot_row[j].is_zero() {
                        self.data[i * cols + j].sub_mul(&factor, &pivot_row[j]);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        // drop the zero rows below the pivots
        self.data.truncate(r * cols);
        self.rows = r;
        pivots
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{x : M x = 0}`, one vector per free column (value 1 there,
    /// 0 at the other free columns).
    pub fn nullspace(&self) -> Vec<Vec<F>> {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![F::zero(&self.ctx); self.cols];
            v[free] = F::one(&self.ctx);
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = r[(i, free)].negate();
            }
            basis.push(v);
        }
        basis
    }

    /// Some solution of `M x = b`, or `None` when inconsistent.
    pub fn solve(&self, b: &[F]) -> Option<Vec<F>> {
        assert_eq!(b.len(), self.rows, "shape mismatch");
        let aug = Self::from_fn(&self.ctx, self.rows, self.cols + 1, |i, j| {
            if j < self.cols {
                self[(i, j)].clone()
            } else {
                b[i].clone()
            }
        });
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![F::zero(&self.ctx); self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = r[(i, self.cols)].clone();
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let aug = Self::from_fn(&self.ctx, n, 2 * n, |i, j| {
            if j < n {
                self[(i, j)].clone()
            } else if j - n == i {
                F::one(&self.ctx)
            } else {
                F::zero(&self.ctx)
            }
        });
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(Self::from_fn(&self.ctx, n, n, |i, j| r[(i, n + j)].clone()))
    }

    /// `n × n` block matrix assembled from `blocks[i][j]`.
    pub fn from_blocks(ctx: &F::Ctx, blocks: &[Vec<Matrix<F>>]) -> Result<Self> {
        let heights: Vec<usize> = blocks.iter().map(|row| row[0].rows).collect();
        let widths: Vec<usize> = blocks[0].iter().map(|b| b.cols).collect();
        let (h, w) = (heights.iter().sum(), widths.iter().sum());
        let mut out = Self::zeros(ctx, h, w);
        let mut r0 = 0;
        for (bi, row) in blocks.iter().enumerate() {
            let mut c0 = 0;
            if row.len() != widths.len() {
                return Err(Error::DimensionMismatch { expected: widths.len(), got: row.len() });
            }
            for (bj, b) in row.iter().enumerate() {
                if b.rows != heights[bi] || b.cols != widths[bj] {
                    return Err(Error::DimensionMismatch { expected: heights[bi] * widths[bj], got: b.rows * b.cols });
                }
                for i in 0..b.rows {
                    for j in 0..b.cols {
                        out[(r0 + i, c0 + j)] = b[(i, j)].clone();
                    }
                }
                c0 += b.cols;
            }
            r0 += heights[bi];
        }
        Ok(out)
    }

    pub fn submatrix(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        Self::from_fn(&self.ctx, rows, cols, |i, j| self[(r0 + i, c0 + j)].clone())
    }

    pub fn map<G: Field>(&self, ctx: &G::Ctx, f: impl Fn(&F) -> G) -> Matrix<G> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect(), ctx: ctx.clone() }
    }
}

impl Matrix<Scalar> {
    pub fn from_ints(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows: Vec<Vec<Scalar>> = rows.iter().map(|r| r.iter().map(|&x| Scalar::from_int(x)).collect()).collect();
        Self::from_rows(&(), cols, &rows).expect("ragged integer matrix")
    }

    pub fn diag(entries: &[Scalar]) -> Self {
        let n = entries.len();
        Self::from_fn(&(), n, n, |i, j| if i == j { entries[i].clone() } else { Scalar::ZERO })
    }

    /// Unit matrix `E_{ij}` of size `n`.
    pub fn unit(n: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(&(), n, n);
        m[(i, j)] = Scalar::ONE;
        m
    }

    pub fn reduce_mod_p(&self, p: u64) -> Result<Matrix<Fp>> {
        let data = self.data.iter().map(|x| Fp::reduce(x, p)).collect::<Result<Vec<_>>>()?;
        Ok(Matrix { rows: self.rows, cols: self.cols, data, ctx: p })
    }
}

impl<F: Field> Index<(usize, usize)> for Matrix<F> {
    type Output = F;
    fn index(&self, (i, j): (usize, usize)) -> &F {
        &self.data[i * self.cols + j]
    }
}

impl<F: Field> IndexMut<(usize, usize)> for Matrix<F> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut F {
        &mut self.data[i * self.cols + j]
    }
}

impl<F: Field> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<F: Field> fmt::Display for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.data.iter().map(|x| x.to_string()).collect();
        let width = cells.iter().map(String::len).max().unwrap_or(1);
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{:>width$}", cells[i * self.cols + j])?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn rref_examples() {
        let (r, p) = Matrix::from_ints(&[&[1, 0], &[0, 1]]).rref();
        assert_eq!(r, Matrix::identity(&(), 2));
        assert_eq!(p, vec![0, 1]);

        let (r, p) = Matrix::from_ints(&[&[2, 4], &[1, 2]]).rref();
        assert_eq!(r, Matrix::from_ints(&[&[1, 2]]));
        assert_eq!(p, vec![0]);

        // by hand: swap rows, already reduced
        let (r, p) = Matrix::from_ints(&[&[0, 1, 1], &[1, 0, 1]]).rref();
        assert_eq!(r, Matrix::from_ints(&[&[1, 0, 1], &[0, 1, 1]]));
        assert_eq!(p, vec![0, 1]);
    }

    #[test]
    fn nullspace_and_inverse() {
        let m = Matrix::from_ints(&[&[1, 2, 3], &[2, 4, 6]]);
        let ns = m.nullspace();
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert!(is_zero_vec(&m.mul_vec(v)));
        }
        let a = Matrix::from_ints(&[&[2, 1], &[1, 1]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), Matrix::identity(&(), 2));
        assert!(Matrix::from_ints(&[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    #[test]
    fn inconsistent_system() {
        let m = Matrix::from_ints(&[&[1, 1], &[1, 1]]);
        assert!(m.solve(&[Scalar::ONE, Scalar::ZERO]).is_none());
    }

    fn arb_matrix(rows: usize, cols: usize) -> impl Strategy<Value = Matrix<Scalar>> {
        proptest::collection::vec((-5i64..6, 1i64..4), rows * cols).prop_map(move |v| {
            let data = v.into_iter().map(|(n, d)| Scalar::new(n, d)).collect();
            Matrix::from_entries(&(), rows, cols, data).unwrap()
        })
    }

    proptest! {
        #[test]
        fn rref_is_a_projection(m in arb_matrix(4, 5)) {
            let (r, p) = m.rref();
            let (rr, pp) = r.rref();
            prop_assert_eq!(r, rr);
            prop_assert_eq!(p, pp);
        }

        #[test]
        fn solve_substitutes_back_exactly(m in arb_matrix(4, 4), x in proptest::collection::vec(-7i64..8, 4)) {
            let x: Vec<Scalar> = x.into_iter().map(Scalar::from_int).collect();
            let b = m.mul_vec(&x);
            let y = m.solve(&b).expect("consistent by construction");
            prop_assert_eq!(m.mul_vec(&y), b);
        }

        #[test]
        fn rank_nullity(m in arb_matrix(3, 5)) {
            prop_assert_eq!(m.rank() + m.nullspace().len(), 5);
        }
    }
}
