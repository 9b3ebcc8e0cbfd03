//! Dense row-major complex matrix.

use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::scalar::{c, cis, Real};

/// Dense complex matrix stored row-major.
///
/// Constructors reject empty shapes and non-finite entries; every routine in the
/// crate relies on that.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<Complex<T>>,
}

impl<T: Real> Matrix<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<Complex<T>>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::EmptyDimension { rows, cols });
        }
        if data.len() != rows * cols {
            return Err(Error::DataLength {
                rows,
                cols,
                len: data.len(),
            });
        }
        if let Some(k) = data.iter().position(|z| !(z.re.is_finite() && z.im.is_finite())) {
            return Err(Error::NonFinite {
                row: k / cols,
                col: k % cols,
            });
        }
        Ok(Self { rows, cols, data })
    }

    /// Builds a matrix from rows of equal length.
    pub fn from_rows(rows: &[Vec<Complex<T>>]) -> Result<Self> {
        let r = rows.len();
        let ccount = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|row| row.len() != ccount) {
            return Err(Error::ShapeMismatch {
                op: "from_rows",
                left: (1, ccount),
                right: (1, bad.len()),
            });
        }
        Self::new(r, ccount, rows.iter().flatten().copied().collect())
    }

    /// Builds a matrix from rows of real numbers.
    pub fn from_real_rows(rows: &[Vec<T>]) -> Result<Self> {
        let complex: Vec<Vec<Complex<T>>> = rows
            .iter()
            .map(|row| row.iter().map(|&x| c(x)).collect())
            .collect();
        Self::from_rows(&complex)
    }

    /// # Panics
    /// If either dimension is zero.
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex<T>) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| Complex::zero())
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { c(T::one()) } else { Complex::zero() })
    }

    /// The all-ones matrix.
    pub fn ones(rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| c(T::one()))
    }

    pub fn diag(entries: &[Complex<T>]) -> Self {
        let n = entries.len();
        Self::from_fn(n, n, |i, j| if i == j { entries[i] } else { Complex::zero() })
    }

    pub(crate) fn from_raw(rows: usize, cols: usize, data: Vec<Complex<T>>) -> Self {
        debug_assert_eq!(data.len(), rows * cols);
        Self { rows, cols, data }
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    #[inline]
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn data(&self) -> &[Complex<T>] {
        &self.data
    }

    pub fn into_data(self) -> Vec<Complex<T>> {
        self.data
    }

    pub fn row(&self, i: usize) -> &[Complex<T>] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Complex<T>> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub(crate) fn require_square(&self, op: &'static str) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::NotSquare {
                op,
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    pub(crate) fn require_same_shape(&self, other: &Self, op: &'static str) -> Result<()> {
        if self.shape() == other.shape() {
            Ok(())
        } else {
            Err(Error::ShapeMismatch {
                op,
                left: self.shape(),
                right: other.shape(),
            })
        }
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn map(&self, f: impl Fn(Complex<T>) -> Complex<T>) -> Self {
        Self::from_raw(self.rows, self.cols, self.data.iter().map(|&z| f(z)).collect())
    }

    pub fn scale(&self, s: Complex<T>) -> Self {
        self.map(|z| z * s)
    }

    pub fn scale_real(&self, s: T) -> Self {
        self.map(|z| z * s)
    }

    /// Entrywise moduli `[|a_ij|]`.
    pub fn abs_entries(&self) -> Self {
        self.map(|z| c(z.norm()))
    }

    pub fn try_matmul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::ShapeMismatch {
                op: "matmul",
                left: self.shape(),
                right: rhs.shape(),
            });
        }
        let mut out = vec![Complex::zero(); self.rows * rhs.cols];
        for i in 0..self.rows {
            let orow = &mut out[i * rhs.cols..(i + 1) * rhs.cols];
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a.is_zero() {
                    continue;
                }
                let brow = rhs.row(k);
                for (o, &b) in orow.iter_mut().zip(brow) {
                    *o += a * b;
                }
            }
        }
        Ok(Self::from_raw(self.rows, rhs.cols, out))
    }

    pub fn mul_vec(&self, x: &[Complex<T>]) -> Vec<Complex<T>> {
        assert_eq!(x.len(), self.cols, "mul_vec dimension mismatch");
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(x).map(|(&a, &b)| a * b).sum())
            .collect()
    }

    /// `Re(e^{i theta} A) = (e^{i theta} A + e^{-i theta} A*) / 2`.
    pub fn rotated_real_part(&self, theta: T) -> Self {
        let n = self.rows;
        let z = cis(theta);
        let half = T::lit(0.5);
        Self::from_fn(n, n, |i, j| (z * self[(i, j)] + (z * self[(j, i)]).conj()) * half)
    }

    /// `(A + A*) / 2`.
    pub fn hermitian_part(&self) -> Self {
        self.rotated_real_part(T::zero())
    }

    pub fn trace(&self) -> Complex<T> {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    /// Maximum column absolute sum.
    pub fn norm_one(&self) -> T {
        self.col_abs_sums().into_iter().fold(T::zero(), T::max)
    }

    /// Maximum row absolute sum.
    pub fn norm_inf(&self) -> T {
        self.row_abs_sums().into_iter().fold(T::zero(), T::max)
    }

    pub fn row_abs_sums(&self) -> Vec<T> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|z| z.norm()).sum())
            .collect()
    }

    pub fn col_abs_sums(&self) -> Vec<T> {
        (0..self.cols)
            .map(|j| (0..self.rows).map(|i| self[(i, j)].norm()).sum())
            .collect()
    }

    /// Signed row sums `sum_j a_ij`.
    pub fn row_sums(&self) -> Vec<Complex<T>> {
        (0..self.rows).map(|i| self.row(i).iter().copied().sum()).collect()
    }

    pub fn col_sums(&self) -> Vec<Complex<T>> {
        (0..self.cols)
            .map(|j| (0..self.rows).map(|i| self[(i, j)]).sum())
            .collect()
    }

    pub fn max_abs(&self) -> T {
        self.data.iter().map(|z| z.norm()).fold(T::zero(), T::max)
    }

    pub fn frobenius(&self) -> T {
        self.data.iter().map(|z| z.norm_sqr()).sum::<T>().sqrt()
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> T {
        assert_eq!(self.shape(), other.shape(), "max_abs_diff shape mismatch");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(T::zero(), T::max)
    }

    /// `||H - H*||_inf <= tol * ||H||_inf`.
    pub fn is_hermitian(&self, tol: T) -> bool {
        self.is_square() && (self - &self.adjoint()).norm_inf() <= tol * self.norm_inf()
    }

    /// All entries real (zero imaginary part) and nonnegative.
    pub fn is_real_nonnegative(&self) -> bool {
        self.data
            .iter()
            .all(|z| z.im == T::zero() && z.re >= T::zero())
    }

    pub fn is_diagonal(&self, tol: T) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self[(i, j)].norm() <= tol))
    }

    /// Block direct sum `self ⊕ other`.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let (r1, c1) = self.shape();
        Self::from_fn(r1 + other.rows, c1 + other.cols, |i, j| {
            if i < r1 && j < c1 {
                self[(i, j)]
            } else if i >= r1 && j >= c1 {
                other[(i - r1, j - c1)]
            } else {
                Complex::zero()
            }
        })
    }

    /// Assembles a block operator matrix `[P_ij]` whose blocks share one shape.
    pub fn from_blocks(blocks: &[Vec<Self>]) -> Result<Self> {
        let first = blocks
            .first()
            .and_then(|r| r.first())
            .ok_or_else(|| Error::InvalidArgument("empty block grid".into()))?;
        let (br, bc) = first.shape();
        let grid_cols = blocks[0].len();
        for row in blocks {
            if row.len() != grid_cols {
                return Err(Error::InvalidArgument("ragged block grid".into()));
            }
            for b in row {
                first.require_same_shape(b, "from_blocks")?;
            }
        }
        Ok(Self::from_fn(blocks.len() * br, grid_cols * bc, |i, j| {
            blocks[i / br][j / bc][(i % br, j % bc)]
        }))
    }

    /// Submatrix on the given (0-based) row and column index lists.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), |i, j| self[(rows[i], cols[j])])
    }

    /// `A + mu I`.
    pub fn shift_diagonal(&self, mu: Complex<T>) -> Self {
        let mut out = self.clone();
        for i in 0..self.rows.min(self.cols) {
            out[(i, i)] += mu;
        }
        out
    }

    /// Replaces the diagonal entry `a_ii` by `lambda * a_ii`.
    pub fn with_scaled_diagonal(&self, lambda: Complex<T>) -> Self {
        let mut out = self.clone();
        for i in 0..self.rows.min(self.cols) {
            out[(i, i)] = self[(i, i)] * lambda;
        }
        out
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = Complex<T>;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Complex<T> {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex<T> {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl<T: Real> Mul for &Matrix<T> {
    type Output = Matrix<T>;
    fn mul(self, rhs: &Matrix<T>) -> Matrix<T> {
        self.try_matmul(rhs).expect("matrix product dimension mismatch")
    }
}

impl<T: Real> Add for &Matrix<T> {
    type Output = Matrix<T>;
    fn add(self, rhs: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.shape(), rhs.shape(), "matrix sum shape mismatch");
        Matrix::from_raw(
            self.rows,
            self.cols,
            self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        )
    }
}

impl<T: Real> Sub for &Matrix<T> {
    type Output = Matrix<T>;
    fn sub(self, rhs: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.shape(), rhs.shape(), "matrix difference shape mismatch");
        Matrix::from_raw(
            self.rows,
            self.cols,
            self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        )
    }
}

impl<T: Real> Neg for &Matrix<T> {
    type Output = Matrix<T>;
    fn neg(self) -> Matrix<T> {
        self.map(|z| -z)
    }
}

/// Vector helpers on `&[Complex<T>]`.
pub mod vector {
    use num_complex::Complex;

    use crate::scalar::Real;

    /// `<x, y> = sum conj(x_i) y_i`.
    pub fn dot<T: Real>(x: &[Complex<T>], y: &[Complex<T>]) -> Complex<T> {
        x.iter().zip(y).map(|(a, b)| a.conj() * b).sum()
    }

    pub fn norm2<T: Real>(x: &[Complex<T>]) -> T {
        x.iter().map(|z| z.norm_sqr()).sum::<T>().sqrt()
    }

    pub fn normalized<T: Real>(x: &[Complex<T>]) -> Vec<Complex<T>> {
        let n = norm2(x);
        if n == T::zero() {
            x.to_vec()
        } else {
            x.iter().map(|z| z / n).collect()
        }
    }

    /// Kronecker product of vectors.
    pub fn kron<T: Real>(x: &[Complex<T>], y: &[Complex<T>]) -> Vec<Complex<T>> {
        x.iter().flat_map(|&a| y.iter().map(move |&b| a * b)).collect()
    }

    pub fn basis<T: Real>(n: usize, k: usize) -> Vec<Complex<T>> {
        let mut v = vec![Complex::new(T::zero(), T::zero()); n];
        v[k] = Complex::new(T::one(), T::zero());
        v
    }

    pub fn max_abs_diff<T: Real>(x: &[Complex<T>], y: &[Complex<T>]) -> T {
        x.iter()
            .zip(y)
            .map(|(a, b)| (a - b).norm())
            .fold(T::zero(), T::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type M = Matrix<f64>;

    fn cx(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    #[test]
    fn constructor_rejects_nan_and_bad_length() {
        assert_eq!(
            M::new(1, 2, vec![cx(1.0, 0.0), cx(f64::NAN, 0.0)]),
            Err(Error::NonFinite { row: 0, col: 1 })
        );
        assert!(matches!(
            M::new(2, 2, vec![cx(1.0, 0.0)]),
            Err(Error::DataLength { .. })
        ));
        assert!(matches!(M::new(0, 2, vec![]), Err(Error::EmptyDimension { .. })));
        assert!(M::from_rows(&[vec![cx(1.0, 0.0)], vec![]]).is_err());
    }

    #[test]
    fn adjoint_and_products() {
        let a = M::from_rows(&[vec![cx(1.0, 1.0), cx(2.0, 0.0)], vec![cx(0.0, -1.0), cx(3.0, 0.5)]])
            .unwrap();
        let aa = &a.adjoint() * &a;
        assert!(aa.is_hermitian(1e-15));
        assert_eq!(a.adjoint().adjoint(), a);
        let id = M::identity(2);
        assert_eq!(&a * &id, a);
        assert_eq!(a.trace(), cx(4.0, 1.5));
    }

    #[test]
    fn row_and_column_sums() {
        let a = M::from_real_rows(&[vec![1.0, -2.0], vec![0.0, 3.0]]).unwrap();
        assert_eq!(a.norm_inf(), 3.0);
        assert_eq!(a.norm_one(), 5.0);
        assert_eq!(a.row_sums(), vec![cx(-1.0, 0.0), cx(3.0, 0.0)]);
    }

    #[test]
    fn rotated_real_part_is_hermitian() {
        let a = M::from_rows(&[vec![cx(0.0, 0.0), cx(1.0, 2.0)], vec![cx(-3.0, 0.0), cx(0.5, 0.5)]])
            .unwrap();
        for k in 0..8 {
            let h = a.rotated_real_part(0.7 * k as f64);
            assert!(h.is_hermitian(1e-15));
        }
        assert_eq!(a.hermitian_part()[(0, 0)], cx(0.0, 0.0));
    }

    #[test]
    fn blocks_and_direct_sum() {
        let b = M::from_real_rows(&[vec![1.0, 2.0], vec![3.0, 4.0]]).unwrap();
        let z = M::zeros(2, 2);
        let assembled = M::from_blocks(&[vec![b.clone(), z.clone()], vec![z, b.clone()]]).unwrap();
        assert_eq!(assembled, b.direct_sum(&b));
        assert_eq!(assembled.select(&[2, 3], &[2, 3]), b);
    }
}
