//! Dense matrices over exact or numeric scalars.

use std::fmt;

use num_complex::Complex64;
use num_rational::BigRational;
use thiserror::Error;

use crate::scalars::{EvalEnv, Scalar, ScalarError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("shape mismatch: {0}x{1} against {2}x{3}")]
    ShapeMismatch(usize, usize, usize, usize),
    #[error("matrix is singular")]
    Singular,
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// Entry type of a [`Matrix`].
pub trait Ring: Clone + PartialEq + fmt::Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(n: i64) -> Self;
    fn plus(&self, o: &Self) -> Self;
    fn minus(&self, o: &Self) -> Self;
    fn times(&self, o: &Self) -> Self;
    fn negated(&self) -> Self;
    fn is_zero(&self) -> bool;
}

pub trait Field: Ring {
    fn try_inv(&self) -> Result<Self, LinalgError>;
}

impl Ring for Scalar {
    fn zero() -> Self {
        Scalar::zero()
    }
    fn one() -> Self {
        Scalar::one()
    }
    fn from_i64(n: i64) -> Self {
        Scalar::int(n)
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn negated(&self) -> Self {
        -self
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
}

impl Field for Scalar {
    fn try_inv(&self) -> Result<Self, LinalgError> {
        Ok(self.inv()?)
    }
}

impl Ring for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn from_i64(n: i64) -> Self {
        Complex64::new(n as f64, 0.0)
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn negated(&self) -> Self {
        -self
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
}

impl Field for Complex64 {
    fn try_inv(&self) -> Result<Self, LinalgError> {
        if Ring::is_zero(self) {
            Err(LinalgError::Singular)
        } else {
            Ok(self.inv())
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Ring> Matrix<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Result<Self, LinalgError> {
        if data.len() != rows * cols {
            return Err(LinalgError::ShapeMismatch(rows, cols, data.len(), 1));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    /// Panics on ragged input.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        Self { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| T::zero())
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
    }

    /// Matrix unit `e_{ij}` of size `n`.
    pub fn unit(n: usize, i: usize, j: usize) -> Self {
        Self::from_fn(n, n, |a, b| if a == i && b == j { T::one() } else { T::zero() })
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

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn map<U: Ring>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn try_map<U: Ring, E>(&self, f: impl Fn(&T) -> Result<U, E>) -> Result<Matrix<U>, E> {
        let data = self.data.iter().map(f).collect::<Result<Vec<_>, _>>()?;
        Ok(Matrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Ring::is_zero)
    }

    fn same_shape(&self, o: &Self) -> Result<(), LinalgError> {
        if self.rows != o.rows || self.cols != o.cols {
            return Err(LinalgError::ShapeMismatch(self.rows, self.cols, o.rows, o.cols));
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Result<Self, LinalgError> {
        self.same_shape(o)?;
        let data = self.data.iter().zip(&o.data).map(|(a, b)| a.plus(b)).collect();
        Ok(Self { rows: self.rows, cols: self.cols, data })
    }

    pub fn sub(&self, o: &Self) -> Result<Self, LinalgError> {
        self.same_shape(o)?;
        let data = self.data.iter().zip(&o.data).map(|(a, b)| a.minus(b)).collect();
        Ok(Self { rows: self.rows, cols: self.cols, data })
    }

    pub fn scale(&self, k: &T) -> Self {
        self.map(|x| k.times(x))
    }

    pub fn neg(&self) -> Self {
        self.map(|x| x.negated())
    }

    pub fn matmul(&self, o: &Self) -> Result<Self, LinalgError> {
        if self.cols != o.rows {
            return Err(LinalgError::ShapeMismatch(self.rows, self.cols, o.rows, o.cols));
        }
        let mut out = Self::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * o.cols + j;
                    out.data[idx] = out.data[idx].plus(&a.times(b));
                }
            }
        }
        Ok(out)
    }

    /// Ordered product of a nonempty list.
    pub fn product(ms: &[&Self]) -> Result<Self, LinalgError> {
        let (first, rest) = ms.split_first().expect("nonempty product");
        rest.iter().try_fold((*first).clone(), |acc, m| acc.matmul(m))
    }

    fn check_bracket(&self, o: &Self) -> Result<(), LinalgError> {
        if !self.is_square() || self.rows != o.rows || !o.is_square() {
            return Err(LinalgError::ShapeMismatch(self.rows, self.cols, o.rows, o.cols));
        }
        Ok(())
    }

    /// `ab + ba`.
    pub fn anticommutator(&self, o: &Self) -> Result<Self, LinalgError> {
        self.check_bracket(o)?;
        self.matmul(o)?.add(&o.matmul(self)?)
    }

    /// `ab - ba`.
    pub fn commutator(&self, o: &Self) -> Result<Self, LinalgError> {
        self.check_bracket(o)?;
        self.matmul(o)?.sub(&o.matmul(self)?)
    }

    /// Kronecker product; block `(i, j)` of the result is `self[i, j] · o`.
    pub fn kron(&self, o: &Self) -> Self {
        Self::from_fn(self.rows * o.rows, self.cols * o.cols, |r, c| {
            let a = self.get(r / o.rows, c / o.cols);
            if a.is_zero() {
                return T::zero();
            }
            a.times(o.get(r % o.rows, c % o.cols))
        })
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn trace(&self) -> T {
        (0..self.rows.min(self.cols)).fold(T::zero(), |acc, i| acc.plus(self.get(i, i)))
    }
}

impl<T: Field> Matrix<T> {
    /// Gauss–Jordan inverse.
    pub fn inverse(&self) -> Result<Self, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::ShapeMismatch(self.rows, self.cols, self.cols, self.rows));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for col in 0..n {
            let piv = (col..n).find(|&r| !a.get(r, col).is_zero()).ok_or(LinalgError::Singular)?;
            a.swap_rows(piv, col);
            inv.swap_rows(piv, col);
            let p = a.get(col, col).try_inv()?;
            a.scale_row(col, &p);
            inv.scale_row(col, &p);
            for r in 0..n {
                if r != col && !a.get(r, col).is_zero() {
                    let f = a.get(r, col).clone();
                    a.axpy_row(r, col, &f);
                    inv.axpy_row(r, col, &f);
                }
            }
        }
        Ok(inv)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn scale_row(&mut self, r: usize, k: &T) {
        for j in 0..self.cols {
            let idx = r * self.cols + j;
            self.data[idx] = k.times(&self.data[idx]);
        }
    }

    /// row[r] -= f · row[src]
    fn axpy_row(&mut self, r: usize, src: usize, f: &T) {
        for j in 0..self.cols {
            let s = self.get(src, j);
            if s.is_zero() {
                continue;
            }
            let v = f.times(s);
            let idx = r * self.cols + j;
            self.data[idx] = self.data[idx].minus(&v);
        }
    }

    /// Solves `self · x = b` exactly.
    pub fn solve(&self, b: &[T]) -> Result<LinearSolution<T>, LinalgError> {
        let (m, n) = (self.rows, self.cols);
        if b.len() != m {
            return Err(LinalgError::ShapeMismatch(m, n, b.len(), 1));
        }
        // [A | b | I] so the row operations are recorded for a certificate
        let mut aug = Self::from_fn(m, n + 1 + m, |i, j| {
            if j < n {
                self.get(i, j).clone()
            } else if j == n {
                b[i].clone()
            } else if j - n - 1 == i {
                T::one()
            } else {
                T::zero()
            }
        });
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..n {
            if row == m {
                break;
            }
            let Some(piv) = (row..m).find(|&r| !aug.get(r, col).is_zero()) else {
                continue;
            };
            aug.swap_rows(piv, row);
            let p = aug.get(row, col).try_inv()?;
            aug.scale_row(row, &p);
            for r in 0..m {
                if r != row && !aug.get(r, col).is_zero() {
                    let f = aug.get(r, col).clone();
                    aug.axpy_row(r, row, &f);
                }
            }
            pivots.push(col);
            row += 1;
        }
        for r in row..m {
            if !aug.get(r, n).is_zero() {
                let certificate = (0..m).map(|j| aug.get(r, n + 1 + j).clone()).collect();
                return Ok(LinearSolution::Infeasible { certificate });
            }
        }
        let mut x = vec![T::zero(); n];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = aug.get(r, n).clone();
        }
        Ok(LinearSolution::Solvable { particular: x, nullity: n - pivots.len() })
    }
}

/// Outcome of an exact linear solve.
#[derive(Clone, Debug, PartialEq)]
pub enum LinearSolution<T> {
    /// A solution with all free variables set to zero.
    Solvable { particular: Vec<T>, nullity: usize },
    /// `y` with `yᵀA = 0` and `yᵀb ≠ 0`.
    Infeasible { certificate: Vec<T> },
}

impl Matrix<Scalar> {
    pub fn eval(&self, env: &EvalEnv) -> Result<Matrix<Complex64>, ScalarError> {
        self.try_map(|x| x.eval(env))
    }

    pub fn at_q(&self, q: &BigRational) -> Result<Matrix<Scalar>, ScalarError> {
        self.try_map(|x| x.at_q(q))
    }
}

impl Matrix<Complex64> {
    pub fn max_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn approx_eq(&self, o: &Self, tol: f64) -> bool {
        self.rows == o.rows
            && self.cols == o.cols
            && self.data.iter().zip(&o.data).all(|(a, b)| (a - b).norm() <= tol)
    }

    /// Rank by row reduction with partial pivoting; entries below `tol` count as zero.
    pub fn rank(&self, tol: f64) -> usize {
        let mut a = self.clone();
        let mut rank = 0;
        for col in 0..a.cols {
            if rank == a.rows {
                break;
            }
            let (piv, best) = (rank..a.rows)
                .map(|r| (r, a.get(r, col).norm()))
                .fold((rank, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
            if best <= tol {
                continue;
            }
            a.swap_rows(piv, rank);
            let p = a.get(rank, col).inv();
            a.scale_row(rank, &p);
            for r in 0..a.rows {
                if r != rank {
                    let f = *a.get(r, col);
                    if f.norm() > 0.0 {
                        a.axpy_row(r, rank, &f);
                    }
                }
            }
            rank += 1;
        }
        rank
    }
}

impl<T: Ring + fmt::Display> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
        }
        write!(f, "]")
    }
}

/// Pauli matrices with `σ₁σ₂ = iσ₃`.
pub fn pauli() -> [Matrix<Scalar>; 3] {
    let z = Scalar::zero;
    let o = Scalar::one;
    let i = Scalar::i;
    [
        Matrix::from_rows(vec![vec![z(), o()], vec![o(), z()]]),
        Matrix::from_rows(vec![vec![z(), -i()], vec![i(), z()]]),
        Matrix::from_rows(vec![vec![o(), z()], vec![z(), -o()]]),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: i64) -> Scalar {
        Scalar::int(n)
    }

    #[test]
    fn pauli_product_and_anticommutators() {
        let [s1, s2, s3] = pauli();
        assert_eq!(s1.matmul(&s2).unwrap(), s3.scale(&Scalar::i()));
        assert!(s1.anticommutator(&s2).unwrap().is_zero());
        assert_eq!(s1.anticommutator(&s1).unwrap(), Matrix::identity(2).scale(&s(2)));
    }

    #[test]
    fn diagonal_matrices_commute() {
        let a = Matrix::from_rows(vec![vec![Scalar::q(), s(0)], vec![s(0), s(3)]]);
        let b = Matrix::from_rows(vec![vec![s(5), s(0)], vec![s(0), Scalar::big_q()]]);
        assert!(a.commutator(&b).unwrap().is_zero());
    }

    #[test]
    fn kron_examples() {
        let i2 = Matrix::<Scalar>::identity(2);
        assert_eq!(i2.kron(&i2), Matrix::identity(4));
        let g3 = Matrix::from_rows(vec![vec![s(1), s(0)], vec![s(0), s(-1)]]);
        let d = g3.kron(&g3);
        for (k, v) in [1, -1, -1, 1].into_iter().enumerate() {
            assert_eq!(d.get(k, k), &s(v));
        }
        let e = Matrix::<Scalar>::unit(2, 0, 0).kron(&Matrix::unit(2, 1, 1));
        let nonzero: Vec<_> = (0..4)
            .flat_map(|i| (0..4).map(move |j| (i, j)))
            .filter(|&(i, j)| !e.get(i, j).is_zero())
            .collect();
        assert_eq!(nonzero, vec![(1, 1)]);
    }

    #[test]
    fn shape_errors() {
        let a = Matrix::<Scalar>::zeros(2, 3);
        assert!(matches!(a.matmul(&a), Err(LinalgError::ShapeMismatch(..))));
        assert!(a.anticommutator(&a).is_err());
    }

    #[test]
    fn inverse_and_solve() {
        let a = Matrix::from_rows(vec![vec![s(2), s(1)], vec![s(1), s(1)]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.matmul(&inv).unwrap(), Matrix::identity(2));
        let sing = Matrix::from_rows(vec![vec![s(1), s(2)], vec![s(2), s(4)]]);
        assert_eq!(sing.inverse(), Err(LinalgError::Singular));
        match sing.solve(&[s(1), s(3)]).unwrap() {
            LinearSolution::Infeasible { certificate } => {
                // yᵀA = 0 and yᵀb ≠ 0
                let y0 = &certificate[0];
                let y1 = &certificate[1];
                assert!((&(y0 * &s(1)) + &(y1 * &s(2))).is_zero());
                assert!(!(&(y0 * &s(1)) + &(y1 * &s(3))).is_zero());
            }
            other => panic!("expected infeasible, got {other:?}"),
        }
        match sing.solve(&[s(1), s(2)]).unwrap() {
            LinearSolution::Solvable { particular, nullity } => {
                assert_eq!(nullity, 1);
                assert_eq!(particular, vec![s(1), s(0)]);
            }
            other => panic!("expected solvable, got {other:?}"),
        }
    }

    #[test]
    fn numeric_rank() {
        let m = Matrix::from_rows(vec![
            vec![Complex64::new(1.0, 0.0), Complex64::new(2.0, 0.0)],
            vec![Complex64::new(2.0, 0.0), Complex64::new(4.0, 0.0)],
        ]);
        assert_eq!(m.rank(1e-12), 1);
    }
}
