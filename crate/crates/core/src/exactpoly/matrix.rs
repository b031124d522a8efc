//! Dense matrices over polynomial or scalar entries.

use std::fmt;

use super::poly::{HomogPoly, Poly};
use super::scalar::Scalar;
use crate::error::{Error, Result};

/// The ring operations matrices need from their entries.
pub trait RingElem: Clone + PartialEq {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
}

impl RingElem for Scalar {
    fn zero_like(&self) -> Self {
        self.domain().zero()
    }
    fn one_like(&self) -> Self {
        self.domain().one()
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
}

impl RingElem for Poly {
    fn zero_like(&self) -> Self {
        Poly::zero(self.domain(), self.nvars())
    }
    fn one_like(&self) -> Self {
        Poly::one(self.domain(), self.nvars())
    }
    fn is_zero(&self) -> bool {
        Poly::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
}

/// Row-major matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

/// Matrix of polynomials.
pub type PolyMatrix = Matrix<Poly>;

impl<T: Clone> Matrix<T> {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Entry at 0-based `(i, j)`.
    pub fn get(&self, i: usize, j: usize) -> &T {
        assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: T) {
        assert!(i < self.rows && j < self.cols);
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn map<U: Clone>(&self, f: impl FnMut(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// The matrix with 0-based row `r` and column `c` removed.
    pub fn submatrix(&self, r: usize, c: usize) -> Self {
        let keep_rows: Vec<usize> = (0..self.rows).filter(|&i| i != r).collect();
        let keep_cols: Vec<usize> = (0..self.cols).filter(|&j| j != c).collect();
        Matrix::from_fn(keep_rows.len(), keep_cols.len(), |i, j| {
            self.get(keep_rows[i], keep_cols[j]).clone()
        })
    }

    pub fn entries(&self) -> impl Iterator<Item = &T> {
        self.data.iter()
    }
}

impl<T: RingElem> Matrix<T> {
    pub fn is_symmetric(&self) -> bool {
        self.first_asymmetry().is_none()
    }

    /// First 0-based `(i, j)` with `i < j` and `m[i][j] != m[j][i]`.
    pub fn first_asymmetry(&self) -> Option<(usize, usize)> {
        if !self.is_square() {
            return Some((0, 0));
        }
        (0..self.rows)
            .flat_map(|i| (i + 1..self.cols).map(move |j| (i, j)))
            .find(|&(i, j)| self.get(i, j) != self.get(j, i))
    }

    pub fn mul(&self, other: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.cols, other.rows, "inner dimensions");
        Matrix::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = self.get(i, 0).zero_like();
            for k in 0..self.cols {
                acc = acc.add(&self.get(i, k).mul(other.get(k, j)));
            }
            acc
        })
    }

    pub fn scale(&self, c: &T) -> Matrix<T> {
        self.map(|x| x.mul(c))
    }

    pub fn neg(&self) -> Matrix<T> {
        self.map(RingElem::neg)
    }

    /// Identity shaped like `self`, built from the ring of entry (0, 0).
    pub fn identity_like(&self) -> Matrix<T> {
        let one = self.get(0, 0).one_like();
        let zero = one.zero_like();
        Matrix::from_fn(self.rows, self.cols, |i, j| {
            if i == j {
                one.clone()
            } else {
                zero.clone()
            }
        })
    }

    /// Determinant by cofactor expansion along the first row.
    pub fn det(&self) -> T {
        assert!(
            self.is_square() && self.rows > 0,
            "determinant of a non-square matrix"
        );
        match self.rows {
            1 => self.get(0, 0).clone(),
            2 => self
                .get(0, 0)
                .mul(self.get(1, 1))
                .sub(&self.get(0, 1).mul(self.get(1, 0))),
            n => {
                let mut acc = self.get(0, 0).zero_like();
                for j in 0..n {
                    let a = self.get(0, j);
                    if a.is_zero() {
                        continue;
                    }
                    let term = a.mul(&self.submatrix(0, j).det());
                    acc = if j % 2 == 0 {
                        acc.add(&term)
                    } else {
                        acc.sub(&term)
                    };
                }
                acc
            }
        }
    }

    /// Transpose of the cofactor matrix.
    pub fn adjugate(&self) -> Matrix<T> {
        assert!(
            self.is_square() && self.rows > 1,
            "adjugate needs a square matrix"
        );
        Matrix::from_fn(self.rows, self.cols, |i, j| {
            let m = self.submatrix(j, i).det();
            if (i + j) % 2 == 0 {
                m
            } else {
                m.neg()
            }
        })
    }
}

impl Matrix<Scalar> {
    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (Matrix<Scalar>, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            for j in 0..m.cols {
                m.data.swap(r * m.cols + j, p * m.cols + j);
            }
            let inv = m.get(r, c).inv().unwrap();
            for j in 0..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c).clone();
                for j in 0..m.cols {
                    let v = m.get(i, j) - &(&f * m.get(r, j));
                    m.set(i, j, v);
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

    /// Null space basis read off the reduced echelon form: one vector per free
    /// column, with a 1 in that column, in increasing column order.
    pub fn kernel(&self) -> Vec<Vec<Scalar>> {
        let (r, pivots) = self.rref();
        let domain = self.data[0].domain();
        (0..self.cols)
            .filter(|c| !pivots.contains(c))
            .map(|free| {
                let mut v = vec![domain.zero(); self.cols];
                v[free] = domain.one();
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = -r.get(row, free);
                }
                v
            })
            .collect()
    }
}

impl PolyMatrix {
    pub fn eval(&self, point: &[Scalar]) -> Matrix<Scalar> {
        self.map(|p| p.eval(point))
    }
}

impl<T: fmt::Display> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols)
                .map(|j| self.data[i * self.cols + j].to_string())
                .collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

fn check_3x3<T>(m: &Matrix<T>) -> Result<()> {
    if m.rows != 3 || m.cols != 3 {
        return Err(Error::DimensionMismatch(format!(
            "expected 3x3, got {}x{}",
            m.rows, m.cols
        )));
    }
    Ok(())
}

fn homogeneous(p: Poly, what: &str) -> Result<HomogPoly> {
    HomogPoly::new(p).map_err(|e| Error::DegreeMismatch(format!("{what}: {e}")))
}

/// Determinant of a 3x3 polynomial matrix; fails if the result is inhomogeneous.
pub fn det3(m: &PolyMatrix) -> Result<HomogPoly> {
    check_3x3(m)?;
    homogeneous(m.det(), "determinant")
}

/// Adjugate of a 3x3 polynomial matrix; every entry must come out homogeneous.
pub fn adjugate3(m: &PolyMatrix) -> Result<PolyMatrix> {
    check_3x3(m)?;
    let adj = m.adjugate();
    for (k, e) in adj.entries().enumerate() {
        homogeneous(
            e.clone(),
            &format!("adjugate entry ({}, {})", k / 3 + 1, k % 3 + 1),
        )?;
    }
    Ok(adj)
}

/// Determinant of the submatrix with the given 1-based row and column removed.
pub fn minor<T: RingElem>(m: &Matrix<T>, drop_row: usize, drop_col: usize) -> Result<T> {
    let out_of_range = drop_row == 0 || drop_col == 0 || drop_row > m.rows || drop_col > m.cols;
    if out_of_range || !m.is_square() || m.rows < 2 {
        return Err(Error::IndexOutOfRange {
            row: drop_row,
            col: drop_col,
            rows: m.rows,
            cols: m.cols,
        });
    }
    Ok(m.submatrix(drop_row - 1, drop_col - 1).det())
}
