use std::fmt;
use std::ops::{Add, Mul, Sub};

use rand::Rng;

use crate::error::{Error, Result};
use crate::scalar::{Elem, FieldSpec};

use super::rref_rows;

/// Dense row-major matrix over a [`FieldSpec`].
///
/// Vectors are row vectors throughout the crate and matrices act on the right
/// (`v * A`), so `F^n` is a right module over any matrix algebra.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

impl Matrix {
    pub fn zeros(field: &FieldSpec, rows: usize, cols: usize) -> Self {
        Matrix {
            field: field.clone(),
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: &FieldSpec, n: usize) -> Self {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    /// Matrix unit with a single 1 at `(i, j)`, 0-based.
    pub fn unit(field: &FieldSpec, n: usize, i: usize, j: usize) -> Self {
        let mut m = Matrix::zeros(field, n, n);
        m.data[i * n + j] = field.one();
        m
    }

    pub fn from_rows(field: &FieldSpec, rows: Vec<Vec<Elem>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::ShapeMismatch("ragged rows".into()));
        }
        let data: Vec<Elem> = rows.into_iter().flatten().collect();
        if let Some(bad) = data.iter().find(|e| !field.contains(e)) {
            return Err(Error::Parse(format!("{bad:?} is not an element of {field}")));
        }
        Ok(Matrix {
            field: field.clone(),
            rows: r,
            cols: c,
            data,
        })
    }

    /// Convenience constructor from small integers (reduced into the field).
    pub fn from_i64(field: &FieldSpec, rows: &[&[i64]]) -> Self {
        let elems = rows
            .iter()
            .map(|r| r.iter().map(|&v| field.from_i64(v)).collect())
            .collect();
        Matrix::from_rows(field, elems).expect("rectangular integer matrix")
    }

    /// Inverse of [`Matrix::to_flat`]: an `n x n` matrix from `n^2` row-major coordinates.
    pub fn from_flat(field: &FieldSpec, n: usize, flat: &[Elem]) -> Result<Self> {
        if flat.len() != n * n {
            return Err(Error::ShapeMismatch(format!(
                "expected {} coordinates, got {}",
                n * n,
                flat.len()
            )));
        }
        Ok(Matrix {
            field: field.clone(),
            rows: n,
            cols: n,
            data: flat.to_vec(),
        })
    }

    pub fn random<R: Rng + ?Sized>(field: &FieldSpec, rows: usize, cols: usize, rng: &mut R) -> Self {
        Matrix {
            field: field.clone(),
            rows,
            cols,
            data: (0..rows * cols).map(|_| field.random_elem(rng)).collect(),
        }
    }

    /// Random strictly upper triangular square matrix.
    pub fn random_strictly_upper<R: Rng + ?Sized>(field: &FieldSpec, n: usize, rng: &mut R) -> Self {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            for j in i + 1..n {
                m.data[i * n + j] = field.random_elem(rng);
            }
        }
        m
    }

    /// Random invertible matrix (rejection sampling).
    pub fn random_invertible<R: Rng + ?Sized>(field: &FieldSpec, n: usize, rng: &mut R) -> Self {
        loop {
            let m = Matrix::random(field, n, n, rng);
            if m.rank() == n {
                return m;
            }
        }
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
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

    pub fn get(&self, i: usize, j: usize) -> &Elem {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Elem) {
        debug_assert!(self.field.contains(&v));
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Elem>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    /// Row-major coordinates; the fixed vectorization of `n x n` matrices.
    pub fn to_flat(&self) -> Vec<Elem> {
        self.data.clone()
    }

    pub fn as_flat(&self) -> &[Elem] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|e| self.field.is_zero(e))
    }

    pub fn is_upper_triangular(&self) -> bool {
        (0..self.rows).all(|i| (0..i.min(self.cols)).all(|j| self.field.is_zero(self.get(i, j))))
    }

    pub fn is_strictly_upper(&self) -> bool {
        self.is_upper_triangular() && (0..self.rows.min(self.cols)).all(|i| self.field.is_zero(self.get(i, i)))
    }

    /// Upper triangular with a constant main diagonal.
    pub fn is_upper_constant_diagonal(&self) -> bool {
        self.is_square() && self.is_upper_triangular() && (1..self.rows).all(|i| self.get(i, i) == self.get(0, 0))
    }

    /// Returns `Some(c)` when the matrix is `c * I`.
    pub fn scalar_value(&self) -> Option<Elem> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let c = if n == 0 {
            self.field.zero()
        } else {
            self.get(0, 0).clone()
        };
        for i in 0..n {
            for j in 0..n {
                let e = self.get(i, j);
                let ok = if i == j { *e == c } else { self.field.is_zero(e) };
                if !ok {
                    return None;
                }
            }
        }
        Some(c)
    }

    pub fn trace(&self) -> Elem {
        let f = &self.field;
        (0..self.rows.min(self.cols)).fold(f.zero(), |acc, i| f.add(&acc, self.get(i, i)))
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn scale(&self, c: &Elem) -> Matrix {
        Matrix {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|e| self.field.mul(c, e)).collect(),
        }
    }

    /// Entry-wise image in another field (see [`FieldSpec::embed`]).
    pub fn embed(&self, target: &FieldSpec) -> Result<Matrix> {
        let data = self
            .data
            .iter()
            .map(|e| self.field.embed(e, target))
            .collect::<Result<Vec<_>>>()?;
        Ok(Matrix {
            field: target.clone(),
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn checked_mul(&self, rhs: &Matrix) -> Result<Matrix> {
        if self.field != rhs.field {
            return Err(Error::FieldMismatch {
                left: self.field.to_string(),
                right: rhs.field.to_string(),
            });
        }
        if self.cols != rhs.rows {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(self.mul_unchecked(rhs))
    }

    fn mul_unchecked(&self, rhs: &Matrix) -> Matrix {
        let f = &self.field;
        let mut out = Matrix::zeros(f, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..rhs.cols {
                    let idx = i * rhs.cols + j;
                    out.data[idx] = f.mul_add(a, rhs.get(k, j), &out.data[idx]);
                }
            }
        }
        out
    }

    pub fn checked_sub(&self, rhs: &Matrix) -> Result<Matrix> {
        self.same_shape(rhs)?;
        Ok(self.zip_with(rhs, |f, a, b| f.sub(a, b)))
    }

    pub fn checked_add(&self, rhs: &Matrix) -> Result<Matrix> {
        self.same_shape(rhs)?;
        Ok(self.zip_with(rhs, |f, a, b| f.add(a, b)))
    }

    fn same_shape(&self, rhs: &Matrix) -> Result<()> {
        if self.field != rhs.field {
            return Err(Error::FieldMismatch {
                left: self.field.to_string(),
                right: rhs.field.to_string(),
            });
        }
        if (self.rows, self.cols) != (rhs.rows, rhs.cols) {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(())
    }

    fn zip_with(&self, rhs: &Matrix, op: impl Fn(&FieldSpec, &Elem, &Elem) -> Elem) -> Matrix {
        Matrix {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| op(&self.field, a, b))
                .collect(),
        }
    }

    pub fn pow(&self, mut exp: u64) -> Matrix {
        assert!(self.is_square(), "power of a non-square matrix");
        let mut acc = Matrix::identity(&self.field, self.rows);
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            exp >>= 1;
        }
        acc
    }

    /// Row vector times matrix.
    pub fn left_apply(&self, v: &[Elem]) -> Vec<Elem> {
        assert_eq!(v.len(), self.rows, "vector length does not match matrix rows");
        let f = &self.field;
        let mut out = vec![f.zero(); self.cols];
        for (k, a) in v.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, slot) in out.iter_mut().enumerate() {
                *slot = f.mul_add(a, self.get(k, j), slot);
            }
        }
        out
    }

    /// Reduced row echelon form, rank and pivot columns.
    pub fn rref(&self) -> (Matrix, usize, Vec<usize>) {
        let mut rows = self.row_vecs();
        let pivots = rref_rows(&self.field, &mut rows, self.cols);
        let rank = pivots.len();
        let mut data: Vec<Elem> = rows.into_iter().flatten().collect();
        data.resize(self.rows * self.cols, self.field.zero());
        (
            Matrix {
                field: self.field.clone(),
                rows: self.rows,
                cols: self.cols,
                data,
            },
            rank,
            pivots,
        )
    }

    pub fn rank(&self) -> usize {
        let mut rows = self.row_vecs();
        rref_rows(&self.field, &mut rows, self.cols).len()
    }

    /// Gauss-Jordan inverse.
    pub fn inverse(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::ShapeMismatch("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let f = &self.field;
        let mut rows: Vec<Vec<Elem>> = (0..n)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.extend((0..n).map(|j| if i == j { f.one() } else { f.zero() }));
                r
            })
            .collect();
        let pivots = rref_rows(f, &mut rows, 2 * n);
        if pivots.len() < n || pivots[n - 1] >= n {
            return Err(Error::Singular);
        }
        let inv = rows.into_iter().map(|r| r[n..].to_vec()).collect();
        Matrix::from_rows(f, inv)
    }

    pub fn to_strings(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|e| self.field.format_elem(e)).collect())
            .collect()
    }
}

impl<'a> Mul<&'a Matrix> for &'a Matrix {
    type Output = Matrix;

    /// Panics on field or shape mismatch; use [`Matrix::checked_mul`] for
    /// unvalidated input.
    fn mul(self, rhs: &'a Matrix) -> Matrix {
        self.checked_mul(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl<'a> Add<&'a Matrix> for &'a Matrix {
    type Output = Matrix;

    fn add(self, rhs: &'a Matrix) -> Matrix {
        self.checked_add(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl<'a> Sub<&'a Matrix> for &'a Matrix {
    type Output = Matrix;

    fn sub(self, rhs: &'a Matrix) -> Matrix {
        self.checked_sub(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.to_strings().iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}
