//! Dense square matrices over a [`Field`] and polynomial evaluation at them.

mod format;
mod minpoly;
pub mod random;

use rayon::prelude::*;
use thiserror::Error;

use crate::field::{Field, FieldError, FieldSpec};
use crate::poly::Poly;

pub use format::{AnyMat, FormatError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(FieldSpec, FieldSpec),
    #[error("row {row} has {len} entries, expected {n}")]
    Ragged { row: usize, len: usize, n: usize },
    #[error(transparent)]
    Field(#[from] FieldError),
}

// Below this size the rayon split costs more than it saves.
const PARALLEL_MIN_DIM: usize = 48;

// Degree from which Paterson-Stockmeyer beats plain Horner.
const PS_MIN_DEGREE: usize = 8;

/// An `n x n` matrix stored row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mat<F: Field> {
    field: F,
    n: usize,
    data: Vec<F::Elem>,
}

impl<F: Field> Mat<F> {
    pub fn zeros(field: F, n: usize) -> Self {
        let data = vec![field.zero(); n * n];
        Mat { field, n, data }
    }

    pub fn identity(field: F, n: usize) -> Self {
        Self::scalar(field.clone(), n, field.one())
    }

    pub fn scalar(field: F, n: usize, c: F::Elem) -> Self {
        let mut m = Self::zeros(field, n);
        for i in 0..n {
            m.data[i * n + i] = c.clone();
        }
        m
    }

    pub fn from_rows(field: F, rows: Vec<Vec<F::Elem>>) -> Result<Self, MatrixError> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for (row, r) in rows.into_iter().enumerate() {
            if r.len() != n {
                return Err(MatrixError::Ragged { row, len: r.len(), n });
            }
            data.extend(r);
        }
        Ok(Mat { field, n, data })
    }

    pub fn from_i64_rows(field: F, rows: &[&[i64]]) -> Result<Self, MatrixError> {
        let rows = rows.iter().map(|r| r.iter().map(|&v| field.from_i64(v)).collect()).collect();
        Self::from_rows(field, rows)
    }

    pub fn diagonal(field: F, diag: &[F::Elem]) -> Self {
        let mut m = Self::zeros(field, diag.len());
        for (i, d) in diag.iter().enumerate() {
            m.set(i, i, d.clone());
        }
        m
    }

    /// Companion matrix of a monic polynomial: ones on the subdiagonal, the
    /// negated coefficients in the last column.
    pub fn companion(poly: &Poly<F>) -> Self {
        let field = poly.field().clone();
        let p = poly.monic();
        let d = p.degree().unwrap_or(0);
        let mut m = Self::zeros(field.clone(), d);
        for i in 1..d {
            m.set(i, i - 1, field.one());
        }
        for i in 0..d {
            m.set(i, d - 1, field.neg(&p.coeff(i)));
        }
        m
    }

    pub fn block_diagonal(field: F, blocks: &[Self]) -> Self {
        let n = blocks.iter().map(|b| b.n).sum();
        let mut m = Self::zeros(field, n);
        let mut off = 0;
        for b in blocks {
            for i in 0..b.n {
                for j in 0..b.n {
                    m.set(off + i, off + j, b.get(i, j).clone());
                }
            }
            off += b.n;
        }
        m
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &F::Elem {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F::Elem) {
        self.data[i * self.n + j] = v;
    }

    pub fn row(&self, i: usize) -> &[F::Elem] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[F::Elem]> {
        self.data.chunks(self.n.max(1)).take(self.n)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| self.field.is_zero(v))
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.field.clone(), self.n)
    }

    fn check_compatible(&self, other: &Self) -> Result<(), MatrixError> {
        if self.field != other.field {
            return Err(MatrixError::FieldMismatch(self.field.spec(), other.field.spec()));
        }
        if self.n != other.n {
            return Err(MatrixError::DimensionMismatch(self.n, other.n));
        }
        Ok(())
    }

    fn zip_with(&self, other: &Self, op: impl Fn(&F::Elem, &F::Elem) -> F::Elem) -> Self {
        let data = self.data.iter().zip(&other.data).map(|(a, b)| op(a, b)).collect();
        Mat { field: self.field.clone(), n: self.n, data }
    }

    pub fn add(&self, other: &Self) -> Result<Self, MatrixError> {
        self.check_compatible(other)?;
        Ok(self.zip_with(other, |a, b| self.field.add(a, b)))
    }

    pub fn sub(&self, other: &Self) -> Result<Self, MatrixError> {
        self.check_compatible(other)?;
        Ok(self.zip_with(other, |a, b| self.field.sub(a, b)))
    }

    pub fn mul(&self, other: &Self) -> Result<Self, MatrixError> {
        self.check_compatible(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub fn neg(&self) -> Self {
        let f = &self.field;
        Mat { field: f.clone(), n: self.n, data: self.data.iter().map(|a| f.neg(a)).collect() }
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let f = &self.field;
        Mat { field: f.clone(), n: self.n, data: self.data.iter().map(|a| f.mul(a, c)).collect() }
    }

    /// Whether `self * other == other * self`.
    pub fn commutes_with(&self, other: &Self) -> Result<bool, MatrixError> {
        Ok(self.mul(other)? == other.mul(self)?)
    }

    fn add_scalar_in_place(&mut self, c: &F::Elem) {
        if self.field.is_zero(c) {
            return;
        }
        for i in 0..self.n {
            let k = i * self.n + i;
            self.data[k] = self.field.add(&self.data[k], c);
        }
    }

    fn add_scaled_in_place(&mut self, c: &F::Elem, other: &Self) {
        if self.field.is_zero(c) {
            return;
        }
        let f = &self.field;
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            if !f.is_zero(b) {
                *a = f.add(a, &f.mul(c, b));
            }
        }
    }

    // Row-parallel classical product; each output row is computed independently
    // so the result does not depend on scheduling.
    fn mul_unchecked(&self, other: &Self) -> Self {
        let n = self.n;
        let f = &self.field;
        let mut data = vec![f.zero(); n * n];
        if n == 0 {
            return Mat { field: f.clone(), n, data };
        }
        let kernel = |(i, out): (usize, &mut [F::Elem])| f.row_times_matrix(self.row(i), &other.data, n, out);
        if n >= PARALLEL_MIN_DIM {
            data.par_chunks_mut(n).enumerate().for_each(kernel);
        } else {
            data.chunks_mut(n).enumerate().for_each(kernel);
        }
        Mat { field: f.clone(), n, data }
    }

    pub fn mul_vec(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        let f = &self.field;
        self.rows()
            .map(|row| {
                row.iter().zip(v).fold(f.zero(), |acc, (a, b)| {
                    if f.is_zero(a) || f.is_zero(b) {
                        acc
                    } else {
                        f.add(&acc, &f.mul(a, b))
                    }
                })
            })
            .collect()
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::identity(self.field.clone(), self.n);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        acc
    }

    /// `N^s == 0` for `s = min(bound, n)`.
    pub fn is_nilpotent(&self, bound: u64) -> bool {
        let s = bound.max(1).min(self.n as u64);
        self.pow(s).is_zero()
    }

    /// `poly(self)`: Horner for low degree, Paterson-Stockmeyer above that.
    pub fn eval_poly(&self, poly: &Poly<F>) -> Result<Self, MatrixError> {
        if poly.field() != &self.field {
            return Err(MatrixError::FieldMismatch(poly.field().spec(), self.field.spec()));
        }
        Ok(match poly.degree() {
            Some(d) if d >= PS_MIN_DEGREE => self.eval_paterson_stockmeyer(poly),
            _ => self.eval_horner(poly),
        })
    }

    pub fn eval_horner(&self, poly: &Poly<F>) -> Self {
        let mut acc = Self::zeros(self.field.clone(), self.n);
        for (i, c) in poly.coeffs().iter().enumerate().rev() {
            if i + 1 != poly.coeffs().len() {
                acc = acc.mul_unchecked(self);
            }
            acc.add_scalar_in_place(c);
        }
        acc
    }

    /// Baby-step giant-step evaluation using about `2 sqrt(deg)` products.
    pub fn eval_paterson_stockmeyer(&self, poly: &Poly<F>) -> Self {
        let Some(deg) = poly.degree() else {
            return Self::zeros(self.field.clone(), self.n);
        };
        let step = ((deg + 1) as f64).sqrt().ceil() as usize;
        let step = step.max(1);
        let mut powers = Vec::with_capacity(step + 1);
        powers.push(Self::identity(self.field.clone(), self.n));
        for i in 1..=step {
            powers.push(powers[i - 1].mul_unchecked(self));
        }
        let giant = &powers[step];
        let chunk = |coeffs: &[F::Elem]| {
            let mut m = Self::scalar(self.field.clone(), self.n, coeffs[0].clone());
            for (c, p) in coeffs.iter().zip(&powers).skip(1) {
                m.add_scaled_in_place(c, p);
            }
            m
        };
        let mut chunks = poly.coeffs().chunks(step).rev();
        let mut acc = chunk(chunks.next().expect("nonzero polynomial"));
        for c in chunks {
            acc = acc.mul_unchecked(giant);
            let b = chunk(c);
            acc.add_scaled_in_place(&self.field.one(), &b);
        }
        acc
    }

    /// Gauss-Jordan inverse; `None` if singular.
    pub fn inverse(&self) -> Option<Self> {
        let n = self.n;
        let f = &self.field;
        let mut a = self.clone();
        let mut inv = Self::identity(f.clone(), n);
        for col in 0..n {
            let pivot = (col..n).find(|&r| !f.is_zero(a.get(r, col)))?;
            if pivot != col {
                for j in 0..n {
                    a.data.swap(pivot * n + j, col * n + j);
                    inv.data.swap(pivot * n + j, col * n + j);
                }
            }
            let s = f.inv(a.get(col, col)).ok()?;
            for j in 0..n {
                a.data[col * n + j] = f.mul(&a.data[col * n + j], &s);
                inv.data[col * n + j] = f.mul(&inv.data[col * n + j], &s);
            }
            for r in 0..n {
                if r == col || f.is_zero(a.get(r, col)) {
                    continue;
                }
                let factor = a.get(r, col).clone();
                for j in 0..n {
                    let sub_a = f.mul(&factor, &a.data[col * n + j]);
                    a.data[r * n + j] = f.sub(&a.data[r * n + j], &sub_a);
                    let sub_i = f.mul(&factor, &inv.data[col * n + j]);
                    inv.data[r * n + j] = f.sub(&inv.data[r * n + j], &sub_i);
                }
            }
        }
        Some(inv)
    }
}
