//! Dense univariate polynomials over a [`Field`].

mod euclid;
pub(crate) mod modular;
mod squarefree;
mod text;

use std::ops::{Add, Mul, Neg, Sub};

use rand::Rng;
use thiserror::Error;

use crate::field::{Field, FieldError};

pub use euclid::ExtGcd;
pub use squarefree::{poly_from_roots, SquareFreeCert};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("polynomial division by zero")]
    DivisionByZero,
    #[error("gcd of two zero polynomials is undefined")]
    BothZero,
    #[error("operation requires a nonzero polynomial")]
    ZeroInput,
    #[error("operation requires a non-constant polynomial")]
    ConstantInput,
    #[error("reduction modulo the zero polynomial")]
    ZeroModulus,
    #[error("operation requires characteristic zero")]
    WrongCharacteristic,
    #[error("root {0} listed more than once")]
    DuplicateRoot(String),
    #[error("root multiplicities must be at least 1")]
    ZeroMultiplicity,
    #[error("empty root list")]
    NoRoots,
    #[error("polynomial is not square-free")]
    NotSquareFree,
    #[error("invalid polynomial {0:?}")]
    Parse(String),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// A polynomial stored low-to-high with trailing zeros trimmed.
///
/// The zero polynomial has an empty coefficient vector and no degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly<F: Field> {
    field: F,
    coeffs: Vec<F::Elem>,
}

impl<F: Field> Poly<F> {
    pub fn new(field: F, mut coeffs: Vec<F::Elem>) -> Self {
        while coeffs.last().is_some_and(|c| field.is_zero(c)) {
            coeffs.pop();
        }
        Poly { field, coeffs }
    }

    pub fn zero(field: F) -> Self {
        Poly { field, coeffs: Vec::new() }
    }

    pub fn one(field: F) -> Self {
        Self::constant(field.clone(), field.one())
    }

    pub fn constant(field: F, c: F::Elem) -> Self {
        Self::new(field, vec![c])
    }

    /// The indeterminate `X`.
    pub fn x(field: F) -> Self {
        Self::monomial(field.clone(), field.one(), 1)
    }

    pub fn monomial(field: F, c: F::Elem, exp: usize) -> Self {
        let mut coeffs = vec![field.zero(); exp + 1];
        coeffs[exp] = c;
        Self::new(field, coeffs)
    }

    /// `X - c`.
    pub fn linear(field: F, root: &F::Elem) -> Self {
        let c = field.neg(root);
        Self::new(field.clone(), vec![c, field.one()])
    }

    pub fn from_i64s(field: F, coeffs: &[i64]) -> Self {
        let c = coeffs.iter().map(|&v| field.from_i64(v)).collect();
        Self::new(field, c)
    }

    /// Random polynomial of degree exactly `deg`.
    pub fn random<R: Rng + ?Sized>(field: F, deg: usize, rng: &mut R) -> Self {
        let mut coeffs: Vec<F::Elem> = (0..deg).map(|_| field.sample(rng)).collect();
        let lead = loop {
            let c = field.sample(rng);
            if !field.is_zero(&c) {
                break c;
            }
        };
        coeffs.push(lead);
        Self::new(field, coeffs)
    }

    pub fn random_monic<R: Rng + ?Sized>(field: F, deg: usize, rng: &mut R) -> Self {
        let mut coeffs: Vec<F::Elem> = (0..deg).map(|_| field.sample(rng)).collect();
        coeffs.push(field.one());
        Self::new(field, coeffs)
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn coeffs(&self) -> &[F::Elem] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<F::Elem> {
        self.coeffs
    }

    /// Coefficient of `X^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> F::Elem {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// True for the zero polynomial and nonzero constants.
    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.field.is_one(&self.coeffs[0])
    }

    pub fn leading_coeff(&self) -> Option<&F::Elem> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff().is_some_and(|c| self.field.is_one(c))
    }

    /// Scales to leading coefficient one; the zero polynomial is returned as is.
    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            None => self.clone(),
            Some(lc) if self.field.is_one(lc) => self.clone(),
            Some(lc) => {
                let inv = self.field.inv(lc).expect("leading coefficient is nonzero");
                self.scale(&inv)
            }
        }
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let f = &self.field;
        Self::new(f.clone(), self.coeffs.iter().map(|a| f.mul(a, c)).collect())
    }

    fn assert_same_field(&self, other: &Self) {
        assert_eq!(self.field, other.field, "polynomials over different fields");
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.field.clone());
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// The formal derivative.
    pub fn derivative(&self) -> Self {
        let f = &self.field;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| f.mul(c, &f.from_i64(i as i64)))
            .collect();
        Self::new(f.clone(), coeffs)
    }

    /// Value at a scalar, by Horner's rule.
    pub fn eval(&self, x: &F::Elem) -> F::Elem {
        let f = &self.field;
        self.coeffs.iter().rev().fold(f.zero(), |acc, c| f.add(&f.mul(&acc, x), c))
    }

    /// Euclidean division: `self = q * divisor + r` with `deg r < deg divisor`.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self), PolyError> {
        self.assert_same_field(divisor);
        let f = &self.field;
        let dd = divisor.degree().ok_or(PolyError::DivisionByZero)?;
        let Some(nd) = self.degree() else {
            return Ok((Self::zero(f.clone()), Self::zero(f.clone())));
        };
        if nd < dd {
            return Ok((Self::zero(f.clone()), self.clone()));
        }
        let lc_inv = f.inv(&divisor.coeffs[dd])?;
        let mut rem = self.coeffs.clone();
        let mut quot = vec![f.zero(); nd - dd + 1];
        for i in (0..=nd - dd).rev() {
            let c = f.mul(&rem[i + dd], &lc_inv);
            if f.is_zero(&c) {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                if !f.is_zero(d) {
                    rem[i + j] = f.sub(&rem[i + j], &f.mul(&c, d));
                }
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        Ok((Self::new(f.clone(), quot), Self::new(f.clone(), rem)))
    }

    pub fn rem(&self, divisor: &Self) -> Result<Self, PolyError> {
        Ok(self.div_rem(divisor)?.1)
    }

    /// Quotient of an exact division; `None` if `divisor` does not divide `self`.
    pub fn exact_div(&self, divisor: &Self) -> Result<Option<Self>, PolyError> {
        let (q, r) = self.div_rem(divisor)?;
        Ok(r.is_zero().then_some(q))
    }

    /// Whether `self` divides `other`. The zero polynomial divides only zero.
    pub fn divides(&self, other: &Self) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.rem(self).expect("nonzero divisor").is_zero()
    }

    /// `self(inner)` in `K[X]`.
    pub fn compose(&self, inner: &Self) -> Self {
        self.assert_same_field(inner);
        let f = &self.field;
        self.coeffs.iter().rev().fold(Self::zero(f.clone()), |acc, c| {
            &(&acc * inner) + &Self::constant(f.clone(), c.clone())
        })
    }

    /// `self(inner) mod modulus`, by Horner's rule in `K[X]/(modulus)`.
    pub fn compose_mod(&self, inner: &Self, modulus: &Self) -> Result<Self, PolyError> {
        self.assert_same_field(inner);
        self.assert_same_field(modulus);
        if modulus.is_zero() {
            return Err(PolyError::ZeroModulus);
        }
        let f = &self.field;
        let inner = inner.rem(modulus)?;
        let mut acc = Self::zero(f.clone());
        for c in self.coeffs.iter().rev() {
            acc = (&acc * &inner).rem(modulus)?;
            acc = &acc + &Self::constant(f.clone(), c.clone());
        }
        acc.rem(modulus)
    }

    /// `self * other mod modulus`.
    pub fn mul_mod(&self, other: &Self, modulus: &Self) -> Result<Self, PolyError> {
        (self * other).rem(modulus)
    }

    fn zip_with(&self, other: &Self, op: impl Fn(&F::Elem, &F::Elem) -> F::Elem) -> Self {
        self.assert_same_field(other);
        let f = &self.field;
        let zero = f.zero();
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len)
            .map(|i| op(self.coeffs.get(i).unwrap_or(&zero), other.coeffs.get(i).unwrap_or(&zero)))
            .collect();
        Self::new(f.clone(), coeffs)
    }
}

impl<F: Field> Add for &Poly<F> {
    type Output = Poly<F>;

    fn add(self, rhs: Self) -> Poly<F> {
        self.zip_with(rhs, |a, b| self.field.add(a, b))
    }
}

impl<F: Field> Sub for &Poly<F> {
    type Output = Poly<F>;

    fn sub(self, rhs: Self) -> Poly<F> {
        self.zip_with(rhs, |a, b| self.field.sub(a, b))
    }
}

impl<F: Field> Neg for &Poly<F> {
    type Output = Poly<F>;

    fn neg(self) -> Poly<F> {
        let f = &self.field;
        Poly::new(f.clone(), self.coeffs.iter().map(|c| f.neg(c)).collect())
    }
}

impl<F: Field> Mul for &Poly<F> {
    type Output = Poly<F>;

    fn mul(self, rhs: Self) -> Poly<F> {
        self.assert_same_field(rhs);
        let f = &self.field;
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(f.clone());
        }
        let mut out = vec![f.zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !f.is_zero(b) {
                    out[i + j] = f.add(&out[i + j], &f.mul(a, b));
                }
            }
        }
        Poly::new(f.clone(), out)
    }
}
