//! Exact scalar arithmetic over the rationals and prime fields.
//!
//! Every other module is generic over [`Field`]. A field value is a small
//! descriptor (`Rationals` carries nothing, `PrimeField` carries `p`); the
//! elements themselves are plain values (`BigRational` or a `u64` residue) so
//! that polynomials and matrices store them without a per-element tag.

use std::fmt;
use std::hash::Hash;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{p}^{k} is a prime power; only prime fields F_p are supported")]
    ExtensionField { p: u64, k: u32 },
    #[error("modulus {0} exceeds 2^32")]
    ModulusTooLarge(u64),
    #[error("p-th roots are only defined here in positive characteristic")]
    UnsupportedField,
    #[error("field mismatch: {0} vs {1}")]
    Mismatch(FieldSpec, FieldSpec),
    #[error("invalid scalar {0:?}")]
    Parse(String),
}

/// Runtime description of a supported field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Rationals,
    PrimeField(u64),
}

impl FieldSpec {
    /// Validated `F_p`. Rejects composites, prime powers and `p >= 2^32`.
    pub fn prime(p: u64) -> Result<Self, FieldError> {
        PrimeField::new(p).map(|f| f.spec())
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::PrimeField(p) => *p,
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::PrimeField(p) => write!(f, "F_{p}"),
        }
    }
}

/// A field with exact, canonical element representation.
pub trait Field: Clone + fmt::Debug + PartialEq + Eq + Send + Sync + 'static {
    type Elem: Clone + fmt::Debug + PartialEq + Eq + Hash + Send + Sync + 'static;

    fn spec(&self) -> FieldSpec;

    fn characteristic(&self) -> u64 {
        self.spec().characteristic()
    }

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    #[allow(clippy::wrong_self_convention)]
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem, FieldError>;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem, FieldError> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// The unique `b` with `b^p = a`, where `p` is the characteristic.
    fn pth_root(&self, a: &Self::Elem) -> Result<Self::Elem, FieldError>;

    fn parse_elem(&self, s: &str) -> Result<Self::Elem, FieldError>;
    fn format_elem(&self, a: &Self::Elem) -> String;

    /// Whether the printed form carries a leading minus sign.
    fn is_negative(&self, _a: &Self::Elem) -> bool {
        false
    }

    /// A random element with small height (uniform on `F_p`).
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem;

    /// Monic gcd of two nonzero coefficient vectors by a field-specific method.
    /// `None` falls back to the Euclidean algorithm.
    fn poly_gcd(&self, _a: &[Self::Elem], _b: &[Self::Elem]) -> Option<Vec<Self::Elem>> {
        None
    }

    /// Extended gcd `(d, r, s)` by a field-specific method, with the same
    /// normalization as the Euclidean algorithm. `None` falls back to it.
    #[allow(clippy::type_complexity)]
    fn poly_ext_gcd(
        &self,
        _a: &[Self::Elem],
        _b: &[Self::Elem],
    ) -> Option<(Vec<Self::Elem>, Vec<Self::Elem>, Vec<Self::Elem>)> {
        None
    }

    /// `out = row * M` where `M` is a `row.len() x cols` row-major block.
    fn row_times_matrix(&self, row: &[Self::Elem], m: &[Self::Elem], cols: usize, out: &mut [Self::Elem]) {
        for o in out.iter_mut() {
            *o = self.zero();
        }
        for (k, a) in row.iter().enumerate() {
            if self.is_zero(a) {
                continue;
            }
            let m_row = &m[k * cols..(k + 1) * cols];
            for (o, b) in out.iter_mut().zip(m_row) {
                if !self.is_zero(b) {
                    *o = self.add(o, &self.mul(a, b));
                }
            }
        }
    }
}

/// The rational numbers, with arbitrary-precision numerator and denominator.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn poly_gcd(&self, a: &[BigRational], b: &[BigRational]) -> Option<Vec<BigRational>> {
        crate::poly::modular::rational_gcd(a, b)
    }

    fn poly_ext_gcd(
        &self,
        a: &[BigRational],
        b: &[BigRational],
    ) -> Option<(Vec<BigRational>, Vec<BigRational>, Vec<BigRational>)> {
        crate::poly::modular::rational_ext_gcd(a, b)
    }

    fn spec(&self) -> FieldSpec {
        FieldSpec::Rationals
    }

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }

    fn one(&self) -> BigRational {
        BigRational::one()
    }

    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }

    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }

    fn is_one(&self, a: &BigRational) -> bool {
        a.is_one()
    }

    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }

    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }

    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }

    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }

    fn inv(&self, a: &BigRational) -> Result<BigRational, FieldError> {
        if a.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(a.recip())
    }

    fn pth_root(&self, _a: &BigRational) -> Result<BigRational, FieldError> {
        Err(FieldError::UnsupportedField)
    }

    fn parse_elem(&self, s: &str) -> Result<BigRational, FieldError> {
        parse_rational(s)
    }

    fn format_elem(&self, a: &BigRational) -> String {
        a.to_string()
    }

    fn is_negative(&self, a: &BigRational) -> bool {
        a.is_negative()
    }

    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> BigRational {
        let num: i64 = rng.gen_range(-6..=6);
        let den: i64 = if rng.gen_bool(0.75) { 1 } else { rng.gen_range(2..=4) };
        BigRational::new(num.into(), den.into())
    }
}

fn parse_rational(s: &str) -> Result<BigRational, FieldError> {
    let s = s.trim();
    let bad = || FieldError::Parse(s.to_string());
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    let num = parse_signed_decimal(num).ok_or_else(bad)?;
    let den = match den {
        Some(d) => {
            if !d.bytes().all(|b| b.is_ascii_digit()) || d.is_empty() {
                return Err(bad());
            }
            d.parse::<BigInt>().map_err(|_| bad())?
        }
        None => BigInt::one(),
    };
    if den.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(num, den))
}

fn parse_signed_decimal(s: &str) -> Option<BigInt> {
    let digits = s.strip_prefix(['+', '-']).unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    let v: BigInt = digits.parse().ok()?;
    Some(if s.starts_with('-') { -v } else { v })
}

/// The prime field `Z/pZ`, elements stored as canonical residues in `[0, p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, FieldError> {
        if p > u32::MAX as u64 {
            return Err(FieldError::ModulusTooLarge(p));
        }
        if p < 2 {
            return Err(FieldError::NotPrime(p));
        }
        match smallest_factor(p) {
            q if q == p => Ok(PrimeField { p }),
            q => {
                let mut rest = p;
                let mut k = 0;
                while rest.is_multiple_of(q) {
                    rest /= q;
                    k += 1;
                }
                if rest == 1 {
                    Err(FieldError::ExtensionField { p: q, k })
                } else {
                    Err(FieldError::NotPrime(p))
                }
            }
        }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    /// Residue of an arbitrary integer.
    pub fn reduce_big(&self, v: &BigInt) -> u64 {
        let r = v % BigInt::from(self.p);
        let r = if r.is_negative() { r + BigInt::from(self.p) } else { r };
        r.try_into().expect("residue fits in u64")
    }
}

fn smallest_factor(n: u64) -> u64 {
    if n.is_multiple_of(2) {
        return 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return d;
        }
        d += 2;
    }
    n
}

impl Field for PrimeField {
    type Elem = u64;

    fn spec(&self) -> FieldSpec {
        FieldSpec::PrimeField(self.p)
    }

    fn zero(&self) -> u64 {
        0
    }

    fn one(&self) -> u64 {
        1
    }

    fn from_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }

    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }

    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }

    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }

    fn inv(&self, a: &u64) -> Result<u64, FieldError> {
        if *a == 0 {
            return Err(FieldError::DivisionByZero);
        }
        let (mut r0, mut r1) = (self.p as i64, *a as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        debug_assert_eq!(r0, 1);
        Ok(t0.rem_euclid(self.p as i64) as u64)
    }

    // Frobenius is the identity on the prime field.
    fn pth_root(&self, a: &u64) -> Result<u64, FieldError> {
        Ok(*a)
    }

    fn parse_elem(&self, s: &str) -> Result<u64, FieldError> {
        let s = s.trim();
        parse_signed_decimal(s)
            .map(|v| self.reduce_big(&v))
            .ok_or_else(|| FieldError::Parse(s.to_string()))
    }

    fn format_elem(&self, a: &u64) -> String {
        a.to_string()
    }

    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        rng.gen_range(0..self.p)
    }

    fn row_times_matrix(&self, row: &[u64], m: &[u64], cols: usize, out: &mut [u64]) {
        // Accumulate unreduced products, folding back mod p before the sum can overflow.
        let p = self.p;
        let max_term = (p - 1) * (p - 1);
        let budget = (u64::MAX - p).checked_div(max_term).map_or(u64::MAX, |b| b.max(1));
        for o in out.iter_mut() {
            *o = 0;
        }
        let mut pending = 0u64;
        for (k, &a) in row.iter().enumerate() {
            if a == 0 {
                continue;
            }
            if pending >= budget {
                for o in out.iter_mut() {
                    *o %= p;
                }
                pending = 0;
            }
            let m_row = &m[k * cols..(k + 1) * cols];
            for (o, &b) in out.iter_mut().zip(m_row) {
                *o += a * b;
            }
            pending += 1;
        }
        for o in out.iter_mut() {
            *o %= p;
        }
    }
}

/// A self-describing scalar, used where values from different fields can meet.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FieldElement {
    Rational(BigRational),
    Residue { value: u64, p: u64 },
}

impl FieldElement {
    pub fn parse(spec: FieldSpec, s: &str) -> Result<Self, FieldError> {
        match spec {
            FieldSpec::Rationals => Ok(FieldElement::Rational(parse_rational(s)?)),
            FieldSpec::PrimeField(p) => {
                let f = PrimeField::new(p)?;
                Ok(FieldElement::Residue { value: f.parse_elem(s)?, p })
            }
        }
    }

    pub fn spec(&self) -> FieldSpec {
        match self {
            FieldElement::Rational(_) => FieldSpec::Rationals,
            FieldElement::Residue { p, .. } => FieldSpec::PrimeField(*p),
        }
    }

    fn binary(
        &self,
        other: &Self,
        q: impl Fn(&BigRational, &BigRational) -> Result<BigRational, FieldError>,
        fp: impl Fn(&PrimeField, &u64, &u64) -> Result<u64, FieldError>,
    ) -> Result<Self, FieldError> {
        match (self, other) {
            (FieldElement::Rational(a), FieldElement::Rational(b)) => Ok(FieldElement::Rational(q(a, b)?)),
            (FieldElement::Residue { value: a, p }, FieldElement::Residue { value: b, p: p2 }) if p == p2 => {
                let f = PrimeField { p: *p };
                Ok(FieldElement::Residue { value: fp(&f, a, b)?, p: *p })
            }
            _ => Err(FieldError::Mismatch(self.spec(), other.spec())),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, FieldError> {
        self.binary(other, |a, b| Ok(a + b), |f, a, b| Ok(f.add(a, b)))
    }

    pub fn sub(&self, other: &Self) -> Result<Self, FieldError> {
        self.binary(other, |a, b| Ok(a - b), |f, a, b| Ok(f.sub(a, b)))
    }

    pub fn mul(&self, other: &Self) -> Result<Self, FieldError> {
        self.binary(other, |a, b| Ok(a * b), |f, a, b| Ok(f.mul(a, b)))
    }

    pub fn neg(&self) -> Self {
        match self {
            FieldElement::Rational(a) => FieldElement::Rational(-a),
            FieldElement::Residue { value, p } => FieldElement::Residue { value: PrimeField { p: *p }.neg(value), p: *p },
        }
    }

    pub fn inv(&self) -> Result<Self, FieldError> {
        match self {
            FieldElement::Rational(a) => Rationals.inv(a).map(FieldElement::Rational),
            FieldElement::Residue { value, p } => PrimeField { p: *p }
                .inv(value)
                .map(|value| FieldElement::Residue { value, p: *p }),
        }
    }

    pub fn pth_root(&self) -> Result<Self, FieldError> {
        match self {
            FieldElement::Rational(_) => Err(FieldError::UnsupportedField),
            FieldElement::Residue { .. } => Ok(self.clone()),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldElement::Rational(a) => a.is_zero(),
            FieldElement::Residue { value, .. } => *value == 0,
        }
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElement::Rational(a) => write!(f, "{a}"),
            FieldElement::Residue { value, .. } => write!(f, "{value}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn q(s: &str) -> BigRational {
        Rationals.parse_elem(s).unwrap()
    }

    #[test]
    fn rational_arithmetic() {
        assert_eq!(Rationals.add(&q("1/2"), &q("1/3")), q("5/6"));
        let a = q("-7/4");
        assert!(Rationals.is_zero(&Rationals.add(&a, &Rationals.neg(&a))));
        assert_eq!(Rationals.inv(&q("-2/3")).unwrap(), q("-3/2"));
        assert_eq!(Rationals.inv(&q("1")).unwrap(), q("1"));
        assert_eq!(Rationals.inv(&q("0")), Err(FieldError::DivisionByZero));
    }

    #[test]
    fn rational_canonical_form() {
        assert_eq!(q("6/4"), q("3/2"));
        assert_eq!(q("-4/6").to_string(), "-2/3");
        assert_eq!(q("+10/5").to_string(), "2");
        assert_eq!(Rationals.mul(&q("2/3"), &q("3/2")).to_string(), "1");
    }

    #[test]
    fn rational_parse_rejects_garbage() {
        for bad in ["", "1/0", "a", "1/-2", "1.5", "--1", "1/"] {
            assert!(Rationals.parse_elem(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn prime_arithmetic() {
        let f5 = PrimeField::new(5).unwrap();
        assert_eq!(f5.mul(&3, &4), 2);
        let f7 = PrimeField::new(7).unwrap();
        assert_eq!(f7.inv(&3).unwrap(), 5);
        assert_eq!(f7.inv(&1).unwrap(), 1);
        assert_eq!(f7.inv(&0), Err(FieldError::DivisionByZero));
        assert_eq!(f7.parse_elem("-1").unwrap(), 6);
        assert_eq!(f7.parse_elem("15").unwrap(), 1);
    }

    #[test]
    fn pth_roots() {
        assert_eq!(PrimeField::new(5).unwrap().pth_root(&2).unwrap(), 2);
        assert_eq!(PrimeField::new(2).unwrap().pth_root(&1).unwrap(), 1);
        assert_eq!(PrimeField::new(3).unwrap().pth_root(&0).unwrap(), 0);
        assert_eq!(Rationals.pth_root(&q("2")), Err(FieldError::UnsupportedField));
    }

    #[test]
    fn pth_root_exhaustive_small_primes() {
        for p in (2..=97u64).filter(|&p| smallest_factor(p) == p) {
            let f = PrimeField::new(p).unwrap();
            for a in 0..p {
                let b = f.pth_root(&a).unwrap();
                assert_eq!(f.pow(&b, p), a, "p={p} a={a}");
            }
        }
    }

    #[test]
    fn field_spec_validation() {
        assert!(FieldSpec::prime(2).is_ok());
        assert!(FieldSpec::prime(2_147_483_647).is_ok());
        assert_eq!(FieldSpec::prime(1), Err(FieldError::NotPrime(1)));
        assert_eq!(FieldSpec::prime(15), Err(FieldError::NotPrime(15)));
        assert_eq!(FieldSpec::prime(9), Err(FieldError::ExtensionField { p: 3, k: 2 }));
        assert_eq!(FieldSpec::prime(1 << 33), Err(FieldError::ModulusTooLarge(1 << 33)));
    }

    fn axioms<F: Field>(f: &F, seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut nonzero = 0;
        while nonzero < 1000 {
            let (a, b, c) = (f.sample(&mut rng), f.sample(&mut rng), f.sample(&mut rng));
            assert_eq!(f.add(&f.add(&a, &b), &c), f.add(&a, &f.add(&b, &c)));
            assert_eq!(f.mul(&f.mul(&a, &b), &c), f.mul(&a, &f.mul(&b, &c)));
            assert_eq!(f.mul(&a, &f.add(&b, &c)), f.add(&f.mul(&a, &b), &f.mul(&a, &c)));
            assert_eq!(f.sub(&f.add(&a, &b), &b), a);
            if !f.is_zero(&a) {
                assert!(f.is_one(&f.mul(&a, &f.inv(&a).unwrap())));
                nonzero += 1;
            }
        }
    }

    #[test]
    fn field_axioms_randomized() {
        axioms(&Rationals, 1);
        axioms(&PrimeField::new(2).unwrap(), 2);
        axioms(&PrimeField::new(5).unwrap(), 3);
        axioms(&PrimeField::new(65_521).unwrap(), 4);
        axioms(&PrimeField::new(4_294_967_291).unwrap(), 5);
    }

    #[test]
    fn row_times_matrix_matches_generic() {
        let f = PrimeField::new(4_294_967_291).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let n = 17;
        let row: Vec<u64> = (0..n).map(|_| f.sample(&mut rng)).collect();
        let m: Vec<u64> = (0..n * n).map(|_| f.sample(&mut rng)).collect();
        let mut fast = vec![0; n];
        f.row_times_matrix(&row, &m, n, &mut fast);
        let slow: Vec<u64> = (0..n)
            .map(|j| (0..n).fold(0, |acc, k| f.add(&acc, &f.mul(&row[k], &m[k * n + j]))))
            .collect();
        assert_eq!(fast, slow);
    }

    #[test]
    fn dynamic_elements_reject_mismatch() {
        let a = FieldElement::parse(FieldSpec::PrimeField(5), "3").unwrap();
        let b = FieldElement::parse(FieldSpec::PrimeField(7), "3").unwrap();
        let c = FieldElement::parse(FieldSpec::Rationals, "3").unwrap();
        assert!(matches!(a.add(&b), Err(FieldError::Mismatch(..))));
        assert!(matches!(a.mul(&c), Err(FieldError::Mismatch(..))));
        let four = FieldElement::parse(FieldSpec::PrimeField(5), "4").unwrap();
        assert_eq!(a.mul(&four).unwrap().to_string(), "2");
        assert_eq!(c.inv().unwrap().to_string(), "1/3");
        assert!(FieldElement::parse(FieldSpec::Rationals, "0").unwrap().inv().is_err());
        assert!(c.pth_root().is_err());
        assert_eq!(a.pth_root().unwrap(), a);
        assert!(a.add(&a.neg()).unwrap().is_zero());
        assert_eq!(a.sub(&four).unwrap().to_string(), "4");
    }
}
