use super::{Poly, PolyError};
use crate::field::Field;

/// Bezout certificate `d = r*f + s*g` with `d` the monic gcd.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtGcd<F: Field> {
    pub d: Poly<F>,
    pub r: Poly<F>,
    pub s: Poly<F>,
}

impl<F: Field> ExtGcd<F> {
    /// Checks the certificate against its inputs.
    pub fn holds_for(&self, f: &Poly<F>, g: &Poly<F>) -> bool {
        self.d.is_monic()
            && &(&self.r * f) + &(&self.s * g) == self.d
            && self.d.divides(f)
            && self.d.divides(g)
    }
}

impl<F: Field> Poly<F> {
    /// Monic greatest common divisor. `gcd(f, 0) = monic(f)`.
    pub fn gcd(&self, other: &Self) -> Result<Self, PolyError> {
        if self.is_zero() && other.is_zero() {
            return Err(PolyError::BothZero);
        }
        if !self.is_zero() && !other.is_zero() {
            if let Some(c) = self.field().poly_gcd(self.coeffs(), other.coeffs()) {
                return Ok(Poly::new(self.field().clone(), c));
            }
        }
        // Monic remainders keep rational coefficients from swelling.
        let (mut a, mut b) = (self.monic(), other.monic());
        while !b.is_zero() {
            let r = a.rem(&b)?.monic();
            a = b;
            b = r;
        }
        Ok(a)
    }

    /// Extended Euclidean algorithm.
    pub fn ext_gcd(&self, other: &Self) -> Result<ExtGcd<F>, PolyError> {
        if self.is_zero() && other.is_zero() {
            return Err(PolyError::BothZero);
        }
        let field = self.field().clone();
        if let Some((d, r, s)) = field.poly_ext_gcd(self.coeffs(), other.coeffs()) {
            let mk = |c| Poly::new(field.clone(), c);
            return Ok(ExtGcd { d: mk(d), r: mk(r), s: mk(s) });
        }
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Poly::one(field.clone()), Poly::zero(field.clone()));
        let (mut t0, mut t1) = (Poly::zero(field.clone()), Poly::one(field.clone()));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1)?;
            let s = &s0 - &(&q * &s1);
            let t = &t0 - &(&q * &t1);
            (r0, r1) = (r1, r);
            (s0, s1) = (s1, s);
            (t0, t1) = (t1, t);
        }
        let lc_inv = field.inv(r0.leading_coeff().expect("nonzero gcd"))?;
        Ok(ExtGcd {
            d: r0.scale(&lc_inv),
            r: s0.scale(&lc_inv),
            s: t0.scale(&lc_inv),
        })
    }

    /// Monic least common multiple `f*g / gcd(f, g)`.
    pub fn lcm(&self, other: &Self) -> Result<Self, PolyError> {
        if self.is_zero() || other.is_zero() {
            return Err(PolyError::ZeroInput);
        }
        let d = self.gcd(other)?;
        let q = self.exact_div(&d)?.expect("gcd divides its argument");
        Ok((&q * other).monic())
    }
}
