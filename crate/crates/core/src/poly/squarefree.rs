//! Square-free parts without factoring.
//!
//! For a non-constant `f` over a perfect field we produce a square-free `g`
//! with `g | f` and `f | g^m`, using only the formal derivative, gcds and
//! (in characteristic `p`) coefficientwise p-th roots. Alongside `g` we keep
//! the Bezout pair `1 = gtilde * g' + gtilde_prime * g` that drives the
//! decomposition iteration.

use std::collections::HashSet;

use super::{Poly, PolyError};
use crate::field::{Field, FieldError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquareFreeCert<F: Field> {
    /// Monic and square-free.
    pub g: Poly<F>,
    /// Some exponent with `f | g^m`; not necessarily the least one.
    pub m: u64,
    pub gtilde: Poly<F>,
    pub gtilde_prime: Poly<F>,
}

impl<F: Field> SquareFreeCert<F> {
    /// Completes `(g, m)` with Bezout cofactors for `(g', g)`.
    pub fn new(g: Poly<F>, m: u64) -> Result<Self, PolyError> {
        if g.is_constant() {
            return Err(PolyError::ConstantInput);
        }
        let g = g.monic();
        let e = g.derivative().ext_gcd(&g)?;
        if !e.d.is_one() {
            return Err(PolyError::NotSquareFree);
        }
        Ok(SquareFreeCert { g, m: m.max(1), gtilde: e.r, gtilde_prime: e.s })
    }

    /// `g = (X - l_1)...(X - l_r)` and `m = max n_i` for distinct roots `l_i`
    /// of multiplicity `n_i`. Needs no perfectness of the field.
    pub fn from_roots(field: F, roots: &[(F::Elem, u32)]) -> Result<Self, PolyError> {
        validate_roots(&field, roots)?;
        let g = roots
            .iter()
            .fold(Poly::one(field.clone()), |acc, (l, _)| &acc * &Poly::linear(field.clone(), l));
        let m = roots.iter().map(|(_, n)| *n as u64).max().unwrap_or(1);
        Self::new(g, m)
    }

    /// The `k0` of the iteration: least `k` with `2^k >= m`.
    pub fn k0(&self) -> u32 {
        ceil_log2(self.m)
    }

    /// Checks every claimed relation by polynomial division against the source `f`.
    pub fn certifies(&self, f: &Poly<F>) -> bool {
        let bezout = &(&self.gtilde * &self.g.derivative()) + &(&self.gtilde_prime * &self.g);
        self.g.is_monic()
            && self.g.divides(f)
            && f.divides(&self.g.pow(self.m))
            && self.g.is_squarefree().unwrap_or(false)
            && bezout.is_one()
    }
}

pub(crate) fn ceil_log2(m: u64) -> u32 {
    if m <= 1 {
        0
    } else {
        64 - (m - 1).leading_zeros()
    }
}

fn validate_roots<F: Field>(field: &F, roots: &[(F::Elem, u32)]) -> Result<(), PolyError> {
    if roots.is_empty() {
        return Err(PolyError::NoRoots);
    }
    let mut seen = HashSet::new();
    for (l, n) in roots {
        if *n == 0 {
            return Err(PolyError::ZeroMultiplicity);
        }
        if !seen.insert(l) {
            return Err(PolyError::DuplicateRoot(field.format_elem(l)));
        }
    }
    Ok(())
}

/// `(X - l_1)^{n_1} ... (X - l_r)^{n_r}`.
pub fn poly_from_roots<F: Field>(field: F, roots: &[(F::Elem, u32)]) -> Result<Poly<F>, PolyError> {
    validate_roots(&field, roots)?;
    Ok(roots.iter().fold(Poly::one(field.clone()), |acc, (l, n)| {
        &acc * &Poly::linear(field.clone(), l).pow(*n as u64)
    }))
}

impl<F: Field> Poly<F> {
    /// `gcd(f, f') = 1`. Nonzero constants are square-free.
    pub fn is_squarefree(&self) -> Result<bool, PolyError> {
        if self.is_zero() {
            return Err(PolyError::ZeroInput);
        }
        Ok(self.gcd(&self.derivative())?.is_one())
    }

    /// Square-free part by recursion on the degree.
    ///
    /// If `f' != 0`, split `f = f1 * f2` with `f1 = gcd(f, f')`, recurse on both
    /// and combine with an lcm (`m = m1 + m2`). If `f' = 0` then `f = h^p` with
    /// `h` taken from p-th roots of the coefficients, and `m = m' * p`.
    pub fn squarefree_part(&self) -> Result<SquareFreeCert<F>, PolyError> {
        if self.is_constant() {
            return Err(PolyError::ConstantInput);
        }
        let (g, m) = radical(self)?;
        SquareFreeCert::new(g, m)
    }

    /// `f / gcd(f, f')`, valid in characteristic zero only.
    pub fn squarefree_shortcut_char0(&self) -> Result<Self, PolyError> {
        if self.field().characteristic() != 0 {
            return Err(PolyError::WrongCharacteristic);
        }
        if self.is_constant() {
            return Err(PolyError::ConstantInput);
        }
        let d = self.gcd(&self.derivative())?;
        Ok(self.exact_div(&d)?.expect("gcd divides f").monic())
    }
}

fn radical<F: Field>(f: &Poly<F>) -> Result<(Poly<F>, u64), PolyError> {
    if f.degree() == Some(1) {
        return Ok((f.monic(), 1));
    }
    let df = f.derivative();
    if !df.is_zero() {
        let f1 = f.gcd(&df)?;
        if f1.is_one() {
            return Ok((f.monic(), 1));
        }
        let f2 = f.exact_div(&f1)?.expect("gcd divides f");
        let (g1, m1) = radical(&f1)?;
        let (g2, m2) = radical(&f2)?;
        return Ok((g1.lcm(&g2)?, m1 + m2));
    }
    let field = f.field();
    let p = field.characteristic();
    if p == 0 {
        return Err(FieldError::UnsupportedField.into());
    }
    let h_coeffs = f
        .coeffs()
        .iter()
        .step_by(p as usize)
        .map(|a| field.pth_root(a))
        .collect::<Result<Vec<_>, _>>()?;
    let h = Poly::new(field.clone(), h_coeffs);
    let (g, m) = radical(&h)?;
    Ok((g, m * p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn q(c: &[i64]) -> Poly<Rationals> {
        Poly::from_i64s(Rationals, c)
    }

    #[test]
    fn is_squarefree_examples() {
        assert!(q(&[1, 0, 1]).is_squarefree().unwrap());
        assert!(!q(&[1, -2, 1]).is_squarefree().unwrap());
        let f2 = PrimeField::new(2).unwrap();
        assert!(!Poly::from_i64s(f2, &[1, 0, 1]).is_squarefree().unwrap());
        assert!(q(&[3]).is_squarefree().unwrap());
        assert_eq!(q(&[]).is_squarefree(), Err(PolyError::ZeroInput));
    }

    #[test]
    fn squarefree_part_examples() {
        let c = q(&[1, 0, 1]).squarefree_part().unwrap();
        assert_eq!((c.g.clone(), c.m), (q(&[1, 0, 1]), 1));

        for p in [2u64, 3, 5, 7] {
            let fp = PrimeField::new(p).unwrap();
            let xp = Poly::monomial(fp, 1, p as usize);
            let c = xp.squarefree_part().unwrap();
            assert_eq!(c.g, Poly::x(fp));
            assert_eq!(c.m, p);
            assert!(c.certifies(&xp));
        }

        let f = q(&[-2, 5, -4, 1]);
        let c = f.squarefree_part().unwrap();
        assert_eq!(c.g, q(&[2, -3, 1]));
        assert!(c.m >= 2);
        assert!(c.g.divides(&f) && f.divides(&c.g.pow(2)));
        assert!(c.certifies(&f));

        assert_eq!(q(&[4]).squarefree_part(), Err(PolyError::ConstantInput));
    }

    #[test]
    fn squarefree_part_of_p_power_with_linear_term() {
        // (X^2 + X + 1)^2 * X over F_2 mixes both branches.
        let f2 = PrimeField::new(2).unwrap();
        let base = Poly::from_i64s(f2, &[1, 1, 1]);
        let f = &base.pow(4) * &Poly::x(f2).pow(3);
        let c = f.squarefree_part().unwrap();
        assert_eq!(c.g, &base * &Poly::x(f2));
        assert!(c.certifies(&f));
    }

    #[test]
    fn shortcut_examples() {
        assert_eq!(q(&[-2, 5, -4, 1]).squarefree_shortcut_char0().unwrap(), q(&[2, -3, 1]));
        assert_eq!(q(&[2, 0, 4]).squarefree_shortcut_char0().unwrap(), q(&[2, 0, 4]).monic());
        assert_eq!(q(&[0, 0, 0, 1]).squarefree_shortcut_char0().unwrap(), q(&[0, 1]));
        let f5 = PrimeField::new(5).unwrap();
        assert_eq!(
            Poly::from_i64s(f5, &[1, 1]).squarefree_shortcut_char0(),
            Err(PolyError::WrongCharacteristic)
        );
    }

    #[test]
    fn from_roots_examples() {
        let r = |v: i64| Rationals.from_i64(v);
        let c = SquareFreeCert::from_roots(Rationals, &[(r(0), 2), (r(1), 2)]).unwrap();
        assert_eq!((c.g.clone(), c.m), (q(&[0, -1, 1]), 2));

        let c = SquareFreeCert::from_roots(Rationals, &[(r(7), 1)]).unwrap();
        assert_eq!((c.g.clone(), c.m), (q(&[-7, 1]), 1));

        let f5 = PrimeField::new(5).unwrap();
        let c = SquareFreeCert::from_roots(f5, &[(0, 1), (1, 3), (2, 2)]).unwrap();
        assert_eq!(c.g, Poly::from_i64s(f5, &[0, 2, 2, 1]));
        assert_eq!(c.m, 3);
        let f = poly_from_roots(f5, &[(0, 1), (1, 3), (2, 2)]).unwrap();
        assert!(c.certifies(&f));

        assert!(matches!(
            SquareFreeCert::from_roots(f5, &[(1, 1), (6 % 5, 2)]),
            Err(PolyError::DuplicateRoot(_))
        ));
        assert_eq!(SquareFreeCert::from_roots(f5, &[(1, 0)]), Err(PolyError::ZeroMultiplicity));
    }

    #[test]
    fn k0_bound() {
        let g = q(&[0, 1]);
        let k0 = |m| SquareFreeCert::new(g.clone(), m).unwrap().k0();
        assert_eq!([k0(1), k0(2), k0(3), k0(4), k0(5), k0(8), k0(9)], [0, 1, 2, 2, 3, 3, 4]);
    }

    fn random_squarefree<F: Field>(field: F, rng: &mut ChaCha8Rng) -> Poly<F> {
        loop {
            let f = Poly::random(field.clone(), rng.gen_range(1..6), rng);
            if f.is_squarefree().unwrap() {
                return f;
            }
        }
    }

    fn closure_products<F: Field>(field: F, seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut coprime_pairs = 0;
        while coprime_pairs < 200 {
            let f = random_squarefree(field.clone(), &mut rng);
            let g = random_squarefree(field.clone(), &mut rng);
            assert!(f.lcm(&g).unwrap().is_squarefree().unwrap());
            if f.gcd(&g).unwrap().is_one() {
                assert!((&f * &g).is_squarefree().unwrap());
                coprime_pairs += 1;
            }
            // Divisors of square-free polynomials are square-free.
            let d = f.gcd(&(&g * &f.derivative())).unwrap();
            assert!(d.is_squarefree().unwrap());
        }
    }

    #[test]
    fn squarefree_closure_properties() {
        closure_products(Rationals, 31);
        closure_products(PrimeField::new(2).unwrap(), 32);
        closure_products(PrimeField::new(5).unwrap(), 33);
    }
}
