//! Jordan-Chevalley decomposition `A = D + N` by Newton iteration.
//!
//! With `g` square-free, `f | g^m`, `f(A) = 0` and `1 = gtilde*g' + gtilde_prime*g`,
//! the sequence
//!
//! ```text
//! A_0 = A,    A_{k+1} = A_k - g(A_k) * gtilde(A_k)
//! ```
//!
//! satisfies `g(A_k) = 0` as soon as `2^k >= m`. The limit `D` is a polynomial
//! in `A`, annihilated by the square-free `g` (hence semisimple), and `A - D`
//! is nilpotent. No eigenvalue is ever computed.
//!
//! Two execution modes give the same result: [`IterationMode::Matrix`] runs the
//! recursion on `n x n` matrices; [`IterationMode::Quotient`] runs it on
//! residues in `K[X]/(f)` and evaluates the final residue at `A` once.

mod sidecar;
mod verify;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::field::Field;
use crate::matrix::{Mat, MatrixError};
use crate::poly::{poly_from_roots, Poly, PolyError, SquareFreeCert};

pub use sidecar::Sidecar;
pub use verify::{verify, verify_parts, VerificationReport};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChevalleyError {
    #[error("the supplied polynomial does not annihilate the matrix")]
    NotAnnihilating,
    #[error("the annihilating polynomial must be non-constant")]
    ConstantAnnihilator,
    #[error("no fixed point after k0 = {k0} steps")]
    NoConvergence { k0: u32 },
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub enum IterationMode {
    /// Iterate on matrices, exactly as the recursion is written.
    Matrix,
    /// Iterate on residues mod `f`, then evaluate at `A` once.
    #[default]
    Quotient,
}

impl fmt::Display for IterationMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            IterationMode::Matrix => "matrix",
            IterationMode::Quotient => "quotient",
        })
    }
}

impl FromStr for IterationMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "matrix" => Ok(IterationMode::Matrix),
            "quotient" => Ok(IterationMode::Quotient),
            other => Err(format!("unknown iteration mode {other:?}")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition<F: Field> {
    pub semisimple: Mat<F>,
    pub nilpotent: Mat<F>,
    pub k_used: u32,
    pub k0: u32,
    pub cert: SquareFreeCert<F>,
    /// `D = p_d(A)`; only recorded in quotient mode.
    pub p_d: Option<Poly<F>>,
    pub f_used: Poly<F>,
    pub mode: IterationMode,
}

/// One step of the iteration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceStep<F: Field> {
    pub k: u32,
    /// `g(A_k) = 0` (matrix mode) or `g(a_k) = 0 mod f` (quotient mode).
    pub annihilated: bool,
    /// `a_k` in quotient mode.
    pub residue: Option<Poly<F>>,
}

fn check_annihilator<F: Field>(a: &Mat<F>, f: &Poly<F>) -> Result<(), ChevalleyError> {
    if f.is_constant() {
        return Err(ChevalleyError::ConstantAnnihilator);
    }
    if !a.eval_poly(f)?.is_zero() {
        return Err(ChevalleyError::NotAnnihilating);
    }
    Ok(())
}

fn annihilator_and_cert<F: Field>(
    a: &Mat<F>,
    f: Option<&Poly<F>>,
) -> Result<(Poly<F>, SquareFreeCert<F>), ChevalleyError> {
    let f = match f {
        Some(f) => {
            check_annihilator(a, f)?;
            f.clone()
        }
        None => a.minimal_polynomial(),
    };
    if f.is_constant() {
        return Err(ChevalleyError::ConstantAnnihilator);
    }
    let cert = f.squarefree_part()?;
    Ok((f, cert))
}

/// Decomposes `a`. Without `f` the minimal polynomial is used; a supplied `f`
/// is checked to annihilate `a`.
pub fn jordan_chevalley<F: Field>(
    a: &Mat<F>,
    f: Option<&Poly<F>>,
    mode: IterationMode,
) -> Result<Decomposition<F>, ChevalleyError> {
    let (f, cert) = annihilator_and_cert(a, f)?;
    decompose(a, f, cert, mode)
}

/// Decomposes `a` from known eigenvalues `l_i` with multiplicity bounds `n_i`:
/// `g = prod (X - l_i)`, `m = max n_i`, and `prod (X - l_i)^{n_i}` must annihilate `a`.
pub fn jordan_chevalley_with_roots<F: Field>(
    a: &Mat<F>,
    roots: &[(F::Elem, u32)],
    mode: IterationMode,
) -> Result<Decomposition<F>, ChevalleyError> {
    let field = a.field().clone();
    let f = poly_from_roots(field.clone(), roots)?;
    check_annihilator(a, &f)?;
    let cert = SquareFreeCert::from_roots(field, roots)?;
    decompose(a, f, cert, mode)
}

/// Per-step record of the iteration for `a` and annihilator `f`.
pub fn iteration_trace<F: Field>(
    a: &Mat<F>,
    f: &Poly<F>,
    mode: IterationMode,
) -> Result<Vec<TraceStep<F>>, ChevalleyError> {
    let (f, cert) = annihilator_and_cert(a, Some(f))?;
    let mut trace = Vec::new();
    iterate(a, &f, &cert, mode, Some(&mut trace))?;
    Ok(trace)
}

fn decompose<F: Field>(
    a: &Mat<F>,
    f: Poly<F>,
    cert: SquareFreeCert<F>,
    mode: IterationMode,
) -> Result<Decomposition<F>, ChevalleyError> {
    let (d, k_used, p_d) = iterate(a, &f, &cert, mode, None)?;
    let n = a.sub(&d)?;
    Ok(Decomposition { semisimple: d, nilpotent: n, k_used, k0: cert.k0(), cert, p_d, f_used: f, mode })
}

type Outcome<F> = (Mat<F>, u32, Option<Poly<F>>);

fn iterate<F: Field>(
    a: &Mat<F>,
    f: &Poly<F>,
    cert: &SquareFreeCert<F>,
    mode: IterationMode,
    mut trace: Option<&mut Vec<TraceStep<F>>>,
) -> Result<Outcome<F>, ChevalleyError> {
    let field = a.field().clone();
    let k0 = cert.k0();
    let mut record = |k: u32, annihilated: bool, residue: Option<&Poly<F>>| {
        if let Some(t) = trace.as_deref_mut() {
            t.push(TraceStep { k, annihilated, residue: residue.cloned() });
        }
    };

    // m = 1: g itself annihilates A, so A is already semisimple.
    if cert.m == 1 {
        let x = Poly::x(field).rem(f)?;
        let residue = (mode == IterationMode::Quotient).then_some(x);
        record(0, true, residue.as_ref());
        return Ok((a.clone(), 0, residue));
    }

    match mode {
        IterationMode::Matrix => {
            let mut ak = a.clone();
            for k in 0..=k0 {
                let gk = ak.eval_poly(&cert.g)?;
                let done = gk.is_zero();
                record(k, done, None);
                if done {
                    return Ok((ak, k, None));
                }
                if k == k0 {
                    break;
                }
                let step = gk.mul(&ak.eval_poly(&cert.gtilde)?)?;
                ak = ak.sub(&step)?;
            }
        }
        IterationMode::Quotient => {
            let mut ak = Poly::x(field).rem(f)?;
            for k in 0..=k0 {
                let gk = cert.g.compose_mod(&ak, f)?;
                let done = gk.is_zero();
                record(k, done, Some(&ak));
                if done {
                    let d = a.eval_poly(&ak)?;
                    return Ok((d, k, Some(ak)));
                }
                if k == k0 {
                    break;
                }
                let step = gk.mul_mod(&cert.gtilde.compose_mod(&ak, f)?, f)?;
                ak = &ak - &step;
            }
        }
    }
    Err(ChevalleyError::NoConvergence { k0 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    fn q(rows: &[&[i64]]) -> Mat<Rationals> {
        Mat::from_i64_rows(Rationals, rows).unwrap()
    }

    fn both_modes<F: Field>(a: &Mat<F>, f: Option<&Poly<F>>) -> Decomposition<F> {
        let dq = jordan_chevalley(a, f, IterationMode::Quotient).unwrap();
        let dm = jordan_chevalley(a, f, IterationMode::Matrix).unwrap();
        assert_eq!(dq.semisimple, dm.semisimple);
        assert_eq!(dq.nilpotent, dm.nilpotent);
        assert!(verify(a, &dq).unwrap().passed());
        assert!(verify(a, &dm).unwrap().passed());
        dq
    }

    #[test]
    fn rotation_is_semisimple() {
        let a = q(&[&[0, -1], &[1, 0]]);
        let f = Poly::from_i64s(Rationals, &[1, 0, 1]);
        let d = both_modes(&a, Some(&f));
        assert_eq!(d.semisimple, a);
        assert!(d.nilpotent.is_zero());
        assert_eq!((d.k_used, d.k0, d.cert.m), (0, 0, 1));
    }

    #[test]
    fn two_jordan_blocks() {
        let a = q(&[&[0, 1, 0, 0], &[0, 0, 0, 0], &[0, 0, 1, 1], &[0, 0, 0, 1]]);
        let f = Poly::from_i64s(Rationals, &[0, 0, 1, -2, 1]);
        let d = both_modes(&a, Some(&f));
        assert_eq!(d.cert.g, Poly::from_i64s(Rationals, &[0, -1, 1]));
        assert_eq!(d.cert.gtilde, Poly::from_i64s(Rationals, &[-1, 2]));
        assert_eq!((d.cert.m, d.k0, d.k_used), (2, 1, 1));
        let diag = [0, 0, 1, 1].map(|v| Rationals.from_i64(v));
        assert_eq!(d.semisimple, Mat::diagonal(Rationals, &diag));
        assert_eq!(d.nilpotent, a.sub(&d.semisimple).unwrap());
        assert!(d.nilpotent.pow(2).is_zero());
    }

    #[test]
    fn nilpotent_input_has_zero_semisimple_part() {
        for n in 1..7 {
            let mut a = Mat::zeros(Rationals, n);
            for i in 0..n {
                for j in i + 1..n {
                    a.set(i, j, Rationals.from_i64((i * 3 + j) as i64 - 4));
                }
            }
            let d = both_modes(&a, None);
            assert!(d.semisimple.is_zero());
            assert_eq!(d.nilpotent, a);
        }
    }

    #[test]
    fn diagonal_with_repeats_is_its_own_semisimple_part() {
        let f5 = PrimeField::new(5).unwrap();
        let a = Mat::diagonal(f5, &[1, 1, 3, 0, 3, 1]);
        let d = both_modes(&a, None);
        assert_eq!(d.semisimple, a);
        assert!(d.nilpotent.is_zero());
        // A redundant annihilator gives the same answer.
        let f = &a.minimal_polynomial() * &Poly::from_i64s(f5, &[-1, 1]).pow(3);
        assert_eq!(both_modes(&a, Some(&f)).semisimple, a);
    }

    #[test]
    fn traces() {
        let a = q(&[&[0, -1], &[1, 0]]);
        let t = iteration_trace(&a, &Poly::from_i64s(Rationals, &[1, 0, 1]), IterationMode::Matrix).unwrap();
        assert_eq!(t.len(), 1);
        assert!(t[0].annihilated);

        let a = q(&[&[0, 1, 0, 0], &[0, 0, 0, 0], &[0, 0, 1, 1], &[0, 0, 0, 1]]);
        let f = Poly::from_i64s(Rationals, &[0, 0, 1, -2, 1]);
        for mode in [IterationMode::Matrix, IterationMode::Quotient] {
            let t = iteration_trace(&a, &f, mode).unwrap();
            assert_eq!(t.iter().map(|s| s.annihilated).collect::<Vec<_>>(), [false, true]);
            assert_eq!(t[0].residue.is_some(), mode == IterationMode::Quotient);
        }

        let mut j5 = Mat::zeros(Rationals, 5);
        for i in 0..4 {
            j5.set(i, i + 1, Rationals.one());
        }
        let x5 = Poly::monomial(Rationals, Rationals.one(), 5);
        for mode in [IterationMode::Matrix, IterationMode::Quotient] {
            let t = iteration_trace(&j5, &x5, mode).unwrap();
            let first = t.iter().position(|s| s.annihilated).unwrap();
            assert!(first <= 3);
            assert_eq!(first, t.len() - 1);
        }
    }

    #[test]
    fn rejects_bad_annihilators() {
        let a = q(&[&[1, 1], &[0, 1]]);
        let wrong = Poly::from_i64s(Rationals, &[-1, 1]);
        assert_eq!(
            jordan_chevalley(&a, Some(&wrong), IterationMode::Quotient),
            Err(ChevalleyError::NotAnnihilating)
        );
        assert_eq!(
            jordan_chevalley(&a, Some(&Poly::one(Rationals)), IterationMode::Quotient),
            Err(ChevalleyError::ConstantAnnihilator)
        );
        assert_eq!(
            jordan_chevalley(&a, Some(&Poly::zero(Rationals)), IterationMode::Matrix),
            Err(ChevalleyError::ConstantAnnihilator)
        );
    }

    #[test]
    fn roots_path() {
        let a = q(&[&[0, 1, 0, 0], &[0, 0, 0, 0], &[0, 0, 1, 1], &[0, 0, 0, 1]]);
        let roots = [(Rationals.from_i64(0), 2), (Rationals.from_i64(1), 2)];
        let d = jordan_chevalley_with_roots(&a, &roots, IterationMode::Quotient).unwrap();
        assert_eq!(d.cert.m, 2);
        assert_eq!(d.semisimple, jordan_chevalley(&a, None, IterationMode::Matrix).unwrap().semisimple);
        let short = [(Rationals.from_i64(0), 1), (Rationals.from_i64(1), 1)];
        assert_eq!(
            jordan_chevalley_with_roots(&a, &short, IterationMode::Quotient),
            Err(ChevalleyError::NotAnnihilating)
        );
    }
}
