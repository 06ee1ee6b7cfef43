use std::fmt;

use super::{ChevalleyError, Decomposition};
use crate::field::Field;
use crate::matrix::{Mat, MatrixError};
use crate::poly::Poly;

/// Outcome of re-checking a claimed decomposition. Failed checks are data,
/// not errors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerificationReport {
    /// `D + N = A`.
    pub sum: bool,
    /// `D N = N D`.
    pub commute: bool,
    /// `g` is square-free and `g(D) = 0`.
    pub semisimple: bool,
    /// `N^min(m, n) = 0`.
    pub nilpotent: bool,
    /// `p_D(A) = D`, when a `p_D` was supplied.
    pub in_algebra: Option<bool>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.sum && self.commute && self.semisimple && self.nilpotent && self.in_algebra.unwrap_or(true)
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let word = |ok: bool| if ok { "ok" } else { "FAILED" };
        writeln!(f, "D + N = A: {}", word(self.sum))?;
        writeln!(f, "D N = N D: {}", word(self.commute))?;
        writeln!(f, "g square-free, g(D) = 0: {}", word(self.semisimple))?;
        writeln!(f, "N nilpotent: {}", word(self.nilpotent))?;
        match self.in_algebra {
            Some(ok) => writeln!(f, "p_D(A) = D: {}", word(ok)),
            None => writeln!(f, "p_D(A) = D: skipped"),
        }
    }
}

pub fn verify<F: Field>(a: &Mat<F>, dec: &Decomposition<F>) -> Result<VerificationReport, ChevalleyError> {
    verify_parts(a, &dec.semisimple, &dec.nilpotent, &dec.cert.g, dec.cert.m, dec.p_d.as_ref())
}

/// Checks a claimed `A = D + N` with square-free annihilator `g` of `D` and
/// nilpotency exponent bound `m`.
pub fn verify_parts<F: Field>(
    a: &Mat<F>,
    d: &Mat<F>,
    n: &Mat<F>,
    g: &Poly<F>,
    m: u64,
    p_d: Option<&Poly<F>>,
) -> Result<VerificationReport, ChevalleyError> {
    for other in [d, n] {
        if other.field() != a.field() {
            return Err(MatrixError::FieldMismatch(a.field().spec(), other.field().spec()).into());
        }
        if other.dim() != a.dim() {
            return Err(MatrixError::DimensionMismatch(a.dim(), other.dim()).into());
        }
    }
    for poly in std::iter::once(g).chain(p_d) {
        if poly.field() != a.field() {
            return Err(MatrixError::FieldMismatch(a.field().spec(), poly.field().spec()).into());
        }
    }
    let semisimple = !g.is_zero() && g.is_squarefree()? && d.eval_poly(g)?.is_zero();
    let in_algebra = match p_d {
        Some(p) => Some(a.eval_poly(p)? == *d),
        None => None,
    };
    Ok(VerificationReport {
        sum: d.add(n)? == *a,
        commute: d.commutes_with(n)?,
        semisimple,
        nilpotent: n.is_nilpotent(m),
        in_algebra,
    })
}
