//! Textual polynomial syntax.
//!
//! Two input forms are accepted: a comma-separated coefficient list, low
//! degree first (`1,0,1`), or a symbolic sum such as `X^2 - 3/2*X + 1`.
//! Output is always symbolic, highest degree first.

use std::fmt;

use super::{Poly, PolyError};
use crate::field::Field;

impl<F: Field> Poly<F> {
    pub fn parse(field: F, s: &str) -> Result<Self, PolyError> {
        let s = s.trim();
        if s.contains(',') {
            let coeffs = s
                .split(',')
                .map(|c| field.parse_elem(c.trim()))
                .collect::<Result<Vec<_>, _>>()
                .map_err(|_| PolyError::Parse(s.to_string()))?;
            return Ok(Poly::new(field, coeffs));
        }
        parse_symbolic(field, s).ok_or_else(|| PolyError::Parse(s.to_string()))
    }
}

fn parse_symbolic<F: Field>(field: F, s: &str) -> Option<Poly<F>> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return None;
    }
    let mut coeffs: Vec<F::Elem> = Vec::new();
    let mut rest = compact.as_str();
    let mut first = true;
    while !rest.is_empty() {
        let negative = match rest.as_bytes()[0] {
            b'+' => {
                rest = &rest[1..];
                false
            }
            b'-' => {
                rest = &rest[1..];
                true
            }
            _ if first => false,
            _ => return None,
        };
        first = false;
        if rest.is_empty() || rest.starts_with(['+', '-']) {
            return None;
        }
        let end = rest[1..].find(['+', '-']).map_or(rest.len(), |i| i + 1);
        let (term, tail) = rest.split_at(end);
        // A '-' directly after '^' would be a negative exponent, which is invalid.
        if term.ends_with('^') {
            return None;
        }
        rest = tail;
        let (coeff, exp) = parse_term(&field, term)?;
        let coeff = if negative { field.neg(&coeff) } else { coeff };
        if coeffs.len() <= exp {
            coeffs.resize(exp + 1, field.zero());
        }
        coeffs[exp] = field.add(&coeffs[exp], &coeff);
    }
    Some(Poly::new(field, coeffs))
}

fn parse_term<F: Field>(field: &F, term: &str) -> Option<(F::Elem, usize)> {
    let Some(xpos) = term.find(['X', 'x']) else {
        return field.parse_elem(term).ok().map(|c| (c, 0));
    };
    let (coeff, var) = term.split_at(xpos);
    let coeff = coeff.strip_suffix('*').unwrap_or(coeff);
    let c = if coeff.is_empty() {
        field.one()
    } else {
        if coeff.starts_with(['+', '-']) {
            return None;
        }
        field.parse_elem(coeff).ok()?
    };
    let exp = match &var[1..] {
        "" => 1,
        e => {
            let digits = e.strip_prefix('^')?;
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return None;
            }
            digits.parse().ok()?
        }
    };
    Some((c, exp))
}

impl<F: Field> fmt::Display for Poly<F> {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let field = self.field();
        if self.is_zero() {
            return write!(out, "0");
        }
        let mut first = true;
        for (exp, c) in self.coeffs().iter().enumerate().rev() {
            if field.is_zero(c) {
                continue;
            }
            let negative = field.is_negative(c);
            let magnitude = if negative { field.neg(c) } else { c.clone() };
            match (first, negative) {
                (true, true) => write!(out, "-")?,
                (true, false) => {}
                (false, true) => write!(out, " - ")?,
                (false, false) => write!(out, " + ")?,
            }
            first = false;
            let unit = field.is_one(&magnitude);
            match exp {
                0 => write!(out, "{}", field.format_elem(&magnitude))?,
                _ => {
                    if !unit {
                        write!(out, "{}*", field.format_elem(&magnitude))?;
                    }
                    if exp == 1 {
                        write!(out, "X")?;
                    } else {
                        write!(out, "X^{exp}")?;
                    }
                }
            }
        }
        Ok(())
    }
}
