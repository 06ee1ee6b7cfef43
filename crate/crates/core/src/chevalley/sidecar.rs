//! Text record stored next to the `D` and `N` matrix files.
//!
//! ```text
//! g = X^2 - X
//! m = 2
//! k_used = 1
//! k0 = 1
//! p_D = -2*X^3 + 3*X^2
//! f = X^4 - 2*X^3 + X^2
//! mode = quotient
//! ```
//!
//! `p_D` is `none` for matrix-mode runs. `f` and `mode` are optional on input.

use std::fmt::Write as _;

use super::{Decomposition, IterationMode};
use crate::field::Field;
use crate::matrix::FormatError;
use crate::poly::Poly;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sidecar<F: Field> {
    pub g: Poly<F>,
    pub m: u64,
    pub k_used: u32,
    pub k0: u32,
    pub p_d: Option<Poly<F>>,
    pub f: Option<Poly<F>>,
    pub mode: Option<IterationMode>,
}

impl<F: Field> From<&Decomposition<F>> for Sidecar<F> {
    fn from(d: &Decomposition<F>) -> Self {
        Sidecar {
            g: d.cert.g.clone(),
            m: d.cert.m,
            k_used: d.k_used,
            k0: d.k0,
            p_d: d.p_d.clone(),
            f: Some(d.f_used.clone()),
            mode: Some(d.mode),
        }
    }
}

impl<F: Field> Sidecar<F> {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "g = {}", self.g);
        let _ = writeln!(out, "m = {}", self.m);
        let _ = writeln!(out, "k_used = {}", self.k_used);
        let _ = writeln!(out, "k0 = {}", self.k0);
        match &self.p_d {
            Some(p) => writeln!(out, "p_D = {p}"),
            None => writeln!(out, "p_D = none"),
        }
        .expect("writing to a String");
        if let Some(f) = &self.f {
            let _ = writeln!(out, "f = {f}");
        }
        if let Some(mode) = self.mode {
            let _ = writeln!(out, "mode = {mode}");
        }
        out
    }

    pub fn parse(field: F, text: &str) -> Result<Self, FormatError> {
        let err = |line: usize, msg: String| FormatError::Syntax { line, msg };
        let (mut g, mut m, mut k_used, mut k0, mut p_d, mut f, mut mode) = (None, None, None, None, None, None, None);
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            if raw.trim().is_empty() {
                continue;
            }
            let (key, value) = raw
                .split_once('=')
                .map(|(k, v)| (k.trim(), v.trim()))
                .ok_or_else(|| err(line, format!("expected key = value, got {raw:?}")))?;
            let poly = |v: &str| Poly::parse(field.clone(), v).map_err(|e| err(line, e.to_string()));
            let int = |v: &str| v.parse::<u64>().map_err(|_| err(line, format!("bad integer {v:?}")));
            match key {
                "g" => g = Some(poly(value)?),
                "m" => m = Some(int(value)?),
                "k_used" => k_used = Some(int(value)? as u32),
                "k0" => k0 = Some(int(value)? as u32),
                "p_D" if value == "none" => p_d = Some(None),
                "p_D" => p_d = Some(Some(poly(value)?)),
                "f" => f = Some(poly(value)?),
                "mode" => mode = Some(value.parse().map_err(|e: String| err(line, e))?),
                other => return Err(err(line, format!("unknown key {other:?}"))),
            }
        }
        let missing = |k: &str| err(0, format!("missing key {k:?}"));
        Ok(Sidecar {
            g: g.ok_or_else(|| missing("g"))?,
            m: m.ok_or_else(|| missing("m"))?,
            k_used: k_used.ok_or_else(|| missing("k_used"))?,
            k0: k0.ok_or_else(|| missing("k0"))?,
            p_d: p_d.ok_or_else(|| missing("p_D"))?,
            f,
            mode,
        })
    }
}
