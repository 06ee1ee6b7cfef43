//! Matrix files.
//!
//! Plain text: a header line `field q dim <n>` or `field fp <p> dim <n>`,
//! followed by `n` rows of `n` whitespace-separated scalars. The JSON form
//! `{"field": "fp", "p": 5, "n": 2, "rows": [[..], [..]]}` is accepted
//! interchangeably; entries may be strings or integers.

use std::any::Any;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{Mat, MatrixError};
use crate::field::{Field, FieldError, FieldSpec, PrimeField, Rationals};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("invalid JSON matrix: {0}")]
    Json(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

fn syntax(line: usize, msg: impl Into<String>) -> FormatError {
    FormatError::Syntax { line, msg: msg.into() }
}

/// A matrix over whichever field its file declares.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AnyMat {
    Rational(Mat<Rationals>),
    Prime(Mat<PrimeField>),
}

impl AnyMat {
    pub fn spec(&self) -> FieldSpec {
        match self {
            AnyMat::Rational(m) => m.field().spec(),
            AnyMat::Prime(m) => m.field().spec(),
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            AnyMat::Rational(m) => m.dim(),
            AnyMat::Prime(m) => m.dim(),
        }
    }

    pub fn parse(s: &str) -> Result<Self, FormatError> {
        if s.trim_start().starts_with('{') {
            parse_json(s)
        } else {
            parse_text(s)
        }
    }

    pub fn to_text(&self) -> String {
        match self {
            AnyMat::Rational(m) => m.to_text(),
            AnyMat::Prime(m) => m.to_text(),
        }
    }

    /// The typed matrix, if it lives over a field of type `F`.
    pub fn downcast<F: Field>(self) -> Option<Mat<F>> {
        let boxed: Box<dyn Any> = match self {
            AnyMat::Rational(m) => Box::new(m),
            AnyMat::Prime(m) => Box::new(m),
        };
        boxed.downcast::<Mat<F>>().ok().map(|m| *m)
    }
}

fn build(spec: FieldSpec, rows: Vec<Vec<String>>) -> Result<AnyMat, FormatError> {
    fn typed<F: Field>(field: F, rows: Vec<Vec<String>>) -> Result<Mat<F>, FormatError> {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|s| field.parse_elem(s)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Mat::from_rows(field, rows)?)
    }
    Ok(match spec {
        FieldSpec::Rationals => AnyMat::Rational(typed(Rationals, rows)?),
        FieldSpec::PrimeField(p) => AnyMat::Prime(typed(PrimeField::new(p)?, rows)?),
    })
}

fn parse_header(line: &str) -> Result<(FieldSpec, usize), FormatError> {
    let tokens: Vec<&str> = line.split_whitespace().collect();
    let bad = || syntax(1, format!("bad header {line:?}"));
    let (spec, rest) = match tokens.as_slice() {
        ["field", "q", rest @ ..] => (FieldSpec::Rationals, rest),
        ["field", "fp", p, rest @ ..] => {
            let p: u64 = p.parse().map_err(|_| bad())?;
            (FieldSpec::prime(p)?, rest)
        }
        _ => return Err(bad()),
    };
    match rest {
        ["dim", n] => Ok((spec, n.parse().map_err(|_| bad())?)),
        _ => Err(bad()),
    }
}

fn parse_text(s: &str) -> Result<AnyMat, FormatError> {
    let mut lines = s.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    let (_, header) = lines.next().ok_or_else(|| syntax(1, "empty matrix file"))?;
    let (spec, n) = parse_header(header)?;
    let mut rows = Vec::with_capacity(n);
    for (idx, line) in lines {
        let row: Vec<String> = line.split_whitespace().map(str::to_string).collect();
        if row.len() != n {
            return Err(syntax(idx + 1, format!("expected {n} entries, found {}", row.len())));
        }
        if rows.len() == n {
            return Err(syntax(idx + 1, format!("more than {n} rows")));
        }
        rows.push(row);
    }
    if rows.len() != n {
        return Err(syntax(rows.len() + 2, format!("expected {n} rows, found {}", rows.len())));
    }
    build(spec, rows)
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum JsonScalar {
    Int(i64),
    Text(String),
}

#[derive(Serialize, Deserialize)]
struct JsonMat {
    field: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    p: Option<u64>,
    n: usize,
    rows: Vec<Vec<JsonScalar>>,
}

fn parse_json(s: &str) -> Result<AnyMat, FormatError> {
    let j: JsonMat = serde_json::from_str(s).map_err(|e| FormatError::Json(e.to_string()))?;
    let spec = match (j.field.as_str(), j.p) {
        ("q", None) => FieldSpec::Rationals,
        ("fp", Some(p)) => FieldSpec::prime(p)?,
        _ => return Err(FormatError::Json(format!("bad field {:?} with p={:?}", j.field, j.p))),
    };
    if j.rows.len() != j.n || j.rows.iter().any(|r| r.len() != j.n) {
        return Err(FormatError::Json(format!("rows do not form a {0}x{0} matrix", j.n)));
    }
    let rows = j
        .rows
        .into_iter()
        .map(|r| {
            r.into_iter()
                .map(|v| match v {
                    JsonScalar::Int(i) => i.to_string(),
                    JsonScalar::Text(t) => t,
                })
                .collect()
        })
        .collect();
    build(spec, rows)
}

fn header(spec: FieldSpec, n: usize) -> String {
    match spec {
        FieldSpec::Rationals => format!("field q dim {n}"),
        FieldSpec::PrimeField(p) => format!("field fp {p} dim {n}"),
    }
}

impl<F: Field> Mat<F> {
    /// Canonical text form, one trailing newline.
    pub fn to_text(&self) -> String {
        let mut out = header(self.field.spec(), self.n);
        out.push('\n');
        for row in self.rows() {
            let cells: Vec<String> = row.iter().map(|v| self.field.format_elem(v)).collect();
            let _ = writeln!(out, "{}", cells.join(" "));
        }
        out
    }

    pub fn to_json(&self) -> String {
        let (field, p) = match self.field.spec() {
            FieldSpec::Rationals => ("q", None),
            FieldSpec::PrimeField(p) => ("fp", Some(p)),
        };
        let j = JsonMat {
            field: field.to_string(),
            p,
            n: self.n,
            rows: self
                .rows()
                .map(|r| r.iter().map(|v| JsonScalar::Text(self.field.format_elem(v))).collect())
                .collect(),
        };
        serde_json::to_string(&j).expect("serializable")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_text() {
        let m = AnyMat::parse("field q dim 2\n0 -1\n1/2 0\n").unwrap();
        let AnyMat::Rational(m) = m else { panic!("wrong field") };
        assert_eq!(*m.get(1, 0), Rationals.parse_elem("1/2").unwrap());

        let m = AnyMat::parse("field fp 5 dim 2\n7 -1\n0 3\n").unwrap();
        assert_eq!(m.to_text(), "field fp 5 dim 2\n2 4\n0 3\n");
    }

    #[test]
    fn parses_json() {
        let m = AnyMat::parse(r#"{"field":"fp","p":5,"n":2,"rows":[[7,"-1"],["0",3]]}"#).unwrap();
        assert_eq!(m, AnyMat::parse("field fp 5 dim 2\n2 4\n0 3\n").unwrap());
        let AnyMat::Prime(inner) = &m else { panic!() };
        assert_eq!(AnyMat::parse(&inner.to_json()).unwrap(), m);
        let q = AnyMat::parse(r#"{"field":"q","n":1,"rows":[["-3/6"]]}"#).unwrap();
        assert_eq!(q.to_text(), "field q dim 1\n-1/2\n");
    }

    #[test]
    fn rejects_bad_files() {
        let cases = [
            "",
            "field q\n1\n",
            "field r dim 1\n1\n",
            "field fp 4 dim 1\n1\n",
            "field fp dim 1\n1\n",
            "field q dim 2\n1 2\n3\n",
            "field q dim 1\n1\n2\n",
            "field q dim 2\n1 2\n",
            "field q dim 1\nx\n",
            r#"{"field":"fp","n":1,"rows":[[1]]}"#,
            r#"{"field":"q","n":2,"rows":[[1]]}"#,
            "{not json",
        ];
        for c in cases {
            assert!(AnyMat::parse(c).is_err(), "{c:?}");
        }
        assert!(matches!(
            AnyMat::parse("field fp 9 dim 1\n1\n"),
            Err(FormatError::Field(FieldError::ExtensionField { .. }))
        ));
    }

    proptest! {
        #[test]
        fn text_roundtrip_rational(n in 1usize..5, seed in prop::collection::vec((-30i64..30, 1i64..7), 16)) {
            let rows = (0..n)
                .map(|i| (0..n).map(|j| {
                    let (a, b) = seed[(i * n + j) % seed.len()];
                    num_rational::BigRational::new(a.into(), b.into())
                }).collect())
                .collect();
            let m = AnyMat::Rational(Mat::from_rows(Rationals, rows).unwrap());
            let text = m.to_text();
            let back = AnyMat::parse(&text).unwrap();
            prop_assert_eq!(back.to_text(), text);
            prop_assert_eq!(back, m);
        }

        #[test]
        fn text_roundtrip_prime(n in 1usize..6, vals in prop::collection::vec(0u64..13, 36)) {
            let f = PrimeField::new(13).unwrap();
            let rows = (0..n).map(|i| vals[i * n..(i + 1) * n].to_vec()).collect();
            let m = AnyMat::Prime(Mat::from_rows(f, rows).unwrap());
            prop_assert_eq!(AnyMat::parse(&m.to_text()).unwrap(), m);
        }
    }
}
