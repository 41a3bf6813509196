//! Quadratic-form inputs: inline JSON, a JSON file, or a named form.
//!
//! Named forms are `U` (hyperbolic plane), `U^k`, `diag:a,b,...` and
//! `sum:<form>+<form>+...`. JSON documents look like
//! `{"n": 2, "gram": [[0, 1], [1, "1/2"]]}`; entries are integers, exact
//! decimals, or `"p/q"` strings.

use std::path::Path;

use ks_core::quadspace::QuadraticSpace;
use ks_core::rational::{parse_q, Q};
use ks_core::{Error, Result};
use serde::Deserialize;
use serde_json::Value;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FormSpec {
    Inline(String),
    File(String),
    Named(String),
}

impl FormSpec {
    pub fn classify(s: &str) -> FormSpec {
        let t = s.trim();
        if t.starts_with('{') {
            FormSpec::Inline(t.to_string())
        } else if is_named(t) {
            FormSpec::Named(t.to_string())
        } else {
            FormSpec::File(t.to_string())
        }
    }

    pub fn to_space(&self) -> Result<QuadraticSpace> {
        match self {
            FormSpec::Inline(json) => parse_gram_json(json),
            FormSpec::File(path) => {
                let text = std::fs::read_to_string(Path::new(path))
                    .map_err(|e| Error::Parse(format!("cannot read form file {path:?}: {e}")))?;
                parse_gram_json(&text)
            }
            FormSpec::Named(name) => parse_named(name),
        }
    }
}

pub fn parse_form(s: &str) -> Result<QuadraticSpace> {
    FormSpec::classify(s).to_space()
}

fn is_named(s: &str) -> bool {
    s == "U" || s.starts_with("U^") || s.starts_with("diag:") || s.starts_with("sum:")
}

fn parse_named(s: &str) -> Result<QuadraticSpace> {
    let s = s.trim();
    if let Some(rest) = s.strip_prefix("sum:") {
        let mut parts = rest.split('+').map(str::trim);
        let first = parts
            .next()
            .filter(|p| !p.is_empty())
            .ok_or_else(|| Error::Parse(format!("empty sum in {s:?}")))?;
        let mut acc = parse_named_or_err(first)?;
        for p in parts {
            acc = acc.direct_sum(&parse_named_or_err(p)?);
        }
        return Ok(acc);
    }
    if let Some(rest) = s.strip_prefix("diag:") {
        let entries: Vec<Q> = rest.split(',').map(parse_q).collect::<Result<_>>()?;
        return QuadraticSpace::diagonal(&entries);
    }
    if s == "U" {
        return Ok(QuadraticSpace::hyperbolic_plane());
    }
    if let Some(k) = s.strip_prefix("U^") {
        let k: usize = k
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad exponent in {s:?}")))?;
        return QuadraticSpace::hyperbolic(k);
    }
    Err(Error::Parse(format!("unknown named form {s:?}")))
}

fn parse_named_or_err(s: &str) -> Result<QuadraticSpace> {
    if is_named(s) {
        parse_named(s)
    } else {
        Err(Error::Parse(format!("{s:?} is not a named form")))
    }
}

#[derive(Deserialize)]
struct GramDoc {
    n: usize,
    gram: Vec<Vec<Value>>,
}

fn entry(v: &Value) -> Result<Q> {
    match v {
        Value::Number(num) => parse_q(&num.to_string()),
        Value::String(s) => parse_q(s),
        other => Err(Error::Parse(format!("gram entry {other} is not a number"))),
    }
}

pub fn parse_gram_json(text: &str) -> Result<QuadraticSpace> {
    let doc: GramDoc = serde_json::from_str(text)
        .map_err(|e| Error::Parse(format!("invalid gram document: {e}")))?;
    if doc.gram.len() != doc.n || doc.gram.iter().any(|r| r.len() != doc.n) {
        return Err(Error::Parse(format!("gram matrix is not {0}x{0}", doc.n)));
    }
    let rows: Vec<Vec<Q>> = doc
        .gram
        .iter()
        .map(|r| r.iter().map(entry).collect::<Result<Vec<Q>>>())
        .collect::<Result<_>>()?;
    QuadraticSpace::from_rows(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use ks_core::quadspace::{discriminant, signature};
    use ks_core::rational::{frac, q};

    #[test]
    fn named_forms() {
        assert_eq!(parse_form("U").unwrap(), QuadraticSpace::hyperbolic_plane());
        assert_eq!(parse_form("U^3").unwrap().dim(), 6);
        let d = parse_form("diag:1,-1/2,0.25").unwrap();
        assert_eq!(
            d,
            QuadraticSpace::diagonal(&[q(1), frac(-1, 2), frac(1, 4)]).unwrap()
        );
        let s = parse_form("sum:U^2+diag:-1,-1").unwrap();
        assert_eq!(s.dim(), 6);
        assert_eq!(signature(&s).unwrap(), (2, 4));
        assert!(parse_form("U^0").is_err());
        assert!(parse_form("diag:1,0").is_err());
        assert!(matches!(parse_form("sum:U+V"), Err(Error::Parse(_))));
    }

    #[test]
    fn json_forms() {
        let s = parse_form(r#"{"n": 2, "gram": [[0, 1], [1, "1/2"]]}"#).unwrap();
        assert_eq!(s.determinant(), q(-1));
        assert_eq!(discriminant(&s).unwrap().to_string(), "-1");
        let s = parse_form(r#"{"n": 1, "gram": [[0.5]]}"#).unwrap();
        assert_eq!(s.determinant(), frac(1, 2));
        assert!(matches!(
            parse_form(r#"{"n": 2, "gram": [[1]]}"#),
            Err(Error::Parse(_))
        ));
        assert!(matches!(
            parse_form(r#"{"n": 1, "gram": [[true]]}"#),
            Err(Error::Parse(_))
        ));
        assert_eq!(
            parse_form(r#"{"n": 2, "gram": [[1, 1], [1, 1]]}"#),
            Err(Error::Degenerate)
        );
        assert!(matches!(
            parse_form("/definitely/not/here.json"),
            Err(Error::Parse(_))
        ));
    }
}
