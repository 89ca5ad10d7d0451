//! Facet-list text format and the `key=value` assertions format.
//!
//! One facet per line, whitespace-separated vertex labels. `#` starts a
//! comment; blank lines are skipped.

use std::collections::HashSet;
use std::fmt::Write as _;

use crate::complex::SimplicialComplex;
use crate::error::{ComplexError, Error, Result};

pub fn parse_facets(text: &str) -> Result<SimplicialComplex> {
    let mut facets: Vec<Vec<&str>> = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let labels: Vec<&str> = line.split_whitespace().collect();
        let mut seen = HashSet::new();
        if let Some(dup) = labels.iter().find(|l| !seen.insert(**l)) {
            return Err(Error::Parse { line: n + 1, message: format!("label {dup:?} repeated in facet") });
        }
        facets.push(labels);
    }
    SimplicialComplex::from_facets(facets).map_err(|e| match e {
        ComplexError::EmptyComplex => Error::Parse { line: 0, message: "no facets".into() },
        other => other.into(),
    })
}

/// Writes the facets, one per line, in label form.
pub fn write_facets(k: &SimplicialComplex, header: Option<&str>) -> String {
    let mut out = String::new();
    if let Some(h) = header {
        for line in h.lines() {
            let _ = writeln!(out, "# {line}");
        }
    }
    for f in k.labeled_facets() {
        let _ = writeln!(out, "{}", f.join(" "));
    }
    out
}

/// π₁ status supplied by the user.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Pi1Assertion {
    NotFree,
    Free,
    Trivial,
}

/// Hypotheses the toolkit cannot always certify on its own.
#[derive(Clone, Debug, Default, PartialEq, Eq, serde::Serialize)]
pub struct Assertions {
    pub pi1: Option<Pi1Assertion>,
    pub simply_connected: Option<bool>,
}

pub fn parse_assertions(text: &str) -> Result<Assertions> {
    let mut a = Assertions::default();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |message: String| Error::Parse { line: n + 1, message };
        let (key, value) = line.split_once('=').ok_or_else(|| err(format!("expected key=value, got {line:?}")))?;
        match (key.trim(), value.trim()) {
            ("pi1", "not-free") => a.pi1 = Some(Pi1Assertion::NotFree),
            ("pi1", "free") => a.pi1 = Some(Pi1Assertion::Free),
            ("pi1", "trivial") => a.pi1 = Some(Pi1Assertion::Trivial),
            ("simply-connected", "true") => a.simply_connected = Some(true),
            ("simply-connected", "false") => a.simply_connected = Some(false),
            (k, v) => return Err(err(format!("unrecognized assertion {k}={v}"))),
        }
    }
    Ok(a)
}
