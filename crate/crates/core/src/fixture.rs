//! Reading polynomial lists and comparing them as sets.
//!
//! A list file holds one polynomial per line; blank lines and lines starting
//! with `#` are skipped. Map files hold lines `p1*p2 -> monomial`.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::poly::{parse_polynomial, ElementNames, Monomial, Polynomial};

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn at_line(line: usize, e: Error) -> Error {
    match e {
        Error::Parse { message, .. } => Error::Parse { line, message },
        other => Error::Parse { line, message: other.to_string() },
    }
}

pub fn parse_polynomial_list(text: &str, names: &dyn ElementNames) -> Result<Vec<Polynomial>> {
    content_lines(text).map(|(n, l)| parse_polynomial(l, names).map_err(|e| at_line(n, e))).collect()
}

fn single_monomial(s: &str, names: &dyn ElementNames, line: usize) -> Result<Monomial> {
    let p = parse_polynomial(s, names).map_err(|e| at_line(line, e))?;
    match p.terms().collect::<Vec<_>>().as_slice() {
        [(m, c)] if **c == crate::poly::coeff(1) => Ok((*m).clone()),
        _ => Err(Error::Parse { line, message: format!("expected a monomial, got `{s}`") }),
    }
}

/// Pairs `(source, image)` from lines `p1*p2 -> m`; `1` is the empty
/// image.
pub fn parse_map_list(text: &str, names: &dyn ElementNames) -> Result<Vec<(Monomial, Monomial)>> {
    content_lines(text)
        .map(|(n, l)| {
            let (src, img) = l.split_once("->").ok_or_else(|| Error::Parse { line: n, message: "expected `->`".into() })?;
            Ok((single_monomial(src.trim(), names, n)?, single_monomial(img.trim(), names, n)?))
        })
        .collect()
}

/// Result of comparing a computed set with an expected one.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SetDiff {
    /// Expected but not computed.
    pub missing: Vec<Polynomial>,
    /// Computed but not expected.
    pub extra: Vec<Polynomial>,
    /// `(expected, computed)` pairs that agree once parameters are set to
    /// zero but differ otherwise.
    pub mismatched: Vec<(Polynomial, Polynomial)>,
}

impl SetDiff {
    pub fn is_empty(&self) -> bool {
        self.missing.is_empty() && self.extra.is_empty() && self.mismatched.is_empty()
    }

    pub fn len(&self) -> usize {
        self.missing.len() + self.extra.len() + self.mismatched.len()
    }
}

pub fn compare_sets(computed: &[Polynomial], expected: &[Polynomial]) -> SetDiff {
    let c: BTreeSet<&Polynomial> = computed.iter().collect();
    let e: BTreeSet<&Polynomial> = expected.iter().collect();
    let mut missing: Vec<Polynomial> = e.difference(&c).map(|p| (*p).clone()).collect();
    let mut extra: Vec<Polynomial> = c.difference(&e).map(|p| (*p).clone()).collect();
    let mut mismatched = Vec::new();
    missing.retain(|m| {
        let key = m.specialize_u_to_zero();
        match extra.iter().position(|x| x.specialize_u_to_zero() == key) {
            Some(i) => {
                mismatched.push((m.clone(), extra.remove(i)));
                false
            }
            None => true,
        }
    });
    SetDiff { missing, extra, mismatched }
}
