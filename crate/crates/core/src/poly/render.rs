//! Text and JSON forms of variables, monomials and polynomials.
//!
//! Variables print as `a1`, `a2`, `u[a,b]`, and `u[0,a]` for the root
//! parameter. Terms are joined with ` + ` / ` - `, factors with `*`, powers
//! as `^k`; coefficients are integers or `n/d`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::monomial::{Monomial, VariableId};
use super::order::MonomialOrder;
use super::polynomial::{Coeff, Polynomial};
use crate::error::{Error, Result};
use crate::poset::{ElemId, Poset, RootedTree};

/// Lookup between element ids and names.
pub trait ElementNames {
    fn elem_name(&self, e: ElemId) -> &str;
    fn elem_id(&self, name: &str) -> Option<ElemId>;
}

impl ElementNames for Poset {
    fn elem_name(&self, e: ElemId) -> &str {
        self.name(e)
    }
    fn elem_id(&self, name: &str) -> Option<ElemId> {
        self.id(name).ok()
    }
}

impl ElementNames for RootedTree {
    fn elem_name(&self, e: ElemId) -> &str {
        self.name(e)
    }
    fn elem_id(&self, name: &str) -> Option<ElemId> {
        self.id(name).ok()
    }
}

pub fn render_variable(v: VariableId, names: &dyn ElementNames) -> String {
    match v {
        VariableId::X { place, elem } => format!("{}{}", names.elem_name(elem), place),
        VariableId::U { upper: None, lower } => format!("u[0,{}]", names.elem_name(lower)),
        VariableId::U { upper: Some(q), lower } => format!("u[{},{}]", names.elem_name(q), names.elem_name(lower)),
    }
}

fn factor_rank(v: VariableId, order: Option<&MonomialOrder>) -> (usize, VariableId) {
    (order.and_then(|o| o.position(v)).unwrap_or(usize::MAX), v)
}

/// Factors joined by `*`, in order position when an order is given. The
/// empty monomial renders as `1`.
pub fn render_monomial(m: &Monomial, names: &dyn ElementNames, order: Option<&MonomialOrder>) -> String {
    if m.is_one() {
        return "1".into();
    }
    let mut factors: Vec<(VariableId, u32)> = m.factors().to_vec();
    factors.sort_by_key(|f| factor_rank(f.0, order));
    factors
        .iter()
        .map(|&(v, e)| {
            let s = render_variable(v, names);
            if e == 1 { s } else { format!("{s}^{e}") }
        })
        .collect::<Vec<_>>()
        .join("*")
}

pub fn render_coeff(c: &Coeff) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

fn ordered_terms<'a>(f: &'a Polynomial, order: Option<&MonomialOrder>) -> Vec<(&'a Monomial, &'a Coeff)> {
    match order {
        Some(o) if o.covers(f) => o.sorted_terms(f).expect("order covers every variable"),
        _ => f.terms().collect::<Vec<_>>().into_iter().rev().collect(),
    }
}

/// Canonical text form, terms in descending order.
pub fn render_polynomial(f: &Polynomial, names: &dyn ElementNames, order: Option<&MonomialOrder>) -> String {
    if f.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (m, c)) in ordered_terms(f, order).into_iter().enumerate() {
        let neg = c.is_negative();
        match (i, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        let abs = c.abs();
        if m.is_one() {
            out.push_str(&render_coeff(&abs));
        } else if abs.is_one() {
            out.push_str(&render_monomial(m, names, order));
        } else {
            out.push_str(&render_coeff(&abs));
            out.push('*');
            out.push_str(&render_monomial(m, names, order));
        }
    }
    out
}

/// One term of the JSON form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonTerm {
    pub coeff: String,
    pub monomial: std::collections::BTreeMap<String, u32>,
}

pub fn polynomial_to_json(f: &Polynomial, names: &dyn ElementNames, order: Option<&MonomialOrder>) -> Vec<JsonTerm> {
    ordered_terms(f, order)
        .into_iter()
        .map(|(m, c)| JsonTerm {
            coeff: format!("{}/{}", c.numer(), c.denom()),
            monomial: m.factors().iter().map(|&(v, e)| (render_variable(v, names), e)).collect(),
        })
        .collect()
}

pub fn polynomial_from_json(terms: &[JsonTerm], names: &dyn ElementNames) -> Result<Polynomial> {
    let mut out = Polynomial::zero();
    for t in terms {
        let c = parse_coeff(&t.coeff)?;
        let mut factors = Vec::new();
        for (v, &e) in &t.monomial {
            factors.push((parse_variable(v, names)?, e));
        }
        out.add_term(c, Monomial::from_factors(factors));
    }
    Ok(out)
}

fn parse_err(message: String) -> Error {
    Error::Parse { line: 0, message }
}

fn parse_coeff(s: &str) -> Result<Coeff> {
    let bad = || parse_err(format!("bad coefficient `{s}`"));
    let int = |t: &str| t.trim().parse::<BigInt>().map_err(|_| bad());
    match s.split_once('/') {
        Some((n, d)) => {
            let d = int(d)?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Coeff::new(int(n)?, d))
        }
        None => Ok(Coeff::from_integer(int(s)?)),
    }
}

/// Parses `a1`, `a2`, `u[a,b]` or `u[0,a]`.
pub fn parse_variable(s: &str, names: &dyn ElementNames) -> Result<VariableId> {
    let lookup = |n: &str| names.elem_id(n).ok_or_else(|| Error::UnknownElement(n.to_string()));
    if let Some(inner) = s.strip_prefix("u[").and_then(|r| r.strip_suffix(']')) {
        let (q, p) = inner.split_once(',').ok_or_else(|| parse_err(format!("bad variable `{s}`")))?;
        let lower = lookup(p.trim())?;
        return Ok(match q.trim() {
            "0" => VariableId::u_root(lower),
            q => VariableId::u(lookup(q)?, lower),
        });
    }
    let place = match s.as_bytes().last() {
        Some(b'1') => 1,
        Some(b'2') => 2,
        _ => return Err(parse_err(format!("bad variable `{s}`"))),
    };
    Ok(VariableId::X { place, elem: lookup(&s[..s.len() - 1])? })
}

/// Parses the text form produced by [`render_polynomial`]. Accepts any
/// sum of signed products of coefficients and variables.
pub fn parse_polynomial(s: &str, names: &dyn ElementNames) -> Result<Polynomial> {
    let s = s.trim();
    if s.is_empty() {
        return Err(parse_err("empty polynomial".into()));
    }
    let mut out = Polynomial::zero();
    let mut sign: Option<Coeff> = None;
    let mut current = String::new();
    let mut depth = 0usize;
    let mut terms: Vec<(Coeff, String)> = Vec::new();
    for ch in s.chars() {
        match ch {
            '[' => {
                depth += 1;
                current.push(ch);
            }
            ']' => {
                depth = depth.saturating_sub(1);
                current.push(ch);
            }
            '+' | '-' if depth == 0 => {
                if current.trim().is_empty() {
                    if sign.is_some() {
                        return Err(parse_err(format!("doubled sign in `{s}`")));
                    }
                } else {
                    terms.push((sign.take().unwrap_or_else(Coeff::one), std::mem::take(&mut current)));
                }
                current.clear();
                sign = Some(if ch == '-' { -Coeff::one() } else { Coeff::one() });
            }
            _ => current.push(ch),
        }
    }
    if current.trim().is_empty() {
        return Err(parse_err(format!("trailing sign in `{s}`")));
    }
    terms.push((sign.unwrap_or_else(Coeff::one), current));
    for (sign, body) in terms {
        let mut c = sign;
        let mut factors = Vec::new();
        for factor in body.split('*') {
            let factor = factor.trim();
            if factor.is_empty() {
                return Err(parse_err(format!("empty factor in `{body}`")));
            }
            if factor.starts_with(|ch: char| ch.is_ascii_digit()) {
                c *= parse_coeff(factor)?;
                continue;
            }
            let (base, exp) = match factor.rsplit_once('^') {
                Some((b, e)) => (b, e.trim().parse::<u32>().map_err(|_| parse_err(format!("bad exponent in `{factor}`")))?),
                None => (factor, 1),
            };
            factors.push((parse_variable(base.trim(), names)?, exp));
        }
        out.add_term(c, Monomial::from_factors(factors));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::polynomial::coeff;

    fn star() -> RootedTree {
        Poset::parse("a < b\na < c").unwrap().as_rooted_tree().unwrap()
    }

    #[test]
    fn render_and_parse_round_trip() {
        let t = star();
        let [a, b, c] = ["a", "b", "c"].map(|n| t.id(n).unwrap());
        let f = Polynomial::from_terms([
            (coeff(1), Monomial::product([VariableId::x1(a), VariableId::x2(a)])),
            (coeff(-1), Monomial::product([VariableId::u_root(a), VariableId::x1(b), VariableId::x1(c)])),
            (coeff(3), Monomial::from_factors([(VariableId::u(c, b), 2)])),
        ]);
        let text = render_polynomial(&f, &t, None);
        assert_eq!(parse_polynomial(&text, &t).unwrap(), f);
        let json = polynomial_to_json(&f, &t, None);
        assert_eq!(polynomial_from_json(&json, &t).unwrap(), f);
        assert!(json.iter().any(|j| j.coeff == "-1/1" && j.monomial.contains_key("u[0,a]")));
    }

    #[test]
    fn parse_forms() {
        let t = star();
        let p = parse_polynomial("-a1*a2 + 3/2*u[0,a] - 2 + b1^2", &t).unwrap();
        assert_eq!(p.len(), 4);
        assert_eq!(render_polynomial(&Polynomial::zero(), &t, None), "0");
        assert!(parse_polynomial("a1 +", &t).is_err());
        assert!(parse_polynomial("z1", &t).is_err());
        assert!(parse_polynomial("a3", &t).is_err());
        assert!(parse_polynomial("a1**a2", &t).is_err());
        assert!(parse_polynomial("1/0*a1", &t).is_err());
    }
}
