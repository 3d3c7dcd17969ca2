use std::cmp::Ordering;

use crate::poset::ElemId;

/// A variable of `B(2,P)`: either `x_{i,p}` (written `p_i`) or a deformation
/// parameter `u_{q,p}`, with `upper = None` standing for the root parameter
/// `u_{∅,ρ}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VariableId {
    X { place: u8, elem: ElemId },
    U { upper: Option<ElemId>, lower: ElemId },
}

impl VariableId {
    pub fn x1(elem: ElemId) -> VariableId {
        VariableId::X { place: 1, elem }
    }

    pub fn x2(elem: ElemId) -> VariableId {
        VariableId::X { place: 2, elem }
    }

    pub fn u(upper: ElemId, lower: ElemId) -> VariableId {
        VariableId::U { upper: Some(upper), lower }
    }

    pub fn u_root(root: ElemId) -> VariableId {
        VariableId::U { upper: None, lower: root }
    }

    pub fn is_u(&self) -> bool {
        matches!(self, VariableId::U { .. })
    }

    pub fn is_x(&self) -> bool {
        matches!(self, VariableId::X { .. })
    }
}

/// A power product, stored as `(variable, exponent)` pairs sorted by
/// variable with no zero exponents.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(Vec<(VariableId, u32)>);

impl Monomial {
    pub fn one() -> Monomial {
        Monomial(Vec::new())
    }

    pub fn var(v: VariableId) -> Monomial {
        Monomial(vec![(v, 1)])
    }

    /// Builds a monomial from arbitrary factors, merging repeats and dropping
    /// zero exponents.
    pub fn from_factors<I: IntoIterator<Item = (VariableId, u32)>>(factors: I) -> Monomial {
        let mut v: Vec<(VariableId, u32)> = factors.into_iter().filter(|f| f.1 > 0).collect();
        v.sort_by_key(|f| f.0);
        let mut out: Vec<(VariableId, u32)> = Vec::with_capacity(v.len());
        for (var, e) in v {
            match out.last_mut() {
                Some(last) if last.0 == var => last.1 += e,
                _ => out.push((var, e)),
            }
        }
        Monomial(out)
    }

    pub fn product<I: IntoIterator<Item = VariableId>>(vars: I) -> Monomial {
        Monomial::from_factors(vars.into_iter().map(|v| (v, 1)))
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn factors(&self) -> &[(VariableId, u32)] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|f| f.1).sum()
    }

    /// Total exponent carried by `u`-variables.
    pub fn u_degree(&self) -> u32 {
        self.0.iter().filter(|f| f.0.is_u()).map(|f| f.1).sum()
    }

    pub fn exponent(&self, v: VariableId) -> u32 {
        self.0.binary_search_by_key(&v, |f| f.0).map(|i| self.0[i].1).unwrap_or(0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().all(|&(v, e)| other.exponent(v) >= e)
    }

    /// `other / self` if `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        Some(Monomial(
            other
                .0
                .iter()
                .filter_map(|&(v, e)| {
                    let r = e - self.exponent(v);
                    (r > 0).then_some((v, r))
                })
                .collect(),
        ))
    }

    pub fn pow(&self, k: u32) -> Monomial {
        if k == 0 {
            return Monomial::one();
        }
        Monomial(self.0.iter().map(|&(v, e)| (v, e * k)).collect())
    }

    pub fn variables(&self) -> impl Iterator<Item = VariableId> + '_ {
        self.0.iter().map(|f| f.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(i: u16) -> ElemId {
        ElemId(i)
    }

    #[test]
    fn merge_and_divide() {
        let a1 = VariableId::x1(e(0));
        let a2 = VariableId::x2(e(0));
        let u = VariableId::u(e(0), e(1));
        let m = Monomial::from_factors([(a2, 1), (a1, 2), (a2, 0), (u, 1), (a1, 1)]);
        assert_eq!(m.factors(), &[(a1, 3), (a2, 1), (u, 1)]);
        assert_eq!(m.degree(), 5);
        assert_eq!(m.u_degree(), 1);
        let d = Monomial::product([a1, u]);
        assert!(d.divides(&m));
        assert_eq!(d.quotient_of(&m).unwrap(), Monomial::from_factors([(a1, 2), (a2, 1)]));
        assert!(!m.divides(&d));
        assert_eq!(d.mul(&d.quotient_of(&m).unwrap()), m);
        assert_eq!(Monomial::var(a1).pow(0), Monomial::one());
    }
}
