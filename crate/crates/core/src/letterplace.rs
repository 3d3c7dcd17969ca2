//! The quadratic letterplace ideal `L(2,P)` and the deformation parameters.

use crate::poly::{Monomial, Polynomial, VariableId};
use crate::poset::{ElemId, Poset, RootedTree};

/// `p1*q2` for one comparable pair `p <= q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LetterplaceGenerator {
    pub lower: ElemId,
    pub upper: ElemId,
    pub monomial: Monomial,
}

impl LetterplaceGenerator {
    pub fn polynomial(&self) -> Polynomial {
        Polynomial::monomial(self.monomial.clone())
    }
}

/// Generators of `L(2,P)` ordered by the linear extension of `p`, then `q`.
pub fn letterplace_generators(poset: &Poset) -> Vec<LetterplaceGenerator> {
    poset
        .comparable_pairs()
        .into_iter()
        .map(|(p, q)| LetterplaceGenerator {
            lower: p,
            upper: q,
            monomial: Monomial::product([VariableId::x1(p), VariableId::x2(q)]),
        })
        .collect()
}

/// `p1, p2` for each element along the linear extension.
pub fn x_variables(poset: &Poset) -> Vec<VariableId> {
    poset.linear_extension().into_iter().flat_map(|p| [VariableId::x1(p), VariableId::x2(p)]).collect()
}

/// The root parameter followed by `u[q,p]` for every `p` above the root and
/// every `q` with `meet(q,p) = parent(p)`, ordered by `p` then `q`.
pub fn u_variables(tree: &RootedTree) -> Vec<VariableId> {
    std::iter::once(VariableId::u_root(tree.root()))
        .chain(tree.parameter_pairs().into_iter().map(|(q, p)| VariableId::u(q, p)))
        .collect()
}

/// The codimension of `L(2,P)` is the number of elements.
pub fn codimension(poset: &Poset) -> usize {
    poset.len()
}
