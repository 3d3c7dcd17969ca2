//! Minimal generators of the first cotangent cohomology of `S/L(2,P)`.
//!
//! Each generator sends `p1*p2` to `prod_{r in D} r1 * prod_{s in U} s2`
//! and every other generator of `L` to zero, where `U` is a minimal upper
//! bound set for the strict ideal below `p` avoiding the filter above `p`,
//! `D` a minimal lower bound set for the strict filter above `p` avoiding
//! the ideal below `p`, and no `r in D` lies below any `s in U`.

use std::collections::BTreeSet;

use crate::poly::{Monomial, VariableId};
use crate::poset::{ElemId, Poset, RootedTree};

/// One map `p1*p2 -> image`. Both sets are antichains listed along the
/// linear extension.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct T1Generator {
    pub source: ElemId,
    pub lower_set: Vec<ElemId>,
    pub upper_set: Vec<ElemId>,
    pub image: Monomial,
}

impl T1Generator {
    fn new(source: ElemId, lower_set: Vec<ElemId>, upper_set: Vec<ElemId>) -> T1Generator {
        let image = Monomial::product(
            lower_set.iter().map(|&r| VariableId::x1(r)).chain(upper_set.iter().map(|&s| VariableId::x2(s))),
        );
        T1Generator { source, lower_set, upper_set, image }
    }

    /// `p1*p2`.
    pub fn source_monomial(&self) -> Monomial {
        Monomial::product([VariableId::x1(self.source), VariableId::x2(self.source)])
    }

    /// The deformation parameter this generator pairs with on a tree:
    /// `u[q,p]` for `U = {q}`, the root parameter for `U` empty.
    pub fn parameter(&self) -> Option<VariableId> {
        match self.upper_set.as_slice() {
            [] => Some(VariableId::u_root(self.source)),
            [q] => Some(VariableId::u(*q, self.source)),
            _ => None,
        }
    }
}

fn antichains(poset: &Poset, pool: &[ElemId]) -> Vec<Vec<ElemId>> {
    fn extend(poset: &Poset, pool: &[ElemId], from: usize, cur: &mut Vec<ElemId>, out: &mut Vec<Vec<ElemId>>) {
        out.push(cur.clone());
        for k in from..pool.len() {
            let x = pool[k];
            if cur.iter().all(|&y| !poset.comparable(x, y)) {
                cur.push(x);
                extend(poset, pool, k + 1, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    extend(poset, pool, 0, &mut Vec::new(), &mut out);
    out
}

fn ordered_pool(poset: &Poset, within: &BTreeSet<ElemId>) -> Vec<ElemId> {
    poset.linear_extension().into_iter().filter(|e| within.contains(e)).collect()
}

fn minimal_covers(poset: &Poset, target: &BTreeSet<ElemId>, within: &BTreeSet<ElemId>, covers: impl Fn(ElemId, ElemId) -> bool) -> Vec<Vec<ElemId>> {
    let candidates: Vec<Vec<ElemId>> = antichains(poset, &ordered_pool(poset, within))
        .into_iter()
        .filter(|set| target.iter().all(|&t| set.iter().any(|&s| covers(t, s))))
        .collect();
    let mut minimal: Vec<Vec<ElemId>> = candidates
        .iter()
        .filter(|set| !candidates.iter().any(|other| other.len() < set.len() && other.iter().all(|x| set.contains(x))))
        .cloned()
        .collect();
    let rank = poset.linear_extension();
    let key = |set: &Vec<ElemId>| set.iter().map(|e| rank.iter().position(|r| r == e)).collect::<Vec<_>>();
    minimal.sort_by_key(key);
    minimal
}

/// Inclusion-minimal `U` inside `within` with every target element below
/// some member of `U`.
pub fn minimal_upper_bound_sets(poset: &Poset, target: &BTreeSet<ElemId>, within: &BTreeSet<ElemId>) -> Vec<Vec<ElemId>> {
    minimal_covers(poset, target, within, |t, s| poset.leq(t, s))
}

/// Inclusion-minimal `D` inside `within` with every target element above
/// some member of `D`.
pub fn minimal_lower_bound_sets(poset: &Poset, target: &BTreeSet<ElemId>, within: &BTreeSet<ElemId>) -> Vec<Vec<ElemId>> {
    minimal_covers(poset, target, within, |t, r| poset.leq(r, t))
}

fn complement(poset: &Poset, set: &BTreeSet<ElemId>) -> BTreeSet<ElemId> {
    poset.elements().filter(|e| !set.contains(e)).collect()
}

/// All generators for an arbitrary finite poset, ordered by source along
/// the linear extension, then by `U`, then by `D`.
pub fn t1_generators(poset: &Poset) -> Vec<T1Generator> {
    let mut out = Vec::new();
    for p in poset.linear_extension() {
        let ups = minimal_upper_bound_sets(poset, &poset.strict_ideal_below(p), &complement(poset, &poset.filter_above(p)));
        let downs = minimal_lower_bound_sets(poset, &poset.strict_filter_above(p), &complement(poset, &poset.ideal_below(p)));
        for u in &ups {
            for d in &downs {
                if d.iter().all(|&r| u.iter().all(|&s| !poset.leq(r, s))) {
                    out.push(T1Generator::new(p, d.clone(), u.clone()));
                }
            }
        }
    }
    out
}

/// The closed form on a rooted tree: `p1*p2 -> q2 * prod b1` over the
/// children `b` of `p`, for each `q` with `meet(q,p) = parent(p)`, and
/// `root1*root2 -> prod b1`. Ordered like [`crate::letterplace::u_variables`].
pub fn t1_generators_tree(tree: &RootedTree) -> Vec<T1Generator> {
    let kids = |p: ElemId| tree.children(p).to_vec();
    std::iter::once(T1Generator::new(tree.root(), kids(tree.root()), Vec::new()))
        .chain(tree.parameter_pairs().into_iter().map(|(q, p)| T1Generator::new(p, kids(p), vec![q])))
        .collect()
}
