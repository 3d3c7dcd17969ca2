//! The fine grading by the free abelian group on the symbols `p1, p2`,
//! positive coarsenings of it, and truncated Hilbert functions.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::ops::{Add, AddAssign, Neg, Sub};

use crate::error::{Error, Result};
use crate::letterplace::{u_variables, x_variables};
use crate::poly::{buchberger, DenseMonomial, ElementNames, GroebnerBudget, Monomial, MonomialOrder, Polynomial, VariableId};
use crate::poset::{ElemId, RootedTree};

/// Integer vector over the symbols `p1, p2`; slot `2*i + place - 1` holds
/// the coefficient of element `i` in that place.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiDegree(Vec<i64>);

impl MultiDegree {
    pub fn zero(elements: usize) -> MultiDegree {
        MultiDegree(vec![0; 2 * elements])
    }

    pub fn unit(elements: usize, place: u8, p: ElemId) -> MultiDegree {
        let mut d = MultiDegree::zero(elements);
        d.0[slot(place, p)] = 1;
        d
    }

    pub fn get(&self, place: u8, p: ElemId) -> i64 {
        self.0[slot(place, p)]
    }

    pub fn components(&self) -> &[i64] {
        &self.0
    }

    pub fn scale(&self, k: i64) -> MultiDegree {
        MultiDegree(self.0.iter().map(|x| x * k).collect())
    }

    /// Pairing with a weight on each symbol.
    pub fn dot(&self, weights: &[i64]) -> i64 {
        self.0.iter().zip(weights).map(|(a, b)| a * b).sum()
    }

    /// Text like `b1 + b2 - c1`; `0` for the identity.
    pub fn render(&self, names: &dyn ElementNames) -> String {
        let mut out = String::new();
        for (k, &c) in self.0.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let sym = format!("{}{}", names.elem_name(ElemId((k / 2) as u16)), k % 2 + 1);
            let sign = if c < 0 { "-" } else { "+" };
            if out.is_empty() {
                if c < 0 {
                    out.push('-');
                }
            } else {
                let _ = write!(out, " {sign} ");
            }
            if c.abs() != 1 {
                let _ = write!(out, "{}*", c.abs());
            }
            out.push_str(&sym);
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

fn slot(place: u8, p: ElemId) -> usize {
    2 * p.index() + place as usize - 1
}

impl Add<&MultiDegree> for &MultiDegree {
    type Output = MultiDegree;
    fn add(self, rhs: &MultiDegree) -> MultiDegree {
        MultiDegree(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub<&MultiDegree> for &MultiDegree {
    type Output = MultiDegree;
    fn sub(self, rhs: &MultiDegree) -> MultiDegree {
        MultiDegree(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Add for MultiDegree {
    type Output = MultiDegree;
    fn add(self, rhs: MultiDegree) -> MultiDegree {
        &self + &rhs
    }
}

impl Sub for MultiDegree {
    type Output = MultiDegree;
    fn sub(self, rhs: MultiDegree) -> MultiDegree {
        &self - &rhs
    }
}

impl AddAssign<&MultiDegree> for MultiDegree {
    fn add_assign(&mut self, rhs: &MultiDegree) {
        for (a, b) in self.0.iter_mut().zip(&rhs.0) {
            *a += b;
        }
    }
}

impl Neg for MultiDegree {
    type Output = MultiDegree;
    fn neg(self) -> MultiDegree {
        self.scale(-1)
    }
}

/// `p2 - sum of b1` over the children `b` of `p`.
pub fn hat_degree(tree: &RootedTree, p: ElemId) -> MultiDegree {
    let n = tree.len();
    let mut d = MultiDegree::unit(n, 2, p);
    for &b in tree.children(p) {
        d = &d - &MultiDegree::unit(n, 1, b);
    }
    d
}

/// `x_{i,p} -> p_i`, `u[q,p] -> p1 - q2 + p^`, `u[0,root] -> root1 + root^`.
pub fn variable_degree(tree: &RootedTree, v: VariableId) -> Result<MultiDegree> {
    let n = tree.len();
    let in_range = |e: ElemId| e.index() < n;
    match v {
        VariableId::X { place: place @ (1 | 2), elem } if in_range(elem) => Ok(MultiDegree::unit(n, place, elem)),
        VariableId::U { upper: None, lower } if lower == tree.root() => {
            Ok(&MultiDegree::unit(n, 1, lower) + &hat_degree(tree, lower))
        }
        VariableId::U { upper: Some(q), lower: p }
            if in_range(q) && in_range(p) && tree.parent(p).is_some_and(|a| tree.meet(q, p) == a) =>
        {
            Ok(&(&MultiDegree::unit(n, 1, p) - &MultiDegree::unit(n, 2, q)) + &hat_degree(tree, p))
        }
        _ => Err(Error::UnknownVariable(format!("{v:?}"))),
    }
}

pub fn monomial_degree(tree: &RootedTree, m: &Monomial) -> Result<MultiDegree> {
    let mut d = MultiDegree::zero(tree.len());
    for &(v, e) in m.factors() {
        d += &variable_degree(tree, v)?.scale(e as i64);
    }
    Ok(d)
}

/// Outcome of a homogeneity test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Homogeneity {
    Zero,
    Homogeneous(MultiDegree),
    /// Two monomials of different degrees.
    NotHomogeneous(Monomial, Monomial),
}

impl Homogeneity {
    pub fn degree(&self) -> Option<&MultiDegree> {
        match self {
            Homogeneity::Homogeneous(d) => Some(d),
            _ => None,
        }
    }
}

pub fn homogeneous_degree(tree: &RootedTree, f: &Polynomial) -> Result<Homogeneity> {
    let mut first: Option<(&Monomial, MultiDegree)> = None;
    for m in f.monomials() {
        let d = monomial_degree(tree, m)?;
        match &first {
            None => first = Some((m, d)),
            Some((m0, d0)) if *d0 != d => return Ok(Homogeneity::NotHomogeneous((*m0).clone(), m.clone())),
            Some(_) => {}
        }
    }
    Ok(first.map_or(Homogeneity::Zero, |(_, d)| Homogeneity::Homogeneous(d)))
}

/// Positive integer weights on all variables, induced by a homomorphism
/// from the multigrading to the integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightMap {
    symbols: Vec<i64>,
    weights: BTreeMap<VariableId, u64>,
}

impl WeightMap {
    /// The value on the symbol `p_place`.
    pub fn symbol(&self, place: u8, p: ElemId) -> i64 {
        self.symbols[slot(place, p)]
    }

    pub fn weight(&self, v: VariableId) -> Option<u64> {
        self.weights.get(&v).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (VariableId, u64)> + '_ {
        self.weights.iter().map(|(v, w)| (*v, *w))
    }
}

/// `d(p2) = 1` and `d(p1) = 1 + sum of d(b1)` over children, which gives
/// every `u[q,p]` weight 1 and the root parameter weight 2.
pub fn positivity_witness(tree: &RootedTree) -> WeightMap {
    let n = tree.len();
    let mut symbols = vec![0i64; 2 * n];
    for &p in tree.linear_extension().iter().rev() {
        symbols[slot(2, p)] = 1;
        symbols[slot(1, p)] = 1 + tree.children(p).iter().map(|&b| symbols[slot(1, b)]).sum::<i64>();
    }
    let mut weights = BTreeMap::new();
    for v in x_variables(tree.poset()).into_iter().chain(u_variables(tree)) {
        let w = variable_degree(tree, v).expect("variable of the tree").dot(&symbols);
        assert!(w > 0, "witness weight must be positive");
        weights.insert(v, w as u64);
    }
    WeightMap { symbols, weights }
}

/// Weighted order with the witness weights on the x-variables (linear
/// extension, place 1 before place 2) followed by the parameters.
pub fn default_order(tree: &RootedTree) -> MonomialOrder {
    let w = positivity_witness(tree);
    let vars: Vec<VariableId> = x_variables(tree.poset()).into_iter().chain(u_variables(tree)).collect();
    let weights = vars.iter().map(|&v| w.weight(v).expect("weighted")).collect();
    MonomialOrder::new(vars, weights).expect("positive distinct weights")
}

/// Dimensions of the quotient by the ideal of `gens` in weighted degrees
/// `0..=max_degree`, counted as standard monomials of a Gröbner basis.
pub fn truncated_hilbert(gens: &[Polynomial], order: &MonomialOrder, max_degree: u64, budget: GroebnerBudget) -> Result<Vec<u64>> {
    let gb = buchberger(gens, order, budget)?;
    Ok(count_standard_monomials(&gb.dense_leads(), order.weights(), max_degree))
}

/// Monomials of each weighted degree up to `max_degree` not divisible by
/// any of `leads`.
pub fn count_standard_monomials(leads: &[DenseMonomial], weights: &[u64], max_degree: u64) -> Vec<u64> {
    let mut counts = vec![0u64; max_degree as usize + 1];
    let mut exps = vec![0u32; weights.len()];
    fn walk(k: usize, deg: u64, exps: &mut Vec<u32>, leads: &[DenseMonomial], weights: &[u64], max: u64, counts: &mut [u64]) {
        if leads.iter().any(|l| l.exps.iter().zip(exps.iter()).all(|(a, b)| a <= b)) {
            return;
        }
        if k == weights.len() {
            counts[deg as usize] += 1;
            return;
        }
        let mut d = deg;
        loop {
            walk(k + 1, d, exps, leads, weights, max, counts);
            d += weights[k];
            if d > max {
                break;
            }
            exps[k] += 1;
            if leads.iter().any(|l| l.exps.iter().zip(exps.iter()).all(|(a, b)| a <= b)) {
                break;
            }
        }
        exps[k] = 0;
    }
    walk(0, 0, &mut exps, leads, weights, max_degree, &mut counts);
    counts
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::deformation::DeformationContext;
    use crate::poly::parse_polynomial;
    use crate::poset::{rooted_trees, Poset};

    fn tree(dsl: &str) -> RootedTree {
        Poset::parse(dsl).unwrap().as_rooted_tree().unwrap()
    }

    fn deg(t: &RootedTree, s: &str) -> String {
        match homogeneous_degree(t, &parse_polynomial(s, t).unwrap()).unwrap() {
            Homogeneity::Homogeneous(d) => d.render(t),
            other => format!("{other:?}"),
        }
    }

    #[test]
    fn hats_and_variable_degrees() {
        let chain = tree("a < b\nb < c");
        let b = chain.id("b").unwrap();
        assert_eq!(hat_degree(&chain, b).render(&chain), "b2 - c1");
        assert_eq!(hat_degree(&chain, chain.id("c").unwrap()).render(&chain), "c2");
        assert_eq!(variable_degree(&chain, VariableId::u(chain.id("a").unwrap(), b)).unwrap().render(&chain), "-a2 + b1 + b2 - c1");
        let star = tree("a < b\na < c");
        assert_eq!(hat_degree(&star, star.root()).render(&star), "a2 - b1 - c1");
        let single = tree("elem a");
        assert_eq!(variable_degree(&single, VariableId::u_root(single.root())).unwrap().render(&single), "a1 + a2");
        assert!(variable_degree(&star, VariableId::u(star.id("b").unwrap(), star.root())).is_err());
        assert!(variable_degree(&star, VariableId::u_root(star.id("b").unwrap())).is_err());
    }

    #[test]
    fn homogeneity_examples() {
        let chain = tree("a < b\nb < c");
        assert_eq!(deg(&chain, "b1*b2 - a2*u[a,b]*c1"), "b1 + b2");
        let single = tree("elem a");
        let f = parse_polynomial("a1 + a2", &single).unwrap();
        assert!(matches!(homogeneous_degree(&single, &f).unwrap(), Homogeneity::NotHomogeneous(..)));
        assert_eq!(homogeneous_degree(&single, &Polynomial::zero()).unwrap(), Homogeneity::Zero);
    }

    #[test]
    fn witness_values() {
        let single = tree("elem a");
        let w = positivity_witness(&single);
        let a = single.root();
        assert_eq!((w.symbol(1, a), w.symbol(2, a), w.weight(VariableId::u_root(a))), (1, 1, Some(2)));
        let chain = tree("a < b");
        let w = positivity_witness(&chain);
        let b = chain.id("b").unwrap();
        assert_eq!((w.symbol(1, chain.root()), w.symbol(1, b), w.weight(VariableId::u(chain.root(), b))), (2, 1, Some(1)));
        let star = tree("a < b\na < c");
        let w = positivity_witness(&star);
        assert_eq!(w.symbol(1, star.root()), 3);
        for v in u_variables(&star) {
            assert_eq!(w.weight(v), Some(if v.is_u() && matches!(v, VariableId::U { upper: None, .. }) { 2 } else { 1 }));
        }
    }

    #[test]
    fn witness_is_positive_everywhere() {
        for n in 1..=6 {
            for t in rooted_trees(n) {
                let w = positivity_witness(&t);
                assert!(w.iter().all(|(_, x)| x > 0));
                assert_eq!(w.iter().count(), 2 * n + u_variables(&t).len());
            }
        }
    }

    #[test]
    fn generators_lead_with_their_monomial() {
        for n in 1..=5 {
            for t in rooted_trees(n) {
                let ord = default_order(&t);
                let c = DeformationContext::new(t);
                for g in c.j_ideal_generators() {
                    let (lead, _) = ord.leading_term(&g.polynomial).unwrap().unwrap();
                    assert_eq!(lead, Monomial::product([VariableId::x1(g.lower), VariableId::x2(g.upper)]));
                }
            }
        }
    }

    #[test]
    fn hilbert_examples() {
        let single = tree("elem a");
        let ord = default_order(&single);
        let l = vec![parse_polynomial("a1*a2", &single).unwrap()];
        let j = vec![parse_polynomial("a1*a2 - u[0,a]", &single).unwrap()];
        assert_eq!(truncated_hilbert(&l, &ord, 3, GroebnerBudget::default()).unwrap(), vec![1, 2, 3, 4]);
        assert_eq!(truncated_hilbert(&j, &ord, 3, GroebnerBudget::default()).unwrap(), vec![1, 2, 3, 4]);
        let one = MonomialOrder::grevlex(vec![VariableId::x1(single.root())]);
        assert_eq!(truncated_hilbert(&[], &one, 4, GroebnerBudget::default()).unwrap(), vec![1; 5]);
    }

    /// Brute-force oracle: list every monomial by weighted degree and test
    /// divisibility directly.
    fn brute_hilbert(leads: &[Vec<u32>], weights: &[u64], max: u64) -> Vec<u64> {
        let mut counts = vec![0u64; max as usize + 1];
        let mut stack = vec![vec![0u32; weights.len()]];
        let mut seen = std::collections::HashSet::new();
        while let Some(e) = stack.pop() {
            if !seen.insert(e.clone()) {
                continue;
            }
            let d: u64 = e.iter().zip(weights).map(|(a, w)| *a as u64 * w).sum();
            if !leads.iter().any(|l| l.iter().zip(&e).all(|(a, b)| a <= b)) {
                counts[d as usize] += 1;
            }
            for k in 0..weights.len() {
                if d + weights[k] <= max {
                    let mut f = e.clone();
                    f[k] += 1;
                    stack.push(f);
                }
            }
        }
        counts
    }

    #[test]
    fn standard_monomial_count_matches_brute_force() {
        let weights = [1, 2, 1, 3];
        let leads = vec![vec![1, 1, 0, 0], vec![0, 0, 2, 0], vec![2, 0, 0, 1]];
        let dense: Vec<DenseMonomial> = leads
            .iter()
            .map(|e| DenseMonomial { wdeg: e.iter().zip(&weights).map(|(a, w)| *a as u64 * w).sum(), exps: e.clone() })
            .collect();
        assert_eq!(count_standard_monomials(&dense, &weights, 8), brute_hilbert(&leads, &weights, 8));
    }

    #[test]
    fn hilbert_monotone_under_inclusion() {
        let chain = tree("a < b");
        let ord = default_order(&chain);
        let small = vec![parse_polynomial("a1*a2", &chain).unwrap()];
        let big = vec![parse_polynomial("a1*a2", &chain).unwrap(), parse_polynomial("a1*b2", &chain).unwrap()];
        let hs = truncated_hilbert(&small, &ord, 5, GroebnerBudget::default()).unwrap();
        let hb = truncated_hilbert(&big, &ord, 5, GroebnerBudget::default()).unwrap();
        assert!(hs.iter().zip(&hb).all(|(a, b)| a >= b));
    }
}
