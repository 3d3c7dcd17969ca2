//! Buchberger's algorithm over exact rationals and ideal membership by
//! normal form.
//!
//! Polynomials are converted to dense exponent vectors over the variables of
//! a [`MonomialOrder`] for the duration of the computation; the public
//! surface speaks [`Polynomial`].

use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap, HashSet};

use num_traits::{One, Zero};

use super::monomial::Monomial;
use super::order::{DenseMonomial, MonomialOrder};
use super::polynomial::{Coeff, Polynomial};
use crate::error::{Error, Result};

/// Caps that turn runaway computations into [`Error::ResourceLimit`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GroebnerBudget {
    pub max_spairs: usize,
    pub max_weight: u64,
}

impl Default for GroebnerBudget {
    fn default() -> Self {
        GroebnerBudget { max_spairs: 1_000_000, max_weight: 10_000 }
    }
}

/// Terms sorted in descending order, leading coefficient 1.
#[derive(Clone, Debug, PartialEq, Eq)]
struct DensePoly {
    terms: Vec<(DenseMonomial, Coeff)>,
}

impl DensePoly {
    fn from_map(map: BTreeMap<DenseMonomial, Coeff>) -> DensePoly {
        DensePoly { terms: map.into_iter().rev().collect() }
    }

    fn lead(&self) -> &DenseMonomial {
        &self.terms[0].0
    }

    fn make_monic(&mut self) {
        let lc = self.terms[0].1.clone();
        if !lc.is_one() {
            for t in &mut self.terms {
                t.1 /= &lc;
            }
        }
    }
}

/// Reduced Gröbner basis together with the order it is reduced for.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    order: MonomialOrder,
    basis: Vec<DensePoly>,
}

fn to_map(f: &Polynomial, order: &MonomialOrder) -> Result<BTreeMap<DenseMonomial, Coeff>> {
    f.terms().map(|(m, c)| Ok((order.dense(m)?, c.clone()))).collect()
}

/// Subtracts `coeff * mult * g` from `work`, skipping `g`'s leading term
/// (the caller removes the matching term itself).
fn subtract_multiple(work: &mut BTreeMap<DenseMonomial, Coeff>, g: &DensePoly, mult: &DenseMonomial, coeff: &Coeff) {
    for (m, c) in g.terms.iter().skip(1) {
        let key = m.mul(mult);
        let delta = coeff * c;
        match work.get_mut(&key) {
            Some(existing) => {
                *existing -= delta;
                if existing.is_zero() {
                    work.remove(&key);
                }
            }
            None => {
                work.insert(key, -delta);
            }
        }
    }
}

/// Full reduction of `work` by `basis`; the remainder has no term divisible
/// by any leading monomial.
fn reduce(mut work: BTreeMap<DenseMonomial, Coeff>, basis: &[DensePoly], max_weight: Option<u64>) -> Result<BTreeMap<DenseMonomial, Coeff>> {
    let mut remainder = BTreeMap::new();
    while let Some((m, c)) = work.pop_last() {
        if let Some(limit) = max_weight {
            if m.wdeg > limit {
                return Err(Error::ResourceLimit(format!("monomial weight {} exceeds {limit}", m.wdeg)));
            }
        }
        match basis.iter().find(|g| g.lead().divides(&m)) {
            Some(g) => {
                let mult = g.lead().quotient_of(&m);
                subtract_multiple(&mut work, g, &mult, &c);
            }
            None => {
                remainder.insert(m, c);
            }
        }
    }
    Ok(remainder)
}

fn s_polynomial(f: &DensePoly, g: &DensePoly, lcm: &DenseMonomial) -> BTreeMap<DenseMonomial, Coeff> {
    let mf = f.lead().quotient_of(lcm);
    let mg = g.lead().quotient_of(lcm);
    let mut work: BTreeMap<DenseMonomial, Coeff> = f.terms.iter().skip(1).map(|(m, c)| (m.mul(&mf), c.clone())).collect();
    subtract_multiple(&mut work, g, &mg, &Coeff::one());
    work
}

/// Computes the reduced Gröbner basis of the ideal generated by `gens`.
pub fn buchberger(gens: &[Polynomial], order: &MonomialOrder, budget: GroebnerBudget) -> Result<GroebnerBasis> {
    let weights = order.weights();
    let mut basis: Vec<DensePoly> = Vec::new();
    for g in gens {
        let map = reduce(to_map(g, order)?, &[], Some(budget.max_weight))?;
        if !map.is_empty() {
            let mut p = DensePoly::from_map(map);
            p.make_monic();
            basis.push(p);
        }
    }

    // Pending pairs, smallest lcm first.
    let mut queue: BinaryHeap<Reverse<(DenseMonomial, usize, usize)>> = BinaryHeap::new();
    let mut pending: HashSet<(usize, usize)> = HashSet::new();
    let push_pairs = |basis: &[DensePoly], k: usize, queue: &mut BinaryHeap<_>, pending: &mut HashSet<_>| {
        for i in 0..k {
            if basis[i].lead().coprime(basis[k].lead()) {
                continue;
            }
            let lcm = basis[i].lead().lcm(basis[k].lead(), weights);
            queue.push(Reverse((lcm, i, k)));
            pending.insert((i, k));
        }
    };
    for k in 0..basis.len() {
        push_pairs(&basis, k, &mut queue, &mut pending);
    }

    let mut processed = 0usize;
    while let Some(Reverse((lcm, i, j))) = queue.pop() {
        pending.remove(&(i, j));
        // Chain criterion: some lead divides the lcm and both companion
        // pairs are already handled.
        let redundant = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && basis[k].lead().divides(&lcm)
                && !pending.contains(&(i.min(k), i.max(k)))
                && !pending.contains(&(j.min(k), j.max(k)))
        });
        if redundant {
            continue;
        }
        processed += 1;
        if processed > budget.max_spairs {
            return Err(Error::ResourceLimit(format!("more than {} S-pairs", budget.max_spairs)));
        }
        let rem = reduce(s_polynomial(&basis[i], &basis[j], &lcm), &basis, Some(budget.max_weight))?;
        if !rem.is_empty() {
            let mut p = DensePoly::from_map(rem);
            p.make_monic();
            basis.push(p);
            push_pairs(&basis, basis.len() - 1, &mut queue, &mut pending);
        }
    }

    Ok(GroebnerBasis { order: order.clone(), basis: interreduce(basis)? })
}

/// Drops elements with redundant leading terms and fully reduces the rest.
fn interreduce(mut basis: Vec<DensePoly>) -> Result<Vec<DensePoly>> {
    basis.sort_by(|a, b| a.lead().cmp(b.lead()));
    let mut minimal: Vec<DensePoly> = Vec::new();
    for g in basis {
        if !minimal.iter().any(|h| h.lead().divides(g.lead())) {
            minimal.retain(|h| !g.lead().divides(h.lead()));
            minimal.push(g);
        }
    }
    let mut reduced = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<DensePoly> = minimal.iter().enumerate().filter(|(k, _)| *k != i).map(|(_, g)| g.clone()).collect();
        let lead = minimal[i].terms[0].clone();
        let tail: BTreeMap<DenseMonomial, Coeff> = minimal[i].terms.iter().skip(1).cloned().collect();
        let mut map = reduce(tail, &others, None)?;
        map.insert(lead.0, lead.1);
        let mut p = DensePoly::from_map(map);
        p.make_monic();
        reduced.push(p);
    }
    reduced.sort_by(|a, b| b.lead().cmp(a.lead()));
    Ok(reduced)
}

impl GroebnerBasis {
    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    /// Basis elements, sorted by descending leading monomial.
    pub fn polynomials(&self) -> Vec<Polynomial> {
        self.basis
            .iter()
            .map(|g| Polynomial::from_terms(g.terms.iter().map(|(m, c)| (c.clone(), self.order.sparse(m)))))
            .collect()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.basis.iter().map(|g| self.order.sparse(g.lead())).collect()
    }

    pub(crate) fn dense_leads(&self) -> Vec<DenseMonomial> {
        self.basis.iter().map(|g| g.lead().clone()).collect()
    }

    /// Remainder of full multivariate division by the basis.
    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial> {
        let rem = reduce(to_map(f, &self.order)?, &self.basis, None)?;
        Ok(Polynomial::from_terms(rem.into_iter().map(|(m, c)| (c, self.order.sparse(&m)))))
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }
}
