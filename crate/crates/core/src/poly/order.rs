use std::cmp::Ordering;
use std::collections::HashMap;

use super::monomial::{Monomial, VariableId};
use super::polynomial::{Coeff, Polynomial};
use crate::error::{Error, Result};

/// Weighted degree, ties broken reverse-lexicographically on a fixed
/// variable list (earlier variables are larger).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialOrder {
    vars: Vec<VariableId>,
    weights: Vec<u64>,
    position: HashMap<VariableId, usize>,
}

/// Exponent vector over the variables of a [`MonomialOrder`], with its
/// weighted degree cached. `Ord` is the monomial order itself.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DenseMonomial {
    pub(crate) wdeg: u64,
    pub(crate) exps: Vec<u32>,
}

impl Ord for DenseMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.wdeg.cmp(&other.wdeg).then_with(|| {
            for (a, b) in self.exps.iter().zip(&other.exps).rev() {
                if a != b {
                    return b.cmp(a);
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for DenseMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl DenseMonomial {
    pub fn weighted_degree(&self) -> u64 {
        self.wdeg
    }

    pub fn divides(&self, other: &DenseMonomial) -> bool {
        self.wdeg <= other.wdeg && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`; caller guarantees divisibility.
    pub fn quotient_of(&self, other: &DenseMonomial) -> DenseMonomial {
        DenseMonomial {
            wdeg: other.wdeg - self.wdeg,
            exps: other.exps.iter().zip(&self.exps).map(|(b, a)| b - a).collect(),
        }
    }

    pub fn mul(&self, other: &DenseMonomial) -> DenseMonomial {
        DenseMonomial {
            wdeg: self.wdeg + other.wdeg,
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn lcm(&self, other: &DenseMonomial, weights: &[u64]) -> DenseMonomial {
        let exps: Vec<u32> = self.exps.iter().zip(&other.exps).map(|(a, b)| *a.max(b)).collect();
        let wdeg = exps.iter().zip(weights).map(|(e, w)| *e as u64 * w).sum();
        DenseMonomial { wdeg, exps }
    }

    pub fn coprime(&self, other: &DenseMonomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| *a == 0 || *b == 0)
    }
}

impl MonomialOrder {
    pub fn new(vars: Vec<VariableId>, weights: Vec<u64>) -> Result<MonomialOrder> {
        if vars.len() != weights.len() {
            return Err(Error::Index(format!("{} variables but {} weights", vars.len(), weights.len())));
        }
        if weights.contains(&0) {
            return Err(Error::Domain("monomial order weights must be positive".into()));
        }
        let mut position = HashMap::with_capacity(vars.len());
        for (i, v) in vars.iter().enumerate() {
            if position.insert(*v, i).is_some() {
                return Err(Error::Domain(format!("variable {v:?} listed twice")));
            }
        }
        Ok(MonomialOrder { vars, weights, position })
    }

    /// Graded reverse-lexicographic order (all weights 1).
    pub fn grevlex(vars: Vec<VariableId>) -> MonomialOrder {
        let n = vars.len();
        MonomialOrder::new(vars, vec![1; n]).expect("unit weights are valid")
    }

    pub fn variables(&self) -> &[VariableId] {
        &self.vars
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    pub fn position(&self, v: VariableId) -> Option<usize> {
        self.position.get(&v).copied()
    }

    pub fn weight(&self, v: VariableId) -> Option<u64> {
        self.position(v).map(|i| self.weights[i])
    }

    pub fn covers(&self, f: &Polynomial) -> bool {
        f.variables().iter().all(|v| self.position.contains_key(v))
    }

    pub fn dense(&self, m: &Monomial) -> Result<DenseMonomial> {
        let mut exps = vec![0u32; self.vars.len()];
        let mut wdeg = 0;
        for &(v, e) in m.factors() {
            let i = self.position(v).ok_or_else(|| Error::UnknownVariable(format!("{v:?}")))?;
            exps[i] = e;
            wdeg += e as u64 * self.weights[i];
        }
        Ok(DenseMonomial { wdeg, exps })
    }

    pub fn sparse(&self, d: &DenseMonomial) -> Monomial {
        Monomial::from_factors(self.vars.iter().copied().zip(d.exps.iter().copied()))
    }

    pub fn one(&self) -> DenseMonomial {
        DenseMonomial { wdeg: 0, exps: vec![0; self.vars.len()] }
    }

    pub fn weighted_degree(&self, m: &Monomial) -> Result<u64> {
        self.dense(m).map(|d| d.wdeg)
    }

    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Result<Ordering> {
        Ok(self.dense(a)?.cmp(&self.dense(b)?))
    }

    /// Terms in descending order.
    pub fn sorted_terms<'a>(&self, f: &'a Polynomial) -> Result<Vec<(&'a Monomial, &'a Coeff)>> {
        let mut keyed = f.terms().map(|(m, c)| Ok((self.dense(m)?, m, c))).collect::<Result<Vec<_>>>()?;
        keyed.sort_by(|x, y| y.0.cmp(&x.0));
        Ok(keyed.into_iter().map(|(_, m, c)| (m, c)).collect())
    }

    pub fn leading_term(&self, f: &Polynomial) -> Result<Option<(Monomial, Coeff)>> {
        let mut best: Option<(DenseMonomial, &Monomial, &Coeff)> = None;
        for (m, c) in f.terms() {
            let d = self.dense(m)?;
            if best.as_ref().is_none_or(|b| d > b.0) {
                best = Some((d, m, c));
            }
        }
        Ok(best.map(|(_, m, c)| (m.clone(), c.clone())))
    }
}
