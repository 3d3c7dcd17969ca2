use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::monomial::{Monomial, VariableId};

pub type Coeff = BigRational;

pub fn coeff(n: i64) -> Coeff {
    BigRational::from_integer(BigInt::from(n))
}

/// Sparse polynomial with exact rational coefficients. Zero coefficients are
/// never stored, so structural equality is polynomial equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, Coeff>,
}

impl Polynomial {
    pub fn zero() -> Polynomial {
        Polynomial { terms: BTreeMap::new() }
    }

    pub fn one() -> Polynomial {
        Polynomial::constant(coeff(1))
    }

    pub fn constant(c: Coeff) -> Polynomial {
        Polynomial::term(c, Monomial::one())
    }

    pub fn var(v: VariableId) -> Polynomial {
        Polynomial::term(coeff(1), Monomial::var(v))
    }

    pub fn monomial(m: Monomial) -> Polynomial {
        Polynomial::term(coeff(1), m)
    }

    pub fn term(c: Coeff, m: Monomial) -> Polynomial {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (Coeff, Monomial)>>(terms: I) -> Polynomial {
        let mut p = Polynomial::zero();
        for (c, m) in terms {
            p.add_term(c, m);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Coeff)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Coeff {
        self.terms.get(m).cloned().unwrap_or_else(Coeff::zero)
    }

    pub fn monomials(&self) -> impl Iterator<Item = &Monomial> {
        self.terms.keys()
    }

    pub fn variables(&self) -> BTreeSet<VariableId> {
        self.terms.keys().flat_map(|m| m.variables()).collect()
    }

    /// Adds `c * m` in place, removing the term if it cancels.
    pub fn add_term(&mut self, c: Coeff, m: Monomial) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Coeff) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial { terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect() }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        Polynomial { terms: self.terms.iter().map(|(n, a)| (n.mul(m), a.clone())).collect() }
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        let mut acc = Polynomial::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// The evaluation homomorphism sending each assigned variable to its
    /// polynomial and fixing the rest.
    pub fn substitute(&self, assignment: &HashMap<VariableId, Polynomial>) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            let mut kept = Vec::new();
            let mut image = Polynomial::constant(c.clone());
            for &(v, e) in m.factors() {
                match assignment.get(&v) {
                    Some(p) => image = &image * &p.pow(e),
                    None => kept.push((v, e)),
                }
            }
            out += &image.mul_monomial(&Monomial::from_factors(kept));
        }
        out
    }

    /// Sets every `u`-variable to zero.
    pub fn specialize_u_to_zero(&self) -> Polynomial {
        Polynomial {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.u_degree() == 0)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Terms whose monomial carries no `u`-variable.
    pub fn u_free_part(&self) -> Polynomial {
        self.specialize_u_to_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// Maps each coefficient through `f`, dropping zeros.
    pub fn map_coefficients(&self, mut f: impl FnMut(&Monomial, &Coeff) -> Coeff) -> Polynomial {
        Polynomial::from_terms(self.terms.iter().map(|(m, c)| (f(m, c), m.clone())))
    }

    pub fn has_negative_coefficient(&self) -> bool {
        self.terms.values().any(Signed::is_negative)
    }
}

impl From<VariableId> for Polynomial {
    fn from(v: VariableId) -> Polynomial {
        Polynomial::var(v)
    }
}

impl From<Monomial> for Polynomial {
    fn from(m: Monomial) -> Polynomial {
        Polynomial::monomial(m)
    }
}

impl AddAssign<&Polynomial> for Polynomial {
    fn add_assign(&mut self, rhs: &Polynomial) {
        for (m, c) in &rhs.terms {
            self.add_term(c.clone(), m.clone());
        }
    }
}

impl SubAssign<&Polynomial> for Polynomial {
    fn sub_assign(&mut self, rhs: &Polynomial) {
        for (m, c) in &rhs.terms {
            self.add_term(-c, m.clone());
        }
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, a) in &self.terms {
            for (n, b) in &rhs.terms {
                out.add_term(a * b, m.mul(n));
            }
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

macro_rules! owned_ops {
    ($($tr:ident :: $f:ident),*) => {$(
        impl $tr for Polynomial {
            type Output = Polynomial;
            fn $f(self, rhs: Polynomial) -> Polynomial { (&self).$f(&rhs) }
        }
        impl $tr<&Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $f(self, rhs: &Polynomial) -> Polynomial { (&self).$f(rhs) }
        }
        impl $tr<Polynomial> for &Polynomial {
            type Output = Polynomial;
            fn $f(self, rhs: Polynomial) -> Polynomial { self.$f(&rhs) }
        }
    )*};
}

owned_ops!(Add::add, Sub::sub, Mul::mul);

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

impl std::iter::Sum for Polynomial {
    fn sum<I: Iterator<Item = Polynomial>>(iter: I) -> Polynomial {
        let mut acc = Polynomial::zero();
        for p in iter {
            acc += &p;
        }
        acc
    }
}

impl std::iter::Product for Polynomial {
    fn product<I: Iterator<Item = Polynomial>>(iter: I) -> Polynomial {
        iter.fold(Polynomial::one(), |acc, p| &acc * &p)
    }
}

impl One for Polynomial {
    fn one() -> Polynomial {
        Polynomial::one()
    }
}

impl Zero for Polynomial {
    fn zero() -> Polynomial {
        Polynomial::zero()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::ElemId;

    fn x(place: u8, e: u16) -> Polynomial {
        Polynomial::var(VariableId::X { place, elem: ElemId(e) })
    }

    fn u(q: u16, p: u16) -> Polynomial {
        Polynomial::var(VariableId::u(ElemId(q), ElemId(p)))
    }

    #[test]
    fn additive_inverse_is_zero() {
        let f = &x(1, 0) * &x(2, 1);
        assert!((&f + &(-&f)).is_zero());
        assert!((&f - &f).is_zero());
    }

    #[test]
    fn distributivity_example() {
        // u_{a,b} (b1 b2 - a2 u_{a,b} c1)
        let (a, b, c) = (0, 1, 2);
        let inner = &x(1, b) * &x(2, b) - &(&x(2, a) * &u(a, b)) * &x(1, c);
        let got = &u(a, b) * &inner;
        let want = &(&u(a, b) * &x(1, b)) * &x(2, b) - &(&(&x(2, a) * &u(a, b).pow(2)) * &x(1, c));
        assert_eq!(got, want);
        assert_eq!(got.len(), 2);
    }

    #[test]
    fn substitution_specializes() {
        // a1 a2 - u_{0,a} b1 with every u -> 0
        let root_u = Polynomial::var(VariableId::u_root(ElemId(0)));
        let f = &x(1, 0) * &x(2, 0) - &root_u * &x(1, 1);
        let mut assign = HashMap::new();
        assign.insert(VariableId::u_root(ElemId(0)), Polynomial::zero());
        assert_eq!(f.substitute(&assign), &x(1, 0) * &x(2, 0));
        assert_eq!(f.specialize_u_to_zero(), &x(1, 0) * &x(2, 0));

        // Substituting a polynomial for a squared variable.
        let g = x(1, 0).pow(2);
        let mut assign = HashMap::new();
        assign.insert(VariableId::x1(ElemId(0)), &x(1, 1) + &Polynomial::one());
        assert_eq!(g.substitute(&assign), &(&x(1, 1).pow(2) + &x(1, 1).scale(&coeff(2))) + &Polynomial::one());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn small_poly() -> impl Strategy<Value = Polynomial> {
            proptest::collection::vec((-3i64..=3, proptest::collection::vec((0u8..4, 0u32..3), 0..3)), 0..5)
                .prop_map(|terms| {
                    Polynomial::from_terms(terms.into_iter().map(|(c, fs)| {
                        let m = Monomial::from_factors(fs.into_iter().map(|(v, e)| {
                            let var = if v < 2 { VariableId::X { place: v + 1, elem: ElemId(0) } } else { VariableId::u(ElemId(0), ElemId(v as u16)) };
                            (var, e)
                        }));
                        (coeff(c), m)
                    }))
                })
        }

        fn canonical(p: &Polynomial) -> bool {
            p.terms().all(|(m, c)| !c.is_zero() && m.factors().iter().all(|f| f.1 > 0))
        }

        proptest! {
            #[test]
            fn arithmetic_stays_canonical(f in small_poly(), g in small_poly(), h in small_poly()) {
                let s = &f + &g;
                let d = &f - &g;
                let p = &f * &g;
                prop_assert!(canonical(&s) && canonical(&d) && canonical(&p));
                prop_assert_eq!(&(&f * &(&g + &h)), &(&p + &(&f * &h)));
                prop_assert_eq!(&(&f * &g), &(&g * &f));
                prop_assert!((&d + &g - &f).is_zero());
            }
        }
    }
}
