//! The recursive construction of the deformed ideal `J(2,P)` over a rooted
//! tree: the linear forms `T`, the matrices `M(a)`, their signed minors `D`,
//! the cover products `R`, the operators `S`, and the generators
//! `p1*q2 - T(p)*S_p(q)`.
//!
//! Children of `a` are indexed `b^1..b^m` along the linear extension and
//! `b^0 = a`, so column `i` of `M(a)` belongs to `b^i` and row `j` to `b^j`.

use std::collections::HashMap;
use std::sync::Mutex;

use crate::error::{Error, Result};
use crate::poly::{Monomial, PolyMatrix, Polynomial, VariableId};
use crate::poset::{ElemId, RootedTree};

/// One generator of `J(2,P)` with the pair it deforms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeformedGenerator {
    pub lower: ElemId,
    pub upper: ElemId,
    pub polynomial: Polynomial,
}

/// A rooted tree with memo tables for the recursive quantities.
#[derive(Debug)]
pub struct DeformationContext {
    tree: RootedTree,
    minors: Mutex<HashMap<(ElemId, ElemId), Polynomial>>,
    matrices: Mutex<HashMap<ElemId, PolyMatrix>>,
}

impl Clone for DeformationContext {
    fn clone(&self) -> Self {
        DeformationContext::new(self.tree.clone())
    }
}

fn x1(p: ElemId) -> Polynomial {
    Polynomial::var(VariableId::x1(p))
}

fn x2(p: ElemId) -> Polynomial {
    Polynomial::var(VariableId::x2(p))
}

/// Parity of the permutation sorting `seq`.
fn sort_parity(seq: &[usize]) -> usize {
    let mut inversions = 0;
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            if seq[i] > seq[j] {
                inversions += 1;
            }
        }
    }
    inversions % 2
}

impl DeformationContext {
    pub fn new(tree: RootedTree) -> DeformationContext {
        DeformationContext { tree, minors: Mutex::default(), matrices: Mutex::default() }
    }

    pub fn tree(&self) -> &RootedTree {
        &self.tree
    }

    pub fn clear_memo(&self) {
        self.minors.lock().expect("memo lock").clear();
        self.matrices.lock().expect("memo lock").clear();
    }

    fn name(&self, e: ElemId) -> String {
        self.tree.name(e).to_string()
    }

    fn not_comparable(&self, a: ElemId, b: ElemId) -> Error {
        Error::NotComparable(self.name(a), self.name(b))
    }

    /// `T_c(b)`: `-a2*u[a,b]` when `c = a` is the parent, `-sum_{q >= c}
    /// q2*u[q,b]` when `c` is a sibling. `c = b` yields `T(b)`.
    pub fn t_sub(&self, c: ElemId, b: ElemId) -> Result<Polynomial> {
        if c == b {
            return Ok(self.t_full(b));
        }
        if self.tree.parent(b) == Some(c) {
            return Ok(-(x2(c) * Polynomial::var(VariableId::u(c, b))));
        }
        if !self.tree.are_siblings(c, b) {
            return Err(Error::Relation { c: self.name(c), b: self.name(b) });
        }
        let mut acc = Polynomial::zero();
        for &q in self.tree.linear_extension() {
            if self.tree.leq(c, q) {
                acc -= &(x2(q) * Polynomial::var(VariableId::u(q, b)));
            }
        }
        Ok(acc)
    }

    /// `T(b)`; for the root this is the root parameter.
    pub fn t_full(&self, b: ElemId) -> Polynomial {
        let Some(a) = self.tree.parent(b) else {
            return Polynomial::var(VariableId::u_root(b));
        };
        let mut acc = -self.t_sub(a, b).expect("parent relation");
        for c in self.tree.siblings(b) {
            acc -= &self.t_sub(c, b).expect("sibling relation");
        }
        acc
    }

    /// The entry `S_x T_x(b)` of the matrix at `b`'s parent: `b1` for
    /// `x = b`, `-u[a,b]` for the parent `a`, and `S_c(T_c(b))` for a
    /// sibling `c`.
    pub fn st_entry(&self, x: ElemId, b: ElemId) -> Result<Polynomial> {
        if x == b {
            return Ok(x1(b));
        }
        if self.tree.parent(b) == Some(x) {
            return Ok(-Polynomial::var(VariableId::u(x, b)));
        }
        if !self.tree.are_siblings(x, b) {
            return Err(Error::Relation { c: self.name(x), b: self.name(b) });
        }
        self.s_op_linear(x, &self.t_sub(x, b)?)
    }

    /// `M(a)`, with `m` rows and `m + 1` columns for `m` children.
    pub fn matrix_m(&self, a: ElemId) -> Result<PolyMatrix> {
        if let Some(m) = self.matrices.lock().expect("memo lock").get(&a) {
            return Ok(m.clone());
        }
        let kids = self.tree.children(a);
        if kids.is_empty() {
            return Err(Error::Leaf(self.name(a)));
        }
        let columns: Vec<ElemId> = std::iter::once(a).chain(kids.iter().copied()).collect();
        let rows = kids
            .iter()
            .map(|&bj| columns.iter().map(|&bi| self.st_entry(bi, bj)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let m = PolyMatrix::from_rows(rows)?;
        self.matrices.lock().expect("memo lock").insert(a, m.clone());
        Ok(m)
    }

    /// Column index of `x` in `M(a)`: 0 for `a`, `j` for the child `b^j`.
    pub fn column_index(&self, a: ElemId, x: ElemId) -> Result<usize> {
        if x == a {
            return Ok(0);
        }
        self.tree
            .children(a)
            .iter()
            .position(|&c| c == x)
            .map(|j| j + 1)
            .ok_or_else(|| Error::Index(format!("{} is not {} or a child of it", self.name(x), self.name(a))))
    }

    /// `D(a)^x = (-1)^i |M(a) without column i|` where `x = b^i`; for
    /// maximal `a`, `D(a)^a = 1`.
    pub fn minor_d(&self, a: ElemId, x: ElemId) -> Result<Polynomial> {
        if let Some(p) = self.minors.lock().expect("memo lock").get(&(a, x)) {
            return Ok(p.clone());
        }
        let i = self.column_index(a, x)?;
        let value = if self.tree.children(a).is_empty() {
            Polynomial::one()
        } else {
            let det = self.matrix_m(a)?.delete(&[], &[i]).determinant()?;
            if i % 2 == 1 { -det } else { det }
        };
        self.minors.lock().expect("memo lock").insert((a, x), value.clone());
        Ok(value)
    }

    /// `D(a)^i` by column index.
    pub fn minor_d_index(&self, a: ElemId, i: usize) -> Result<Polynomial> {
        let m = self.tree.children(a).len();
        match i {
            0 => self.minor_d(a, a),
            i if i <= m => self.minor_d(a, self.tree.children(a)[i - 1]),
            _ => Err(Error::Index(format!("column {i} of M({}) with {m} children", self.name(a)))),
        }
    }

    /// The signed minor of `M(a)` with columns `cols` (in `0..=m`) and rows
    /// `rows` (in `1..=m`) removed. The sign is `(-1)^(sum cols + sum rows +
    /// s(cols) + s(rows))` with `s` the parity of the sorting permutation,
    /// so one column and no rows gives `D(a)^i`.
    pub fn generalized_minor(&self, a: ElemId, cols: &[usize], rows: &[usize]) -> Result<Polynomial> {
        let m = self.tree.children(a).len();
        let distinct = |s: &[usize]| s.iter().enumerate().all(|(k, x)| !s[..k].contains(x));
        if !distinct(cols) || !distinct(rows) {
            return Err(Error::Index("repeated index".into()));
        }
        if let Some(&c) = cols.iter().find(|&&c| c > m) {
            return Err(Error::Index(format!("column {c} of M({}) with {m} children", self.name(a))));
        }
        if let Some(&r) = rows.iter().find(|&&r| r == 0 || r > m) {
            return Err(Error::Index(format!("row {r} of M({}) with {m} children", self.name(a))));
        }
        if cols.len() != rows.len() + 1 {
            return Err(Error::Shape { rows: m - rows.len(), cols: m + 1 - cols.len() });
        }
        let det = if m == 0 {
            Polynomial::one()
        } else {
            let rows0: Vec<usize> = rows.iter().map(|r| r - 1).collect();
            self.matrix_m(a)?.delete(&rows0, cols).determinant()?
        };
        let exponent = cols.iter().sum::<usize>() + rows.iter().sum::<usize>() + sort_parity(cols) + sort_parity(rows);
        Ok(if exponent % 2 == 1 { -det } else { det })
    }

    /// [`Self::generalized_minor`] addressed by elements: columns by `a` or
    /// children, rows by children.
    pub fn generalized_minor_elems(&self, a: ElemId, cols: &[ElemId], rows: &[ElemId]) -> Result<Polynomial> {
        let ci = cols.iter().map(|&x| self.column_index(a, x)).collect::<Result<Vec<_>>>()?;
        let ri = rows
            .iter()
            .map(|&x| match self.column_index(a, x)? {
                0 => Err(Error::Index(format!("{} does not index a row of M({})", self.name(x), self.name(a)))),
                j => Ok(j),
            })
            .collect::<Result<Vec<_>>>()?;
        self.generalized_minor(a, &ci, &ri)
    }

    /// `R(a,b)`, the product of `D(p)^q` over the covers `p < q` of the
    /// chain from `a` to `b`.
    pub fn cover_product_r(&self, a: ElemId, b: ElemId) -> Result<Polynomial> {
        let chain = self.tree.chain_between(a, b)?;
        let mut acc = Polynomial::one();
        for w in chain.windows(2) {
            acc = &acc * &self.minor_d(w[0], w[1])?;
        }
        Ok(acc)
    }

    /// `S_a(b2) = R(a,b) * D(b)^b`.
    pub fn s_op(&self, a: ElemId, b: ElemId) -> Result<Polynomial> {
        if !self.tree.leq(a, b) {
            return Err(self.not_comparable(a, b));
        }
        Ok(&self.cover_product_r(a, b)? * &self.minor_d(b, b)?)
    }

    /// `S_a` applied to a combination of `q2` with `q >= a`, each scaled by
    /// a monomial in the parameters.
    pub fn s_op_linear(&self, a: ElemId, f: &Polynomial) -> Result<Polynomial> {
        let mut out = Polynomial::zero();
        for (m, c) in f.terms() {
            let mut target = None;
            let mut rest = Vec::new();
            for &(v, e) in m.factors() {
                match v {
                    VariableId::X { place: 2, elem } if e == 1 && target.is_none() => target = Some(elem),
                    VariableId::U { .. } => rest.push((v, e)),
                    _ => return Err(Error::Domain(format!("S_{} on a term with {v:?}^{e}", self.name(a)))),
                }
            }
            let q = target.ok_or_else(|| Error::Domain(format!("S_{} on a term without a place-2 variable", self.name(a))))?;
            if !self.tree.leq(a, q) {
                return Err(Error::Domain(format!("S_{} on {}2", self.name(a), self.name(q))));
            }
            out += &self.s_op(a, q)?.mul_monomial(&Monomial::from_factors(rest)).scale(c);
        }
        Ok(out)
    }

    /// `p1*q2 - T(p)*S_p(q)`.
    pub fn deformed_generator(&self, p: ElemId, q: ElemId) -> Result<Polynomial> {
        if !self.tree.leq(p, q) {
            return Err(self.not_comparable(p, q));
        }
        Ok(&x1(p) * &x2(q) - &(&self.t_full(p) * &self.s_op(p, q)?))
    }

    /// One generator per comparable pair, in the order of
    /// [`crate::letterplace::letterplace_generators`].
    pub fn j_ideal_generators(&self) -> Vec<DeformedGenerator> {
        self.tree
            .poset()
            .comparable_pairs()
            .into_iter()
            .map(|(p, q)| DeformedGenerator {
                lower: p,
                upper: q,
                polynomial: self.deformed_generator(p, q).expect("pair is comparable"),
            })
            .collect()
    }
}
