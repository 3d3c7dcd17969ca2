use std::collections::HashMap;

use super::polynomial::Polynomial;
use crate::error::{Error, Result};

/// Dense rectangular matrix of polynomials, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Polynomial>,
}

impl PolyMatrix {
    pub fn from_rows(rows: Vec<Vec<Polynomial>>) -> Result<PolyMatrix> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::Shape { rows: nrows, cols: ncols });
        }
        Ok(PolyMatrix { rows: nrows, cols: ncols, entries: rows.into_iter().flatten().collect() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Polynomial {
        &self.entries[r * self.cols + c]
    }

    /// The matrix with the listed rows and columns removed.
    pub fn delete(&self, rows: &[usize], cols: &[usize]) -> PolyMatrix {
        let keep_r: Vec<usize> = (0..self.rows).filter(|r| !rows.contains(r)).collect();
        let keep_c: Vec<usize> = (0..self.cols).filter(|c| !cols.contains(c)).collect();
        PolyMatrix {
            rows: keep_r.len(),
            cols: keep_c.len(),
            entries: keep_r.iter().flat_map(|&r| keep_c.iter().map(move |&c| (r, c))).map(|(r, c)| self.get(r, c).clone()).collect(),
        }
    }

    /// Cofactor expansion along successive rows, memoized on the set of
    /// columns still available. The 0x0 determinant is 1.
    pub fn determinant(&self) -> Result<Polynomial> {
        if self.rows != self.cols {
            return Err(Error::NonSquare { rows: self.rows, cols: self.cols });
        }
        if self.rows > 63 {
            return Err(Error::ResourceLimit(format!("{}x{} determinant", self.rows, self.cols)));
        }
        let full = if self.cols == 0 { 0 } else { u64::MAX >> (64 - self.cols) };
        let mut memo = HashMap::new();
        Ok(self.minor(full, &mut memo))
    }

    fn minor(&self, cols: u64, memo: &mut HashMap<u64, Polynomial>) -> Polynomial {
        if cols == 0 {
            return Polynomial::one();
        }
        if let Some(p) = memo.get(&cols) {
            return p.clone();
        }
        let row = self.rows - cols.count_ones() as usize;
        let mut acc = Polynomial::zero();
        let mut position = 0;
        for c in 0..self.cols {
            if cols & (1 << c) == 0 {
                continue;
            }
            let entry = self.get(row, c);
            if !entry.is_zero() {
                let sub = self.minor(cols & !(1 << c), memo);
                let term = entry * &sub;
                if position % 2 == 0 {
                    acc += &term;
                } else {
                    acc -= &term;
                }
            }
            position += 1;
        }
        memo.insert(cols, acc.clone());
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::monomial::VariableId;
    use crate::poly::polynomial::coeff;
    use crate::poset::ElemId;
    use proptest::prelude::*;

    fn v(i: u16) -> Polynomial {
        Polynomial::var(VariableId::x1(ElemId(i)))
    }

    #[test]
    fn small_cases() {
        let one = PolyMatrix::from_rows(vec![vec![v(0)]]).unwrap();
        assert_eq!(one.determinant().unwrap(), v(0));
        let m = PolyMatrix::from_rows(vec![vec![v(0), v(1)], vec![v(1), v(0)]]).unwrap();
        assert_eq!(m.determinant().unwrap(), &v(0).pow(2) - &v(1).pow(2));
        let rect = PolyMatrix::from_rows(vec![vec![v(0), v(1)]]).unwrap();
        assert!(matches!(rect.determinant(), Err(Error::NonSquare { rows: 1, cols: 2 })));
        let empty = PolyMatrix::from_rows(vec![]).unwrap();
        assert_eq!(empty.determinant().unwrap(), Polynomial::one());
        assert!(PolyMatrix::from_rows(vec![vec![v(0)], vec![]]).is_err());
    }

    /// Independent oracle: sum over all permutations with their signs.
    fn leibniz(m: &PolyMatrix) -> Polynomial {
        fn perms(n: usize) -> Vec<(Vec<usize>, bool)> {
            if n == 0 {
                return vec![(vec![], false)];
            }
            let mut out = Vec::new();
            for (p, odd) in perms(n - 1) {
                for pos in 0..n {
                    let mut q = p.clone();
                    q.insert(pos, n - 1);
                    // Inserting at pos moves the new max past n-1-pos entries.
                    out.push((q, odd ^ ((n - 1 - pos) % 2 == 1)));
                }
            }
            out
        }
        let mut acc = Polynomial::zero();
        for (p, odd) in perms(m.rows()) {
            let prod: Polynomial = (0..m.rows()).map(|r| m.get(r, p[r]).clone()).product();
            if odd {
                acc -= &prod;
            } else {
                acc += &prod;
            }
        }
        acc
    }

    fn entry() -> impl Strategy<Value = Polynomial> {
        proptest::collection::vec((-2i64..=2, 0u16..4), 0..=2).prop_map(|ts| {
            ts.into_iter().map(|(c, i)| v(i).scale(&coeff(c))).sum()
        })
    }

    proptest! {
        #[test]
        fn cofactor_matches_leibniz(n in 3usize..=4, cells in proptest::collection::vec(entry(), 16)) {
            let rows: Vec<Vec<Polynomial>> = (0..n).map(|r| cells[r * n..r * n + n].to_vec()).collect();
            let m = PolyMatrix::from_rows(rows).unwrap();
            prop_assert_eq!(m.determinant().unwrap(), leibniz(&m));
        }
    }
}
