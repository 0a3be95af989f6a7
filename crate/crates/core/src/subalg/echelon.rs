use rustc_hash::FxHashMap;

use crate::pbw::{PrimeField, Ring};

/// Sparse vector over GF(p): `(column, value)` pairs sorted by column, no
/// zero values.
pub type SparseRow = Vec<(u64, u32)>;

/// A subspace in reduced row-echelon form. Each row's pivot is its smallest
/// column and no other row has an entry in that column.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: Vec<SparseRow>,
    pivots: FxHashMap<u64, usize>,
}

impl Echelon {
    pub fn new() -> Echelon {
        Echelon::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseRow] {
        &self.rows
    }

    pub fn pivot_columns(&self) -> impl Iterator<Item = u64> + '_ {
        self.rows.iter().map(|r| r[0].0)
    }

    /// Remainder of `x` after subtracting its components along pivot columns.
    pub fn reduce(&self, field: &PrimeField, x: &[(u64, u32)]) -> SparseRow {
        let mut acc: FxHashMap<u64, u32> = FxHashMap::default();
        for &(c, v) in x {
            let e = acc.entry(c).or_insert(0);
            *e = field.add(e, &v);
        }
        let hits: Vec<(usize, u32)> = x
            .iter()
            .filter_map(|&(c, _)| self.pivots.get(&c).map(|&r| (r, acc[&c])))
            .filter(|&(_, v)| v != 0)
            .collect();
        for (r, v) in hits {
            let neg = field.neg(&v);
            for &(c, w) in &self.rows[r] {
                let e = acc.entry(c).or_insert(0);
                *e = field.add(e, &field.mul(&neg, &w));
            }
        }
        let mut out: SparseRow = acc.into_iter().filter(|&(_, v)| v != 0).collect();
        out.sort_unstable_by_key(|&(c, _)| c);
        out
    }

    pub fn contains(&self, field: &PrimeField, x: &[(u64, u32)]) -> bool {
        self.reduce(field, x).is_empty()
    }

    /// Whether the basis vector of a single column lies in the subspace.
    pub fn contains_column(&self, c: u64) -> bool {
        self.pivots.get(&c).is_some_and(|&r| self.rows[r].len() == 1)
    }

    /// Adds `x` to the span. Returns the normalized new row if the rank grew.
    pub fn insert(&mut self, field: &PrimeField, x: &[(u64, u32)]) -> Option<SparseRow> {
        let mut v = self.reduce(field, x);
        if v.is_empty() {
            return None;
        }
        let inv = field.inv(v[0].1);
        for e in v.iter_mut() {
            e.1 = field.mul(&e.1, &inv);
        }
        let pc = v[0].0;
        for row in self.rows.iter_mut() {
            if row[0].0 > pc {
                continue;
            }
            if let Ok(pos) = row.binary_search_by_key(&pc, |&(c, _)| c) {
                let coef = field.neg(&row[pos].1);
                *row = axpy(field, row, coef, &v);
            }
        }
        self.pivots.insert(pc, self.rows.len());
        self.rows.push(v.clone());
        Some(v)
    }
}

/// `a + coef · b` for sorted sparse rows.
fn axpy(field: &PrimeField, a: &[(u64, u32)], coef: u32, b: &[(u64, u32)]) -> SparseRow {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j == b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i == a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i]);
            i += 1;
        } else if take_b {
            let v = field.mul(&coef, &b[j].1);
            if v != 0 {
                out.push((b[j].0, v));
            }
            j += 1;
        } else {
            let v = field.add(&a[i].1, &field.mul(&coef, &b[j].1));
            if v != 0 {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rref_over_gf3() {
        let f = PrimeField::new(3).unwrap();
        let mut e = Echelon::new();
        assert!(e.insert(&f, &[(1, 1), (2, 1)]).is_some());
        assert!(e.insert(&f, &[(0, 2), (1, 1)]).is_some());
        // rows: (0,2)+(1,1) normalized → (0,1),(1,2); then back-substitute.
        assert!(e.insert(&f, &[(0, 1), (2, 1)]).is_none() || e.rank() == 3);
        assert!(e.contains(&f, &[(1, 2), (2, 2)]));
        assert!(!e.contains(&f, &[(5, 1)]));
        for row in e.rows() {
            for other in e.rows() {
                if row[0].0 != other[0].0 {
                    assert!(other.binary_search_by_key(&row[0].0, |&(c, _)| c).is_err());
                }
            }
        }
    }

    #[test]
    fn unit_columns() {
        let f = PrimeField::new(2).unwrap();
        let mut e = Echelon::new();
        e.insert(&f, &[(3, 1), (4, 1)]);
        assert!(!e.contains_column(3));
        e.insert(&f, &[(4, 1)]);
        assert!(e.contains_column(3));
        assert!(e.contains_column(4));
        assert_eq!(e.rank(), 2);
    }
}
