//! Sparse exact linear algebra over [`Q`]: incremental reduced row echelon
//! form, rank, nullspace, span membership.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::scalar::Q;

/// Sparse vector: column index -> nonzero coefficient.
pub type SparseVec = BTreeMap<usize, Q>;

pub fn axpy(y: &mut SparseVec, a: &Q, x: &SparseVec) {
    if a.is_zero() {
        return;
    }
    for (k, v) in x {
        let e = y.entry(*k).or_insert_with(Q::zero);
        *e += a * v;
        if e.is_zero() {
            y.remove(k);
        }
    }
}

/// Fully reduced row echelon basis, built one row at a time.
///
/// Pivots are the smallest nonzero column of each row, so the basis depends
/// only on the span and the column order.
#[derive(Debug, Clone, Default)]
pub struct Echelon {
    rows: BTreeMap<usize, SparseVec>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    pub fn rows(&self) -> impl Iterator<Item = (&usize, &SparseVec)> {
        self.rows.iter()
    }

    /// Remainder of `v` after elimination against the current pivots.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut r = v.clone();
        for (p, row) in &self.rows {
            if let Some(c) = r.get(p).cloned() {
                axpy(&mut r, &(-c), row);
            }
        }
        r
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_empty()
    }

    /// Adds `v` to the span; returns whether the rank grew.
    pub fn insert(&mut self, v: &SparseVec) -> bool {
        let mut r = self.reduce(v);
        let Some((&p, lead)) = r.iter().next() else {
            return false;
        };
        let inv = Q::one() / lead;
        for x in r.values_mut() {
            *x *= &inv;
        }
        for row in self.rows.values_mut() {
            if let Some(c) = row.get(&p).cloned() {
                axpy(row, &(-c), &r);
            }
        }
        self.rows.insert(p, r);
        true
    }

    /// Basis of `{x : row . x = 0 for every row}` in `ncols` unknowns, one
    /// vector per free column in increasing order.
    pub fn nullspace(&self, ncols: usize) -> Vec<SparseVec> {
        let mut out = Vec::new();
        for f in 0..ncols {
            if self.rows.contains_key(&f) {
                continue;
            }
            let mut x = SparseVec::new();
            x.insert(f, Q::one());
            for (p, row) in &self.rows {
                if let Some(c) = row.get(&f) {
                    x.insert(*p, -c.clone());
                }
            }
            out.push(x);
        }
        out
    }
}

pub fn rank_of<'a>(vs: impl IntoIterator<Item = &'a SparseVec>) -> usize {
    let mut e = Echelon::new();
    for v in vs {
        e.insert(v);
    }
    e.rank()
}

/// Equality of the spans of two families of vectors.
pub fn same_span(a: &[SparseVec], b: &[SparseVec]) -> bool {
    let mut ea = Echelon::new();
    a.iter().for_each(|v| {
        ea.insert(v);
    });
    let mut eb = Echelon::new();
    b.iter().for_each(|v| {
        eb.insert(v);
    });
    ea.rank() == eb.rank() && b.iter().all(|v| ea.contains(v))
}

pub fn dot(a: &SparseVec, b: &SparseVec) -> Q {
    let (small, big) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    small.iter().filter_map(|(k, v)| big.get(k).map(|w| v * w)).fold(Q::zero(), |acc, x| acc + x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q;

    fn v(entries: &[(usize, i64)]) -> SparseVec {
        entries.iter().map(|&(k, x)| (k, q(x))).collect()
    }

    #[test]
    fn rank_and_nullspace() {
        let mut e = Echelon::new();
        assert!(e.insert(&v(&[(0, 1), (1, 2)])));
        assert!(e.insert(&v(&[(1, 1), (2, 1)])));
        assert!(!e.insert(&v(&[(0, 1), (1, 3), (2, 1)])));
        assert_eq!(e.rank(), 2);
        let ns = e.nullspace(3);
        assert_eq!(ns.len(), 1);
        for (_, row) in e.rows() {
            assert!(dot(row, &ns[0]).is_zero());
        }
        assert_eq!(ns[0], v(&[(0, 2), (1, -1), (2, 1)]));
    }

    #[test]
    fn spans() {
        let a = vec![v(&[(0, 1)]), v(&[(1, 1)])];
        let b = vec![v(&[(0, 1), (1, 1)]), v(&[(0, 1), (1, -1)])];
        assert!(same_span(&a, &b));
        assert!(!same_span(&a, &b[..1]));
    }
}
