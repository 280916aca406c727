//! Sparse Q-linear algebra over an ordered column set.
//!
//! `Echelon` maintains a fully reduced row echelon basis incrementally:
//! every row has leading coefficient 1 at its pivot and no other pivot
//! column appears in any row. For a fixed column order that form is unique,
//! so two spans are equal iff their `Echelon` rows are identical, no matter
//! in which order generators were inserted.

use num_traits::{One, Zero};
use std::collections::BTreeMap;

use crate::series::Q;

pub type Row<C> = BTreeMap<C, Q>;

#[derive(Clone, Debug)]
pub struct Echelon<C: Ord + Clone> {
    rows: BTreeMap<C, Row<C>>,
}

impl<C: Ord + Clone> Default for Echelon<C> {
    fn default() -> Self {
        Echelon {
            rows: BTreeMap::new(),
        }
    }
}

impl<C: Ord + Clone> Echelon<C> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = &C> {
        self.rows.keys()
    }

    /// Rows in pivot order; this sequence is the canonical basis of the span.
    pub fn rows(&self) -> impl Iterator<Item = &Row<C>> {
        self.rows.values()
    }

    /// Residue of `row` modulo the span. Empty residue means membership.
    pub fn reduce(&self, mut row: Row<C>) -> Row<C> {
        // Rows contain no foreign pivot columns, so a single sweep over the
        // pivots initially present in `row` is complete.
        let hits: Vec<C> = row
            .keys()
            .filter(|c| self.rows.contains_key(*c))
            .cloned()
            .collect();
        for p in hits {
            let c = match row.get(&p) {
                Some(c) if !c.is_zero() => c.clone(),
                _ => continue,
            };
            let r = &self.rows[&p];
            for (col, v) in r {
                let e = row.entry(col.clone()).or_insert_with(Q::zero);
                *e -= &c * v;
            }
            row.retain(|_, v| !v.is_zero());
        }
        row
    }

    /// Like `reduce`, but also returns the coefficient taken of each pivot
    /// row, i.e. a certificate when the residue comes back empty.
    pub fn reduce_with_certificate(&self, mut row: Row<C>) -> (Row<C>, Vec<(C, Q)>) {
        let hits: Vec<C> = row
            .keys()
            .filter(|c| self.rows.contains_key(*c))
            .cloned()
            .collect();
        let mut cert = Vec::new();
        for p in hits {
            let c = match row.get(&p) {
                Some(c) if !c.is_zero() => c.clone(),
                _ => continue,
            };
            let r = &self.rows[&p];
            for (col, v) in r {
                let e = row.entry(col.clone()).or_insert_with(Q::zero);
                *e -= &c * v;
            }
            row.retain(|_, v| !v.is_zero());
            cert.push((p, c));
        }
        (row, cert)
    }

    pub fn contains(&self, row: Row<C>) -> bool {
        self.reduce(row).is_empty()
    }

    /// Insert a vector; returns the new pivot if the rank grew.
    pub fn insert(&mut self, row: Row<C>) -> Option<C> {
        let mut row = self.reduce(row);
        row.retain(|_, v| !v.is_zero());
        let pivot = row.keys().next()?.clone();
        let lead = row[&pivot].clone();
        for v in row.values_mut() {
            *v /= &lead;
        }
        // Back-substitute the fresh pivot out of the older rows.
        for r in self.rows.values_mut() {
            if let Some(c) = r.get(&pivot).cloned() {
                if c.is_zero() {
                    continue;
                }
                for (col, v) in &row {
                    let e = r.entry(col.clone()).or_insert_with(Q::zero);
                    *e -= &c * v;
                }
                r.retain(|_, v| !v.is_zero());
            }
        }
        self.rows.insert(pivot.clone(), row);
        Some(pivot)
    }
}

impl<C: Ord + Clone> PartialEq for Echelon<C> {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows
    }
}
impl<C: Ord + Clone> Eq for Echelon<C> {}

/// Basis of the solution space of `constraints · x = 0` for unknowns
/// `0..m`. Basis vectors are produced one per free unknown, in increasing
/// unknown order, which makes the output deterministic.
pub fn kernel_basis(constraints: &[Row<usize>], m: usize) -> Vec<Vec<Q>> {
    let mut ech: Echelon<usize> = Echelon::new();
    for c in constraints {
        ech.insert(c.clone());
    }
    let pivots: Vec<usize> = ech.pivots().copied().collect();
    let mut out = Vec::new();
    for f in 0..m {
        if pivots.binary_search(&f).is_ok() {
            continue;
        }
        let mut x = vec![Q::zero(); m];
        x[f] = Q::one();
        for row in ech.rows() {
            let p = *row.keys().next().expect("nonempty row");
            if let Some(c) = row.get(&f) {
                x[p] = -c.clone();
            }
        }
        out.push(x);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::qi;

    fn row(pairs: &[(usize, i64)]) -> Row<usize> {
        pairs.iter().map(|&(c, v)| (c, qi(v))).collect()
    }

    #[test]
    fn rank_and_membership() {
        let mut e = Echelon::new();
        assert!(e.insert(row(&[(0, 1), (1, 1)])).is_some());
        assert!(e.insert(row(&[(1, 1), (2, 1)])).is_some());
        assert!(e.insert(row(&[(0, 1), (2, -1)])).is_none()); // dependent
        assert_eq!(e.rank(), 2);
        assert!(e.contains(row(&[(0, 2), (1, 1), (2, -1)])));
        assert!(!e.contains(row(&[(0, 1)])));
    }

    #[test]
    fn canonical_form_is_insertion_order_independent() {
        let gens = [
            row(&[(0, 2), (1, 4), (3, 2)]),
            row(&[(1, 1), (2, 5)]),
            row(&[(0, 1), (2, 7), (3, 1)]),
        ];
        let mut a = Echelon::new();
        for g in &gens {
            a.insert(g.clone());
        }
        let mut b = Echelon::new();
        for g in gens.iter().rev() {
            b.insert(g.clone());
        }
        assert_eq!(a, b);
    }

    #[test]
    fn fully_reduced_rows_have_no_foreign_pivots() {
        let mut e = Echelon::new();
        e.insert(row(&[(0, 1), (1, 1), (2, 1)]));
        e.insert(row(&[(1, 1), (2, 3)]));
        let pivots: Vec<usize> = e.pivots().copied().collect();
        for r in e.rows() {
            let own = *r.keys().next().unwrap();
            for p in &pivots {
                if *p != own {
                    assert!(!r.contains_key(p));
                }
            }
        }
    }

    #[test]
    fn certificate_reconstructs_the_vector() {
        let mut e = Echelon::new();
        e.insert(row(&[(0, 1), (1, 2)]));
        e.insert(row(&[(1, 1), (2, 1)]));
        let target = row(&[(0, 3), (1, 7), (2, 1)]);
        let (res, cert) = e.reduce_with_certificate(target.clone());
        assert!(res.is_empty());
        let mut rebuilt: Row<usize> = Row::new();
        for (p, c) in &cert {
            let r = e.rows().find(|r| r.keys().next().unwrap() == p).unwrap();
            for (col, v) in r {
                let entry = rebuilt.entry(*col).or_insert_with(num_traits::Zero::zero);
                *entry += c * v;
            }
        }
        rebuilt.retain(|_, v| !num_traits::Zero::is_zero(v));
        assert_eq!(rebuilt, target);
    }

    #[test]
    fn kernel_of_chain_conditions() {
        // x0 + x1 = 0, x1 + x2 = 0 -> kernel spanned by (1, -1, 1)
        let cons = vec![row(&[(0, 1), (1, 1)]), row(&[(1, 1), (2, 1)])];
        let k = kernel_basis(&cons, 3);
        assert_eq!(k.len(), 1);
        assert_eq!(k[0], vec![qi(1), qi(-1), qi(1)]);
    }

    #[test]
    fn kernel_with_no_constraints_is_identity() {
        let k = kernel_basis(&[], 2);
        assert_eq!(k.len(), 2);
        assert_eq!(k[0], vec![qi(1), qi(0)]);
        assert_eq!(k[1], vec![qi(0), qi(1)]);
    }
}
