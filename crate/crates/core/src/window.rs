//! Finite windows onto ∏_i k((t_i)) and Q-spans of tuples inside them.
//!
//! A module M of tuples is represented by its projection onto exponents
//! `[low, high)` together with per-branch tails: `tails[i]` certifies that
//! every monomial tuple t^e·e_i with e >= tails[i] lies in M. Saturating the
//! window span with those tail monomials makes three things sound at once:
//! membership (drop the part above the window, it is in M anyway), span
//! equality (canonical RREF), and colength (rank difference).

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::linalg::{Echelon, Row};
use crate::series::{LaurentSeries, Q};

/// Column identity: (exponent, branch). Exponent-major order keeps the
/// pivot structure aligned with the order filtration.
pub type Col = (i64, usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Window {
    pub low: i64,
    /// exclusive
    pub high: i64,
}

impl Window {
    pub fn new(low: i64, high: i64) -> Self {
        assert!(low <= high, "window bounds out of order");
        Window { low, high }
    }

    pub fn len(&self) -> i64 {
        self.high - self.low
    }

    pub fn is_empty(&self) -> bool {
        self.low == self.high
    }

    pub fn contains_exp(&self, e: i64) -> bool {
        self.low <= e && e < self.high
    }
}

#[derive(Clone, Debug)]
pub struct LatticeBasis {
    s: usize,
    window: Window,
    tails: Vec<i64>,
    ech: Echelon<Col>,
}

impl LatticeBasis {
    /// Start a basis holding only the tail module.
    pub fn new(s: usize, window: Window, tails: Vec<i64>) -> Self {
        assert_eq!(tails.len(), s);
        for (i, &t) in tails.iter().enumerate() {
            assert!(
                t <= window.high,
                "tail {t} of branch {i} exceeds window top {}",
                window.high
            );
        }
        let mut ech = Echelon::new();
        for (i, &t) in tails.iter().enumerate() {
            for e in t..window.high {
                ech.insert(Row::from([((e, i), Q::from_integer(1.into()))]));
            }
        }
        LatticeBasis {
            s,
            window,
            tails,
            ech,
        }
    }

    pub fn branches(&self) -> usize {
        self.s
    }

    pub fn window(&self) -> Window {
        self.window
    }

    pub fn tails(&self) -> &[i64] {
        &self.tails
    }

    pub fn rank(&self) -> usize {
        self.ech.rank()
    }

    /// Project a tuple onto the window. Support below the window is an
    /// error; support above it is dropped (covered by the tails); every
    /// coordinate must be known through the window top.
    pub fn project_tuple(&self, tuple: &[LaurentSeries]) -> Result<Row<Col>> {
        if tuple.len() != self.s {
            return Err(Error::Window(format!(
                "tuple has {} coordinates, lattice has {} branches",
                tuple.len(),
                self.s
            )));
        }
        let mut row = Row::new();
        for (i, x) in tuple.iter().enumerate() {
            if !x.prec().at_least(self.window.high) {
                let have = match x.prec() {
                    crate::series::Prec::At(p) => p,
                    crate::series::Prec::Exact => unreachable!(),
                };
                return Err(Error::InsufficientPrecision {
                    needed: self.window.high,
                    have,
                });
            }
            for (e, c) in x.terms() {
                if e < self.window.low {
                    return Err(Error::Window(format!(
                        "branch {i} has exponent {e} below window floor {}",
                        self.window.low
                    )));
                }
                if e < self.window.high {
                    row.insert((e, i), c.clone());
                }
            }
        }
        Ok(row)
    }

    /// Insert a module element. Returns true if the visible span grew.
    pub fn insert_tuple(&mut self, tuple: &[LaurentSeries]) -> Result<bool> {
        let row = self.project_tuple(tuple)?;
        Ok(self.ech.insert(row).is_some())
    }

    pub fn insert_row(&mut self, row: Row<Col>) -> bool {
        self.ech.insert(row).is_some()
    }

    pub fn contains_tuple(&self, tuple: &[LaurentSeries]) -> Result<bool> {
        let row = self.project_tuple(tuple)?;
        Ok(self.ech.contains(row))
    }

    /// Membership with the pivot combination that witnesses it.
    pub fn contains_with_certificate(
        &self,
        tuple: &[LaurentSeries],
    ) -> Result<Option<Vec<(Col, Q)>>> {
        let row = self.project_tuple(tuple)?;
        let (residue, cert) = self.ech.reduce_with_certificate(row);
        Ok(if residue.is_empty() { Some(cert) } else { None })
    }

    pub fn reduce(&self, row: Row<Col>) -> Row<Col> {
        self.ech.reduce(row)
    }

    pub fn rows(&self) -> impl Iterator<Item = &Row<Col>> {
        self.ech.rows()
    }

    /// Smallest exponent carried by branch i across the span, i.e. the
    /// minimal i-th valuation over the module (combinations only raise it).
    pub fn min_order(&self, i: usize) -> Option<i64> {
        self.ech
            .rows()
            .filter_map(|r| r.keys().find(|(_, b)| *b == i).map(|&(e, _)| e))
            .min()
    }

    /// Number of pivots at each exponent; the dimensions of the graded
    /// pieces of the order filtration within the window.
    pub fn dims_by_exponent(&self) -> BTreeMap<i64, usize> {
        let mut out = BTreeMap::new();
        for &(e, _) in self.ech.pivots() {
            *out.entry(e).or_insert(0) += 1;
        }
        out
    }

    pub fn pivots(&self) -> impl Iterator<Item = &Col> {
        self.ech.pivots()
    }

    /// Same span over the same window. With both sides saturated this is
    /// exact module equality below the common tails.
    pub fn same_span(&self, other: &LatticeBasis) -> bool {
        self.s == other.s && self.window == other.window && self.ech == other.ech
    }

    /// All of self's rows lie in other (same window required).
    pub fn contained_in(&self, other: &LatticeBasis) -> Result<bool> {
        if self.s != other.s || self.window != other.window {
            return Err(Error::Window(
                "containment needs matching windows".to_string(),
            ));
        }
        Ok(self.ech.rows().all(|r| other.ech.contains(r.clone())))
    }

    /// dim(other / self) for self ⊆ other, as a rank difference. Valid
    /// because both spans are saturated above their tails.
    pub fn colength_in(&self, other: &LatticeBasis) -> Result<u64> {
        if !self.contained_in(other)? {
            return Err(Error::NotIncluded(
                "colength of a non-submodule".to_string(),
            ));
        }
        Ok((other.rank() - self.rank()) as u64)
    }

    /// Reproject onto a smaller window (used to compare a run against the
    /// same run at doubled precision).
    pub fn restrict(&self, window: Window, tails: Vec<i64>) -> LatticeBasis {
        assert!(window.low >= self.window.low && window.high <= self.window.high);
        let mut out = LatticeBasis::new(self.s, window, tails);
        for r in self.ech.rows() {
            let proj: Row<Col> = r
                .iter()
                .filter(|((e, _), _)| window.contains_exp(*e))
                .map(|(c, v)| (*c, v.clone()))
                .collect();
            out.ech.insert(proj);
        }
        out
    }
}

pub fn tuple_mul(a: &[LaurentSeries], b: &[LaurentSeries]) -> Vec<LaurentSeries> {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x.mul(y)).collect()
}

pub fn tuple_add(a: &[LaurentSeries], b: &[LaurentSeries]) -> Vec<LaurentSeries> {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x.add(y)).collect()
}

pub fn tuple_scale(a: &[LaurentSeries], c: &Q) -> Vec<LaurentSeries> {
    a.iter().map(|x| x.scale(c)).collect()
}

pub fn tuple_truncate(a: &[LaurentSeries], p: i64) -> Vec<LaurentSeries> {
    a.iter().map(|x| x.truncate(p)).collect()
}

/// Solve for all Q-combinations x = Σ a_j · gens[j] such that for every
/// constraint (map, target): map(x) ∈ target. Maps are Q-linear on tuples.
/// Returns the coefficient vectors of a basis of the solution space.
pub fn membership_kernel(
    gens: &[Vec<LaurentSeries>],
    constraints: &[(
        &dyn Fn(&[LaurentSeries]) -> Result<Vec<LaurentSeries>>,
        &LatticeBasis,
    )],
) -> Result<Vec<Vec<Q>>> {
    let m = gens.len();
    // Residue of map(gen) modulo each target is linear in the generator, so
    // each window column of each target yields one linear condition.
    let mut rows: Vec<Row<usize>> = Vec::new();
    for (map, target) in constraints {
        let mut residues: Vec<Row<Col>> = Vec::with_capacity(m);
        for g in gens {
            let img = map(g)?;
            let row = target.project_tuple(&img)?;
            residues.push(target.reduce(row));
        }
        // Transpose: one constraint row per column appearing in a residue.
        let mut by_col: BTreeMap<Col, Row<usize>> = BTreeMap::new();
        for (j, res) in residues.iter().enumerate() {
            for (col, v) in res {
                by_col.entry(*col).or_default().insert(j, v.clone());
            }
        }
        rows.extend(by_col.into_values());
    }
    Ok(crate::linalg::kernel_basis(&rows, m))
}
