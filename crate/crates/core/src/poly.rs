//! Multivariate polynomials over Q, just enough for curve equations:
//! ring operations, partial derivatives, and pullback along a branch
//! parametrization.

use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::series::{LaurentSeries, Q};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    n: usize,
    /// exponent vector (length n) -> nonzero coefficient
    terms: BTreeMap<Vec<u32>, Q>,
}

impl Poly {
    pub fn zero(n: usize) -> Self {
        Poly {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(n: usize, c: Q) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(vec![0; n], c);
        }
        Poly { n, terms }
    }

    pub fn var(n: usize, i: usize) -> Self {
        assert!(i < n);
        let mut e = vec![0u32; n];
        e[i] = 1;
        Poly {
            n,
            terms: BTreeMap::from([(e, Q::one())]),
        }
    }

    pub fn monomial(n: usize, exps: Vec<u32>, c: Q) -> Self {
        assert_eq!(exps.len(), n);
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        Poly { n, terms }
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Q)> {
        self.terms.iter()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms
            .keys()
            .map(|e| e.iter().sum::<u32>())
            .max()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            let v = terms.entry(e.clone()).or_insert_with(Q::zero);
            *v += c;
        }
        terms.retain(|_, c| !c.is_zero());
        Poly { n: self.n, terms }
    }

    pub fn neg(&self) -> Self {
        Poly {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), -c.clone()))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Poly::zero(self.n);
        }
        Poly {
            n: self.n,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        let mut terms: BTreeMap<Vec<u32>, Q> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                let v = terms.entry(e).or_insert_with(Q::zero);
                *v += ca * cb;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        Poly { n: self.n, terms }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Poly::constant(self.n, Q::one());
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn partial(&self, i: usize) -> Self {
        assert!(i < self.n);
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[i] -= 1;
            terms.insert(e2, c * Q::from_integer((e[i] as i64).into()));
        }
        Poly { n: self.n, terms }
    }

    /// Substitute x_i = coords[i]. Series powers are cached per variable,
    /// so cost is linear in the largest exponent, not the term count.
    pub fn pullback(&self, coords: &[LaurentSeries]) -> LaurentSeries {
        assert_eq!(coords.len(), self.n);
        let max_exp: Vec<u32> = (0..self.n)
            .map(|i| self.terms.keys().map(|e| e[i]).max().unwrap_or(0))
            .collect();
        let mut powers: Vec<Vec<LaurentSeries>> = Vec::with_capacity(self.n);
        for i in 0..self.n {
            let mut ps = Vec::with_capacity(max_exp[i] as usize + 1);
            ps.push(LaurentSeries::one());
            for k in 1..=max_exp[i] {
                let prev = ps[(k - 1) as usize].clone();
                ps.push(prev.mul(&coords[i]));
            }
            powers.push(ps);
        }
        let mut acc = LaurentSeries::exact_zero();
        for (e, c) in &self.terms {
            let mut term = LaurentSeries::monomial(c.clone(), 0);
            for i in 0..self.n {
                if e[i] > 0 {
                    term = term.mul(&powers[i][e[i] as usize]);
                }
            }
            acc = acc.add(&term);
        }
        acc
    }

    /// Render with the given variable names, terms in the map's
    /// deterministic order.
    pub fn display_with(&self, vars: &[String]) -> String {
        assert_eq!(vars.len(), self.n);
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        let mut first = true;
        for (e, c) in &self.terms {
            if first {
                if c.is_negative() {
                    out.push('-');
                }
                first = false;
            } else if c.is_negative() {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let a = c.abs();
            let mut factors: Vec<String> = Vec::new();
            if !a.is_one() || e.iter().all(|&k| k == 0) {
                factors.push(a.to_string());
            }
            for i in 0..self.n {
                match e[i] {
                    0 => {}
                    1 => factors.push(vars[i].clone()),
                    k => factors.push(format!("{}^{}", vars[i], k)),
                }
            }
            let _ = write!(out, "{}", factors.join("*"));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::{qi, Prec};

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn cusp_equation_vanishes_on_its_branch() {
        // x^3 - y^2 on (t^2, t^3)
        let x = Poly::var(2, 0);
        let y = Poly::var(2, 1);
        let f = x.pow(3).sub(&y.pow(2));
        let coords = vec![
            LaurentSeries::monomial(qi(1), 2),
            LaurentSeries::monomial(qi(1), 3),
        ];
        assert!(f.pullback(&coords).is_exactly_zero());
    }

    #[test]
    fn pullback_tracks_precision() {
        let x = Poly::var(1, 0);
        let f = x.pow(2);
        let c = LaurentSeries::new(
            [(1i64, qi(1))].into_iter().collect(),
            Prec::At(4),
        );
        let p = f.pullback(&[c]);
        assert_eq!(p.prec(), Prec::At(5));
        assert_eq!(p.coeff(2), qi(1));
    }

    #[test]
    fn partials() {
        let x = Poly::var(2, 0);
        let y = Poly::var(2, 1);
        let f = x.pow(3).sub(&y.pow(2)); // fx = 3x^2, fy = -2y
        assert_eq!(f.partial(0), x.pow(2).scale(&qi(3)));
        assert_eq!(f.partial(1), y.scale(&qi(-2)));
    }

    #[test]
    fn display_matches_input_style() {
        let x = Poly::var(2, 0);
        let y = Poly::var(2, 1);
        let f = x.pow(3).sub(&y.pow(2));
        assert_eq!(f.display_with(&names(&["x", "y"])), "-y^2 + x^3");
    }

    #[test]
    fn total_degree_and_zero() {
        let z = Poly::zero(2);
        assert!(z.is_zero());
        assert_eq!(z.total_degree(), None);
        let x = Poly::var(2, 0);
        assert_eq!(x.pow(3).mul(&Poly::var(2, 1)).total_degree(), Some(4));
    }
}
