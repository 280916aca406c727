//! Input data for a reduced curve germ: one parametrized branch per
//! analytic component, optional defining equations, optional plane data.
//!
//! The branch list is the normalization; everything downstream is computed
//! from pullbacks along it. Validation enforces what makes that reading
//! legitimate: coordinates vanish at 0, parametrizations are primitive as
//! far as visible exponents can tell, branches are pairwise distinct, and
//! declared equations actually vanish on every branch.

use num_integer::Integer;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::series::{LaurentSeries, Q};

#[derive(Clone, Debug)]
pub struct Branch {
    pub name: Option<String>,
    /// length n, exponents >= 1
    pub coords: Vec<LaurentSeries>,
    /// plane curves only: the irreducible factor cutting out this branch
    pub factor: Option<Poly>,
}

impl Branch {
    /// min valuation over nonzero coordinates; the branch is smooth iff 1.
    pub fn multiplicity(&self) -> Option<i64> {
        self.coords.iter().filter_map(|c| c.ord()).min()
    }

    pub fn is_smooth(&self) -> bool {
        self.multiplicity() == Some(1)
    }
}

#[derive(Clone, Debug)]
pub struct CurveSpec {
    pub label: String,
    pub vars: Vec<String>,
    pub branches: Vec<Branch>,
    pub equations: Vec<Poly>,
    pub plane_poly: Option<Poly>,
}

impl CurveSpec {
    pub fn n(&self) -> usize {
        self.vars.len()
    }

    pub fn s(&self) -> usize {
        self.branches.len()
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.n();
        if n == 0 {
            return Err(Error::InvalidSpec("no ambient variables".to_string()));
        }
        for v in &self.vars {
            if v.is_empty() {
                return Err(Error::InvalidSpec("empty variable name".to_string()));
            }
            if v == "t" {
                return Err(Error::InvalidSpec(
                    "'t' is the branch parameter, not an ambient variable".to_string(),
                ));
            }
        }
        for (i, v) in self.vars.iter().enumerate() {
            if self.vars[i + 1..].contains(v) {
                return Err(Error::InvalidSpec(format!("variable '{v}' repeats")));
            }
        }
        if self.branches.is_empty() {
            return Err(Error::InvalidSpec("no branches".to_string()));
        }
        for (bi, b) in self.branches.iter().enumerate() {
            if b.coords.len() != n {
                return Err(Error::InvalidSpec(format!(
                    "branch {bi} has {} coordinates for {n} variables",
                    b.coords.len()
                )));
            }
            let mut exps: Vec<i64> = Vec::new();
            for (ci, c) in b.coords.iter().enumerate() {
                if let Some(v) = c.ord() {
                    if v < 1 {
                        return Err(Error::InvalidSpec(format!(
                            "branch {bi} coordinate {ci} has order {v}; germs vanish at the origin"
                        )));
                    }
                }
                exps.extend(c.terms().map(|(e, _)| e));
            }
            if exps.is_empty() {
                return Err(Error::InvalidSpec(format!(
                    "branch {bi} has no visible nonzero coordinate"
                )));
            }
            let g = exps.iter().fold(0i64, |a, &e| a.gcd(&e));
            if g != 1 {
                return Err(Error::InvalidSpec(format!(
                    "branch {bi} parametrization is not primitive (exponent gcd {g})"
                )));
            }
        }
        for i in 0..self.branches.len() {
            for j in i + 1..self.branches.len() {
                let a = &self.branches[i].coords;
                let b = &self.branches[j].coords;
                if a.iter().zip(b).all(|(x, y)| x.agrees_with(y)) {
                    return Err(Error::InvalidSpec(format!(
                        "branches {i} and {j} have identical parametrizations"
                    )));
                }
            }
        }
        for (ei, f) in self.equations.iter().enumerate() {
            if f.nvars() != n {
                return Err(Error::InvalidSpec(format!(
                    "equation {ei} is in {} variables, ambient space has {n}",
                    f.nvars()
                )));
            }
            for (bi, b) in self.branches.iter().enumerate() {
                if !f.pullback(&b.coords).is_zero_within_prec() {
                    return Err(Error::InvalidSpec(format!(
                        "equation {ei} does not vanish on branch {bi}"
                    )));
                }
            }
        }
        if let Some(h) = &self.plane_poly {
            if n != 2 {
                return Err(Error::InvalidSpec(
                    "plane data on a non-plane ambient space".to_string(),
                ));
            }
            if h.nvars() != 2 || h.is_zero() {
                return Err(Error::InvalidSpec("bad plane polynomial".to_string()));
            }
            for (bi, b) in self.branches.iter().enumerate() {
                if !h.pullback(&b.coords).is_zero_within_prec() {
                    return Err(Error::InvalidSpec(format!(
                        "plane polynomial does not vanish on branch {bi}"
                    )));
                }
            }
            // Lowest total degree of h must count every branch with its
            // multiplicity: rejects missing branches and repeated factors.
            let mult_h = h
                .terms()
                .map(|(e, _)| e.iter().sum::<u32>() as i64)
                .min()
                .unwrap();
            let mult_sum: i64 = self
                .branches
                .iter()
                .map(|b| b.multiplicity().unwrap_or(0))
                .sum();
            if mult_h != mult_sum {
                return Err(Error::InvalidSpec(format!(
                    "plane polynomial has multiplicity {mult_h}, branches add up to {mult_sum}"
                )));
            }
        }
        let mut product: Option<Poly> = None;
        for (bi, b) in self.branches.iter().enumerate() {
            if let Some(f) = &b.factor {
                if self.n() != 2 || f.nvars() != 2 {
                    return Err(Error::InvalidSpec(
                        "branch factors belong to plane curves".to_string(),
                    ));
                }
                if !f.pullback(&b.coords).is_zero_within_prec() {
                    return Err(Error::InvalidSpec(format!(
                        "factor of branch {bi} does not vanish on it"
                    )));
                }
                let mf = f
                    .terms()
                    .map(|(e, _)| e.iter().sum::<u32>() as i64)
                    .min()
                    .unwrap_or(0);
                if Some(mf) != b.multiplicity() {
                    return Err(Error::InvalidSpec(format!(
                        "factor of branch {bi} has multiplicity {mf}, branch has {:?}",
                        b.multiplicity()
                    )));
                }
                product = Some(match product {
                    None => f.clone(),
                    Some(p) => p.mul(f),
                });
            }
        }
        if let (Some(h), Some(p)) = (&self.plane_poly, &product) {
            if self.branches.iter().all(|b| b.factor.is_some())
                && !proportional(h, p)
            {
                return Err(Error::InvalidSpec(
                    "branch factors do not multiply to the plane polynomial".to_string(),
                ));
            }
        }
        Ok(())
    }

    /// The germ spanned by a subset of branches. Equations do not restrict
    /// (a union of fewer branches has a bigger ideal), so they are dropped
    /// unless every branch is kept; plane data restricts through the
    /// per-branch factors.
    pub fn subcurve(&self, idx: &[usize]) -> Result<CurveSpec> {
        let mut sorted: Vec<usize> = idx.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != idx.len() || sorted.is_empty() {
            return Err(Error::InvalidSpec(
                "branch subset must be nonempty without repeats".to_string(),
            ));
        }
        if *sorted.last().unwrap() >= self.s() {
            return Err(Error::InvalidSpec(format!(
                "branch index {} out of range (s = {})",
                sorted.last().unwrap(),
                self.s()
            )));
        }
        if sorted.len() == self.s() {
            return Ok(self.clone());
        }
        let branches: Vec<Branch> = sorted.iter().map(|&i| self.branches[i].clone()).collect();
        let plane_poly = if self.n() == 2 && branches.iter().all(|b| b.factor.is_some()) {
            let mut p = Poly::constant(2, Q::from_integer(1.into()));
            for b in &branches {
                p = p.mul(b.factor.as_ref().unwrap());
            }
            Some(p)
        } else {
            None
        };
        let tag: Vec<String> = sorted.iter().map(|i| i.to_string()).collect();
        Ok(CurveSpec {
            label: format!("{}[{}]", self.label, tag.join(",")),
            vars: self.vars.clone(),
            branches,
            equations: Vec::new(),
            plane_poly,
        })
    }

    /// Equations to use for complete intersection routes: the declared ones
    /// when there are exactly n-1, or the plane polynomial for a plane curve
    /// declared without explicit equations.
    pub fn ci_equations(&self) -> Option<Vec<Poly>> {
        if self.n() >= 2 && self.equations.len() == self.n() - 1 {
            return Some(self.equations.clone());
        }
        if self.n() == 2 && self.equations.is_empty() {
            if let Some(h) = &self.plane_poly {
                return Some(vec![h.clone()]);
            }
        }
        None
    }

    /// Pull a polynomial back along every branch at once.
    pub fn pullback(&self, f: &Poly) -> Vec<LaurentSeries> {
        self.branches
            .iter()
            .map(|b| f.pullback(&b.coords))
            .collect()
    }

    /// Largest exponent visible in any branch coordinate.
    pub fn max_coord_exponent(&self) -> i64 {
        self.branches
            .iter()
            .flat_map(|b| b.coords.iter())
            .flat_map(|c| c.terms().map(|(e, _)| e))
            .max()
            .unwrap_or(0)
    }
}

fn proportional(a: &Poly, b: &Poly) -> bool {
    if a.is_zero() || b.is_zero() {
        return a.is_zero() && b.is_zero();
    }
    let (ea, ca) = a.terms().next().unwrap();
    let cb = match b.terms().find(|(e, _)| *e == ea) {
        Some((_, c)) => c,
        None => return false,
    };
    let ratio = cb / ca;
    if ratio.is_zero() {
        return false;
    }
    a.scale(&ratio).sub(b).is_zero()
}
