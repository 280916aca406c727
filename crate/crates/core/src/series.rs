//! Laurent series in one variable over exact rationals, with explicit precision.
//!
//! A series carries either `Prec::Exact` (every omitted exponent has
//! coefficient zero) or `Prec::At(p)` (coefficients are stored for all
//! exponents `< p`; beyond that nothing is claimed). Every operation
//! propagates the weakest honest precision rather than guessing.

use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};

/// Exact rational scalar used throughout.
pub type Q = num_rational::BigRational;

pub fn q(n: i64, d: i64) -> Q {
    Q::new(n.into(), d.into())
}

pub fn qi(n: i64) -> Q {
    Q::from_integer(n.into())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Prec {
    /// All nonzero coefficients are stored.
    Exact,
    /// Coefficients known exactly for exponents strictly below this.
    At(i64),
}

impl Prec {
    pub fn min(self, other: Prec) -> Prec {
        match (self, other) {
            (Prec::Exact, p) | (p, Prec::Exact) => p,
            (Prec::At(a), Prec::At(b)) => Prec::At(a.min(b)),
        }
    }

    /// Shift by an exponent offset, as under multiplication by t^k.
    pub fn shift(self, k: i64) -> Prec {
        match self {
            Prec::Exact => Prec::Exact,
            Prec::At(p) => Prec::At(p.saturating_add(k)),
        }
    }

    pub fn at_least(self, p: i64) -> bool {
        match self {
            Prec::Exact => true,
            Prec::At(q) => q >= p,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentSeries {
    /// exponent -> nonzero coefficient; exponents >= prec never stored.
    terms: BTreeMap<i64, Q>,
    prec: Prec,
}

impl LaurentSeries {
    pub fn new(terms: BTreeMap<i64, Q>, prec: Prec) -> Self {
        let mut s = LaurentSeries { terms, prec };
        s.normalize();
        s
    }

    fn normalize(&mut self) {
        self.terms.retain(|_, c| !c.is_zero());
        if let Prec::At(p) = self.prec {
            self.terms.retain(|&k, _| k < p);
        }
    }

    pub fn zero(prec: Prec) -> Self {
        LaurentSeries {
            terms: BTreeMap::new(),
            prec,
        }
    }

    pub fn exact_zero() -> Self {
        Self::zero(Prec::Exact)
    }

    pub fn monomial(c: Q, k: i64) -> Self {
        Self::new(BTreeMap::from([(k, c)]), Prec::Exact)
    }

    pub fn one() -> Self {
        Self::monomial(Q::one(), 0)
    }

    pub fn prec(&self) -> Prec {
        self.prec
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Q)> {
        self.terms.iter().map(|(&k, c)| (k, c))
    }

    pub fn coeff(&self, k: i64) -> Q {
        self.terms.get(&k).cloned().unwrap_or_else(Q::zero)
    }

    /// Smallest exponent with a nonzero stored coefficient.
    pub fn ord(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    /// Lower bound on the valuation: the order if a term is visible,
    /// otherwise the precision horizon. `None` means exactly zero.
    pub fn val_lower_bound(&self) -> Option<i64> {
        match self.ord() {
            Some(v) => Some(v),
            None => match self.prec {
                Prec::Exact => None,
                Prec::At(p) => Some(p),
            },
        }
    }

    /// No stored terms. With finite precision this only means
    /// "zero as far as we can see".
    pub fn is_zero_within_prec(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_exactly_zero(&self) -> bool {
        self.terms.is_empty() && self.prec == Prec::Exact
    }

    pub fn truncate(&self, p: i64) -> Self {
        let mut s = self.clone();
        s.prec = s.prec.min(Prec::At(p));
        s.normalize();
        s
    }

    pub fn add(&self, other: &Self) -> Self {
        let prec = self.prec.min(other.prec);
        let mut terms = self.terms.clone();
        for (&k, c) in &other.terms {
            let e = terms.entry(k).or_insert_with(Q::zero);
            *e += c;
        }
        Self::new(terms, prec)
    }

    pub fn neg(&self) -> Self {
        let terms = self.terms.iter().map(|(&k, c)| (k, -c.clone())).collect();
        LaurentSeries {
            terms,
            prec: self.prec,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            // Scaling kills the visible terms but not the uncertainty horizon.
            return Self::zero(self.prec);
        }
        let terms = self.terms.iter().map(|(&k, v)| (k, v * c)).collect();
        LaurentSeries {
            terms,
            prec: self.prec,
        }
    }

    pub fn shift(&self, k: i64) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(&e, c)| (e + k, c.clone()))
            .collect();
        LaurentSeries {
            terms,
            prec: self.prec.shift(k),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        // Eager zero: an exact zero annihilates regardless of the other factor.
        if self.is_exactly_zero() || other.is_exactly_zero() {
            return Self::exact_zero();
        }
        let prec = match (self.prec, other.prec) {
            (Prec::Exact, Prec::Exact) => Prec::Exact,
            _ => {
                // prec(ab) = min(prec_a + v_b, prec_b + v_a) with v the
                // valuation lower bound of the other factor.
                let va = self.val_lower_bound().expect("nonzero by guard");
                let vb = other.val_lower_bound().expect("nonzero by guard");
                self.prec.shift(vb).min(other.prec.shift(va))
            }
        };
        let mut terms: BTreeMap<i64, Q> = BTreeMap::new();
        for (&ka, ca) in &self.terms {
            for (&kb, cb) in &other.terms {
                let e = terms.entry(ka + kb).or_insert_with(Q::zero);
                *e += ca * cb;
            }
        }
        Self::new(terms, prec)
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Formal derivative d/dt. Finite precision drops by one.
    pub fn derivative(&self) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(&k, _)| k != 0)
            .map(|(&k, c)| (k - 1, c * qi(k)))
            .collect();
        Self::new(
            terms,
            match self.prec {
                Prec::Exact => Prec::Exact,
                Prec::At(p) => Prec::At(p - 1),
            },
        )
    }

    /// Multiplicative inverse. For a series of valuation v known at At(p),
    /// the inverse is honest at At(p - 2v). Exact input must be a single
    /// monomial; anything longer has an infinite inverse expansion and the
    /// caller is expected to truncate first.
    pub fn invert(&self) -> Result<Self> {
        let v = match self.ord() {
            Some(v) => v,
            None => return Err(Error::NotInvertible),
        };
        match self.prec {
            Prec::Exact => {
                if self.terms.len() == 1 {
                    let c = self.coeff(v);
                    Ok(Self::monomial(c.recip(), -v))
                } else {
                    Err(Error::InverseNotFinite)
                }
            }
            Prec::At(p) => {
                let u = self.shift(-v); // unit, known at At(p - v)
                let n = p - v; // coefficients of u^{-1} to produce: exponents 0..n
                if n <= 0 {
                    return Err(Error::InsufficientPrecision { needed: v + 1, have: p });
                }
                let u0 = u.coeff(0);
                let mut inv: BTreeMap<i64, Q> = BTreeMap::new();
                for k in 0..n {
                    // u * u^{-1} = 1 coefficient by coefficient.
                    let mut acc = if k == 0 { Q::one() } else { Q::zero() };
                    for (j, c) in inv.iter() {
                        acc -= u.coeff(k - j) * c;
                    }
                    let ck = acc / &u0;
                    if !ck.is_zero() {
                        inv.insert(k, ck);
                    }
                }
                Ok(Self::new(inv, Prec::At(n)).shift(-v))
            }
        }
    }

    /// Equality of every coefficient below the joint precision horizon.
    pub fn agrees_with(&self, other: &Self) -> bool {
        let horizon = self.prec.min(other.prec);
        let keys: std::collections::BTreeSet<i64> = self
            .terms
            .keys()
            .chain(other.terms.keys())
            .copied()
            .collect();
        keys.into_iter().all(|k| {
            if let Prec::At(p) = horizon {
                if k >= p {
                    return true;
                }
            }
            self.coeff(k) == other.coeff(k)
        })
    }
}

impl fmt::Display for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in &self.terms {
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let a = c.abs();
            let unit_coeff = a.is_one();
            match (*k, unit_coeff) {
                (0, _) => write!(f, "{a}")?,
                (1, true) => write!(f, "t")?,
                (1, false) => write!(f, "{a}*t")?,
                (_, true) => write!(f, "t^{k}")?,
                (_, false) => write!(f, "{a}*t^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        if let Prec::At(p) = self.prec {
            write!(f, " + O(t^{p})")?;
        }
        Ok(())
    }
}
