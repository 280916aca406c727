//! Fractional ideals of the curve algebra.
//!
//! An ideal is carried as (generators, tails, window span). The tails
//! certify that every monomial t^e·e_i with e >= tails[i] belongs to the
//! module; they come from the conductor: g·C sweeps out the full monomial
//! tail above ord_i(g) + c_i on each branch, and finitely generated
//! modules over the complete algebra are closed under the convergent sums
//! that argument needs. Window spans are rebuilt from the presentation
//! whenever two ideals must be compared over a common window.

use std::collections::VecDeque;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::ring::CurveRing;
use crate::series::{qi, LaurentSeries, Q};
use crate::window::{tuple_mul, tuple_truncate, LatticeBasis, Window};

#[derive(Clone)]
pub struct FracIdeal {
    ring: Arc<CurveRing>,
    label: String,
    gens: Vec<Vec<LaurentSeries>>,
    tails: Vec<i64>,
    window: Window,
    lattice: LatticeBasis,
}

impl std::fmt::Debug for FracIdeal {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FracIdeal")
            .field("label", &self.label)
            .field("gens", &self.gens.len())
            .field("tails", &self.tails)
            .field("window", &self.window)
            .finish()
    }
}

fn monomial_tuple(s: usize, i: usize, e: i64) -> Vec<LaurentSeries> {
    let mut t = vec![LaurentSeries::exact_zero(); s];
    t[i] = LaurentSeries::monomial(qi(1), e);
    t
}

impl FracIdeal {
    /// A-module span of `gens` plus the tail monomials, projected onto the
    /// window: worklist closure under multiplication by the algebra
    /// generators, exactly as for the algebra itself.
    pub(crate) fn span_at(&self, window: Window) -> Result<LatticeBasis> {
        span_of(&self.ring, &self.gens, &self.tails, window)
    }

    pub fn from_presentation(
        ring: Arc<CurveRing>,
        label: impl Into<String>,
        gens: Vec<Vec<LaurentSeries>>,
        tails: Vec<i64>,
    ) -> Result<FracIdeal> {
        let s = ring.s();
        let gens: Vec<Vec<LaurentSeries>> = gens
            .into_iter()
            .filter(|g| g.iter().any(|x| !x.is_zero_within_prec()))
            .collect();
        for g in &gens {
            if g.len() != s {
                return Err(Error::InvalidSpec(format!(
                    "generator has {} coordinates for {s} branches",
                    g.len()
                )));
            }
        }
        if gens.is_empty() && tails.iter().all(|&t| t == i64::MAX) {
            return Err(Error::InvalidSpec("zero ideal".to_string()));
        }
        let mut low = i64::MAX;
        for i in 0..s {
            let mut floor = tails[i];
            for g in &gens {
                if let Some(v) = g[i].val_lower_bound() {
                    floor = floor.min(v);
                }
            }
            low = low.min(floor);
        }
        let high = tails.iter().copied().max().unwrap().max(low);
        let window = Window::new(low.min(high), high);
        let mut ideal = FracIdeal {
            ring,
            label: label.into(),
            gens,
            tails,
            window,
            lattice: LatticeBasis::new(s, window, vec![high; s]),
        };
        ideal.lattice = ideal.span_at(window)?;
        Ok(ideal)
    }

    /// Ideal generated over A by the given tuples; tails derived through
    /// the conductor.
    pub fn from_generators(
        ring: Arc<CurveRing>,
        label: impl Into<String>,
        gens: Vec<Vec<LaurentSeries>>,
    ) -> Result<FracIdeal> {
        let s = ring.s();
        let c = ring.conductor().to_vec();
        let mut tails = vec![i64::MAX; s];
        for g in &gens {
            for i in 0..s {
                if let Some(v) = g[i].ord() {
                    tails[i] = tails[i].min(v + c[i]);
                }
            }
        }
        // Fractional ideals are commensurable with the normalization, so a
        // branch no generator touches leaves nothing to divide by.
        if let Some(i) = tails.iter().position(|&t| t == i64::MAX) {
            return Err(Error::Unsupported(format!(
                "generators vanish identically on branch {i}; not a fractional ideal"
            )));
        }
        Self::from_presentation(ring, label, gens, tails)
    }

    /// The module ∏ t^{tails_i} k[[t_i]] (an ideal of the normalization).
    pub fn from_tails(
        ring: Arc<CurveRing>,
        label: impl Into<String>,
        tails: Vec<i64>,
    ) -> Result<FracIdeal> {
        Self::from_presentation(ring, label, Vec::new(), tails)
    }

    pub fn unit(ring: Arc<CurveRing>) -> Result<FracIdeal> {
        let s = ring.s();
        let one = vec![vec![LaurentSeries::one(); s]];
        Self::from_generators(ring, "A", one)
    }

    pub fn tilde(ring: Arc<CurveRing>) -> Result<FracIdeal> {
        let s = ring.s();
        Self::from_tails(ring, "~A", vec![0; s])
    }

    pub fn conductor_ideal(ring: Arc<CurveRing>) -> Result<FracIdeal> {
        let tails = ring.conductor().to_vec();
        Self::from_tails(ring, "C", tails)
    }

    pub fn maximal_ideal(ring: Arc<CurveRing>) -> Result<FracIdeal> {
        let gens = ring.algebra_generators();
        Self::from_generators(ring, "m", gens)
    }

    /// Ideal of maximal minors of the Jacobian matrix of the complete
    /// intersection equations, pulled back to the normalization. `None`
    /// when the input does not carry n-1 equations.
    pub fn jacobian_ideal(ring: &Arc<CurveRing>) -> Result<Option<FracIdeal>> {
        let eqs = match ring.spec().ci_equations() {
            Some(e) => e,
            None => return Ok(None),
        };
        let n = ring.spec().n();
        let rows: Vec<Vec<Poly>> = eqs
            .iter()
            .map(|f| (0..n).map(|j| f.partial(j)).collect())
            .collect();
        let mut gens = Vec::new();
        for drop in 0..n {
            let minor: Vec<Vec<Poly>> = rows
                .iter()
                .map(|r| {
                    r.iter()
                        .enumerate()
                        .filter(|(j, _)| *j != drop)
                        .map(|(_, p)| p.clone())
                        .collect()
                })
                .collect();
            let d = det(&minor, n);
            if d.is_zero() {
                continue;
            }
            let tuple = ring.spec().pullback(&d);
            if tuple.iter().any(|x| !x.is_zero_within_prec()) {
                gens.push(tuple);
            }
        }
        if gens.is_empty() {
            return Err(Error::Unsupported(
                "jacobian minors all vanish on the curve; the equations do not cut it out transversally anywhere".to_string(),
            ));
        }
        Ok(Some(Self::from_generators(ring.clone(), "J", gens)?))
    }

    /// ∏ t^{r_i} k[[t_i]] with r_i the order of the branch differential.
    pub fn ramification_ideal(ring: Arc<CurveRing>) -> Result<FracIdeal> {
        let tails = ring.ramification_orders().to_vec();
        Self::from_tails(ring, "I_ram", tails)
    }

    pub fn ring(&self) -> &Arc<CurveRing> {
        &self.ring
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn generators(&self) -> &[Vec<LaurentSeries>] {
        &self.gens
    }

    pub fn tails(&self) -> &[i64] {
        &self.tails
    }

    pub fn window(&self) -> Window {
        self.window
    }

    pub fn lattice(&self) -> &LatticeBasis {
        &self.lattice
    }

    /// Minimal valuation the module attains on branch i.
    pub fn min_order(&self, i: usize) -> i64 {
        self.lattice
            .min_order(i)
            .unwrap_or(i64::MAX)
            .min(self.tails[i])
    }

    pub fn min_orders(&self) -> Vec<i64> {
        (0..self.ring.s()).map(|i| self.min_order(i)).collect()
    }

    /// Generators of the module over A: the listed generators plus enough
    /// monomials of the tail (one conductor-length block per branch).
    pub fn module_generators(&self) -> Vec<Vec<LaurentSeries>> {
        let s = self.ring.s();
        let c = self.ring.conductor();
        let mut out = self.gens.clone();
        for i in 0..s {
            for e in self.tails[i]..self.tails[i] + c[i].max(1) {
                out.push(monomial_tuple(s, i, e));
            }
        }
        out
    }

    pub fn contains(&self, tuple: &[LaurentSeries]) -> Result<bool> {
        if tuple.len() != self.ring.s() {
            return Err(Error::Window(
                "tuple and ideal have different branch counts".to_string(),
            ));
        }
        match self.lattice.project_tuple(tuple) {
            Ok(row) => Ok(self.lattice.reduce(row).is_empty()),
            // Support below the module's floor: definitely not a member.
            Err(Error::Window(_)) => Ok(false),
            Err(e) => Err(e),
        }
    }

    fn common_window(&self, other: &FracIdeal) -> Window {
        let low = self.window.low.min(other.window.low);
        let high = self
            .tails
            .iter()
            .chain(other.tails.iter())
            .copied()
            .max()
            .unwrap()
            .max(low);
        Window::new(low, high)
    }

    fn same_ring(&self, other: &FracIdeal) -> Result<()> {
        if Arc::ptr_eq(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    /// Module equality: equal spans over a window wide enough for both
    /// tails (above it both modules hold every monomial).
    pub fn equals(&self, other: &FracIdeal) -> Result<bool> {
        self.same_ring(other)?;
        let w = self.common_window(other);
        Ok(self.span_at(w)?.same_span(&other.span_at(w)?))
    }

    /// other ⊆ self
    pub fn contains_ideal(&self, other: &FracIdeal) -> Result<bool> {
        self.same_ring(other)?;
        let w = self.common_window(other);
        other.span_at(w)?.contained_in(&self.span_at(w)?)
    }

    /// dim(bigger / self); errors if self is not contained in bigger.
    pub fn colength_in(&self, bigger: &FracIdeal) -> Result<u64> {
        self.same_ring(bigger)?;
        let w = self.common_window(bigger);
        self.span_at(w)?.colength_in(&bigger.span_at(w)?)
    }

    /// (num : den) = { x : x·den ⊆ num }, solved as a finite kernel
    /// problem. Candidate monomials run from the forced valuation floor up
    /// to the quotient's tail; solutions are exact Laurent tuples.
    pub fn quotient(num: &FracIdeal, den: &FracIdeal) -> Result<FracIdeal> {
        num.same_ring(den)?;
        let s = num.ring.s();
        let mut cands: Vec<Vec<LaurentSeries>> = Vec::new();
        let mut qtails = Vec::with_capacity(s);
        for i in 0..s {
            let m_den = den.min_order(i);
            let low = num.min_order(i) - m_den;
            let tail = num.tails[i] - m_den;
            qtails.push(tail);
            for e in low..tail {
                cands.push(monomial_tuple(s, i, e));
            }
        }
        let den_gens = den.module_generators();
        let mut constraints: Vec<(
            Box<dyn Fn(&[LaurentSeries]) -> Result<Vec<LaurentSeries>>>,
            &LatticeBasis,
        )> = Vec::new();
        for g in &den_gens {
            let g = g.clone();
            constraints.push((
                Box::new(move |x: &[LaurentSeries]| Ok(tuple_mul(x, &g))),
                &num.lattice,
            ));
        }
        let borrowed: Vec<(
            &dyn Fn(&[LaurentSeries]) -> Result<Vec<LaurentSeries>>,
            &LatticeBasis,
        )> = constraints
            .iter()
            .map(|(f, l)| (f.as_ref() as _, *l))
            .collect();
        let sols = crate::window::membership_kernel(&cands, &borrowed)?;
        let gens = combine(&cands, &sols);
        FracIdeal::from_presentation(
            num.ring.clone(),
            format!("({}:{})", num.label, den.label),
            gens,
            qtails,
        )
    }

    /// Product module, generated by pairwise products of module
    /// generators.
    pub fn product(&self, other: &FracIdeal) -> Result<FracIdeal> {
        self.same_ring(other)?;
        let s = self.ring.s();
        let mut gens = Vec::new();
        for a in self.module_generators() {
            for b in other.module_generators() {
                let p = tuple_mul(&a, &b);
                if p.iter().any(|x| !x.is_zero_within_prec()) {
                    gens.push(p);
                }
            }
        }
        let mut tails = Vec::with_capacity(s);
        for i in 0..s {
            let a = self.tails[i].saturating_add(other.min_order(i));
            let b = other.tails[i].saturating_add(self.min_order(i));
            tails.push(a.min(b));
        }
        FracIdeal::from_presentation(
            self.ring.clone(),
            format!("{}*{}", self.label, other.label),
            gens,
            tails,
        )
    }

    /// g·I for a single tuple g (all coordinates nonzero where I lives).
    pub fn scale_by_tuple(&self, g: &[LaurentSeries], label: impl Into<String>) -> Result<FracIdeal> {
        let s = self.ring.s();
        let gens: Vec<Vec<LaurentSeries>> = self
            .gens
            .iter()
            .map(|x| tuple_mul(x, g))
            .filter(|x| x.iter().any(|c| !c.is_zero_within_prec()))
            .collect();
        let mut tails = Vec::with_capacity(s);
        for i in 0..s {
            match g[i].ord() {
                Some(v) => tails.push(self.tails[i] + v),
                None => {
                    return Err(Error::Unsupported(
                        "scaling tuple vanishes on a branch".to_string(),
                    ))
                }
            }
        }
        FracIdeal::from_presentation(self.ring.clone(), label, gens, tails)
    }
}

fn combine(cands: &[Vec<LaurentSeries>], sols: &[Vec<Q>]) -> Vec<Vec<LaurentSeries>> {
    sols.iter()
        .map(|coeffs| {
            let s = cands.first().map(|c| c.len()).unwrap_or(0);
            let mut acc = vec![LaurentSeries::exact_zero(); s];
            for (c, cand) in coeffs.iter().zip(cands) {
                if !num_traits::Zero::is_zero(c) {
                    for (a, x) in acc.iter_mut().zip(cand) {
                        *a = a.add(&x.scale(c));
                    }
                }
            }
            acc
        })
        .collect()
}

/// Worklist closure shared by every ideal: span of A·gens + tail module
/// within the window.
fn span_of(
    ring: &Arc<CurveRing>,
    gens: &[Vec<LaurentSeries>],
    tails: &[i64],
    window: Window,
) -> Result<LatticeBasis> {
    let s = ring.s();
    let capped: Vec<i64> = tails.iter().map(|&t| t.min(window.high)).collect();
    let mut span = LatticeBasis::new(s, window, capped);
    let alg = ring.algebra_generators();
    let mut queue: VecDeque<Vec<LaurentSeries>> = VecDeque::new();
    for g in gens {
        let g = tuple_truncate(g, window.high);
        if span.insert_tuple(&g)? {
            queue.push_back(g);
        }
    }
    while let Some(r) = queue.pop_front() {
        for g in &alg {
            let p = tuple_truncate(&tuple_mul(&r, g), window.high);
            if span.insert_tuple(&p)? {
                queue.push_back(p);
            }
        }
    }
    Ok(span)
}

fn det(mat: &[Vec<Poly>], nvars: usize) -> Poly {
    let n = mat.len();
    if n == 0 {
        return Poly::constant(nvars, Q::from_integer(1.into()));
    }
    if n == 1 {
        return mat[0][0].clone();
    }
    let mut acc = Poly::zero(nvars);
    for (j, top) in mat[0].iter().enumerate() {
        if top.is_zero() {
            continue;
        }
        let minor: Vec<Vec<Poly>> = mat[1..]
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|(k, _)| *k != j)
                    .map(|(_, p)| p.clone())
                    .collect()
            })
            .collect();
        let term = top.mul(&det(&minor, nvars));
        acc = if j % 2 == 0 {
            acc.add(&term)
        } else {
            acc.sub(&term)
        };
    }
    acc
}

/// Gorenstein test, two independent routes: colength 1 of A inside
/// (A : m), and the conductor identity dim(~A/C) = 2·delta. Disagreement
/// is an internal inconsistency and is reported as such.
pub fn gorenstein(ring: &Arc<CurveRing>) -> Result<bool> {
    if let Some(&hit) = ring.gorenstein_cache.get() {
        return Ok(hit);
    }
    let a = FracIdeal::unit(ring.clone())?;
    let m = FracIdeal::maximal_ideal(ring.clone())?;
    let m_inv = FracIdeal::quotient(&a, &m)?;
    let col = a.colength_in(&m_inv)?;
    let by_dual = col == 1;
    let csum: i64 = ring.conductor().iter().sum();
    let by_conductor = csum == 2 * ring.delta() as i64;
    if by_dual != by_conductor {
        return Err(Error::RouteDisagreement(format!(
            "Gorenstein routes split: colength(A ⊆ (A:m)) = {col}, conductor degree {csum} vs 2·delta = {}",
            2 * ring.delta()
        )));
    }
    let _ = ring.gorenstein_cache.set(by_dual);
    Ok(by_dual)
}
