//! Logarithmic one-forms along a plane curve, their residues on the
//! branches, and the splayedness test for a two-part decomposition.
//!
//! A form is (a dx + b dy)/h with polynomial numerators. Saito's
//! criterion makes logarithmicity checkable branch by branch: the form
//! is logarithmic iff a·h_y - b·h_x vanishes on every branch of h. The
//! residue on a branch is the function a/h_x pulled back there (b/h_y
//! where h_x dies); consistency of the two quotients is forced by the
//! same criterion.

use std::sync::Arc;

use crate::curve::CurveSpec;
use crate::differentials::{regular_forms, sigma0};
use crate::error::{Error, Result};
use crate::ideal::FracIdeal;
use crate::linalg::{kernel_basis, Row};
use crate::poly::Poly;
use crate::ring::CurveRing;
use crate::series::{LaurentSeries, Prec, Q};
use crate::window::{LatticeBasis, Window};

#[derive(Clone, Debug)]
pub struct LogOneForm {
    pub a: Poly,
    pub b: Poly,
}

impl LogOneForm {
    pub fn display_with(&self, vars: &[String]) -> String {
        format!(
            "({}) d{} + ({}) d{}",
            self.a.display_with(vars),
            vars[0],
            self.b.display_with(vars),
            vars[1]
        )
    }
}

fn plane_data<'s>(spec: &'s CurveSpec) -> Result<(&'s Poly, Poly, Poly)> {
    if spec.n() != 2 {
        return Err(Error::Unsupported(
            "logarithmic form analysis needs a plane curve".to_string(),
        ));
    }
    let h = spec.plane_poly.as_ref().ok_or_else(|| {
        Error::Unsupported("logarithmic form analysis needs the defining polynomial".to_string())
    })?;
    Ok((h, h.partial(0), h.partial(1)))
}

/// Saito's criterion on branches: h | a·h_y - b·h_x, tested as vanishing
/// of the pullback on every branch (h is reduced, so the two agree).
/// Truncated branch data that merely looks like zero is refused rather
/// than trusted.
pub fn is_logarithmic(spec: &CurveSpec, form: &LogOneForm) -> Result<bool> {
    let (_, hx, hy) = plane_data(spec)?;
    let g = form.a.mul(&hy).sub(&form.b.mul(&hx));
    for (i, p) in spec.pullback(&g).into_iter().enumerate() {
        if !p.is_zero_within_prec() {
            return Ok(false);
        }
        if !p.is_exactly_zero() && p.prec() != Prec::Exact {
            return Err(Error::Undecidable(format!(
                "saito test on branch {i} vanishes only to the stored precision; \
                 raise the branch precision to decide"
            )));
        }
    }
    Ok(true)
}

/// Residues of a logarithmic form on each branch, as functions of the
/// branch parameter. Poles are legitimate: they are confined by the
/// conductor and always land in σ⁰.
pub fn residues(ring: &Arc<CurveRing>, form: &LogOneForm) -> Result<Vec<LaurentSeries>> {
    let spec = ring.spec();
    let (_, hx, hy) = plane_data(spec)?;
    let pa = spec.pullback(&form.a);
    let pb = spec.pullback(&form.b);
    let phx = spec.pullback(&hx);
    let phy = spec.pullback(&hy);
    let mut out = Vec::with_capacity(ring.s());
    for i in 0..ring.s() {
        let (num, den) = if !phx[i].is_zero_within_prec() {
            (&pa[i], &phx[i])
        } else if !phy[i].is_zero_within_prec() {
            (&pb[i], &phy[i])
        } else {
            return Err(Error::InvalidSpec(format!(
                "both partials of the defining polynomial vanish along branch {i}; \
                 the curve is not reduced"
            )));
        };
        // Cross-multiplied consistency; fails exactly when the form is
        // not logarithmic along this branch.
        let lhs = pa[i].mul(&phy[i]);
        let rhs = pb[i].mul(&phx[i]);
        if !lhs.agrees_with(&rhs) {
            return Err(Error::InvalidSpec(format!(
                "form is not logarithmic along branch {i}: a·h_y and b·h_x pull back differently"
            )));
        }
        if num.is_zero_within_prec() {
            out.push(LaurentSeries::exact_zero());
            continue;
        }
        let v = den.ord().expect("nonzero denominator has an order");
        // Monomial denominators invert exactly; anything else is cut at a
        // horizon generous enough for every later pole-order comparison.
        let inv = if den.prec() == Prec::Exact && den.terms().count() == 1 {
            den.invert()?
        } else {
            let horizon = ring.base().high + 2 * v + 2;
            den.truncate(horizon).invert()?
        };
        out.push(num.mul(&inv));
    }
    Ok(out)
}

/// A residue tuple is weakly holomorphic when it has no pole on any
/// branch, i.e. lies in the normalization.
pub fn weakly_holomorphic(res: &[LaurentSeries]) -> bool {
    res.iter().all(|r| r.ord().map_or(true, |v| v >= 0))
}

/// A-span of residue tuples, padded with the conductor of the
/// normalization (which sits inside the algebra, hence inside any
/// candidate span target such as σ⁰).
pub fn residue_span(
    ring: &Arc<CurveRing>,
    tuples: Vec<Vec<LaurentSeries>>,
) -> Result<FracIdeal> {
    let tails = ring.conductor().to_vec();
    FracIdeal::from_presentation(ring.clone(), "res-span", tuples, tails)
}

/// All logarithmic forms with numerators of total degree at most d, via
/// the exact linear system Saito's criterion imposes on the numerator
/// coefficients. Needs exact (polynomial) branch data.
pub fn log_form_basis(spec: &CurveSpec, d: u32) -> Result<Vec<LogOneForm>> {
    let (_, hx, hy) = plane_data(spec)?;
    for b in &spec.branches {
        for c in &b.coords {
            if c.prec() != Prec::Exact {
                return Err(Error::Unsupported(
                    "log form basis needs exact branch parametrizations".to_string(),
                ));
            }
        }
    }
    let mut monos: Vec<Vec<u32>> = Vec::new();
    for alpha in 0..=d {
        for beta in 0..=d - alpha {
            monos.push(vec![alpha, beta]);
        }
    }
    // Unknowns: numerator coefficients of a then of b. Every branch
    // coefficient of a·h_y - b·h_x gives one linear condition.
    let m = 2 * monos.len();
    let mut rows: std::collections::BTreeMap<(usize, i64), Row<usize>> = Default::default();
    for (k, mono) in monos.iter().enumerate() {
        let base = Poly::monomial(2, mono.clone(), Q::from_integer(1.into()));
        let pa = spec.pullback(&base.mul(&hy));
        let pb = spec.pullback(&base.mul(&hx));
        for (i, series) in pa.iter().enumerate() {
            for (e, c) in series.terms() {
                rows.entry((i, e)).or_default().insert(k, c.clone());
            }
        }
        for (i, series) in pb.iter().enumerate() {
            for (e, c) in series.terms() {
                let slot = rows.entry((i, e)).or_default();
                let cur = slot.remove(&(monos.len() + k)).unwrap_or_else(|| Q::from_integer(0.into()));
                let next = cur - c.clone();
                if !num_traits::Zero::is_zero(&next) {
                    slot.insert(monos.len() + k, next);
                }
            }
        }
    }
    let constraint_rows: Vec<Row<usize>> = rows.into_values().filter(|r| !r.is_empty()).collect();
    let sols = kernel_basis(&constraint_rows, m);
    let forms = sols
        .into_iter()
        .map(|sol| {
            let mut a = Poly::zero(2);
            let mut b = Poly::zero(2);
            for (u, c) in sol.into_iter().enumerate() {
                if num_traits::Zero::is_zero(&c) {
                    continue;
                }
                let mono = Poly::monomial(2, monos[u % monos.len()].clone(), c);
                if u < monos.len() {
                    a = a.add(&mono);
                } else {
                    b = b.add(&mono);
                }
            }
            LogOneForm { a, b }
        })
        .collect();
    Ok(forms)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SplayedReport {
    /// Jacobian criterion: J of the union splits as the twisted sum of
    /// the parts' Jacobians (each twisted by the other part's equation).
    pub splayed: bool,
    /// Whether σ⁰ of the union is the untwisted direct sum of the parts'
    /// σ⁰ modules. Splayedness forces this; the converse fails.
    pub sigma0_splits: bool,
}

/// Decide whether the two parts of the curve are splayed, by comparing
/// the Jacobian of the union with the twisted direct sum of the parts'
/// Jacobians. The twist on a part is the pullback of the complementary
/// part's defining polynomial, so per-branch factors are required.
pub fn splayed(ring: &Arc<CurveRing>, first: &[usize]) -> Result<SplayedReport> {
    let spec = ring.spec();
    let s = ring.s();
    let mut part1: Vec<usize> = first.to_vec();
    part1.sort_unstable();
    part1.dedup();
    if part1.is_empty() || part1.len() == s || part1.iter().any(|&i| i >= s) {
        return Err(Error::InvalidSpec(
            "splayedness needs a proper nonempty set of branch indices".to_string(),
        ));
    }
    let part2: Vec<usize> = (0..s).filter(|i| !part1.contains(i)).collect();
    let poly_of = |part: &[usize]| -> Result<Poly> {
        let mut p = Poly::constant(spec.n(), Q::from_integer(1.into()));
        for &i in part {
            let f = spec.branches[i].factor.as_ref().ok_or_else(|| {
                Error::Unsupported(format!(
                    "splayedness needs the per-branch plane factors (branch {i} has none)"
                ))
            })?;
            p = p.mul(f);
        }
        Ok(p)
    };
    let h1 = poly_of(&part1)?;
    let h2 = poly_of(&part2)?;
    splayed_parts(ring, &part1, &part2, &h1, &h2)
}

/// Same decision with the partition given as a pair of divisors: a branch
/// joins the side whose polynomial vanishes on it, and every branch must
/// lie on exactly one side. Returns the two index sets along with the
/// verdicts.
pub fn splayed_by_polys(
    ring: &Arc<CurveRing>,
    p1: &Poly,
    p2: &Poly,
) -> Result<(Vec<usize>, Vec<usize>, SplayedReport)> {
    let spec = ring.spec();
    let mut part1 = Vec::new();
    let mut part2 = Vec::new();
    for (i, b) in spec.branches.iter().enumerate() {
        let on1 = p1.pullback(&b.coords).is_zero_within_prec();
        let on2 = p2.pullback(&b.coords).is_zero_within_prec();
        match (on1, on2) {
            (true, false) => part1.push(i),
            (false, true) => part2.push(i),
            (true, true) => {
                return Err(Error::InvalidSpec(format!(
                    "branch {i} lies on both partition divisors"
                )))
            }
            (false, false) => {
                return Err(Error::InvalidSpec(format!(
                    "branch {i} lies on neither partition divisor"
                )))
            }
        }
    }
    if part1.is_empty() || part2.is_empty() {
        return Err(Error::InvalidSpec(
            "partition must put at least one branch on each side".to_string(),
        ));
    }
    if let Some(h) = &spec.plane_poly {
        // the two divisors must multiply back to the curve, up to a scalar
        let prod = p1.mul(p2);
        let proportional = match (prod.terms().next(), h.terms().next()) {
            (Some((e, c)), Some(_)) => {
                let hc = h
                    .terms()
                    .find(|(he, _)| *he == e)
                    .map(|(_, hc)| hc.clone());
                match hc {
                    Some(hc) => prod.scale(&hc).sub(&h.scale(c)).is_zero(),
                    None => false,
                }
            }
            _ => false,
        };
        if !proportional {
            return Err(Error::InvalidSpec(
                "partition divisors do not multiply to the curve polynomial".to_string(),
            ));
        }
    }
    let rep = splayed_parts(ring, &part1, &part2, p1, p2)?;
    Ok((part1, part2, rep))
}

fn splayed_parts(
    ring: &Arc<CurveRing>,
    part1: &[usize],
    part2: &[usize],
    h1: &Poly,
    h2: &Poly,
) -> Result<SplayedReport> {
    let spec = ring.spec();
    let part1 = part1.to_vec();
    let part2 = part2.to_vec();
    let mut sub1 = spec.subcurve(&part1)?;
    let mut sub2 = spec.subcurve(&part2)?;
    if spec.n() == 2 {
        // the partition divisors cut out the parts whether or not the
        // branches carry individual factors
        sub1.plane_poly = Some(h1.clone());
        sub2.plane_poly = Some(h2.clone());
    }
    let r1 = CurveRing::analyze(sub1, ring.opts())?;
    let r2 = CurveRing::analyze(sub2, ring.opts())?;

    let j = FracIdeal::jacobian_ideal(ring)?
        .ok_or_else(|| Error::Unsupported("splayedness needs a complete intersection".to_string()))?;
    let j1 = FracIdeal::jacobian_ideal(&r1)?
        .ok_or_else(|| Error::Unsupported("part is not a complete intersection".to_string()))?;
    let j2 = FracIdeal::jacobian_ideal(&r2)?
        .ok_or_else(|| Error::Unsupported("part is not a complete intersection".to_string()))?;
    let full_tw1 = spec.pullback(h2);
    let full_tw2 = spec.pullback(h1);
    let tw1: Vec<LaurentSeries> = part1.iter().map(|&i| full_tw1[i].clone()).collect();
    let tw2: Vec<LaurentSeries> = part2.iter().map(|&i| full_tw2[i].clone()).collect();
    let t1 = j1.scale_by_tuple(&tw1, "twisted J")?;
    let t2 = j2.scale_by_tuple(&tw2, "twisted J")?;
    let splayed = embedded_sum_equals(&j, &[(&t1, &part1), (&t2, &part2)])?;

    let w = regular_forms(ring)?;
    let sg = sigma0(ring, &w)?;
    let w1 = regular_forms(&r1)?;
    let s1 = sigma0(&r1, &w1)?;
    let w2 = regular_forms(&r2)?;
    let s2 = sigma0(&r2, &w2)?;
    let sigma0_splits = embedded_sum_equals(&sg, &[(&s1, &part1), (&s2, &part2)])?;

    Ok(SplayedReport { splayed, sigma0_splits })
}

/// Compare a module over the full curve with a direct sum of modules on
/// complementary branch subsets, each zero-extended to the full tuple.
fn embedded_sum_equals(full: &FracIdeal, parts: &[(&FracIdeal, &[usize])]) -> Result<bool> {
    let s = full.ring().s();
    let mut low = i64::MAX;
    let mut high = i64::MIN;
    let mut tails = vec![i64::MAX; s];
    for i in 0..s {
        let t = full.tails()[i];
        tails[i] = t;
        low = low.min(full.min_order(i));
        high = high.max(t);
    }
    for (part, idx) in parts {
        for (k, &i) in idx.iter().enumerate() {
            let t = part.tails()[k];
            tails[i] = tails[i].min(t);
            low = low.min(part.min_order(k));
            high = high.max(t);
        }
    }
    let window = Window::new(low.min(high), high);
    // The sum's tail certificate on each slot comes from the part living
    // there; the full module's own tails only widen the window.
    let mut sum = LatticeBasis::new(s, window, {
        let mut t = vec![high; s];
        for (part, idx) in parts {
            for (k, &i) in idx.iter().enumerate() {
                t[i] = part.tails()[k].min(high);
            }
        }
        t
    });
    for (part, idx) in parts {
        let span = part.span_at(window)?;
        for row in span.rows() {
            let remapped: Row<crate::window::Col> = row
                .iter()
                .map(|(&(e, k), c)| ((e, idx[k]), c.clone()))
                .collect();
            sum.insert_row(remapped);
        }
    }
    let full_span = full.span_at(window)?;
    Ok(full_span.same_span(&sum))
}
