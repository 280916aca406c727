//! Assembled invariants for a curve germ, the three simple normal
//! crossing routes, and the branch-subset sweep.
//!
//! The three routes decide the same property through different theory:
//! the residue module route (σ⁰ against the normalization) is always
//! available; the Jacobian-equals-conductor route needs a complete
//! intersection; the derivation route needs a Gorenstein germ. When the
//! applicable routes disagree the computation is broken somewhere, and
//! the disagreement is an error, never a report.

use std::sync::Arc;

use crate::differentials::{
    conductor_derivation_condition, conductor_shift_holds, lambda_and_h1, regular_forms, sigma0,
    sigma0_differentials_holomorphic,
};
use crate::error::{Error, Result};
use crate::ideal::{gorenstein, FracIdeal};
use crate::ring::CurveRing;

#[derive(Clone, Debug)]
pub struct InvariantRecord {
    pub label: String,
    pub branches: usize,
    pub multiplicity: i64,
    pub delta: u64,
    pub conductor: Vec<i64>,
    pub ramification: Vec<i64>,
    /// 2δ - s + 1; the Milnor number when the germ is smoothable.
    pub milnor: i64,
    /// dim σ⁰/A
    pub lambda: u64,
    /// 2δ - λ
    pub h1: i64,
    /// numerical semigroup gaps, single-branch germs only
    pub semigroup_gaps: Option<Vec<i64>>,
    /// accepted stabilization window
    pub window: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RouteVerdicts {
    /// σ⁰ equals the normalization.
    pub residue_module: bool,
    /// Jacobian ideal equals the conductor; None when the germ is not a
    /// complete intersection.
    pub jacobian_conductor: Option<bool>,
    /// Smooth branches and every derivation maps coordinates into the
    /// conductor; None when the germ is not Gorenstein.
    pub derivation: Option<bool>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Flags {
    pub snc: bool,
    pub gorenstein: bool,
    /// delta = s - 1, the seminormality count.
    pub normal_crossing: bool,
    /// normal crossing with at most two branches.
    pub plane_normal_crossing: bool,
    /// every branch smooth
    pub unramified: bool,
    /// curve germs are free divisors in their own right; kept explicit
    /// so reports stay comparable with higher-dimensional conventions.
    pub free: bool,
}

#[derive(Clone, Debug)]
pub struct IdealSummary {
    pub label: String,
    pub min_orders: Vec<i64>,
    pub tails: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PieneReport {
    /// Only complete intersections carry the Jacobian ideal.
    pub applicable: bool,
    pub branches_smooth: bool,
    /// ~A·J = C·I_ram, compared branchwise through minimal orders.
    pub holds: Option<bool>,
}

#[derive(Clone, Debug)]
pub struct Diagnostics {
    pub conductor_shift: bool,
    pub sigma0_differentials_holomorphic: bool,
    pub piene: PieneReport,
}

#[derive(Clone, Debug)]
pub struct SNCReport {
    pub invariants: InvariantRecord,
    pub routes: RouteVerdicts,
    pub flags: Flags,
    pub ideals: Vec<IdealSummary>,
    pub diagnostics: Diagnostics,
}

pub fn milnor(ring: &CurveRing) -> i64 {
    2 * ring.delta() as i64 - ring.s() as i64 + 1
}

fn summarize(ideal: &FracIdeal) -> IdealSummary {
    IdealSummary {
        label: ideal.label().to_string(),
        min_orders: ideal.min_orders(),
        tails: ideal.tails().to_vec(),
    }
}

fn record(ring: &Arc<CurveRing>, lambda: u64, h1: i64) -> InvariantRecord {
    InvariantRecord {
        label: ring.spec().label.clone(),
        branches: ring.s(),
        multiplicity: ring.multiplicity(),
        delta: ring.delta(),
        conductor: ring.conductor().to_vec(),
        ramification: ring.ramification_orders().to_vec(),
        milnor: milnor(ring),
        lambda,
        h1,
        semigroup_gaps: ring.value_semigroup_gaps(),
        window: ring.n_star(),
    }
}

/// Numerical invariants alone, skipping the route machinery.
pub fn invariant_record(ring: &Arc<CurveRing>) -> Result<InvariantRecord> {
    let w1 = regular_forms(ring)?;
    let sg = sigma0(ring, &w1)?;
    let (lambda, h1) = lambda_and_h1(ring, &sg)?;
    Ok(record(ring, lambda, h1))
}

/// The product identity ~A·J = C·I_ram. Both sides are normalization
/// ideals, so branchwise minimal orders decide equality: the check is
/// min_orders(J) = conductor + ramification.
pub fn piene_identity_check(ring: &Arc<CurveRing>) -> Result<PieneReport> {
    let r = ring.ramification_orders();
    let branches_smooth = r.iter().all(|&ri| ri == 0);
    let j = FracIdeal::jacobian_ideal(ring)?;
    match j {
        None => Ok(PieneReport { applicable: false, branches_smooth, holds: None }),
        Some(j) => {
            let lhs = j.min_orders();
            let rhs: Vec<i64> = ring
                .conductor()
                .iter()
                .zip(r)
                .map(|(c, ri)| c + ri)
                .collect();
            Ok(PieneReport {
                applicable: true,
                branches_smooth,
                holds: Some(lhs == rhs),
            })
        }
    }
}

/// Run every applicable route and assemble the full report. Applicable
/// routes that contradict each other abort the analysis.
pub fn snc_check(ring: &Arc<CurveRing>) -> Result<SNCReport> {
    let s = ring.s();
    let tilde = FracIdeal::tilde(ring.clone())?;
    let cond = FracIdeal::conductor_ideal(ring.clone())?;
    let maximal = FracIdeal::maximal_ideal(ring.clone())?;
    let iram = FracIdeal::ramification_ideal(ring.clone())?;
    let w1 = regular_forms(ring)?;
    let sg = sigma0(ring, &w1)?;
    let ders = crate::differentials::derivations(ring)?;

    let residue_module = sg.equals(&tilde)?;
    let j = FracIdeal::jacobian_ideal(ring)?;
    let jacobian_conductor = match &j {
        Some(j) => Some(j.equals(&cond)?),
        None => None,
    };
    let g = gorenstein(ring)?;
    let unramified = ring.ramification_orders().iter().all(|&r| r == 0);
    let derivation = if g {
        Some(unramified && conductor_derivation_condition(ring)?)
    } else {
        None
    };
    for (name, v) in [
        ("jacobian-conductor", jacobian_conductor),
        ("derivation", derivation),
    ] {
        if v.is_some_and(|v| v != residue_module) {
            return Err(Error::RouteDisagreement(format!(
                "residue module route says {residue_module} but the {name} route disagrees on {}",
                ring.spec().label
            )));
        }
    }
    let routes = RouteVerdicts { residue_module, jacobian_conductor, derivation };
    let snc = residue_module;

    let (lambda, h1) = lambda_and_h1(ring, &sg)?;
    let normal_crossing = ring.delta() == s as u64 - 1;
    let flags = Flags {
        snc,
        gorenstein: g,
        normal_crossing,
        plane_normal_crossing: normal_crossing && s <= 2,
        unramified,
        free: true,
    };
    let invariants = record(ring, lambda, h1);
    let mut ideals = vec![
        summarize(&FracIdeal::unit(ring.clone())?),
        summarize(&tilde),
        summarize(&cond),
        summarize(&maximal),
        summarize(&iram),
        summarize(&w1),
        summarize(&sg),
        summarize(&ders),
    ];
    if let Some(j) = &j {
        ideals.push(summarize(j));
    }
    let diagnostics = Diagnostics {
        conductor_shift: conductor_shift_holds(ring, &w1)?,
        sigma0_differentials_holomorphic: sigma0_differentials_holomorphic(ring, &sg)?,
        piene: piene_identity_check(ring)?,
    };
    Ok(SNCReport { invariants, routes, flags, ideals, diagnostics })
}

#[derive(Clone, Debug)]
pub struct SweepEntry {
    pub indices: Vec<usize>,
    pub label: String,
    pub delta: u64,
    pub snc: bool,
}

/// δ and the simple normal crossing verdict for every nonempty branch
/// subset (the full set included). Subsets reuse the parent's
/// stabilization options and always decide by the residue module route.
pub fn subset_sweep(ring: &Arc<CurveRing>, bound: usize) -> Result<Vec<SweepEntry>> {
    let s = ring.s();
    if s > bound {
        return Err(Error::Unsupported(format!(
            "sweep over {s} branches exceeds the bound {bound}"
        )));
    }
    let mut out = Vec::new();
    for mask in 1u64..(1 << s) {
        let indices: Vec<usize> = (0..s).filter(|i| mask >> i & 1 == 1).collect();
        let sub = ring.spec().subcurve(&indices)?;
        let r = CurveRing::analyze(sub, ring.opts())?;
        let w1 = regular_forms(&r)?;
        let sg = sigma0(&r, &w1)?;
        let snc = sg.equals(&FracIdeal::tilde(r.clone())?)?;
        out.push(SweepEntry {
            indices,
            label: r.spec().label.clone(),
            delta: r.delta(),
            snc,
        });
    }
    out.sort_by(|a, b| (a.indices.len(), &a.indices).cmp(&(b.indices.len(), &b.indices)));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::Family;
    use crate::ring::StabilizeOpts;

    fn ring_of(f: Family) -> Arc<CurveRing> {
        CurveRing::analyze(f.generate().unwrap(), StabilizeOpts::default()).unwrap()
    }

    #[test]
    fn node_report_is_fully_positive() {
        let rep = snc_check(&ring_of(Family::Ak(1))).unwrap();
        assert!(rep.flags.snc);
        assert!(rep.flags.gorenstein);
        assert!(rep.flags.normal_crossing);
        assert!(rep.flags.plane_normal_crossing);
        assert!(rep.flags.unramified);
        assert_eq!(rep.routes.jacobian_conductor, Some(true));
        assert_eq!(rep.routes.derivation, Some(true));
        assert_eq!(rep.invariants.milnor, 1);
        assert_eq!(rep.invariants.h1, 1);
        assert!(rep.diagnostics.conductor_shift);
        assert_eq!(rep.diagnostics.piene.holds, Some(true));
    }

    #[test]
    fn cusp_report_is_fully_negative_but_consistent() {
        let rep = snc_check(&ring_of(Family::Ak(2))).unwrap();
        assert!(!rep.flags.snc);
        assert!(rep.flags.gorenstein);
        assert!(!rep.flags.normal_crossing);
        assert!(!rep.flags.unramified);
        assert_eq!(rep.routes.jacobian_conductor, Some(false));
        assert_eq!(rep.routes.derivation, Some(false));
        assert_eq!(rep.invariants.milnor, 2);
        assert_eq!(rep.invariants.semigroup_gaps, Some(vec![1]));
        assert_eq!(rep.diagnostics.piene.holds, Some(true));
        assert!(rep.diagnostics.conductor_shift);
    }

    #[test]
    fn space_axes_lose_the_conditional_routes() {
        let rep = snc_check(&ring_of(Family::Axes(3))).unwrap();
        assert!(rep.flags.snc);
        assert!(!rep.flags.gorenstein);
        assert!(rep.flags.normal_crossing);
        assert!(!rep.flags.plane_normal_crossing);
        assert_eq!(rep.routes.jacobian_conductor, None);
        assert_eq!(rep.routes.derivation, None);
        assert!(!rep.diagnostics.piene.applicable);
    }

    #[test]
    fn tangent_pair_fails_all_three_routes() {
        let rep = snc_check(&ring_of(Family::ContactPair(2))).unwrap();
        assert!(!rep.flags.snc);
        assert!(rep.flags.unramified);
        assert_eq!(rep.routes.jacobian_conductor, Some(false));
        assert_eq!(rep.routes.derivation, Some(false));
        assert_eq!(rep.invariants.lambda, 3);
        assert_eq!(rep.invariants.h1, 1);
        assert_eq!(rep.diagnostics.piene.holds, Some(true));
    }

    #[test]
    fn concurrent_lines_fail_despite_smooth_transverse_pairs() {
        let rep = snc_check(&ring_of(Family::ConcurrentLines(3))).unwrap();
        assert!(!rep.flags.snc);
        assert!(rep.flags.gorenstein);
        assert!(rep.flags.unramified);
        assert!(!rep.flags.normal_crossing);
        assert_eq!(rep.routes.jacobian_conductor, Some(false));
        assert_eq!(rep.routes.derivation, Some(false));
    }

    #[test]
    fn sweep_of_three_lines_is_snc_below_the_top() {
        let ring = ring_of(Family::ConcurrentLines(3));
        let entries = subset_sweep(&ring, 5).unwrap();
        assert_eq!(entries.len(), 7);
        for e in &entries {
            match e.indices.len() {
                1 => {
                    assert_eq!(e.delta, 0);
                    assert!(e.snc);
                }
                2 => {
                    assert_eq!(e.delta, 1);
                    assert!(e.snc);
                }
                3 => {
                    assert_eq!(e.delta, 3);
                    assert!(!e.snc);
                }
                _ => unreachable!(),
            }
        }
        assert!(subset_sweep(&ring, 2).is_err());
    }

    // Axes plus diagonal in 3-space: Gorenstein (even a complete intersection,
    // cut out by x(y-z) and y(x-z)), conductor m^2, yet not seminormal.
    // The residue module picks up exactly one polar direction (1,1,1,-1)/t.
    #[test]
    fn axes_with_diagonal_are_gorenstein_but_not_snc() {
        let ring = ring_of(Family::AxesPlusDiagonal(3));
        let rep = snc_check(&ring).unwrap();
        assert_eq!(ring.s(), 4);
        assert_eq!(ring.delta(), 4);
        assert_eq!(ring.conductor(), &[2, 2, 2, 2]);
        assert!(rep.flags.gorenstein);
        assert!(!rep.flags.snc);
        assert!(!rep.flags.normal_crossing);
        assert!(rep.flags.unramified);
        assert_eq!(rep.routes.jacobian_conductor, Some(false));
        assert_eq!(rep.routes.derivation, Some(false));
        assert_eq!(rep.invariants.lambda, 5);
        assert_eq!(rep.invariants.h1, 3);
        assert_eq!(rep.invariants.milnor, 5);
        assert_eq!(rep.diagnostics.piene.holds, Some(true));
        assert!(rep.diagnostics.conductor_shift);

        let j = FracIdeal::jacobian_ideal(&ring).unwrap().unwrap();
        let unit = FracIdeal::unit(ring.clone()).unwrap();
        let w1 = crate::differentials::regular_forms(&ring).unwrap();
        let sg = crate::differentials::sigma0(&ring, &w1).unwrap();
        assert!(sg.equals(&FracIdeal::quotient(&unit, &j).unwrap()).unwrap());
    }
}
