//! Precision-stabilized curve algebra.
//!
//! The window is doubled until two consecutive passes agree on delta, on
//! the conductor, and on the lattice itself (the wide span projected back
//! equals the narrow one), and the accepted window clears 2·delta plus the
//! largest visible coordinate exponent. The finer pass is kept as the base
//! lattice; wider windows are rebuilt on demand and must reproduce the
//! accepted numbers.

use std::collections::BTreeMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::curve::CurveSpec;
use crate::error::{Error, Result};
use crate::lattice::{build_algebra_window, AlgebraLattice};
use crate::series::{LaurentSeries, Q};
use crate::window::Window;

#[derive(Clone, Copy, Debug)]
pub struct StabilizeOpts {
    pub initial_precision: i64,
    pub max_doublings: u32,
}

impl Default for StabilizeOpts {
    fn default() -> Self {
        StabilizeOpts {
            initial_precision: 8,
            max_doublings: 4,
        }
    }
}

pub struct CurveRing {
    spec: CurveSpec,
    opts: StabilizeOpts,
    /// accepted window top; the base lattice lives at twice this
    n_star: i64,
    base: AlgebraLattice,
    ram: Vec<i64>,
    wider: Mutex<BTreeMap<i64, Arc<AlgebraLattice>>>,
    pub(crate) gorenstein_cache: OnceLock<bool>,
}

impl std::fmt::Debug for CurveRing {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("CurveRing")
            .field("label", &self.spec.label)
            .field("n_star", &self.n_star)
            .field("delta", &self.base.delta)
            .field("conductor", &self.base.conductor)
            .finish()
    }
}

impl CurveRing {
    pub fn analyze(spec: CurveSpec, opts: StabilizeOpts) -> Result<Arc<CurveRing>> {
        spec.validate()?;
        let mut n = opts.initial_precision.max(4);
        let mut prev: Option<AlgebraLattice> = None;
        let mut detail = String::new();
        for _round in 0..=opts.max_doublings {
            match build_algebra_window(&spec, n) {
                Ok(cur) => {
                    if let Some(p) = prev.take() {
                        if accepted(&p, &cur, &spec) {
                            let ram = ramification_orders(&spec);
                            return Ok(Arc::new(CurveRing {
                                spec,
                                opts,
                                n_star: p.high,
                                base: cur,
                                ram,
                                wider: Mutex::new(BTreeMap::new()),
                                gorenstein_cache: OnceLock::new(),
                            }));
                        }
                        detail = format!(
                            "windows {} and {} still disagree (delta {} vs {}, conductor {:?} vs {:?})",
                            p.high, cur.high, p.delta, cur.delta, p.conductor, cur.conductor
                        );
                    }
                    prev = Some(cur);
                }
                Err(e @ (Error::Undecidable(_) | Error::BranchesNotSeparated { .. })) => {
                    detail = e.to_string();
                    prev = None;
                }
                Err(e) => return Err(e),
            }
            n *= 2;
        }
        Err(Error::PrecisionExhausted {
            doublings: opts.max_doublings,
            last: n / 2,
            detail,
        })
    }

    pub fn spec(&self) -> &CurveSpec {
        &self.spec
    }

    pub fn s(&self) -> usize {
        self.spec.s()
    }

    pub fn delta(&self) -> u64 {
        self.base.delta
    }

    pub fn conductor(&self) -> &[i64] {
        &self.base.conductor
    }

    pub fn n_star(&self) -> i64 {
        self.n_star
    }

    pub fn base(&self) -> &AlgebraLattice {
        &self.base
    }

    pub fn opts(&self) -> StabilizeOpts {
        self.opts
    }

    /// Sum of branch multiplicities.
    pub fn multiplicity(&self) -> i64 {
        self.spec
            .branches
            .iter()
            .map(|b| b.multiplicity().unwrap_or(0))
            .sum()
    }

    /// Orders of the coordinate differentials, branch by branch; 0 exactly
    /// on smooth branches.
    pub fn ramification_orders(&self) -> &[i64] {
        &self.ram
    }

    pub fn value_semigroup_gaps(&self) -> Option<Vec<i64>> {
        self.base.value_semigroup_gaps()
    }

    /// Coordinate pullback tuples: the algebra generators, and also the
    /// generators of the maximal ideal.
    pub fn algebra_generators(&self) -> Vec<Vec<LaurentSeries>> {
        (0..self.spec.n())
            .map(|j| {
                self.spec
                    .branches
                    .iter()
                    .map(|b| b.coords[j].clone())
                    .collect()
            })
            .collect()
    }

    pub fn contains(&self, tuple: &[LaurentSeries]) -> Result<bool> {
        self.base.basis.contains_tuple(tuple)
    }

    pub fn contains_with_certificate(
        &self,
        tuple: &[LaurentSeries],
    ) -> Result<Option<Vec<(crate::window::Col, Q)>>> {
        self.base.basis.contains_with_certificate(tuple)
    }

    /// The algebra lattice over `[0, high)`. Narrower views are projected
    /// from the base; wider ones are rebuilt, cross-checked against the
    /// accepted invariants, and cached.
    pub fn lattice_at(&self, high: i64) -> Result<Arc<AlgebraLattice>> {
        let cmax = self.conductor().iter().copied().max().unwrap_or(0);
        if high <= self.base.high {
            if high < cmax {
                return Err(Error::Window(format!(
                    "window top {high} cannot hold the conductor {cmax}"
                )));
            }
            let basis = self
                .base
                .basis
                .restrict(Window::new(0, high), self.base.conductor.clone());
            return Ok(Arc::new(AlgebraLattice {
                high,
                basis,
                delta: self.base.delta,
                conductor: self.base.conductor.clone(),
            }));
        }
        if let Some(hit) = self.wider.lock().unwrap().get(&high) {
            return Ok(hit.clone());
        }
        let lat = build_algebra_window(&self.spec, high)?;
        if lat.delta != self.base.delta || lat.conductor != self.base.conductor {
            return Err(Error::Undecidable(format!(
                "window {high} contradicts the accepted invariants (delta {} vs {}, conductor {:?} vs {:?})",
                lat.delta, self.base.delta, lat.conductor, self.base.conductor
            )));
        }
        let lat = Arc::new(lat);
        self.wider.lock().unwrap().insert(high, lat.clone());
        Ok(lat)
    }
}

fn accepted(p: &AlgebraLattice, cur: &AlgebraLattice, spec: &CurveSpec) -> bool {
    if p.delta != cur.delta || p.conductor != cur.conductor {
        return false;
    }
    let back = cur
        .basis
        .restrict(Window::new(0, p.high), p.conductor.clone());
    if !back.same_span(&p.basis) {
        return false;
    }
    p.high > 2 * p.delta as i64 + spec.max_coord_exponent()
}

fn ramification_orders(spec: &CurveSpec) -> Vec<i64> {
    spec.branches
        .iter()
        .map(|b| {
            b.coords
                .iter()
                .filter_map(|c| c.derivative().ord())
                .min()
                .unwrap_or(i64::MAX)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::Branch;
    use crate::parse::parse_series;

    fn spec_of(label: &str, nvars: usize, branches: &[&[&str]]) -> CurveSpec {
        let names = ["x", "y", "z", "w", "v"];
        CurveSpec {
            label: label.to_string(),
            vars: names[..nvars].iter().map(|s| s.to_string()).collect(),
            branches: branches
                .iter()
                .map(|coords| Branch {
                    name: None,
                    coords: coords.iter().map(|c| parse_series(c).unwrap()).collect(),
                    factor: None,
                })
                .collect(),
            equations: vec![],
            plane_poly: None,
        }
    }

    fn analyze(spec: CurveSpec) -> Arc<CurveRing> {
        CurveRing::analyze(spec, StabilizeOpts::default()).unwrap()
    }

    #[test]
    fn cusp_stabilizes() {
        let ring = analyze(spec_of("cusp", 2, &[&["t^2", "t^3"]]));
        assert_eq!(ring.delta(), 1);
        assert_eq!(ring.conductor(), &[2]);
        assert_eq!(ring.multiplicity(), 2);
        assert_eq!(ring.ramification_orders(), &[1]);
        assert_eq!(ring.value_semigroup_gaps(), Some(vec![1]));
    }

    #[test]
    fn tangent_pair_needs_escalation_then_converges() {
        // Separation appears at t^9 only; the initial window cannot see it.
        let ring = analyze(spec_of("close", 2, &[&["t", "t^5"], &["t", "t^5 + t^9"]]));
        assert_eq!(ring.delta(), 9);
        assert_eq!(ring.conductor(), &[9, 9]);
        assert_eq!(ring.ramification_orders(), &[0, 0]);
    }

    #[test]
    fn smooth_branch_is_its_own_normalization() {
        let ring = analyze(spec_of("line", 2, &[&["t", "0"]]));
        assert_eq!(ring.delta(), 0);
        assert_eq!(ring.conductor(), &[0]);
        assert_eq!(ring.value_semigroup_gaps(), Some(vec![]));
    }

    #[test]
    fn membership_distinguishes_the_diagonal_gap() {
        let ring = analyze(spec_of("node", 2, &[&["t", "0"], &["0", "t"]]));
        let one = vec![LaurentSeries::one(), LaurentSeries::one()];
        assert!(ring.contains(&one).unwrap());
        let half = vec![LaurentSeries::one(), LaurentSeries::exact_zero()];
        assert!(!ring.contains(&half).unwrap());
        let cert = ring
            .contains_with_certificate(&one)
            .unwrap()
            .expect("member");
        assert!(!cert.is_empty());
    }

    #[test]
    fn wider_lattice_reproduces_invariants() {
        let ring = analyze(spec_of("cusp", 2, &[&["t^2", "t^3"]]));
        let wide = ring.lattice_at(ring.base().high * 2).unwrap();
        assert_eq!(wide.delta, 1);
        assert_eq!(wide.conductor, vec![2]);
        let narrow = ring.lattice_at(ring.base().high - 2).unwrap();
        assert_eq!(narrow.basis.window().high, ring.base().high - 2);
    }

    #[test]
    fn identical_images_are_rejected_up_front() {
        let spec = spec_of("dup", 2, &[&["t", "t^2"], &["t", "t^2 + 0*t^3"]]);
        assert!(matches!(
            CurveRing::analyze(spec, StabilizeOpts::default()),
            Err(Error::InvalidSpec(_))
        ));
    }
}
