//! The curve algebra inside one finite window.
//!
//! A is the subalgebra of ∏ k[[t_i]] generated by the coordinate pullbacks.
//! Its window span is built by a worklist closure: keep multiplying newly
//! independent elements by the generators until the span stops growing.
//! Every product of generators is a chain of such steps, so the fixpoint
//! span contains the projection of all of A; conversely only elements of A
//! are ever inserted. Rank is bounded by s·N, so the loop terminates.

use std::collections::VecDeque;

use crate::curve::CurveSpec;
use crate::error::{Error, Result};
use crate::series::LaurentSeries;
use crate::window::{tuple_mul, tuple_truncate, LatticeBasis, Window};

#[derive(Clone, Debug)]
pub struct AlgebraLattice {
    pub high: i64,
    /// saturated at the detected conductor
    pub basis: LatticeBasis,
    pub delta: u64,
    pub conductor: Vec<i64>,
}

/// One window pass. Errors with `Undecidable` when the conductor is not
/// visible below `high`, and `BranchesNotSeparated` when two branches are
/// indistinguishable inside the window; both tell the caller to widen.
pub fn build_algebra_window(spec: &CurveSpec, high: i64) -> Result<AlgebraLattice> {
    if high < 2 {
        return Err(Error::Window(format!("window top {high} is too small")));
    }
    let s = spec.s();
    for i in 0..s {
        for j in i + 1..s {
            let a = &spec.branches[i].coords;
            let b = &spec.branches[j].coords;
            if a.iter()
                .zip(b)
                .all(|(x, y)| x.truncate(high).agrees_with(&y.truncate(high)))
            {
                return Err(Error::BranchesNotSeparated { i, j, window: high });
            }
        }
    }

    let window = Window::new(0, high);
    let gens: Vec<Vec<LaurentSeries>> = (0..spec.n())
        .map(|j| {
            spec.branches
                .iter()
                .map(|b| b.coords[j].clone())
                .collect()
        })
        .collect();

    let mut span = LatticeBasis::new(s, window, vec![high; s]);
    let one: Vec<LaurentSeries> = vec![LaurentSeries::one(); s];
    let mut queue: VecDeque<Vec<LaurentSeries>> = VecDeque::new();
    if span.insert_tuple(&one)? {
        queue.push_back(one);
    }
    while let Some(r) = queue.pop_front() {
        for g in &gens {
            let p = tuple_truncate(&tuple_mul(&r, g), high);
            if span.insert_tuple(&p)? {
                queue.push_back(p);
            }
        }
    }

    // Conductor per branch: the first exponent from which every higher
    // monomial (within the window) already lies in the span.
    let mut conductor = Vec::with_capacity(s);
    for i in 0..s {
        let mut c = high;
        for e in (0..high).rev() {
            let mut mono = vec![LaurentSeries::exact_zero(); s];
            mono[i] = LaurentSeries::monomial(crate::series::qi(1), e);
            if span.contains_tuple(&mono)? {
                c = e;
            } else {
                break;
            }
        }
        if c >= high {
            return Err(Error::Undecidable(format!(
                "conductor of branch {i} is not visible below {high}"
            )));
        }
        conductor.push(c);
    }

    let delta = (s as i64 * high - span.rank() as i64) as u64;

    let mut basis = LatticeBasis::new(s, window, conductor.clone());
    for row in span.rows() {
        basis.insert_row(row.clone());
    }
    debug_assert_eq!(basis.rank(), span.rank());

    Ok(AlgebraLattice {
        high,
        basis,
        delta,
        conductor,
    })
}

impl AlgebraLattice {
    /// Gap exponents of the value semigroup; single branch only. Their
    /// count equals delta.
    pub fn value_semigroup_gaps(&self) -> Option<Vec<i64>> {
        if self.basis.branches() != 1 {
            return None;
        }
        let taken: std::collections::BTreeSet<i64> =
            self.basis.pivots().map(|&(e, _)| e).collect();
        Some((0..self.conductor[0]).filter(|e| !taken.contains(e)).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::Branch;
    use crate::parse::parse_series;

    fn spec_of(label: &str, nvars: usize, branches: &[&[&str]]) -> CurveSpec {
        let names = ["x", "y", "z", "w"];
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

    #[test]
    fn cusp_window() {
        let spec = spec_of("cusp", 2, &[&["t^2", "t^3"]]);
        let lat = build_algebra_window(&spec, 8).unwrap();
        assert_eq!(lat.delta, 1);
        assert_eq!(lat.conductor, vec![2]);
        assert_eq!(lat.value_semigroup_gaps(), Some(vec![1]));
    }

    #[test]
    fn node_window() {
        let spec = spec_of("node", 2, &[&["t", "0"], &["0", "t"]]);
        let lat = build_algebra_window(&spec, 8).unwrap();
        assert_eq!(lat.delta, 1);
        assert_eq!(lat.conductor, vec![1, 1]);
        assert_eq!(lat.value_semigroup_gaps(), None);
    }

    #[test]
    fn three_concurrent_lines_window() {
        let spec = spec_of("lines3", 2, &[&["t", "0"], &["0", "t"], &["t", "t"]]);
        let lat = build_algebra_window(&spec, 8).unwrap();
        assert_eq!(lat.delta, 3);
        assert_eq!(lat.conductor, vec![2, 2, 2]);
        let dims = lat.basis.dims_by_exponent();
        assert_eq!(dims.get(&0), Some(&1));
        assert_eq!(dims.get(&1), Some(&2));
        assert_eq!(dims.get(&2), Some(&3));
    }

    #[test]
    fn coordinate_axes_window() {
        let spec = spec_of(
            "axes3",
            3,
            &[&["t", "0", "0"], &["0", "t", "0"], &["0", "0", "t"]],
        );
        let lat = build_algebra_window(&spec, 6).unwrap();
        assert_eq!(lat.delta, 2);
        assert_eq!(lat.conductor, vec![1, 1, 1]);
    }

    #[test]
    fn unseparated_branches_demand_more_room() {
        let spec = spec_of("close", 2, &[&["t", "t^5"], &["t", "t^5 + t^9"]]);
        match build_algebra_window(&spec, 8) {
            Err(Error::BranchesNotSeparated { i: 0, j: 1, window: 8 }) => {}
            other => panic!("expected separation failure, got {other:?}"),
        }
        let lat = build_algebra_window(&spec, 32).unwrap();
        assert_eq!(lat.conductor, vec![9, 9]);
        assert_eq!(lat.delta, 9);
    }

    #[test]
    fn invisible_conductor_is_undecidable() {
        let spec = spec_of("cusp", 2, &[&["t^2", "t^3"]]);
        match build_algebra_window(&spec, 2) {
            Err(Error::Undecidable(_)) => {}
            other => panic!("expected undecidable, got {other:?}"),
        }
    }
}
