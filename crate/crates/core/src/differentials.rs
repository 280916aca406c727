//! Regular differentials via the residue pairing, the module σ⁰ of
//! functions whose differentials stay regular, and derivations.
//!
//! A form is carried by its coefficient tuple ρ = (ρ_i), meaning ρ_i dt_i
//! on branch i. Regularity constrains only the polar part: ρ is regular
//! iff Σ_i res_i(a·ρ_i dt_i) = 0 for every a in the algebra, poles never
//! exceed the conductor, and holomorphic tuples are always regular. That
//! makes the computation a finite kernel problem on polar coefficients,
//! paired against the algebra's window basis.

use std::sync::Arc;

use crate::error::Result;
use crate::ideal::FracIdeal;
use crate::linalg::{kernel_basis, Row};
use crate::ring::CurveRing;
use crate::series::{qi, LaurentSeries};
use crate::window::tuple_mul;

/// The module of regular (Rosenlicht) differentials, as a fractional
/// module of coefficient tuples with holomorphic tail.
pub fn regular_forms(ring: &Arc<CurveRing>) -> Result<FracIdeal> {
    let s = ring.s();
    let c = ring.conductor();
    let cmax = c.iter().copied().max().unwrap_or(0);
    let mut unknowns: Vec<(usize, i64)> = Vec::new();
    for (i, &ci) in c.iter().enumerate() {
        for e in -ci..0 {
            unknowns.push((i, e));
        }
    }
    let mut gens: Vec<Vec<LaurentSeries>> = Vec::new();
    if !unknowns.is_empty() {
        // a·ρ picks up t^{-1} exactly where exponent k of a meets -k-1 of
        // ρ, so only the algebra's window below c_max matters.
        let alat = ring.lattice_at(cmax)?;
        let mut rows: Vec<Row<usize>> = Vec::new();
        for arow in alat.basis.rows() {
            let mut con: Row<usize> = Row::new();
            for (u, &(i, e)) in unknowns.iter().enumerate() {
                if let Some(v) = arow.get(&(-e - 1, i)) {
                    con.insert(u, v.clone());
                }
            }
            if !con.is_empty() {
                rows.push(con);
            }
        }
        for sol in kernel_basis(&rows, unknowns.len()) {
            let mut tuple = vec![LaurentSeries::exact_zero(); s];
            for (u, coeff) in sol.iter().enumerate() {
                if !num_traits::Zero::is_zero(coeff) {
                    let (i, e) = unknowns[u];
                    tuple[i] = tuple[i].add(&LaurentSeries::monomial(coeff.clone(), e));
                }
            }
            gens.push(tuple);
        }
    }
    FracIdeal::from_presentation(ring.clone(), "w1", gens, vec![0; s])
}

/// Deepest pole the regular forms reach on each branch. Duality says this
/// is exactly the negated conductor; the selftest keeps that honest.
pub fn min_poles(w1: &FracIdeal) -> Vec<i64> {
    w1.min_orders()
}

/// Does C·ω¹ equal the holomorphic forms exactly? A theorem for reduced
/// germs, checked as a module identity.
pub fn conductor_shift_holds(ring: &Arc<CurveRing>, w1: &FracIdeal) -> Result<bool> {
    let c = FracIdeal::conductor_ideal(ring.clone())?;
    let omega_tilde = FracIdeal::tilde(ring.clone())?;
    c.product(w1)?.equals(&omega_tilde)
}

/// Derivatives of the coordinate pullbacks: the tuples dφ_j/dt.
fn coordinate_differentials(ring: &CurveRing) -> Vec<Vec<LaurentSeries>> {
    ring.algebra_generators()
        .iter()
        .map(|g| g.iter().map(|x| x.derivative()).collect())
        .collect()
}

/// σ⁰ = { ρ : ρ·dφ_j is a regular form for every coordinate }. Contains
/// the algebra; equals the whole normalization exactly in the simple
/// normal crossing case.
pub fn sigma0(ring: &Arc<CurveRing>, w1: &FracIdeal) -> Result<FracIdeal> {
    let s = ring.s();
    let c = ring.conductor();
    let r = ring.ramification_orders();
    let diffs = coordinate_differentials(ring);
    let mut cands: Vec<Vec<LaurentSeries>> = Vec::new();
    for i in 0..s {
        let low = w1.min_order(i) - r[i];
        for e in low..c[i] {
            let mut t = vec![LaurentSeries::exact_zero(); s];
            t[i] = LaurentSeries::monomial(qi(1), e);
            cands.push(t);
        }
    }
    let maps: Vec<Box<dyn Fn(&[LaurentSeries]) -> Result<Vec<LaurentSeries>>>> = diffs
        .into_iter()
        .map(|d| {
            Box::new(move |x: &[LaurentSeries]| Ok(tuple_mul(x, &d)))
                as Box<dyn Fn(&[LaurentSeries]) -> Result<Vec<LaurentSeries>>>
        })
        .collect();
    let constraints: Vec<(
        &dyn Fn(&[LaurentSeries]) -> Result<Vec<LaurentSeries>>,
        &crate::window::LatticeBasis,
    )> = maps.iter().map(|f| (f.as_ref() as _, w1.lattice())).collect();
    let sols = crate::window::membership_kernel(&cands, &constraints)?;
    let gens = combine_tuples(&cands, &sols);
    FracIdeal::from_presentation(ring.clone(), "sigma0", gens, c.to_vec())
}

/// λ = dim σ⁰/A and h¹ = 2δ − λ.
pub fn lambda_and_h1(ring: &Arc<CurveRing>, sigma: &FracIdeal) -> Result<(u64, i64)> {
    let a = FracIdeal::unit(ring.clone())?;
    let lambda = a.colength_in(sigma)?;
    let h1 = 2 * ring.delta() as i64 - lambda as i64;
    Ok((lambda, h1))
}

/// Derivation module: tuples v with v·dφ_j/dt landing in A for every
/// coordinate (the vector fields on the normalization that descend).
pub fn derivations(ring: &Arc<CurveRing>) -> Result<FracIdeal> {
    let s = ring.s();
    let c = ring.conductor();
    let r = ring.ramification_orders();
    let a = FracIdeal::unit(ring.clone())?;
    let diffs = coordinate_differentials(ring);
    let mut cands: Vec<Vec<LaurentSeries>> = Vec::new();
    for i in 0..s {
        for e in -r[i]..c[i] - r[i] {
            let mut t = vec![LaurentSeries::exact_zero(); s];
            t[i] = LaurentSeries::monomial(qi(1), e);
            cands.push(t);
        }
    }
    let maps: Vec<Box<dyn Fn(&[LaurentSeries]) -> Result<Vec<LaurentSeries>>>> = diffs
        .into_iter()
        .map(|d| {
            Box::new(move |x: &[LaurentSeries]| Ok(tuple_mul(x, &d)))
                as Box<dyn Fn(&[LaurentSeries]) -> Result<Vec<LaurentSeries>>>
        })
        .collect();
    let constraints: Vec<(
        &dyn Fn(&[LaurentSeries]) -> Result<Vec<LaurentSeries>>,
        &crate::window::LatticeBasis,
    )> = maps.iter().map(|f| (f.as_ref() as _, a.lattice())).collect();
    let sols = crate::window::membership_kernel(&cands, &constraints)?;
    let gens = combine_tuples(&cands, &sols);
    let tails: Vec<i64> = (0..s).map(|i| c[i] - r[i]).collect();
    FracIdeal::from_presentation(ring.clone(), "Der", gens, tails)
}

/// The conductor condition on derivations: every derivation sends every
/// coordinate into the conductor. Combined with smooth branches this
/// characterizes simple normal crossings for Gorenstein germs.
pub fn conductor_derivation_condition(ring: &Arc<CurveRing>) -> Result<bool> {
    let ders = derivations(ring)?;
    let c = FracIdeal::conductor_ideal(ring.clone())?;
    let diffs = coordinate_differentials(ring);
    for v in ders.module_generators() {
        for d in &diffs {
            if !c.contains(&tuple_mul(&v, d))? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Diagnostic: do the differentials of σ⁰ elements stay holomorphic
/// (ρ·dφ_j ∈ Ω_~A for every σ⁰ generator)? This is the factorization
/// property derivation arguments need beyond the Gorenstein case.
pub fn sigma0_differentials_holomorphic(
    ring: &Arc<CurveRing>,
    sigma: &FracIdeal,
) -> Result<bool> {
    let tilde = FracIdeal::tilde(ring.clone())?;
    let diffs = coordinate_differentials(ring);
    for v in sigma.module_generators() {
        for d in &diffs {
            if !tilde.contains(&tuple_mul(&v, d))? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn combine_tuples(
    cands: &[Vec<LaurentSeries>],
    sols: &[Vec<crate::series::Q>],
) -> Vec<Vec<LaurentSeries>> {
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

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::{Branch, CurveSpec};
    use crate::parse::{parse_poly, parse_series};
    use crate::ring::StabilizeOpts;

    fn ring_of(label: &str, nvars: usize, branches: &[&[&str]], eqs: &[&str]) -> Arc<CurveRing> {
        let names = ["x", "y", "z", "w", "v"];
        let vars: Vec<String> = names[..nvars].iter().map(|s| s.to_string()).collect();
        let spec = CurveSpec {
            label: label.to_string(),
            vars: vars.clone(),
            branches: branches
                .iter()
                .map(|coords| Branch {
                    name: None,
                    coords: coords.iter().map(|c| parse_series(c).unwrap()).collect(),
                    factor: None,
                })
                .collect(),
            equations: eqs.iter().map(|e| parse_poly(e, &vars).unwrap()).collect(),
            plane_poly: None,
        };
        CurveRing::analyze(spec, StabilizeOpts::default()).unwrap()
    }

    #[test]
    fn cusp_regular_forms_and_sigma0() {
        let ring = ring_of("cusp", 2, &[&["t^2", "t^3"]], &["x^3 - y^2"]);
        let w1 = regular_forms(&ring).unwrap();
        // Pole depth reaches the conductor; the simple pole is forbidden
        // because res(1·ρ dt) must vanish.
        assert_eq!(min_poles(&w1), vec![-2]);
        assert!(!w1
            .contains(&[LaurentSeries::monomial(qi(1), -1)])
            .unwrap());
        assert!(w1.contains(&[LaurentSeries::monomial(qi(1), -2)]).unwrap());
        assert!(conductor_shift_holds(&ring, &w1).unwrap());

        let sig = sigma0(&ring, &w1).unwrap();
        let expected = FracIdeal::from_tails(ring.clone(), "pole1", vec![-1]).unwrap();
        assert!(sig.equals(&expected).unwrap());
        let (lambda, h1) = lambda_and_h1(&ring, &sig).unwrap();
        assert_eq!(lambda, 2);
        assert_eq!(h1, 0);
    }

    #[test]
    fn cusp_derivations_vanish_at_the_point() {
        let ring = ring_of("cusp", 2, &[&["t^2", "t^3"]], &["x^3 - y^2"]);
        let ders = derivations(&ring).unwrap();
        let expected = FracIdeal::from_tails(ring.clone(), "tk", vec![1]).unwrap();
        assert!(ders.equals(&expected).unwrap());
        // The conductor condition holds, but the branch is not smooth, so
        // the derivation route still rejects the cusp (in analysis).
        assert!(conductor_derivation_condition(&ring).unwrap());
    }

    #[test]
    fn node_is_simple_normal_crossing_by_all_signals() {
        let ring = ring_of("node", 2, &[&["t", "0"], &["0", "t"]], &["x*y"]);
        let w1 = regular_forms(&ring).unwrap();
        assert_eq!(min_poles(&w1), vec![-1, -1]);
        // The residual pairing couples the two branches: (t^{-1}, -t^{-1})
        // is regular, (t^{-1}, 0) is not.
        let good = vec![
            LaurentSeries::monomial(qi(1), -1),
            LaurentSeries::monomial(qi(-1), -1),
        ];
        assert!(w1.contains(&good).unwrap());
        let bad = vec![LaurentSeries::monomial(qi(1), -1), LaurentSeries::exact_zero()];
        assert!(!w1.contains(&bad).unwrap());

        let sig = sigma0(&ring, &w1).unwrap();
        let tilde = FracIdeal::tilde(ring.clone()).unwrap();
        assert!(sig.equals(&tilde).unwrap());
        let (lambda, h1) = lambda_and_h1(&ring, &sig).unwrap();
        assert_eq!(lambda, 1);
        assert_eq!(h1, 1);
        assert!(conductor_derivation_condition(&ring).unwrap());
        assert!(conductor_shift_holds(&ring, &w1).unwrap());
    }

    #[test]
    fn tangent_smooth_pair_fails_every_route() {
        // y(y - x^2): two smooth branches meeting with contact order 2.
        let ring = ring_of("contact2", 2, &[&["t", "0"], &["t", "t^2"]], &["y^2 - x^2*y"]);
        assert_eq!(ring.delta(), 2);
        let w1 = regular_forms(&ring).unwrap();
        assert_eq!(min_poles(&w1), vec![-2, -2]);
        let sig = sigma0(&ring, &w1).unwrap();
        let tilde = FracIdeal::tilde(ring.clone()).unwrap();
        assert!(!sig.equals(&tilde).unwrap());
        assert!(sig.contains_ideal(&tilde).unwrap());
        let (lambda, h1) = lambda_and_h1(&ring, &sig).unwrap();
        assert_eq!(lambda, 3);
        assert_eq!(h1, 1);
        assert!(!conductor_derivation_condition(&ring).unwrap());
    }

    #[test]
    fn coordinate_axes_in_space_are_snc_without_gorenstein() {
        let ring = ring_of(
            "axes3",
            3,
            &[&["t", "0", "0"], &["0", "t", "0"], &["0", "0", "t"]],
            &[],
        );
        let w1 = regular_forms(&ring).unwrap();
        let sig = sigma0(&ring, &w1).unwrap();
        let tilde = FracIdeal::tilde(ring.clone()).unwrap();
        assert!(sig.equals(&tilde).unwrap());
        let (lambda, h1) = lambda_and_h1(&ring, &sig).unwrap();
        assert_eq!(lambda, ring.delta());
        assert_eq!(h1, ring.delta() as i64);
        assert!(sigma0_differentials_holomorphic(&ring, &sig).unwrap());
    }

    #[test]
    fn sigma0_differentials_detect_the_cusp_pole() {
        let ring = ring_of("cusp", 2, &[&["t^2", "t^3"]], &["x^3 - y^2"]);
        let w1 = regular_forms(&ring).unwrap();
        let sig = sigma0(&ring, &w1).unwrap();
        // t^{-1}·d(t^2) = 2 dt is holomorphic, t^{-1}·d(t^3) = 3t dt too:
        // the cusp's sigma0 differentials stay holomorphic even though the
        // germ is far from normal crossing.
        assert!(sigma0_differentials_holomorphic(&ring, &sig).unwrap());
    }
}
