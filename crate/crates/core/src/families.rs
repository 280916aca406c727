//! Named families of curve germs used by the fixtures, the selftest
//! corpus, and the command line.

use crate::curve::{Branch, CurveSpec};
use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::series::{qi, LaurentSeries};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    /// x^2 = y^{k+1}: one even-k branch, or two branches exchanged by the
    /// sign of x when k is odd.
    Ak(u32),
    /// s distinct lines through the origin of the plane.
    ConcurrentLines(usize),
    /// The n coordinate axes in n-space.
    Axes(usize),
    /// The n axes together with the main diagonal.
    AxesPlusDiagonal(usize),
    /// Two smooth plane branches with contact of order p: y(y - x^p).
    ContactPair(u32),
}

fn var_names(n: usize) -> Vec<String> {
    if n <= 3 {
        ["x", "y", "z"][..n].iter().map(|s| s.to_string()).collect()
    } else {
        (1..=n).map(|i| format!("x{i}")).collect()
    }
}

fn mono(c: i64, k: i64) -> LaurentSeries {
    LaurentSeries::monomial(qi(c), k)
}

impl Family {
    pub fn label(&self) -> String {
        match self {
            Family::Ak(k) => format!("A{k}"),
            Family::ConcurrentLines(s) => format!("lines({s})"),
            Family::Axes(n) => format!("axes({n})"),
            Family::AxesPlusDiagonal(n) => format!("axes+diag({n})"),
            Family::ContactPair(p) => format!("contact({p})"),
        }
    }

    /// Accepts `name(arg)` or `name:arg`; names are case-insensitive.
    pub fn parse(input: &str) -> Result<Family> {
        let t = input.trim().trim_end_matches(')');
        let (name, arg) = t
            .split_once('(')
            .or_else(|| t.split_once(':'))
            .ok_or_else(|| Error::InvalidSpec(format!("family needs an argument: {input}")))?;
        let arg: i64 = arg
            .trim()
            .parse()
            .map_err(|_| Error::InvalidSpec(format!("bad family argument in {input}")))?;
        if arg < 0 {
            return Err(Error::InvalidSpec(format!("negative family argument in {input}")));
        }
        let fam = match name.trim().to_ascii_lowercase().as_str() {
            "ak" | "a" => Family::Ak(arg as u32),
            "lines" | "concurrentlines" => Family::ConcurrentLines(arg as usize),
            "axes" => Family::Axes(arg as usize),
            "axes+diag" | "axesplusdiagonal" | "axesdiag" => Family::AxesPlusDiagonal(arg as usize),
            "contact" | "contactpair" => Family::ContactPair(arg as u32),
            other => {
                return Err(Error::InvalidSpec(format!("unknown family name {other}")));
            }
        };
        fam.generate().map(|_| fam)
    }

    pub fn generate(&self) -> Result<CurveSpec> {
        let spec = match *self {
            Family::Ak(k) => ak(k),
            Family::ConcurrentLines(s) => concurrent_lines(s)?,
            Family::Axes(n) => axes(n, false)?,
            Family::AxesPlusDiagonal(n) => axes(n, true)?,
            Family::ContactPair(p) => contact_pair(p)?,
        };
        spec.validate()?;
        Ok(spec)
    }
}

fn ak(k: u32) -> CurveSpec {
    let vars = var_names(2);
    let x = Poly::var(2, 0);
    let y = Poly::var(2, 1);
    let h = x.pow(2).sub(&y.pow(k + 1));
    let branches = if k % 2 == 0 {
        vec![Branch {
            name: None,
            coords: vec![mono(1, k as i64 + 1), mono(1, 2)],
            factor: Some(h.clone()),
        }]
    } else {
        let m = (k as i64 + 1) / 2;
        let ym = y.pow(m as u32);
        vec![
            Branch {
                name: None,
                coords: vec![mono(1, m), mono(1, 1)],
                factor: Some(x.sub(&ym)),
            },
            Branch {
                name: None,
                coords: vec![mono(-1, m), mono(1, 1)],
                factor: Some(x.add(&ym)),
            },
        ]
    };
    CurveSpec {
        label: Family::Ak(k).label(),
        vars,
        branches,
        equations: vec![],
        plane_poly: Some(h),
    }
}

fn concurrent_lines(s: usize) -> Result<CurveSpec> {
    if s == 0 {
        return Err(Error::InvalidSpec("at least one line".to_string()));
    }
    let x = Poly::var(2, 0);
    let y = Poly::var(2, 1);
    let mut branches = vec![Branch {
        name: None,
        coords: vec![mono(1, 1), LaurentSeries::exact_zero()],
        factor: Some(y.clone()),
    }];
    if s >= 2 {
        branches.push(Branch {
            name: None,
            coords: vec![LaurentSeries::exact_zero(), mono(1, 1)],
            factor: Some(x.clone()),
        });
    }
    for i in 1..=s.saturating_sub(2) {
        branches.push(Branch {
            name: None,
            coords: vec![mono(i as i64, 1), mono(1, 1)],
            factor: Some(x.sub(&y.scale(&qi(i as i64)))),
        });
    }
    let mut h = Poly::constant(2, qi(1));
    for b in &branches {
        h = h.mul(b.factor.as_ref().unwrap());
    }
    Ok(CurveSpec {
        label: Family::ConcurrentLines(s).label(),
        vars: var_names(2),
        branches,
        equations: vec![],
        plane_poly: Some(h),
    })
}

fn axes(n: usize, diagonal: bool) -> Result<CurveSpec> {
    if n < 2 {
        return Err(Error::InvalidSpec("axes need ambient dimension >= 2".to_string()));
    }
    let mut branches: Vec<Branch> = (0..n)
        .map(|i| {
            let mut coords = vec![LaurentSeries::exact_zero(); n];
            coords[i] = mono(1, 1);
            Branch { name: None, coords, factor: None }
        })
        .collect();
    if diagonal {
        branches.push(Branch {
            name: None,
            coords: vec![mono(1, 1); n],
            factor: None,
        });
    }
    let plane_poly = if n == 2 {
        let x = Poly::var(2, 0);
        let y = Poly::var(2, 1);
        for (i, b) in branches.iter_mut().enumerate() {
            b.factor = Some(match i {
                0 => y.clone(),
                1 => x.clone(),
                _ => x.sub(&y),
            });
        }
        let mut h = x.mul(&y);
        if diagonal {
            h = h.mul(&x.sub(&y));
        }
        Some(h)
    } else {
        None
    };
    let fam = if diagonal { Family::AxesPlusDiagonal(n) } else { Family::Axes(n) };
    // The axes-plus-diagonal curve in 3-space is cut out by two of the three
    // quadrics x_k(x_i - x_j): the pair below already defines the reduced curve,
    // so it qualifies as a complete intersection and gets Jacobian-route coverage.
    let equations = if diagonal && n == 3 {
        let x = Poly::var(3, 0);
        let y = Poly::var(3, 1);
        let z = Poly::var(3, 2);
        vec![x.mul(&y.sub(&z)), y.mul(&x.sub(&z))]
    } else {
        vec![]
    };
    Ok(CurveSpec {
        label: fam.label(),
        vars: var_names(n),
        branches,
        equations,
        plane_poly,
    })
}

fn contact_pair(p: u32) -> Result<CurveSpec> {
    if p == 0 {
        return Err(Error::InvalidSpec("contact order must be positive".to_string()));
    }
    let x = Poly::var(2, 0);
    let y = Poly::var(2, 1);
    let xp = x.pow(p);
    let branches = vec![
        Branch {
            name: None,
            coords: vec![mono(1, 1), LaurentSeries::exact_zero()],
            factor: Some(y.clone()),
        },
        Branch {
            name: None,
            coords: vec![mono(1, 1), mono(1, p as i64)],
            factor: Some(y.sub(&xp)),
        },
    ];
    let h = y.mul(&y.sub(&xp));
    Ok(CurveSpec {
        label: Family::ContactPair(p).label(),
        vars: var_names(2),
        branches,
        equations: vec![],
        plane_poly: Some(h),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{CurveRing, StabilizeOpts};

    fn delta_of(f: Family) -> u64 {
        let ring = CurveRing::analyze(f.generate().unwrap(), StabilizeOpts::default()).unwrap();
        ring.delta()
    }

    #[test]
    fn every_family_member_validates() {
        for k in 0..=5 {
            Family::Ak(k).generate().unwrap();
            if k >= 1 {
                Family::ContactPair(k).generate().unwrap();
                Family::ConcurrentLines(k as usize).generate().unwrap();
            }
            if k >= 2 {
                Family::Axes(k as usize).generate().unwrap();
                Family::AxesPlusDiagonal(k as usize).generate().unwrap();
            }
        }
    }

    #[test]
    fn frozen_delta_values() {
        assert_eq!(delta_of(Family::Ak(1)), 1);
        assert_eq!(delta_of(Family::Ak(2)), 1);
        // Semigroup <2,5>: gaps 1 and 3.
        assert_eq!(delta_of(Family::Ak(4)), 2);
        // s lines pairwise transverse: delta = s(s-1)/2 in the plane.
        assert_eq!(delta_of(Family::ConcurrentLines(4)), 6);
        assert_eq!(delta_of(Family::Axes(4)), 3);
        assert_eq!(delta_of(Family::AxesPlusDiagonal(3)), 4);
        assert_eq!(delta_of(Family::ContactPair(3)), 3);
    }

    #[test]
    fn parse_round_trips() {
        for (txt, fam) in [
            ("A(3)", Family::Ak(3)),
            ("ak:2", Family::Ak(2)),
            ("lines(4)", Family::ConcurrentLines(4)),
            ("Axes(3)", Family::Axes(3)),
            ("axes+diag(3)", Family::AxesPlusDiagonal(3)),
            ("contact(2)", Family::ContactPair(2)),
        ] {
            assert_eq!(Family::parse(txt).unwrap(), fam);
        }
        assert!(Family::parse("axes(1)").is_err());
        assert!(Family::parse("blob(2)").is_err());
        assert!(Family::parse("contact").is_err());
    }
}
