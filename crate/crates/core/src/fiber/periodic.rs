//! Exact lifts of orbit measures.

use num_traits::{One, Zero};
use serde::Serialize;

use super::report::{Lift, LiftReport, Method};
use crate::analysis::periodic::periodic_fiber;
use crate::error::{Error, Result};
use crate::rational::{self, Rational};
use crate::shift::orbits::{rotate, PeriodicOrbit};
use crate::shift::LabeledGraph;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PeriodicLift {
    pub orbit: PeriodicOrbit,
    pub multiplicity: usize,
    #[serde(with = "rational::serde_rational")]
    pub weight: Rational,
    #[serde(with = "rational::serde_rational")]
    pub diagonal_mass: Rational,
}

/// Ergodic decomposition of the canonical lift: the orbit measures of the
/// lift orbits weighted by `multiplicity / degree`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CanonicalLiftDecomposition {
    pub base_orbit: PeriodicOrbit,
    pub degree: usize,
    pub components: Vec<PeriodicLift>,
}

impl CanonicalLiftDecomposition {
    pub fn total_weight(&self) -> Rational {
        self.components.iter().map(|c| c.weight.clone()).sum()
    }

    pub fn is_ergodic(&self) -> bool {
        self.components.len() == 1
    }

    pub fn report(&self, base_name: String, orbit_name: impl Fn(&PeriodicOrbit) -> String) -> LiftReport {
        LiftReport {
            base_measure: base_name,
            degree: self.degree,
            method: Method::Exact,
            lifts: self
                .components
                .iter()
                .map(|c| Lift {
                    weight: Some(rational::format(&c.weight)),
                    diagonal_mass: Some(rational::format(&c.diagonal_mass)),
                    ..Lift::new(orbit_name(&c.orbit), c.multiplicity)
                })
                .collect(),
            canonical_lift_ergodic: Some(self.is_ergodic()),
            monte_carlo: None,
            warnings: Vec::new(),
        }
    }
}

/// Lifts of the orbit measure on `y`: multiplicities are winding numbers and
/// each diagonal mass is computed from the fiber conditionals.
pub fn analyze_periodic_lifts(g: &LabeledGraph, y: &PeriodicOrbit) -> Result<CanonicalLiftDecomposition> {
    let fiber = periodic_fiber(g, y)?;
    let d = fiber.fiber_size as i64;
    let components = fiber
        .lift_orbits
        .iter()
        .map(|l| {
            let diagonal_mass = diagonal_mass(g, y, &l.orbit);
            if diagonal_mass != rational::ratio(1, l.winding as i64) {
                return Err(Error::Internal(format!(
                    "diagonal mass {diagonal_mass} differs from 1/{}",
                    l.winding
                )));
            }
            Ok(PeriodicLift {
                orbit: l.orbit.clone(),
                multiplicity: l.winding,
                weight: rational::ratio(l.winding as i64, d),
                diagonal_mass,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let out = CanonicalLiftDecomposition {
        base_orbit: y.clone(),
        degree: fiber.fiber_size,
        components,
    };
    if out.total_weight() != Rational::one() {
        return Err(Error::Internal("canonical lift weights do not sum to 1".into()));
    }
    Ok(out)
}

/// Diagonal mass of `μ ⊗_ν μ` for the orbit measure `μ` on `lift` over the
/// orbit measure `ν` on `y`: `Σ_y ν(y) Σ_{x ↦ y} μ_y(x)²` with the fiber
/// conditionals `μ_y(x) = μ(x) / ν(y)`.
fn diagonal_mass(g: &LabeledGraph, y: &PeriodicOrbit, lift: &PeriodicOrbit) -> Rational {
    let (p, q) = (y.period(), lift.period());
    let nu_point = rational::ratio(1, p as i64);
    let mu_point = rational::ratio(1, q as i64);
    let lift_points: Vec<Vec<usize>> = (0..q).map(|j| rotate(lift.word(), j)).collect();
    let mut total = Rational::zero();
    for r in 0..p {
        let base = rotate(y.word(), r);
        let over = lift_points
            .iter()
            .filter(|x| x.iter().enumerate().all(|(i, &s)| g.label(s) == base[i % p]))
            .count();
        let conditional = &mu_point / &nu_point;
        total += &nu_point * &conditional * &conditional * rational::int(over as i64);
    }
    total
}
