//! Periodic degree joinings and their uniqueness up to permutation.

use serde::Serialize;

use super::product::{permutations, DegreeJoiningGraph};
use crate::analysis::periodic::periodic_fiber;
use crate::error::{Error, Result};
use crate::shift::orbits::{rotate, PeriodicOrbit};

#[derive(Clone, Debug, Serialize)]
pub struct PeriodicJoinings {
    pub base_orbit: PeriodicOrbit,
    /// Orbits of the joining graph over the base orbit.
    pub joinings: Vec<PeriodicOrbit>,
    /// Every pair of joinings is related by a coordinate permutation.
    pub permutation_related: bool,
}

/// Lists the periodic orbits of the joining graph over `y`.
///
/// Refuses with `NotDegreeHost` when `y` has a fiber size different from the
/// degree: the orbits of the joining graph then do not carry the degree
/// joinings of the orbit measure.
pub fn enumerate_periodic_degree_joinings(
    lambda: &DegreeJoiningGraph,
    y: &PeriodicOrbit,
) -> Result<PeriodicJoinings> {
    let fiber = periodic_fiber(&lambda.base, y)?;
    if fiber.fiber_size != lambda.degree {
        return Err(Error::NotDegreeHost {
            orbit: lambda.base.format_y_word(y.word()),
            fiber_size: fiber.fiber_size,
            degree: lambda.degree,
        });
    }
    let joinings: Vec<PeriodicOrbit> = periodic_fiber(lambda.graph(), y)?
        .lift_orbits
        .into_iter()
        .map(|l| l.orbit)
        .collect();
    let maps: Vec<Vec<Option<usize>>> = permutations(lambda.degree)
        .iter()
        .map(|p| lambda.permute_coordinates(p))
        .collect();
    let related = |a: &PeriodicOrbit, b: &PeriodicOrbit| {
        a.period() == b.period()
            && maps.iter().any(|m| {
                let image: Option<Vec<usize>> = a.word().iter().map(|&s| m[s]).collect();
                image.is_some_and(|w| (0..b.period()).any(|r| rotate(b.word(), r) == w))
            })
    };
    let permutation_related = joinings
        .iter()
        .enumerate()
        .all(|(i, a)| joinings[i + 1..].iter().all(|b| related(a, b)));
    Ok(PeriodicJoinings {
        base_orbit: y.clone(),
        joinings,
        permutation_related,
    })
}
