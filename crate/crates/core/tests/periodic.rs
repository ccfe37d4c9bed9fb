mod common;

use common::*;
use fiberlift::analysis::{compute_degree, is_constant_to_one, periodic_fiber};
use fiberlift::shift::PeriodicOrbit;

#[test]
fn random_fixtures_are_finite_to_one_and_varied() {
    let gs = random_finite_to_one(20, RANDOM_SEED);
    assert_eq!(gs.len(), 20);
    assert!(gs.iter().all(|g| g.len() <= 6));
    assert!(gs.iter().any(|g| compute_degree(g).unwrap().degree > 1));
    assert!(gs.iter().any(|g| !is_constant_to_one(g).unwrap()));
}

#[test]
fn brute_force_oracle_on_known_fibers() {
    let r = difference(4);
    assert_eq!(brute_force_fiber_size(&r.graph, &[2]), 4);
    let r = rule102();
    assert_eq!(brute_force_fiber_size(&r.graph, &[1]), 2);
    assert_eq!(brute_force_fiber_size(&r.graph, &[0, 1]), 2);
}

#[test]
fn periodic_lifts_agree_with_the_oracle() {
    for f in sweep_fixtures() {
        let t = periodic_sweep(&f, 4);
        assert!(t.orbits > 0, "{}", f.name);
        assert!(t.failures.is_empty(), "{:#?}", t.failures);
        assert!(t.canonical_failures.is_empty(), "{:#?}", t.canonical_failures);
    }
}

#[test]
fn periodic_degree_joinings_are_unique_up_to_permutation() {
    for f in sweep_fixtures() {
        let (t, _) = joining_sweep(&f, 3);
        assert!(t.failures.is_empty(), "{:#?}", t.failures);
    }
}

#[test]
fn lift_windings_sum_to_fiber_size() {
    let r = sum(5);
    for a in 0..5 {
        let d = periodic_fiber(&r.graph, &PeriodicOrbit::new(vec![a]).unwrap()).unwrap();
        let total: usize = d.lift_orbits.iter().map(|l| l.winding).sum();
        assert_eq!((total, d.fiber_size), (5, 5));
    }
}
