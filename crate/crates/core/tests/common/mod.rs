//! Fixtures and independent oracles shared by the integration tests.

#![allow(dead_code)]

use fiberlift::analysis::compute_degree;
use fiberlift::measure::{BernoulliMeasure, COMeasure, CylinderMeasure, MarkovMeasure, Pushforward, SkewMargin};
use fiberlift::rational::{ratio, Rational};
use fiberlift::shift::PeriodicOrbit;
use num_traits::Zero;
use fiberlift::shift::{recode_to_one_block, LabeledGraph, Recoding, SlidingBlockCode};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn names(n: usize) -> Vec<String> {
    (0..n).map(|i| i.to_string()).collect()
}

pub fn two_block(n: usize, f: impl Fn(usize, usize) -> usize) -> Recoding {
    let code = SlidingBlockCode::from_fn(0, 1, LabeledGraph::full_shift(&names(n)), names(n), |w| f(w[0], w[1]))
        .unwrap();
    recode_to_one_block(&code)
}

pub fn rule102() -> Recoding {
    two_block(2, |a, b| (a + b) % 2)
}

pub fn difference(n: usize) -> Recoding {
    two_block(n, |a, b| (b + n - a) % n)
}

pub fn sum(n: usize) -> Recoding {
    two_block(n, |a, b| (a + b) % n)
}

/// Full 2-shift with every symbol labeled 0.
pub fn constant_map() -> LabeledGraph {
    LabeledGraph::full_shift(&names(2))
        .relabeled(vec!["0".into()], vec![0, 0])
        .unwrap()
}

pub struct Fixture {
    pub name: String,
    pub graph: LabeledGraph,
    pub recoding: Option<Recoding>,
}

impl Fixture {
    fn block(name: &str, r: Recoding) -> Self {
        Fixture {
            name: name.into(),
            graph: r.graph.clone(),
            recoding: Some(r),
        }
    }
}

/// Irreducible labeled graph on at most `max_symbols` symbols, or `None`
/// when the draw trims to something reducible or trivial.
pub fn random_irreducible(rng: &mut ChaCha8Rng, max_symbols: usize) -> Option<LabeledGraph> {
    let n = rng.gen_range(2..=max_symbols);
    let p = rng.gen_range(0.25..0.6);
    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|s| (0..n).map(move |t| (s, t)))
        .filter(|_| rng.gen_bool(p))
        .collect();
    let k = rng.gen_range(2..=n);
    let label: Vec<usize> = (0..n).map(|_| rng.gen_range(0..k)).collect();
    let g = LabeledGraph::new(names(n), names(k), label, edges).ok()?.trim().ok()?;
    fiberlift::shift::require_irreducible(&g).ok()?;
    // keep only the labels that occur, in first-appearance order
    let mut used: Vec<usize> = Vec::new();
    for s in 0..g.len() {
        if !used.contains(&g.label(s)) {
            used.push(g.label(s));
        }
    }
    let label = (0..g.len()).map(|s| used.iter().position(|&a| a == g.label(s)).unwrap()).collect();
    g.relabeled(used.iter().map(|&a| a.to_string()).collect(), label).ok()
}

/// Random `d`-sheeted cover of `base`: symbols `(s, i)`, an edge
/// `s → t` lifts to `(s, i) → (t, π(i))` for a random permutation `π`, and
/// `(s, i)` carries the label of `s`. Covers are constant-to-one of degree
/// `d` times the degree of `base` when they are irreducible.
pub fn random_cover(rng: &mut ChaCha8Rng, base: &LabeledGraph, d: usize) -> Option<LabeledGraph> {
    let n = base.len();
    let mut edges = Vec::new();
    for (s, t) in base.edges() {
        let mut perm: Vec<usize> = (0..d).collect();
        for i in (1..d).rev() {
            perm.swap(i, rng.gen_range(0..=i));
        }
        edges.extend((0..d).map(|i| (s * d + i, t * d + perm[i])));
    }
    let x: Vec<String> = (0..n * d).map(|v| format!("{}{}", base.x_symbols()[v / d], (b'a' + (v % d) as u8) as char)).collect();
    let label = (0..n * d).map(|v| base.label(v / d)).collect();
    let g = LabeledGraph::new(x, base.y_symbols().to_vec(), label, edges).ok()?;
    fiberlift::shift::require_irreducible(&g).ok()?;
    Some(g)
}

/// `count` seeded random finite-to-one codes on at most 6 symbols with an
/// image of at least two letters and positive entropy: plain random labelings and random covers
/// of small random codes.
pub fn random_finite_to_one(count: usize, seed: u64) -> Vec<LabeledGraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let g = if out.len() % 2 == 0 {
            random_irreducible(&mut rng, 6)
        } else {
            let d = rng.gen_range(2..=3);
            random_irreducible(&mut rng, 6 / d).and_then(|b| random_cover(&mut rng, &b, d))
        };
        let Some(g) = g else { continue };
        // skip single cycles, whose images are single orbits
        if g.y_len() < 2 || fiberlift::shift::entropy(&g).unwrap() < 1e-6 || compute_degree(&g).is_err() {
            continue;
        }
        out.push(g);
    }
    out
}

/// Seeded random irreducible codes regardless of finite-to-one-ness.
pub fn random_codes(count: usize, seed: u64) -> Vec<LabeledGraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < count {
        if let Some(g) = random_irreducible(&mut rng, 6) {
            out.push(g);
        }
    }
    out
}

pub const RANDOM_SEED: u64 = 20_240_611;

/// Rule 102, difference codes mod 2..5, the sum code mod 5 and 20 random
/// finite-to-one codes.
pub fn sweep_fixtures() -> Vec<Fixture> {
    let mut out = vec![Fixture::block("rule102", rule102())];
    for n in 2..=5 {
        out.push(Fixture::block(&format!("diff{n}"), difference(n)));
    }
    out.push(Fixture::block("sum5", sum(5)));
    for (i, g) in random_finite_to_one(20, RANDOM_SEED).into_iter().enumerate() {
        out.push(Fixture {
            name: format!("random{i}"),
            graph: g,
            recoding: None,
        });
    }
    out
}

fn mobius(n: usize) -> i64 {
    let (mut n, mut sign, mut p) = (n, 1, 2);
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        -sign
    } else {
        sign
    }
}

/// Closed paths of length `p·k` labeled `w^k`, by direct enumeration. A
/// finite-to-one code has at most one path with a given label between two
/// symbols, so the path lists stay short.
pub fn closed_paths(g: &LabeledGraph, w: &[usize], k: usize) -> usize {
    let len = w.len() * k;
    let mut count = 0;
    for start in (0..g.len()).filter(|&s| g.label(s) == w[0]) {
        // one entry per path, so repeated end symbols are kept
        let mut ends = vec![start];
        for i in 1..len {
            ends = ends
                .iter()
                .flat_map(|&s| g.successors(s).iter().copied())
                .filter(|&t| g.label(t) == w[i % w.len()])
                .collect();
            assert!(ends.len() <= 10_000, "too many paths; code is not finite-to-one");
        }
        count += ends.iter().filter(|&&s| g.has_edge(s, start)).count();
    }
    count
}

/// Number of points labeled `w^∞` of least `σ^p`-period `k`, indexed by
/// `k` (entry 0 unused).
///
/// A finite fiber over `w^∞` consists of points fixed by some `σ^{pk}`, and
/// a point of least such `k` passes through `k` distinct `(symbol, phase)`
/// pairs, so `k ≤ n`. Points of least `k` are counted from the closed path
/// counts by Möbius inversion.
pub fn fiber_points_by_period(g: &LabeledGraph, w: &[usize]) -> Vec<usize> {
    let n = g.len();
    let closed: Vec<i64> = (0..=n).map(|k| if k == 0 { 0 } else { closed_paths(g, w, k) as i64 }).collect();
    (0..=n)
        .map(|k| {
            if k == 0 {
                return 0;
            }
            let e: i64 = (1..=k).filter(|j| k % j == 0).map(|j| mobius(k / j) * closed[j]).sum();
            e as usize
        })
        .collect()
}

/// Number of points labeled `w^∞`, by enumeration.
pub fn brute_force_fiber_size(g: &LabeledGraph, w: &[usize]) -> usize {
    fiber_points_by_period(g, w).iter().sum()
}

/// Winding numbers of the lift orbits over `w^∞`, increasing: `σ^p` permutes
/// the points of least period `k` in cycles of length `k`.
pub fn brute_force_windings(g: &LabeledGraph, w: &[usize]) -> Vec<usize> {
    fiber_points_by_period(g, w)
        .iter()
        .enumerate()
        .skip(1)
        .flat_map(|(k, &e)| std::iter::repeat(k).take(e / k))
        .collect()
}

/// Probability vector with small random numerators, all positive.
pub fn random_probabilities(rng: &mut ChaCha8Rng, n: usize) -> Vec<Rational> {
    let weights: Vec<i64> = (0..n).map(|_| rng.gen_range(1..=9)).collect();
    let total: i64 = weights.iter().sum();
    weights.iter().map(|&w| ratio(w, total)).collect()
}

/// Markov measure charging every transition of `g`.
pub fn random_markov_on(rng: &mut ChaCha8Rng, g: &LabeledGraph) -> MarkovMeasure {
    let matrix = (0..g.len())
        .map(|s| {
            let p = random_probabilities(rng, g.successors(s).len());
            let mut row = vec![Rational::zero(); g.len()];
            for (&t, q) in g.successors(s).iter().zip(p) {
                row[t] = q;
            }
            row
        })
        .collect();
    MarkovMeasure::on_graph(g, matrix).unwrap()
}

/// One of the exact measure kinds, with random parameters.
pub fn random_measure(rng: &mut ChaCha8Rng) -> (String, Box<dyn CylinderMeasure>) {
    match rng.gen_range(0..5) {
        0 => {
            let n = rng.gen_range(2..=4);
            ("bernoulli".into(), Box::new(BernoulliMeasure::new(random_probabilities(rng, n)).unwrap()))
        }
        1 => {
            let g = loop {
                if let Some(g) = random_irreducible(rng, 4) {
                    break g;
                }
            };
            ("markov".into(), Box::new(random_markov_on(rng, &g)))
        }
        2 => {
            let g = loop {
                if let Some(g) = random_irreducible(rng, 4) {
                    break g;
                }
            };
            let chain = random_markov_on(rng, &g);
            ("pushforward".into(), Box::new(Pushforward::new(chain, g).unwrap()))
        }
        3 => {
            let n = rng.gen_range(2..=5);
            let b = BernoulliMeasure::new(random_probabilities(rng, n)).unwrap();
            let c = rng.gen_range(0..n);
            ("skew".into(), Box::new(SkewMargin::new(b, c)))
        }
        _ => {
            let n = rng.gen_range(2..=3);
            let len = rng.gen_range(1..=5);
            let word: Vec<usize> = (0..len).map(|_| rng.gen_range(0..n)).collect();
            let orbit = PeriodicOrbit::of_point(&word).unwrap();
            ("orbit".into(), Box::new(COMeasure::new(orbit, n)))
        }
    }
}

/// Checks `Σ_a μ(wa) = μ(w) = Σ_a μ(aw)` exactly.
pub fn consistency_violation(m: &dyn CylinderMeasure, w: &[usize]) -> Option<String> {
    let n = m.alphabet_len();
    let mw = m.cylinder(w);
    let right: Rational = (0..n)
        .map(|a| {
            let mut v = w.to_vec();
            v.push(a);
            m.cylinder(&v)
        })
        .sum();
    let left: Rational = (0..n)
        .map(|a| {
            let mut v = vec![a];
            v.extend_from_slice(w);
            m.cylinder(&v)
        })
        .sum();
    (right != mw || left != mw).then(|| format!("word {w:?}: μ(w)={mw}, Σμ(wa)={right}, Σμ(aw)={left}"))
}

#[derive(Default)]
pub struct SweepTally {
    pub orbits: usize,
    /// Fiber sizes, multiplicity sums and agreement with the oracle.
    pub failures: Vec<String>,
    /// Weights, ergodicity and diagonal masses of the canonical lift.
    pub canonical_failures: Vec<String>,
}

impl SweepTally {
    fn fail(&mut self, msg: String) {
        self.failures.push(msg);
    }

    fn fail_canonical(&mut self, msg: String) {
        self.canonical_failures.push(msg);
    }
}

/// Exact periodic lifts of every image orbit up to `max_period` against the
/// brute-force fiber count and the canonical-lift identities.
pub fn periodic_sweep(f: &Fixture, max_period: usize) -> SweepTally {
    use fiberlift::analysis::{enumerate_image_orbits, is_constant_to_one};
    use fiberlift::fiber::analyze_periodic_lifts;
    use num_traits::One;

    let g = &f.graph;
    let mut t = SweepTally::default();
    let degree = compute_degree(g).unwrap().degree;
    let constant = is_constant_to_one(g).unwrap();
    for y in enumerate_image_orbits(g, max_period).unwrap() {
        t.orbits += 1;
        let at = format!("{} over {}", f.name, g.format_y_word(y.word()));
        let dec = match analyze_periodic_lifts(g, &y) {
            Ok(d) => d,
            Err(e) => {
                t.fail(format!("{at}: {e}"));
                continue;
            }
        };
        let fiber = dec.degree;
        let total: usize = dec.components.iter().map(|c| c.multiplicity).sum();
        if total != fiber {
            t.fail(format!("{at}: multiplicities sum to {total}, fiber {fiber}"));
        }
        let brute = brute_force_fiber_size(g, y.word());
        if brute != fiber {
            t.fail(format!("{at}: fiber {fiber}, brute force {brute}"));
        }
        if constant && fiber != degree {
            t.fail(format!("{at}: constant-to-one code but fiber {fiber} != degree {degree}"));
        }
        for c in &dec.components {
            if c.weight != ratio(c.multiplicity as i64, fiber as i64) {
                t.fail_canonical(format!("{at}: weight {} for multiplicity {}", c.weight, c.multiplicity));
            }
            if c.diagonal_mass != ratio(1, c.multiplicity as i64) {
                t.fail_canonical(format!("{at}: diagonal mass {}", c.diagonal_mass));
            }
            if c.orbit.period() != c.multiplicity * y.period() {
                t.fail(format!("{at}: lift period {} with multiplicity {}", c.orbit.period(), c.multiplicity));
            }
        }
        if !dec.total_weight().is_one() {
            t.fail_canonical(format!("{at}: weights sum to {}", dec.total_weight()));
        }
        let mut windings: Vec<usize> = dec.components.iter().map(|c| c.multiplicity).collect();
        windings.sort_unstable();
        let oracle = brute_force_windings(g, y.word());
        if windings != oracle {
            t.fail(format!("{at}: multiplicities {windings:?}, brute force {oracle:?}"));
        }
        // ergodic iff σ^p cycles through the whole fiber at once
        if dec.is_ergodic() != (oracle == [fiber]) {
            t.fail_canonical(format!("{at}: ergodic flag {}, windings {oracle:?}", dec.is_ergodic()));
        }
    }
    t
}

/// Periodic degree joinings over every orbit up to `max_period` whose fiber
/// has the degree's size; all of them must be related by a permutation.
/// Returns the tally and the number of orbits skipped as not hosted.
pub fn joining_sweep(f: &Fixture, max_period: usize) -> (SweepTally, usize) {
    use fiberlift::analysis::enumerate_image_orbits;
    use fiberlift::joining::enumerate_periodic_degree_joinings;
    use fiberlift::Error;

    let g = &f.graph;
    let mut t = SweepTally::default();
    let mut skipped = 0;
    let lambda = match fiberlift::joining::degree_joining_graph(g) {
        Ok(l) => l,
        Err(e) => {
            t.fail(format!("{}: {e}", f.name));
            return (t, 0);
        }
    };
    for y in enumerate_image_orbits(g, max_period).unwrap() {
        let at = format!("{} over {}", f.name, g.format_y_word(y.word()));
        match enumerate_periodic_degree_joinings(&lambda, &y) {
            Ok(j) => {
                t.orbits += 1;
                if j.joinings.is_empty() {
                    t.fail(format!("{at}: no periodic degree joining"));
                } else if !j.permutation_related {
                    t.fail(format!("{at}: {} joinings not related by a permutation", j.joinings.len()));
                }
            }
            Err(Error::NotDegreeHost { .. }) => skipped += 1,
            Err(e) => t.fail(format!("{at}: {e}")),
        }
    }
    (t, skipped)
}
