//! Statistical classification of the lifts of a fully supported Markov
//! measure on the image.
//!
//! A long sample `y` of the base measure is lifted to a path of the degree
//! joining graph; its coordinates are the preimages of `y`. Coordinates
//! whose empirical cylinder frequencies agree within the tolerance are
//! grouped, and each group is reported as one lift with multiplicity equal
//! to its size. The groups are estimates and are never identified with
//! exact measures.

use std::collections::BTreeMap;

use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::report::{Lift, LiftReport, Method, MonteCarloInfo};
use crate::analysis::diamond::is_constant_to_one;
use crate::error::{Error, Result};
use crate::joining::path::lambda_path_over;
use crate::joining::product::{degree_joining_graph, unlifted_word, DegreeJoiningGraph};
use crate::measure::{EmpiricalDistribution, MarkovMeasure};
use crate::shift::block_code::Recoding;
use crate::shift::graph::format_word;
use crate::shift::LabeledGraph;

pub const DEFAULT_SAMPLE_LENGTH: usize = 1_000_000;
pub const DEFAULT_CYL_DEPTH: usize = 3;
pub const DEFAULT_SEED: u64 = 0;

#[derive(Clone, Debug, PartialEq)]
pub struct McParams {
    pub sample_length: usize,
    pub cyl_depth: usize,
    /// `None` selects `5 / √T`.
    pub tolerance: Option<f64>,
    pub seed: u64,
}

impl Default for McParams {
    fn default() -> Self {
        McParams {
            sample_length: DEFAULT_SAMPLE_LENGTH,
            cyl_depth: DEFAULT_CYL_DEPTH,
            tolerance: None,
            seed: DEFAULT_SEED,
        }
    }
}

impl McParams {
    pub fn tolerance(&self) -> f64 {
        self.tolerance
            .unwrap_or(5.0 / (self.sample_length as f64).sqrt())
    }
}

/// The base measure: a Markov measure on the domain symbols pushed forward,
/// or a Markov measure given directly on the image alphabet.
#[derive(Clone, Debug)]
pub enum FactorMeasure {
    Pushforward(MarkovMeasure),
    Direct(MarkovMeasure),
}

impl FactorMeasure {
    fn sample(&self, g: &LabeledGraph, len: usize, seed: u64) -> Vec<usize> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        match self {
            FactorMeasure::Pushforward(m) => g.label_word(&m.sample(len, &mut rng)),
            FactorMeasure::Direct(m) => m.sample(len, &mut rng),
        }
    }

    /// Whether the support of the measure is the whole image shift.
    fn is_fully_supported(&self, g: &LabeledGraph) -> Result<bool> {
        let (chain, chain_graph) = match self {
            FactorMeasure::Pushforward(m) => {
                if m.len() != g.len() {
                    return Err(Error::InvalidInput("measure states differ from the code's symbols".into()));
                }
                (m, g.clone())
            }
            FactorMeasure::Direct(m) => {
                if m.len() != g.y_len() {
                    return Err(Error::InvalidInput("measure states differ from the image alphabet".into()));
                }
                let y = g.y_symbols().to_vec();
                let id = LabeledGraph::new(y.clone(), y, (0..g.y_len()).collect(), Vec::<(usize, usize)>::new())?;
                (m, id)
            }
        };
        // positive transitions between recurrent states
        let edges: Vec<(usize, usize)> = chain
            .support()
            .iter()
            .enumerate()
            .filter(|&(s, _)| !chain.stationary()[s].is_zero())
            .flat_map(|(s, ts)| ts.iter().map(move |&t| (s, t)).collect::<Vec<_>>())
            .collect();
        let s = LabeledGraph::new(
            chain_graph.x_symbols().to_vec(),
            chain_graph.y_symbols().to_vec(),
            chain_graph.labels().to_vec(),
            edges,
        )?;
        let Ok(s) = s.trim() else { return Ok(false) };
        if unlifted_word(g, &s).is_some() {
            return Ok(false);
        }
        // a measure given on the image must also live inside it
        if matches!(self, FactorMeasure::Direct(_)) && unlifted_word(&s, g).is_some() {
            return Err(Error::InvalidInput("measure charges words outside the image".into()));
        }
        Ok(true)
    }
}

/// Per-coordinate statistics and the resulting clusters.
#[derive(Clone, Debug)]
pub struct McClassification {
    pub report: LiftReport,
    pub distributions: Vec<EmpiricalDistribution>,
    /// Coordinates of each cluster, ordered by least coordinate.
    pub clusters: Vec<Vec<usize>>,
}

/// Classifies lifts by sampling. `recoding` translates domain symbols back
/// to the base alphabet when the code came from a block map.
pub fn classify_lifts_monte_carlo(
    g: &LabeledGraph,
    measure: &FactorMeasure,
    params: &McParams,
    recoding: Option<&Recoding>,
) -> Result<McClassification> {
    let lambda = degree_joining_graph(g)?;
    classify_with_joining(&lambda, measure, params, recoding)
}

pub fn classify_with_joining(
    lambda: &DegreeJoiningGraph,
    measure: &FactorMeasure,
    params: &McParams,
    recoding: Option<&Recoding>,
) -> Result<McClassification> {
    let g = &lambda.base;
    if params.sample_length == 0 || params.cyl_depth == 0 {
        return Err(Error::InvalidInput("sample length and cylinder depth must be positive".into()));
    }
    let mut warnings = Vec::new();
    if !measure.is_fully_supported(g)? {
        if !is_constant_to_one(g)? {
            return Err(Error::NotFullySupported(
                "the measure misses part of the image and the code is not constant-to-one".into(),
            ));
        }
        warnings.push("measure is not fully supported; relying on the code being constant-to-one".into());
    }
    let burn_in = lambda.len();
    let y = measure.sample(g, params.sample_length + 2 * burn_in, params.seed);
    let path = lambda_path_over(lambda, &y)?;
    let core = &path[burn_in..burn_in + params.sample_length];
    let alphabet: Vec<String> = match recoding {
        Some(r) => r.base_alphabet.clone(),
        None => g.x_symbols().to_vec(),
    };
    let distributions: Vec<EmpiricalDistribution> = (0..lambda.degree)
        .into_par_iter()
        .map(|i| {
            let mut x = lambda.coordinate_word(core, i);
            if let Some(r) = recoding {
                x = r.base_word(&x);
            }
            EmpiricalDistribution::from_sample(&x, alphabet.len(), params.cyl_depth)
        })
        .collect::<Result<Vec<_>>>()?;
    let tolerance = params.tolerance();
    let clusters = single_linkage(&distributions, tolerance);
    let (max_within, min_between) = spread(&distributions, &clusters);
    let lifts = clusters
        .iter()
        .enumerate()
        .map(|(k, members)| Lift {
            coordinates: Some(members.clone()),
            frequencies: Some(mean_frequencies(&distributions, members, &alphabet)),
            ..Lift::new(format!("cluster {k}"), members.len())
        })
        .collect();
    let report = LiftReport {
        base_measure: String::new(),
        degree: lambda.degree,
        method: Method::MonteCarlo,
        lifts,
        canonical_lift_ergodic: None,
        monte_carlo: Some(MonteCarloInfo {
            sample_length: params.sample_length,
            cyl_depth: params.cyl_depth,
            tolerance,
            seed: params.seed,
            burn_in,
            max_within,
            min_between,
        }),
        warnings,
    };
    Ok(McClassification {
        report,
        distributions,
        clusters,
    })
}

/// Connected components of the graph joining distributions at distance at
/// most `tol`, each sorted, ordered by least member.
pub fn single_linkage(dists: &[EmpiricalDistribution], tol: f64) -> Vec<Vec<usize>> {
    let n = dists.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while parent[r] != r {
            r = parent[r];
        }
        parent[i] = r;
        r
    }
    for i in 0..n {
        for j in i + 1..n {
            if dists[i].distance(&dists[j]) <= tol {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..n {
        let r = find(&mut parent, i);
        groups.entry(r).or_default().push(i);
    }
    groups.into_values().collect()
}

fn spread(dists: &[EmpiricalDistribution], clusters: &[Vec<usize>]) -> (f64, Option<f64>) {
    let mut cluster_of = vec![0; dists.len()];
    for (k, c) in clusters.iter().enumerate() {
        for &i in c {
            cluster_of[i] = k;
        }
    }
    let mut within: f64 = 0.0;
    let mut between: Option<f64> = None;
    for i in 0..dists.len() {
        for j in i + 1..dists.len() {
            let d = dists[i].distance(&dists[j]);
            if cluster_of[i] == cluster_of[j] {
                within = within.max(d);
            } else {
                between = Some(between.map_or(d, |b| b.min(d)));
            }
        }
    }
    (within, between)
}

fn mean_frequencies(
    dists: &[EmpiricalDistribution],
    members: &[usize],
    alphabet: &[String],
) -> BTreeMap<String, f64> {
    let mut sums: BTreeMap<Vec<usize>, f64> = BTreeMap::new();
    for &i in members {
        for (w, f) in dists[i].nonzero() {
            *sums.entry(w).or_default() += f;
        }
    }
    let mut words: Vec<(Vec<usize>, f64)> = sums.into_iter().collect();
    words.sort_by(|a, b| (a.0.len(), &a.0).cmp(&(b.0.len(), &b.0)));
    words
        .into_iter()
        .map(|(w, f)| (format_word(alphabet, &w), f / members.len() as f64))
        .collect()
}

/// Mean frequency of `w` over a cluster.
pub fn cluster_frequency(dists: &[EmpiricalDistribution], members: &[usize], w: &[usize]) -> f64 {
    if members.is_empty() {
        return f64::zero();
    }
    members.iter().map(|&i| dists[i].frequency(w)).sum::<f64>() / members.len() as f64
}
