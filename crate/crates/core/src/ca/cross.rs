//! Agreement between the exact lift descriptions and the generic pipeline.

use serde::Serialize;

use super::{CaLiftAnalysis, Family, LinearCACode};
use crate::analysis::degree::compute_degree;
use crate::error::{Error, Result};
use crate::fiber::monte_carlo::{classify_with_joining, cluster_frequency, FactorMeasure, McParams};
use crate::fiber::report::LiftReport;
use crate::joining::product::degree_joining_graph;
use crate::measure::{words_of_length, BernoulliMeasure, CylinderMeasure, MarkovMeasure};
use crate::rational::{self, Rational};

/// Largest allowed gap between an empirical cluster frequency and the exact
/// cylinder mass of its matched lift.
pub const MARGIN_TOLERANCE: f64 = 0.01;

/// Word length used when matching clusters to exact lifts.
pub const MATCH_DEPTH: usize = 3;

#[derive(Clone, Debug, Serialize)]
pub struct ClusterMatch {
    pub cluster: usize,
    pub lift: usize,
    /// Largest frequency gap over words of length at most 3.
    pub gap: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct CrossValidation {
    pub exact: LiftReport,
    pub monte_carlo: LiftReport,
    pub degree: usize,
    pub matches: Vec<ClusterMatch>,
}

/// Runs the exact analyzer and the generic pipeline (degree, degree joining,
/// Monte-Carlo classification) on the same code and measure and lists every
/// disagreement: degree, number of lifts, multiplicities, and cluster
/// frequencies against exact cylinder masses.
pub fn cross_validate(family: Family, alpha: &[Rational], params: &McParams) -> Result<CrossValidation> {
    let n = alpha.len();
    let exact = match family {
        Family::Difference => super::difference_lift_analysis(n, alpha)?,
        Family::Sum => super::sum_code_lift_analysis(alpha)?,
    };
    let code = LinearCACode::new(family, n)?;
    let mut problems = Vec::new();
    let degree = compute_degree(code.graph())?.degree;
    if degree != exact.degree {
        problems.push(format!("degree: generic {degree}, exact {}", exact.degree));
    }
    let lambda = degree_joining_graph(code.graph())?;
    let names: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    let chain = MarkovMeasure::from_bernoulli(&BernoulliMeasure::new(alpha.to_vec())?, names)?
        .higher_block(&code.recoding)?;
    let mc = classify_with_joining(&lambda, &FactorMeasure::Pushforward(chain), params, Some(&code.recoding))?;
    if mc.clusters.len() != exact.lifts.len() {
        problems.push(format!(
            "lift count: {} clusters, {} exact lifts",
            mc.clusters.len(),
            exact.lifts.len()
        ));
    }
    let mut mc_mult: Vec<usize> = mc.clusters.iter().map(Vec::len).collect();
    mc_mult.sort_unstable();
    if mc_mult != exact.multiplicity_multiset() {
        problems.push(format!(
            "multiplicities: clusters {mc_mult:?}, exact {:?}",
            exact.multiplicity_multiset()
        ));
    }
    let matches = match_clusters(&exact, &mc.distributions, &mc.clusters, &mut problems);
    if !problems.is_empty() {
        return Err(Error::Mismatch(problems));
    }
    let mut monte_carlo = mc.report;
    monte_carlo.base_measure = format!("image of {}", super::bernoulli_name(alpha));
    Ok(CrossValidation {
        exact: exact.report(),
        monte_carlo,
        degree,
        matches,
    })
}

fn match_clusters(
    exact: &CaLiftAnalysis,
    dists: &[crate::measure::EmpiricalDistribution],
    clusters: &[Vec<usize>],
    problems: &mut Vec<String>,
) -> Vec<ClusterMatch> {
    let words: Vec<Vec<usize>> = (1..=MATCH_DEPTH)
        .flat_map(|k| words_of_length(exact.modulus, k))
        .collect();
    let exact_masses: Vec<Vec<f64>> = exact
        .lifts
        .iter()
        .map(|l| words.iter().map(|w| rational::to_f64(&l.measure.cylinder(w))).collect())
        .collect();
    let mut used = vec![false; exact.lifts.len()];
    let mut out = Vec::new();
    for (k, members) in clusters.iter().enumerate() {
        let freqs: Vec<f64> = words.iter().map(|w| cluster_frequency(dists, members, w)).collect();
        let best = (0..exact.lifts.len())
            .filter(|&i| !used[i] && exact.lifts[i].multiplicity == members.len())
            .map(|i| {
                let gap = freqs
                    .iter()
                    .zip(&exact_masses[i])
                    .map(|(a, b)| (a - b).abs())
                    .fold(0.0, f64::max);
                (i, gap)
            })
            .min_by(|a, b| a.1.total_cmp(&b.1));
        match best {
            Some((i, gap)) if gap <= MARGIN_TOLERANCE => {
                used[i] = true;
                out.push(ClusterMatch {
                    cluster: k,
                    lift: i,
                    gap,
                });
            }
            Some((i, gap)) => problems.push(format!(
                "cluster {k}: closest exact lift `{}` differs by {gap:.4}",
                exact.lifts[i].name
            )),
            None => problems.push(format!("cluster {k}: no exact lift of multiplicity {}", members.len())),
        }
    }
    out
}
