//! Perron roots of non-negative matrices and topological entropy.

use super::graph::LabeledGraph;
use super::structure::{is_nontrivial, require_irreducible, strongly_connected_components};
use crate::error::Result;

pub const TOLERANCE: f64 = 1e-12;
pub const MAX_ITERATIONS: usize = 1_000_000;

/// Spectral radius of a non-negative square matrix.
///
/// The matrix may be reducible; the radius is the largest Perron root over
/// its strongly connected blocks.
pub fn spectral_radius(m: &[Vec<f64>]) -> f64 {
    let succ: Vec<Vec<usize>> = m
        .iter()
        .map(|row| (0..row.len()).filter(|&j| row[j] > 0.0).collect())
        .collect();
    strongly_connected_components(&succ)
        .iter()
        .filter(|c| is_nontrivial(&succ, c))
        .map(|c| perron_root(m, c))
        .fold(0.0, f64::max)
}

/// Perron root of the irreducible block of `m` on `comp`.
///
/// Power iteration runs on `A + I`, which is primitive, so periodic blocks
/// converge too. The stopping rule is the Collatz-Wielandt bracket
/// `min (Mx)_i/x_i <= rho <= max (Mx)_i/x_i`, whose width must drop below
/// `TOLERANCE` relative to the root.
fn perron_root(m: &[Vec<f64>], comp: &[usize]) -> f64 {
    let k = comp.len();
    let block: Vec<Vec<f64>> = comp
        .iter()
        .map(|&i| comp.iter().map(|&j| m[i][j]).collect())
        .collect();
    let mut x = vec![1.0 / k as f64; k];
    let mut estimate = 0.0;
    for _ in 0..MAX_ITERATIONS {
        let y: Vec<f64> = (0..k)
            .map(|i| x[i] + block[i].iter().zip(&x).map(|(a, b)| a * b).sum::<f64>())
            .collect();
        let (mut lo, mut hi) = (f64::INFINITY, 0.0f64);
        for i in 0..k {
            let r = y[i] / x[i];
            lo = lo.min(r);
            hi = hi.max(r);
        }
        // Rayleigh quotient, reported if the bracket never closes
        estimate = y.iter().zip(&x).map(|(a, b)| a * b).sum::<f64>()
            / x.iter().map(|a| a * a).sum::<f64>();
        if hi - lo <= TOLERANCE * hi {
            return 0.5 * (lo + hi) - 1.0;
        }
        let norm: f64 = y.iter().sum();
        x = y.into_iter().map(|v| v / norm).collect();
    }
    estimate - 1.0
}

/// Topological entropy (natural log) of the 1-step SFT presented by `g`.
pub fn entropy(g: &LabeledGraph) -> Result<f64> {
    require_irreducible(g)?;
    Ok(spectral_radius(&g.adjacency_matrix()).ln())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    #[test]
    fn full_shift_entropies() {
        for n in [2usize, 3, 5] {
            let names: Vec<String> = (0..n).map(|i| i.to_string()).collect();
            let h = entropy(&LabeledGraph::full_shift(&names)).unwrap();
            assert!((h - (n as f64).ln()).abs() <= 1e-10);
        }
    }

    #[test]
    fn golden_mean_entropy() {
        let g = LabeledGraph::from_names(
            &["a", "b"],
            &[("a", "a"), ("a", "b"), ("b", "a")],
            &[("a", "a"), ("b", "b")],
        )
        .unwrap();
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        assert!((entropy(&g).unwrap() - phi.ln()).abs() <= 1e-10);
    }

    #[test]
    fn periodic_blocks_converge() {
        // a pure 4-cycle has radius 1, a bipartite complete graph K_{2,2} has radius 2
        let cycle = vec![
            vec![0.0, 1.0, 0.0, 0.0],
            vec![0.0, 0.0, 1.0, 0.0],
            vec![0.0, 0.0, 0.0, 1.0],
            vec![1.0, 0.0, 0.0, 0.0],
        ];
        assert!((spectral_radius(&cycle) - 1.0).abs() < 1e-12);
        let bip = vec![
            vec![0.0, 0.0, 1.0, 1.0],
            vec![0.0, 0.0, 1.0, 1.0],
            vec![1.0, 1.0, 0.0, 0.0],
            vec![1.0, 1.0, 0.0, 0.0],
        ];
        assert!((spectral_radius(&bip) - 2.0).abs() < 1e-10);
    }

    #[test]
    fn reducible_radius_is_block_maximum() {
        // a loop feeding into a full 2-block
        let m = vec![
            vec![1.0, 1.0, 0.0],
            vec![0.0, 1.0, 1.0],
            vec![0.0, 1.0, 1.0],
        ];
        assert!((spectral_radius(&m) - 2.0).abs() < 1e-10);
        assert_eq!(spectral_radius(&[vec![0.0]]), 0.0);
    }

    #[test]
    fn entropy_requires_irreducible() {
        let g = LabeledGraph::from_names(
            &["a", "b"],
            &[("a", "a"), ("b", "b")],
            &[("a", "0"), ("b", "0")],
        )
        .unwrap();
        assert!(matches!(entropy(&g), Err(Error::NotIrreducible(_))));
    }
}
