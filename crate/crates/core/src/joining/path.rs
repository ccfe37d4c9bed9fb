//! Paths of the degree joining graph over a window of the image.

use std::collections::HashSet;

use super::product::DegreeJoiningGraph;
use crate::analysis::preimage::viable_sets;
use crate::error::{Error, Result};

/// The lexicographically least path of the joining graph labeled `y`.
///
/// Each coordinate is restricted to the symbols occurring in bi-extendable
/// preimages of `y`; the search backtracks out of dead ends and remembers
/// them, so every (position, symbol) pair is abandoned at most once. The
/// joining graph is essential, so the path extends to a bi-infinite point.
pub fn lambda_path_over(lambda: &DegreeJoiningGraph, y: &[usize]) -> Result<Vec<usize>> {
    if y.is_empty() {
        return Ok(Vec::new());
    }
    let sets = viable_sets(&lambda.base, y);
    if sets.iter().any(|s| s.is_clear()) {
        return Err(Error::NoPath);
    }
    let g = lambda.graph();
    let tuples = lambda.tuples();
    let viable = |k: usize, s: usize| g.label(s) == y[k] && tuples[s].iter().all(|&x| sets[k].contains(x));
    let first: Vec<usize> = (0..g.len()).filter(|&s| viable(0, s)).collect();
    let mut dead: HashSet<(usize, usize)> = HashSet::new();
    let mut path: Vec<usize> = Vec::with_capacity(y.len());
    let mut cursor: Vec<usize> = vec![0];
    while path.len() < y.len() {
        let k = path.len();
        let cands: &[usize] = if k == 0 { &first } else { g.successors(path[k - 1]) };
        let found = (cursor[k]..cands.len()).find(|&i| {
            let s = cands[i];
            viable(k, s) && !dead.contains(&(k, s))
        });
        match found {
            Some(i) => {
                cursor[k] = i + 1;
                path.push(cands[i]);
                cursor.push(0);
            }
            None => {
                cursor.pop();
                let Some(s) = path.pop() else {
                    return Err(Error::NoPath);
                };
                dead.insert((k - 1, s));
            }
        }
    }
    Ok(path)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{difference, rule102};
    use crate::joining::product::degree_joining_graph;

    fn names(lambda: &DegreeJoiningGraph, path: &[usize]) -> Vec<String> {
        path.iter().map(|&s| lambda.graph().x_symbols()[s].clone()).collect()
    }

    #[test]
    fn rule102_over_zeros_and_ones() {
        let lambda = degree_joining_graph(&rule102().graph).unwrap();
        let p = lambda_path_over(&lambda, &[0; 4]).unwrap();
        assert_eq!(names(&lambda, &p), ["00|11"; 4]);
        let p = lambda_path_over(&lambda, &[1; 4]).unwrap();
        assert_eq!(names(&lambda, &p), ["01|10", "10|01", "01|10", "10|01"]);
        assert!(lambda_path_over(&lambda, &[]).unwrap().is_empty());
    }

    #[test]
    fn coordinates_are_preimages() {
        let r = difference(3);
        let lambda = degree_joining_graph(&r.graph).unwrap();
        let y = [0, 1, 2, 2, 0, 1, 1, 0];
        let p = lambda_path_over(&lambda, &y).unwrap();
        for i in 0..3 {
            let x = lambda.coordinate_word(&p, i);
            assert!(r.graph.is_path(&x));
            assert_eq!(r.graph.label_word(&x), y);
        }
    }

    #[test]
    fn words_outside_the_image_have_no_path() {
        let g = crate::shift::LabeledGraph::from_names(
            &["a", "b"],
            &[("a", "a"), ("a", "b"), ("b", "a")],
            &[("a", "a"), ("b", "b")],
        )
        .unwrap();
        let lambda = degree_joining_graph(&g).unwrap();
        assert!(matches!(lambda_path_over(&lambda, &[1, 1]), Err(Error::NoPath)));
    }
}
