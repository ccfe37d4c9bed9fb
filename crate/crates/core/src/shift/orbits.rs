//! Periodic orbits of 1-step SFTs.

use serde::Serialize;

use super::graph::LabeledGraph;
use crate::error::{Error, Result};

/// A periodic orbit, stored as the lexicographically least rotation of its
/// primitive word.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct PeriodicOrbit {
    word: Vec<usize>,
}

impl PeriodicOrbit {
    /// Orbit of the point `word^∞`; `word` must be primitive.
    pub fn new(word: Vec<usize>) -> Result<Self> {
        if word.is_empty() {
            return Err(Error::InvalidInput("periodic word must be non-empty".into()));
        }
        if primitive_period(&word) != word.len() {
            return Err(Error::InvalidInput("periodic word is a proper power".into()));
        }
        Ok(PeriodicOrbit {
            word: least_rotation(&word),
        })
    }

    /// Orbit of `word^∞` for any non-empty word, reducing to its primitive root.
    pub fn of_point(word: &[usize]) -> Result<Self> {
        if word.is_empty() {
            return Err(Error::InvalidInput("periodic word must be non-empty".into()));
        }
        Self::new(word[..primitive_period(word)].to_vec())
    }

    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn period(&self) -> usize {
        self.word.len()
    }

    /// The orbit's points as words of one period, in shift order starting
    /// from the canonical word.
    pub fn points(&self) -> Vec<Vec<usize>> {
        (0..self.period()).map(|r| rotate(&self.word, r)).collect()
    }
}

pub(crate) fn rotate(word: &[usize], r: usize) -> Vec<usize> {
    let mut v = word[r..].to_vec();
    v.extend_from_slice(&word[..r]);
    v
}

/// Least `q` such that `word` is a power of its length-`q` prefix.
pub fn primitive_period(word: &[usize]) -> usize {
    let n = word.len();
    (1..=n)
        .find(|&q| n % q == 0 && (q..n).all(|i| word[i] == word[i - q]))
        .unwrap_or(n)
}

pub fn least_rotation(word: &[usize]) -> Vec<usize> {
    (0..word.len())
        .map(|r| rotate(word, r))
        .min()
        .unwrap_or_default()
}

/// Primitive and strictly smaller than each proper rotation.
pub fn is_lyndon(word: &[usize]) -> bool {
    !word.is_empty() && (1..word.len()).all(|r| word < rotate(word, r).as_slice())
}

/// All orbits of least period at most `max_period`, each reported once by
/// its least primitive word, sorted by period and then lexicographically.
pub fn enumerate_periodic_orbits(g: &LabeledGraph, max_period: usize) -> Result<Vec<PeriodicOrbit>> {
    if max_period == 0 {
        return Err(Error::InvalidInput("max_period must be at least 1".into()));
    }
    let mut out = Vec::new();
    let mut word = Vec::with_capacity(max_period);
    for start in 0..g.len() {
        word.clear();
        word.push(start);
        extend_cycles(g, start, max_period, &mut word, &mut out);
    }
    out.sort_by(|a: &PeriodicOrbit, b| (a.period(), &a.word).cmp(&(b.period(), &b.word)));
    Ok(out)
}

// A Lyndon word starts with its least letter, so only symbols >= start are
// explored.
fn extend_cycles(
    g: &LabeledGraph,
    start: usize,
    max_period: usize,
    word: &mut Vec<usize>,
    out: &mut Vec<PeriodicOrbit>,
) {
    let last = *word.last().unwrap();
    if g.has_edge(last, start) && is_lyndon(word) {
        out.push(PeriodicOrbit { word: word.clone() });
    }
    if word.len() == max_period {
        return;
    }
    for &t in g.successors(last) {
        if t >= start {
            word.push(t);
            extend_cycles(g, start, max_period, word, out);
            word.pop();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_two_shift_up_to_two() {
        let g = LabeledGraph::full_shift(&["0".to_string(), "1".to_string()]);
        let orbits = enumerate_periodic_orbits(&g, 2).unwrap();
        let words: Vec<&[usize]> = orbits.iter().map(|o| o.word()).collect();
        assert_eq!(words, vec![&[0][..], &[1], &[0, 1]]);
    }

    #[test]
    fn golden_mean_up_to_two() {
        let g = LabeledGraph::from_names(
            &["a", "b"],
            &[("a", "a"), ("a", "b"), ("b", "a")],
            &[("a", "a"), ("b", "b")],
        )
        .unwrap();
        let words: Vec<String> = enumerate_periodic_orbits(&g, 2)
            .unwrap()
            .iter()
            .map(|o| g.format_x_word(o.word()))
            .collect();
        assert_eq!(words, ["a", "ab"]);
    }

    #[test]
    fn fixed_points_of_full_shift() {
        let names: Vec<String> = (0..5).map(|i| i.to_string()).collect();
        let g = LabeledGraph::full_shift(&names);
        assert_eq!(enumerate_periodic_orbits(&g, 1).unwrap().len(), 5);
        assert!(enumerate_periodic_orbits(&g, 0).is_err());
    }

    #[test]
    fn orbit_normalization() {
        assert!(PeriodicOrbit::new(vec![0, 1, 0, 1]).is_err());
        assert_eq!(PeriodicOrbit::new(vec![1, 0, 0]).unwrap().word(), [0, 0, 1]);
        assert_eq!(PeriodicOrbit::of_point(&[2, 0, 2, 0]).unwrap().word(), [0, 2]);
        assert_eq!(primitive_period(&[1, 2, 1, 2, 1, 2]), 2);
        assert!(is_lyndon(&[0, 0, 1]) && !is_lyndon(&[0, 1, 0]) && !is_lyndon(&[0, 0]));
    }
}
