//! Degree of a finite-to-one 1-block code with a magic-word certificate.
//!
//! For a label word `w` and position `i`, the symbols occurring at `i` in the
//! preimages of `w` are `F ∩ B`, where `F` is the set of end symbols of paths
//! labeled `w[..=i]` and `B` the set of start symbols of paths labeled
//! `w[i..]`. Both sets range over finite subset automata, so the minimum of
//! `|F ∩ B|` over all realizable pairs is found by exhausting them. There are
//! at most `2^n` forward and `2^n` backward subsets for `n` symbols.

use std::collections::{HashMap, VecDeque};

use fixedbitset::FixedBitSet;
use serde::Serialize;

use super::diamond::PairGraph;
use crate::error::{Error, Result};
use crate::shift::automaton::{class_sets, determinize, step_backward, step_forward};
use crate::shift::perron::entropy;
use crate::shift::structure::require_irreducible;
use crate::shift::LabeledGraph;

/// Entropy gap below which the domain and image count as equal.
pub const ENTROPY_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Degree {
    pub degree: usize,
    /// Label word achieving the minimum.
    pub magic_word: Vec<usize>,
    pub magic_position: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct DegreeReport {
    pub finite_to_one: bool,
    pub degree: Option<usize>,
    /// In the image alphabet.
    pub magic_word: Option<String>,
    pub magic_position: Option<usize>,
    pub entropy_x: f64,
    pub entropy_y: f64,
}

// Subsets reached in BFS order, each with a shortest word producing it.
struct Reached {
    sets: Vec<FixedBitSet>,
    words: Vec<Vec<usize>>,
}

fn explore(g: &LabeledGraph, forward: bool) -> Reached {
    let mut index: HashMap<FixedBitSet, usize> = HashMap::new();
    let mut reached = Reached {
        sets: Vec::new(),
        words: Vec::new(),
    };
    let mut queue = VecDeque::new();
    for (a, set) in class_sets(g).into_iter().enumerate() {
        if !set.is_clear() && !index.contains_key(&set) {
            index.insert(set.clone(), reached.sets.len());
            queue.push_back(reached.sets.len());
            reached.sets.push(set);
            reached.words.push(vec![a]);
        }
    }
    while let Some(i) = queue.pop_front() {
        for a in 0..g.y_len() {
            let next = if forward {
                step_forward(g, &reached.sets[i], a)
            } else {
                step_backward(g, &reached.sets[i], a)
            };
            if next.is_clear() || index.contains_key(&next) {
                continue;
            }
            let mut word = reached.words[i].clone();
            if forward {
                word.push(a);
            } else {
                word.insert(0, a);
            }
            index.insert(next.clone(), reached.sets.len());
            queue.push_back(reached.sets.len());
            reached.sets.push(next);
            reached.words.push(word);
        }
    }
    reached
}

/// Minimum of `d_*(w, i)` over all label words, with the first minimizing
/// pair in BFS order as certificate. Assumes `g` essential.
fn degree_search(g: &LabeledGraph) -> Degree {
    let fwd = explore(g, true);
    let bwd = explore(g, false);
    let mut best: Option<Degree> = None;
    for (f, u) in fwd.sets.iter().zip(&fwd.words) {
        let a = *u.last().unwrap();
        for (b, v) in bwd.sets.iter().zip(&bwd.words) {
            if v[0] != a {
                continue;
            }
            let k = f.intersection(b).count();
            if k == 0 || best.as_ref().is_some_and(|d| d.degree <= k) {
                continue;
            }
            let mut word = u.clone();
            word.extend_from_slice(&v[1..]);
            best = Some(Degree {
                degree: k,
                magic_word: word,
                magic_position: u.len() - 1,
            });
        }
    }
    best.expect("an essential graph has a label word")
}

/// Number of distinct symbols at position `i` among the preimages of `w`.
pub fn d_star(g: &LabeledGraph, w: &[usize], i: usize) -> usize {
    assert!(i < w.len(), "position outside the word");
    let classes = class_sets(g);
    let mut f = classes[w[0]].clone();
    for &a in &w[1..=i] {
        f = step_forward(g, &f, a);
    }
    let mut b = classes[w[w.len() - 1]].clone();
    for &a in w[i..w.len() - 1].iter().rev() {
        b = step_backward(g, &b, a);
    }
    f.intersection(&b).count()
}

/// Finite-to-one verdict, entropies and, when finite-to-one, the degree.
///
/// The diamond test and the entropy comparison are computed independently;
/// disagreement is reported as an internal error.
pub fn degree_report(g: &LabeledGraph) -> Result<DegreeReport> {
    require_irreducible(g)?;
    let finite_to_one = PairGraph::new(g).diamond().is_none();
    let entropy_x = entropy(g)?;
    let entropy_y = determinize(g)?.entropy();
    if finite_to_one != ((entropy_x - entropy_y).abs() <= ENTROPY_TOLERANCE) {
        return Err(Error::Internal(format!(
            "diamond test says finite_to_one={finite_to_one} but h(X)={entropy_x}, h(Y)={entropy_y}"
        )));
    }
    let (degree, magic_word, magic_position) = if finite_to_one {
        let d = degree_search(g);
        (
            Some(d.degree),
            Some(g.format_y_word(&d.magic_word)),
            Some(d.magic_position),
        )
    } else {
        (None, None, None)
    };
    Ok(DegreeReport {
        finite_to_one,
        degree,
        magic_word,
        magic_position,
        entropy_x,
        entropy_y,
    })
}

/// Degree of a finite-to-one code; `InfiniteToOne` otherwise.
pub fn compute_degree(g: &LabeledGraph) -> Result<Degree> {
    require_irreducible(g)?;
    if PairGraph::new(g).diamond().is_some() {
        return Err(Error::InfiniteToOne);
    }
    Ok(degree_search(g))
}
