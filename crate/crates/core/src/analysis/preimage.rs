//! Preimages of finite label words.

use fixedbitset::FixedBitSet;

use crate::shift::automaton::{step_backward, step_forward};
use crate::shift::LabeledGraph;

/// Per-position sets of symbols that occur in some bi-extendable preimage
/// of `w`. All sets are empty when `w` has no such preimage.
pub fn viable_sets(g: &LabeledGraph, w: &[usize]) -> Vec<FixedBitSet> {
    let n = g.len();
    let mut essential = FixedBitSet::with_capacity(n);
    essential.extend(g.essential_symbols());
    let class = |a: usize| {
        let mut set = FixedBitSet::with_capacity(n);
        set.extend((0..n).filter(|&s| g.label(s) == a));
        set.intersect_with(&essential);
        set
    };
    if w.is_empty() {
        return Vec::new();
    }
    let mut fwd = vec![class(w[0])];
    for &a in &w[1..] {
        let mut next = step_forward(g, fwd.last().unwrap(), a);
        next.intersect_with(&essential);
        fwd.push(next);
    }
    let mut sets = vec![FixedBitSet::with_capacity(n); w.len()];
    let last = w.len() - 1;
    sets[last] = fwd[last].clone();
    for k in (0..last).rev() {
        let mut prev = step_backward(g, &sets[k + 1], w[k]);
        prev.intersect_with(&fwd[k]);
        sets[k] = prev;
    }
    sets
}

/// All X-words labeled `w` that extend to bi-infinite points, in
/// lexicographic order. The empty word has the empty preimage.
pub fn preimage_words(g: &LabeledGraph, w: &[usize]) -> Vec<Vec<usize>> {
    if w.is_empty() {
        return vec![Vec::new()];
    }
    let sets = viable_sets(g, w);
    let mut out = Vec::new();
    let mut word = Vec::with_capacity(w.len());
    for s in sets[0].ones() {
        word.push(s);
        extend(g, &sets, &mut word, &mut out);
        word.pop();
    }
    out
}

fn extend(g: &LabeledGraph, sets: &[FixedBitSet], word: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if word.len() == sets.len() {
        out.push(word.clone());
        return;
    }
    let k = word.len();
    for &t in g.successors(word[k - 1]) {
        if sets[k].contains(t) {
            word.push(t);
            extend(g, sets, word, out);
            word.pop();
        }
    }
}
