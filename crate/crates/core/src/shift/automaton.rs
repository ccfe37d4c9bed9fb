//! Subset construction: a deterministic (right-resolving) presentation of
//! the image shift of a labeled graph.

use std::collections::{HashMap, VecDeque};

use fixedbitset::FixedBitSet;

use super::graph::LabeledGraph;
use super::perron::spectral_radius;
use super::structure::{is_nontrivial, strongly_connected_components};
use crate::error::Result;

/// Set of symbols of `g` with label `a` that follow some symbol of `set`.
pub(crate) fn step_forward(g: &LabeledGraph, set: &FixedBitSet, a: usize) -> FixedBitSet {
    let mut out = FixedBitSet::with_capacity(g.len());
    for s in set.ones() {
        for &t in g.successors(s) {
            if g.label(t) == a {
                out.insert(t);
            }
        }
    }
    out
}

/// Set of symbols of `g` with label `a` that precede some symbol of `set`.
pub(crate) fn step_backward(g: &LabeledGraph, set: &FixedBitSet, a: usize) -> FixedBitSet {
    let mut out = FixedBitSet::with_capacity(g.len());
    for t in set.ones() {
        for &s in g.predecessors(t) {
            if g.label(s) == a {
                out.insert(s);
            }
        }
    }
    out
}

pub(crate) fn class_sets(g: &LabeledGraph) -> Vec<FixedBitSet> {
    g.label_classes()
        .into_iter()
        .map(|c| {
            let mut b = FixedBitSet::with_capacity(g.len());
            b.extend(c);
            b
        })
        .collect()
}

/// Deterministic automaton whose states are the non-empty subsets reached by
/// reading label words; the state after reading `w` is the set of symbols
/// ending a path labeled `w`.
#[derive(Clone, Debug)]
pub struct SubsetAutomaton {
    states: Vec<FixedBitSet>,
    transitions: Vec<Vec<(usize, usize)>>,
    initial: Vec<Option<usize>>,
    y_symbols: Vec<String>,
}

impl SubsetAutomaton {
    pub fn state_count(&self) -> usize {
        self.states.len()
    }

    pub fn transition_count(&self) -> usize {
        self.transitions.iter().map(Vec::len).sum()
    }

    pub fn state(&self, i: usize) -> &FixedBitSet {
        &self.states[i]
    }

    pub fn transitions(&self, i: usize) -> &[(usize, usize)] {
        &self.transitions[i]
    }

    pub fn y_symbols(&self) -> &[String] {
        &self.y_symbols
    }

    /// State reached after reading `word`, if it is a label word.
    pub fn run(&self, word: &[usize]) -> Option<usize> {
        let (&first, rest) = word.split_first()?;
        let mut state = (*self.initial.get(first)?)?;
        for &a in rest {
            state = self.transitions[state]
                .iter()
                .find(|&&(b, _)| b == a)
                .map(|&(_, t)| t)?;
        }
        Some(state)
    }

    /// Whether `word` occurs in the image shift. The empty word always does.
    pub fn accepts(&self, word: &[usize]) -> bool {
        word.is_empty() || self.run(word).is_some()
    }

    /// Entropy of the image shift: log spectral radius of the presentation.
    pub fn entropy(&self) -> f64 {
        let n = self.states.len();
        let mut m = vec![vec![0.0; n]; n];
        for (s, ts) in self.transitions.iter().enumerate() {
            for &(_, t) in ts {
                m[s][t] += 1.0;
            }
        }
        spectral_radius(&m).ln()
    }
}

impl SubsetAutomaton {
    /// Whether the image is a shift of finite type.
    ///
    /// Merging states with equal follower sets and keeping the terminal
    /// component gives the minimal right-resolving presentation; the image
    /// is of finite type iff that presentation has finite memory, i.e. no
    /// cycle of equally labeled transitions between distinct states.
    pub fn is_finite_type(&self) -> bool {
        let n = self.states.len();
        // Moore refinement; every state accepts
        let mut block = vec![0usize; n];
        let mut count = 1;
        loop {
            let mut index: HashMap<(usize, Vec<(usize, usize)>), usize> = HashMap::new();
            let next: Vec<usize> = (0..n)
                .map(|s| {
                    let sig = self.transitions[s].iter().map(|&(a, t)| (a, block[t])).collect();
                    let k = index.len();
                    *index.entry((block[s], sig)).or_insert(k)
                })
                .collect();
            let done = index.len() == count;
            count = index.len();
            block = next;
            if done {
                break;
            }
        }
        let mut succ: Vec<Vec<(usize, usize)>> = vec![Vec::new(); count];
        for s in 0..n {
            if succ[block[s]].is_empty() {
                succ[block[s]] = self.transitions[s].iter().map(|&(a, t)| (a, block[t])).collect();
            }
        }
        let plain: Vec<Vec<usize>> = succ.iter().map(|ts| ts.iter().map(|&(_, t)| t).collect()).collect();
        let comps = strongly_connected_components(&plain);
        let mut comp_of = vec![0; count];
        for (i, c) in comps.iter().enumerate() {
            for &v in c {
                comp_of[v] = i;
            }
        }
        let terminal: Vec<usize> = comps
            .iter()
            .enumerate()
            .find(|(i, c)| c.iter().all(|&v| plain[v].iter().all(|&t| comp_of[t] == *i)))
            .map(|(_, c)| c.clone())
            .unwrap_or_default();
        // off-diagonal pairs of the terminal component, with their successors
        let pos: HashMap<usize, usize> = terminal.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let m = terminal.len();
        let pair = |p: usize, q: usize| pos[&p] * m + pos[&q];
        let mut pair_succ = vec![Vec::new(); m * m];
        for &p in &terminal {
            for &q in &terminal {
                if p == q {
                    continue;
                }
                for &(a, p2) in &succ[p] {
                    if let Some(&(_, q2)) = succ[q].iter().find(|&&(b, _)| b == a) {
                        if p2 != q2 {
                            pair_succ[pair(p, q)].push(pair(p2, q2));
                        }
                    }
                }
            }
        }
        strongly_connected_components(&pair_succ)
            .iter()
            .all(|c| !is_nontrivial(&pair_succ, c))
    }
}

pub fn determinize(g: &LabeledGraph) -> Result<SubsetAutomaton> {
    g.require_essential()?;
    let mut index: HashMap<FixedBitSet, usize> = HashMap::new();
    let mut states: Vec<FixedBitSet> = Vec::new();
    let mut queue = VecDeque::new();
    let mut intern = |set: FixedBitSet, states: &mut Vec<FixedBitSet>, queue: &mut VecDeque<usize>| {
        *index.entry(set.clone()).or_insert_with(|| {
            states.push(set);
            queue.push_back(states.len() - 1);
            states.len() - 1
        })
    };
    let initial: Vec<Option<usize>> = class_sets(g)
        .into_iter()
        .map(|set| (!set.is_clear()).then(|| intern(set, &mut states, &mut queue)))
        .collect();
    let mut transitions: Vec<Vec<(usize, usize)>> = Vec::new();
    while let Some(s) = queue.pop_front() {
        let mut out = Vec::new();
        for a in 0..g.y_len() {
            let next = step_forward(g, &states[s], a);
            if !next.is_clear() {
                out.push((a, intern(next, &mut states, &mut queue)));
            }
        }
        if transitions.len() <= s {
            transitions.resize(s + 1, Vec::new());
        }
        transitions[s] = out;
    }
    transitions.resize(states.len(), Vec::new());
    Ok(SubsetAutomaton {
        states,
        transitions,
        initial,
        y_symbols: g.y_symbols().to_vec(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shift::block_code::{recode_to_one_block, SlidingBlockCode};

    fn bits() -> Vec<String> {
        vec!["0".into(), "1".into()]
    }

    #[test]
    fn rule102_image_is_full_shift() {
        let code = SlidingBlockCode::from_fn(0, 1, LabeledGraph::full_shift(&bits()), bits(), |w| {
            (w[0] + w[1]) % 2
        })
        .unwrap();
        let g = recode_to_one_block(&code).graph;
        let det = determinize(&g).unwrap();
        // some subset state accepts both labels forever
        assert!((0..det.state_count()).any(|s| det.transitions(s).len() == 2));
        for w in [vec![0, 0, 0], vec![1, 0, 1, 1], vec![1; 6]] {
            assert!(det.accepts(&w));
        }
        assert!((det.entropy() - 2f64.ln()).abs() < 1e-10);
    }

    #[test]
    fn identity_labeling_is_isomorphic() {
        let g = LabeledGraph::from_names(
            &["a", "b"],
            &[("a", "a"), ("a", "b"), ("b", "a")],
            &[("a", "a"), ("b", "b")],
        )
        .unwrap();
        let det = determinize(&g).unwrap();
        assert_eq!(det.state_count(), 2);
        assert_eq!(det.transition_count(), 3);
        assert!(!det.accepts(&[1, 1]));
    }

    #[test]
    fn constant_labeling_collapses_to_a_loop() {
        let g = LabeledGraph::full_shift(&bits())
            .relabeled(vec!["0".into()], vec![0, 0])
            .unwrap();
        let det = determinize(&g).unwrap();
        assert_eq!(det.state_count(), 1);
        assert_eq!(det.transitions(0), [(0, 0)]);
        assert!(det.entropy().abs() < 1e-12);
    }

    #[test]
    fn finite_type_images() {
        let rule102 = SlidingBlockCode::from_fn(0, 1, LabeledGraph::full_shift(&bits()), bits(), |w| {
            (w[0] + w[1]) % 2
        })
        .unwrap();
        assert!(determinize(&recode_to_one_block(&rule102).graph).unwrap().is_finite_type());
        // even shift: runs of b between a's have even length
        let even = LabeledGraph::from_names(
            &["p", "q", "r"],
            &[("p", "p"), ("p", "q"), ("q", "r"), ("r", "q"), ("r", "p")],
            &[("p", "a"), ("q", "b"), ("r", "b")],
        )
        .unwrap();
        assert!(!determinize(&even).unwrap().is_finite_type());
    }
}
