//! Exact fibers over periodic points of the image.
//!
//! Over the orbit of `w^∞` (with `w` primitive of length `p`) the preimages
//! are the bi-infinite paths of the phased graph on pairs `(s, k mod p)` with
//! `label(s) = w[k]`. A finite fiber forces every recurrent component to be a
//! single cycle and forbids paths between distinct cycles; a cycle of length
//! `q` is one lift orbit of least period `q`, winding `q / p` times around
//! the base orbit.

use std::collections::VecDeque;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::shift::automaton::determinize;
use crate::shift::orbits::{is_lyndon, PeriodicOrbit};
use crate::shift::structure::{is_nontrivial, strongly_connected_components};
use crate::shift::LabeledGraph;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LiftOrbit {
    pub orbit: PeriodicOrbit,
    pub winding: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PhasedFiberDecomposition {
    pub base_orbit: PeriodicOrbit,
    /// Sorted by orbit word.
    pub lift_orbits: Vec<LiftOrbit>,
    /// Number of preimages of each point of the base orbit.
    pub fiber_size: usize,
}

pub(crate) struct PhasedGraph {
    /// `(symbol, phase)` per vertex, phase-major.
    pub(crate) vertices: Vec<(usize, usize)>,
    pub(crate) succ: Vec<Vec<usize>>,
}

impl PhasedGraph {
    pub(crate) fn new(g: &LabeledGraph, w: &[usize]) -> Self {
        let p = w.len();
        let mut id = vec![vec![usize::MAX; g.len()]; p];
        let mut vertices = Vec::new();
        for (k, &a) in w.iter().enumerate() {
            for s in 0..g.len() {
                if g.label(s) == a {
                    id[k][s] = vertices.len();
                    vertices.push((s, k));
                }
            }
        }
        let succ = vertices
            .iter()
            .map(|&(s, k)| {
                let next = &id[(k + 1) % p];
                g.successors(s)
                    .iter()
                    .filter(|&&t| next[t] != usize::MAX)
                    .map(|&t| next[t])
                    .collect()
            })
            .collect();
        PhasedGraph { vertices, succ }
    }

    pub(crate) fn recurrent_components(&self) -> Vec<Vec<usize>> {
        strongly_connected_components(&self.succ)
            .into_iter()
            .filter(|c| is_nontrivial(&self.succ, c))
            .collect()
    }
}

/// Whether `w^∞` has a preimage in `g`.
pub fn has_periodic_preimage(g: &LabeledGraph, w: &[usize]) -> bool {
    !w.is_empty() && !PhasedGraph::new(g, w).recurrent_components().is_empty()
}

pub fn periodic_fiber(g: &LabeledGraph, y: &PeriodicOrbit) -> Result<PhasedFiberDecomposition> {
    g.require_essential()?;
    let w = y.word();
    if let Some(&bad) = w.iter().find(|&&a| a >= g.y_len()) {
        return Err(Error::InvalidInput(format!("image symbol index {bad} out of range")));
    }
    let p = w.len();
    let name = || g.format_y_word(w);
    let ph = PhasedGraph::new(g, w);
    let comps = ph.recurrent_components();
    if comps.is_empty() {
        return Err(Error::NotInImage(name()));
    }
    let mut comp_of = vec![usize::MAX; ph.vertices.len()];
    for (i, c) in comps.iter().enumerate() {
        for &v in c {
            comp_of[v] = i;
        }
    }
    for (i, c) in comps.iter().enumerate() {
        // a simple cycle: each vertex has exactly one successor inside
        if c.iter().any(|&v| ph.succ[v].iter().filter(|&&u| comp_of[u] == i).count() != 1) {
            return Err(Error::FiberInfinite(name()));
        }
        // no transit from this cycle to another one
        let mut seen = vec![false; ph.vertices.len()];
        let mut queue: VecDeque<usize> = c.iter().copied().collect();
        while let Some(v) = queue.pop_front() {
            for &u in &ph.succ[v] {
                if comp_of[u] != usize::MAX && comp_of[u] != i {
                    return Err(Error::FiberInfinite(name()));
                }
                if !seen[u] {
                    seen[u] = true;
                    queue.push_back(u);
                }
            }
        }
    }
    let mut lift_orbits = Vec::with_capacity(comps.len());
    for (i, c) in comps.iter().enumerate() {
        let start = *c
            .iter()
            .filter(|&&v| ph.vertices[v].1 == 0)
            .min()
            .ok_or_else(|| Error::Internal("lift cycle misses phase 0".into()))?;
        let mut word = Vec::with_capacity(c.len());
        let mut v = start;
        loop {
            word.push(ph.vertices[v].0);
            v = *ph.succ[v].iter().find(|&&u| comp_of[u] == i).unwrap();
            if v == start {
                break;
            }
        }
        let q = word.len();
        if q % p != 0 {
            return Err(Error::Internal(format!("lift cycle of length {q} over period {p}")));
        }
        lift_orbits.push(LiftOrbit {
            orbit: PeriodicOrbit::new(word)?,
            winding: q / p,
        });
    }
    lift_orbits.sort_by(|a, b| a.orbit.cmp(&b.orbit));
    Ok(PhasedFiberDecomposition {
        base_orbit: y.clone(),
        fiber_size: lift_orbits.iter().map(|l| l.winding).sum(),
        lift_orbits,
    })
}

/// Periodic orbits of the image shift of least period at most `max_period`,
/// sorted by period and then by their least word.
pub fn enumerate_image_orbits(g: &LabeledGraph, max_period: usize) -> Result<Vec<PeriodicOrbit>> {
    if max_period == 0 {
        return Err(Error::InvalidInput("max_period must be at least 1".into()));
    }
    let det = determinize(g)?;
    let mut out = Vec::new();
    let mut word = Vec::with_capacity(max_period);
    let mut stack: Vec<(usize, usize)> = Vec::new();
    // iterative DFS over words accepted by the subset automaton
    for a in 0..g.y_len() {
        let Some(state) = det.run(&[a]) else { continue };
        word.clear();
        word.push(a);
        stack.clear();
        stack.push((state, 0));
        loop {
            let Some(&mut (state, ref mut next)) = stack.last_mut() else { break };
            if *next == 0 && is_lyndon(&word) && has_periodic_preimage(g, &word) {
                out.push(PeriodicOrbit::new(word.clone())?);
            }
            let trans = det.transitions(state);
            if word.len() < max_period && *next < trans.len() {
                let (b, t) = trans[*next];
                *next += 1;
                // Lyndon words start with their least letter
                if b >= word[0] {
                    word.push(b);
                    stack.push((t, 0));
                }
            } else {
                stack.pop();
                word.pop();
            }
        }
    }
    out.sort_by(|a, b| (a.period(), a.word()).cmp(&(b.period(), b.word())));
    Ok(out)
}
