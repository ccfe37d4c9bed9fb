//! The pair graph of a labeled graph: diamonds and closing properties.

use std::collections::VecDeque;

use crate::error::Result;
use crate::shift::automaton::determinize;
use crate::shift::structure::require_irreducible;
use crate::shift::LabeledGraph;

/// Graph on equally labeled symbol pairs with componentwise transitions.
pub(crate) struct PairGraph {
    pairs: Vec<(usize, usize)>,
    succ: Vec<Vec<usize>>,
    pred: Vec<Vec<usize>>,
}

impl PairGraph {
    pub(crate) fn new(g: &LabeledGraph) -> Self {
        let n = g.len();
        let mut id = vec![usize::MAX; n * n];
        let mut pairs = Vec::new();
        for class in g.label_classes() {
            for &s in &class {
                for &t in &class {
                    id[s * n + t] = pairs.len();
                    pairs.push((s, t));
                }
            }
        }
        let mut succ = vec![Vec::new(); pairs.len()];
        let mut pred = vec![Vec::new(); pairs.len()];
        for (p, &(s, t)) in pairs.iter().enumerate() {
            for &s2 in g.successors(s) {
                for &t2 in g.successors(t) {
                    let q = id[s2 * n + t2];
                    if q != usize::MAX {
                        succ[p].push(q);
                        pred[q].push(p);
                    }
                }
            }
        }
        PairGraph { pairs, succ, pred }
    }

    fn diagonal(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.pairs.len()).filter(|&p| self.pairs[p].0 == self.pairs[p].1)
    }

    fn off_diagonal(&self, p: usize) -> bool {
        self.pairs[p].0 != self.pairs[p].1
    }

    fn reach(adj: &[Vec<usize>], sources: impl Iterator<Item = usize>) -> Vec<bool> {
        let mut seen = vec![false; adj.len()];
        let mut queue: VecDeque<usize> = sources.collect();
        for &s in &queue {
            seen[s] = true;
        }
        while let Some(p) = queue.pop_front() {
            for &q in &adj[p] {
                if !seen[q] {
                    seen[q] = true;
                    queue.push_back(q);
                }
            }
        }
        seen
    }

    /// Vertices starting an infinite path along `adj` (the rest are removed
    /// by repeatedly deleting vertices without `adj`-neighbours).
    fn infinite(adj: &[Vec<usize>], rev: &[Vec<usize>]) -> Vec<bool> {
        let mut alive = vec![true; adj.len()];
        let mut deg: Vec<usize> = adj.iter().map(Vec::len).collect();
        let mut stack: Vec<usize> = (0..adj.len()).filter(|&p| deg[p] == 0).collect();
        while let Some(p) = stack.pop() {
            if !alive[p] {
                continue;
            }
            alive[p] = false;
            for &q in &rev[p] {
                if alive[q] {
                    deg[q] -= 1;
                    if deg[q] == 0 {
                        stack.push(q);
                    }
                }
            }
        }
        alive
    }

    /// An off-diagonal pair lying on a path from the diagonal back to it.
    pub(crate) fn diamond(&self) -> Option<(usize, usize)> {
        let from = Self::reach(&self.succ, self.diagonal());
        let to = Self::reach(&self.pred, self.diagonal());
        (0..self.pairs.len())
            .find(|&p| self.off_diagonal(p) && from[p] && to[p])
            .map(|p| self.pairs[p])
    }

    fn right_closing(&self) -> bool {
        let from = Self::reach(&self.succ, self.diagonal());
        let inf = Self::infinite(&self.succ, &self.pred);
        !(0..self.pairs.len()).any(|p| self.off_diagonal(p) && from[p] && inf[p])
    }

    fn left_closing(&self) -> bool {
        let to = Self::reach(&self.pred, self.diagonal());
        let inf = Self::infinite(&self.pred, &self.succ);
        !(0..self.pairs.len()).any(|p| self.off_diagonal(p) && to[p] && inf[p])
    }
}

/// True iff no two distinct equally labeled paths share both endpoints.
pub fn is_finite_to_one(g: &LabeledGraph) -> Result<bool> {
    require_irreducible(g)?;
    Ok(PairGraph::new(g).diamond().is_none())
}

/// Distinct equally labeled paths that merge in the future never agree on an
/// infinite past.
pub fn is_right_closing(g: &LabeledGraph) -> Result<bool> {
    require_irreducible(g)?;
    Ok(PairGraph::new(g).right_closing())
}

pub fn is_left_closing(g: &LabeledGraph) -> Result<bool> {
    require_irreducible(g)?;
    Ok(PairGraph::new(g).left_closing())
}

/// Between irreducible shifts of finite type the constant-to-one codes are
/// exactly the bi-closing ones. Onto a strictly sofic image a bi-closing
/// code can have fibers of different sizes, so the image is checked too.
pub fn is_constant_to_one(g: &LabeledGraph) -> Result<bool> {
    require_irreducible(g)?;
    let pg = PairGraph::new(g);
    Ok(pg.diamond().is_none() && pg.right_closing() && pg.left_closing() && determinize(g)?.is_finite_type())
}
