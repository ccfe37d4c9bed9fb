//! Fiber products and the topological degree joining.

use std::collections::{HashMap, HashSet, VecDeque};

use fixedbitset::FixedBitSet;

use crate::analysis::degree::compute_degree;
use crate::error::{Error, Result};
use crate::shift::automaton::{class_sets, step_forward};
use crate::shift::structure::strongly_connected_components;
use crate::shift::LabeledGraph;

/// An SFT whose symbols are equally labeled `n`-tuples of base symbols, with
/// componentwise transitions and the common label.
#[derive(Clone, Debug)]
pub struct FiberProductGraph {
    pub arity: usize,
    /// Tuple symbols render as `a|b|c`.
    pub graph: LabeledGraph,
    /// Base symbols of each tuple symbol, in lexicographic order.
    pub tuples: Vec<Vec<usize>>,
}

/// The fiber product of arity `d` restricted to tuples of pairwise distinct
/// symbols, trimmed to its essential part.
#[derive(Clone, Debug)]
pub struct DegreeJoiningGraph {
    pub product: FiberProductGraph,
    pub base: LabeledGraph,
    pub degree: usize,
    /// Strongly connected components of the joining graph.
    pub components: Vec<Vec<usize>>,
}

fn tuples_of(class: &[usize], n: usize, distinct: bool) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n);
    fn rec(class: &[usize], n: usize, distinct: bool, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for &s in class {
            if distinct && cur.contains(&s) {
                continue;
            }
            cur.push(s);
            rec(class, n, distinct, cur, out);
            cur.pop();
        }
    }
    rec(class, n, distinct, &mut cur, &mut out);
    out
}

fn build(g: &LabeledGraph, n: usize, distinct: bool) -> Result<FiberProductGraph> {
    if n == 0 {
        return Err(Error::InvalidInput("arity must be at least 1".into()));
    }
    let classes = g.label_classes();
    let mut tuples: Vec<Vec<usize>> = classes
        .iter()
        .flat_map(|c| tuples_of(c, n, distinct))
        .collect();
    tuples.sort();
    let index: HashMap<&[usize], usize> = tuples
        .iter()
        .enumerate()
        .map(|(i, t)| (t.as_slice(), i))
        .collect();
    let mut edges = Vec::new();
    for (i, t) in tuples.iter().enumerate() {
        for class in &classes {
            let options: Vec<Vec<usize>> = t
                .iter()
                .map(|&s| {
                    g.successors(s)
                        .iter()
                        .copied()
                        .filter(|u| class.binary_search(u).is_ok())
                        .collect()
                })
                .collect();
            if options.iter().any(Vec::is_empty) {
                continue;
            }
            for next in cartesian(&options) {
                if let Some(&j) = index.get(next.as_slice()) {
                    edges.push((i, j));
                }
            }
        }
    }
    let names = tuples
        .iter()
        .map(|t| {
            t.iter()
                .map(|&s| g.x_symbols()[s].as_str())
                .collect::<Vec<_>>()
                .join("|")
        })
        .collect();
    let label = tuples.iter().map(|t| g.label(t[0])).collect();
    let full = LabeledGraph::new(names, g.y_symbols().to_vec(), label, edges)?;
    let keep = full.essential_symbols();
    if keep.is_empty() {
        return Err(Error::EmptyAfterTrim);
    }
    Ok(FiberProductGraph {
        arity: n,
        graph: full.induced(&keep),
        tuples: keep.iter().map(|&i| tuples[i].clone()).collect(),
    })
}

fn cartesian(options: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::with_capacity(options.len())];
    for opts in options {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                opts.iter().map(move |&s| {
                    let mut v = prefix.clone();
                    v.push(s);
                    v
                })
            })
            .collect();
    }
    out
}

/// The `n`-fold fiber product, trimmed to its essential part.
pub fn fiber_product(g: &LabeledGraph, n: usize) -> Result<FiberProductGraph> {
    build(g, n, false)
}

impl FiberProductGraph {
    /// Symbol index of each tuple symbol after permuting coordinates by
    /// `perm` (coordinate `i` of the result is coordinate `perm[i]` of the
    /// input); `None` where the permuted tuple is not a symbol.
    pub fn permute_coordinates(&self, perm: &[usize]) -> Vec<Option<usize>> {
        let index: HashMap<&[usize], usize> = self
            .tuples
            .iter()
            .enumerate()
            .map(|(i, t)| (t.as_slice(), i))
            .collect();
        self.tuples
            .iter()
            .map(|t| {
                let p: Vec<usize> = perm.iter().map(|&k| t[k]).collect();
                index.get(p.as_slice()).copied()
            })
            .collect()
    }

    /// Base word in coordinate `i` of a word of tuple symbols.
    pub fn coordinate_word(&self, word: &[usize], i: usize) -> Vec<usize> {
        word.iter().map(|&s| self.tuples[s][i]).collect()
    }
}

/// Builds the degree joining graph of a finite-to-one irreducible code and
/// checks that each coordinate projection covers the base alphabet and that
/// the induced code maps onto the image.
pub fn degree_joining_graph(g: &LabeledGraph) -> Result<DegreeJoiningGraph> {
    let degree = compute_degree(g)?.degree;
    let product = build(g, degree, true).map_err(|e| match e {
        Error::EmptyAfterTrim => Error::Internal("degree joining graph is empty".into()),
        e => e,
    })?;
    for i in 0..degree {
        let mut seen = vec![false; g.len()];
        for t in &product.tuples {
            seen[t[i]] = true;
        }
        if let Some(s) = seen.iter().position(|&b| !b) {
            return Err(Error::ProjectionNotOnto {
                coordinate: i,
                symbol: g.x_symbols()[s].clone(),
            });
        }
    }
    if let Some(w) = unlifted_word(g, &product.graph) {
        return Err(Error::JoiningNotOnto(g.format_y_word(&w)));
    }
    let components = strongly_connected_components(product.graph.successor_lists());
    Ok(DegreeJoiningGraph {
        product,
        base: g.clone(),
        degree,
        components,
    })
}

/// A label word of `g` that is not a label word of `h`, if any. Both graphs
/// are essential, so equal languages mean equal image shifts.
pub(crate) fn unlifted_word(g: &LabeledGraph, h: &LabeledGraph) -> Option<Vec<usize>> {
    let gc = class_sets(g);
    let hc = class_sets(h);
    let mut seen: HashSet<(FixedBitSet, FixedBitSet)> = HashSet::new();
    let mut queue = VecDeque::new();
    for a in 0..g.y_len() {
        if gc[a].is_clear() {
            continue;
        }
        if hc[a].is_clear() {
            return Some(vec![a]);
        }
        if seen.insert((gc[a].clone(), hc[a].clone())) {
            queue.push_back((gc[a].clone(), hc[a].clone(), vec![a]));
        }
    }
    while let Some((f, k, word)) = queue.pop_front() {
        for a in 0..g.y_len() {
            let f2 = step_forward(g, &f, a);
            if f2.is_clear() {
                continue;
            }
            let k2 = step_forward(h, &k, a);
            let mut w2 = word.clone();
            w2.push(a);
            if k2.is_clear() {
                return Some(w2);
            }
            if seen.insert((f2.clone(), k2.clone())) {
                queue.push_back((f2, k2, w2));
            }
        }
    }
    None
}

impl DegreeJoiningGraph {
    pub fn graph(&self) -> &LabeledGraph {
        &self.product.graph
    }

    pub fn tuples(&self) -> &[Vec<usize>] {
        &self.product.tuples
    }

    pub fn len(&self) -> usize {
        self.product.tuples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.product.tuples.is_empty()
    }

    pub fn is_irreducible(&self) -> bool {
        self.components.len() == 1
    }

    pub fn permute_coordinates(&self, perm: &[usize]) -> Vec<Option<usize>> {
        self.product.permute_coordinates(perm)
    }

    pub fn coordinate_word(&self, word: &[usize], i: usize) -> Vec<usize> {
        self.product.coordinate_word(word, i)
    }
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    loop {
        out.push(cur.clone());
        // next permutation
        let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{difference, identity, merging, rule102};

    fn names(p: &FiberProductGraph) -> Vec<&str> {
        p.graph.x_symbols().iter().map(String::as_str).collect()
    }

    #[test]
    fn rule102_pairs() {
        let g = rule102().graph;
        let p = fiber_product(&g, 2).unwrap();
        assert_eq!(p.graph.len(), 8);
        let lambda = degree_joining_graph(&g).unwrap();
        assert_eq!(names(&lambda.product), ["00|11", "01|10", "10|01", "11|00"]);
    }

    #[test]
    fn arity_one_and_identity() {
        let g = rule102().graph;
        let p = fiber_product(&g, 1).unwrap();
        assert_eq!(p.graph.len(), g.len());
        assert_eq!(p.graph.edge_count(), g.edge_count());
        let id = identity(2);
        assert_eq!(names(&fiber_product(&id, 2).unwrap()), ["0|0", "1|1"]);
        let lambda = degree_joining_graph(&id).unwrap();
        assert_eq!(lambda.len(), 2);
        assert!(fiber_product(&id, 0).is_err());
    }

    #[test]
    fn difference_code_counts() {
        for n in 2..=4 {
            let lambda = degree_joining_graph(&difference(n).graph).unwrap();
            let fact: usize = (1..=n).product();
            assert_eq!(lambda.len(), n * fact);
        }
    }

    #[test]
    fn permutation_invariance() {
        let lambda = degree_joining_graph(&difference(3).graph).unwrap();
        for perm in permutations(3) {
            let map = lambda.permute_coordinates(&perm);
            assert!(map.iter().all(Option::is_some));
            for (s, t) in lambda.graph().edges() {
                assert!(lambda.graph().has_edge(map[s].unwrap(), map[t].unwrap()));
            }
        }
    }

    #[test]
    fn reducible_joining_is_recorded() {
        assert!(degree_joining_graph(&rule102().graph).unwrap().is_irreducible());
        // offsets (x, x+1, x+2) and (x, x+2, x+1) never mix
        let lambda = degree_joining_graph(&difference(3).graph).unwrap();
        assert_eq!(lambda.components.len(), 2);
        let lambda = degree_joining_graph(&merging()).unwrap();
        assert_eq!(lambda.degree, 1);
    }

    #[test]
    fn permutation_listing() {
        assert_eq!(permutations(3).len(), 6);
        assert_eq!(permutations(3)[1], [0, 2, 1]);
        assert_eq!(permutations(1), [[0]]);
    }
}
