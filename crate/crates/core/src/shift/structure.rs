//! Strongly connected components, periods and irreducibility.

use petgraph::algo::tarjan_scc;
use petgraph::graph::{DiGraph, NodeIndex};
use serde::Serialize;

use super::graph::LabeledGraph;
use crate::error::{Error, Result};

/// Strongly connected components of an adjacency-list graph.
///
/// Each component is sorted and components are ordered by their least vertex.
pub fn strongly_connected_components(succ: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut g = DiGraph::<(), ()>::with_capacity(succ.len(), 0);
    let nodes: Vec<NodeIndex> = (0..succ.len()).map(|_| g.add_node(())).collect();
    for (s, ts) in succ.iter().enumerate() {
        for &t in ts {
            g.add_edge(nodes[s], nodes[t], ());
        }
    }
    let mut comps: Vec<Vec<usize>> = tarjan_scc(&g)
        .into_iter()
        .map(|c| {
            let mut c: Vec<usize> = c.into_iter().map(|n| n.index()).collect();
            c.sort_unstable();
            c
        })
        .collect();
    comps.sort_unstable_by_key(|c| c[0]);
    comps
}

/// Whether a component carries at least one cycle.
pub fn is_nontrivial(succ: &[Vec<usize>], comp: &[usize]) -> bool {
    comp.len() > 1 || succ[comp[0]].contains(&comp[0])
}

/// gcd of cycle lengths inside a component; `None` for a component without
/// cycles.
pub fn component_period(succ: &[Vec<usize>], comp: &[usize]) -> Option<usize> {
    if !is_nontrivial(succ, comp) {
        return None;
    }
    let mut level = std::collections::HashMap::new();
    level.insert(comp[0], 0i64);
    let mut queue = std::collections::VecDeque::from([comp[0]]);
    let inside: std::collections::HashSet<usize> = comp.iter().copied().collect();
    let mut g = 0i64;
    while let Some(s) = queue.pop_front() {
        let ls = level[&s];
        for &t in &succ[s] {
            if !inside.contains(&t) {
                continue;
            }
            match level.get(&t) {
                Some(&lt) => g = gcd(g, (ls + 1 - lt).abs()),
                None => {
                    level.insert(t, ls + 1);
                    queue.push_back(t);
                }
            }
        }
    }
    Some(g as usize)
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Component {
    pub symbols: Vec<String>,
    /// gcd of cycle lengths; absent for a transient singleton.
    pub period: Option<usize>,
}

/// Essential form and SCC decomposition of a labeled graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StructureReport {
    pub is_essential: bool,
    /// Symbols of the essential part, in input order.
    pub essential_symbols: Vec<String>,
    /// Symbols removed by trimming.
    pub trimmed_symbols: Vec<String>,
    pub components: Vec<Component>,
    pub is_irreducible: bool,
}

pub fn analyze_graph(g: &LabeledGraph) -> Result<StructureReport> {
    if g.is_empty() {
        return Err(Error::InvalidInput("graph has no symbols".into()));
    }
    let keep = g.essential_symbols();
    if keep.is_empty() {
        return Err(Error::EmptyAfterTrim);
    }
    let trimmed = g.induced(&keep);
    let comps = strongly_connected_components(trimmed.successor_lists());
    let components = comps
        .iter()
        .map(|c| Component {
            symbols: c.iter().map(|&s| trimmed.x_symbols()[s].clone()).collect(),
            period: component_period(trimmed.successor_lists(), c),
        })
        .collect::<Vec<_>>();
    Ok(StructureReport {
        is_essential: keep.len() == g.len(),
        essential_symbols: trimmed.x_symbols().to_vec(),
        trimmed_symbols: (0..g.len())
            .filter(|s| keep.binary_search(s).is_err())
            .map(|s| g.x_symbols()[s].clone())
            .collect(),
        is_irreducible: components.len() == 1 && components[0].symbols.len() == trimmed.len(),
        components,
    })
}

/// `Ok` when `g` is essential and irreducible.
pub fn require_irreducible(g: &LabeledGraph) -> Result<()> {
    g.require_essential()?;
    let comps = strongly_connected_components(g.successor_lists());
    if comps.len() != 1 {
        return Err(Error::NotIrreducible(comps.len()));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn full_two_shift() -> LabeledGraph {
        LabeledGraph::full_shift(&["0".to_string(), "1".to_string()])
    }

    #[test]
    fn full_shift_is_irreducible_aperiodic() {
        let r = analyze_graph(&full_two_shift()).unwrap();
        assert!(r.is_irreducible && r.is_essential);
        assert_eq!(r.components.len(), 1);
        assert_eq!(r.components[0].period, Some(1));
    }

    #[test]
    fn golden_mean_is_irreducible_aperiodic() {
        let g = LabeledGraph::from_names(
            &["a", "b"],
            &[("a", "a"), ("a", "b"), ("b", "a")],
            &[("a", "a"), ("b", "b")],
        )
        .unwrap();
        let r = analyze_graph(&g).unwrap();
        assert!(r.is_irreducible);
        assert_eq!(r.components[0].period, Some(1));
    }

    #[test]
    fn disjoint_loops_are_reducible() {
        let g = LabeledGraph::from_names(
            &["a", "b"],
            &[("a", "a"), ("b", "b")],
            &[("a", "0"), ("b", "0")],
        )
        .unwrap();
        let r = analyze_graph(&g).unwrap();
        assert_eq!(r.components.len(), 2);
        assert!(!r.is_irreducible);
        assert!(matches!(require_irreducible(&g), Err(Error::NotIrreducible(2))));
    }

    #[test]
    fn periods_of_cycles() {
        let cycle3 = LabeledGraph::from_names(
            &["a", "b", "c"],
            &[("a", "b"), ("b", "c"), ("c", "a")],
            &[("a", "0"), ("b", "0"), ("c", "0")],
        )
        .unwrap();
        assert_eq!(analyze_graph(&cycle3).unwrap().components[0].period, Some(3));
        // cycles of lengths 2 and 4 share period 2
        let g = LabeledGraph::from_names(
            &["a", "b", "c", "d"],
            &[("a", "b"), ("b", "a"), ("b", "c"), ("c", "d"), ("d", "a")],
            &[("a", "0"), ("b", "0"), ("c", "0"), ("d", "0")],
        )
        .unwrap();
        assert_eq!(analyze_graph(&g).unwrap().components[0].period, Some(2));
    }

    #[test]
    fn transient_components_have_no_period() {
        // a loops, b passes from a to c, c loops
        let g = LabeledGraph::from_names(
            &["a", "b", "c"],
            &[("a", "a"), ("a", "b"), ("b", "c"), ("c", "c")],
            &[("a", "0"), ("b", "0"), ("c", "0")],
        )
        .unwrap();
        let r = analyze_graph(&g).unwrap();
        assert!(r.is_essential);
        assert_eq!(r.components.len(), 3);
        assert_eq!(r.components[1].period, None);
    }

    #[test]
    fn trims_before_reporting() {
        let g = LabeledGraph::from_names(
            &["a", "b"],
            &[("a", "a"), ("a", "b")],
            &[("a", "0"), ("b", "0")],
        )
        .unwrap();
        let r = analyze_graph(&g).unwrap();
        assert!(!r.is_essential);
        assert_eq!(r.trimmed_symbols, ["b"]);
        assert!(r.is_irreducible);
        let dead = LabeledGraph::from_names(&["a"], &[], &[("a", "0")]).unwrap();
        assert!(matches!(analyze_graph(&dead), Err(Error::EmptyAfterTrim)));
    }
}
