//! Vertex-labeled graphs: a 1-step shift of finite type `X` on the vertices
//! together with a 1-block code onto the image alphabet.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A 1-step SFT given by its allowed 2-words, with a total labeling of its
/// symbols by image symbols.
///
/// Symbols are referred to by index; the index order is the input order and
/// is the order used for every lexicographic choice in the crate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledGraph {
    x_symbols: Vec<String>,
    y_symbols: Vec<String>,
    label: Vec<usize>,
    succ: Vec<Vec<usize>>,
    pred: Vec<Vec<usize>>,
}

/// JSON form: `{"x_symbols":[..], "transitions":[["a","b"],..], "label":{"a":"0",..}}`.
///
/// `y_symbols` is optional; when absent the image alphabet is ordered by first
/// appearance while walking `x_symbols` in order.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GraphJson {
    pub x_symbols: Vec<String>,
    pub transitions: Vec<[String; 2]>,
    pub label: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub y_symbols: Option<Vec<String>>,
}

impl LabeledGraph {
    pub fn new(
        x_symbols: Vec<String>,
        y_symbols: Vec<String>,
        label: Vec<usize>,
        transitions: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        let n = x_symbols.len();
        if label.len() != n {
            return Err(Error::InvalidInput(format!(
                "label has {} entries for {} symbols",
                label.len(),
                n
            )));
        }
        if let Some(&bad) = label.iter().find(|&&a| a >= y_symbols.len()) {
            return Err(Error::InvalidInput(format!("label index {bad} out of range")));
        }
        check_distinct(&x_symbols, "x_symbols")?;
        check_distinct(&y_symbols, "y_symbols")?;
        let mut succ = vec![Vec::new(); n];
        let mut pred = vec![Vec::new(); n];
        for (s, t) in transitions {
            if s >= n || t >= n {
                return Err(Error::InvalidInput(format!("transition ({s},{t}) out of range")));
            }
            succ[s].push(t);
            pred[t].push(s);
        }
        for list in succ.iter_mut().chain(pred.iter_mut()) {
            list.sort_unstable();
            list.dedup();
        }
        Ok(LabeledGraph {
            x_symbols,
            y_symbols,
            label,
            succ,
            pred,
        })
    }

    /// Convenience constructor from symbol names.
    pub fn from_names(
        x_symbols: &[&str],
        transitions: &[(&str, &str)],
        label: &[(&str, &str)],
    ) -> Result<Self> {
        let json = GraphJson {
            x_symbols: x_symbols.iter().map(|s| s.to_string()).collect(),
            transitions: transitions
                .iter()
                .map(|(a, b)| [a.to_string(), b.to_string()])
                .collect(),
            label: label
                .iter()
                .map(|(a, b)| (a.to_string(), b.to_string()))
                .collect(),
            y_symbols: None,
        };
        Self::from_json(&json)
    }

    /// The full shift on `names` with the identity labeling.
    pub fn full_shift(names: &[String]) -> Self {
        let n = names.len();
        let edges = (0..n).flat_map(|s| (0..n).map(move |t| (s, t)));
        LabeledGraph::new(names.to_vec(), names.to_vec(), (0..n).collect(), edges)
            .expect("full shift is well formed")
    }

    pub fn from_json(json: &GraphJson) -> Result<Self> {
        let index: HashMap<&str, usize> = json
            .x_symbols
            .iter()
            .enumerate()
            .map(|(i, s)| (s.as_str(), i))
            .collect();
        let lookup = |s: &str| {
            index
                .get(s)
                .copied()
                .ok_or_else(|| Error::InvalidInput(format!("unknown symbol `{s}`")))
        };
        let mut y_symbols = json.y_symbols.clone().unwrap_or_default();
        let explicit_y = json.y_symbols.is_some();
        let mut label = Vec::with_capacity(json.x_symbols.len());
        for x in &json.x_symbols {
            let y = json
                .label
                .get(x)
                .ok_or_else(|| Error::InvalidInput(format!("symbol `{x}` has no label")))?;
            let idx = match y_symbols.iter().position(|s| s == y) {
                Some(i) => i,
                None if explicit_y => {
                    return Err(Error::InvalidInput(format!(
                        "label `{y}` missing from y_symbols"
                    )))
                }
                None => {
                    y_symbols.push(y.clone());
                    y_symbols.len() - 1
                }
            };
            label.push(idx);
        }
        if let Some(extra) = json.label.keys().find(|k| !index.contains_key(k.as_str())) {
            return Err(Error::InvalidInput(format!("label given for unknown symbol `{extra}`")));
        }
        let mut edges = Vec::with_capacity(json.transitions.len());
        for [a, b] in &json.transitions {
            edges.push((lookup(a)?, lookup(b)?));
        }
        LabeledGraph::new(json.x_symbols.clone(), y_symbols, label, edges)
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        Self::from_json(&serde_json::from_str(s)?)
    }

    pub fn to_json(&self) -> GraphJson {
        GraphJson {
            x_symbols: self.x_symbols.clone(),
            transitions: self
                .edges()
                .map(|(s, t)| [self.x_symbols[s].clone(), self.x_symbols[t].clone()])
                .collect(),
            label: (0..self.len())
                .map(|s| (self.x_symbols[s].clone(), self.y_symbols[self.label[s]].clone()))
                .collect(),
            y_symbols: Some(self.y_symbols.clone()),
        }
    }

    /// Graphviz rendering with `symbol / label` vertex captions.
    pub fn to_dot(&self, name: &str) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "digraph \"{}\" {{", escape(name));
        for (s, x) in self.x_symbols.iter().enumerate() {
            let _ = writeln!(
                out,
                "  \"{}\" [label=\"{} / {}\"];",
                escape(x),
                escape(x),
                escape(&self.y_symbols[self.label[s]])
            );
        }
        for (s, t) in self.edges() {
            let _ = writeln!(
                out,
                "  \"{}\" -> \"{}\";",
                escape(&self.x_symbols[s]),
                escape(&self.x_symbols[t])
            );
        }
        out.push_str("}\n");
        out
    }

    pub fn len(&self) -> usize {
        self.x_symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x_symbols.is_empty()
    }

    pub fn x_symbols(&self) -> &[String] {
        &self.x_symbols
    }

    pub fn y_symbols(&self) -> &[String] {
        &self.y_symbols
    }

    pub fn y_len(&self) -> usize {
        self.y_symbols.len()
    }

    pub fn label(&self, s: usize) -> usize {
        self.label[s]
    }

    pub fn labels(&self) -> &[usize] {
        &self.label
    }

    pub fn successors(&self, s: usize) -> &[usize] {
        &self.succ[s]
    }

    pub fn predecessors(&self, s: usize) -> &[usize] {
        &self.pred[s]
    }

    pub fn successor_lists(&self) -> &[Vec<usize>] {
        &self.succ
    }

    pub fn has_edge(&self, s: usize, t: usize) -> bool {
        self.succ[s].binary_search(&t).is_ok()
    }

    pub fn edge_count(&self) -> usize {
        self.succ.iter().map(Vec::len).sum()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.succ
            .iter()
            .enumerate()
            .flat_map(|(s, ts)| ts.iter().map(move |&t| (s, t)))
    }

    pub fn x_index(&self, name: &str) -> Option<usize> {
        self.x_symbols.iter().position(|s| s == name)
    }

    pub fn y_index(&self, name: &str) -> Option<usize> {
        self.y_symbols.iter().position(|s| s == name)
    }

    /// Symbols grouped by label, indexed by image symbol.
    pub fn label_classes(&self) -> Vec<Vec<usize>> {
        let mut classes = vec![Vec::new(); self.y_len()];
        for (s, &a) in self.label.iter().enumerate() {
            classes[a].push(s);
        }
        classes
    }

    /// Symbols lying on some bi-infinite path, in index order.
    pub fn essential_symbols(&self) -> Vec<usize> {
        let n = self.len();
        let mut alive = vec![true; n];
        let mut out_deg: Vec<usize> = self.succ.iter().map(Vec::len).collect();
        let mut in_deg: Vec<usize> = self.pred.iter().map(Vec::len).collect();
        let mut stack: Vec<usize> = (0..n).filter(|&s| out_deg[s] == 0 || in_deg[s] == 0).collect();
        while let Some(s) = stack.pop() {
            if !alive[s] {
                continue;
            }
            alive[s] = false;
            for &t in &self.succ[s] {
                if alive[t] {
                    in_deg[t] -= 1;
                    if in_deg[t] == 0 {
                        stack.push(t);
                    }
                }
            }
            for &p in &self.pred[s] {
                if alive[p] {
                    out_deg[p] -= 1;
                    if out_deg[p] == 0 {
                        stack.push(p);
                    }
                }
            }
        }
        (0..n).filter(|&s| alive[s]).collect()
    }

    pub fn is_essential(&self) -> bool {
        self.essential_symbols().len() == self.len()
    }

    /// Subgraph induced on `keep` (which must be sorted); the image alphabet
    /// is kept whole.
    pub fn induced(&self, keep: &[usize]) -> LabeledGraph {
        let mut new_index = vec![usize::MAX; self.len()];
        for (i, &s) in keep.iter().enumerate() {
            new_index[s] = i;
        }
        let edges: Vec<(usize, usize)> = keep
            .iter()
            .flat_map(|&s| {
                let new_index = &new_index;
                self.succ[s]
                    .iter()
                    .filter(move |&&t| new_index[t] != usize::MAX)
                    .map(move |&t| (new_index[s], new_index[t]))
            })
            .collect();
        LabeledGraph {
            x_symbols: keep.iter().map(|&s| self.x_symbols[s].clone()).collect(),
            y_symbols: self.y_symbols.clone(),
            label: keep.iter().map(|&s| self.label[s]).collect(),
            succ: build_adjacency(keep.len(), edges.iter().copied()),
            pred: build_adjacency(keep.len(), edges.iter().map(|&(s, t)| (t, s))),
        }
    }

    /// Essential part; `EmptyAfterTrim` if nothing survives.
    pub fn trim(&self) -> Result<LabeledGraph> {
        let keep = self.essential_symbols();
        if keep.is_empty() {
            return Err(Error::EmptyAfterTrim);
        }
        Ok(self.induced(&keep))
    }

    pub fn require_essential(&self) -> Result<()> {
        if self.is_empty() {
            return Err(Error::EmptyAfterTrim);
        }
        let keep = self.essential_symbols();
        if keep.len() == self.len() {
            return Ok(());
        }
        let missing = (0..self.len()).find(|s| keep.binary_search(s).is_err()).unwrap();
        Err(Error::NotEssential(self.x_symbols[missing].clone()))
    }

    /// Same graph with every symbol relabeled to a fresh image alphabet.
    pub fn relabeled(&self, y_symbols: Vec<String>, label: Vec<usize>) -> Result<LabeledGraph> {
        LabeledGraph::new(self.x_symbols.clone(), y_symbols, label, self.edges().collect::<Vec<_>>())
    }

    pub fn is_path(&self, word: &[usize]) -> bool {
        word.iter().all(|&s| s < self.len()) && word.windows(2).all(|w| self.has_edge(w[0], w[1]))
    }

    /// True when `word` repeated forever is an allowed point.
    pub fn is_cycle(&self, word: &[usize]) -> bool {
        !word.is_empty() && self.is_path(word) && self.has_edge(word[word.len() - 1], word[0])
    }

    pub fn label_word(&self, word: &[usize]) -> Vec<usize> {
        word.iter().map(|&s| self.label[s]).collect()
    }

    pub fn adjacency_matrix(&self) -> Vec<Vec<f64>> {
        let n = self.len();
        let mut m = vec![vec![0.0; n]; n];
        for (s, t) in self.edges() {
            m[s][t] = 1.0;
        }
        m
    }

    pub fn format_x_word(&self, word: &[usize]) -> String {
        format_word(&self.x_symbols, word)
    }

    pub fn format_y_word(&self, word: &[usize]) -> String {
        format_word(&self.y_symbols, word)
    }

    pub fn parse_x_word(&self, s: &str) -> Result<Vec<usize>> {
        parse_word(&self.x_symbols, s)
    }

    pub fn parse_y_word(&self, s: &str) -> Result<Vec<usize>> {
        parse_word(&self.y_symbols, s)
    }
}

pub(crate) fn build_adjacency(
    n: usize,
    edges: impl IntoIterator<Item = (usize, usize)>,
) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); n];
    for (s, t) in edges {
        adj[s].push(t);
    }
    for list in &mut adj {
        list.sort_unstable();
        list.dedup();
    }
    adj
}

fn check_distinct(names: &[String], what: &str) -> Result<()> {
    let mut seen = std::collections::HashSet::new();
    for s in names {
        if !seen.insert(s) {
            return Err(Error::InvalidInput(format!("duplicate entry `{s}` in {what}")));
        }
    }
    Ok(())
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

fn single_char(names: &[String]) -> bool {
    names.iter().all(|s| s.chars().count() == 1)
}

/// Words over single-character alphabets are written by concatenation,
/// otherwise symbols are separated by spaces.
pub fn format_word(names: &[String], word: &[usize]) -> String {
    let sep = if single_char(names) { "" } else { " " };
    word.iter()
        .map(|&s| names[s].as_str())
        .collect::<Vec<_>>()
        .join(sep)
}

pub fn parse_word(names: &[String], s: &str) -> Result<Vec<usize>> {
    let lookup = |tok: &str| {
        names
            .iter()
            .position(|n| n == tok)
            .ok_or_else(|| Error::InvalidInput(format!("unknown symbol `{tok}` in word `{s}`")))
    };
    if s.contains(char::is_whitespace) || !single_char(names) {
        s.split_whitespace().map(lookup).collect()
    } else {
        s.chars().map(|c| lookup(c.encode_utf8(&mut [0; 4]))).collect()
    }
}
