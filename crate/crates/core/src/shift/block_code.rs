//! Sliding block codes and their higher-block recoding to 1-block codes.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use super::graph::{format_word, parse_word, LabeledGraph};
use crate::error::{Error, Result};

/// A sliding block code `y_i = Φ(x_{i-m} .. x_{i+n})` on a 1-step SFT domain.
#[derive(Clone, Debug)]
pub struct SlidingBlockCode {
    memory: usize,
    anticipation: usize,
    domain: LabeledGraph,
    y_symbols: Vec<String>,
    block_map: HashMap<Vec<usize>, usize>,
}

/// JSON form: `{"memory":0,"anticipation":1,"alphabet":[..],"block_map":{"ab":"c",..}}`.
///
/// `transitions` restricts the domain to a 1-step SFT (default: full shift);
/// `y_symbols` fixes the image alphabet order.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BlockCodeJson {
    pub memory: usize,
    pub anticipation: usize,
    pub alphabet: Vec<String>,
    pub block_map: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub transitions: Option<Vec<[String; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub y_symbols: Option<Vec<String>>,
}

impl SlidingBlockCode {
    /// Builds a code from a block function evaluated on every allowed window.
    pub fn from_fn(
        memory: usize,
        anticipation: usize,
        domain: LabeledGraph,
        y_symbols: Vec<String>,
        block_fn: impl Fn(&[usize]) -> usize,
    ) -> Result<Self> {
        let window = memory + anticipation + 1;
        let mut block_map = HashMap::new();
        for w in allowed_words(&domain, window) {
            let y = block_fn(&w);
            if y >= y_symbols.len() {
                return Err(Error::InvalidInput(format!("block image {y} out of range")));
            }
            block_map.insert(w, y);
        }
        Ok(SlidingBlockCode {
            memory,
            anticipation,
            domain,
            y_symbols,
            block_map,
        })
    }

    pub fn from_json(json: &BlockCodeJson) -> Result<Self> {
        let n = json.alphabet.len();
        let domain = match &json.transitions {
            None => LabeledGraph::full_shift(&json.alphabet),
            Some(ts) => {
                let mut edges = Vec::with_capacity(ts.len());
                for [a, b] in ts {
                    let a = parse_word(&json.alphabet, a)?;
                    let b = parse_word(&json.alphabet, b)?;
                    if a.len() != 1 || b.len() != 1 {
                        return Err(Error::InvalidInput("transition endpoints must be symbols".into()));
                    }
                    edges.push((a[0], b[0]));
                }
                LabeledGraph::new(json.alphabet.clone(), json.alphabet.clone(), (0..n).collect(), edges)?
            }
        };
        let window = json.memory + json.anticipation + 1;
        let mut parsed: HashMap<Vec<usize>, &str> = HashMap::new();
        for (k, v) in &json.block_map {
            let w = parse_word(&json.alphabet, k)?;
            if w.len() != window {
                return Err(Error::InvalidInput(format!(
                    "block_map key `{k}` has length {} but the window is {window}",
                    w.len()
                )));
            }
            parsed.insert(w, v.as_str());
        }
        let explicit_y = json.y_symbols.is_some();
        let mut y_symbols = json.y_symbols.clone().unwrap_or_default();
        let mut block_map = HashMap::new();
        for w in allowed_words(&domain, window) {
            let y = parsed.get(&w).ok_or_else(|| {
                Error::InvalidInput(format!(
                    "block_map undefined on allowed word `{}`",
                    format_word(&json.alphabet, &w)
                ))
            })?;
            let idx = match y_symbols.iter().position(|s| s == y) {
                Some(i) => i,
                None if explicit_y => {
                    return Err(Error::InvalidInput(format!("image `{y}` missing from y_symbols")))
                }
                None => {
                    y_symbols.push(y.to_string());
                    y_symbols.len() - 1
                }
            };
            block_map.insert(w, idx);
        }
        Ok(SlidingBlockCode {
            memory: json.memory,
            anticipation: json.anticipation,
            domain,
            y_symbols,
            block_map,
        })
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        Self::from_json(&serde_json::from_str(s)?)
    }

    pub fn memory(&self) -> usize {
        self.memory
    }

    pub fn anticipation(&self) -> usize {
        self.anticipation
    }

    pub fn window(&self) -> usize {
        self.memory + self.anticipation + 1
    }

    pub fn domain(&self) -> &LabeledGraph {
        &self.domain
    }

    pub fn alphabet(&self) -> &[String] {
        self.domain.x_symbols()
    }

    pub fn y_symbols(&self) -> &[String] {
        &self.y_symbols
    }

    /// Image of an allowed window.
    pub fn apply_block(&self, window: &[usize]) -> Option<usize> {
        self.block_map.get(window).copied()
    }

    /// Image word of a base word: `|x| - window + 1` symbols.
    pub fn apply(&self, x: &[usize]) -> Option<Vec<usize>> {
        x.windows(self.window()).map(|w| self.apply_block(w)).collect()
    }
}

/// Allowed words of length `k` of the essential part of `domain`, in
/// lexicographic index order.
pub fn allowed_words(domain: &LabeledGraph, k: usize) -> Vec<Vec<usize>> {
    let alive = domain.essential_symbols();
    let mut is_alive = vec![false; domain.len()];
    for &s in &alive {
        is_alive[s] = true;
    }
    let mut words: Vec<Vec<usize>> = alive.iter().map(|&s| vec![s]).collect();
    for _ in 1..k {
        words = words
            .into_iter()
            .flat_map(|w| {
                let last = *w.last().unwrap();
                domain
                    .successors(last)
                    .iter()
                    .filter(|&&t| is_alive[t])
                    .map(move |&t| {
                        let mut v = w.clone();
                        v.push(t);
                        v
                    })
                    .collect::<Vec<_>>()
            })
            .collect();
    }
    words
}

/// A 1-block presentation of a sliding block code on the higher-block
/// shift, together with the data needed to translate back.
///
/// Block symbol `b` stands for the base word `blocks[b]` occupying
/// coordinates `i - memory ..= i + anticipation`; the base symbol at
/// coordinate `i` is `blocks[b][memory]`.
#[derive(Clone, Debug)]
pub struct Recoding {
    pub graph: LabeledGraph,
    pub memory: usize,
    pub window: usize,
    pub base_alphabet: Vec<String>,
    pub blocks: Vec<Vec<usize>>,
}

impl Recoding {
    /// Base symbol at the coordinate the block symbol is attached to.
    pub fn base_symbol(&self, block: usize) -> usize {
        self.blocks[block][self.memory]
    }

    /// Letterwise translation of a block-symbol word to the base coordinates
    /// it sits on.
    pub fn base_word(&self, block_word: &[usize]) -> Vec<usize> {
        block_word.iter().map(|&b| self.base_symbol(b)).collect()
    }

    /// Full base word spanned by a block-symbol path (length `|w| + window - 1`).
    pub fn spanned_word(&self, block_word: &[usize]) -> Vec<usize> {
        let Some((&first, rest)) = block_word.split_first() else {
            return Vec::new();
        };
        let mut out = self.blocks[first].clone();
        out.extend(rest.iter().map(|&b| *self.blocks[b].last().unwrap()));
        out
    }

    /// Block index of a base window.
    pub fn block_index(&self, window: &[usize]) -> Option<usize> {
        self.blocks.iter().position(|b| b == window)
    }

    /// Block-symbol path presenting a base word (`|x| - window + 1` symbols).
    pub fn encode(&self, x: &[usize]) -> Option<Vec<usize>> {
        let index: HashMap<&[usize], usize> = self
            .blocks
            .iter()
            .enumerate()
            .map(|(i, b)| (b.as_slice(), i))
            .collect();
        x.windows(self.window).map(|w| index.get(w).copied()).collect()
    }

    pub fn format_base_word(&self, word: &[usize]) -> String {
        format_word(&self.base_alphabet, word)
    }
}

/// Higher-block presentation of `code` as a 1-block code on a 1-step SFT.
pub fn recode_to_one_block(code: &SlidingBlockCode) -> Recoding {
    let window = code.window();
    let alphabet = code.alphabet();
    let blocks = allowed_words(code.domain(), window);
    let single = alphabet.iter().all(|s| s.chars().count() == 1);
    let names: Vec<String> = blocks
        .iter()
        .map(|b| {
            let parts: Vec<&str> = b.iter().map(|&s| alphabet[s].as_str()).collect();
            parts.join(if single { "" } else { "." })
        })
        .collect();
    let index: HashMap<&[usize], usize> = blocks
        .iter()
        .enumerate()
        .map(|(i, b)| (b.as_slice(), i))
        .collect();
    let mut edges = Vec::new();
    for (i, b) in blocks.iter().enumerate() {
        let last = *b.last().unwrap();
        for &t in code.domain().successors(last) {
            let mut next = b[1..].to_vec();
            next.push(t);
            if let Some(&j) = index.get(next.as_slice()) {
                edges.push((i, j));
            }
        }
    }
    let label = blocks
        .iter()
        .map(|b| code.apply_block(b).expect("block map is total on allowed words"))
        .collect();
    let graph = LabeledGraph::new(names, code.y_symbols().to_vec(), label, edges)
        .expect("recoded graph is well formed");
    Recoding {
        graph,
        memory: code.memory(),
        window,
        base_alphabet: alphabet.to_vec(),
        blocks,
    }
}

/// Either form of factor code input accepted on the command line.
#[derive(Clone, Debug)]
pub enum CodeInput {
    Graph(LabeledGraph),
    Block(Recoding),
}

impl CodeInput {
    /// Detects the schema by the presence of a `block_map` key.
    pub fn from_json_str(s: &str) -> Result<Self> {
        let value: serde_json::Value = serde_json::from_str(s)?;
        if value.get("block_map").is_some() {
            let json: BlockCodeJson = serde_json::from_value(value)?;
            Ok(CodeInput::Block(recode_to_one_block(&SlidingBlockCode::from_json(&json)?)))
        } else {
            let json = serde_json::from_value(value)?;
            Ok(CodeInput::Graph(LabeledGraph::from_json(&json)?))
        }
    }

    pub fn graph(&self) -> &LabeledGraph {
        match self {
            CodeInput::Graph(g) => g,
            CodeInput::Block(r) => &r.graph,
        }
    }

    pub fn recoding(&self) -> Option<&Recoding> {
        match self {
            CodeInput::Graph(_) => None,
            CodeInput::Block(r) => Some(r),
        }
    }

    /// Domain alphabet on which measures are specified.
    pub fn domain_alphabet(&self) -> &[String] {
        match self {
            CodeInput::Graph(g) => g.x_symbols(),
            CodeInput::Block(r) => &r.base_alphabet,
        }
    }

    /// Renders an X-word in domain coordinates.
    pub fn format_domain_word(&self, word: &[usize]) -> String {
        match self {
            CodeInput::Graph(g) => g.format_x_word(word),
            CodeInput::Block(r) => r.format_base_word(&r.base_word(word)),
        }
    }
}
