use num_traits::{One, Signed, Zero};
use rand::distributions::WeightedIndex;
use rand::prelude::*;
use serde::Serialize;

use super::bernoulli::BernoulliMeasure;
use super::CylinderMeasure;
use crate::error::{Error, Result};
use crate::rational::{self, Rational};
use crate::shift::block_code::Recoding;
use crate::shift::LabeledGraph;

/// Stationary Markov measure with exact transition probabilities.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MarkovMeasure {
    states: Vec<String>,
    #[serde(serialize_with = "serialize_matrix")]
    matrix: Vec<Vec<Rational>>,
    #[serde(with = "rational::serde_rational_vec")]
    stationary: Vec<Rational>,
}

fn serialize_matrix<S: serde::Serializer>(m: &[Vec<Rational>], s: S) -> std::result::Result<S::Ok, S::Error> {
    let rows: Vec<Vec<String>> = m.iter().map(|r| r.iter().map(rational::format).collect()).collect();
    serde::Serialize::serialize(&rows, s)
}

impl MarkovMeasure {
    /// Validates a row-stochastic matrix and solves for its stationary
    /// vector, which must be unique.
    pub fn new(states: Vec<String>, matrix: Vec<Vec<Rational>>) -> Result<Self> {
        let n = states.len();
        if n == 0 || matrix.len() != n || matrix.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidInput("transition matrix must be square and match the states".into()));
        }
        for (i, row) in matrix.iter().enumerate() {
            if !rational::is_probability_vector(row) {
                return Err(Error::InvalidInput(format!(
                    "row `{}` is not a probability vector",
                    states[i]
                )));
            }
        }
        let stationary = stationary_vector(&matrix).ok_or_else(|| {
            Error::NotErgodic("stationary vector is not unique (several closed classes)".into())
        })?;
        Ok(MarkovMeasure {
            states,
            matrix,
            stationary,
        })
    }

    /// Markov measure whose support must lie on the transitions of `g`.
    pub fn on_graph(g: &LabeledGraph, matrix: Vec<Vec<Rational>>) -> Result<Self> {
        let m = Self::new(g.x_symbols().to_vec(), matrix)?;
        for (s, row) in m.matrix.iter().enumerate() {
            for (t, p) in row.iter().enumerate() {
                if !p.is_zero() && !g.has_edge(s, t) {
                    return Err(Error::InvalidInput(format!(
                        "transition {} -> {} has positive probability but is not allowed",
                        g.x_symbols()[s],
                        g.x_symbols()[t]
                    )));
                }
            }
        }
        Ok(m)
    }

    pub fn from_bernoulli(b: &BernoulliMeasure, states: Vec<String>) -> Result<Self> {
        let p = b.probabilities();
        if states.len() != p.len() {
            return Err(Error::InvalidInput("state count differs from the alphabet".into()));
        }
        Ok(MarkovMeasure {
            states,
            matrix: vec![p.to_vec(); p.len()],
            stationary: p.to_vec(),
        })
    }

    /// The same process read through the block symbols of a higher-block
    /// recoding of its state space.
    pub fn higher_block(&self, r: &Recoding) -> Result<Self> {
        if r.base_alphabet.len() != self.len() {
            return Err(Error::InvalidInput("measure alphabet differs from the code's alphabet".into()));
        }
        let g = &r.graph;
        let n = g.len();
        let mut matrix = vec![vec![Rational::zero(); n]; n];
        for (u, v) in g.edges() {
            let a = *r.blocks[u].last().unwrap();
            let b = *r.blocks[v].last().unwrap();
            matrix[u][v] = self.matrix[a][b].clone();
        }
        for (u, row) in matrix.iter().enumerate() {
            if row.iter().sum::<Rational>() != Rational::one() {
                return Err(Error::InvalidInput(format!(
                    "measure charges transitions leaving the domain at block `{}`",
                    g.x_symbols()[u]
                )));
            }
        }
        let stationary = r.blocks.iter().map(|b| self.cylinder(b)).collect();
        Ok(MarkovMeasure {
            states: g.x_symbols().to_vec(),
            matrix,
            stationary,
        })
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn matrix(&self) -> &[Vec<Rational>] {
        &self.matrix
    }

    pub fn stationary(&self) -> &[Rational] {
        &self.stationary
    }

    pub fn transition(&self, s: usize, t: usize) -> &Rational {
        &self.matrix[s][t]
    }

    /// Positive-probability successors of each state.
    pub fn support(&self) -> Vec<Vec<usize>> {
        self.matrix
            .iter()
            .map(|row| (0..row.len()).filter(|&t| !row[t].is_zero()).collect())
            .collect()
    }

    /// Path of the stationary chain.
    pub fn sample<R: Rng>(&self, len: usize, rng: &mut R) -> Vec<usize> {
        if len == 0 {
            return Vec::new();
        }
        let weights = |v: &[Rational]| -> WeightedIndex<f64> {
            let w: Vec<f64> = v.iter().map(rational::to_f64).collect();
            WeightedIndex::new(w).expect("rows carry positive mass")
        };
        let start = weights(&self.stationary);
        let rows: Vec<Option<WeightedIndex<f64>>> = (0..self.len())
            .map(|s| (!self.stationary[s].is_zero()).then(|| weights(&self.matrix[s])))
            .collect();
        let mut out = Vec::with_capacity(len);
        let mut s = start.sample(rng);
        out.push(s);
        for _ in 1..len {
            s = rows[s].as_ref().expect("chain stays on recurrent states").sample(rng);
            out.push(s);
        }
        out
    }
}

impl CylinderMeasure for MarkovMeasure {
    fn alphabet_len(&self) -> usize {
        self.len()
    }

    fn cylinder(&self, w: &[usize]) -> Rational {
        let Some((&first, _)) = w.split_first() else {
            return Rational::one();
        };
        if w.iter().any(|&a| a >= self.len()) {
            return Rational::zero();
        }
        let mut acc = self.stationary[first].clone();
        for pair in w.windows(2) {
            if acc.is_zero() {
                break;
            }
            acc *= &self.matrix[pair[0]][pair[1]];
        }
        acc
    }
}

/// Unique solution of `π P = π`, `Σ π = 1`, or `None` when the solution
/// space has positive dimension.
fn stationary_vector(p: &[Vec<Rational>]) -> Option<Vec<Rational>> {
    let n = p.len();
    // rows: n balance equations and the normalization; columns: π and rhs
    let mut a: Vec<Vec<Rational>> = (0..n)
        .map(|j| {
            let mut row: Vec<Rational> = (0..n)
                .map(|i| if i == j { &p[i][j] - Rational::one() } else { p[i][j].clone() })
                .collect();
            row.push(Rational::zero());
            row
        })
        .collect();
    a.push(vec![Rational::one(); n + 1]);
    let mut rank = 0;
    for col in 0..n {
        let Some(pivot) = (rank..a.len()).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(rank, pivot);
        let inv = Rational::one() / &a[rank][col];
        for x in a[rank].iter_mut() {
            *x *= &inv;
        }
        for r in 0..a.len() {
            if r != rank && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in col..=n {
                    let d = &f * &a[rank][c];
                    a[r][c] -= d;
                }
            }
        }
        rank += 1;
    }
    if rank < n {
        return None;
    }
    let pi: Vec<Rational> = (0..n).map(|i| a[i][n].clone()).collect();
    debug_assert!(pi.iter().all(|x| !x.is_negative()));
    Some(pi)
}
