//! JSON form of measures: rationals are `"p/q"` strings and symbols are
//! referred to by name.
//!
//! ```json
//! {"type": "bernoulli", "probabilities": ["7/10", "3/10"]}
//! {"type": "markov", "states": ["a", "b"], "matrix": [["1/2", "1/2"], ["1", "0"]]}
//! {"type": "periodic", "orbit": ["1"], "side": "image"}
//! ```
//!
//! `side` says whether the measure lives on the domain (and is pushed
//! forward) or directly on the image. It defaults to `domain` for Bernoulli
//! and Markov measures and to `image` for periodic orbits.

use serde::{Deserialize, Serialize};

use super::bernoulli::BernoulliMeasure;
use super::markov::MarkovMeasure;
use crate::error::{Error, Result};
use crate::rational::{self, Rational};
use crate::shift::graph::parse_word;
use crate::shift::orbits::PeriodicOrbit;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Domain,
    Image,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum MeasureKind {
    Bernoulli {
        #[serde(with = "rational::serde_rational_vec")]
        probabilities: Vec<Rational>,
    },
    Markov {
        states: Vec<String>,
        matrix: Vec<Vec<String>>,
    },
    Periodic {
        orbit: OrbitSpec,
    },
}

/// An orbit given as a list of symbol names or as a single word.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum OrbitSpec {
    Symbols(Vec<String>),
    Word(String),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MeasureJson {
    #[serde(flatten)]
    pub kind: MeasureKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub side: Option<Side>,
}

/// A measure resolved against a concrete alphabet.
#[derive(Clone, Debug)]
pub enum Measure {
    Bernoulli(BernoulliMeasure),
    Markov(MarkovMeasure),
    Periodic(PeriodicOrbit),
}

impl MeasureJson {
    pub fn from_json_str(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn side(&self) -> Side {
        self.side.unwrap_or(match self.kind {
            MeasureKind::Periodic { .. } => Side::Image,
            _ => Side::Domain,
        })
    }

    /// Resolves symbol names against `alphabet`; Bernoulli weights are read
    /// in alphabet order and Markov states may come in any order.
    pub fn resolve(&self, alphabet: &[String]) -> Result<Measure> {
        match &self.kind {
            MeasureKind::Bernoulli { probabilities } => {
                if probabilities.len() != alphabet.len() {
                    return Err(Error::InvalidInput(format!(
                        "{} weights for an alphabet of {} symbols",
                        probabilities.len(),
                        alphabet.len()
                    )));
                }
                Ok(Measure::Bernoulli(BernoulliMeasure::new(probabilities.clone())?))
            }
            MeasureKind::Markov { states, matrix } => {
                let mut sorted_states = states.clone();
                sorted_states.sort();
                let mut sorted_alphabet = alphabet.to_vec();
                sorted_alphabet.sort();
                if sorted_states != sorted_alphabet || matrix.len() != states.len() {
                    return Err(Error::InvalidInput(
                        "Markov states must list every alphabet symbol exactly once".into(),
                    ));
                }
                let pos: Vec<usize> = alphabet
                    .iter()
                    .map(|a| states.iter().position(|s| s == a).unwrap())
                    .collect();
                let mut rows = Vec::with_capacity(alphabet.len());
                for &i in &pos {
                    if matrix[i].len() != states.len() {
                        return Err(Error::InvalidInput("transition matrix is not square".into()));
                    }
                    rows.push(pos.iter().map(|&j| rational::parse(&matrix[i][j])).collect::<Result<Vec<_>>>()?);
                }
                Ok(Measure::Markov(MarkovMeasure::new(alphabet.to_vec(), rows)?))
            }
            MeasureKind::Periodic { orbit } => {
                let word = match orbit {
                    OrbitSpec::Symbols(names) => names
                        .iter()
                        .map(|s| {
                            alphabet
                                .iter()
                                .position(|a| a == s)
                                .ok_or_else(|| Error::InvalidInput(format!("unknown symbol `{s}`")))
                        })
                        .collect::<Result<Vec<_>>>()?,
                    OrbitSpec::Word(w) => parse_word(alphabet, w)?,
                };
                Ok(Measure::Periodic(PeriodicOrbit::of_point(&word)?))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::names;
    use crate::measure::CylinderMeasure;
    use crate::rational::ratio;

    #[test]
    fn parses_each_kind() {
        let b = MeasureJson::from_json_str(r#"{"type":"bernoulli","probabilities":["7/10","3/10"]}"#).unwrap();
        assert_eq!(b.side(), Side::Domain);
        let Measure::Bernoulli(b) = b.resolve(&names(2)).unwrap() else { panic!() };
        assert_eq!(b.cylinder(&[1]), ratio(3, 10));

        let m = MeasureJson::from_json_str(
            r#"{"type":"markov","states":["1","0"],"matrix":[["0","1"],["1/2","1/2"]],"side":"image"}"#,
        )
        .unwrap();
        assert_eq!(m.side(), Side::Image);
        let Measure::Markov(m) = m.resolve(&names(2)).unwrap() else { panic!() };
        assert_eq!(m.stationary(), [ratio(2, 3), ratio(1, 3)]);

        let p = MeasureJson::from_json_str(r#"{"type":"periodic","orbit":["1","0","1","0"]}"#).unwrap();
        assert_eq!(p.side(), Side::Image);
        let Measure::Periodic(o) = p.resolve(&names(2)).unwrap() else { panic!() };
        assert_eq!(o.word(), [0, 1]);
        let p = MeasureJson::from_json_str(r#"{"type":"periodic","orbit":"2"}"#).unwrap();
        let Measure::Periodic(o) = p.resolve(&names(4)).unwrap() else { panic!() };
        assert_eq!(o.word(), [2]);
    }

    #[test]
    fn rejects_mismatched_alphabets() {
        let b = MeasureJson::from_json_str(r#"{"type":"bernoulli","probabilities":["1"]}"#).unwrap();
        assert!(b.resolve(&names(2)).is_err());
    }
}
