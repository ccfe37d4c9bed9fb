use serde::Serialize;

use super::{words_of_length, CylinderMeasure};
use crate::error::{Error, Result};
use crate::rational::{self, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Comparison {
    EqualUpTo {
        length: usize,
    },
    Distinct {
        witness: Vec<usize>,
        #[serde(with = "rational::serde_rational")]
        left: Rational,
        #[serde(with = "rational::serde_rational")]
        right: Rational,
    },
}

impl Comparison {
    pub fn is_distinct(&self) -> bool {
        matches!(self, Comparison::Distinct { .. })
    }
}

/// Exact comparison of all cylinders of length at most `max_len`; the
/// witness is the first differing word, shortest first, then lexicographic.
pub fn compare_measures<A, B>(m1: &A, m2: &B, max_len: usize) -> Result<Comparison>
where
    A: CylinderMeasure + ?Sized,
    B: CylinderMeasure + ?Sized,
{
    let n = m1.alphabet_len();
    if n != m2.alphabet_len() {
        return Err(Error::InvalidInput("measures live on different alphabets".into()));
    }
    for k in 1..=max_len {
        for w in words_of_length(n, k) {
            let (left, right) = (m1.cylinder(&w), m2.cylinder(&w));
            if left != right {
                return Ok(Comparison::Distinct {
                    witness: w,
                    left,
                    right,
                });
            }
        }
    }
    Ok(Comparison::EqualUpTo { length: max_len })
}
