use num_traits::Zero;

use super::markov::MarkovMeasure;
use crate::error::{Error, Result};
use crate::shift::structure::strongly_connected_components;

/// Whether the two-point rotation is a factor of the stationary chain.
///
/// Couples the chain with a parity bit flipped at every step; the product is
/// ergodic exactly when the two-point system is not a factor, and for a
/// stationary chain ergodicity is strong connectivity of the positive
/// transitions on the recurrent states.
pub fn has_two_point_factor(m: &MarkovMeasure) -> Result<bool> {
    let recurrent: Vec<usize> = (0..m.len()).filter(|&s| !m.stationary()[s].is_zero()).collect();
    let mut index = vec![usize::MAX; m.len()];
    for (i, &s) in recurrent.iter().enumerate() {
        index[s] = i;
    }
    let support = m.support();
    let succ: Vec<Vec<usize>> = recurrent
        .iter()
        .map(|&s| support[s].iter().filter(|&&t| index[t] != usize::MAX).map(|&t| index[t]).collect())
        .collect();
    if strongly_connected_components(&succ).len() != 1 {
        return Err(Error::NotErgodic(
            "positive transitions on the recurrent states are not strongly connected".into(),
        ));
    }
    let n = succ.len();
    let product: Vec<Vec<usize>> = (0..2 * n)
        .map(|v| {
            let (s, bit) = (v % n, v / n);
            succ[s].iter().map(|&t| t + (1 - bit) * n).collect()
        })
        .collect();
    Ok(strongly_connected_components(&product).len() != 1)
}
