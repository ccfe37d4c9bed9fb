//! Small codes shared by the unit tests.

use crate::shift::block_code::{recode_to_one_block, Recoding, SlidingBlockCode};
use crate::shift::LabeledGraph;

pub(crate) fn names(n: usize) -> Vec<String> {
    (0..n).map(|i| i.to_string()).collect()
}

fn two_block(n: usize, f: impl Fn(usize, usize) -> usize) -> Recoding {
    let code = SlidingBlockCode::from_fn(0, 1, LabeledGraph::full_shift(&names(n)), names(n), |w| {
        f(w[0], w[1])
    })
    .unwrap();
    recode_to_one_block(&code)
}

pub(crate) fn rule102() -> Recoding {
    two_block(2, |a, b| (a + b) % 2)
}

pub(crate) fn difference(n: usize) -> Recoding {
    two_block(n, |a, b| (b + n - a) % n)
}

pub(crate) fn identity(n: usize) -> LabeledGraph {
    LabeledGraph::full_shift(&names(n))
}

pub(crate) fn constant(n: usize) -> LabeledGraph {
    identity(n).relabeled(vec!["0".into()], vec![0; n]).unwrap()
}

/// p and r both carry label 0 and both feed into q; the returns from q go
/// through distinct labels, so there is no diamond. Right-closing, not
/// left-closing, degree 1, yet the fixed point 0 has two preimages.
pub(crate) fn merging() -> LabeledGraph {
    LabeledGraph::from_names(
        &["p", "r", "q", "s", "t"],
        &[
            ("p", "p"), ("r", "r"), ("p", "q"), ("r", "q"), ("q", "q"),
            ("q", "s"), ("q", "t"), ("s", "p"), ("t", "r"),
        ],
        &[("p", "0"), ("r", "0"), ("q", "1"), ("s", "2"), ("t", "3")],
    )
    .unwrap()
}
