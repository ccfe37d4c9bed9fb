use num_traits::Zero;

use super::{bernoulli_name, certify_distinct, check_alpha, CaLiftAnalysis, ExactLift, Family, NamedLift};
use crate::error::Result;
use crate::measure::BernoulliMeasure;
use crate::rational::Rational;

/// Least `L` with `α(a + L) = α(a)` for all `a` (indices mod `N`).
pub fn cyclic_period(alpha: &[Rational]) -> usize {
    let n = alpha.len();
    (1..=n)
        .find(|&l| n % l == 0 && (0..n).all(|a| alpha[(a + l) % n] == alpha[a]))
        .unwrap_or(n)
}

/// Lifts of the image of Bernoulli(α) under the difference code mod `N`:
/// the `L` translates of Bernoulli(α), each with multiplicity `N / L`, where
/// `L` is the least cyclic period of α.
///
/// Zero entries are accepted with a warning: the code is constant-to-one, so
/// the description does not depend on full support.
pub fn difference_lift_analysis(modulus: usize, alpha: &[Rational]) -> Result<CaLiftAnalysis> {
    check_alpha(alpha, modulus)?;
    let mut warnings = Vec::new();
    if alpha.iter().any(Rational::is_zero) {
        warnings.push("probability vector has zero entries; measure is not fully supported".into());
    }
    let mu = BernoulliMeasure::new(alpha.to_vec())?;
    let l = cyclic_period(alpha);
    let lifts: Vec<NamedLift> = (0..l)
        .map(|k| {
            let m = mu.rotated(k);
            NamedLift {
                name: format!("s^{k} {}", bernoulli_name(m.probabilities())),
                measure: ExactLift::Bernoulli(m),
                multiplicity: modulus / l,
            }
        })
        .collect();
    let witnesses = certify_distinct(&lifts, 1)?;
    Ok(CaLiftAnalysis {
        family: Family::Difference,
        modulus,
        alpha: alpha.to_vec(),
        degree: modulus,
        lifts,
        witnesses,
        warnings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{parse_list, ratio};

    #[test]
    fn period_two_vector_mod_four() {
        let a = difference_lift_analysis(4, &parse_list("1/8,3/8,1/8,3/8").unwrap()).unwrap();
        assert_eq!(a.lifts.len(), 2);
        assert_eq!(a.multiplicity_multiset(), [2, 2]);
        assert_eq!(a.witnesses.len(), 1);
    }

    #[test]
    fn uniform_mod_two_has_one_lift() {
        let a = difference_lift_analysis(2, &[ratio(1, 2), ratio(1, 2)]).unwrap();
        assert_eq!(a.multiplicity_multiset(), [2]);
    }

    #[test]
    fn aperiodic_vector_mod_three() {
        let a = difference_lift_analysis(3, &parse_list("1/2,3/10,1/5").unwrap()).unwrap();
        assert_eq!(a.multiplicity_multiset(), [1, 1, 1]);
        assert_eq!(a.witnesses.len(), 3);
    }

    #[test]
    fn zero_entries_warn() {
        let a = difference_lift_analysis(3, &parse_list("1/2,1/2,0").unwrap()).unwrap();
        assert_eq!(a.warnings.len(), 1);
        assert!(difference_lift_analysis(3, &parse_list("1/2,1/2").unwrap()).is_err());
    }
}
