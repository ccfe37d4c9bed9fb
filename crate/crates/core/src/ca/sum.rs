use num_traits::{One, Zero};

use super::{bernoulli_name, certify_distinct, check_alpha, CaLiftAnalysis, ExactLift, Family, NamedLift};
use crate::error::{Error, Result};
use crate::measure::{has_two_point_factor, BernoulliMeasure, CylinderMeasure, MarkovMeasure, SkewMargin};
use crate::rational::{self, Rational};

/// Lifts of the image of Bernoulli(α) under the sum code mod `N = |α|`.
///
/// With `α₀ > 1/2` the laws of `x + c·z` for `c` and `−c` coincide, giving one
/// lift per class `{c, −c}` with multiplicity the class size. Each class
/// margin puts mass above 1/2 on its own symbols `{c, −c}`, and these sets are
/// disjoint, which certifies that the lifts are distinct; the masses and
/// pairwise witnesses are computed exactly. Only `N = 5` is covered by a
/// published statement; other moduli are reported with a warning.
pub fn sum_code_lift_analysis(alpha: &[Rational]) -> Result<CaLiftAnalysis> {
    let n = alpha.len();
    if n < 2 {
        return Err(Error::InvalidInput("modulus must be at least 2".into()));
    }
    check_alpha(alpha, n)?;
    if alpha.iter().any(|a| a.is_one()) {
        return Err(Error::Degenerate(
            "point-mass vector; the image is a fixed point, analyze it as a periodic orbit".into(),
        ));
    }
    let half = rational::ratio(1, 2);
    if alpha[0] <= half {
        return Err(Error::HypothesisNotMet(format!(
            "weight of 0 is {}, not above 1/2",
            rational::format(&alpha[0])
        )));
    }
    let mu = BernoulliMeasure::new(alpha.to_vec())?;
    if has_two_point_factor(&MarkovMeasure::from_bernoulli(&mu, (0..n).map(|i| i.to_string()).collect())?)? {
        return Err(Error::HypothesisNotMet("the two-point rotation is a factor of the measure".into()));
    }
    let mut warnings = Vec::new();
    if n != 5 {
        warnings.push(format!("modulus {n}: lift structure computed without a published statement to back it"));
    }
    if alpha.iter().any(Rational::is_zero) {
        warnings.push("probability vector has zero entries; measure is not fully supported".into());
    }
    let mut lifts = Vec::new();
    for c in 0..=n / 2 {
        let class: Vec<usize> = if c == 0 || 2 * c == n { vec![c] } else { vec![c, n - c] };
        let m = SkewMargin::new(mu.clone(), c);
        let mass: Rational = class.iter().map(|&a| m.cylinder(&[a])).sum();
        if mass <= half {
            return Err(Error::Internal(format!(
                "margin with shift {c} gives mass {} to its symbols",
                rational::format(&mass)
            )));
        }
        let name = if c == 0 {
            bernoulli_name(alpha)
        } else {
            format!("x + {c}z, x ~ {}", bernoulli_name(alpha))
        };
        lifts.push(NamedLift {
            name,
            measure: ExactLift::Skew(m),
            multiplicity: class.len(),
        });
    }
    let witnesses = certify_distinct(&lifts, 1)?;
    Ok(CaLiftAnalysis {
        family: Family::Sum,
        modulus: n,
        alpha: alpha.to_vec(),
        degree: n,
        lifts,
        witnesses,
        warnings,
    })
}

/// Mass the margin with shift `c` gives to `{c, −c}`.
pub fn class_mass(alpha: &[Rational], c: usize) -> Result<Rational> {
    let n = alpha.len();
    let m = SkewMargin::new(BernoulliMeasure::new(alpha.to_vec())?, c);
    let class = if c % n == 0 || 2 * (c % n) == n { vec![c % n] } else { vec![c % n, n - c % n] };
    Ok(class.iter().map(|&a| m.cylinder(&[a])).sum())
}
