//! Shannon entropies in bits, with `0 log 0 = 0`.

use serde::Serialize;

use crate::{Error, Result};

/// Tolerance for probabilities slightly outside `[0, 1]` and for
/// normalisation of distributions.
pub const PROB_TOL: f64 = 1e-12;

/// `-p log₂ p`, zero at `p = 0`.
#[inline]
pub fn surprisal_term(p: f64) -> f64 {
    if p <= 0.0 {
        0.0
    } else {
        -p * p.log2()
    }
}

/// Binary entropy `H₂(x) = -x log₂ x - (1-x) log₂(1-x)`.
pub fn binary_entropy(x: f64) -> Result<f64> {
    if !(-PROB_TOL..=1.0 + PROB_TOL).contains(&x) {
        return Err(Error::ProbabilityDomain(x));
    }
    let x = x.clamp(0.0, 1.0);
    Ok(surprisal_term(x) + surprisal_term(1.0 - x))
}

/// Entropy of the two-outcome distribution `(½(1+t), ½(1-t))` for a bias
/// `t ∈ [-1, 1]`.
///
/// Both cells are formed directly from `t`, so the result stays accurate when
/// one of them is tiny. Values of `|t|` marginally above one are clamped.
#[inline]
pub fn bias_entropy(t: f64) -> f64 {
    let t = t.clamp(-1.0, 1.0);
    surprisal_term(0.5 * (1.0 + t)) + surprisal_term(0.5 * (1.0 - t))
}

/// A finite discrete probability distribution.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct ProbVector(Vec<f64>);

impl ProbVector {
    /// Validates entries in `[0, 1]` summing to one, each within [`PROB_TOL`].
    /// Entries within tolerance of the boundary are clamped onto it.
    pub fn new(entries: Vec<f64>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::InvalidDistribution("no entries".into()));
        }
        let mut entries = entries;
        for p in entries.iter_mut() {
            if !p.is_finite() || *p < -PROB_TOL || *p > 1.0 + PROB_TOL {
                return Err(Error::InvalidDistribution(format!(
                    "entry {p} outside [0, 1]"
                )));
            }
            *p = p.clamp(0.0, 1.0);
        }
        let total: f64 = entries.iter().sum();
        if (total - 1.0).abs() > PROB_TOL {
            return Err(Error::InvalidDistribution(format!(
                "entries sum to {total}"
            )));
        }
        Ok(Self(entries))
    }

    pub fn binary(p_plus: f64) -> Result<Self> {
        Self::new(vec![p_plus, 1.0 - p_plus])
    }

    pub fn entries(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entropy(&self) -> f64 {
        self.0.iter().copied().map(surprisal_term).sum()
    }
}

/// Shannon entropy `-Σ pᵢ log₂ pᵢ` of a validated distribution.
pub fn shannon_entropy(p: &ProbVector) -> f64 {
    p.entropy()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    #[test]
    fn binary_entropy_examples() {
        assert_eq!(binary_entropy(0.5).unwrap(), 1.0);
        assert_eq!(binary_entropy(0.0).unwrap(), 0.0);
        assert_eq!(binary_entropy(1.0).unwrap(), 0.0);
        // ½ + 1/(2√2)
        let x = 0.5 + 0.5 * std::f64::consts::FRAC_1_SQRT_2;
        assert_abs_diff_eq!(binary_entropy(x).unwrap(), 0.60088, epsilon = 5e-6);
        assert_abs_diff_eq!(binary_entropy(0.85355).unwrap(), 0.60088, epsilon = 1e-4);
    }

    #[test]
    fn binary_entropy_domain() {
        assert_eq!(binary_entropy(1.5), Err(Error::ProbabilityDomain(1.5)));
        assert_eq!(binary_entropy(-0.01), Err(Error::ProbabilityDomain(-0.01)));
        assert_eq!(binary_entropy(1.0 + 1e-13).unwrap(), 0.0);
    }

    #[test]
    fn binary_entropy_symmetric_on_grid() {
        for i in 0..=1000 {
            let x = i as f64 / 1000.0;
            let lhs = binary_entropy(x).unwrap();
            let rhs = binary_entropy(1.0 - x).unwrap();
            assert_abs_diff_eq!(lhs, rhs, epsilon = 1e-12);
        }
    }

    #[test]
    fn shannon_entropy_examples() {
        let det = ProbVector::new(vec![1.0, 0.0, 0.0, 0.0]).unwrap();
        assert_eq!(shannon_entropy(&det), 0.0);
        let uni = ProbVector::new(vec![0.25; 4]).unwrap();
        assert_eq!(shannon_entropy(&uni), 2.0);
        let mixed = ProbVector::new(vec![0.5, 0.25, 0.25, 0.0]).unwrap();
        // -½ log ½ - 2·¼ log ¼ = ½ + 1
        assert_abs_diff_eq!(shannon_entropy(&mixed), 1.5, epsilon = 1e-15);
    }

    #[test]
    fn prob_vector_validation() {
        assert!(ProbVector::new(vec![]).is_err());
        assert!(ProbVector::new(vec![0.5, 0.6]).is_err());
        assert!(ProbVector::new(vec![-0.1, 1.1]).is_err());
        assert!(ProbVector::new(vec![f64::NAN, 1.0]).is_err());
        let p = ProbVector::new(vec![1.0 + 1e-13, -1e-13]).unwrap();
        assert_eq!(p.entries(), &[1.0, 0.0]);
    }

    #[test]
    fn bias_entropy_matches_binary_entropy() {
        for i in 0..=200 {
            let t = -1.0 + i as f64 / 100.0;
            assert_abs_diff_eq!(
                bias_entropy(t),
                binary_entropy(0.5 * (1.0 + t)).unwrap(),
                epsilon = 1e-14
            );
        }
    }

    proptest! {
        #[test]
        fn shannon_entropy_within_bounds(raw in prop::collection::vec(0.0f64..1.0, 1..12)) {
            let total: f64 = raw.iter().sum();
            prop_assume!(total > 1e-6);
            let p = ProbVector::new(raw.iter().map(|x| x / total).collect()).unwrap();
            let h = shannon_entropy(&p);
            prop_assert!(h >= 0.0);
            prop_assert!(h <= (p.len() as f64).log2() + 1e-12);
        }
    }
}
