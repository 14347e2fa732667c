//! Ground-truth-free comparison of methods.
//!
//! Each method's output is treated as a hypothesis about which values are
//! true. Under that hypothesis every source gets a precision τ_s, every
//! object gets a pick distribution over its true values and over its false
//! values, and the log-probability of observing the dataset is the method's
//! confidence C_m. Higher C_m means the hypothesis explains the data better.

mod confidence;
mod distribution;
mod stationary;
mod trust;

use serde::{Deserialize, Serialize};

pub use confidence::{confidence, MethodConfidence};
pub use distribution::{
    build_cooccurrence_matrix, false_value_distribution_single, value_distributions_multi,
    Cooccurrence, ObjectDistribution, Polarity, ValueDistributions,
};
pub use stationary::{stationary_distribution, SquareMatrix};
pub use trust::{normalize_trust_multi, normalize_trust_single, NormalizedTrust, SourceTrust};

use crate::error::{Error, Result};
use crate::methods::{MethodId, MethodOutput};
use crate::model::{ClaimDataset, Mode, TruthMask};
use crate::num::Scalar;
use crate::ranking::RankingVector;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HypothesisConfig {
    /// Weight of the uniform smoothing link in co-occurrence matrices.
    pub beta: f64,
    /// τ is clamped into [ε, 1-ε] before any logarithm.
    pub clamp_epsilon: f64,
    /// L1 stopping threshold for power iteration.
    pub stationary_tolerance: f64,
}

impl Default for HypothesisConfig {
    fn default() -> Self {
        HypothesisConfig {
            beta: 0.1,
            clamp_epsilon: 1e-6,
            stationary_tolerance: 1e-10,
        }
    }
}

/// Everything computed while scoring one method.
#[derive(Clone, Debug, PartialEq)]
pub struct Scored<T> {
    pub trust: NormalizedTrust<T>,
    pub distributions: ValueDistributions<T>,
    pub confidence: MethodConfidence<T>,
}

/// Resolves an output's identified truth against the dataset, checking that
/// it covers every object and names only claimed values.
pub(crate) fn hypothesis_mask<T: Scalar>(
    dataset: &ClaimDataset,
    output: &MethodOutput<T>,
    expected: Mode,
) -> Result<TruthMask> {
    if dataset.mode() != expected || output.mode != expected {
        return Err(Error::Consistency(format!(
            "{}: expected {expected}-valued dataset and output, got dataset {} and output {}",
            output.method,
            dataset.mode(),
            output.mode
        )));
    }
    let mask = dataset.truth_mask(&output.identified_truth, true)?;
    if mask.unclaimed > 0 {
        return Err(Error::Consistency(format!(
            "{}: identified truth names {} value(s) nobody claimed",
            output.method, mask.unclaimed
        )));
    }
    Ok(mask)
}

/// Full scoring pipeline for one output, dispatching on the dataset mode.
pub fn score<T: Scalar>(
    dataset: &ClaimDataset,
    output: &MethodOutput<T>,
    config: &HypothesisConfig,
) -> Result<Scored<T>> {
    let (trust, distributions) = match dataset.mode() {
        Mode::SingleValued => {
            let trust = normalize_trust_single(dataset, output)?;
            let dists = false_value_distribution_single(dataset, &trust, output)?;
            (trust, dists)
        }
        Mode::MultiValued => {
            let trust = normalize_trust_multi(dataset, output)?;
            let dists = value_distributions_multi(dataset, &trust, output, config)?;
            (trust, dists)
        }
    };
    let confidence = confidence(dataset, output, &trust, &distributions, config)?;
    Ok(Scored {
        trust,
        distributions,
        confidence,
    })
}

/// Ranks methods by C_m, largest first; equal C_m share a rank.
pub fn rank_by_confidence<T: Scalar>(confidences: &[MethodConfidence<T>]) -> RankingVector {
    let scores: Vec<(MethodId, T)> = confidences
        .iter()
        .map(|c| (c.method, c.confidence))
        .collect();
    RankingVector::from_scores("confidence", &scores, T::zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use MethodId::*;

    fn mc(method: MethodId, c: f64) -> MethodConfidence<f64> {
        MethodConfidence {
            method,
            confidence: c,
            true_terms: 0,
            false_terms: 0,
        }
    }

    #[test]
    fn ranks_descending() {
        let r = rank_by_confidence(&[mc(Voting, -10.0), mc(Sums, -20.0), mc(AverageLog, -30.0)]);
        assert_eq!(r.positions(), [1, 2, 3]);
        let r = rank_by_confidence(&[mc(Voting, -10.0), mc(Sums, -10.0), mc(AverageLog, -30.0)]);
        assert_eq!(r.positions(), [1, 1, 3]);
    }

    #[test]
    fn reported_eighty_pessimistic_column() {
        let values = [
            (Voting, -16604.0),
            (Sums, -16514.0),
            (AverageLog, -16603.0),
            (Investment, -17319.0),
            (PooledInvestment, -17843.0),
            (TruthFinder, -16489.0),
            (TwoEstimates, -16514.0),
            (ThreeEstimates, -18629.0),
            (Accu, -16640.0),
            (CRH, -16558.0),
            (SimpleLca, -15933.0),
            (GuessLca, -16480.0),
        ];
        let cs: Vec<_> = values.iter().map(|(m, c)| mc(*m, *c)).collect();
        let r = rank_by_confidence(&cs);
        assert_eq!(r.rank(SimpleLca), Some(1));
        assert_eq!(r.rank(Sums), r.rank(TwoEstimates));
    }
}
