use serde::{Deserialize, Serialize};

use super::distribution::ValueDistributions;
use super::trust::NormalizedTrust;
use super::{hypothesis_mask, HypothesisConfig};
use crate::error::{Error, Result};
use crate::methods::{MethodId, MethodOutput};
use crate::model::ClaimDataset;
use crate::num::Scalar;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct MethodConfidence<T> {
    pub method: MethodId,
    /// C_m: log-probability of the observed claims under the hypothesis.
    pub confidence: T,
    pub true_terms: usize,
    pub false_terms: usize,
}

/// C_m = Σ_s [ Σ_{true claims} ln(τ_s·P_o(v_t)) + Σ_{false claims} ln((1-τ_s)·P_o(v_f)) ].
///
/// Every (source, object, value) claim contributes one term; τ is clamped
/// before the logarithm.
pub fn confidence<T: Scalar>(
    dataset: &ClaimDataset,
    output: &MethodOutput<T>,
    trust: &NormalizedTrust<T>,
    dists: &ValueDistributions<T>,
    config: &HypothesisConfig,
) -> Result<MethodConfidence<T>> {
    let mask = hypothesis_mask(dataset, output, dataset.mode())?;
    if dists.objects.len() != dataset.objects().len()
        || trust.sources.len() != dataset.sources().len()
    {
        return Err(Error::Consistency(format!(
            "{}: trust or distributions do not match the dataset",
            output.method
        )));
    }
    let eps = T::lit(config.clamp_epsilon);
    let (mut total, mut true_terms, mut false_terms) = (T::zero(), 0, 0);
    for s in 0..dataset.sources().len() {
        let tau = trust.tau(s).max(eps).min(T::one() - eps);
        for c in dataset.source_claims(s) {
            let dist = &dists.objects[c.object];
            let p = *dist.prob.get(c.value).ok_or_else(|| {
                Error::Consistency(format!(
                    "{}: no probability for value `{}` of object `{}`",
                    output.method,
                    dataset.value_name(c.object, c.value),
                    dataset.objects()[c.object]
                ))
            })?;
            let is_true = mask.is_true(c.object, c.value);
            if dist.truth.get(c.value) != Some(&is_true) || !(p > T::zero()) {
                return Err(Error::Consistency(format!(
                    "{}: distribution entry for `{}` on `{}` disagrees with the hypothesis",
                    output.method,
                    dataset.value_name(c.object, c.value),
                    dataset.objects()[c.object]
                )));
            }
            if is_true {
                total = total + (tau * p).ln();
                true_terms += 1;
            } else {
                total = total + ((T::one() - tau) * p).ln();
                false_terms += 1;
            }
        }
    }
    Ok(MethodConfidence {
        method: output.method,
        confidence: total,
        true_terms,
        false_terms,
    })
}
