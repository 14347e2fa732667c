use serde::{Deserialize, Serialize};

use super::hypothesis_mask;
use crate::error::Result;
use crate::methods::MethodOutput;
use crate::model::{ClaimDataset, Mode, TruthMask};
use crate::num::Scalar;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct SourceTrust<T> {
    pub tp: u64,
    pub fp: u64,
    /// Precision TP / (TP + FP) of the source under the hypothesis.
    pub tau: T,
}

/// Per-source precision under one method's identified truth, aligned with
/// [`ClaimDataset::sources`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct NormalizedTrust<T> {
    pub sources: Vec<SourceTrust<T>>,
}

impl<T: Scalar> NormalizedTrust<T> {
    pub fn tau(&self, source: usize) -> T {
        self.sources[source].tau
    }

    fn from_counts(dataset: &ClaimDataset, counts: Vec<(u64, u64)>) -> Self {
        let sources = counts
            .into_iter()
            .enumerate()
            .map(|(s, (tp, fp))| {
                let tau = if tp + fp > 0 {
                    T::from_u64(tp).unwrap() / T::from_u64(tp + fp).unwrap()
                } else {
                    log::warn!("source `{}` has no claims", dataset.sources()[s]);
                    T::zero()
                };
                SourceTrust { tp, fp, tau }
            })
            .collect();
        NormalizedTrust { sources }
    }
}

/// A source's claim on an object is a true positive when its value set
/// equals the identified truth of that object.
pub(crate) fn count_single(dataset: &ClaimDataset, mask: &TruthMask) -> Vec<(u64, u64)> {
    (0..dataset.sources().len())
        .map(|s| {
            let (mut tp, mut fp) = (0, 0);
            for group in dataset.claims_by_object(s) {
                let o = group[0].object;
                let truth = mask.objects[o].as_ref().expect("mask covers every object");
                let claimed = group.len();
                let identified = truth.iter().filter(|&&t| t).count();
                if claimed == identified && group.iter().all(|c| truth[c.value]) {
                    tp += 1;
                } else {
                    fp += 1;
                }
            }
            (tp, fp)
        })
        .collect()
}

/// Every claimed value counts on its own.
pub(crate) fn count_multi(dataset: &ClaimDataset, mask: &TruthMask) -> Vec<(u64, u64)> {
    (0..dataset.sources().len())
        .map(|s| {
            let claims = dataset.source_claims(s);
            let tp = claims
                .iter()
                .filter(|c| mask.is_true(c.object, c.value))
                .count() as u64;
            (tp, claims.len() as u64 - tp)
        })
        .collect()
}

pub fn normalize_trust_single<T: Scalar>(
    dataset: &ClaimDataset,
    output: &MethodOutput<T>,
) -> Result<NormalizedTrust<T>> {
    let mask = hypothesis_mask(dataset, output, Mode::SingleValued)?;
    Ok(NormalizedTrust::from_counts(
        dataset,
        count_single(dataset, &mask),
    ))
}

pub fn normalize_trust_multi<T: Scalar>(
    dataset: &ClaimDataset,
    output: &MethodOutput<T>,
) -> Result<NormalizedTrust<T>> {
    let mask = hypothesis_mask(dataset, output, Mode::MultiValued)?;
    Ok(NormalizedTrust::from_counts(
        dataset,
        count_multi(dataset, &mask),
    ))
}
