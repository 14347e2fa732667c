use serde::{Deserialize, Serialize};

use super::stationary::{stationary_distribution, SquareMatrix};
use super::trust::NormalizedTrust;
use super::{hypothesis_mask, HypothesisConfig};
use crate::error::{Error, Result};
use crate::methods::MethodOutput;
use crate::model::{ClaimDataset, Mode, TruthMask};
use crate::num::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Polarity {
    True,
    False,
}

/// Pick probabilities for one object's values, aligned with V_o. True values
/// hold P_o(v_t|V^m), false values P_o(v_f|V^m).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct ObjectDistribution<T> {
    pub truth: Vec<bool>,
    pub prob: Vec<T>,
}

impl<T: Scalar> ObjectDistribution<T> {
    fn mass(&self, polarity: bool) -> T {
        self.truth
            .iter()
            .zip(&self.prob)
            .filter(|(t, _)| **t == polarity)
            .map(|(_, p)| *p)
            .sum()
    }

    pub fn true_mass(&self) -> T {
        self.mass(true)
    }

    pub fn false_mass(&self) -> T {
        self.mass(false)
    }

    pub fn has_false(&self) -> bool {
        self.truth.iter().any(|t| !t)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct ValueDistributions<T> {
    pub objects: Vec<ObjectDistribution<T>>,
}

/// Single-valued: the identified value gets probability 1; each false value
/// gets its claimants' summed untrustworthiness, normalized over the
/// object's false values. All-zero mass falls back to uniform.
pub fn false_value_distribution_single<T: Scalar>(
    dataset: &ClaimDataset,
    trust: &NormalizedTrust<T>,
    output: &MethodOutput<T>,
) -> Result<ValueDistributions<T>> {
    let mask = hypothesis_mask(dataset, output, Mode::SingleValued)?;
    check_trust(dataset, trust)?;
    let objects = (0..dataset.objects().len())
        .map(|o| {
            let truth = mask.objects[o].clone().expect("mask covers every object");
            let mut prob: Vec<T> = truth
                .iter()
                .enumerate()
                .map(|(v, &t)| {
                    if t {
                        T::one()
                    } else {
                        dataset
                            .value_sources(o, v)
                            .iter()
                            .map(|&s| T::one() - trust.tau(s))
                            .sum()
                    }
                })
                .collect();
            let n_false = truth.iter().filter(|t| !**t).count();
            let total: T = prob
                .iter()
                .zip(&truth)
                .filter(|(_, t)| !**t)
                .map(|(p, _)| *p)
                .sum();
            for (p, t) in prob.iter_mut().zip(&truth) {
                if !*t {
                    *p = if total > T::zero() {
                        *p / total
                    } else {
                        T::one() / T::count(n_false)
                    };
                }
            }
            ObjectDistribution { truth, prob }
        })
        .collect();
    Ok(ValueDistributions { objects })
}

fn check_trust<T: Scalar>(dataset: &ClaimDataset, trust: &NormalizedTrust<T>) -> Result<()> {
    if trust.sources.len() != dataset.sources().len() {
        return Err(Error::Consistency(format!(
            "trust covers {} sources, dataset has {}",
            trust.sources.len(),
            dataset.sources().len()
        )));
    }
    Ok(())
}

/// Smoothed co-occurrence random walk over one polarity class of an object.
#[derive(Clone, Debug, PartialEq)]
pub struct Cooccurrence<T> {
    /// Value indices (into V_o) labelling the rows and columns.
    pub values: Vec<usize>,
    pub matrix: SquareMatrix<T>,
}

fn intersection_weight<T: Scalar>(a: &[usize], b: &[usize], weight: impl Fn(usize) -> T) -> T {
    let (mut i, mut j, mut total) = (0, 0, T::zero());
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                total = total + weight(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    total
}

pub(crate) fn cooccurrence<T: Scalar>(
    dataset: &ClaimDataset,
    trust: &NormalizedTrust<T>,
    mask: &TruthMask,
    object: usize,
    polarity: Polarity,
    beta: T,
) -> Option<Cooccurrence<T>> {
    let want = polarity == Polarity::True;
    let truth = mask.objects[object].as_ref()?;
    let values: Vec<usize> = (0..truth.len()).filter(|&v| truth[v] == want).collect();
    if values.is_empty() {
        return None;
    }
    let weight = |s: usize| match polarity {
        Polarity::True => trust.tau(s),
        Polarity::False => T::one() - trust.tau(s),
    };
    let n = values.len();
    let mut matrix = SquareMatrix::zeros(n);
    for (i, &a) in values.iter().enumerate() {
        for (j, &b) in values.iter().enumerate() {
            let raw = if i == j {
                T::zero()
            } else {
                intersection_weight(
                    dataset.value_sources(object, a),
                    dataset.value_sources(object, b),
                    weight,
                )
            };
            // the diagonal is smoothed too so every entry is positive
            matrix.set(i, j, beta + (T::one() - beta) * raw);
        }
    }
    matrix.normalize_columns();
    Some(Cooccurrence { values, matrix })
}

/// Column-stochastic matrix over the true (or false) values of `object`,
/// or `None` when that class is empty.
pub fn build_cooccurrence_matrix<T: Scalar>(
    dataset: &ClaimDataset,
    trust: &NormalizedTrust<T>,
    output: &MethodOutput<T>,
    object: usize,
    polarity: Polarity,
    config: &HypothesisConfig,
) -> Result<Option<Cooccurrence<T>>> {
    let mask = hypothesis_mask(dataset, output, Mode::MultiValued)?;
    check_trust(dataset, trust)?;
    if object >= dataset.objects().len() {
        return Err(Error::Consistency(format!(
            "object index {object} out of range"
        )));
    }
    Ok(cooccurrence(
        dataset,
        trust,
        &mask,
        object,
        polarity,
        T::lit(config.beta),
    ))
}

/// Multi-valued: true and false pick distributions are the stationary
/// vectors of the per-object co-occurrence walks.
pub fn value_distributions_multi<T: Scalar>(
    dataset: &ClaimDataset,
    trust: &NormalizedTrust<T>,
    output: &MethodOutput<T>,
    config: &HypothesisConfig,
) -> Result<ValueDistributions<T>> {
    let mask = hypothesis_mask(dataset, output, Mode::MultiValued)?;
    check_trust(dataset, trust)?;
    let beta = T::lit(config.beta);
    let tolerance = T::lit(config.stationary_tolerance);
    let mut objects = Vec::with_capacity(dataset.objects().len());
    for o in 0..dataset.objects().len() {
        let truth = mask.objects[o].clone().expect("mask covers every object");
        let mut prob = vec![T::zero(); truth.len()];
        for polarity in [Polarity::True, Polarity::False] {
            if let Some(walk) = cooccurrence(dataset, trust, &mask, o, polarity, beta) {
                let pi = stationary_distribution(&walk.matrix, tolerance)?;
                for (v, p) in walk.values.iter().zip(pi) {
                    prob[*v] = p;
                }
            }
        }
        objects.push(ObjectDistribution { truth, prob });
    }
    Ok(ValueDistributions { objects })
}
