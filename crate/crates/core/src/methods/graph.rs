use std::ops::Range;

use crate::model::ClaimDataset;
use crate::num::Scalar;

/// Flat bipartite view of a dataset: values get global ids laid out object
/// by object, so per-value vectors are plain `Vec`s.
pub(crate) struct Graph<'a> {
    pub dataset: &'a ClaimDataset,
    offsets: Vec<usize>,
    value_object: Vec<usize>,
    source_values: Vec<Vec<usize>>,
}

impl<'a> Graph<'a> {
    pub fn new(dataset: &'a ClaimDataset) -> Self {
        let mut offsets = Vec::with_capacity(dataset.objects().len() + 1);
        let mut value_object = Vec::new();
        offsets.push(0);
        for o in 0..dataset.objects().len() {
            value_object.extend(std::iter::repeat(o).take(dataset.values(o).len()));
            offsets.push(value_object.len());
        }
        let source_values = (0..dataset.sources().len())
            .map(|s| {
                dataset
                    .source_claims(s)
                    .iter()
                    .map(|c| offsets[c.object] + c.value)
                    .collect()
            })
            .collect();
        Graph {
            dataset,
            offsets,
            value_object,
            source_values,
        }
    }

    pub fn n_sources(&self) -> usize {
        self.source_values.len()
    }

    pub fn n_values(&self) -> usize {
        self.value_object.len()
    }

    pub fn n_objects(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn object_values(&self, o: usize) -> Range<usize> {
        self.offsets[o]..self.offsets[o + 1]
    }

    pub fn object_of(&self, v: usize) -> usize {
        self.value_object[v]
    }

    /// S_v for a global value id.
    pub fn value_sources(&self, v: usize) -> &[usize] {
        let o = self.value_object[v];
        self.dataset.value_sources(o, v - self.offsets[o])
    }

    pub fn object_sources(&self, o: usize) -> &[usize] {
        self.dataset.object_sources(o)
    }

    /// V_s as global value ids.
    pub fn source_values(&self, s: usize) -> &[usize] {
        &self.source_values[s]
    }

    /// |V_o| - 1: how many false alternatives compete on object `o`.
    pub fn alternatives(&self, o: usize) -> usize {
        self.object_values(o).len() - 1
    }

    /// For each value, the sum of `weight(s)` over its claimants.
    pub fn value_sums<T: Scalar>(&self, weight: impl Fn(usize) -> T) -> Vec<T> {
        (0..self.n_values())
            .map(|v| self.value_sources(v).iter().map(|&s| weight(s)).sum())
            .collect()
    }

    /// For each source, the mean of `score[v]` over its claimed values.
    pub fn source_means<T: Scalar>(&self, score: &[T]) -> Vec<T> {
        self.source_values
            .iter()
            .map(|vs| vs.iter().map(|&v| score[v]).sum::<T>() / T::count(vs.len()))
            .collect()
    }

    /// Vote share |S_v| / |S_o| per value.
    pub fn vote_shares<T: Scalar>(&self) -> Vec<T> {
        (0..self.n_values())
            .map(|v| {
                T::count(self.value_sources(v).len())
                    / T::count(self.object_sources(self.object_of(v)).len())
            })
            .collect()
    }
}
