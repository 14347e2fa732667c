//! CRH with 0-1 loss for categorical values.

use super::{iterate_to_fixpoint, Graph, MethodConfig, Solved};
use crate::num::Scalar;

const DELTA: f64 = 1e-9;

/// Weighted vote share per value; uniform when every claimant weighs zero.
fn confidence<T: Scalar>(g: &Graph<'_>, weight: &[T]) -> Vec<T> {
    let mut c = g.value_sums(|s| weight[s]);
    for o in 0..g.n_objects() {
        let range = g.object_values(o);
        let total: T = c[range.clone()].iter().copied().sum();
        let n = T::count(range.len());
        for v in range {
            c[v] = if total > T::zero() {
                c[v] / total
            } else {
                T::one() / n
            };
        }
    }
    c
}

/// Per object, the index of the first value with the largest vote.
fn truths<T: Scalar>(g: &Graph<'_>, c: &[T]) -> Vec<usize> {
    (0..g.n_objects())
        .map(|o| {
            g.object_values(o)
                .fold(None::<usize>, |best, v| match best {
                    Some(b) if c[b] >= c[v] => Some(b),
                    _ => Some(v),
                })
                .expect("objects have values")
        })
        .collect()
}

pub(super) fn run<T: Scalar>(g: &Graph<'_>, config: &MethodConfig) -> Solved<T> {
    let delta = T::lit(DELTA);
    let update = |weight: &[T]| {
        let winners = truths(g, &confidence(g, weight));
        let loss: Vec<T> = (0..g.n_sources())
            .map(|s| {
                let wrong = g
                    .source_values(s)
                    .iter()
                    .filter(|&&v| winners[g.object_of(v)] != v)
                    .count();
                T::count(wrong)
            })
            .collect();
        let total = loss.iter().copied().sum::<T>() + delta * T::count(g.n_sources());
        loss.iter().map(|l| -((*l + delta) / total).ln()).collect()
    };
    let fix = iterate_to_fixpoint(update, vec![T::one(); g.n_sources()], config);
    let c = confidence(g, &fix.state);
    Solved::from_fixpoint(fix, c)
}
