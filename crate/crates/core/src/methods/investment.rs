//! Investment and PooledInvestment.

use super::{iterate_to_fixpoint, Graph, MethodConfig, Solved};
use crate::num::{max_normalize, Scalar};

/// Per value, H_v = Σ_{s∈S_v} τ_s / |V_s|.
fn invested<T: Scalar>(g: &Graph<'_>, trust: &[T]) -> Vec<T> {
    g.value_sums(|s| trust[s] / T::count(g.source_values(s).len()))
}

/// Sources collect credit back from each value in proportion to their share
/// of what was invested in it.
fn collect<T: Scalar>(g: &Graph<'_>, c: &[T], prev: &[T], pool: &[T]) -> Vec<T> {
    let mut next: Vec<T> = (0..g.n_sources())
        .map(|s| {
            let stake = prev[s] / T::count(g.source_values(s).len());
            g.source_values(s)
                .iter()
                .map(|&v| {
                    if pool[v] > T::zero() {
                        c[v] * stake / pool[v]
                    } else {
                        T::zero()
                    }
                })
                .sum()
        })
        .collect();
    max_normalize(&mut next);
    next
}

fn investment_confidence<T: Scalar>(g: &Graph<'_>, trust: &[T], exponent: T) -> (Vec<T>, Vec<T>) {
    let pool = invested(g, trust);
    let mut c: Vec<T> = pool.iter().map(|h| h.powf(exponent)).collect();
    max_normalize(&mut c);
    (c, pool)
}

pub(super) fn investment<T: Scalar>(g: &Graph<'_>, config: &MethodConfig) -> Solved<T> {
    let exponent = T::lit(config.investment_exponent);
    let update = |trust: &[T]| {
        let (c, pool) = investment_confidence(g, trust, exponent);
        collect(g, &c, trust, &pool)
    };
    let fix = iterate_to_fixpoint(update, vec![T::one(); g.n_sources()], config);
    let (c, _) = investment_confidence(g, &fix.state, exponent);
    Solved::from_fixpoint(fix, c)
}

/// c_v = H_v · G(H_v) / Σ_{v'∈V_o} G(H_v') with G(x) = x^exponent.
fn pooled_confidence<T: Scalar>(g: &Graph<'_>, trust: &[T], exponent: T) -> (Vec<T>, Vec<T>) {
    let pool = invested(g, trust);
    let grown: Vec<T> = pool.iter().map(|h| h.powf(exponent)).collect();
    let mut c = vec![T::zero(); g.n_values()];
    for o in 0..g.n_objects() {
        let range = g.object_values(o);
        let total: T = grown[range.clone()].iter().copied().sum();
        if total > T::zero() {
            for v in range {
                c[v] = pool[v] * grown[v] / total;
            }
        }
    }
    max_normalize(&mut c);
    (c, pool)
}

pub(super) fn pooled<T: Scalar>(g: &Graph<'_>, config: &MethodConfig) -> Solved<T> {
    let exponent = T::lit(config.pooled_exponent);
    let update = |trust: &[T]| {
        let (c, pool) = pooled_confidence(g, trust, exponent);
        collect(g, &c, trust, &pool)
    };
    let fix = iterate_to_fixpoint(update, vec![T::one(); g.n_sources()], config);
    let (c, _) = pooled_confidence(g, &fix.state, exponent);
    Solved::from_fixpoint(fix, c)
}
