//! Latent credibility analysis: SimpleLCA and GuessLCA.
//!
//! A source asserting on object o says the truth with probability τ and
//! otherwise picks one of the n_o = |V_o| - 1 false values uniformly. The
//! posterior over V_o is computed in log space and normalized per object.

use super::{iterate_to_fixpoint, Graph, MethodConfig, Solved};
use crate::num::{softmax, Scalar};

fn posterior<T: Scalar>(
    g: &Graph<'_>,
    config: &MethodConfig,
    honesty: impl Fn(usize, usize) -> T,
) -> Vec<T> {
    let mut c = vec![T::one(); g.n_values()];
    for o in 0..g.n_objects() {
        let n = g.alternatives(o);
        if n == 0 {
            continue;
        }
        let n = T::count(n);
        let range = g.object_values(o);
        let (mut base, mut lift) = (T::zero(), vec![T::zero(); g.n_sources()]);
        for &s in g.object_sources(o) {
            let t = config.clamp(honesty(s, o));
            let against = ((T::one() - t) / n).ln();
            base = base + against;
            lift[s] = t.ln() - against;
        }
        for v in range.clone() {
            c[v] = base + g.value_sources(v).iter().map(|&s| lift[s]).sum::<T>();
        }
        softmax(&mut c[range]);
    }
    c
}

pub(super) fn simple<T: Scalar>(g: &Graph<'_>, config: &MethodConfig) -> Solved<T> {
    let confidence = |trust: &[T]| posterior(g, config, |s, _| trust[s]);
    let update = |trust: &[T]| g.source_means(&confidence(trust));
    let fix = iterate_to_fixpoint(update, vec![T::lit(0.8); g.n_sources()], config);
    let c = confidence(&fix.state);
    Solved::from_fixpoint(fix, c)
}

/// A source that does not know the truth still hits it by a uniform guess
/// over V_o, so its effective honesty is τ + (1-τ)/|V_o|.
pub(super) fn guess<T: Scalar>(g: &Graph<'_>, config: &MethodConfig) -> Solved<T> {
    let confidence = |trust: &[T]| {
        posterior(g, config, |s, o| {
            let t = config.clamp(trust[s]);
            t + (T::one() - t) / T::count(g.object_values(o).len())
        })
    };
    let update = |trust: &[T]| g.source_means(&confidence(trust));
    let fix = iterate_to_fixpoint(update, vec![T::lit(0.8); g.n_sources()], config);
    let c = confidence(&fix.state);
    Solved::from_fixpoint(fix, c)
}
