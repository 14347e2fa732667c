//! Hub/authority style methods: Sums and Average-Log.

use super::{iterate_to_fixpoint, Graph, MethodConfig, Solved};
use crate::num::{max_normalize, Scalar};

fn confidence<T: Scalar>(g: &Graph<'_>, trust: &[T]) -> Vec<T> {
    let mut c = g.value_sums(|s| trust[s]);
    max_normalize(&mut c);
    c
}

pub(super) fn sums<T: Scalar>(g: &Graph<'_>, config: &MethodConfig) -> Solved<T> {
    let update = |trust: &[T]| {
        let c = confidence(g, trust);
        let mut next: Vec<T> = (0..g.n_sources())
            .map(|s| g.source_values(s).iter().map(|&v| c[v]).sum())
            .collect();
        max_normalize(&mut next);
        next
    };
    let fix = iterate_to_fixpoint(update, vec![T::lit(0.5); g.n_sources()], config);
    let c = confidence(g, &fix.state);
    Solved::from_fixpoint(fix, c)
}

/// Sums with τ_s = ln|V_s| · mean(c over V_s). A source with a single claim
/// gets weight 0.
pub(super) fn average_log<T: Scalar>(g: &Graph<'_>, config: &MethodConfig) -> Solved<T> {
    let update = |trust: &[T]| {
        let c = confidence(g, trust);
        let mut next = g.source_means(&c);
        for (s, t) in next.iter_mut().enumerate() {
            *t = *t * T::count(g.source_values(s).len()).ln();
        }
        max_normalize(&mut next);
        next
    };
    let fix = iterate_to_fixpoint(update, vec![T::lit(0.5); g.n_sources()], config);
    let c = confidence(g, &fix.state);
    Solved::from_fixpoint(fix, c)
}
