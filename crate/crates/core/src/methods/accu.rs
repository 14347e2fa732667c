use super::{iterate_to_fixpoint, Graph, MethodConfig, Solved};
use crate::num::{softmax, Scalar};

/// Bayesian vote: score_v = Σ_{s∈S_v} ln(n·τ_s / (1-τ_s)) with n = |V_o|-1
/// false alternatives, then a softmax per object.
fn confidence<T: Scalar>(g: &Graph<'_>, trust: &[T], config: &MethodConfig) -> Vec<T> {
    let mut c = vec![T::one(); g.n_values()];
    for o in 0..g.n_objects() {
        let n = g.alternatives(o);
        if n == 0 {
            continue;
        }
        let n = T::count(n);
        let range = g.object_values(o);
        for v in range.clone() {
            c[v] = g
                .value_sources(v)
                .iter()
                .map(|&s| {
                    let t = config.clamp(trust[s]);
                    (n * t / (T::one() - t)).ln()
                })
                .sum();
        }
        softmax(&mut c[range]);
    }
    c
}

pub(super) fn run<T: Scalar>(g: &Graph<'_>, config: &MethodConfig) -> Solved<T> {
    let update = |trust: &[T]| g.source_means(&confidence(g, trust, config));
    let fix = iterate_to_fixpoint(update, vec![T::lit(0.8); g.n_sources()], config);
    let c = confidence(g, &fix.state, config);
    Solved::from_fixpoint(fix, c)
}
