use super::{iterate_to_fixpoint, Graph, MethodConfig, Solved};
use crate::num::Scalar;

/// σ_v = -Σ ln(1-τ_s), optionally adjusted by implications from the other
/// values of the object, then squashed with a sigmoid of slope γ.
fn confidence<T: Scalar>(g: &Graph<'_>, trust: &[T], config: &MethodConfig) -> Vec<T> {
    let sigma = g.value_sums(|s| -(T::one() - config.clamp(trust[s])).ln());
    let gamma = T::lit(config.truthfinder_gamma);
    let rho = T::lit(config.truthfinder_rho);
    let adjusted: Vec<T> = match &config.truthfinder_similarity {
        None => sigma,
        Some(imp) => {
            let mut adj = sigma.clone();
            for o in 0..g.n_objects() {
                let range = g.object_values(o);
                for v in range.clone() {
                    let to = g.dataset.value_name(o, v - range.start);
                    let support: T = range
                        .clone()
                        .filter(|&w| w != v)
                        .map(|w| {
                            let from = g.dataset.value_name(o, w - range.start);
                            sigma[w] * T::lit(imp(from, to))
                        })
                        .sum();
                    adj[v] = sigma[v] + rho * support;
                }
            }
            adj
        }
    };
    adjusted
        .into_iter()
        .map(|s| T::one() / (T::one() + (-gamma * s).exp()))
        .collect()
}

pub(super) fn run<T: Scalar>(g: &Graph<'_>, config: &MethodConfig) -> Solved<T> {
    let update = |trust: &[T]| g.source_means(&confidence(g, trust, config));
    let init = vec![T::lit(config.truthfinder_initial_trust); g.n_sources()];
    let fix = iterate_to_fixpoint(update, init, config);
    let c = confidence(g, &fix.state, config);
    Solved::from_fixpoint(fix, c)
}
