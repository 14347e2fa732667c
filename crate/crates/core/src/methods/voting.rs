use super::{Graph, Solved};
use crate::num::Scalar;

/// c_v = |S_v| / |S_o|; trust is informational only (mean share of a
/// source's claims).
pub(super) fn run<T: Scalar>(g: &Graph<'_>) -> Solved<T> {
    let confidence = g.vote_shares::<T>();
    let trust = g.source_means(&confidence);
    Solved {
        confidence,
        trust,
        iterations: 1,
        converged: true,
        non_finite_at: None,
    }
}
