//! 2-Estimates and 3-Estimates. Both use mutual exclusion: claiming one value
//! of an object counts as voting against every other value of it.

use std::cell::RefCell;

use super::{iterate_to_fixpoint, Graph, MethodConfig, Solved};
use crate::num::{rescale_unit, Scalar};

const FLOOR: f64 = 1e-3;

/// τ_s: mean over every (o, v) with o ∈ O_s of c_v if s claims v, else 1-c_v.
fn two_trust<T: Scalar>(g: &Graph<'_>, c: &[T]) -> Vec<T> {
    let mut trust: Vec<T> = (0..g.n_sources())
        .map(|s| {
            let mut total = T::zero();
            let mut terms = 0;
            let claimed = g.source_values(s);
            for &o in g.dataset.source_objects(s) {
                for v in g.object_values(o) {
                    total = total
                        + if claimed.binary_search(&v).is_ok() {
                            c[v]
                        } else {
                            T::one() - c[v]
                        };
                    terms += 1;
                }
            }
            total / T::count(terms)
        })
        .collect();
    rescale_unit(&mut trust);
    trust
}

/// c_v: mean over s ∈ S_o of τ_s if s claims v, else 1-τ_s.
fn two_confidence<T: Scalar>(g: &Graph<'_>, trust: &[T]) -> Vec<T> {
    let mut c: Vec<T> = (0..g.n_values())
        .map(|v| {
            let o = g.object_of(v);
            let claimants = g.value_sources(v);
            let total: T = g
                .object_sources(o)
                .iter()
                .map(|s| {
                    if claimants.binary_search(s).is_ok() {
                        trust[*s]
                    } else {
                        T::one() - trust[*s]
                    }
                })
                .sum();
            total / T::count(g.object_sources(o).len())
        })
        .collect();
    rescale_unit(&mut c);
    c
}

pub(super) fn two<T: Scalar>(g: &Graph<'_>, config: &MethodConfig) -> Solved<T> {
    let init = two_trust(g, &g.vote_shares::<T>());
    let update = |trust: &[T]| two_trust(g, &two_confidence(g, trust));
    let fix = iterate_to_fixpoint(update, init, config);
    let c = two_confidence(g, &fix.state);
    Solved::from_fixpoint(fix, c)
}

/// c_v: mean over s ∈ S_o of 1-ε_s·d_v if s claims v, else ε_s·d_v.
fn three_confidence<T: Scalar>(g: &Graph<'_>, error: &[T], hardness: &[T]) -> Vec<T> {
    let mut c: Vec<T> = (0..g.n_values())
        .map(|v| {
            let o = g.object_of(v);
            let claimants = g.value_sources(v);
            let total: T = g
                .object_sources(o)
                .iter()
                .map(|s| {
                    let miss = error[*s] * hardness[v];
                    if claimants.binary_search(s).is_ok() {
                        T::one() - miss
                    } else {
                        miss
                    }
                })
                .sum();
            total / T::count(g.object_sources(o).len())
        })
        .collect();
    rescale_unit(&mut c);
    c
}

/// Starting from vote shares, each round re-estimates source error rates ε,
/// then value hardness d, then confidences c. The fixpoint runs on 1 - ε.
pub(super) fn three<T: Scalar>(g: &Graph<'_>, config: &MethodConfig) -> Solved<T> {
    let floor = T::lit(FLOOR);
    let state = RefCell::new((g.vote_shares::<T>(), vec![T::lit(0.5); g.n_values()]));
    let update = |_: &[T]| {
        let (c, d) = &mut *state.borrow_mut();

        let mut error: Vec<T> = (0..g.n_sources())
            .map(|s| {
                let vs = g.source_values(s);
                vs.iter()
                    .map(|&v| (T::one() - c[v]) / d[v].max(floor))
                    .sum::<T>()
                    / T::count(vs.len())
            })
            .collect();
        rescale_unit(&mut error);

        for (v, dv) in d.iter_mut().enumerate() {
            let ss = g.value_sources(v);
            *dv = ss
                .iter()
                .map(|&s| (T::one() - c[v]) / error[s].max(floor))
                .sum::<T>()
                / T::count(ss.len());
        }
        rescale_unit(d);

        *c = three_confidence(g, &error, d);
        error.iter().map(|e| T::one() - *e).collect()
    };
    let fix = iterate_to_fixpoint(update, vec![T::lit(0.8); g.n_sources()], config);
    let c = state.into_inner().0;
    Solved::from_fixpoint(fix, c)
}
