mod common;

use std::collections::BTreeSet;

use common::*;
use comptruth::evaluation::{confusion, metrics};
use comptruth::hypothesis::{
    normalize_trust_multi, normalize_trust_single, score, stationary_distribution, SquareMatrix,
};
use comptruth::methods::{discover, run_all};
use comptruth::model::{explode_truths, to_joint_view, ClaimDataset, TruthAssignment};
use comptruth::ranking::{ranking_distance, RankingDistance, RankingVector};
use comptruth::{HypothesisConfig, MethodConfig, MethodId, Mode};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn micro(seed: u64, mode: Mode) -> (Triples, Truth, ClaimDataset) {
    let (t, h) = micro_dataset(&mut ChaCha8Rng::seed_from_u64(seed), mode);
    let d = dataset(&t, mode);
    (t, h, d)
}

fn mode() -> impl Strategy<Value = Mode> {
    prop_oneof![Just(Mode::SingleValued), Just(Mode::MultiValued)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn dataset_rebuilds_from_its_triples(seed in any::<u64>(), mode in mode()) {
        let (_, _, d) = micro(seed, mode);
        let again = ClaimDataset::from_triples(d.triples(), mode).unwrap();
        prop_assert_eq!(&again, &d);
        let stats = d.stats();
        prop_assert_eq!(stats.claims, d.claims().len());
        for o in 0..d.objects().len() {
            let n = d.values(o).len();
            prop_assert!(n >= 1);
            for v in 0..n {
                prop_assert!(!d.value_sources(o, v).is_empty());
            }
        }
    }

    #[test]
    fn joint_view_round_trips(seed in any::<u64>()) {
        let (t, _, d) = micro(seed, Mode::MultiValued);
        let (joint, view) = to_joint_view(&d);
        prop_assert_eq!(joint.mode(), Mode::SingleValued);
        // each source's joint value explodes back to exactly its claimed set
        for (s, o, _) in &t {
            let j = view.joint_of(s, o).unwrap().to_string();
            let picked: TruthAssignment = [(o.clone(), j)].into_iter().collect();
            let exploded = explode_truths(&picked, &view).unwrap();
            let claimed: BTreeSet<String> = t
                .iter()
                .filter(|(s2, o2, _)| s2 == s && o2 == o)
                .map(|(_, _, v)| v.clone())
                .collect();
            prop_assert_eq!(exploded.get(o).unwrap(), &claimed);
        }
    }

    #[test]
    fn methods_are_deterministic_and_exclusive(seed in any::<u64>(), mode in mode()) {
        let (_, _, d) = micro(seed, mode);
        let cfg = MethodConfig::default();
        let first = run_all::<f64>(&d, &cfg).unwrap();
        let second = run_all::<f64>(&d, &cfg).unwrap();
        prop_assert_eq!(&first, &second);
        for out in &first {
            prop_assert_eq!(out, &discover::<f64>(&d, out.method, &cfg).unwrap());
            prop_assert_eq!(out.identified_truth.len(), d.objects().len());
            for (o, vals) in out.identified_truth.iter() {
                let oi = d.object_index(o).unwrap();
                prop_assert!(!vals.is_empty());
                prop_assert!(vals.iter().all(|v| d.value_index(oi, v).is_some()));
                if mode == Mode::SingleValued {
                    prop_assert_eq!(vals.len(), 1);
                }
            }
        }
    }

    #[test]
    fn single_valued_truth_is_the_argmax(seed in any::<u64>(), k in 0.001f64..1000.0) {
        let (_, _, d) = micro(seed, Mode::SingleValued);
        for out in run_all::<f64>(&d, &MethodConfig::default()).unwrap() {
            for (o, scores) in &out.value_confidence {
                let best = scores
                    .iter()
                    .map(|(v, c)| (v, c * k))
                    .fold(None::<(&String, f64)>, |acc, (v, c)| match acc {
                        Some((_, b)) if b >= c => acc,
                        _ => Some((v, c)),
                    })
                    .unwrap()
                    .0;
                prop_assert!(out.identified_truth.get(o).unwrap().contains(best), "{} on {}", out.method, o);
            }
        }
    }

    #[test]
    fn probabilistic_confidences_sum_to_one(seed in any::<u64>()) {
        let (_, _, d) = micro(seed, Mode::SingleValued);
        for m in [MethodId::Voting, MethodId::Accu, MethodId::SimpleLca, MethodId::GuessLca] {
            let out = discover::<f64>(&d, m, &MethodConfig::default()).unwrap();
            for scores in out.value_confidence.values() {
                let total: f64 = scores.values().sum();
                prop_assert!((total - 1.0).abs() < 1e-9, "{m}: {total}");
            }
        }
    }

    #[test]
    fn hypothesis_invariants(seed in any::<u64>(), mode in mode()) {
        let (t, h, d) = micro(seed, mode);
        let out = hypothesis_output(MethodId::Voting, mode, &h);
        let scored = score(&d, &out, &HypothesisConfig::default()).unwrap();
        prop_assert!(scored.confidence.confidence <= 0.0);
        let terms = scored.confidence.true_terms + scored.confidence.false_terms;
        prop_assert_eq!(terms, d.claims().len());
        let counts = brute_counts(&t, &h, mode);
        for (s, name) in d.sources().iter().enumerate() {
            let st = &scored.trust.sources[s];
            prop_assert_eq!((st.tp, st.fp), counts[name]);
        }
        for dist in &scored.distributions.objects {
            if dist.has_false() {
                prop_assert!((dist.false_mass() - 1.0).abs() < 1e-9);
            }
            if mode == Mode::MultiValued {
                prop_assert!((dist.true_mass() - 1.0).abs() < 1e-9);
                prop_assert!(dist.prob.iter().all(|p| *p > 0.0));
            }
        }
    }

    #[test]
    fn single_and_multi_trust_agree_on_singletons(seed in any::<u64>()) {
        let (t, h) = micro_dataset(&mut ChaCha8Rng::seed_from_u64(seed), Mode::SingleValued);
        let single = dataset(&t, Mode::SingleValued);
        let multi = dataset(&t, Mode::MultiValued);
        let a = normalize_trust_single(&single, &hypothesis_output(MethodId::Voting, Mode::SingleValued, &h)).unwrap();
        let b = normalize_trust_multi(&multi, &hypothesis_output(MethodId::Voting, Mode::MultiValued, &h)).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn single_valued_metrics_collapse(seed in any::<u64>(), pick in any::<u64>()) {
        let (t, h, d) = micro(seed, Mode::SingleValued);
        let gt = random_hypothesis(&mut ChaCha8Rng::seed_from_u64(pick), &t, Mode::SingleValued);
        let out = hypothesis_output(MethodId::Voting, Mode::SingleValued, &h);
        let c = confusion(&d, &out, &assignment(&gt)).unwrap();
        prop_assert_eq!(c.fp, c.fn_);
        let total: usize = (0..d.objects().len()).map(|o| d.values(o).len()).sum();
        prop_assert_eq!(c.total() as usize, total);
        let m = metrics::<f64>(&c);
        prop_assert_eq!(m.precision, m.recall);
        prop_assert_eq!(m.precision, m.f1);
    }

    #[test]
    fn multi_valued_counts_cover_every_value(seed in any::<u64>(), pick in any::<u64>()) {
        let (t, h, d) = micro(seed, Mode::MultiValued);
        let gt = random_hypothesis(&mut ChaCha8Rng::seed_from_u64(pick), &t, Mode::MultiValued);
        let c = confusion(&d, &hypothesis_output(MethodId::Voting, Mode::MultiValued, &h), &assignment(&gt)).unwrap();
        prop_assert_eq!(c.total() as usize, d.stats().values);
    }

    #[test]
    fn stationary_vector_is_fixed(seed in any::<u64>(), n in 1usize..=8) {
        let rows = random_stochastic(&mut ChaCha8Rng::seed_from_u64(seed), n);
        let pi: Vec<f64> = stationary_distribution(&SquareMatrix::from_rows(&rows).unwrap(), 1e-10).unwrap();
        let m_pi: Vec<f64> = (0..n).map(|i| (0..n).map(|j| rows[i][j] * pi[j]).sum()).collect();
        prop_assert!(l1(&m_pi, &pi) < 1e-9);
        prop_assert!((pi.iter().sum::<f64>() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn ranking_distance_to_itself(scores in prop::collection::vec(-10.0f64..10.0, 12)) {
        let pairs: Vec<(MethodId, f64)> = MethodId::ALL.iter().copied().zip(scores).collect();
        let r = RankingVector::from_scores("x", &pairs, 1e-12);
        let d: RankingDistance<f64> = ranking_distance(&r, &r).unwrap();
        prop_assert_eq!(d.euclidean, 0.0);
        prop_assert!((d.cosine - 1.0).abs() < 1e-15);
        // competition ranks: a rank r has exactly r-1 strictly better scores
        for (m, s) in &pairs {
            let better = pairs.iter().filter(|(_, x)| *x > *s + 1e-12).count() as u32;
            prop_assert_eq!(r.rank(*m).unwrap(), better + 1);
        }
    }
}
