//! Twelve truth-discovery methods behind one interface.
//!
//! Every method consumes a [`ClaimDataset`] and produces a [`MethodOutput`]:
//! the identified truth per object, a confidence score per value, and the
//! method's own source trust scores. Multi-valued datasets are collapsed to
//! joint values first, solved as single-valued, and the winners exploded
//! back into their member values.

mod accu;
mod crh;
mod estimates;
mod graph;
mod hubs;
mod investment;
mod lca;
mod truthfinder;
mod voting;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{explode_truths, to_joint_view, ClaimDataset, Mode, TruthAssignment};
use crate::num::{max_abs_diff, Scalar};

pub(crate) use graph::Graph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MethodId {
    Voting,
    Sums,
    AverageLog,
    Investment,
    PooledInvestment,
    #[serde(rename = "truthfinder")]
    TruthFinder,
    TwoEstimates,
    ThreeEstimates,
    Accu,
    #[serde(rename = "crh")]
    CRH,
    SimpleLca,
    GuessLca,
}

impl MethodId {
    pub const ALL: [MethodId; 12] = [
        MethodId::Voting,
        MethodId::Sums,
        MethodId::AverageLog,
        MethodId::Investment,
        MethodId::PooledInvestment,
        MethodId::TruthFinder,
        MethodId::TwoEstimates,
        MethodId::ThreeEstimates,
        MethodId::Accu,
        MethodId::CRH,
        MethodId::SimpleLca,
        MethodId::GuessLca,
    ];

    /// Stable identifier used on the command line and in file names.
    pub fn name(self) -> &'static str {
        match self {
            MethodId::Voting => "voting",
            MethodId::Sums => "sums",
            MethodId::AverageLog => "average_log",
            MethodId::Investment => "investment",
            MethodId::PooledInvestment => "pooled_investment",
            MethodId::TruthFinder => "truthfinder",
            MethodId::TwoEstimates => "two_estimates",
            MethodId::ThreeEstimates => "three_estimates",
            MethodId::Accu => "accu",
            MethodId::CRH => "crh",
            MethodId::SimpleLca => "simple_lca",
            MethodId::GuessLca => "guess_lca",
        }
    }

    /// Short column label for tables.
    pub fn label(self) -> &'static str {
        match self {
            MethodId::Voting => "Voting",
            MethodId::Sums => "Sums",
            MethodId::AverageLog => "Avg",
            MethodId::Investment => "Inv",
            MethodId::PooledInvestment => "PInv",
            MethodId::TruthFinder => "Tru",
            MethodId::TwoEstimates => "Est2",
            MethodId::ThreeEstimates => "Est3",
            MethodId::Accu => "Accu",
            MethodId::CRH => "CRH",
            MethodId::SimpleLca => "SLCA",
            MethodId::GuessLca => "GLCA",
        }
    }
}

impl fmt::Display for MethodId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// `all`, or a comma-separated list of names in any order. Duplicates are
/// dropped; the result follows [`MethodId::ALL`] order.
pub fn parse_method_list(spec: &str) -> Result<Vec<MethodId>> {
    if spec.trim().eq_ignore_ascii_case("all") {
        return Ok(MethodId::ALL.to_vec());
    }
    let mut methods = spec
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(str::parse)
        .collect::<Result<Vec<MethodId>>>()?;
    if methods.is_empty() {
        return Err(Error::Config("empty method list".into()));
    }
    methods.sort();
    methods.dedup();
    Ok(methods)
}

impl FromStr for MethodId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.to_ascii_lowercase().replace('-', "_");
        MethodId::ALL
            .into_iter()
            .find(|m| m.name() == key || m.label().eq_ignore_ascii_case(&key))
            .ok_or_else(|| {
                let names: Vec<&str> = MethodId::ALL.iter().map(|m| m.name()).collect();
                Error::Config(format!(
                    "unknown method `{s}`; valid names: {}",
                    names.join(", ")
                ))
            })
    }
}

/// Pairwise value implication used by TruthFinder: `imp(from, to)`.
pub type Similarity = Arc<dyn Fn(&str, &str) -> f64 + Send + Sync>;

#[derive(Clone)]
pub struct MethodConfig {
    pub max_iterations: usize,
    pub convergence_epsilon: f64,
    /// Trust values are kept in [ε, 1-ε] wherever a log or ratio is taken.
    pub trust_clamp_epsilon: f64,
    pub investment_exponent: f64,
    /// 1.0 makes pooling linear.
    pub pooled_exponent: f64,
    pub truthfinder_gamma: f64,
    pub truthfinder_rho: f64,
    pub truthfinder_initial_trust: f64,
    pub truthfinder_similarity: Option<Similarity>,
}

impl Default for MethodConfig {
    fn default() -> Self {
        MethodConfig {
            max_iterations: 200,
            convergence_epsilon: 1e-6,
            trust_clamp_epsilon: 1e-6,
            investment_exponent: 1.2,
            pooled_exponent: 1.4,
            truthfinder_gamma: 0.3,
            truthfinder_rho: 0.5,
            truthfinder_initial_trust: 0.9,
            truthfinder_similarity: None,
        }
    }
}

impl fmt::Debug for MethodConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MethodConfig")
            .field("max_iterations", &self.max_iterations)
            .field("convergence_epsilon", &self.convergence_epsilon)
            .field("trust_clamp_epsilon", &self.trust_clamp_epsilon)
            .field("investment_exponent", &self.investment_exponent)
            .field("pooled_exponent", &self.pooled_exponent)
            .field("truthfinder_gamma", &self.truthfinder_gamma)
            .field("truthfinder_rho", &self.truthfinder_rho)
            .field("truthfinder_initial_trust", &self.truthfinder_initial_trust)
            .field(
                "truthfinder_similarity",
                &self.truthfinder_similarity.is_some(),
            )
            .finish()
    }
}

impl MethodConfig {
    pub fn validate(&self) -> Result<()> {
        if self.max_iterations == 0 {
            return Err(Error::Config("max_iterations must be at least 1".into()));
        }
        if !(self.convergence_epsilon > 0.0 && self.convergence_epsilon < 1.0) {
            return Err(Error::Config(
                "convergence_epsilon must lie in (0, 1)".into(),
            ));
        }
        if !(self.trust_clamp_epsilon > 0.0 && self.trust_clamp_epsilon < 0.5) {
            return Err(Error::Config(
                "trust_clamp_epsilon must lie in (0, 0.5)".into(),
            ));
        }
        if !(self.truthfinder_initial_trust > 0.0 && self.truthfinder_initial_trust < 1.0) {
            return Err(Error::Config(
                "truthfinder_initial_trust must lie in (0, 1)".into(),
            ));
        }
        Ok(())
    }

    pub(crate) fn clamp<T: Scalar>(&self, t: T) -> T {
        let eps = T::lit(self.trust_clamp_epsilon);
        t.max(eps).min(T::one() - eps)
    }
}

/// One method's hypothesis about the dataset.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct MethodOutput<T> {
    pub method: MethodId,
    pub mode: Mode,
    pub identified_truth: TruthAssignment,
    /// object -> value -> confidence. In multi-valued mode a member value
    /// carries the best confidence among the joint values containing it.
    pub value_confidence: BTreeMap<String, BTreeMap<String, T>>,
    /// Method-native trust per source; scales differ between methods.
    pub native_trust: BTreeMap<String, T>,
    pub iterations: usize,
    pub converged: bool,
}

impl<T: Scalar> MethodOutput<T> {
    pub fn file_name(&self) -> String {
        output_file_name(self.method)
    }
}

pub fn output_file_name(method: MethodId) -> String {
    format!("{}.output.json", method.name())
}

#[derive(Clone, Debug, PartialEq)]
pub struct Fixpoint<T> {
    pub state: Vec<T>,
    pub iterations: usize,
    pub converged: bool,
    /// Iteration at which a non-finite value appeared, if any.
    pub non_finite_at: Option<usize>,
}

/// Repeats `update` on the source-trust vector until the largest per-entry
/// change drops below the convergence epsilon or the iteration budget runs out.
pub fn iterate_to_fixpoint<T, F>(mut update: F, init: Vec<T>, config: &MethodConfig) -> Fixpoint<T>
where
    T: Scalar,
    F: FnMut(&[T]) -> Vec<T>,
{
    let eps = T::lit(config.convergence_epsilon);
    let mut state = init;
    for it in 1..=config.max_iterations {
        let next = update(&state);
        if next.iter().any(|x| !x.is_finite()) {
            return Fixpoint {
                state,
                iterations: it,
                converged: false,
                non_finite_at: Some(it),
            };
        }
        let delta = max_abs_diff(&state, &next);
        state = next;
        if delta < eps {
            return Fixpoint {
                state,
                iterations: it,
                converged: true,
                non_finite_at: None,
            };
        }
    }
    Fixpoint {
        state,
        iterations: config.max_iterations,
        converged: false,
        non_finite_at: None,
    }
}

/// Result of a method run on a single-valued (possibly joint) graph.
pub(crate) struct Solved<T> {
    pub confidence: Vec<T>,
    pub trust: Vec<T>,
    pub iterations: usize,
    pub converged: bool,
    pub non_finite_at: Option<usize>,
}

impl<T: Scalar> Solved<T> {
    pub(crate) fn from_fixpoint(fix: Fixpoint<T>, confidence: Vec<T>) -> Self {
        Solved {
            confidence,
            trust: fix.state,
            iterations: fix.iterations,
            converged: fix.converged,
            non_finite_at: fix.non_finite_at,
        }
    }
}

fn solve<T: Scalar>(g: &Graph<'_>, method: MethodId, config: &MethodConfig) -> Solved<T> {
    match method {
        MethodId::Voting => voting::run(g),
        MethodId::Sums => hubs::sums(g, config),
        MethodId::AverageLog => hubs::average_log(g, config),
        MethodId::Investment => investment::investment(g, config),
        MethodId::PooledInvestment => investment::pooled(g, config),
        MethodId::TruthFinder => truthfinder::run(g, config),
        MethodId::TwoEstimates => estimates::two(g, config),
        MethodId::ThreeEstimates => estimates::three(g, config),
        MethodId::Accu => accu::run(g, config),
        MethodId::CRH => crh::run(g, config),
        MethodId::SimpleLca => lca::simple(g, config),
        MethodId::GuessLca => lca::guess(g, config),
    }
}

fn run_single<T: Scalar>(
    dataset: &ClaimDataset,
    method: MethodId,
    config: &MethodConfig,
) -> Result<MethodOutput<T>> {
    let g = Graph::new(dataset);
    let solved: Solved<T> = solve(&g, method, config);
    if let Some(iteration) = solved.non_finite_at {
        return Err(Error::Numeric { method, iteration });
    }
    if solved
        .confidence
        .iter()
        .chain(&solved.trust)
        .any(|x| !x.is_finite())
    {
        return Err(Error::Numeric {
            method,
            iteration: solved.iterations,
        });
    }

    let mut identified_truth = TruthAssignment::new();
    let mut value_confidence = BTreeMap::new();
    for (o, object) in dataset.objects().iter().enumerate() {
        let range = g.object_values(o);
        let scores = &solved.confidence[range.clone()];
        // first maximum wins: values are sorted, so ties go to the smallest
        let best = scores
            .iter()
            .enumerate()
            .fold(0, |best, (i, c)| if *c > scores[best] { i } else { best });
        identified_truth.insert(object.clone(), dataset.value_name(o, best).to_string());
        value_confidence.insert(
            object.clone(),
            dataset
                .values(o)
                .iter()
                .cloned()
                .zip(scores.iter().copied())
                .collect(),
        );
    }
    let native_trust = dataset
        .sources()
        .iter()
        .cloned()
        .zip(solved.trust.iter().copied())
        .collect();

    Ok(MethodOutput {
        method,
        mode: Mode::SingleValued,
        identified_truth,
        value_confidence,
        native_trust,
        iterations: solved.iterations,
        converged: solved.converged,
    })
}

/// Runs one method on a dataset.
pub fn discover<T: Scalar>(
    dataset: &ClaimDataset,
    method: MethodId,
    config: &MethodConfig,
) -> Result<MethodOutput<T>> {
    config.validate()?;
    match dataset.mode() {
        Mode::SingleValued => run_single(dataset, method, config),
        Mode::MultiValued => {
            let (joint, view) = to_joint_view(dataset);
            let out: MethodOutput<T> = run_single(&joint, method, config)?;
            let identified_truth = explode_truths(&out.identified_truth, &view)?;
            let mut value_confidence: BTreeMap<String, BTreeMap<String, T>> = BTreeMap::new();
            for (object, joints) in &out.value_confidence {
                let entry = value_confidence.entry(object.clone()).or_default();
                for (j, c) in joints {
                    for m in view.members(object, j).into_iter().flatten() {
                        let slot = entry.entry(m.clone()).or_insert(*c);
                        *slot = slot.max(*c);
                    }
                }
            }
            Ok(MethodOutput {
                mode: Mode::MultiValued,
                identified_truth,
                value_confidence,
                ..out
            })
        }
    }
}

/// All twelve methods, in [`MethodId::ALL`] order.
pub fn run_all<T: Scalar>(
    dataset: &ClaimDataset,
    config: &MethodConfig,
) -> Result<Vec<MethodOutput<T>>> {
    MethodId::ALL
        .iter()
        .map(|&m| discover(dataset, m, config))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toy() -> ClaimDataset {
        ClaimDataset::from_triples(
            [("s1", "o1", "a"), ("s2", "o1", "a"), ("s3", "o1", "b")],
            Mode::SingleValued,
        )
        .unwrap()
    }

    #[test]
    fn names_round_trip() {
        for m in MethodId::ALL {
            assert_eq!(m.name().parse::<MethodId>().unwrap(), m);
            assert_eq!(m.label().parse::<MethodId>().unwrap(), m);
            let json = serde_json::to_string(&m).unwrap();
            assert_eq!(json, format!("\"{}\"", m.name()));
        }
        let err = "nope".parse::<MethodId>().unwrap_err().to_string();
        assert!(err.contains("guess_lca"));
    }

    #[test]
    fn voting_toy() {
        let out: MethodOutput<f64> =
            discover(&toy(), MethodId::Voting, &MethodConfig::default()).unwrap();
        assert_eq!(out.value_confidence["o1"]["a"], 2.0 / 3.0);
        assert_eq!(out.value_confidence["o1"]["b"], 1.0 / 3.0);
        assert!(out.identified_truth.get("o1").unwrap().contains("a"));
        assert!(out.converged);
    }

    #[test]
    fn voting_in_f32() {
        let out: MethodOutput<f32> =
            discover(&toy(), MethodId::Voting, &MethodConfig::default()).unwrap();
        assert_eq!(out.value_confidence["o1"]["a"], 2.0f32 / 3.0);
    }

    #[test]
    fn identity_update_converges_in_one() {
        let fix = iterate_to_fixpoint(
            |x: &[f64]| x.to_vec(),
            vec![0.3, 0.7],
            &MethodConfig::default(),
        );
        assert!(fix.converged);
        assert_eq!(fix.iterations, 1);
    }

    #[test]
    fn two_cycle_does_not_converge() {
        let config = MethodConfig {
            max_iterations: 25,
            ..Default::default()
        };
        let fix = iterate_to_fixpoint(
            |x: &[f64]| x.iter().map(|v| 1.0 - v).collect(),
            vec![0.2, 0.9],
            &config,
        );
        assert!(!fix.converged);
        assert_eq!(fix.iterations, 25);
    }

    #[test]
    fn non_finite_is_reported() {
        let fix = iterate_to_fixpoint(
            |_: &[f64]| vec![f64::NAN],
            vec![0.0],
            &MethodConfig::default(),
        );
        assert_eq!(fix.non_finite_at, Some(1));
    }

    #[test]
    fn config_validation() {
        let bad = MethodConfig {
            max_iterations: 0,
            ..Default::default()
        };
        assert!(discover::<f64>(&toy(), MethodId::Sums, &bad).is_err());
        let bad = MethodConfig {
            convergence_epsilon: 1.5,
            ..Default::default()
        };
        assert!(bad.validate().is_err());
    }

    #[test]
    fn multi_valued_runs_on_joint_values() {
        let d = ClaimDataset::from_triples(
            [
                ("s1", "o", "Anna"),
                ("s1", "o", "Tim"),
                ("s2", "o", "Tim"),
                ("s2", "o", "Anna"),
                ("s3", "o", "Anna"),
                ("s1", "p", "x"),
                ("s2", "p", "x"),
                ("s3", "p", "x"),
            ],
            Mode::MultiValued,
        )
        .unwrap();
        for m in MethodId::ALL {
            let out: MethodOutput<f64> = discover(&d, m, &MethodConfig::default()).unwrap();
            assert_eq!(out.mode, Mode::MultiValued);
            let t: Vec<&String> = out.identified_truth.get("o").unwrap().iter().collect();
            assert_eq!(t, ["Anna", "Tim"], "{m}");
            assert_eq!(out.value_confidence["o"].len(), 2);
        }
    }
}
