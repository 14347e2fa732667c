//! Truth discovery on conflicting (source, object, value) claims.
//!
//! Twelve discovery methods, a synthetic corpus generator, ground-truth
//! evaluation, and a ground-truth-free confidence score that ranks methods
//! by how well their output explains the observed claims.
//!
//! Numeric code is generic over [`Scalar`] (`f32` or `f64`); the aliases at
//! the crate root fix it to `f64`.

pub mod error;
pub mod evaluation;
pub mod generator;
pub mod hypothesis;
pub mod methods;
pub mod model;
pub mod num;
pub mod ranking;
pub mod report;

pub use error::{Error, Result};
pub use evaluation::{ConfusionCounts, MetricName};
pub use generator::{
    generate, generate_group, ConfusionDist, CoverageDist, GeneratorConfig, GtDist,
};
pub use hypothesis::HypothesisConfig;
pub use methods::{discover, run_all, MethodConfig, MethodId};
pub use model::{ClaimDataset, Mode, TruthAssignment};
pub use num::Scalar;
pub use ranking::{ranking_distance, RankingVector};

pub type Real = f64;
pub type MethodOutput = methods::MethodOutput<Real>;
pub type NormalizedTrust = hypothesis::NormalizedTrust<Real>;
pub type ValueDistributions = hypothesis::ValueDistributions<Real>;
pub type MethodConfidence = hypothesis::MethodConfidence<Real>;
pub type Metrics = evaluation::Metrics<Real>;
pub type MetricReport = evaluation::MetricReport<Real>;
pub type RankingDistance = ranking::RankingDistance<Real>;
pub type ConfidenceReport = report::ConfidenceReport<Real>;
pub type EvaluationReport = report::EvaluationReport<Real>;
pub type RankingReport = report::RankingReport<Real>;
