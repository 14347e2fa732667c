//! Serializable reports tying methods, confidence scoring and evaluation
//! together, plus output-directory helpers and the tab-separated table.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::evaluation::{averaged_sweep, rank_by_metric, CoverageColumn, MetricName};
use crate::hypothesis::{rank_by_confidence, score, HypothesisConfig, MethodConfidence};
use crate::methods::{output_file_name, MethodId, MethodOutput};
use crate::model::{ClaimDataset, Mode, TruthAssignment};
use crate::num::Scalar;
use crate::ranking::{ranking_distance, RankingDistance, RankingVector};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct ConfidenceEntry<T> {
    pub method: MethodId,
    pub confidence: T,
    pub true_terms: usize,
    pub false_terms: usize,
    /// Normalized per-source precision τ_s under this method's hypothesis.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trust: Option<BTreeMap<String, T>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct ConfidenceReport<T> {
    pub mode: Mode,
    pub methods: Vec<ConfidenceEntry<T>>,
    pub ranking: RankingVector,
}

fn check_outputs<T: Scalar>(dataset: &ClaimDataset, outputs: &[MethodOutput<T>]) -> Result<()> {
    if outputs.is_empty() {
        return Err(Error::Config("no method outputs given".into()));
    }
    for (i, out) in outputs.iter().enumerate() {
        if out.mode != dataset.mode() {
            return Err(Error::Consistency(format!(
                "{} output is {}-valued but the dataset is {}-valued",
                out.method,
                out.mode,
                dataset.mode()
            )));
        }
        if outputs[..i].iter().any(|o| o.method == out.method) {
            return Err(Error::Consistency(format!(
                "duplicate output for {}",
                out.method
            )));
        }
    }
    Ok(())
}

/// Scores every output without ground truth and ranks them by C_m.
pub fn confidence_report<T: Scalar>(
    dataset: &ClaimDataset,
    outputs: &[MethodOutput<T>],
    config: &HypothesisConfig,
    with_trust: bool,
) -> Result<ConfidenceReport<T>> {
    check_outputs(dataset, outputs)?;
    let mut methods = Vec::with_capacity(outputs.len());
    for out in outputs {
        let scored = score(dataset, out, config)?;
        let trust = with_trust.then(|| {
            dataset
                .sources()
                .iter()
                .zip(&scored.trust.sources)
                .map(|(name, t)| (name.clone(), t.tau))
                .collect()
        });
        let c = scored.confidence;
        methods.push(ConfidenceEntry {
            method: c.method,
            confidence: c.confidence,
            true_terms: c.true_terms,
            false_terms: c.false_terms,
            trust,
        });
    }
    let ranking = rank_by_confidence(
        &methods
            .iter()
            .map(|e| MethodConfidence {
                method: e.method,
                confidence: e.confidence,
                true_terms: e.true_terms,
                false_terms: e.false_terms,
            })
            .collect::<Vec<_>>(),
    );
    Ok(ConfidenceReport {
        mode: dataset.mode(),
        methods,
        ranking,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct EvaluationReport<T> {
    pub mode: Mode,
    pub seed: u64,
    pub repetitions: usize,
    pub columns: Vec<CoverageColumn<T>>,
}

impl<T: Scalar> EvaluationReport<T> {
    pub fn column(&self, coverage: f64) -> Option<&CoverageColumn<T>> {
        self.columns
            .iter()
            .find(|c| (c.coverage - coverage).abs() < 1e-9)
    }

    pub fn methods(&self) -> Vec<MethodId> {
        let mut m: Vec<MethodId> = self
            .columns
            .iter()
            .flat_map(|c| c.reports.iter().map(|r| r.method))
            .collect();
        m.sort();
        m.dedup();
        m
    }
}

pub fn evaluation_report<T: Scalar>(
    dataset: &ClaimDataset,
    outputs: &[MethodOutput<T>],
    truth: &TruthAssignment,
    coverages: &[f64],
    seed: u64,
    repetitions: usize,
) -> Result<EvaluationReport<T>> {
    check_outputs(dataset, outputs)?;
    Ok(EvaluationReport {
        mode: dataset.mode(),
        seed,
        repetitions,
        columns: averaged_sweep(dataset, outputs, truth, coverages, seed, repetitions)?,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct CriterionRanking<T> {
    pub criterion: String,
    /// Coverage of the metric column; absent for the confidence ranking.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coverage: Option<f64>,
    pub ranking: RankingVector,
    pub distance: RankingDistance<T>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct RankingReport<T> {
    pub metric: MetricName,
    pub baseline_coverage: f64,
    pub baseline: RankingVector,
    /// One entry per coverage column, then the confidence ranking if given.
    pub rankings: Vec<CriterionRanking<T>>,
}

impl<T: Scalar> RankingReport<T> {
    pub fn confidence(&self) -> Option<&CriterionRanking<T>> {
        self.rankings.iter().find(|r| r.coverage.is_none())
    }
}

/// Ranks every coverage column on `metric` and compares each ranking, and
/// the confidence ranking, with the ranking at `baseline_coverage`.
pub fn ranking_report<T: Scalar>(
    evaluation: &EvaluationReport<T>,
    confidence: Option<&ConfidenceReport<T>>,
    metric: MetricName,
    baseline_coverage: f64,
) -> Result<RankingReport<T>> {
    let base_col = evaluation.column(baseline_coverage).ok_or_else(|| {
        Error::Config(format!(
            "evaluation report has no column at baseline coverage {baseline_coverage}"
        ))
    })?;
    let baseline = rank_by_metric(&base_col.reports, metric);
    let mut rankings = Vec::with_capacity(evaluation.columns.len() + 1);
    for col in &evaluation.columns {
        let ranking = rank_by_metric(&col.reports, metric);
        rankings.push(CriterionRanking {
            criterion: ranking.criterion.clone(),
            coverage: Some(col.coverage),
            distance: ranking_distance(&ranking, &baseline)?,
            ranking,
        });
    }
    if let Some(conf) = confidence {
        if conf.mode != evaluation.mode {
            return Err(Error::Consistency(format!(
                "confidence report is {}-valued but the evaluation report is {}-valued",
                conf.mode, evaluation.mode
            )));
        }
        rankings.push(CriterionRanking {
            criterion: conf.ranking.criterion.clone(),
            coverage: None,
            distance: ranking_distance(&conf.ranking, &baseline)?,
            ranking: conf.ranking.clone(),
        });
    }
    Ok(RankingReport {
        metric,
        baseline_coverage,
        baseline,
        rankings,
    })
}

/// Tab-separated table: one row per method with the metric at each
/// coverage level and optionally C_m, then `Dist.` and `Cos.` rows
/// comparing each column's ranking with the baseline.
pub fn write_table<T: Scalar, W: Write>(
    mut w: W,
    evaluation: &EvaluationReport<T>,
    confidence: Option<&ConfidenceReport<T>>,
    ranking: &RankingReport<T>,
) -> Result<()> {
    let metric = ranking.metric;
    let mut header = vec!["method".to_string()];
    header.extend(
        evaluation
            .columns
            .iter()
            .map(|c| format!("{}({})", metric, c.coverage)),
    );
    if confidence.is_some() {
        header.push("C_m".into());
    }
    writeln!(w, "{}", header.join("\t"))?;
    for m in evaluation.methods() {
        let mut row = vec![m.label().to_string()];
        for col in &evaluation.columns {
            match col.reports.iter().find(|r| r.method == m) {
                Some(r) => row.push(format!("{:.3}", r.metrics.get(metric))),
                None => row.push("-".into()),
            }
        }
        if let Some(conf) = confidence {
            match conf.methods.iter().find(|e| e.method == m) {
                Some(e) => row.push(format!("{:.0}", e.confidence)),
                None => row.push("-".into()),
            }
        }
        writeln!(w, "{}", row.join("\t"))?;
    }
    let row = |name: &str, f: &dyn Fn(&RankingDistance<T>) -> T| {
        std::iter::once(name.to_string())
            .chain(
                ranking
                    .rankings
                    .iter()
                    .map(|r| format!("{:.3}", f(&r.distance))),
            )
            .collect::<Vec<_>>()
            .join("\t")
    };
    writeln!(w, "{}", row("Dist.", &|d| d.euclidean))?;
    writeln!(w, "{}", row("Cos.", &|d| d.cosine))?;
    Ok(())
}

/// Writes `<method>.output.json` files. Everything is serialized before the
/// first file is created, so a serialization failure leaves nothing behind.
pub fn save_outputs<T: Scalar>(dir: impl AsRef<Path>, outputs: &[MethodOutput<T>]) -> Result<()> {
    let dir = dir.as_ref();
    let encoded = outputs
        .iter()
        .map(|o| Ok((o.file_name(), serde_json::to_vec_pretty(o)?)))
        .collect::<Result<Vec<_>>>()?;
    fs::create_dir_all(dir)?;
    for (name, bytes) in encoded {
        fs::write(dir.join(name), bytes)?;
    }
    Ok(())
}

pub fn load_output<T: Scalar>(path: impl AsRef<Path>) -> Result<MethodOutput<T>> {
    let text = crate::error::read_to_string(path.as_ref())?;
    Ok(serde_json::from_str(&text)?)
}

/// Loads `<method>.output.json` files from `dir`, in [`MethodId`] order.
/// With `methods` set, exactly those must be present.
pub fn load_outputs<T: Scalar>(
    dir: impl AsRef<Path>,
    methods: Option<&[MethodId]>,
) -> Result<Vec<MethodOutput<T>>> {
    let dir = dir.as_ref();
    let wanted: Vec<MethodId> = match methods {
        Some(m) => m.to_vec(),
        None => MethodId::ALL
            .into_iter()
            .filter(|m| dir.join(output_file_name(*m)).is_file())
            .collect(),
    };
    if wanted.is_empty() {
        return Err(Error::Config(format!(
            "no method outputs found in {}",
            dir.display()
        )));
    }
    let mut outputs = Vec::with_capacity(wanted.len());
    for m in wanted {
        let path = dir.join(output_file_name(m));
        let out: MethodOutput<T> = load_output(&path)?;
        if out.method != m {
            return Err(Error::Consistency(format!(
                "{} contains output for {}",
                path.display(),
                out.method
            )));
        }
        outputs.push(out);
    }
    Ok(outputs)
}
