//! Ground-truth evaluation: confusion counts, the five classic metrics plus
//! their average, metric rankings and coverage sweeps.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::generator::{seeded_rng, subsample_truth};
use crate::methods::{MethodId, MethodOutput};
use crate::model::{ClaimDataset, Mode, TruthAssignment};
use crate::num::Scalar;
use crate::ranking::RankingVector;

/// Scores within this distance are tied when ranking by a metric.
pub const METRIC_TIE_TOLERANCE: f64 = 1e-12;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfusionCounts {
    pub tp: u64,
    pub fp: u64,
    pub tn: u64,
    #[serde(rename = "fn")]
    pub fn_: u64,
}

impl ConfusionCounts {
    pub fn total(&self) -> u64 {
        self.tp + self.fp + self.tn + self.fn_
    }
}

impl std::ops::Add for ConfusionCounts {
    type Output = Self;

    fn add(self, o: Self) -> Self {
        ConfusionCounts {
            tp: self.tp + o.tp,
            fp: self.fp + o.fp,
            tn: self.tn + o.tn,
            fn_: self.fn_ + o.fn_,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MetricName {
    Precision,
    Recall,
    F1,
    Accuracy,
    Specificity,
    Average,
}

impl MetricName {
    pub const ALL: [MetricName; 6] = [
        MetricName::Precision,
        MetricName::Recall,
        MetricName::F1,
        MetricName::Accuracy,
        MetricName::Specificity,
        MetricName::Average,
    ];

    pub fn name(self) -> &'static str {
        match self {
            MetricName::Precision => "precision",
            MetricName::Recall => "recall",
            MetricName::F1 => "f1",
            MetricName::Accuracy => "accuracy",
            MetricName::Specificity => "specificity",
            MetricName::Average => "average",
        }
    }
}

impl fmt::Display for MetricName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MetricName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        MetricName::ALL
            .into_iter()
            .find(|m| m.name() == s.to_ascii_lowercase())
            .ok_or_else(|| Error::Config(format!("unknown metric `{s}`")))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct Metrics<T> {
    pub precision: T,
    pub recall: T,
    pub f1: T,
    pub accuracy: T,
    pub specificity: T,
    /// Mean of precision, recall, accuracy and specificity.
    pub average: T,
    /// Metrics whose denominator was zero; they are reported as 0.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub undefined: Vec<MetricName>,
}

impl<T: Scalar> Metrics<T> {
    pub fn get(&self, metric: MetricName) -> T {
        match metric {
            MetricName::Precision => self.precision,
            MetricName::Recall => self.recall,
            MetricName::F1 => self.f1,
            MetricName::Accuracy => self.accuracy,
            MetricName::Specificity => self.specificity,
            MetricName::Average => self.average,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct MetricReport<T> {
    pub method: MethodId,
    pub coverage: f64,
    pub counts: ConfusionCounts,
    #[serde(flatten)]
    pub metrics: Metrics<T>,
}

fn identified<'a, T: Scalar>(
    output: &'a MethodOutput<T>,
    object: &str,
) -> Result<&'a BTreeSet<String>> {
    output.identified_truth.get(object).ok_or_else(|| {
        Error::Consistency(format!(
            "{} has no identified truth for object `{object}`",
            output.method
        ))
    })
}

fn check_objects(dataset: &ClaimDataset, truth: &TruthAssignment) -> Result<()> {
    match truth.objects().find(|o| dataset.object_index(o).is_none()) {
        Some(o) => Err(Error::Consistency(format!(
            "truth references unknown object `{o}`"
        ))),
        None => Ok(()),
    }
}

/// Single-valued: one decision per object plus |V_o|-1 implicit negatives.
pub fn confusion_single<T: Scalar>(
    dataset: &ClaimDataset,
    output: &MethodOutput<T>,
    truth: &TruthAssignment,
) -> Result<ConfusionCounts> {
    check_objects(dataset, truth)?;
    let mut counts = ConfusionCounts::default();
    for (object, true_values) in truth.iter() {
        let o = dataset.object_index(object).expect("checked");
        let n = dataset.values(o).len() as u64;
        if identified(output, object)? == true_values {
            counts.tp += 1;
            counts.tn += n - 1;
        } else {
            counts.fp += 1;
            counts.fn_ += 1;
            counts.tn += n.saturating_sub(2);
        }
    }
    Ok(counts)
}

/// Multi-valued: every value of V_o is judged on its own.
pub fn confusion_multi<T: Scalar>(
    dataset: &ClaimDataset,
    output: &MethodOutput<T>,
    truth: &TruthAssignment,
) -> Result<ConfusionCounts> {
    check_objects(dataset, truth)?;
    let mut counts = ConfusionCounts::default();
    for (object, true_values) in truth.iter() {
        let o = dataset.object_index(object).expect("checked");
        let picked = identified(output, object)?;
        for v in dataset.values(o) {
            match (picked.contains(v), true_values.contains(v)) {
                (true, true) => counts.tp += 1,
                (true, false) => counts.fp += 1,
                (false, true) => counts.fn_ += 1,
                (false, false) => counts.tn += 1,
            }
        }
    }
    Ok(counts)
}

pub fn confusion<T: Scalar>(
    dataset: &ClaimDataset,
    output: &MethodOutput<T>,
    truth: &TruthAssignment,
) -> Result<ConfusionCounts> {
    match dataset.mode() {
        Mode::SingleValued => confusion_single(dataset, output, truth),
        Mode::MultiValued => confusion_multi(dataset, output, truth),
    }
}

pub fn metrics<T: Scalar>(counts: &ConfusionCounts) -> Metrics<T> {
    let mut undefined = Vec::new();
    let mut ratio = |num: u64, den: u64, name: MetricName| {
        if den == 0 {
            undefined.push(name);
            T::zero()
        } else {
            T::from_u64(num).unwrap() / T::from_u64(den).unwrap()
        }
    };
    let c = counts;
    let precision = ratio(c.tp, c.tp + c.fp, MetricName::Precision);
    let recall = ratio(c.tp, c.tp + c.fn_, MetricName::Recall);
    // 2TP / (2TP + FP + FN) is the harmonic mean of precision and recall,
    // and collapses to precision exactly when FP = FN
    let f1 = if c.tp == 0 {
        if c.fp + c.fn_ == 0 {
            undefined.push(MetricName::F1);
        }
        T::zero()
    } else {
        T::from_u64(2 * c.tp).unwrap() / T::from_u64(2 * c.tp + c.fp + c.fn_).unwrap()
    };
    let mut ratio = |num: u64, den: u64, name: MetricName| {
        if den == 0 {
            undefined.push(name);
            T::zero()
        } else {
            T::from_u64(num).unwrap() / T::from_u64(den).unwrap()
        }
    };
    let accuracy = ratio(c.tp + c.tn, c.total(), MetricName::Accuracy);
    let specificity = ratio(c.tn, c.fp + c.tn, MetricName::Specificity);
    let average = (precision + recall + accuracy + specificity) / T::lit(4.0);
    Metrics {
        precision,
        recall,
        f1,
        accuracy,
        specificity,
        average,
        undefined,
    }
}

pub fn evaluate<T: Scalar>(
    dataset: &ClaimDataset,
    output: &MethodOutput<T>,
    truth: &TruthAssignment,
    coverage: f64,
) -> Result<MetricReport<T>> {
    let counts = confusion(dataset, output, truth)?;
    Ok(MetricReport {
        method: output.method,
        coverage,
        counts,
        metrics: metrics(&counts),
    })
}

/// Descending ranking on one metric; ties within [`METRIC_TIE_TOLERANCE`].
pub fn rank_by_metric<T: Scalar>(reports: &[MetricReport<T>], metric: MetricName) -> RankingVector {
    let scores: Vec<(MethodId, T)> = reports
        .iter()
        .map(|r| (r.method, r.metrics.get(metric)))
        .collect();
    RankingVector::from_scores(metric.name(), &scores, T::lit(METRIC_TIE_TOLERANCE))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct CoverageColumn<T> {
    pub coverage: f64,
    /// Number of ground-truth objects in the (first) sample.
    pub objects: usize,
    pub reports: Vec<MetricReport<T>>,
}

/// Evaluates every output against one seeded subsample per coverage level.
/// All methods share the subsample of a level.
pub fn coverage_sweep<T: Scalar>(
    dataset: &ClaimDataset,
    outputs: &[MethodOutput<T>],
    complete_truth: &TruthAssignment,
    coverages: &[f64],
    seed: u64,
) -> Result<Vec<CoverageColumn<T>>> {
    let mut rng = seeded_rng(seed);
    coverages
        .iter()
        .map(|&coverage| {
            let sample = subsample_truth(complete_truth, coverage, &mut rng)?;
            let reports = outputs
                .iter()
                .map(|out| evaluate(dataset, out, &sample, coverage))
                .collect::<Result<Vec<_>>>()?;
            Ok(CoverageColumn {
                coverage,
                objects: sample.len(),
                reports,
            })
        })
        .collect()
}

/// Mean of `reps` sweeps seeded `seed`, `seed + 1`, ... Metric values are
/// averaged; counts are summed over repetitions.
pub fn averaged_sweep<T: Scalar>(
    dataset: &ClaimDataset,
    outputs: &[MethodOutput<T>],
    complete_truth: &TruthAssignment,
    coverages: &[f64],
    seed: u64,
    reps: usize,
) -> Result<Vec<CoverageColumn<T>>> {
    if reps == 0 {
        return Err(Error::Config("repetition count must be at least 1".into()));
    }
    let sweeps = (0..reps as u64)
        .map(|k| {
            coverage_sweep(
                dataset,
                outputs,
                complete_truth,
                coverages,
                seed.wrapping_add(k),
            )
        })
        .collect::<Result<Vec<_>>>()?;
    if reps == 1 {
        return Ok(sweeps.into_iter().next().expect("one sweep"));
    }
    let n = T::count(reps);
    let mut averaged = sweeps[0].clone();
    for (c, column) in averaged.iter_mut().enumerate() {
        for (r, report) in column.reports.iter_mut().enumerate() {
            let all: Vec<&MetricReport<T>> = sweeps.iter().map(|s| &s[c].reports[r]).collect();
            let mean = |m: MetricName| all.iter().map(|x| x.metrics.get(m)).sum::<T>() / n;
            let undefined: Vec<MetricName> = all
                .iter()
                .flat_map(|x| x.metrics.undefined.iter().copied())
                .collect::<BTreeSet<_>>()
                .into_iter()
                .collect();
            report.counts = all
                .iter()
                .fold(ConfusionCounts::default(), |acc, x| acc + x.counts);
            report.metrics = Metrics {
                precision: mean(MetricName::Precision),
                recall: mean(MetricName::Recall),
                f1: mean(MetricName::F1),
                accuracy: mean(MetricName::Accuracy),
                specificity: mean(MetricName::Specificity),
                average: mean(MetricName::Average),
                undefined,
            };
        }
    }
    Ok(averaged)
}

/// Expands a coverage list such as `0.01..0.1,0.2..1.0` or `0.05..0.5/0.05`.
///
/// A range without an explicit step advances by the decimal unit of its
/// start (0.01 for `0.01`, 0.1 for `0.2`). Values are rounded to 1e-9.
pub fn parse_coverages(spec: &str) -> Result<Vec<f64>> {
    let bad = |part: &str| Error::Config(format!("bad coverage entry `{part}`"));
    let num = |s: &str, part: &str| s.trim().parse::<f64>().map_err(|_| bad(part));
    let round = |x: f64| (x * 1e9).round() / 1e9;
    let mut out = Vec::new();
    for part in spec.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        if let Some((lo, rest)) = part.split_once("..") {
            let (hi, step) = match rest.split_once('/') {
                Some((hi, step)) => (num(hi, part)?, num(step, part)?),
                None => {
                    let lo = num(lo, part)?;
                    if !(lo > 0.0) {
                        return Err(bad(part));
                    }
                    (num(rest, part)?, 10f64.powf(lo.log10().floor()))
                }
            };
            let lo = num(lo, part)?;
            if !(step > 0.0) || hi < lo {
                return Err(bad(part));
            }
            let steps = ((hi - lo) / step + 1e-9).floor() as usize;
            out.extend((0..=steps).map(|k| round(lo + k as f64 * step)));
        } else {
            out.push(round(num(part, part)?));
        }
    }
    if out.is_empty() {
        return Err(Error::Config("empty coverage list".into()));
    }
    if let Some(c) = out.iter().find(|c| !(**c > 0.0 && **c <= 1.0)) {
        return Err(Error::Config(format!("coverage {c} not in (0, 1]")));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn counts(tp: u64, fp: u64, tn: u64, fn_: u64) -> ConfusionCounts {
        ConfusionCounts { tp, fp, tn, fn_ }
    }

    #[test]
    fn metric_formulas() {
        let m: Metrics<f64> = metrics(&counts(3, 1, 5, 1));
        assert_eq!(m.precision, 0.75);
        assert_eq!(m.recall, 0.75);
        assert_eq!(m.f1, 0.75);
        assert_eq!(m.accuracy, 0.8);
        assert_eq!(m.specificity, 5.0 / 6.0);
        assert!(m.undefined.is_empty());
    }

    #[test]
    fn degenerate_counts() {
        let m: Metrics<f64> = metrics(&counts(0, 0, 0, 0));
        assert_eq!(m.precision, 0.0);
        assert_eq!(m.average, 0.0);
        assert_eq!(m.undefined.len(), 5);
        let m: Metrics<f64> = metrics(&counts(1, 0, 0, 0));
        assert_eq!(m.precision, 1.0);
        assert_eq!(m.specificity, 0.0);
        assert_eq!(m.undefined, vec![MetricName::Specificity]);
    }

    #[test]
    fn coverage_lists() {
        let c = parse_coverages("0.01..0.1,0.2..1.0").unwrap();
        assert_eq!(c.len(), 19);
        assert_eq!(c[0], 0.01);
        assert_eq!(c[6], 0.07);
        assert_eq!(c[18], 1.0);
        assert_eq!(parse_coverages("1.0").unwrap(), vec![1.0]);
        assert_eq!(
            parse_coverages("0.25..1/0.25").unwrap(),
            vec![0.25, 0.5, 0.75, 1.0]
        );
        assert!(parse_coverages("0").is_err());
        assert!(parse_coverages("1.5").is_err());
        assert!(parse_coverages("x").is_err());
    }

    #[test]
    fn metric_names_parse() {
        for m in MetricName::ALL {
            assert_eq!(m.name().parse::<MetricName>().unwrap(), m);
        }
    }
}
