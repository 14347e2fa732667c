//! Synthetic single-valued corpora with complete ground truth.
//!
//! Six knobs shape a corpus: the scale (`num_sources`, `num_objects`,
//! `values_per_object`) and the characteristics (source coverage, per-source
//! ground-truth rate profile, and how false values are picked). A corpus is
//! a pure function of its config, seed included.

use std::collections::BTreeMap;
use std::str::FromStr;

use rand::distributions::{Distribution, WeightedIndex};
use rand::seq::{index, SliceRandom};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{ClaimDataset, DatasetStats, Mode, TruthAssignment};

/// Seeded generator used everywhere randomness is needed.
pub type SeededRng = ChaCha8Rng;

pub fn seeded_rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CoverageDist {
    /// Source i covers about |O|·e^{-λi/|S|} objects, from all of them down to ~1%.
    Exponential,
    /// Each source covers each object independently with this probability.
    Uniform(f64),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GtDist {
    #[serde(rename = "U25")]
    U25,
    #[serde(rename = "U75")]
    U75,
    #[serde(rename = "80P")]
    EightyPessimistic,
    #[serde(rename = "80O")]
    EightyOptimistic,
    #[serde(rename = "FP")]
    FullPessimistic,
    #[serde(rename = "FO")]
    FullOptimistic,
    #[serde(rename = "R")]
    Random,
    #[serde(rename = "Exp")]
    Exponential,
}

impl GtDist {
    pub const ALL: [GtDist; 8] = [
        GtDist::U25,
        GtDist::U75,
        GtDist::EightyPessimistic,
        GtDist::EightyOptimistic,
        GtDist::FullPessimistic,
        GtDist::FullOptimistic,
        GtDist::Random,
        GtDist::Exponential,
    ];

    pub fn short_name(self) -> &'static str {
        match self {
            GtDist::U25 => "U25",
            GtDist::U75 => "U75",
            GtDist::EightyPessimistic => "80P",
            GtDist::EightyOptimistic => "80O",
            GtDist::FullPessimistic => "FP",
            GtDist::FullOptimistic => "FO",
            GtDist::Random => "R",
            GtDist::Exponential => "Exp",
        }
    }
}

impl FromStr for GtDist {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.to_ascii_lowercase().replace(['-', '_'], "");
        Ok(match key.as_str() {
            "u25" | "uniform25" => GtDist::U25,
            "u75" | "uniform75" => GtDist::U75,
            "80p" | "80pessimistic" => GtDist::EightyPessimistic,
            "80o" | "80optimistic" => GtDist::EightyOptimistic,
            "fp" | "fullpessimistic" => GtDist::FullPessimistic,
            "fo" | "fulloptimistic" => GtDist::FullOptimistic,
            "r" | "random" => GtDist::Random,
            "exp" | "exponential" => GtDist::Exponential,
            _ => {
                return Err(Error::Config(format!(
                    "unknown ground-truth distribution `{s}` (expected one of U25, U75, 80P, 80O, FP, FO, R, Exp)"
                )))
            }
        })
    }
}

impl FromStr for CoverageDist {
    type Err = Error;

    /// `exp` or `uniform:<p>`.
    fn from_str(s: &str) -> Result<Self> {
        let lower = s.to_ascii_lowercase();
        if lower == "exp" || lower == "exponential" {
            return Ok(CoverageDist::Exponential);
        }
        if let Some(p) = lower.strip_prefix("uniform:") {
            let p: f64 = p
                .parse()
                .map_err(|_| Error::Config(format!("bad coverage probability in `{s}`")))?;
            return Ok(CoverageDist::Uniform(p));
        }
        Err(Error::Config(format!(
            "unknown coverage distribution `{s}` (expected `exp` or `uniform:<p>`)"
        )))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ConfusionDist {
    Exponential,
    Uniform,
}

impl FromStr for ConfusionDist {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "exp" | "exponential" => Ok(ConfusionDist::Exponential),
            "uniform" => Ok(ConfusionDist::Uniform),
            _ => Err(Error::Config(format!(
                "unknown confusion distribution `{s}` (expected `exp` or `uniform`)"
            ))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct GeneratorConfig {
    pub num_sources: usize,
    pub num_objects: usize,
    pub values_per_object: usize,
    pub coverage_dist: CoverageDist,
    pub gt_dist: GtDist,
    pub confusion_dist: ConfusionDist,
    pub seed: u64,
}

impl Default for GeneratorConfig {
    fn default() -> Self {
        GeneratorConfig {
            num_sources: 50,
            num_objects: 1000,
            values_per_object: 20,
            coverage_dist: CoverageDist::Exponential,
            gt_dist: GtDist::U25,
            confusion_dist: ConfusionDist::Exponential,
            seed: 0,
        }
    }
}

impl GeneratorConfig {
    pub fn validate(&self) -> Result<()> {
        if self.num_sources == 0 {
            return Err(Error::Config("num_sources must be positive".into()));
        }
        if self.num_objects == 0 {
            return Err(Error::Config("num_objects must be positive".into()));
        }
        if self.values_per_object < 2 {
            return Err(Error::Config("values_per_object must be at least 2".into()));
        }
        if let CoverageDist::Uniform(p) = self.coverage_dist {
            if !(p > 0.0 && p <= 1.0) {
                return Err(Error::Config(format!(
                    "uniform coverage probability {p} not in (0, 1]"
                )));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct GeneratedCorpus {
    pub config: GeneratorConfig,
    pub dataset: ClaimDataset,
    pub complete_truth: TruthAssignment,
    /// Configured true-claim rate per source.
    pub target_true_rate: BTreeMap<String, f64>,
    /// Realized fraction of true claims per source.
    pub per_source_true_rate: BTreeMap<String, f64>,
}

/// Machine-readable summary written next to a generated corpus.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeneratorManifest {
    pub config: GeneratorConfig,
    pub seed: u64,
    pub stats: DatasetStats,
    pub true_claims: usize,
    pub realized_mean_true_rate: f64,
    pub target_true_rate: BTreeMap<String, f64>,
    pub per_source_true_rate: BTreeMap<String, f64>,
}

impl GeneratedCorpus {
    pub fn manifest(&self) -> GeneratorManifest {
        let stats = self.dataset.stats();
        let true_claims = count_true_claims(&self.dataset, &self.complete_truth)
            .values()
            .sum();
        GeneratorManifest {
            config: self.config.clone(),
            seed: self.config.seed,
            stats,
            true_claims,
            realized_mean_true_rate: true_claims as f64 / stats.claims as f64,
            target_true_rate: self.target_true_rate.clone(),
            per_source_true_rate: self.per_source_true_rate.clone(),
        }
    }
}

fn padded(prefix: char, i: usize, n: usize) -> String {
    let width = (n.max(2) - 1).to_string().len();
    format!("{prefix}{i:0width$}")
}

/// Per-source true-claim rates. Two-group profiles put the first
/// ⌊0.8·|S|⌋ sources in the first group.
pub fn assign_true_rates(gt: GtDist, num_sources: usize, rng: &mut impl Rng) -> Vec<f64> {
    let mut rates = rate_profile(gt, num_sources, rng);
    // coverage decays with the source index, so the profile is shuffled to
    // keep rate and coverage independent
    rates.shuffle(rng);
    rates
}

fn rate_profile(gt: GtDist, num_sources: usize, rng: &mut impl Rng) -> Vec<f64> {
    let split = num_sources * 4 / 5;
    let two_groups = |first: f64, rest: f64| -> Vec<f64> {
        (0..num_sources)
            .map(|i| if i < split { first } else { rest })
            .collect()
    };
    match gt {
        GtDist::U25 => vec![0.25; num_sources],
        GtDist::U75 => vec![0.75; num_sources],
        GtDist::EightyPessimistic => two_groups(0.2, 0.8),
        GtDist::EightyOptimistic => two_groups(0.8, 0.2),
        GtDist::FullPessimistic => two_groups(0.0, 1.0),
        GtDist::FullOptimistic => two_groups(1.0, 0.0),
        GtDist::Random => (0..num_sources).map(|_| rng.gen::<f64>()).collect(),
        GtDist::Exponential => {
            if num_sources == 1 {
                return vec![0.99];
            }
            let lambda = 100f64.ln();
            let floor = (-lambda).exp();
            (0..num_sources)
                .map(|i| {
                    let t = i as f64 / (num_sources - 1) as f64;
                    0.01 + 0.98 * ((-lambda * t).exp() - floor) / (1.0 - floor)
                })
                .collect()
        }
    }
}

/// Number of objects covered by each source under exponential coverage.
pub fn exponential_coverage_counts(num_sources: usize, num_objects: usize) -> Vec<usize> {
    if num_sources == 1 {
        return vec![num_objects];
    }
    let lambda = 100f64.ln() * num_sources as f64 / (num_sources - 1) as f64;
    (0..num_sources)
        .map(|i| {
            let c = (num_objects as f64 * (-lambda * i as f64 / num_sources as f64).exp()).round();
            (c as usize).clamp(1, num_objects)
        })
        .collect()
}

fn decoy_weights(n: usize, dist: ConfusionDist) -> Vec<f64> {
    match dist {
        ConfusionDist::Uniform => vec![1.0; n],
        ConfusionDist::Exponential => {
            if n == 1 {
                return vec![1.0];
            }
            let lambda = 100f64.ln() / (n - 1) as f64;
            (0..n).map(|k| (-lambda * k as f64).exp()).collect()
        }
    }
}

const MAX_COVERAGE_DRAWS: usize = 1000;

fn draw_coverage(config: &GeneratorConfig, rng: &mut impl Rng) -> Result<Vec<Vec<usize>>> {
    let (s, o) = (config.num_sources, config.num_objects);
    for _ in 0..MAX_COVERAGE_DRAWS {
        let covered: Vec<Vec<usize>> = match config.coverage_dist {
            CoverageDist::Exponential => exponential_coverage_counts(s, o)
                .into_iter()
                .map(|k| {
                    let mut objs = index::sample(rng, o, k).into_vec();
                    objs.sort_unstable();
                    objs
                })
                .collect(),
            CoverageDist::Uniform(p) => (0..s)
                .map(|_| {
                    let mut objs: Vec<usize> = (0..o).filter(|_| rng.gen::<f64>() < p).collect();
                    if objs.is_empty() {
                        objs.push(rng.gen_range(0..o));
                    }
                    objs
                })
                .collect(),
        };
        let mut seen = vec![false; o];
        covered.iter().flatten().for_each(|&x| seen[x] = true);
        if seen.iter().all(|&b| b) {
            return Ok(covered);
        }
    }
    Err(Error::Config(format!(
        "could not cover every object after {MAX_COVERAGE_DRAWS} coverage draws"
    )))
}

/// Generates one corpus. Same config (seed included) gives the same corpus.
pub fn generate(config: &GeneratorConfig) -> Result<GeneratedCorpus> {
    config.validate()?;
    let mut rng = seeded_rng(config.seed);
    let (n_s, n_o, n_v) = (
        config.num_sources,
        config.num_objects,
        config.values_per_object,
    );

    let rates = assign_true_rates(config.gt_dist, n_s, &mut rng);

    // per object: the true value and the decoy pick order
    let weights = decoy_weights(n_v - 1, config.confusion_dist);
    let picker = WeightedIndex::new(&weights).expect("positive weights");
    let mut true_value = Vec::with_capacity(n_o);
    let mut decoys = Vec::with_capacity(n_o);
    for _ in 0..n_o {
        let t = rng.gen_range(0..n_v);
        let mut d: Vec<usize> = (0..n_v).filter(|&v| v != t).collect();
        d.shuffle(&mut rng);
        true_value.push(t);
        decoys.push(d);
    }

    let coverage = draw_coverage(config, &mut rng)?;

    let source_names: Vec<String> = (0..n_s).map(|i| padded('s', i, n_s)).collect();
    let object_names: Vec<String> = (0..n_o).map(|i| padded('o', i, n_o)).collect();
    let value_names: Vec<String> = (0..n_v).map(|i| padded('v', i, n_v)).collect();

    let mut triples = Vec::new();
    for (s, objs) in coverage.iter().enumerate() {
        for &o in objs {
            let v = if rng.gen::<f64>() < rates[s] {
                true_value[o]
            } else {
                decoys[o][picker.sample(&mut rng)]
            };
            triples.push((&source_names[s], &object_names[o], &value_names[v]));
        }
    }
    let dataset = ClaimDataset::from_triples(triples, Mode::SingleValued)?;

    let complete_truth: TruthAssignment = (0..n_o)
        .map(|o| (object_names[o].clone(), value_names[true_value[o]].clone()))
        .collect();
    let per_source_true_rate = realized_true_rates(&dataset, &complete_truth);
    let target_true_rate = source_names.iter().cloned().zip(rates).collect();

    Ok(GeneratedCorpus {
        config: config.clone(),
        dataset,
        complete_truth,
        target_true_rate,
        per_source_true_rate,
    })
}

/// `groups` corpora with seeds `seed`, `seed + 1`, ...
pub fn generate_group(config: &GeneratorConfig, groups: usize) -> Result<Vec<GeneratedCorpus>> {
    (0..groups as u64)
        .map(|k| {
            generate(&GeneratorConfig {
                seed: config.seed.wrapping_add(k),
                ..config.clone()
            })
        })
        .collect()
}

fn count_true_claims(dataset: &ClaimDataset, truth: &TruthAssignment) -> BTreeMap<String, usize> {
    let mut counts = BTreeMap::new();
    for (s, name) in dataset.sources().iter().enumerate() {
        let hits = dataset
            .source_claims(s)
            .iter()
            .filter(|c| {
                truth
                    .get(&dataset.objects()[c.object])
                    .is_some_and(|t| t.contains(dataset.value_name(c.object, c.value)))
            })
            .count();
        counts.insert(name.clone(), hits);
    }
    counts
}

/// Fraction of each source's claims that agree with `truth`.
pub fn realized_true_rates(
    dataset: &ClaimDataset,
    truth: &TruthAssignment,
) -> BTreeMap<String, f64> {
    count_true_claims(dataset, truth)
        .into_iter()
        .map(|(name, hits)| {
            let s = dataset.source_index(&name).expect("source exists");
            let total = dataset.source_claims(s).len();
            (name, hits as f64 / total as f64)
        })
        .collect()
}

/// Number of objects sampled for a coverage fraction: ⌈coverage·n⌉.
pub fn sample_size(coverage: f64, n: usize) -> usize {
    // the epsilon absorbs decimal noise such as 0.07 * 100 = 7.000000000000001
    let k = (coverage * n as f64 - 1e-9).ceil();
    (k.max(0.0) as usize).min(n)
}

/// Ground truth restricted to ⌈coverage·|O|⌉ uniformly sampled objects.
pub fn subsample_truth(
    complete: &TruthAssignment,
    coverage: f64,
    rng: &mut impl Rng,
) -> Result<TruthAssignment> {
    if !(coverage > 0.0 && coverage <= 1.0) {
        return Err(Error::Config(format!("coverage {coverage} not in (0, 1]")));
    }
    let objects: Vec<&String> = complete.objects().collect();
    let k = sample_size(coverage, objects.len());
    let mut picked = index::sample(rng, objects.len(), k).into_vec();
    picked.sort_unstable();
    Ok(complete.restrict(picked.into_iter().map(|i| objects[i])))
}
