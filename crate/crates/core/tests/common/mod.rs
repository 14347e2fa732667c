//! Independent oracles. Everything here works on plain strings and nested
//! vectors and never touches the crate's indexes or scoring code.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use comptruth::methods::MethodOutput;
use comptruth::model::{ClaimDataset, Mode, TruthAssignment};
use comptruth::MethodId;
use rand::seq::SliceRandom;
use rand::Rng;

pub type Triples = Vec<(String, String, String)>;
pub type Truth = BTreeMap<String, BTreeSet<String>>;

pub const CLAMP: f64 = 1e-6;
pub const BETA: f64 = 0.1;

/// A random dataset with at most 5 sources, 5 objects and 4 values per
/// object, plus a random hypothesis naming only claimed values.
pub fn micro_dataset(rng: &mut impl Rng, mode: Mode) -> (Triples, Truth) {
    let names = ["a", "b", "c", "d"];
    let n_s = rng.gen_range(1..=5);
    let n_o = rng.gen_range(1..=5);
    let mut triples = Triples::new();
    for o in 0..n_o {
        let n_v = rng.gen_range(2..=4);
        for s in 0..n_s {
            // the first source always covers the first object
            if !(s == 0 && o == 0) && !rng.gen_bool(0.7) {
                continue;
            }
            let mut vals: Vec<&str> = names[..n_v].to_vec();
            vals.shuffle(rng);
            let k = match mode {
                Mode::SingleValued => 1,
                Mode::MultiValued => rng.gen_range(1..=n_v),
            };
            for v in &vals[..k] {
                triples.push((format!("s{s}"), format!("o{o}"), v.to_string()));
            }
        }
    }
    let truth = random_hypothesis(rng, &triples, mode);
    (triples, truth)
}

pub fn claimed_values(triples: &Triples) -> BTreeMap<String, BTreeSet<String>> {
    let mut m: BTreeMap<String, BTreeSet<String>> = BTreeMap::new();
    for (_, o, v) in triples {
        m.entry(o.clone()).or_default().insert(v.clone());
    }
    m
}

pub fn random_hypothesis(rng: &mut impl Rng, triples: &Triples, mode: Mode) -> Truth {
    claimed_values(triples)
        .into_iter()
        .map(|(o, vals)| {
            let mut vals: Vec<String> = vals.into_iter().collect();
            vals.shuffle(rng);
            let k = match mode {
                Mode::SingleValued => 1,
                Mode::MultiValued => rng.gen_range(1..=vals.len()),
            };
            (o, vals[..k].iter().cloned().collect())
        })
        .collect()
}

pub fn dataset(triples: &Triples, mode: Mode) -> ClaimDataset {
    ClaimDataset::from_triples(
        triples
            .iter()
            .map(|(s, o, v)| (s.as_str(), o.as_str(), v.as_str())),
        mode,
    )
    .expect("valid micro dataset")
}

pub fn assignment(truth: &Truth) -> TruthAssignment {
    truth
        .iter()
        .flat_map(|(o, vs)| vs.iter().map(move |v| (o.clone(), v.clone())))
        .collect()
}

pub fn hypothesis_output(method: MethodId, mode: Mode, truth: &Truth) -> MethodOutput<f64> {
    MethodOutput {
        method,
        mode,
        identified_truth: assignment(truth),
        value_confidence: BTreeMap::new(),
        native_trust: BTreeMap::new(),
        iterations: 0,
        converged: true,
    }
}

pub fn truth_of(output: &MethodOutput<f64>) -> Truth {
    output
        .identified_truth
        .iter()
        .map(|(o, vs)| (o.clone(), vs.clone()))
        .collect()
}

/// (TP, FP) per source. Single-valued compares the claimed value set with
/// the hypothesis as a whole; multi-valued judges each claimed value.
pub fn brute_counts(triples: &Triples, truth: &Truth, mode: Mode) -> BTreeMap<String, (u64, u64)> {
    let mut per: BTreeMap<(String, String), BTreeSet<String>> = BTreeMap::new();
    for (s, o, v) in triples {
        per.entry((s.clone(), o.clone()))
            .or_default()
            .insert(v.clone());
    }
    let mut counts: BTreeMap<String, (u64, u64)> = BTreeMap::new();
    for ((s, o), vals) in per {
        let e = counts.entry(s).or_default();
        match mode {
            Mode::SingleValued => {
                if &vals == &truth[&o] {
                    e.0 += 1;
                } else {
                    e.1 += 1;
                }
            }
            Mode::MultiValued => {
                for v in vals {
                    if truth[&o].contains(&v) {
                        e.0 += 1;
                    } else {
                        e.1 += 1;
                    }
                }
            }
        }
    }
    counts
}

pub fn brute_tau(triples: &Triples, truth: &Truth, mode: Mode) -> BTreeMap<String, f64> {
    brute_counts(triples, truth, mode)
        .into_iter()
        .map(|(s, (tp, fp))| (s, tp as f64 / (tp + fp) as f64))
        .collect()
}

/// Unique solution of M·π = π, Σπ = 1 by Gaussian elimination with
/// partial pivoting.
pub fn solve_stationary(m: &[Vec<f64>]) -> Vec<f64> {
    let n = m.len();
    // rows 0..n-1 of (M - I) plus the normalization row replacing the last
    let mut a: Vec<Vec<f64>> = (0..n)
        .map(|i| {
            let mut row: Vec<f64> = (0..n)
                .map(|j| m[i][j] - if i == j { 1.0 } else { 0.0 })
                .collect();
            row.push(0.0);
            row
        })
        .collect();
    a[n - 1] = vec![1.0; n + 1];
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&x, &y| a[x][col].abs().total_cmp(&a[y][col].abs()))
            .unwrap();
        a.swap(col, pivot);
        for row in 0..n {
            if row != col {
                let f = a[row][col] / a[col][col];
                for k in col..=n {
                    a[row][k] -= f * a[col][k];
                }
            }
        }
    }
    (0..n).map(|i| a[i][n] / a[i][i]).collect()
}

/// M^k · u for the uniform start vector u.
pub fn matrix_power_vector(m: &[Vec<f64>], k: usize) -> Vec<f64> {
    let n = m.len();
    let mut x = vec![1.0 / n as f64; n];
    for _ in 0..k {
        x = (0..n)
            .map(|i| (0..n).map(|j| m[i][j] * x[j]).sum())
            .collect();
    }
    x
}

/// Smoothed, column-normalized co-occurrence matrix over `values`, built
/// directly from the definition.
pub fn cooccurrence_oracle(
    triples: &Triples,
    object: &str,
    values: &[String],
    weight: impl Fn(&str) -> f64,
) -> Vec<Vec<f64>> {
    let claims: BTreeSet<(&str, &str)> = triples
        .iter()
        .filter(|(_, o, _)| o == object)
        .map(|(s, _, v)| (s.as_str(), v.as_str()))
        .collect();
    let sources: BTreeSet<&str> = claims.iter().map(|(s, _)| *s).collect();
    let n = values.len();
    let mut m = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in 0..n {
            let raw: f64 = if i == j {
                0.0
            } else {
                sources
                    .iter()
                    .filter(|s| {
                        claims.contains(&(**s, values[i].as_str()))
                            && claims.contains(&(**s, values[j].as_str()))
                    })
                    .map(|s| weight(s))
                    .sum()
            };
            m[i][j] = BETA + (1.0 - BETA) * raw;
        }
    }
    for j in 0..n {
        let col: f64 = (0..n).map(|i| m[i][j]).sum();
        for row in m.iter_mut() {
            row[j] /= col;
        }
    }
    m
}

/// Per-object pick probability of every claimed value under the hypothesis.
pub fn pick_probabilities(
    triples: &Triples,
    truth: &Truth,
    mode: Mode,
) -> BTreeMap<(String, String), f64> {
    let tau = brute_tau(triples, truth, mode);
    let mut out = BTreeMap::new();
    for (o, vals) in claimed_values(triples) {
        let (true_vals, false_vals): (Vec<String>, Vec<String>) =
            vals.into_iter().partition(|v| truth[&o].contains(v));
        match mode {
            Mode::SingleValued => {
                for v in &true_vals {
                    out.insert((o.clone(), v.clone()), 1.0);
                }
                let mass: Vec<f64> = false_vals
                    .iter()
                    .map(|v| {
                        triples
                            .iter()
                            .filter(|(_, o2, v2)| *o2 == o && v2 == v)
                            .map(|(s, _, _)| 1.0 - tau[s])
                            .sum()
                    })
                    .collect();
                let total: f64 = mass.iter().sum();
                for (v, m) in false_vals.iter().zip(mass) {
                    let p = if total > 0.0 {
                        m / total
                    } else {
                        1.0 / false_vals.len() as f64
                    };
                    out.insert((o.clone(), v.clone()), p);
                }
            }
            Mode::MultiValued => {
                for (class, positive) in [(&true_vals, true), (&false_vals, false)] {
                    if class.is_empty() {
                        continue;
                    }
                    let m = cooccurrence_oracle(triples, &o, class, |s| {
                        if positive {
                            tau[s]
                        } else {
                            1.0 - tau[s]
                        }
                    });
                    for (v, p) in class.iter().zip(solve_stationary(&m)) {
                        out.insert((o.clone(), v.clone()), p);
                    }
                }
            }
        }
    }
    out
}

/// Product of floats kept as mantissa · 2^exponent so long products of
/// small factors do not underflow.
#[derive(Clone, Copy, Debug)]
pub struct Scaled {
    pub mantissa: f64,
    pub exponent: i64,
}

impl Scaled {
    pub fn one() -> Self {
        Scaled {
            mantissa: 1.0,
            exponent: 0,
        }
    }

    pub fn mul(mut self, x: f64) -> Self {
        self.mantissa *= x;
        while self.mantissa < 1.0 / 1024.0 {
            self.mantissa *= 1024.0;
            self.exponent -= 10;
        }
        self
    }
}

/// The dataset likelihood as a plain product over claims, no logarithms.
pub fn likelihood_product(triples: &Triples, truth: &Truth, mode: Mode) -> Scaled {
    let tau = brute_tau(triples, truth, mode);
    let picks = pick_probabilities(triples, truth, mode);
    let unique: BTreeSet<&(String, String, String)> = triples.iter().collect();
    let mut p = Scaled::one();
    for (s, o, v) in unique {
        let t = tau[s].clamp(CLAMP, 1.0 - CLAMP);
        let pick = picks[&(o.clone(), v.clone())];
        p = if truth[o].contains(v) {
            p.mul(t * pick)
        } else {
            p.mul((1.0 - t) * pick)
        };
    }
    p
}

/// Relative distance between exp(log_value) and a scaled product.
pub fn relative_gap(log_value: f64, product: Scaled) -> f64 {
    let rescaled = (log_value - product.exponent as f64 * std::f64::consts::LN_2).exp();
    ((rescaled - product.mantissa) / product.mantissa).abs()
}

/// Random positive column-stochastic matrix with entries drawn from
/// [0.2, 1] before normalization.
pub fn random_stochastic(rng: &mut impl Rng, n: usize) -> Vec<Vec<f64>> {
    let mut m: Vec<Vec<f64>> = (0..n)
        .map(|_| (0..n).map(|_| rng.gen_range(0.2..=1.0)).collect())
        .collect();
    for j in 0..n {
        let col: f64 = (0..n).map(|i| m[i][j]).sum();
        for row in m.iter_mut() {
            row[j] /= col;
        }
    }
    m
}

pub fn l1(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).sum()
}
