use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use log::{info, warn};

use comptruth::evaluation::{parse_coverages, MetricName};
use comptruth::generator::{generate_group, ConfusionDist, CoverageDist, GeneratedCorpus, GtDist};
use comptruth::methods::parse_method_list;
use comptruth::model::{load_claims, load_truth, write_claims, write_truth};
use comptruth::report::{
    confidence_report, evaluation_report, load_outputs, ranking_report, save_outputs, write_table,
};
use comptruth::{
    ConfidenceReport, Error, EvaluationReport, GeneratorConfig, HypothesisConfig, MethodConfig,
    MethodId, MethodOutput, Mode,
};

#[derive(Parser)]
#[command(
    name = "comptruth",
    version,
    about = "Truth discovery and ground-truth-free method ranking"
)]
struct Cli {
    /// More log output (-v info, -vv debug).
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    verbose: u8,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a synthetic corpus: claims.csv, truth.csv and manifest.json.
    Generate(GenerateArgs),
    /// Run truth discovery methods over a claims file.
    Discover(DiscoverArgs),
    /// Score method outputs without ground truth.
    Confidence(ConfidenceArgs),
    /// Evaluate method outputs against ground truth across coverage levels.
    Evaluate(EvaluateArgs),
    /// Compare metric rankings and the confidence ranking with a baseline.
    Rank(RankArgs),
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(long)]
    out: PathBuf,
    /// JSON file with generator settings; flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    num_sources: Option<usize>,
    #[arg(long)]
    num_objects: Option<usize>,
    #[arg(long)]
    values_per_object: Option<usize>,
    /// `exp` or `uniform:<p>`.
    #[arg(long)]
    coverage_dist: Option<String>,
    /// U25, U75, 80P, 80O, FP, FO, R or Exp.
    #[arg(long)]
    gt_dist: Option<String>,
    /// `exp` or `uniform`.
    #[arg(long)]
    confusion_dist: Option<String>,
    #[arg(long)]
    seed: Option<u64>,
    /// Emit N corpora seeded seed, seed+1, ... into corpus-XX subdirectories.
    #[arg(long)]
    groups: Option<usize>,
}

#[derive(Args)]
struct DataArgs {
    /// Claims CSV with header `source,object,value`.
    #[arg(long)]
    data: PathBuf,
    #[arg(long, default_value = "single")]
    mode: String,
    /// `all` or a comma-separated list of method names.
    #[arg(long, default_value = "all")]
    method: String,
}

#[derive(Args)]
struct DiscoverArgs {
    #[command(flatten)]
    data: DataArgs,
    /// Directory receiving one `<method>.output.json` per method.
    #[arg(long)]
    out: PathBuf,
    #[arg(long)]
    max_iterations: Option<usize>,
    #[arg(long)]
    epsilon: Option<f64>,
}

#[derive(Args)]
struct ConfidenceArgs {
    #[command(flatten)]
    data: DataArgs,
    /// Directory holding method outputs.
    #[arg(long)]
    outputs: PathBuf,
    #[arg(long)]
    out: PathBuf,
    /// Include per-source trust in the report.
    #[arg(long)]
    trust: bool,
    #[arg(long, default_value_t = 0.1)]
    beta: f64,
}

#[derive(Args)]
struct EvaluateArgs {
    #[command(flatten)]
    data: DataArgs,
    #[arg(long)]
    outputs: PathBuf,
    /// Ground truth CSV with header `object,value`.
    #[arg(long)]
    truth: PathBuf,
    #[arg(long)]
    out: PathBuf,
    /// Comma list of fractions; `a..b` ranges step by the unit of `a`.
    #[arg(long, default_value = "1.0")]
    coverage: String,
    #[arg(long, default_value_t = 10)]
    reps: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct RankArgs {
    /// Evaluation report written by `evaluate`.
    #[arg(long)]
    evaluation: PathBuf,
    /// Confidence report written by `confidence`.
    #[arg(long)]
    confidence: Option<PathBuf>,
    #[arg(long)]
    out: PathBuf,
    #[arg(long, default_value = "precision")]
    metric: String,
    /// Coverage column used as the reference ranking.
    #[arg(long, default_value_t = 1.0)]
    baseline: f64,
    /// Also write a tab-separated table here.
    #[arg(long)]
    table: Option<PathBuf>,
}

fn exit_code(err: &Error) -> u8 {
    match err {
        Error::Config(_) => 2,
        Error::Numeric { .. } | Error::Contract(_) => 4,
        _ => 3,
    }
}

fn write_json<T: serde::Serialize>(path: &Path, value: &T) -> comptruth::Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir)?;
    }
    let mut bytes = serde_json::to_vec_pretty(value)?;
    bytes.push(b'\n');
    fs::write(path, bytes)?;
    Ok(())
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> comptruth::Result<T> {
    let text = fs::read_to_string(path).map_err(|source| Error::File {
        path: path.to_path_buf(),
        source,
    })?;
    Ok(serde_json::from_str(&text)?)
}

fn write_corpus(dir: &Path, corpus: &GeneratedCorpus) -> comptruth::Result<()> {
    fs::create_dir_all(dir)?;
    write_claims(&corpus.dataset, fs::File::create(dir.join("claims.csv"))?)?;
    write_truth(
        &corpus.complete_truth,
        fs::File::create(dir.join("truth.csv"))?,
    )?;
    write_json(&dir.join("manifest.json"), &corpus.manifest())
}

fn generate(args: GenerateArgs) -> comptruth::Result<()> {
    let mut config: GeneratorConfig = match &args.config {
        Some(path) => read_json(path)?,
        None => GeneratorConfig::default(),
    };
    if let Some(n) = args.num_sources {
        config.num_sources = n;
    }
    if let Some(n) = args.num_objects {
        config.num_objects = n;
    }
    if let Some(n) = args.values_per_object {
        config.values_per_object = n;
    }
    if let Some(d) = &args.coverage_dist {
        config.coverage_dist = d.parse::<CoverageDist>()?;
    }
    if let Some(d) = &args.gt_dist {
        config.gt_dist = d.parse::<GtDist>()?;
    }
    if let Some(d) = &args.confusion_dist {
        config.confusion_dist = d.parse::<ConfusionDist>()?;
    }
    if let Some(seed) = args.seed {
        config.seed = seed;
    }
    match args.groups {
        None => {
            let corpus = generate_group(&config, 1)?.remove(0);
            write_corpus(&args.out, &corpus)?;
            println!(
                "{}: {} claims",
                args.out.display(),
                corpus.dataset.claims().len()
            );
        }
        Some(0) => return Err(Error::Config("--groups must be at least 1".into())),
        Some(n) => {
            for (k, corpus) in generate_group(&config, n)?.iter().enumerate() {
                let dir = args.out.join(format!("corpus-{k:02}"));
                write_corpus(&dir, corpus)?;
                println!(
                    "{}: seed {}, {} claims",
                    dir.display(),
                    corpus.config.seed,
                    corpus.dataset.claims().len()
                );
            }
        }
    }
    Ok(())
}

fn methods_and_mode(args: &DataArgs) -> comptruth::Result<(Vec<MethodId>, Mode)> {
    Ok((parse_method_list(&args.method)?, args.mode.parse()?))
}

fn discover(args: DiscoverArgs) -> comptruth::Result<()> {
    let (methods, mode) = methods_and_mode(&args.data)?;
    let mut config = MethodConfig::default();
    if let Some(n) = args.max_iterations {
        config.max_iterations = n;
    }
    if let Some(e) = args.epsilon {
        config.convergence_epsilon = e;
    }
    config.validate()?;
    let dataset = load_claims(&args.data.data, mode)?;
    info!("loaded {} claims", dataset.claims().len());
    let outputs = methods
        .iter()
        .map(|&m| comptruth::discover(&dataset, m, &config))
        .collect::<comptruth::Result<Vec<MethodOutput>>>()?;
    save_outputs(&args.out, &outputs)?;
    for out in &outputs {
        if !out.converged {
            warn!(
                "{} stopped after {} iterations without converging",
                out.method, out.iterations
            );
        }
        println!(
            "{}\titerations={}\tconverged={}",
            out.method, out.iterations, out.converged
        );
    }
    Ok(())
}

fn confidence(args: ConfidenceArgs) -> comptruth::Result<()> {
    let (methods, mode) = methods_and_mode(&args.data)?;
    let dataset = load_claims(&args.data.data, mode)?;
    let requested = (args.data.method != "all").then_some(methods.as_slice());
    let outputs: Vec<MethodOutput> = load_outputs(&args.outputs, requested)?;
    let config = HypothesisConfig {
        beta: args.beta,
        ..Default::default()
    };
    let report: ConfidenceReport = confidence_report(&dataset, &outputs, &config, args.trust)?;
    write_json(&args.out, &report)?;
    for e in &report.methods {
        println!(
            "{}\tC_m={:.4}\trank={}",
            e.method,
            e.confidence,
            report.ranking.rank(e.method).unwrap_or(0)
        );
    }
    Ok(())
}

fn evaluate(args: EvaluateArgs) -> comptruth::Result<()> {
    let (methods, mode) = methods_and_mode(&args.data)?;
    let coverages = parse_coverages(&args.coverage)?;
    let dataset = load_claims(&args.data.data, mode)?;
    let truth = load_truth(&args.truth, mode)?;
    let requested = (args.data.method != "all").then_some(methods.as_slice());
    let outputs: Vec<MethodOutput> = load_outputs(&args.outputs, requested)?;
    let report: EvaluationReport =
        evaluation_report(&dataset, &outputs, &truth, &coverages, args.seed, args.reps)?;
    write_json(&args.out, &report)?;
    println!(
        "{} coverage level(s), {} method(s)",
        report.columns.len(),
        outputs.len()
    );
    Ok(())
}

fn rank(args: RankArgs) -> comptruth::Result<()> {
    let metric: MetricName = args.metric.parse()?;
    let evaluation: EvaluationReport = read_json(&args.evaluation)?;
    let confidence: Option<ConfidenceReport> =
        args.confidence.as_deref().map(read_json).transpose()?;
    let report = ranking_report(&evaluation, confidence.as_ref(), metric, args.baseline)?;
    write_json(&args.out, &report)?;
    if let Some(path) = &args.table {
        let mut buf = Vec::new();
        write_table(&mut buf, &evaluation, confidence.as_ref(), &report)?;
        fs::write(path, buf)?;
    }
    for r in &report.rankings {
        let label = match r.coverage {
            Some(c) => format!("{}({c})", report.metric),
            None => r.criterion.clone(),
        };
        println!(
            "{label}\tdist={:.3}\tcos={:.3}",
            r.distance.euclidean, r.distance.cosine
        );
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = match cli.verbose {
        0 => "warn",
        1 => "info",
        _ => "debug",
    };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).init();

    let result = match cli.command {
        Command::Generate(a) => generate(a),
        Command::Discover(a) => discover(a),
        Command::Confidence(a) => confidence(a),
        Command::Evaluate(a) => evaluate(a),
        Command::Rank(a) => rank(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code(&err))
        }
    }
}
