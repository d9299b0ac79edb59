use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use barvec::barcode::{format_barcodes, read_barcodes};
use barvec::catalogue::help_text;
use barvec::persistence::{read_image, read_point_cloud, write_pgm, Direction};
use barvec::{BarcodeSet64, EssentialPolicy, FittedPipeline, MethodId, VectorizerSpec};
use barvec_cli::batch::vectorize_batch;
use barvec_cli::experiment::{run_experiment, ExperimentConfig};
use barvec_cli::synthetic::{generate_dataset, Family, Sample, SyntheticSpec};
use barvec_cli::{sample_barcodes, FiltrationConfig};
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "barvec", version, about = "Persistence barcodes and their vectorizations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Barcodes of a point cloud (Rips) or an image (cubical) as CSV.
    Persistence(PersistenceArgs),
    /// Feature matrix of barcode files.
    #[command(after_help = help_text())]
    Vectorize(VectorizeArgs),
    /// Fit a pipeline (ensemble model, ranges, grids) on barcode files.
    #[command(after_help = help_text())]
    Fit(FitArgs),
    /// Seeded synthetic classification experiment with a JSON report.
    #[command(after_help = help_text())]
    Bench(BenchArgs),
    /// Write a synthetic dataset to a directory.
    Generate(GenerateArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum DirectionArg {
    UpperStar,
    LowerStar,
}

impl From<DirectionArg> for Direction {
    fn from(d: DirectionArg) -> Self {
        match d {
            DirectionArg::UpperStar => Direction::UpperStar,
            DirectionArg::LowerStar => Direction::LowerStar,
        }
    }
}

#[derive(Args)]
struct PersistenceArgs {
    /// Point cloud CSV, one point per row.
    #[arg(long, conflicts_with = "image", required_unless_present = "image")]
    points: Option<PathBuf>,
    /// Image as PGM (P2/P5) or CSV matrix.
    #[arg(long)]
    image: Option<PathBuf>,
    /// Rips scale cutoff.
    #[arg(long, default_value_t = 2.0)]
    max_scale: f64,
    /// Largest Rips simplex dimension; barcodes go up to one less.
    #[arg(long, default_value_t = 2)]
    max_dim: usize,
    #[arg(long, value_enum, default_value = "upper-star")]
    direction: DirectionArg,
    /// Output file; stdout when absent.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct MethodArgs {
    /// Method id, see the list below.
    #[arg(long)]
    method: Option<String>,
    /// Method parameter as name=value; repeatable.
    #[arg(long = "param", value_name = "NAME=VALUE")]
    params: Vec<String>,
    /// Full method spec as JSON, e.g. '{"method":"betti_curve","resolution":50}'.
    #[arg(long, conflicts_with_all = ["method", "params"])]
    spec: Option<String>,
}

#[derive(Args)]
struct InputArgs {
    /// Barcode CSV files (`dim,birth,death`).
    #[arg(required = true)]
    files: Vec<PathBuf>,
    /// Homology dimensions to concatenate.
    #[arg(long, value_delimiter = ',', default_value = "0,1")]
    dims: Vec<usize>,
    /// Essential bars: clamp-to-max-death, drop, or clamp=VALUE.
    #[arg(long, default_value = "clamp-to-max-death")]
    policy: String,
}

#[derive(Args)]
struct VectorizeArgs {
    #[command(flatten)]
    method: MethodArgs,
    #[command(flatten)]
    input: InputArgs,
    /// Fitted pipeline JSON from `barvec fit`; required for ensemble methods.
    #[arg(long, conflicts_with_all = ["method", "spec", "params"])]
    model: Option<PathBuf>,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct FitArgs {
    #[command(flatten)]
    method: MethodArgs,
    #[command(flatten)]
    input: InputArgs,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct BenchArgs {
    /// Classes, one family each.
    #[arg(long, value_delimiter = ',', default_value = "circle,two_circles,clusters")]
    classes: Vec<Family>,
    #[arg(long, default_value_t = 100)]
    samples_per_class: usize,
    /// Points per sample, or image side for image families.
    #[arg(long, default_value_t = 50)]
    points: usize,
    #[arg(long, default_value_t = 0.05)]
    noise: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Method ids with default parameters, or `all`.
    #[arg(long, value_delimiter = ',', default_value = "persistence_statistics")]
    methods: Vec<String>,
    /// JSON array of method specs; overrides --methods.
    #[arg(long)]
    specs: Option<String>,
    #[arg(long, default_value_t = 0.7)]
    split: f64,
    /// Neighbours in the k-NN vote.
    #[arg(long, default_value_t = 5)]
    k: usize,
    #[arg(long, default_value_t = 2.0)]
    max_scale: f64,
    #[arg(long, value_delimiter = ',', default_value = "0,1")]
    dims: Vec<usize>,
    /// Record wall-clock times; the report then differs between runs.
    #[arg(long)]
    timings: bool,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(long)]
    family: Family,
    #[arg(long, default_value_t = 10)]
    samples: usize,
    /// Points per sample, or image side for image families.
    #[arg(long, default_value_t = 50)]
    points: usize,
    #[arg(long, default_value_t = 0.05)]
    noise: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out_dir: PathBuf,
}

fn emit(output: Option<&Path>, text: &str) -> Result<()> {
    match output {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn parse_policy(s: &str) -> Result<EssentialPolicy<f64>> {
    Ok(match s {
        "drop" => EssentialPolicy::Drop,
        "clamp-to-max-death" => EssentialPolicy::ClampToMaxDeath,
        _ => match s.strip_prefix("clamp=") {
            Some(v) => EssentialPolicy::Clamp(v.parse().context("clamp value")?),
            None => bail!("unknown policy `{s}`"),
        },
    })
}

fn build_spec(args: &MethodArgs) -> Result<VectorizerSpec> {
    let spec: VectorizerSpec = if let Some(json) = &args.spec {
        serde_json::from_str(json).context("parsing --spec")?
    } else {
        let id = args.method.as_deref().context("--method or --spec is required")?;
        MethodId::parse(id).with_context(|| format!("unknown method `{id}`"))?;
        let mut obj = serde_json::Map::new();
        obj.insert("method".into(), id.into());
        for p in &args.params {
            let (k, v) = p
                .split_once('=')
                .with_context(|| format!("parameter `{p}` is not NAME=VALUE"))?;
            let value = serde_json::from_str(v).unwrap_or_else(|_| serde_json::Value::String(v.into()));
            obj.insert(k.into(), value);
        }
        serde_json::from_value(obj.into()).context("method parameters")?
    };
    spec.validate()?;
    Ok(spec)
}

fn read_inputs(input: &InputArgs) -> Result<(Vec<String>, Vec<BarcodeSet64>)> {
    let names = input.files.iter().map(|p| p.display().to_string()).collect();
    let sets = input
        .files
        .iter()
        .map(|p| read_barcodes(p).with_context(|| format!("reading {}", p.display())))
        .collect::<Result<_>>()?;
    Ok((names, sets))
}

fn persistence(args: PersistenceArgs) -> Result<()> {
    let cfg = FiltrationConfig {
        max_scale: args.max_scale,
        max_simplex_dim: args.max_dim,
        direction: args.direction.into(),
    };
    let sample = if let Some(p) = &args.points {
        let pc = read_point_cloud::<f64>(p).with_context(|| format!("reading {}", p.display()))?;
        Sample::Points(pc.points().to_vec())
    } else {
        let p = args.image.as_ref().expect("clap enforces one input");
        let img = read_image::<f64>(p).with_context(|| format!("reading {}", p.display()))?;
        Sample::Image {
            width: img.width(),
            height: img.height(),
            pixels: img.intensities().to_vec(),
        }
    };
    emit(args.output.as_deref(), &format_barcodes(&sample_barcodes(&sample, &cfg)?))
}

fn vectorize(args: VectorizeArgs) -> Result<()> {
    let (names, sets) = read_inputs(&args.input)?;
    let model: Option<FittedPipeline<f64>> = match &args.model {
        Some(p) => Some(serde_json::from_str(&fs::read_to_string(p)?).context("parsing model")?),
        None => None,
    };
    let spec = match &model {
        Some(m) => m.spec().clone(),
        None => build_spec(&args.method)?,
    };
    let policy = parse_policy(&args.input.policy)?;
    let m = vectorize_batch(&names, &sets, &spec, policy, &args.input.dims, model.as_ref())?;
    emit(args.output.as_deref(), &m.to_csv())
}

fn fit(args: FitArgs) -> Result<()> {
    let (_, sets) = read_inputs(&args.input)?;
    let spec = build_spec(&args.method)?;
    let policy = parse_policy(&args.input.policy)?;
    let pipeline = FittedPipeline::fit(&spec, policy, &args.input.dims, &sets)?;
    emit(args.output.as_deref(), &(serde_json::to_string_pretty(&pipeline)? + "\n"))
}

fn bench(args: BenchArgs) -> Result<()> {
    let methods: Vec<VectorizerSpec> = match &args.specs {
        Some(json) => serde_json::from_str(json).context("parsing --specs")?,
        None if args.methods.iter().any(|m| m == "all") => {
            MethodId::ALL.iter().map(|m| m.default_spec()).collect()
        }
        None => args
            .methods
            .iter()
            .map(|m| {
                MethodId::parse(m)
                    .map(MethodId::default_spec)
                    .with_context(|| format!("unknown method `{m}`"))
            })
            .collect::<Result<_>>()?,
    };
    for m in &methods {
        m.validate()?;
    }
    let cfg = ExperimentConfig {
        classes: args.classes,
        samples_per_class: args.samples_per_class,
        points_per_sample: args.points,
        noise: args.noise,
        seed: args.seed,
        methods,
        split_ratio: args.split,
        k_nn: args.k,
        filtration: FiltrationConfig {
            max_scale: args.max_scale,
            ..FiltrationConfig::default()
        },
        dims: args.dims,
    };
    let report = run_experiment(&cfg, args.timings)?;
    for r in &report.results {
        log::info!("{}: accuracy {:.4}", r.method, r.accuracy);
    }
    emit(args.output.as_deref(), &(serde_json::to_string_pretty(&report)? + "\n"))
}

fn generate(args: GenerateArgs) -> Result<()> {
    let spec = SyntheticSpec {
        family: args.family,
        samples_per_class: args.samples,
        points_per_sample: args.points,
        noise: args.noise,
        seed: args.seed,
    };
    fs::create_dir_all(&args.out_dir)?;
    for (i, s) in generate_dataset(&spec, 0)?.iter().enumerate() {
        match s {
            Sample::Points(pts) => {
                let text: String = pts
                    .iter()
                    .map(|p| {
                        let row: Vec<String> = p.iter().map(f64::to_string).collect();
                        row.join(",") + "\n"
                    })
                    .collect();
                fs::write(args.out_dir.join(format!("sample_{i:04}.csv")), text)?;
            }
            Sample::Image {
                width,
                height,
                pixels,
            } => write_pgm(*width, *height, pixels, args.out_dir.join(format!("sample_{i:04}.pgm")))?,
        }
    }
    Ok(())
}

fn main() -> Result<()> {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match Cli::parse().command {
        Command::Persistence(a) => persistence(a),
        Command::Vectorize(a) => vectorize(a),
        Command::Fit(a) => fit(a),
        Command::Bench(a) => bench(a),
        Command::Generate(a) => generate(a),
    }
}
