use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rolemetric::output::{
    cross_csv, cross_json, embedding_csv, embedding_json, labels_csv, matrix_csv, matrix_json, to_json,
};
use rolemetric::pipeline::{compare, metric_distances};
use rolemetric::{
    canonical_labeling, classical_mds, cross_network_distances, parse_classes, parse_edge_list, parse_pajek,
    parse_pajek_partition, threads_from_env, with_threads, AutodistError, Embedding, Error, Graph, MdsError, Metric,
    NodeClassMap, RoleSimParams,
};

const EXIT_INPUT: u8 = 1;
const EXIT_CONFIG: u8 = 2;
const EXIT_INTERNAL: u8 = 3;

#[derive(Parser)]
#[command(name = "rolemetric", version, about = "Role-based node distances for undirected graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum InputFormat {
    Edgelist,
    Pajek,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutFormat {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum MetricArg {
    Automorphic,
    Rolesim,
}

impl From<MetricArg> for Metric {
    fn from(m: MetricArg) -> Self {
        match m {
            MetricArg::Automorphic => Metric::Automorphic,
            MetricArg::Rolesim => Metric::RoleSim,
        }
    }
}

#[derive(clap::Args)]
struct Common {
    /// Input graph file.
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_enum, default_value = "edgelist")]
    format: InputFormat,
    /// Output file; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long = "out-format", value_enum, default_value = "csv")]
    out_format: OutFormat,
}

#[derive(clap::Args)]
struct RoleSimArgs {
    /// RoleSim convergence tolerance.
    #[arg(long, default_value_t = 1e-4)]
    tol: f64,
    /// RoleSim iteration cap.
    #[arg(long = "max-iter", default_value_t = 100)]
    max_iter: usize,
}

impl RoleSimArgs {
    fn params(&self) -> Result<RoleSimParams, Failure> {
        if !(self.tol.is_finite() && self.tol > 0.0) {
            return Err(Failure::config(format!("--tol must be positive, got {}", self.tol)));
        }
        if self.max_iter == 0 {
            return Err(Failure::config("--max-iter must be at least 1"));
        }
        Ok(RoleSimParams {
            tol: self.tol,
            max_iter: self.max_iter,
        })
    }
}

#[derive(Subcommand)]
enum Command {
    /// Stable refinement label of every node.
    Canonize {
        #[command(flatten)]
        common: Common,
    },
    /// Pairwise node distances.
    Distances {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value = "automorphic")]
        metric: MetricArg,
        #[command(flatten)]
        rolesim: RoleSimArgs,
    },
    /// Classical MDS coordinates.
    Embed {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value = "automorphic")]
        metric: MetricArg,
        #[arg(long, default_value_t = 2)]
        dims: usize,
        /// Optional node classes (CSV `id,class` or Pajek `.clu`).
        #[arg(long)]
        classes: Option<PathBuf>,
        #[command(flatten)]
        rolesim: RoleSimArgs,
    },
    /// Automorphic distances between the nodes of two graphs.
    Cross {
        #[command(flatten)]
        common: Common,
        /// Second input graph, read in the same format.
        #[arg(long)]
        input2: PathBuf,
    },
    /// Both metrics side by side, scored against node classes.
    Compare {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        classes: PathBuf,
        #[command(flatten)]
        rolesim: RoleSimArgs,
    },
}

#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_INPUT,
            message: message.into(),
        }
    }

    fn config(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_CONFIG,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::Graph(_) => EXIT_INPUT,
            Error::Threads(_) => EXIT_CONFIG,
            Error::Mds(MdsError::TooManyDimensions { .. } | MdsError::ZeroDimensions) => EXIT_CONFIG,
            Error::Autodist(AutodistError::Overflow) => EXIT_INPUT,
            _ => EXIT_INTERNAL,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

fn read_text(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn read_graph(path: &Path, format: InputFormat) -> Result<Graph, Failure> {
    let text = read_text(path)?;
    let parsed = match format {
        InputFormat::Edgelist => parse_edge_list(&text),
        InputFormat::Pajek => parse_pajek(&text),
    };
    parsed.map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn read_classes(path: &Path, g: &Graph) -> Result<NodeClassMap, Failure> {
    let text = read_text(path)?;
    let is_clu = path.extension().is_some_and(|e| e.eq_ignore_ascii_case("clu"));
    let parsed = if is_clu {
        parse_pajek_partition(&text, g)
    } else {
        parse_classes(&text, g)
    };
    parsed.map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| Failure::input(format!("{}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|()| stdout.flush())
                .map_err(|e| Failure::input(format!("stdout: {e}")))
        }
    }
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Canonize { common } => {
            let g = read_graph(&common.input, common.format)?;
            let (labeling, _) = canonical_labeling(&g).map_err(Error::from)?;
            let text = match common.out_format {
                OutFormat::Csv => labels_csv(&g, &labeling),
                OutFormat::Json => {
                    let labels: Vec<u32> = (0..g.node_count()).map(|v| labeling.label(v).0).collect();
                    to_json(&serde_json::json!({ "ids": g.node_ids(), "labels": labels }))
                }
            };
            emit(common.out.as_deref(), &text)
        }
        Command::Distances { common, metric, rolesim } => {
            let params = rolesim.params()?;
            let g = read_graph(&common.input, common.format)?;
            let metric = Metric::from(metric);
            let text = if metric == Metric::Automorphic {
                // Integer output for the integer-valued metric.
                let d = rolemetric::automorphic_distances(&g).map_err(Error::from)?;
                match common.out_format {
                    OutFormat::Csv => matrix_csv(&d),
                    OutFormat::Json => matrix_json(&d),
                }
            } else {
                let run = metric_distances(&g, metric, params)?;
                match common.out_format {
                    OutFormat::Csv => matrix_csv(&run.distances),
                    OutFormat::Json => matrix_json(&run.distances),
                }
            };
            emit(common.out.as_deref(), &text)
        }
        Command::Embed {
            common,
            metric,
            dims,
            classes,
            rolesim,
        } => {
            let params = rolesim.params()?;
            if dims == 0 {
                return Err(Failure::config("--dims must be at least 1"));
            }
            let g = read_graph(&common.input, common.format)?;
            let classes = classes.map(|p| read_classes(&p, &g)).transpose()?;
            if dims > g.node_count() && !g.is_empty() {
                return Err(Failure::config(format!(
                    "--dims {dims} exceeds the node count {}",
                    g.node_count()
                )));
            }
            let embedding = if g.is_empty() {
                Embedding {
                    node_ids: Vec::new(),
                    coords: Vec::new(),
                    eigenvalues: vec![0.0; dims],
                    stress: 0.0,
                }
            } else {
                let run = metric_distances(&g, metric.into(), params)?;
                classical_mds(&run.distances, dims).map_err(Error::from)?
            };
            let text = match common.out_format {
                OutFormat::Csv => embedding_csv(&embedding, classes.as_ref()),
                OutFormat::Json => embedding_json(&embedding, classes.as_ref()),
            };
            emit(common.out.as_deref(), &text)
        }
        Command::Cross { common, input2 } => {
            let g1 = read_graph(&common.input, common.format)?;
            let g2 = read_graph(&input2, common.format)?;
            let d = cross_network_distances(&g1, &g2).map_err(Error::from)?;
            let text = match common.out_format {
                OutFormat::Csv => cross_csv(&d),
                OutFormat::Json => cross_json(&d),
            };
            emit(common.out.as_deref(), &text)
        }
        Command::Compare {
            common,
            classes,
            rolesim,
        } => {
            let params = rolesim.params()?;
            let g = read_graph(&common.input, common.format)?;
            let classes = read_classes(&classes, &g)?;
            let report = compare(&g, &classes, params)?;
            let text = match common.out_format {
                OutFormat::Json => to_json(&report),
                OutFormat::Csv => compare_csv(&report),
            };
            emit(common.out.as_deref(), &text)
        }
    }
}

fn compare_csv(report: &rolemetric::evaluate::CompareReport) -> String {
    use rolemetric::output::format_g;
    let opt = |x: Option<f64>| x.map(format_g).unwrap_or_default();
    let mut out = String::from("metric,class_a,class_b,separable,perceptron_epochs,inter_intra_ratio,inter_intra_ratio_metric\n");
    for m in &report.metrics {
        for p in &m.class_pairs {
            out.push_str(&format!(
                "{},{},{},{},{},{},{}\n",
                m.metric,
                p.classes[0],
                p.classes[1],
                p.separable,
                p.perceptron_epochs,
                opt(p.inter_intra_ratio),
                opt(p.inter_intra_ratio_metric)
            ));
        }
    }
    out
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_CONFIG)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let result = threads_from_env()
        .map_err(Failure::from)
        .and_then(|threads| with_threads(threads, || run(cli.command)));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("rolemetric: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
