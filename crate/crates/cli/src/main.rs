use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use log::info;

use gpm_core::distributed::{distributed_match, simulation_colocation_cost, FragmentedGraph};
use gpm_core::io::{format_match_result, format_relation, parse_graph, serialize_graph};
use gpm_core::iso::{distinct_match_graphs, quality_report, subgraph_iso_all, Algorithm};
use gpm_core::optimize::{match_plus_with, min_q};
use gpm_core::strong::{match_strong_with, MatchOptions};
use gpm_core::{dual_sim, generate, graph_sim, GeneratorParams, LabeledDigraph, Pattern};

#[derive(Parser)]
#[command(name = "gpm", version, about = "Graph pattern matching by graph, dual and strong simulation")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct PatternArg {
    /// Pattern graph file
    #[arg(short = 'q', value_name = "FILE")]
    pattern: PathBuf,
}

#[derive(Args)]
struct Inputs {
    /// Pattern graph file
    #[arg(short = 'q', value_name = "FILE")]
    pattern: PathBuf,
    /// Data graph file
    #[arg(short = 'g', value_name = "FILE")]
    graph: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// Maximum graph simulation relation
    Sim(Inputs),
    /// Maximum dual simulation relation
    Dualsim(Inputs),
    /// Strong simulation: one block per perfect subgraph
    Match {
        #[command(flatten)]
        inputs: Inputs,
        /// Plain ball-by-ball evaluation
        #[arg(long, conflicts_with = "plus")]
        plain: bool,
        /// Minimization, filtering and pruning (default)
        #[arg(long)]
        plus: bool,
        /// Ball radius instead of the pattern diameter
        #[arg(long)]
        radius: Option<usize>,
        /// Worker threads, 0 = one per core
        #[arg(long, default_value_t = 0)]
        threads: usize,
    },
    /// Minimum equivalent pattern and the class of every original node
    Minq(PatternArg),
    /// All subgraph isomorphisms
    Iso(Inputs),
    /// Closeness against subgraph isomorphism, subgraph count and sizes
    Closeness {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long, default_value = "strong")]
        algo: Algorithm,
    },
    /// Like closeness, with reference ranges; isomorphism can be skipped
    Report {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long, default_value = "strong")]
        algo: Algorithm,
        /// Do not run the isomorphism oracle (no closeness line)
        #[arg(long)]
        skip_iso: bool,
    },
    /// Random graph with n nodes and round(n^alpha) edges
    Gen {
        #[arg(short = 'n')]
        nodes: usize,
        #[arg(long, default_value_t = 1.2)]
        alpha: f64,
        /// Number of distinct labels
        #[arg(short = 'l', default_value_t = 10)]
        labels: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output file instead of stdout
        #[arg(short = 'o', value_name = "FILE")]
        output: Option<PathBuf>,
    },
    /// Split a data graph into per-site fragment files and a manifest
    Partition {
        #[arg(short = 'g', value_name = "FILE")]
        graph: PathBuf,
        #[arg(short = 'k')]
        sites: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short = 'o', value_name = "DIR")]
        output: PathBuf,
    },
    /// Strong simulation over k simulated sites, with traffic
    Distmatch {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(short = 'k')]
        sites: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Also report what plain graph simulation would have to ship
        #[arg(long)]
        contrast: bool,
    },
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Input {
        path: PathBuf,
        source: gpm_core::Error,
    },
    #[error(transparent)]
    Core(#[from] gpm_core::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(gpm_core::Error::Invariant(_)) => 2,
            _ => 1,
        }
    }
}

fn read_graph(path: &Path) -> Result<LabeledDigraph, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_graph(&text).map_err(|source| CliError::Input {
        path: path.to_path_buf(),
        source,
    })
}

fn read_pattern(path: &Path) -> Result<Pattern, CliError> {
    Pattern::new(read_graph(path)?).map_err(|source| CliError::Input {
        path: path.to_path_buf(),
        source,
    })
}

fn load(inputs: &Inputs) -> Result<(Pattern, LabeledDigraph), CliError> {
    Ok((read_pattern(&inputs.pattern)?, read_graph(&inputs.graph)?))
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

const REFERENCE_RANGES: &str = "# reference closeness on real-life graphs: strong 0.70-0.80, sim 0.25-0.38\n";

fn run(command: Command) -> Result<String, CliError> {
    let mut out = String::new();
    match command {
        Command::Sim(inputs) => {
            let (q, g) = load(&inputs)?;
            out = format_relation(&graph_sim(&q, &g));
        }
        Command::Dualsim(inputs) => {
            let (q, g) = load(&inputs)?;
            out = format_relation(&dual_sim(&q, &g));
        }
        Command::Match {
            inputs,
            plain,
            plus: _,
            radius,
            threads,
        } => {
            let (q, g) = load(&inputs)?;
            let opts = MatchOptions { radius, threads };
            let result = if plain {
                match_strong_with(&q, &g, &opts)
            } else {
                let outcome = match_plus_with(&q, &g, &opts);
                info!(
                    "match+: {} balls built, {} skipped, {} needed filtering",
                    outcome.stats.balls_built, outcome.stats.balls_skipped, outcome.stats.balls_filtered
                );
                outcome.lifted()
            };
            out = format_match_result(&g, &result);
        }
        Command::Minq(arg) => {
            let q = read_pattern(&arg.pattern)?;
            let m = min_q(&q);
            out = serialize_graph(m.pattern.graph());
            for (u, c) in m.class_of.iter().enumerate() {
                writeln!(out, "c {u} {c}").unwrap();
            }
        }
        Command::Iso(inputs) => {
            let (q, g) = load(&inputs)?;
            let matches = subgraph_iso_all(&q, &g);
            for m in &matches {
                out.push_str("iso");
                for v in &m.mapping {
                    write!(out, " {v}").unwrap();
                }
                out.push('\n');
            }
            writeln!(out, "graphs {}", distinct_match_graphs(&matches).len()).unwrap();
        }
        Command::Closeness { inputs, algo } => {
            let (q, g) = load(&inputs)?;
            out = quality_report(&q, &g, algo, true)?.to_string();
        }
        Command::Report {
            inputs,
            algo,
            skip_iso,
        } => {
            let (q, g) = load(&inputs)?;
            out = quality_report(&q, &g, algo, !skip_iso)?.to_string();
            out.push_str(REFERENCE_RANGES);
        }
        Command::Gen {
            nodes,
            alpha,
            labels,
            seed,
            output,
        } => {
            let params = GeneratorParams::new(nodes, alpha, labels, seed);
            params.validate()?;
            let g = generate(&params)?;
            match output {
                Some(path) => write_file(&path, &serialize_graph(&g))?,
                None => out = serialize_graph(&g),
            }
        }
        Command::Partition {
            graph,
            sites,
            seed,
            output,
        } => {
            if sites < 1 {
                return Err(gpm_core::Error::Parameter("-k must be at least 1".into()).into());
            }
            let g = read_graph(&graph)?;
            let f = FragmentedGraph::partition(&g, sites, seed)?;
            fs::create_dir_all(&output).map_err(|source| CliError::Io {
                path: output.clone(),
                source,
            })?;
            let mut manifest = String::new();
            for v in g.nodes() {
                writeln!(manifest, "owner {v} {}", f.owner(v)).unwrap();
            }
            for frag in f.fragments() {
                let name = output.join(format!("fragment_{}.graph", frag.site));
                write_file(&name, &serialize_graph(&frag.to_digraph()))?;
                for c in frag.cross.iter().filter(|c| c.foreign == c.dst) {
                    writeln!(manifest, "x {} {} {}", c.src, c.dst, c.foreign_label).unwrap();
                }
            }
            write_file(&output.join("manifest.txt"), &manifest)?;
        }
        Command::Distmatch {
            inputs,
            sites,
            seed,
            contrast,
        } => {
            if sites < 1 {
                return Err(gpm_core::Error::Parameter("-k must be at least 1".into()).into());
            }
            let (q, g) = load(&inputs)?;
            let f = FragmentedGraph::partition(&g, sites, seed)?;
            let (result, ledger) = distributed_match(&q, &f);
            out = format_match_result(&g, &result);
            out.push_str(&ledger.to_string());
            if contrast {
                let cost = simulation_colocation_cost(&q, &f);
                let total = ledger.total();
                writeln!(out, "# strong shipped {} nodes {} edges", total.nodes, total.edges).unwrap();
                writeln!(out, "# sim colocation needs {} nodes {} edges", cost.nodes, cost.edges).unwrap();
            }
        }
    }
    Ok(out)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("GPM_LOG", "off")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    match run(cli.command) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(out.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(1);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("gpm: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
