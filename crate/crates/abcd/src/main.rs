use std::path::PathBuf;
use std::process::ExitCode;

use abcd::config::load_params;
use abcd::format::{self, load_edges, load_partition, load_split, write_graph};
use abcd::harness::{load_spec, run};
use abcd::{Error, Result};
use abcd_core::clustering::{ecg, louvain, lucky_repartition, tree_dissect};
use abcd_core::pairing::rewire_to_simple;
use abcd_core::rng::{substream, ANALYSIS_STREAM};
use abcd_core::theory::{c_ab, predict, xi0, Prediction, Quantity, TheoryContext};
use abcd_core::{build_abcd, modularity, Partition};
use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "abcd", version, about = "ABCD benchmark graphs and modularity analysis")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a graph and its ground-truth communities.
    Generate {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out_edges: PathBuf,
        #[arg(long)]
        out_communities: PathBuf,
        /// Also write each node's community and background degree.
        #[arg(long)]
        out_split: Option<PathBuf>,
        /// Remove loops and parallel edges by degree-preserving switches.
        #[arg(long)]
        simple: bool,
        #[arg(long, default_value_t = 100)]
        max_sweeps: usize,
    },
    /// Print edge contribution, degree tax and modularity of a partition.
    Modularity {
        #[arg(long)]
        edges: PathBuf,
        #[arg(long)]
        partition: PathBuf,
    },
    /// Compute a partition and write it as a community file.
    Partition {
        #[arg(long, value_enum)]
        algo: Algo,
        #[arg(long)]
        edges: PathBuf,
        /// Ground truth; required by `lucky`, fixes the node count otherwise.
        #[arg(long)]
        communities: Option<PathBuf>,
        /// Weight split written by `generate --out-split`; required by `lucky`.
        #[arg(long)]
        split: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 16)]
        ecg_k: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Print theoretical constants as name<TAB>value lines.
    Theory {
        #[arg(long, value_enum)]
        name: TheoryName,
        #[arg(long)]
        config: Option<PathBuf>,
        /// Minimum degree for `xi0`.
        #[arg(long)]
        delta: Option<usize>,
        #[arg(long)]
        a: Option<usize>,
        #[arg(long)]
        b: Option<usize>,
    },
    /// Run an experiment spec and write its CSV.
    Experiment {
        #[arg(long)]
        spec: PathBuf,
        /// Overrides the spec's `output`; `-` writes to stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Algo {
    Louvain,
    Ecg,
    Tree,
    Lucky,
}

#[derive(Clone, Copy, ValueEnum)]
enum TheoryName {
    /// Mean degrees, community-count constant and predicted community count.
    Context,
    GroundTruth,
    Tree,
    Lucky,
    DegreeCcdf,
    CommunityCcdf,
    Xi0,
    Cab,
}

fn usage(msg: &str) -> Error {
    Error::Usage(msg.into())
}

fn print_prediction(name: &str, p: Prediction) {
    match p {
        Prediction::Value(v) => println!("{name}\t{v}"),
        Prediction::LowerBoundOnly => println!("{name}\tlower-bound-only"),
        Prediction::Curve(points) => {
            for (k, v) in points {
                println!("{k}\t{v}");
            }
        }
    }
}

fn execute(command: Command) -> Result<()> {
    match command {
        Command::Generate { config, seed, out_edges, out_communities, out_split, simple, max_sweeps } => {
            let p = load_params(&config)?;
            let mut a = build_abcd(&p, seed)?;
            if simple {
                let mut rng = substream(seed, ANALYSIS_STREAM);
                a.graph = rewire_to_simple(a.graph, &mut rng, max_sweeps).map_err(abcd_core::Error::from)?;
            }
            write_graph(&a.graph, &a.partition, &out_edges, &out_communities)?;
            if let Some(path) = out_split {
                format::save(&path, &a.split, format::write_split)?;
            }
        }
        Command::Modularity { edges, partition } => {
            let part = load_partition(&partition)?;
            let g = load_edges(&edges, Some(part.node_count()))?;
            let r = modularity(&g, &part)?;
            println!("{}\t{}\t{}", r.edge_contribution, r.degree_tax, r.q);
        }
        Command::Partition { algo, edges, communities, split, seed, ecg_k, out } => {
            let truth = communities.as_deref().map(load_partition).transpose()?;
            let g = load_edges(&edges, truth.as_ref().map(Partition::node_count))?;
            let mut rng = substream(seed, ANALYSIS_STREAM);
            let part = match algo {
                Algo::Louvain => louvain(&g, &mut rng)?.partition,
                Algo::Ecg => ecg(&g, ecg_k, &mut rng)?,
                Algo::Tree => {
                    let d = tree_dissect(&g, &mut rng)?;
                    eprintln!("q\t{}\nbound\t{}", d.report.q, d.bound);
                    d.partition
                }
                Algo::Lucky => {
                    let truth = truth.ok_or_else(|| usage("lucky needs --communities"))?;
                    let split = load_split(&split.ok_or_else(|| usage("lucky needs --split"))?)?;
                    lucky_repartition(&g, &truth, &split)?
                }
            };
            format::save(&out, &part, format::write_partition)?;
        }
        Command::Theory { name, config, delta, a, b } => {
            let params = || -> Result<_> {
                load_params(config.as_deref().ok_or_else(|| usage("this constant needs --config"))?)
            };
            match name {
                TheoryName::Context => {
                    let t = TheoryContext::new(&params()?)?;
                    println!("d\t{}\nd_hat\t{}\nc_hat\t{}\nell_pred\t{}", t.d, t.d_hat, t.c_hat, t.ell_pred);
                }
                TheoryName::GroundTruth => {
                    print_prediction("ground_truth_q", predict(&params()?, Quantity::GroundTruthModularity)?)
                }
                TheoryName::Tree => print_prediction("tree_q", predict(&params()?, Quantity::TreeDissection)?),
                TheoryName::Lucky => {
                    print_prediction("lucky_improvement", predict(&params()?, Quantity::LuckyImprovement)?)
                }
                TheoryName::DegreeCcdf => print_prediction("", predict(&params()?, Quantity::DegreeCcdf)?),
                TheoryName::CommunityCcdf => {
                    print_prediction("", predict(&params()?, Quantity::CommunityCcdf)?)
                }
                TheoryName::Xi0 => {
                    let delta = match delta {
                        Some(d) => d,
                        None => params()?.delta,
                    };
                    let x = xi0(delta)?;
                    println!("xi0\t{}\na\t{}\nb\t{}", x.value, x.a, x.b);
                }
                TheoryName::Cab => {
                    let (a, b) = a.zip(b).ok_or_else(|| usage("cab needs --a and --b"))?;
                    println!("c_ab\t{}", c_ab(a, b)?);
                }
            }
        }
        Command::Experiment { spec, out } => {
            let spec = load_spec(&spec)?;
            let table = run(&spec)?;
            match out.or(spec.output) {
                Some(p) if p.as_os_str() == "-" => table.write_csv(std::io::stdout().lock())?,
                Some(p) => table.save(&p)?,
                None => table.write_csv(std::io::stdout().lock())?,
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    match execute(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if matches!(e, Error::Usage(_)) { 2 } else { 1 })
        }
    }
}
