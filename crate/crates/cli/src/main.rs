//! Command-line front end: generate instances, run one algorithm against a
//! simulated noisy oracle, and sweep benchmark grids to CSV.
//!
//! Exit codes: 0 on success, 2 on usage errors (bad flags, incompatible
//! algorithm/model), 1 on anything else (I/O, malformed files).

use std::collections::BTreeSet;
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{anyhow, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use moldgraph::algorithms::{
    combined_fn_seeded, combined_fp_seeded, naive_fn, naive_fp, naive_two_sided, solve_planar_fp,
    solve_sparse_fn, verify_tree, VerifyParams,
};
use moldgraph::format::{parse_instance, ParsedInstance};
use moldgraph::graph::{EdgeId, Realization};
use moldgraph::instances::{Family, GridRealization, Instance, InstanceSpec, LadderMode};
use moldgraph::oracle::{derive_seed, ErrorModel, NoisyOracle, Variant};

/// Errors that should exit with the usage code (2).
#[derive(Debug)]
struct Usage(String);

impl fmt::Display for Usage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl std::error::Error for Usage {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    anyhow::Error::new(Usage(msg.into()))
}

pub const CSV_HEADER: &str = "family,n,m,algo,model,p,seed,queries,success,ms";

#[derive(Parser)]
#[command(
    name = "moldgraph",
    about = "Spanning trees under noisy edge-existence queries: instance generator, \
             algorithm runner, and benchmark harness",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate an instance file (graph, optional embedding, realized edges).
    Gen(GenArgs),
    /// Run one algorithm on an instance file and print a CSV row.
    Run(RunArgs),
    /// Sweep instance sizes and trials, writing per-run CSV rows plus
    /// trailing #summary lines.
    Bench(BenchArgs),
    /// Verify tree connectivity on an instance file and print a CSV row.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FamilyName {
    Grid,
    Ladder,
    Complete,
    Star,
    Tree,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RealizeName {
    /// Seeded random spanning tree.
    Random,
    /// Deterministic serpentine Hamiltonian path.
    Snake,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum LadderModeName {
    /// One realized edge per parallel pair.
    TwoSidedLb,
    /// Half the pairs single-realized, half fully realized.
    FpLb,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModelName {
    TwoSided,
    Fn,
    Fp,
}

impl ModelName {
    fn variant(self) -> Variant {
        match self {
            ModelName::TwoSided => Variant::TwoSided,
            ModelName::Fn => Variant::FalseNegative,
            ModelName::Fp => Variant::FalsePositive,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum AlgoName {
    Verify,
    NaiveTwoSided,
    NaiveFn,
    SparseFn,
    CombinedFn,
    NaiveFp,
    PlanarFp,
    CombinedFp,
}

impl AlgoName {
    fn name(self) -> &'static str {
        match self {
            AlgoName::Verify => "verify",
            AlgoName::NaiveTwoSided => "naive-two-sided",
            AlgoName::NaiveFn => "naive-fn",
            AlgoName::SparseFn => "sparse-fn",
            AlgoName::CombinedFn => "combined-fn",
            AlgoName::NaiveFp => "naive-fp",
            AlgoName::PlanarFp => "planar-fp",
            AlgoName::CombinedFp => "combined-fp",
        }
    }

    fn required_model(self) -> Variant {
        match self {
            AlgoName::Verify | AlgoName::NaiveTwoSided => Variant::TwoSided,
            AlgoName::NaiveFn | AlgoName::SparseFn | AlgoName::CombinedFn => Variant::FalseNegative,
            AlgoName::NaiveFp | AlgoName::PlanarFp | AlgoName::CombinedFp => Variant::FalsePositive,
        }
    }
}

#[derive(Args)]
struct GenArgs {
    /// Instance family.
    #[arg(long)]
    family: FamilyName,
    /// Grid rows (grid only).
    #[arg(long)]
    rows: Option<usize>,
    /// Grid columns (grid only).
    #[arg(long)]
    cols: Option<usize>,
    /// Grid realization mode (grid only).
    #[arg(long, value_enum, default_value = "random")]
    realize: RealizeName,
    /// Size: parallel pairs for ladder, vertices for complete/star/tree.
    #[arg(long)]
    n: Option<usize>,
    /// Ladder construction (ladder only).
    #[arg(long, value_enum, default_value = "two-sided-lb")]
    mode: LadderModeName,
    /// Drop one realized edge (tree only), leaving a broken tree.
    #[arg(long)]
    drop_one: bool,
    /// Generator seed.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output path; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct RunArgs {
    /// Instance file produced by `gen` (must contain a REALIZED section).
    graph_file: PathBuf,
    /// Algorithm to run.
    #[arg(long)]
    algo: AlgoName,
    /// Oracle error model; must match the algorithm.
    #[arg(long)]
    model: ModelName,
    /// Oracle error probability in [0, 1/2).
    #[arg(long, default_value_t = 0.25)]
    p: f64,
    /// Run seed; oracle streams derive from it.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Acceptable failure probability on connected trees (verify).
    #[arg(long, default_value_t = 0.1)]
    epsilon: f64,
    /// Acceptable failure probability on broken trees (verify).
    #[arg(long, default_value_t = 0.1)]
    delta: f64,
    /// Error rate the verification thresholds assume; independent of the
    /// simulated oracle's --p so a noiseless oracle can still be verified.
    #[arg(long, default_value_t = 0.25)]
    assumed_p: f64,
}

#[derive(Args)]
struct BenchArgs {
    /// Instance family to sweep.
    #[arg(long)]
    family: FamilyName,
    /// Comma-separated sizes: vertices for grid (perfect squares),
    /// complete, star, tree; parallel pairs for ladder.
    #[arg(long, value_delimiter = ',', required = true)]
    sizes: Vec<usize>,
    /// Trials per (size, algorithm) cell.
    #[arg(long, default_value_t = 100)]
    trials: u64,
    /// Comma-separated algorithms.
    #[arg(long, value_delimiter = ',', required = true)]
    algos: Vec<AlgoName>,
    /// Oracle error model for all runs.
    #[arg(long)]
    model: ModelName,
    /// Oracle error probability.
    #[arg(long, default_value_t = 0.25)]
    p: f64,
    /// Base seed; trial t uses seed base + t.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Ladder construction; defaults to fp-lb under the fp model.
    #[arg(long, value_enum)]
    ladder_mode: Option<LadderModeName>,
    /// Output CSV path; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Thresholds for verify runs.
    #[arg(long, default_value_t = 0.1)]
    epsilon: f64,
    #[arg(long, default_value_t = 0.1)]
    delta: f64,
    #[arg(long, default_value_t = 0.25)]
    assumed_p: f64,
}

#[derive(Args)]
struct VerifyArgs {
    /// Instance file whose graph is the tree to verify.
    graph_file: PathBuf,
    #[arg(long, default_value_t = 0.1)]
    epsilon: f64,
    #[arg(long, default_value_t = 0.1)]
    delta: f64,
    /// Error rate assumed by the thresholds.
    #[arg(long, default_value_t = 0.25)]
    assumed_p: f64,
    /// Simulated oracle error probability.
    #[arg(long, default_value_t = 0.25)]
    p: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

fn main() {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Gen(args) => cmd_gen(args),
        Command::Run(args) => cmd_run(args),
        Command::Bench(args) => cmd_bench(args),
        Command::Verify(args) => cmd_verify(args),
    };
    if let Err(e) = result {
        eprintln!("error: {e:#}");
        let code = if e.is::<Usage>() { 2 } else { 1 };
        std::process::exit(code);
    }
}

fn build_family(args: &GenArgs) -> Result<Family> {
    let need_n = |what: &str| {
        args.n
            .ok_or_else(|| usage(format!("--n is required for --family {what}")))
    };
    match args.family {
        FamilyName::Grid => {
            let rows = args
                .rows
                .ok_or_else(|| usage("--rows is required for --family grid"))?;
            let cols = args
                .cols
                .ok_or_else(|| usage("--cols is required for --family grid"))?;
            if rows == 0 || cols == 0 {
                return Err(usage("grid dimensions must be at least 1"));
            }
            let realize = match args.realize {
                RealizeName::Random => GridRealization::RandomSpanningTree,
                RealizeName::Snake => GridRealization::SnakePath,
            };
            Ok(Family::Grid {
                rows,
                cols,
                realize,
            })
        }
        FamilyName::Ladder => {
            let rungs = need_n("ladder")?;
            if rungs == 0 {
                return Err(usage("ladder needs --n >= 1"));
            }
            let mode = match args.mode {
                LadderModeName::TwoSidedLb => LadderMode::TwoSidedLb,
                LadderModeName::FpLb => LadderMode::FpLb,
            };
            Ok(Family::Ladder { rungs, mode })
        }
        FamilyName::Complete => Ok(Family::Complete {
            n: need_n("complete")?,
        }),
        FamilyName::Star => Ok(Family::Star { n: need_n("star")? }),
        FamilyName::Tree => Ok(Family::RandomTree {
            n: need_n("tree")?,
            drop_one: args.drop_one,
        }),
    }
}

fn cmd_gen(args: GenArgs) -> Result<()> {
    let family = build_family(&args)?;
    let inst = InstanceSpec {
        family,
        seed: args.seed,
    }
    .generate();
    let text = inst.to_text().context("serializing instance")?;
    match &args.out {
        Some(path) => {
            fs::write(path, text).with_context(|| format!("writing {}", path.display()))?
        }
        None => print!("{text}"),
    }
    Ok(())
}

/// One benchmark or run row; `ms` is the only nondeterministic column.
struct RunRecord {
    family: String,
    n: usize,
    m: usize,
    algo: &'static str,
    model: &'static str,
    p: f64,
    seed: u64,
    queries: u64,
    success: bool,
    ms: f64,
}

impl RunRecord {
    fn csv(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{:.3}",
            self.family,
            self.n,
            self.m,
            self.algo,
            self.model,
            self.p,
            self.seed,
            self.queries,
            self.success,
            self.ms
        )
    }
}

fn load_instance(path: &Path) -> Result<Instance> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let ParsedInstance {
        graph,
        embedding,
        realized,
    } = parse_instance(&text).with_context(|| format!("parsing {}", path.display()))?;
    let realized = realized.ok_or_else(|| anyhow!("{}: no REALIZED section", path.display()))?;
    Ok(Instance {
        graph,
        embedding,
        realized,
    })
}

struct VerifySettings {
    epsilon: f64,
    delta: f64,
    assumed_p: f64,
}

/// Runs one algorithm over one instance. `seed` feeds the oracle streams
/// via `derive_seed(seed, 0)` (and stream 1 for the second machine of the
/// combined algorithms). Success is always recomputed from the realized set,
/// never trusted from the algorithm.
fn execute(
    algo: AlgoName,
    model: ModelName,
    p: f64,
    seed: u64,
    inst: &Instance,
    verify: &VerifySettings,
) -> Result<(u64, bool)> {
    let (graph, embedding, realized) = (&inst.graph, inst.embedding.as_ref(), &inst.realized);
    if model.variant() != algo.required_model() {
        return Err(usage(format!(
            "algorithm {} requires the {} model",
            algo.name(),
            algo.required_model().name()
        )));
    }
    let err_model = ErrorModel::new(model.variant(), p)
        .map_err(|e| usage(format!("bad error probability: {e}")))?;
    let tree_success = |edges: &BTreeSet<EdgeId>| {
        graph.is_spanning_tree(edges) && edges.iter().all(|e| realized.contains(e))
    };

    match algo {
        AlgoName::Verify => {
            if graph.vertex_count() == 0
                || graph.edge_count() != graph.vertex_count() - 1
                || !graph.is_connected()
            {
                return Err(usage("verify requires the instance graph to be a tree"));
            }
            let params = VerifyParams::new(verify.epsilon, verify.delta, verify.assumed_p)
                .map_err(|e| usage(format!("bad verify parameters: {e}")))?;
            let real = Realization::new_unchecked(realized.clone());
            let mut oracle = NoisyOracle::new(err_model, graph, &real, derive_seed(seed, 0));
            let out = verify_tree(graph, &mut oracle, &params)?;
            let truly_connected = graph.edge_ids().all(|e| realized.contains(&e));
            Ok((out.queries_used, out.connected == truly_connected))
        }
        AlgoName::NaiveTwoSided => {
            let real = Realization::new(graph, realized.clone())?;
            let mut oracle = NoisyOracle::new(err_model, graph, &real, derive_seed(seed, 0));
            let out = naive_two_sided(graph, &mut oracle)?;
            Ok((out.queries_used, tree_success(&out.edges)))
        }
        AlgoName::NaiveFn | AlgoName::SparseFn => {
            let real = Realization::new(graph, realized.clone())?;
            let mut oracle = NoisyOracle::new(err_model, graph, &real, derive_seed(seed, 0));
            let out = if algo == AlgoName::NaiveFn {
                naive_fn(graph, &mut oracle)?
            } else {
                solve_sparse_fn(graph, &mut oracle)?
            };
            Ok((out.queries_used, tree_success(&out.edges)))
        }
        AlgoName::CombinedFn => {
            let real = Realization::new(graph, realized.clone())?;
            let out = combined_fn_seeded(graph, &real, p, seed)?;
            Ok((out.queries_total, tree_success(&out.edges)))
        }
        AlgoName::NaiveFp => {
            let real = Realization::new(graph, realized.clone())?;
            let mut oracle = NoisyOracle::new(err_model, graph, &real, derive_seed(seed, 0));
            let out = naive_fp(graph, &mut oracle)?;
            Ok((out.queries_used, tree_success(&out.edges)))
        }
        AlgoName::PlanarFp => {
            let emb = embedding
                .ok_or_else(|| usage("planar-fp needs an EMBEDDING section in the instance"))?;
            let real = Realization::new(graph, realized.clone())?;
            let mut oracle = NoisyOracle::new(err_model, graph, &real, derive_seed(seed, 0));
            let out = solve_planar_fp(graph, emb, &mut oracle)?;
            Ok((out.queries_used, tree_success(&out.edges)))
        }
        AlgoName::CombinedFp => {
            let real = Realization::new(graph, realized.clone())?;
            let out = combined_fp_seeded(graph, embedding, &real, p, seed)?;
            Ok((out.queries_total, tree_success(&out.edges)))
        }
    }
}

fn file_stem(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "instance".to_string())
}

fn cmd_run(args: RunArgs) -> Result<()> {
    let inst = load_instance(&args.graph_file)?;
    let settings = VerifySettings {
        epsilon: args.epsilon,
        delta: args.delta,
        assumed_p: args.assumed_p,
    };
    let started = Instant::now();
    let (queries, success) = execute(args.algo, args.model, args.p, args.seed, &inst, &settings)?;
    let record = RunRecord {
        family: file_stem(&args.graph_file),
        n: inst.graph.vertex_count(),
        m: inst.graph.edge_count(),
        algo: args.algo.name(),
        model: args.model.variant().name(),
        p: args.p,
        seed: args.seed,
        queries,
        success,
        ms: started.elapsed().as_secs_f64() * 1e3,
    };
    println!("{CSV_HEADER}");
    println!("{}", record.csv());
    Ok(())
}

fn cmd_verify(args: VerifyArgs) -> Result<()> {
    cmd_run(RunArgs {
        graph_file: args.graph_file,
        algo: AlgoName::Verify,
        model: ModelName::TwoSided,
        p: args.p,
        seed: args.seed,
        epsilon: args.epsilon,
        delta: args.delta,
        assumed_p: args.assumed_p,
    })
}

fn bench_family(
    name: FamilyName,
    size: usize,
    model: ModelName,
    ladder_mode: Option<LadderModeName>,
) -> Result<Family> {
    match name {
        FamilyName::Grid => {
            let side = (size as f64).sqrt().round() as usize;
            if side * side != size {
                return Err(usage(format!("grid size {size} is not a perfect square")));
            }
            Ok(Family::Grid {
                rows: side,
                cols: side,
                realize: GridRealization::RandomSpanningTree,
            })
        }
        FamilyName::Ladder => {
            let mode = match ladder_mode {
                Some(LadderModeName::TwoSidedLb) => LadderMode::TwoSidedLb,
                Some(LadderModeName::FpLb) => LadderMode::FpLb,
                None => {
                    if model == ModelName::Fp {
                        LadderMode::FpLb
                    } else {
                        LadderMode::TwoSidedLb
                    }
                }
            };
            Ok(Family::Ladder { rungs: size, mode })
        }
        FamilyName::Complete => Ok(Family::Complete { n: size }),
        FamilyName::Star => Ok(Family::Star { n: size }),
        FamilyName::Tree => Ok(Family::RandomTree {
            n: size,
            drop_one: false,
        }),
    }
}

fn cmd_bench(args: BenchArgs) -> Result<()> {
    if args.sizes.is_empty() || args.algos.is_empty() {
        return Err(usage("bench needs at least one size and one algorithm"));
    }
    let settings = VerifySettings {
        epsilon: args.epsilon,
        delta: args.delta,
        assumed_p: args.assumed_p,
    };
    let family_label = match args.family {
        FamilyName::Grid => "grid",
        FamilyName::Ladder => "ladder",
        FamilyName::Complete => "complete",
        FamilyName::Star => "star",
        FamilyName::Tree => "tree",
    };

    let mut out = String::new();
    out.push_str(CSV_HEADER);
    out.push('\n');
    let mut summaries = Vec::new();

    for &size in &args.sizes {
        let family = bench_family(args.family, size, args.model, args.ladder_mode)?;
        for &algo in &args.algos {
            // trial seeds are base + t; rows are emitted in trial order no
            // matter how the parallel execution interleaves
            let rows: Vec<Result<RunRecord>> = (0..args.trials)
                .into_par_iter()
                .map(|t| {
                    let trial_seed = args.seed + t;
                    let inst: Instance = InstanceSpec {
                        family,
                        seed: derive_seed(trial_seed, 0xA),
                    }
                    .generate();
                    let started = Instant::now();
                    let (queries, success) =
                        execute(algo, args.model, args.p, trial_seed, &inst, &settings)?;
                    Ok(RunRecord {
                        family: family_label.to_string(),
                        n: inst.graph.vertex_count(),
                        m: inst.graph.edge_count(),
                        algo: algo.name(),
                        model: args.model.variant().name(),
                        p: args.p,
                        seed: trial_seed,
                        queries,
                        success,
                        ms: started.elapsed().as_secs_f64() * 1e3,
                    })
                })
                .collect();

            let mut queries = Vec::with_capacity(rows.len());
            let mut successes = 0u64;
            let (mut n_vertices, mut m_edges) = (0usize, 0usize);
            for row in rows {
                let row = row?;
                queries.push(row.queries as f64);
                successes += u64::from(row.success);
                n_vertices = row.n;
                m_edges = row.m;
                out.push_str(&row.csv());
                out.push('\n');
            }
            let mean = queries.iter().sum::<f64>() / queries.len() as f64;
            let var = queries.iter().map(|q| (q - mean).powi(2)).sum::<f64>()
                / (queries.len().max(2) - 1) as f64;
            summaries.push(format!(
                "#summary,{},{},{},{},{},{},{},{:.3},{:.3},{:.4},{:.4}",
                family_label,
                n_vertices,
                m_edges,
                algo.name(),
                args.model.variant().name(),
                args.p,
                args.trials,
                mean,
                var.sqrt(),
                successes as f64 / args.trials as f64,
                mean / m_edges.max(1) as f64,
            ));
        }
    }

    out.push_str("#summary,family,n,m,algo,model,p,trials,mean_queries,stddev_queries,success_rate,queries_per_edge\n");
    for line in summaries {
        out.push_str(&line);
        out.push('\n');
    }
    match &args.out {
        Some(path) => {
            fs::write(path, out).with_context(|| format!("writing {}", path.display()))?
        }
        None => print!("{out}"),
    }
    Ok(())
}
