//! `kopt`: batch front end for the k-opt move engine.
//!
//! Exit codes: 0 an improving move was found (or the command succeeded),
//! 1 no improving move (or a check reported violations), 2 error,
//! 3 the input violates an engine precondition.

mod graphs;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use kopt_core::hardness::{gen_subiso_instance, gen_triangle_instance, HardnessError};
use kopt_core::random::random_cubic;
use kopt_core::solvers::{
    best_move_dp, best_move_meet, brute_force_best_move, detect_k8_with_stats,
    detect_quasilinear_with_stats, local_search, DecompositionKind, Engine, LocalSearchOptions,
    Strategy, DEFAULT_BUDGET,
};
use kopt_core::verify::{
    check_lemma_interactions, check_lemma_relax1, check_lemma_relax2, MAX_CHECK_K, MIN_CHECK_K,
};
use kopt_core::{Move, SolveError, TourInstance, Weight};

#[derive(Parser)]
#[command(
    name = "kopt",
    version,
    about = "Find improving k-opt moves on bounded-degree graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the best improving move of exactly `k` edges, or NONE.
    Solve {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum)]
        alg: Alg,
        /// Weight bound for the 8-move engine.
        #[arg(long = "W")]
        weight_bound: Option<Weight>,
        /// Number of sequential components (meet engine); default: best over all.
        #[arg(long)]
        c: Option<usize>,
        /// Workers for the pattern-based engines.
        #[arg(long, default_value_t = 1)]
        threads: usize,
    },
    /// Apply improving moves until none of size at most `kmax` is left.
    LocalSearch {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        kmax: usize,
        #[arg(long, value_enum, default_value_t = StrategyArg::First)]
        strategy: StrategyArg,
        #[arg(long, value_enum, default_value_t = EngineArg::Auto)]
        engine: EngineArg,
        /// Weight bound enabling the 8-move engine.
        #[arg(long = "W")]
        weight_bound: Option<Weight>,
        /// Where to write the improved instance.
        #[arg(long)]
        out: PathBuf,
        /// Workers for the pattern-based engines.
        #[arg(long, default_value_t = 1)]
        threads: usize,
    },
    /// Run an exhaustive pattern check and print its report.
    Verify {
        #[arg(long, value_enum)]
        lemma: Check,
        /// Swap size; default: every supported size.
        #[arg(long)]
        k: Option<usize>,
    },
    /// Generate a reduction instance from a graph file.
    Gen {
        #[arg(value_enum)]
        kind: GenKind,
        #[arg(long)]
        graph: PathBuf,
        /// Instance file to write.
        #[arg(long)]
        out: PathBuf,
        /// JSON manifest to write; default: the instance path with `.json`.
        #[arg(long)]
        manifest: Option<PathBuf>,
    },
    /// Time an engine on seeded unit-weight cubic instances.
    Bench {
        #[arg(long, value_enum)]
        alg: BenchAlg,
        #[arg(long, default_value_t = 7)]
        k: usize,
        #[arg(long, value_delimiter = ',', default_value = "10000,20000,40000")]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Runs per size; the median is reported.
        #[arg(long, default_value_t = 3)]
        repeats: usize,
        /// Workers for the pattern-based engines.
        #[arg(long, default_value_t = 1)]
        threads: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Alg {
    Oracle,
    Meet,
    Dp,
    Quasi,
    K8,
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyArg {
    First,
    Best,
}

#[derive(Clone, Copy, ValueEnum)]
enum EngineArg {
    Auto,
    Oracle,
    Meet,
    Dp,
}

#[derive(Clone, Copy, ValueEnum)]
enum Check {
    /// Two 2-swaps never interact twice.
    Interactions,
    /// Exchanging the single link of two 2-swaps stays feasible or reducible.
    Relax1,
    /// The 2+3+3 exchange check on 8-swaps.
    Relax2,
}

#[derive(Clone, Copy, ValueEnum)]
enum GenKind {
    Triangle,
    Subiso,
}

#[derive(Clone, Copy, ValueEnum)]
enum BenchAlg {
    Quasi,
    K8,
}

/// Outcome mapped onto the process exit code.
enum Status {
    Found,
    Nothing,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(Status::Found) => ExitCode::SUCCESS,
        Ok(Status::Nothing) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            let precondition = e
                .downcast_ref::<SolveError>()
                .is_some_and(|s| matches!(s, SolveError::PreconditionViolation { .. }));
            ExitCode::from(if precondition { 3 } else { 2 })
        }
    }
}

fn run(command: Command) -> Result<Status> {
    match command {
        Command::Solve {
            instance,
            k,
            alg,
            weight_bound,
            c,
            threads,
        } => solve(&load(&instance)?, k, alg, weight_bound, c, threads),
        Command::LocalSearch {
            instance,
            kmax,
            strategy,
            engine,
            weight_bound,
            out,
            threads,
        } => {
            let mut opts = LocalSearchOptions::new(kmax);
            opts.strategy = match strategy {
                StrategyArg::First => Strategy::First,
                StrategyArg::Best => Strategy::Best,
            };
            opts.engine = match engine {
                EngineArg::Auto => Engine::Auto,
                EngineArg::Oracle => Engine::Oracle,
                EngineArg::Meet => Engine::Meet,
                EngineArg::Dp => Engine::Dp,
            };
            opts.weight_bound = weight_bound;
            opts.threads = threads;
            let result = local_search(&load(&instance)?, &opts)?;
            fs::write(&out, result.instance.to_text())
                .with_context(|| format!("writing {}", out.display()))?;
            for m in &result.trace {
                println!("{}", m.to_json_line());
            }
            println!(
                "{}",
                serde_json::json!({
                    "initial_weight": result.initial_weight,
                    "final_weight": result.final_weight,
                    "moves": result.trace.len(),
                })
            );
            Ok(Status::Found)
        }
        Command::Verify { lemma, k } => verify(lemma, k),
        Command::Gen {
            kind,
            graph,
            out,
            manifest,
        } => generate(
            kind,
            &graph,
            &out,
            manifest.unwrap_or_else(|| out.with_extension("json")),
        ),
        Command::Bench {
            alg,
            k,
            sizes,
            seed,
            repeats,
            threads,
        } => bench(alg, k, &sizes, seed, repeats, threads),
    }
}

fn load(path: &Path) -> Result<TourInstance> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    TourInstance::parse(&text).with_context(|| format!("parsing {}", path.display()))
}

fn solve(
    inst: &TourInstance,
    k: usize,
    alg: Alg,
    weight_bound: Option<Weight>,
    c: Option<usize>,
    threads: usize,
) -> Result<Status> {
    let found: Option<Move> = match alg {
        Alg::Oracle => brute_force_best_move(inst, k, DEFAULT_BUDGET)?,
        Alg::Meet => best_move_meet(inst, k, c, threads)?,
        Alg::Dp => best_move_dp(inst, k, DecompositionKind::Path, threads)?.0,
        Alg::Quasi => detect_quasilinear_with_stats(inst, k, threads)?.0,
        Alg::K8 => {
            let Some(bound) = weight_bound else {
                bail!("--alg k8 needs a weight bound (--W)");
            };
            if k != 8 {
                bail!("--alg k8 searches 8-moves; got --k {k}");
            }
            detect_k8_with_stats(inst, bound, threads)?.0
        }
    };
    Ok(match found {
        Some(m) => {
            println!("{}", m.to_json_line());
            Status::Found
        }
        None => {
            println!("NONE");
            Status::Nothing
        }
    })
}

fn verify(check: Check, k: Option<usize>) -> Result<Status> {
    let reports = match check {
        Check::Relax2 => {
            if k.is_some_and(|k| k != 8) {
                bail!("the relax2 check is defined for k = 8 only");
            }
            vec![check_lemma_relax2()?]
        }
        Check::Interactions | Check::Relax1 => {
            let ks: Vec<usize> = match k {
                Some(k) => vec![k],
                None => (MIN_CHECK_K..=MAX_CHECK_K).collect(),
            };
            let run = |k| match check {
                Check::Interactions => check_lemma_interactions(k),
                _ => check_lemma_relax1(k),
            };
            ks.into_iter().map(run).collect::<Result<Vec<_>, _>>()?
        }
    };
    let mut passed = true;
    for r in &reports {
        println!("{}", r.to_json());
        passed &= r.passed();
    }
    Ok(if passed {
        Status::Found
    } else {
        Status::Nothing
    })
}

fn generate(kind: GenKind, graph: &Path, out: &Path, manifest: PathBuf) -> Result<Status> {
    let text = fs::read_to_string(graph).with_context(|| format!("reading {}", graph.display()))?;
    let (instance, json) = match kind {
        GenKind::Triangle => {
            let (g, mode) = graphs::parse_tripartite(&text)?;
            let r = gen_triangle_instance(&g, &mode)?;
            (r.instance.clone(), r.manifest_json())
        }
        GenKind::Subiso => {
            let mut ph = graphs::parse_patterned_host(&text)?;
            if let Err(
                HardnessError::EdgeOutsidePattern(..) | HardnessError::MissingClassNeighbour { .. },
            ) = ph.validate()
            {
                let (pruned, kept) = ph.pruned();
                eprintln!("pruned host: kept vertices {kept:?}");
                ph = pruned;
            }
            let r = gen_subiso_instance(&ph)?;
            (r.instance.clone(), r.manifest_json())
        }
    };
    fs::write(out, instance.to_text()).with_context(|| format!("writing {}", out.display()))?;
    fs::write(&manifest, json + "\n").with_context(|| format!("writing {}", manifest.display()))?;
    Ok(Status::Found)
}

fn bench(
    alg: BenchAlg,
    k: usize,
    sizes: &[usize],
    seed: u64,
    repeats: usize,
    threads: usize,
) -> Result<Status> {
    if repeats == 0 {
        bail!("--repeats must be positive");
    }
    if threads == 0 {
        bail!("--threads must be positive");
    }
    let mut medians = Vec::with_capacity(sizes.len());
    for (i, &n) in sizes.iter().enumerate() {
        if n < 6 || n % 2 == 1 {
            bail!("cubic instances need an even size of at least 6, got {n}");
        }
        let inst = random_cubic(seed + i as u64, n, 1, 1);
        let search = || match alg {
            BenchAlg::Quasi => detect_quasilinear_with_stats(&inst, k, threads).map(|(m, _)| m),
            BenchAlg::K8 => detect_k8_with_stats(&inst, 1, threads).map(|(m, _)| m),
        };
        // Untimed first run: builds the pattern catalogue once.
        search()?;
        let mut times = Vec::with_capacity(repeats);
        for _ in 0..repeats {
            let t = Instant::now();
            search()?;
            times.push(t.elapsed().as_secs_f64());
        }
        times.sort_by(f64::total_cmp);
        let median = times[repeats / 2];
        println!("{}", serde_json::json!({ "n": n, "seconds": median }));
        medians.push(median);
    }
    let ratios: Vec<f64> = medians.windows(2).map(|w| w[1] / w[0]).collect();
    println!("{}", serde_json::json!({ "ratios": ratios }));
    Ok(Status::Found)
}
