//! Command-line front end. Exit codes: 0 success, 1 invalid instance,
//! 2 usage or parse error, 3 a theoretical bound was violated.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use pandora::benchmarks::{benchmark, DEFAULT_MAX_BOXES};
use pandora::gen;
use pandora::learning::{learn, sweep, sweep_csv, LearningConfig};
use pandora::report::{Envelope, RunManifest};
use pandora::tree::{lemma_check, WeightedTree};
use pandora::{product_instance, run_full, run_partial, Error, Instance};

const BOUND_SLACK: f64 = 1e-6;

#[derive(Parser)]
#[command(name = "pandora", version, about = "Weitzman's rule for Pandora's Box with correlated scenarios")]
struct Cli {
    /// Record wall-clock time in the manifest (makes output non-reproducible).
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Random,
    Mssc,
    Product,
    AdversarialCost,
}

#[derive(Clone, Copy, ValueEnum)]
enum Variant {
    Partial,
    Full,
}

#[derive(Subcommand)]
enum Command {
    /// Generate an instance file.
    Gen {
        #[arg(value_enum)]
        kind: Kind,
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long, default_value_t = 4)]
        m: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Product supports, e.g. "0:0.5,2:0.5;1:1.0".
        #[arg(long)]
        supports: Option<String>,
        /// Comma-separated box costs for product instances (default: all 1).
        #[arg(long, value_delimiter = ',')]
        costs: Option<Vec<f64>>,
        /// Cost scale for adversarial-cost instances.
        #[arg(long, default_value_t = 100.0)]
        h: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run Weitzman's rule on an instance.
    Solve {
        path: PathBuf,
        #[arg(long, value_enum, default_value = "partial")]
        variant: Variant,
    },
    /// Compare both variants against the best scenario-aware permutation.
    Bench {
        path: PathBuf,
        #[arg(long, default_value_t = DEFAULT_MAX_BOXES)]
        max_boxes: usize,
    },
    /// Learn a threshold policy from samples of the instance.
    Learn {
        path: PathBuf,
        #[arg(long, default_value_t = 500)]
        m: usize,
        #[arg(long, default_value_t = 0.25)]
        eps: f64,
        #[arg(long, default_value_t = 0.1)]
        delta: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1.0)]
        repeat_constant: f64,
        /// Sweep mode: emit the convergence CSV for these sample counts.
        #[arg(long, value_delimiter = ',')]
        m_list: Option<Vec<usize>>,
        /// Seeds per sample count in sweep mode (seed, seed+1, ...).
        #[arg(long, default_value_t = 20)]
        seeds: u64,
    },
    /// Check the weighted-tree percentile inequality on random trees or a fixture.
    CheckLemma {
        #[arg(long, default_value_t = 500)]
        trees: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_delimiter = ',', default_values_t = [0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9])]
        rho_grid: Vec<f64>,
        #[arg(long, default_value_t = 50)]
        max_nodes: usize,
        #[arg(long, default_value_t = 5)]
        max_weights: usize,
        /// Check a single tree from a JSON file instead of random trees.
        #[arg(long)]
        fixture: Option<PathBuf>,
    },
}

enum Failure {
    Invalid(String),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Invalid(_) => Failure::Invalid(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

fn seed_override(seed: u64) -> Result<u64, Failure> {
    match std::env::var("PANDORA_SEED") {
        Ok(s) => s.trim().parse().map_err(|_| Failure::Usage(format!("PANDORA_SEED={s:?} is not a u64"))),
        Err(_) => Ok(seed),
    }
}

fn load(path: &PathBuf) -> Result<Instance, Failure> {
    let inst = Instance::load(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    let violations = inst.validate();
    if !violations.is_empty() {
        let lines: Vec<String> = violations.iter().map(ToString::to_string).collect();
        return Err(Failure::Invalid(format!("{}:\n  {}", path.display(), lines.join("\n  "))));
    }
    Ok(inst)
}

/// Writes to stdout, treating a closed pipe as success.
fn write_stdout(text: &str) {
    let mut stdout = std::io::stdout().lock();
    let _ = stdout.write_all(text.as_bytes()).and_then(|()| stdout.flush());
}

fn emit<T: Serialize>(manifest: RunManifest, body: T) {
    write_stdout(&format!("{}\n", Envelope::new(manifest, body).to_json()));
}

fn run(cli: Cli) -> Result<ExitCode, Failure> {
    let started = Instant::now();
    let stamp = |mut m: RunManifest| {
        if cli.timing {
            m.wall_time_ms = Some(started.elapsed().as_millis());
        }
        m
    };

    match cli.command {
        Command::Gen { kind, n, m, seed, supports, costs, h, out } => {
            let seed = seed_override(seed)?;
            let inst = match kind {
                Kind::Random => gen::random_instance(n, m, seed)?,
                Kind::Mssc => gen::mssc_instance(n, m, seed)?,
                Kind::AdversarialCost => gen::adversarial_cost_instance(n, h, seed)?,
                Kind::Product => {
                    let text = supports.ok_or_else(|| Failure::Usage("product needs --supports".into()))?;
                    let sup = gen::parse_supports(&text)?;
                    let costs = costs.unwrap_or_else(|| vec![1.0; sup.len()]);
                    product_instance(costs, &sup)?
                }
            };
            let manifest = stamp(
                RunManifest::new("gen").seed(seed).output(out.as_ref().map(|p| p.display().to_string())),
            );
            let text = Envelope::new(manifest, &inst).to_json();
            match out {
                Some(p) => std::fs::write(&p, text + "\n").map_err(|e| Failure::Usage(e.to_string()))?,
                None => write_stdout(&format!("{text}\n")),
            }
        }
        Command::Solve { path, variant } => {
            let inst = load(&path)?;
            let manifest = RunManifest::new("solve").input(path.display().to_string());
            match variant {
                Variant::Partial => {
                    let run = run_partial(&inst)?;
                    emit(stamp(manifest), json!({ "variant": "partial", "cost": run.cost,
                        "trace": run.trace, "policy": run.policy }));
                }
                Variant::Full => {
                    let run = run_full(&inst)?;
                    emit(stamp(manifest), json!({ "variant": "full", "cost": run.cost,
                        "tree": run.tree.to_json() }));
                }
            }
        }
        Command::Bench { path, max_boxes } => {
            let inst = load(&path)?;
            let report = benchmark(&inst, max_boxes)?;
            let violated = report.violates_bounds(BOUND_SLACK);
            emit(stamp(RunManifest::new("bench").input(path.display().to_string())), &report);
            if violated {
                eprintln!("approximation bound exceeded");
                return Ok(ExitCode::from(3));
            }
        }
        Command::Learn { path, m, eps, delta, seed, repeat_constant, m_list, seeds } => {
            let seed = seed_override(seed)?;
            let inst = load(&path)?;
            let cfg = LearningConfig { sample_count: m, epsilon: eps, delta, repeat_constant, seed };
            cfg.check()?;
            let manifest = RunManifest::new("learn").input(path.display().to_string()).seed(seed);
            match m_list {
                Some(ms) => {
                    let seed_list: Vec<u64> = (0..seeds).map(|k| seed.wrapping_add(k)).collect();
                    let rows = sweep(&inst, &cfg, &ms, &seed_list)?;
                    let manifest = serde_json::to_string(&stamp(manifest)).expect("manifest serializes");
                    write_stdout(&format!("# {manifest}\n{}", sweep_csv(&rows)));
                }
                None => {
                    let report = learn(&inst, &cfg)?;
                    for w in &report.warnings {
                        eprintln!("warning: {w}");
                    }
                    emit(stamp(manifest), json!({ "config": cfg, "report": report }));
                }
            }
        }
        Command::CheckLemma { trees, seed, rho_grid, max_nodes, max_weights, fixture } => {
            let seed = seed_override(seed)?;
            if let Some(r) = rho_grid.iter().find(|r| !(**r > 0.0 && **r <= 1.0)) {
                return Err(Failure::Usage(format!("rho {r} outside (0, 1]")));
            }
            if max_nodes == 0 || max_weights == 0 {
                return Err(Failure::Usage("--max-nodes and --max-weights must be positive".into()));
            }
            let forest: Vec<WeightedTree> = match &fixture {
                Some(p) => {
                    let text = std::fs::read_to_string(p).map_err(|e| Failure::Usage(e.to_string()))?;
                    vec![WeightedTree::from_json(&text)?]
                }
                None => {
                    let mut rng = gen::rng(seed);
                    (0..trees).map(|_| WeightedTree::random(&mut rng, max_nodes, max_weights, 10.0)).collect()
                }
            };
            let mut checks = 0usize;
            let mut violations = Vec::new();
            for (i, t) in forest.iter().enumerate() {
                for &rho in &rho_grid {
                    let c = lemma_check(t, rho)?;
                    checks += 1;
                    if !c.holds {
                        violations.push(json!({ "tree_index": i, "check": c, "tree": t.to_spec() }));
                    }
                }
            }
            let mut manifest = RunManifest::new("check-lemma").seed(seed);
            if let Some(p) = &fixture {
                manifest = manifest.input(p.display().to_string());
            }
            let failed = !violations.is_empty();
            emit(stamp(manifest), json!({ "trees": forest.len(), "rho_grid": rho_grid, "checks": checks,
                "pass": !failed, "violations": violations }));
            if failed {
                return Ok(ExitCode::from(3));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(Failure::Invalid(msg)) => {
            eprintln!("invalid instance {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
