//! Command line surface: every subcommand writes a machine-readable report
//! (CSV for tables, JSON for nested distributions) plus a one-line summary
//! on stdout. Report bodies are deterministic for a fixed (command, seed);
//! timestamps and runtimes go to a sidecar log only.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use clap::{Parser, Subcommand};
use hsp_core::characters::CharacterTable;
use hsp_core::combinatorics::enumerate_matchings;
use hsp_core::error::Error;
use hsp_core::measurement::{tv_experiment, TupleSelection, TvExperimentConfig};
use hsp_core::oracle::compare_with_analytic;
use hsp_core::spectral::{plancherel, weak_sampling_distribution};
use hsp_core::yor::MeasurementFrame;
use hsp_core::Partition;

const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Parser)]
#[command(name = "hsp", version, about = "Fourier sampling experiments over the symmetric group")]
struct Cli {
    /// Directory for report files.
    #[arg(long, default_value = "reports", global = true)]
    out: PathBuf,
    /// Worker threads for subcommands that fan out over independent jobs.
    #[arg(long, default_value_t = 1, global = true)]
    threads: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Full character table of S_n as CSV.
    Chartable { n: u32 },
    /// Plancherel distribution over irrep names, optionally with samples.
    Plancherel {
        n: u32,
        #[arg(long)]
        sample: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Kronecker decomposition of a tensor product of two irreps.
    Kron { lambda: String, mu: String },
    /// Exact conjugacy-class reciprocal sums for n = 1..nmax.
    RecipSum { nmax: u32 },
    /// Weak-sampling irrep distribution for a hidden involution (or the
    /// trivial subgroup when --matching is omitted).
    WeakDist {
        n: u32,
        #[arg(long)]
        matching: Option<usize>,
    },
    /// Total-variation scan of observation distributions against the
    /// natural distribution.
    TvScan {
        n: u32,
        k: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Plancherel-sampled tuples to scan.
        #[arg(long, default_value_t = 20)]
        tuples: usize,
        /// Force enumeration of the full matching class even above the
        /// default cap.
        #[arg(long)]
        exhaustive_m: bool,
        /// JSON frame file applied on every tuple (default: standard
        /// basis).
        #[arg(long)]
        frame: Option<PathBuf>,
    },
    /// Compare the dense group-algebra simulation against the analytic
    /// pipeline.
    OracleCheck { n: u32, k: usize },
    /// Character-ratio table against the Roichman-style bound.
    Roichman {
        n: u32,
        #[arg(long, default_value_t = 0.1)]
        b: f64,
        #[arg(long, default_value_t = 0.9)]
        q: f64,
    },
    /// Reduce a graph-isomorphism instance (file with two edge lists) to a
    /// hidden involution.
    GraphReduce { file: PathBuf },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = Instant::now();
    match run(&cli) {
        Ok(summary) => {
            println!("{summary}");
            log_run(&cli, started, "ok");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            log_run(&cli, started, "error");
            match e {
                Error::CapExceeded(_) | Error::OracleScaleExceeded => ExitCode::from(3),
                _ => ExitCode::from(2),
            }
        }
    }
}

/// Timestamps live here, never in report bodies.
fn log_run(cli: &Cli, started: Instant, status: &str) {
    let _ = fs::create_dir_all(&cli.out);
    let unix = SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0);
    let line = format!(
        "{unix} {} {status} {}ms\n",
        std::env::args().skip(1).collect::<Vec<_>>().join(" "),
        started.elapsed().as_millis()
    );
    if let Ok(mut existing) = fs::read_to_string(cli.out.join("run.log")) {
        existing.push_str(&line);
        let _ = fs::write(cli.out.join("run.log"), existing);
    } else {
        let _ = fs::write(cli.out.join("run.log"), line);
    }
}

fn run(cli: &Cli) -> Result<String, Error> {
    fs::create_dir_all(&cli.out)?;
    match &cli.command {
        Command::Chartable { n } => chartable(cli, *n),
        Command::Plancherel { n, sample, seed } => cmd_plancherel(cli, *n, *sample, *seed),
        Command::Kron { lambda, mu } => kron(cli, lambda, mu),
        Command::RecipSum { nmax } => recip_sum(cli, *nmax),
        Command::WeakDist { n, matching } => weak_dist(cli, *n, *matching),
        Command::TvScan { n, k, seed, tuples, exhaustive_m, frame } => {
            tv_scan(cli, *n, *k, *seed, *tuples, *exhaustive_m, frame.as_deref())
        }
        Command::OracleCheck { n, k } => oracle_check(cli, *n, *k),
        Command::Roichman { n, b, q } => roichman(cli, *n, *b, *q),
        Command::GraphReduce { file } => graph_reduce(cli, file),
    }
}

fn meta_csv(command: &str, seed: u64, n: u32, k: usize) -> String {
    format!("# version={VERSION}\n# command={command}\n# seed={seed}\n# n={n}\n# k={k}\n")
}

fn meta_json(command: &str, seed: u64, n: u32, k: usize) -> serde_json::Value {
    serde_json::json!({
        "version": VERSION,
        "command": command,
        "seed": seed,
        "n": n,
        "k": k,
    })
}

fn write_report(path: &Path, body: &str) -> Result<(), Error> {
    fs::write(path, body)?;
    Ok(())
}

fn write_json(path: &Path, value: &serde_json::Value) -> Result<(), Error> {
    let mut body = serde_json::to_string_pretty(value)?;
    body.push('\n');
    fs::write(path, body)?;
    Ok(())
}

fn chartable(cli: &Cli, n: u32) -> Result<String, Error> {
    if n == 0 || n > 12 {
        return Err(Error::InvalidParameter(format!(
            "chartable supports 1 <= n <= 12, got {n}"
        )));
    }
    let cached = std::env::var_os("HSP_CACHE_DIR").map(PathBuf::from).map(|dir| {
        (dir.clone(), dir.join(format!("chartable_{n}.csv")))
    });
    let csv = match &cached {
        Some((_, file)) if file.is_file() => fs::read_to_string(file)?,
        _ => {
            let table = CharacterTable::new(n);
            let csv = table.to_csv()?;
            if let Some((dir, file)) = &cached {
                fs::create_dir_all(dir)?;
                fs::write(file, &csv)?;
            }
            csv
        }
    };
    let path = cli.out.join(format!("chartable_{n}.csv"));
    write_report(&path, &format!("{}{csv}", meta_csv("chartable", 0, n, 0)))?;
    let classes = csv.lines().count().saturating_sub(1);
    Ok(format!("wrote {} ({classes} irreps)", path.display()))
}

fn cmd_plancherel(cli: &Cli, n: u32, sample: Option<usize>, seed: u64) -> Result<String, Error> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be positive".into()));
    }
    let dist = plancherel(n);
    let mut value = serde_json::json!({
        "meta": meta_json("plancherel", seed, n, 0),
        "distribution": dist.to_json(None),
    });
    if let Some(count) = sample {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let samples: Vec<String> = if n <= hsp_core::spectral::EXACT_ENUMERATION_CAP {
            (0..count).map(|_| dist.sample(&mut rng).to_string()).collect()
        } else {
            (0..count)
                .map(|_| hsp_core::spectral::rsk_shape(n, &mut rng).to_string())
                .collect()
        };
        value["samples"] = serde_json::json!(samples);
    }
    let path = cli.out.join(format!("plancherel_{n}.json"));
    write_json(&path, &value)?;
    Ok(format!("wrote {} ({} irreps)", path.display(), dist.weights.len()))
}

fn kron(cli: &Cli, lambda: &str, mu: &str) -> Result<String, Error> {
    let lam_p = Partition::parse(lambda)?;
    let mu_p = Partition::parse(mu)?;
    let decomp =
        hsp_core::tensor::kronecker_decomposition(&[(lam_p.clone(), false), (mu_p, false)])?;
    let value = serde_json::json!({
        "meta": meta_json("kron", 0, lam_p.n(), 0),
        "decomposition": decomp.to_json(),
    });
    let name = format!(
        "kron_{}_{}.json",
        lambda.replace(',', "-"),
        mu.replace(',', "-")
    );
    let path = cli.out.join(name);
    write_json(&path, &value)?;
    Ok(format!(
        "wrote {} ({} components)",
        path.display(),
        decomp.multiplicities.len()
    ))
}

fn recip_sum(cli: &Cli, nmax: u32) -> Result<String, Error> {
    if nmax == 0 || nmax > 200 {
        return Err(Error::InvalidParameter(format!(
            "recip-sum supports 1 <= nmax <= 200, got {nmax}"
        )));
    }
    let csv = hsp_core::tensor::reciprocal_sum_csv(nmax);
    let path = cli.out.join(format!("recip_sum_{nmax}.csv"));
    write_report(&path, &format!("{}{csv}", meta_csv("recip-sum", 0, nmax, 0)))?;
    let last = csv.lines().last().unwrap_or("").to_string();
    Ok(format!("wrote {} (last row: {last})", path.display()))
}

fn weak_dist(cli: &Cli, n: u32, matching: Option<usize>) -> Result<String, Error> {
    let dist = match matching {
        None => weak_sampling_distribution(n, None)?,
        Some(i) => {
            let matchings = enumerate_matchings(n as usize)?;
            let m = matchings.get(i).ok_or_else(|| {
                Error::InvalidParameter(format!(
                    "matching index {i} out of range ({} matchings for n = {n})",
                    matchings.len()
                ))
            })?;
            weak_sampling_distribution(n, Some(m))?
        }
    };
    let value = serde_json::json!({
        "meta": meta_json("weak-dist", 0, n, 0),
        "matching_index": matching,
        "distribution": dist.to_json(None),
    });
    let suffix = matching.map_or("trivial".to_string(), |i| format!("m{i}"));
    let path = cli.out.join(format!("weak_dist_{n}_{suffix}.json"));
    write_json(&path, &value)?;
    Ok(format!("wrote {}", path.display()))
}

fn tv_scan(
    cli: &Cli,
    n: u32,
    k: usize,
    seed: u64,
    tuples: usize,
    exhaustive_m: bool,
    frame: Option<&Path>,
) -> Result<String, Error> {
    if k == 0 || k > 4 {
        return Err(Error::InvalidParameter(format!("k must be in 1..=4, got {k}")));
    }
    let mut config =
        TvExperimentConfig::new(n, k, TupleSelection::PlancherelSample(tuples), seed);
    if exhaustive_m {
        config.exhaustive_matching_cap = n;
    }
    if let Some(file) = frame {
        let text = fs::read_to_string(file)?;
        config.frame = Some(MeasurementFrame::from_json(&text, 1e-8)?);
    }
    let table = tv_experiment(&config)?;
    let mut body = meta_csv("tv-scan", seed, n, k);
    body.push_str(&format!(
        "# exhaustive_matchings={}\n",
        table.exhaustive_matchings
    ));
    body.push_str("tuple,matching_index,rank,tv\n");
    for row in &table.rows {
        body.push_str(&format!(
            "\"{}\",{},{},{}\n",
            join_tuple(&row.tuple),
            row.matching_index,
            row.rank,
            row.tv
        ));
    }
    body.push_str("# summary: tuple,median_tv,max_tv,averaged_tv,plancherel_weight\n");
    for s in &table.summaries {
        body.push_str(&format!(
            "\"{}\",{},{},{},{}\n",
            join_tuple(&s.tuple),
            s.median_tv,
            s.max_tv,
            s.averaged_tv,
            s.plancherel_weight
        ));
    }
    body.push_str(&format!(
        "# aggregate_median_tv={}\n# overall_median_tv={}\n",
        table.aggregate_median_tv, table.overall_median_tv
    ));
    let path = cli.out.join(format!("tv_scan_n{n}_k{k}_seed{seed}.csv"));
    write_report(&path, &body)?;
    Ok(format!(
        "wrote {} (overall median TV {:.6})",
        path.display(),
        table.overall_median_tv
    ))
}

fn join_tuple(tuple: &[Partition]) -> String {
    tuple
        .iter()
        .map(|p| p.to_string())
        .collect::<Vec<_>>()
        .join(" | ")
}

/// Compares the dense simulation against weak sampling x observation, over
/// the trivial subgroup and (for even n) every hidden involution.
fn oracle_check(cli: &Cli, n: u32, k: usize) -> Result<String, Error> {
    if k == 0 || k > 2 {
        return Err(Error::InvalidParameter(format!("k must be 1 or 2, got {k}")));
    }
    let mut max_delta = 0.0f64;
    let mut comparisons = 0usize;

    // trivial subgroup: Plancherel x natural
    let trivial = compare_with_analytic(n, k, None)?;
    max_delta = max_delta.max(trivial.max_abs_delta);
    comparisons += trivial.comparisons;

    // hidden involutions (even n only; the matching class is empty
    // otherwise)
    let matchings = if n % 2 == 0 {
        enumerate_matchings(n as usize)?
    } else {
        Vec::new()
    };
    let results = parallel_map(cli.threads.max(1), &matchings, |m| {
        compare_with_analytic(n, k, Some(m))
    })?;
    for r in results {
        max_delta = max_delta.max(r.max_abs_delta);
        comparisons += r.comparisons;
    }

    let pass = max_delta <= 1e-9;
    let value = serde_json::json!({
        "meta": meta_json("oracle-check", 0, n, k),
        "comparisons": comparisons,
        "matchings": matchings.len(),
        "max_abs_delta": max_delta,
        "pass": pass,
    });
    let path = cli.out.join(format!("oracle_check_n{n}_k{k}.json"));
    write_json(&path, &value)?;
    if pass {
        Ok(format!(
            "PASS max|delta| <= 1e-9 (observed {max_delta:.3e} over {comparisons} joint probabilities)"
        ))
    } else {
        Err(Error::InvalidParameter(format!(
            "FAIL oracle mismatch: max|delta| = {max_delta:.3e}"
        )))
    }
}

fn roichman(cli: &Cli, n: u32, b: f64, q: f64) -> Result<String, Error> {
    let report = hsp_core::characters::roichman_ratio_report(n, q, b)?;
    let mut body = meta_csv("roichman", 0, n, 0);
    body.push_str(&format!(
        "# q={q}\n# b={b}\n# below_theorem_range={}\n",
        report.below_theorem_range
    ));
    body.push_str("lambda,class,ratio,bound,holds\n");
    let mut holds = 0usize;
    for row in &report.rows {
        if row.holds {
            holds += 1;
        }
        body.push_str(&format!(
            "\"{}\",\"{}\",{},{},{}\n",
            row.lambda, row.class, row.ratio, row.bound, row.holds
        ));
    }
    let path = cli.out.join(format!("roichman_{n}.csv"));
    write_report(&path, &body)?;
    Ok(format!(
        "wrote {} ({holds}/{} rows satisfy the bound at these constants)",
        path.display(),
        report.rows.len()
    ))
}

fn graph_reduce(cli: &Cli, file: &Path) -> Result<String, Error> {
    let text = fs::read_to_string(file)?;
    let (g1, g2) = hsp_core::combinatorics::parse_graph_pair(&text)?;
    let involution = hsp_core::combinatorics::involution_from_graph_pair(&g1, &g2)?;
    let value = serde_json::json!({
        "meta": meta_json("graph-reduce", 0, (g1.n + g2.n) as u32, 0),
        "vertices_per_graph": g1.n,
        "isomorphic": involution.is_some(),
        "involution_pairs": involution
            .as_ref()
            .map(|m| m.pairs().iter().map(|&(a, b)| vec![a, b]).collect::<Vec<_>>()),
    });
    let stem = file
        .file_stem()
        .and_then(|s| s.to_str())
        .unwrap_or("instance");
    let path = cli.out.join(format!("graph_reduce_{stem}.json"));
    write_json(&path, &value)?;
    Ok(match involution {
        Some(_) => format!("isomorphic; wrote {}", path.display()),
        None => format!("not isomorphic; wrote {}", path.display()),
    })
}

/// Index-keyed fan-out over independent jobs; the assembled output order is
/// the input order regardless of thread count.
fn parallel_map<T: Sync, R: Send>(
    threads: usize,
    items: &[T],
    f: impl Fn(&T) -> Result<R, Error> + Sync,
) -> Result<Vec<R>, Error> {
    if threads <= 1 || items.len() <= 1 {
        return items.iter().map(&f).collect();
    }
    let workers = threads.min(items.len());
    let mut slots: Vec<Option<Result<R, Error>>> = Vec::new();
    slots.resize_with(items.len(), || None);
    std::thread::scope(|scope| {
        for (w, chunk) in slots.chunks_mut(items.len().div_ceil(workers)).enumerate() {
            let f = &f;
            let base = w * items.len().div_ceil(workers);
            scope.spawn(move || {
                for (off, slot) in chunk.iter_mut().enumerate() {
                    *slot = Some(f(&items[base + off]));
                }
            });
        }
    });
    slots.into_iter().map(|s| s.expect("worker filled slot")).collect()
}
