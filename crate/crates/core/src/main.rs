use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};

use blocklomuto::bench::{
    default_block_sizes, fastest_block_size, run_bench, summarize, sweep_block_size, sweep_pivot,
    write_records, write_summary, BenchPlan, Contender, SummaryRow,
};
use blocklomuto::check::verify_sorted;
use blocklomuto::cost::{best_t, format_table, table1, Measure, Scheme};
use blocklomuto::workload::PRNG_NAME;
use blocklomuto::{generate, sort, Algorithm, Distribution, DistributionKind, PivotStrategy, SortConfig};

#[derive(Parser)]
#[command(name = "blocklomuto", version, about = "Block-Lomuto quicksort: benchmarks, cost model, inputs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Time algorithms on generated inputs and write per-trial CSV records.
    Bench(BenchArgs),
    /// Mean time of L1 and L2 for block sizes 2..2^14.
    SweepBlock(SweepArgs),
    /// Mean time (and counters) of every catalog pivot strategy.
    SweepPivot(SweepArgs),
    /// Print the table of best sample vectors per scheme, size and measure.
    Analyze {
        /// Also write the table as CSV.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Search the best sample vector for one scheme, measure and sample size.
    BestT {
        /// H1, L1, L2 or SS<l>.
        #[arg(long)]
        scheme: String,
        /// cmp, ma or cmp+ma.
        #[arg(long)]
        measure: String,
        /// Sample elements beyond the pivots.
        #[arg(long)]
        sample: usize,
    },
    /// Write a generated input.
    Gen {
        #[arg(long)]
        dist: String,
        #[arg(long, value_parser = parse_size)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Generator stream.
        #[arg(long, default_value_t = 0)]
        trial: u64,
        #[arg(long, value_enum, default_value_t = Format::Txt)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sort inputs with each algorithm and check the results.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    /// Little-endian 64-bit words.
    Bin,
    /// One decimal number per line.
    Txt,
}

#[derive(Args, Clone)]
struct SortArgs {
    /// Comma-separated algorithms: classic, L1, L2, std.
    #[arg(long, default_value = "classic,L1,L2,std")]
    algo: String,
    /// Pivot strategy name, e.g. "2 (1,3 of 5)"; default is size-adaptive.
    #[arg(long)]
    strategy: Option<String>,
    #[arg(long, default_value_t = 1024)]
    block_size: usize,
    #[arg(long)]
    cutoff: Option<usize>,
}

#[derive(Args)]
struct BenchArgs {
    #[command(flatten)]
    sort: SortArgs,
    /// Comma-separated distributions.
    #[arg(long, default_value = "Permutation,Sawtooth,RandomDup,Sorted,Reversed,Equal,EightDup")]
    dist: String,
    /// Comma-separated sizes; `2^k` is accepted.
    #[arg(long, default_value = "2^21,2^22,2^23,2^24,2^25,2^26,2^27")]
    n: String,
    #[arg(long, default_value_t = 600)]
    trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Record instrumented counters for every trial.
    #[arg(long)]
    counters: bool,
    /// Record CSV path; records go to stdout otherwise.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long, default_value = "Permutation")]
    dist: String,
    #[arg(long, value_parser = parse_size, default_value = "2^20")]
    n: usize,
    #[arg(long, default_value_t = 10)]
    trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Block size (pivot sweep only).
    #[arg(long, default_value_t = 1024)]
    block_size: usize,
    /// Record counters (pivot sweep only).
    #[arg(long)]
    counters: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    sort: SortArgs,
    #[arg(long, default_value = "Permutation,Sawtooth,RandomDup,Sorted,Reversed,Equal,EightDup")]
    dist: String,
    #[arg(long, default_value = "0,1,2,3,10,1000,100000")]
    n: String,
    /// Trials per seeded distribution.
    #[arg(long, default_value_t = 5)]
    trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Verify a key file instead of generated inputs.
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Txt)]
    format: Format,
}

fn parse_size(s: &str) -> Result<usize, String> {
    let s = s.trim();
    let parsed = match s.split_once('^') {
        Some((base, exp)) => {
            let base: usize = base.trim().parse().map_err(|e| format!("{s}: {e}"))?;
            let exp: u32 = exp.trim().parse().map_err(|e| format!("{s}: {e}"))?;
            base.checked_pow(exp).ok_or_else(|| format!("{s} overflows"))?
        }
        None => s.parse().map_err(|e| format!("{s}: {e}"))?,
    };
    Ok(parsed)
}

fn parse_list<T>(s: &str, f: impl Fn(&str) -> anyhow::Result<T>) -> anyhow::Result<Vec<T>> {
    s.split(',').filter(|x| !x.trim().is_empty()).map(|x| f(x.trim())).collect()
}

fn sizes(s: &str) -> anyhow::Result<Vec<usize>> {
    parse_list(s, |x| parse_size(x).map_err(anyhow::Error::msg))
}

fn distributions(s: &str) -> anyhow::Result<Vec<DistributionKind>> {
    parse_list(s, |x| Ok(x.parse()?))
}

fn contenders(args: &SortArgs) -> anyhow::Result<Vec<Contender>> {
    let strategy: Option<PivotStrategy> = args
        .strategy
        .as_deref()
        .map(str::parse)
        .transpose()
        .context("bad --strategy")?;
    parse_list(&args.algo, |name| {
        let algorithm: Algorithm = name.parse()?;
        let mut builder = SortConfig::builder().block_size(args.block_size);
        if let (Some(s), true) = (&strategy, algorithm.pivots().is_some()) {
            builder = builder.strategy(s.clone());
        }
        if let Some(c) = args.cutoff {
            builder = builder.insertion_cutoff(c);
        }
        let config = builder.build()?;
        config.check_pivots(algorithm)?;
        Ok(Contender::new(algorithm, config))
    })
}

fn output(path: &Option<PathBuf>) -> anyhow::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("creating {}", p.display()))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn metadata(pairs: &[(&str, String)]) -> Vec<(String, String)> {
    let mut m = vec![("prng".to_string(), PRNG_NAME.to_string())];
    m.extend(pairs.iter().map(|(k, v)| (k.to_string(), v.clone())));
    m
}

fn print_summary(rows: &[SummaryRow]) {
    eprintln!(
        "{:<8} {:<14} {:>6} {:<12} {:>10} {:>12} {:>10}",
        "algo", "strategy", "B", "dist", "n", "mean_ns", "ns/nlnn"
    );
    for r in rows {
        eprintln!(
            "{:<8} {:<14} {:>6} {:<12} {:>10} {:>12.0} {:>10.4}",
            r.algorithm, r.strategy, r.block_size, r.distribution, r.n, r.mean_ns, r.mean_ns_per_n_ln_n
        );
    }
}

fn bench(args: BenchArgs) -> anyhow::Result<()> {
    let plan = BenchPlan {
        contenders: contenders(&args.sort)?,
        distributions: distributions(&args.dist)?,
        sizes: sizes(&args.n)?,
        trials: args.trials,
        seed: args.seed,
        counters: args.counters,
    };
    let records = run_bench(&plan)?;
    let meta = metadata(&[
        ("seed", args.seed.to_string()),
        ("trials", args.trials.to_string()),
        ("block_size", args.sort.block_size.to_string()),
        (
            "cutoff",
            args.sort.cutoff.map_or("default".to_string(), |c| c.to_string()),
        ),
    ]);
    write_records(output(&args.out)?, &records, &meta)?;
    print_summary(&summarize(&records));
    Ok(())
}

fn sweep(args: SweepArgs, blocks: bool) -> anyhow::Result<()> {
    let dist: DistributionKind = args.dist.parse()?;
    let rows = if blocks {
        sweep_block_size(&default_block_sizes(), args.n, dist, args.trials, args.seed)?
    } else {
        sweep_pivot(args.n, dist, args.trials, args.seed, args.counters, args.block_size)?
    };
    let meta = metadata(&[("seed", args.seed.to_string()), ("trials", args.trials.to_string())]);
    write_summary(output(&args.out)?, &rows, &meta)?;
    print_summary(&rows);
    if blocks {
        for alg in ["L1", "L2"] {
            if let Some(b) = fastest_block_size(&rows, alg) {
                eprintln!("fastest block size for {alg}: {b}");
            }
        }
    }
    Ok(())
}

fn analyze(out: Option<PathBuf>) -> anyhow::Result<()> {
    let rows = table1();
    print!("{}", format_table(&rows));
    if let Some(path) = out {
        let mut w = csv::Writer::from_path(&path).with_context(|| format!("creating {}", path.display()))?;
        w.write_record(["scheme", "additional", "measure", "constant", "t"])?;
        for r in &rows {
            w.write_record([
                r.scheme.to_string(),
                r.additional.to_string(),
                r.measure.to_string(),
                format!("{:.2}", r.constant.round2()),
                r.best_t.to_string(),
            ])?;
        }
        w.flush()?;
    }
    Ok(())
}

fn best(scheme: &str, measure: &str, sample: usize) -> anyhow::Result<()> {
    let scheme: Scheme = scheme.parse()?;
    let measure: Measure = measure.parse()?;
    let row = best_t(scheme, measure, sample)?;
    println!(
        "{} AS={} {}: {:.4} n ln n, t = {}",
        row.scheme,
        row.additional,
        row.measure,
        row.constant.to_f64(),
        row.best_t
    );
    Ok(())
}

fn write_keys(mut w: impl Write, keys: &[u64], format: Format) -> io::Result<()> {
    match format {
        Format::Bin => {
            for k in keys {
                w.write_all(&k.to_le_bytes())?;
            }
        }
        Format::Txt => {
            for k in keys {
                writeln!(w, "{k}")?;
            }
        }
    }
    w.flush()
}

fn read_keys(path: &PathBuf, format: Format) -> anyhow::Result<Vec<u64>> {
    let file = File::open(path).with_context(|| format!("opening {}", path.display()))?;
    match format {
        Format::Bin => {
            let mut bytes = Vec::new();
            BufReader::new(file).read_to_end(&mut bytes)?;
            if bytes.len() % 8 != 0 {
                bail!("{}: length is not a multiple of 8 bytes", path.display());
            }
            Ok(bytes
                .chunks_exact(8)
                .map(|c| u64::from_le_bytes(c.try_into().expect("8-byte chunk")))
                .collect())
        }
        Format::Txt => BufReader::new(file)
            .lines()
            .filter(|l| l.as_ref().map_or(true, |l| !l.trim().is_empty()))
            .map(|l| Ok(l?.trim().parse::<u64>()?))
            .collect(),
    }
}

/// Returns the number of failed checks.
fn verify(args: VerifyArgs) -> anyhow::Result<usize> {
    let contenders = contenders(&args.sort)?;
    let mut inputs: Vec<(String, Vec<u64>)> = Vec::new();
    if let Some(path) = &args.input {
        inputs.push((path.display().to_string(), read_keys(path, args.format)?));
    } else {
        for kind in distributions(&args.dist)? {
            for n in sizes(&args.n)? {
                let trials = if kind.is_seeded() { args.trials.max(1) } else { 1 };
                for trial in 0..trials {
                    let d = Distribution::new(kind, n, args.seed).with_stream(trial);
                    inputs.push((format!("{kind} n={n} trial={trial}"), generate(&d)));
                }
            }
        }
    }
    let mut failures = 0;
    for (label, input) in &inputs {
        for c in &contenders {
            let mut v = input.clone();
            sort(c.algorithm, &mut v, &c.config)?;
            if !verify_sorted(input, &v) {
                failures += 1;
                println!("FAIL {} on {label}", c.label);
            }
        }
    }
    println!(
        "{} checks, {} failed",
        inputs.len() * contenders.len(),
        failures
    );
    Ok(failures)
}

fn run() -> anyhow::Result<ExitCode> {
    match Cli::parse().command {
        Command::Bench(a) => bench(a)?,
        Command::SweepBlock(a) => sweep(a, true)?,
        Command::SweepPivot(a) => sweep(a, false)?,
        Command::Analyze { out } => analyze(out)?,
        Command::BestT {
            scheme,
            measure,
            sample,
        } => best(&scheme, &measure, sample)?,
        Command::Gen {
            dist,
            n,
            seed,
            trial,
            format,
            out,
        } => {
            let d = Distribution::new(dist.parse()?, n, seed).with_stream(trial);
            write_keys(output(&out)?, &generate(&d), format)?;
        }
        Command::Verify(a) => {
            if verify(a)? > 0 {
                return Ok(ExitCode::FAILURE);
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
