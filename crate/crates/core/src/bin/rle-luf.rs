use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use rle_luf::corpus::{self, ExpDist};
use rle_luf::io::{self, Algo, Format, RunReport};
use rle_luf::oracles::{self, OracleBudget};
use rle_luf::{longest_unbordered_factors_with, stats, LufError, LufOptions, LufResult, RleString};
use std::fs;
use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

const EXIT_MISMATCH: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_BUDGET: u8 = 3;

#[derive(Parser)]
#[command(name = "rle-luf", version, about = "Longest unbordered factors of run-length encoded strings")]
struct Cli {
    /// Worker threads for the stage loop.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
    /// Disable fractional cascading in the stabbing-query structures.
    #[arg(long, global = true)]
    no_cascade: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Compute the longest unbordered factors and print a JSON report.
    Compute(InputArgs),
    /// Same as `compute` but with the brute-force oracle on the decoded text.
    Oracle {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Compare the fast path with the oracle over a corpus.
    Verify {
        /// `exhaustive-binary-N`, `exhaustive-ternary-N`, `random-COUNT`, or a directory of .rle files.
        #[arg(long)]
        corpus: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Write random RLE files.
    Gen {
        #[arg(long)]
        sigma: u32,
        /// Run count, either `M` or an inclusive range `A..B`.
        #[arg(long)]
        m: String,
        /// `ones`, `uniform:MAX` or `geometric:P`.
        #[arg(long, default_value = "ones")]
        exp: String,
        #[arg(long, default_value_t = 1)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Run the fast path over a family of inputs and print CSV counters.
    Bench {
        /// `random`, `tightness` or `n-independence`.
        #[arg(long, default_value = "random")]
        family: String,
        /// Comma-separated run counts.
        #[arg(long, value_delimiter = ',')]
        m: Vec<usize>,
        /// Largest exponent; random inputs draw exponents uniformly from `1..=MAX`.
        #[arg(long, default_value_t = 1)]
        exp_max: u64,
        #[arg(long, default_value_t = 4)]
        sigma: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Args)]
struct InputArgs {
    #[arg(long, default_value = "rle")]
    format: String,
    /// Input file; standard input when absent or `-`.
    #[arg(long)]
    input: Option<PathBuf>,
}

#[derive(Args)]
struct BudgetArgs {
    /// Largest decoded length the oracle accepts.
    #[arg(long, env = "LUF_MAX_DECODE")]
    max_decode: Option<u64>,
}

impl BudgetArgs {
    fn budget(&self, seed: u64) -> OracleBudget {
        let mut b = OracleBudget { rng_seed: seed, ..OracleBudget::default() };
        if let Some(n) = self.max_decode {
            b.max_n = n;
        }
        b
    }
}

enum Failure {
    Parse(String),
    Budget(String),
    Mismatch,
}

impl From<LufError> for Failure {
    fn from(e: LufError) -> Self {
        match e {
            LufError::BudgetExceeded { .. } | LufError::DecodeTooLarge { .. } => Failure::Budget(e.to_string()),
            _ => Failure::Parse(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        Failure::Parse(e.to_string())
    }
}

type CmdResult = std::result::Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let opts = LufOptions { threads: cli.threads, cascade: !cli.no_cascade };
    let res = match cli.cmd {
        Cmd::Compute(input) => cmd_compute(&input, opts),
        Cmd::Oracle { input, budget } => cmd_oracle(&input, &budget),
        Cmd::Verify { corpus, seed, budget } => cmd_verify(&corpus, seed, &budget, opts),
        Cmd::Gen { sigma, m, exp, count, seed, out } => cmd_gen(sigma, &m, &exp, count, seed, &out),
        Cmd::Bench { family, m, exp_max, sigma, seed } => cmd_bench(&family, &m, exp_max, sigma, seed, opts),
    };
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Parse(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_PARSE)
        }
        Err(Failure::Budget(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_BUDGET)
        }
        Err(Failure::Mismatch) => ExitCode::from(EXIT_MISMATCH),
    }
}

fn read_input(args: &InputArgs) -> std::result::Result<RleString, Failure> {
    let format: Format = args.format.parse()?;
    let bytes = match args.input.as_deref() {
        Some(p) if p.as_os_str() != "-" => fs::read(p)?,
        _ => {
            let mut buf = Vec::new();
            std::io::stdin().read_to_end(&mut buf)?;
            buf
        }
    };
    Ok(io::parse(&bytes, format)?)
}

fn emit(report: &RunReport) -> CmdResult {
    writeln!(std::io::stdout().lock(), "{}", report.to_json())?;
    Ok(())
}

fn cmd_compute(args: &InputArgs, opts: LufOptions) -> CmdResult {
    let t = read_input(args)?;
    let start = Instant::now();
    let (r, counters) = stats::measure(|| longest_unbordered_factors_with(&t, opts));
    let ms = start.elapsed().as_secs_f64() * 1e3;
    emit(&RunReport::new(&t, &r, Algo::Rle, counters, ms))
}

fn cmd_oracle(args: &InputArgs, budget: &BudgetArgs) -> CmdResult {
    let t = read_input(args)?;
    let start = Instant::now();
    let r = oracles::naive_luf(&t, &budget.budget(0))?;
    let ms = start.elapsed().as_secs_f64() * 1e3;
    emit(&RunReport::new(&t, &r, Algo::Naive, stats::Counters::default(), ms))
}

fn load_corpus(name: &str, seed: u64) -> std::result::Result<Vec<RleString>, Failure> {
    let bad = || Failure::Parse(format!("unknown corpus {name:?}"));
    if let Some(rest) = name.strip_prefix("exhaustive-") {
        let (name, len) = rest.rsplit_once('-').ok_or_else(bad)?;
        let sigma = match name {
            "binary" => 2,
            "ternary" => 3,
            "quaternary" => 4,
            _ => return Err(bad()),
        };
        let len: usize = len.parse().map_err(|_| bad())?;
        let mut out = Vec::new();
        for l in 1..=len {
            out.extend(corpus::exhaustive(sigma, l).map(|s| RleString::encode(&s).expect("non-empty")));
        }
        return Ok(out);
    }
    if let Some(count) = name.strip_prefix("random-") {
        let count: usize = count.parse().map_err(|_| bad())?;
        let mut rng = corpus::rng(seed);
        let dists = [ExpDist::Ones, ExpDist::Uniform(20), ExpDist::Geometric(0.3)];
        return Ok((0..count)
            .map(|i| {
                use rand::Rng;
                let sigma = [2, 3, 4, 6][i % 4];
                let m = rng.gen_range(1..=300);
                corpus::random_rle(&mut rng, sigma, m, dists[i % 3])
            })
            .collect());
    }
    let mut paths: Vec<PathBuf> = fs::read_dir(name)
        .map_err(|e| Failure::Parse(format!("{name}: {e}")))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "rle"))
        .collect();
    paths.sort();
    paths
        .iter()
        .map(|p| {
            let text = fs::read_to_string(p)?;
            io::parse_rle(&text).map_err(|e| Failure::Parse(format!("{}: {e}", p.display())))
        })
        .collect()
}

fn cmd_verify(name: &str, seed: u64, budget: &BudgetArgs, opts: LufOptions) -> CmdResult {
    let inputs = load_corpus(name, seed)?;
    let budget = budget.budget(seed);
    let outcomes: Vec<std::result::Result<Option<(LufResult, LufResult)>, LufError>> = inputs
        .par_iter()
        .map(|t| {
            let want = oracles::naive_luf(t, &budget)?;
            let got = longest_unbordered_factors_with(t, opts);
            Ok((got != want).then_some((got, want)))
        })
        .collect();
    let mut worst: Option<(usize, LufResult, LufResult)> = None;
    for (i, o) in outcomes.into_iter().enumerate() {
        if let Some((got, want)) = o? {
            let key = |j: usize| (inputs[j].len(), inputs[j].m());
            if worst.as_ref().is_none_or(|(w, _, _)| key(i) < key(*w)) {
                worst = Some((i, got, want));
            }
        }
    }
    let mut out = std::io::stdout().lock();
    match worst {
        None => {
            writeln!(out, "pass: {} inputs", inputs.len())?;
            Ok(())
        }
        Some((i, got, want)) => {
            writeln!(out, "FAIL: minimal failing input: {}", io::format_rle(&inputs[i]))?;
            writeln!(out, "  rle:   length {} occurrences {:?}", got.length, got.occurrences)?;
            writeln!(out, "  naive: length {} occurrences {:?}", want.length, want.occurrences)?;
            Err(Failure::Mismatch)
        }
    }
}

fn parse_m_range(s: &str) -> std::result::Result<(usize, usize), Failure> {
    let bad = || Failure::Parse(format!("bad run-count range {s:?}"));
    let (a, b) = match s.split_once("..") {
        Some((a, b)) => (a.parse().map_err(|_| bad())?, b.parse().map_err(|_| bad())?),
        None => {
            let v = s.parse().map_err(|_| bad())?;
            (v, v)
        }
    };
    if a == 0 || a > b {
        return Err(bad());
    }
    Ok((a, b))
}

fn cmd_gen(sigma: u32, m: &str, exp: &str, count: usize, seed: u64, out: &PathBuf) -> CmdResult {
    use rand::Rng;
    let (lo, hi) = parse_m_range(m)?;
    let dist: ExpDist = exp.parse()?;
    if sigma < 2 && hi > 1 {
        return Err(Failure::Parse("more than one run needs at least two letters".into()));
    }
    fs::create_dir_all(out)?;
    let mut rng = corpus::rng(seed);
    for i in 0..count {
        let m = rng.gen_range(lo..=hi);
        let t = corpus::random_rle(&mut rng, sigma, m, dist);
        let path = out.join(format!("gen-s{sigma}-seed{seed}-{i:05}.rle"));
        fs::write(&path, io::format_rle(&t) + "\n")?;
    }
    Ok(())
}

fn cmd_bench(family: &str, ms: &[usize], exp_max: u64, sigma: u32, seed: u64, opts: LufOptions) -> CmdResult {
    if ms.is_empty() {
        return Err(Failure::Parse("--m needs at least one run count".into()));
    }
    let mut out = std::io::stdout().lock();
    writeln!(
        out,
        "family,m,n,length,occurrences,run_ops,wlsq_visits,wlsq_steps,wlsq_queries,wlsq_max_steps,wlsq_budget_violations,peak_words,wall_ms"
    )?;
    for &m in ms {
        let t = match family {
            "random" => corpus::random_rle(&mut corpus::rng(seed ^ m as u64), sigma, m, ExpDist::Uniform(exp_max.max(1))),
            "tightness" => corpus::tightness(exp_max.max(1), m),
            "n-independence" => corpus::n_independence(m, exp_max.max(2)),
            _ => return Err(Failure::Parse(format!("unknown family {family:?}"))),
        };
        let start = Instant::now();
        let (r, c) = stats::measure(|| longest_unbordered_factors_with(&t, opts));
        let ms_wall = start.elapsed().as_secs_f64() * 1e3;
        writeln!(
            out,
            "{family},{m},{},{},{},{},{},{},{},{},{},{},{ms_wall:.3}",
            t.len(),
            r.length,
            r.occurrences.len(),
            c.run_ops,
            c.wlsq_visits,
            c.wlsq_steps,
            c.wlsq_queries,
            c.wlsq_max_steps,
            c.wlsq_budget_violations,
            c.peak_words
        )?;
    }
    Ok(())
}
