use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use equicube::numbers::Rational;
use equicube::sweep::{self, Format, Schedule, SweepMode};
use equicube::{
    concat_codes, double_code, exact_e, hadamard_code, iterated_code, pair_code, repeat_code, trivial_code,
    weight_one_code, BoundReport, Code, Effort, Error, Field, SearchConfig, SearchStatus, Verification,
};

const EXIT_USAGE: u8 = 1;
const EXIT_VERIFY: u8 = 2;
const EXIT_TIMEOUT: u8 = 3;
const EXIT_IO: u8 = 4;

/// Equidistant binary codes: constructions, bounds, exact search and sweeps.
#[derive(Parser)]
#[command(name = "equicube", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a code and write it in the code file format.
    Construct(ConstructArgs),
    /// Check that a code file is equidistant.
    Verify(VerifyArgs),
    /// Print lower and upper bounds on e_d(n).
    Bound(BoundArgs),
    /// Compute e_d(n) by exhaustive search.
    Exact(ExactArgs),
    /// Sample a growth measure and write CSV (and optionally SVG).
    Sweep(SweepArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Trivial,
    Pair,
    Weightone,
    Hadamard,
    Double,
    Iterated,
    Repeat,
    Concat,
    Pad,
}

#[derive(Args)]
struct ConstructArgs {
    #[arg(long, value_enum)]
    method: Method,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    d: Option<usize>,
    #[arg(long)]
    q: Option<u64>,
    #[arg(long)]
    k: Option<u32>,
    #[arg(long)]
    t: Option<usize>,
    /// Input code file (double, repeat, concat, pad).
    #[arg(long = "in")]
    input: Option<PathBuf>,
    /// Second input code file (concat).
    #[arg(long = "in2")]
    input2: Option<PathBuf>,
    /// Output file; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long = "in")]
    input: PathBuf,
    /// Distance to check instead of the one declared in the file.
    #[arg(long)]
    d: Option<u32>,
}

#[derive(Args)]
struct BoundArgs {
    #[arg(long)]
    n: u64,
    #[arg(long)]
    d: u64,
    #[arg(long)]
    json: bool,
    /// Skip building and verifying the lower-bound code.
    #[arg(long)]
    formula_only: bool,
}

#[derive(Args)]
struct ExactArgs {
    #[arg(long)]
    n: u32,
    #[arg(long)]
    d: u32,
    /// Time budget in whole seconds.
    #[arg(long)]
    timeout: Option<u64>,
    #[arg(long, default_value_t = 0)]
    threads: usize,
    /// Write the largest set found to this file.
    #[arg(long)]
    witness: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    G,
    H,
    F,
}

#[derive(Clone, Copy, ValueEnum)]
enum ScheduleArg {
    Auto,
    Dense,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long, value_enum)]
    mode: ModeArg,
    /// Comma-separated parameters: γ or α as `a/b`, or integer distances.
    #[arg(long, value_delimiter = ',', value_parser = parse_rational)]
    params: Option<Vec<Rational>>,
    #[arg(long, default_value_t = 4096)]
    n_max: u64,
    #[arg(long, value_enum, default_value = "auto")]
    schedule: ScheduleArg,
    /// CSV output file.
    #[arg(long)]
    out: PathBuf,
    #[arg(long)]
    svg: Option<PathBuf>,
    #[arg(long)]
    gnuplot: Option<PathBuf>,
    /// Build and verify the lower-bound codes where they are small enough.
    #[arg(long)]
    materialize: bool,
    #[arg(long, default_value_t = 0)]
    threads: usize,
}

fn parse_rational(s: &str) -> Result<Rational, String> {
    let s = s.trim();
    let (a, b) = s.split_once('/').unwrap_or((s, "1"));
    let a: u64 = a.trim().parse().map_err(|_| format!("bad rational {s:?}"))?;
    let b: u64 = b.trim().parse().map_err(|_| format!("bad rational {s:?}"))?;
    if b == 0 {
        return Err(format!("zero denominator in {s:?}"));
    }
    Ok(Rational::new(a, b))
}

/// A failure with the exit code it maps to.
struct Failure {
    code: u8,
    msg: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Io(_) => EXIT_IO,
            Error::Parse { .. } | Error::DuplicateWord(..) | Error::NotEquidistant { .. } => EXIT_VERIFY,
            _ => EXIT_USAGE,
        };
        Failure { code, msg: e.to_string() }
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        msg: msg.into(),
    }
}

fn need<T>(v: Option<T>, flag: &str, method: &str) -> Result<T, Failure> {
    v.ok_or_else(|| usage(format!("--{flag} is required for method {method}")))
}

fn read_text(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure {
        code: EXIT_IO,
        msg: format!("{}: {e}", path.display()),
    })
}

fn write_text(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure {
        code: EXIT_IO,
        msg: format!("{}: {e}", path.display()),
    })
}

/// Infers the distance from the first two words when none is declared.
fn check(code: &Code, d: Option<u32>) -> Result<(u32, Verification), Failure> {
    let words = code.words();
    let d = match d {
        Some(d) => d,
        None if words.len() >= 2 => words[0].distance(&words[1])?,
        None => 0,
    };
    Ok((d, code.verify_equidistant(d)))
}

fn load_certified(path: &Path) -> Result<Code, Failure> {
    let (code, declared) = Code::parse_unverified(&read_text(path)?)?;
    let (d, _) = check(&code, declared)?;
    Ok(code.certify(d)?)
}

fn construct(a: ConstructArgs) -> Result<(), Failure> {
    let name = match a.method {
        Method::Trivial => "trivial",
        Method::Pair => "pair",
        Method::Weightone => "weightone",
        Method::Hadamard => "hadamard",
        Method::Double => "double",
        Method::Iterated => "iterated",
        Method::Repeat => "repeat",
        Method::Concat => "concat",
        Method::Pad => "pad",
    };
    let code = match a.method {
        Method::Trivial => trivial_code(need(a.n, "n", name)?, need(a.d, "d", name)?)?,
        Method::Pair => pair_code(need(a.n, "n", name)?, need(a.d, "d", name)?)?,
        Method::Weightone => weight_one_code(need(a.q, "q", name)? as usize)?,
        Method::Hadamard => hadamard_code(need(a.k, "k", name)?)?,
        Method::Double => {
            let r = load_certified(&need(a.input, "in", name)?)?;
            let field = Field::new(need(a.q, "q", name)?)?;
            double_code(&r, &field)?
        }
        Method::Iterated => iterated_code(need(a.q, "q", name)?, need(a.k, "k", name)?)?,
        Method::Repeat => repeat_code(&load_certified(&need(a.input, "in", name)?)?, need(a.t, "t", name)?)?,
        Method::Concat => concat_codes(
            &load_certified(&need(a.input, "in", name)?)?,
            &load_certified(&need(a.input2, "in2", name)?)?,
        )?,
        Method::Pad => load_certified(&need(a.input, "in", name)?)?.pad(need(a.n, "n", name)?)?,
    };
    let text = code.to_text();
    match a.out {
        Some(path) => write_text(&path, &text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn verify(a: VerifyArgs) -> Result<(), Failure> {
    let (code, declared) = Code::parse_unverified(&read_text(&a.input)?)?;
    let (d, outcome) = check(&code, a.d.or(declared))?;
    match outcome {
        Verification::Ok => {
            println!("ok n={} d={} m={}", code.len(), d, code.size());
            Ok(())
        }
        Verification::Violation { i, j, distance } => Err(Failure {
            code: EXIT_VERIFY,
            msg: format!("violation: words {i} and {j} are at distance {distance}, expected {d}"),
        }),
    }
}

fn bound(a: BoundArgs) -> Result<(), Failure> {
    let effort = if a.formula_only { Effort::formula_only() } else { Effort::default() };
    let report = BoundReport::compute(a.n, a.d, &effort)?;
    if a.json {
        println!("{}", serde_json::to_string(&report.wire()).expect("report serializes"));
    } else {
        print!("{report}");
    }
    Ok(())
}

fn exact(a: ExactArgs) -> Result<(), Failure> {
    let mut cfg = SearchConfig::new(a.n, a.d).with_threads(a.threads);
    if let Some(s) = a.timeout {
        cfg = cfg.with_time_budget(Duration::from_secs(s));
    }
    if a.witness.is_none() {
        cfg.materialize_witness = false;
    }
    let result = exact_e(&cfg)?;
    if let (Some(path), Some(w)) = (&a.witness, &result.witness) {
        write_text(path, &w.to_text())?;
    }
    match result.status {
        SearchStatus::Proven => {
            println!("e_{}({}) = {}", a.d, a.n, result.value);
            Ok(())
        }
        SearchStatus::Timeout => {
            println!("e_{}({}) >= {} (timeout)", a.d, a.n, result.value);
            Err(Failure {
                code: EXIT_TIMEOUT,
                msg: "time budget exhausted".into(),
            })
        }
    }
}

fn default_params(mode: ModeArg) -> Vec<Rational> {
    let r = Rational::new;
    match mode {
        ModeArg::G => vec![r(1, 4), r(1, 3), r(1, 2), r(3, 5), r(3, 4)],
        ModeArg::H => [2, 3, 4, 6].map(Rational::from_integer).to_vec(),
        ModeArg::F => (1..=33).map(|i| r(i, 34)).collect(),
    }
}

fn run_sweep(a: SweepArgs) -> Result<(), Failure> {
    if a.threads > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(a.threads)
            .build_global()
            .map_err(|e| usage(e.to_string()))?;
    }
    let params = a.params.unwrap_or_else(|| default_params(a.mode));
    let schedule = match a.schedule {
        ScheduleArg::Auto => Schedule::Auto,
        ScheduleArg::Dense => Schedule::Dense,
    };
    let effort = if a.materialize { Effort::default() } else { Effort::formula_only() };
    let rows = match a.mode {
        ModeArg::G => sweep::sweep_g(&params, a.n_max, &schedule, &effort)?,
        ModeArg::F => sweep::sweep_f(&params, a.n_max, &schedule, &effort)?,
        ModeArg::H => {
            let ds = params
                .iter()
                .map(|p| if p.is_integer() { Ok(p.to_integer()) } else { Err(usage(format!("distance {p} is not an integer"))) })
                .collect::<Result<Vec<u64>, Failure>>()?;
            sweep::sweep_h(&ds, a.n_max, &schedule, &effort)?
        }
    };
    write_text(&a.out, &sweep::render(&rows, Format::Csv)?)?;
    if let Some(path) = &a.svg {
        write_text(path, &sweep::render(&rows, Format::Svg)?)?;
    }
    if let Some(path) = &a.gnuplot {
        write_text(path, &sweep::render(&rows, Format::Gnuplot)?)?;
    }
    for s in sweep::summarize(&rows) {
        let mode: SweepMode = s.mode;
        println!(
            "{mode} {}: best measure {:.6} at n={} (envelope {:.6})",
            s.parameter,
            s.best_measure,
            s.best_n,
            equicube::numbers::rational_to_f64(s.envelope)
        );
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_USAGE) } else { ExitCode::SUCCESS };
        }
    };
    let outcome = match cli.command {
        Command::Construct(a) => construct(a),
        Command::Verify(a) => verify(a),
        Command::Bound(a) => bound(a),
        Command::Exact(a) => exact(a),
        Command::Sweep(a) => run_sweep(a),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("equicube: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}
