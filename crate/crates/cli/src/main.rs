//! `strandcode`: tables, counts and strand codecs from the command line.

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use strandcode::asymptotics::{capacity, combined_redundancy, rll_redundancy, Mode};
use strandcode::codecs::{
    decode_bytes, encode_bytes, read_strands, write_strands, CodebookKind, CodecSpec, Oligo,
};
use strandcode::counting::{
    balance_redundancy, rll_count, rll_count_gf, weight_profile, Alphabet, Boundary,
};
use strandcode::oracle::{self, brute_balance_count, brute_weight_profiles, validate_codec};
use strandcode::tables::{figure1_csv, Precision, TableId, TableSpec, FIGURE1_BOUNDS};
use strandcode::{Error, UNBOUNDED};

/// Relative `--out` paths are resolved against this directory when set.
const OUT_DIR_VAR: &str = "STRANDCODE_OUT_DIR";

#[derive(Parser, Debug)]
#[command(name = "strandcode", version, about = "Constrained codes for DNA strands")]
struct Cli {
    /// Write output here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print one of the result tables as CSV.
    Tables {
        /// capacity, coefficient, eta, two-mode, state-indep, state-dep or gamma.
        id: String,
        /// Decimal places, or "full".
        #[arg(long, default_value = "default")]
        precision: String,
    },
    /// Exact balance redundancy r(a, n) as CSV rows `n,a,r`.
    Figure1 {
        /// Comma-separated unbalance bounds.
        #[arg(long, value_delimiter = ',', default_values_t = FIGURE1_BOUNDS)]
        a: Vec<f64>,
        #[arg(long, default_value_t = 10)]
        n_min: usize,
        #[arg(long, default_value_t = 200)]
        n_max: usize,
        #[arg(long, value_enum, default_value_t = BoundaryArg::Strict)]
        boundary: BoundaryArg,
        #[arg(long, default_value = "default")]
        precision: String,
    },
    /// Number of q-ary words of length n with runs at most m.
    Count {
        #[arg(long, default_value_t = 4)]
        q: u32,
        /// Maximum run, or "inf".
        #[arg(long, value_parser = parse_run)]
        m: usize,
        #[arg(long)]
        n: usize,
        /// Print the count per weight as CSV rows `w,count`.
        #[arg(long)]
        weight_profile: bool,
    },
    /// Capacity in bits per symbol, with the dominant root.
    Capacity {
        #[arg(long, default_value_t = 4)]
        q: u32,
        #[arg(long, value_parser = parse_run)]
        m: usize,
        #[arg(long, default_value = "default")]
        precision: String,
    },
    /// Redundancy in bits of the runlength and/or balance constraint.
    Redundancy(RedundancyArgs),
    /// Encode a file into strands, one per line.
    Encode {
        #[command(flatten)]
        codec: CodecArgs,
        /// Input file; standard input when omitted.
        input: Option<PathBuf>,
    },
    /// Decode a strand file back into the original bytes.
    Decode {
        #[command(flatten)]
        codec: CodecArgs,
        input: Option<PathBuf>,
    },
    /// Compare counting formulas with brute force and validate the codecs.
    Verify {
        /// Longest word length in the count comparison.
        #[arg(long, default_value_t = 11)]
        n_max: usize,
        /// Largest run limit in the count comparison.
        #[arg(long, default_value_t = 5)]
        m_max: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

#[derive(Args, Debug)]
struct RedundancyArgs {
    #[arg(long)]
    n: usize,
    /// Runlength limit; omit for the balance constraint alone.
    #[arg(long, value_parser = parse_run)]
    m: Option<usize>,
    /// Unbalance bound; omit for the runlength constraint alone.
    #[arg(long)]
    a: Option<f64>,
    /// 2 for the binary-plane approach, 4 for direct quaternary words.
    #[arg(long, default_value_t = 4)]
    q: u32,
    #[arg(long, value_enum, default_value_t = ModeArg::Exact)]
    mode: ModeArg,
    #[arg(long, value_enum, default_value_t = BoundaryArg::Strict)]
    boundary: BoundaryArg,
    #[arg(long, default_value = "4")]
    precision: String,
}

#[derive(Args, Debug)]
struct CodecArgs {
    #[arg(long, value_enum)]
    code: CodeArg,
    /// Strand length; for knuth and weak-knuth, the length of the balanced
    /// data word instead.
    #[arg(long)]
    n: usize,
    #[arg(long, value_parser = parse_run)]
    m: Option<usize>,
    /// log2 of the number of inversion points (weak-knuth).
    #[arg(long)]
    p0: Option<usize>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum CodeArg {
    Knuth,
    WeakKnuth,
    Rll,
    TwoMode,
    StateIndependent,
    StateDependent,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum BoundaryArg {
    Strict,
    Inclusive,
}

impl From<BoundaryArg> for Boundary {
    fn from(b: BoundaryArg) -> Self {
        match b {
            BoundaryArg::Strict => Boundary::Strict,
            BoundaryArg::Inclusive => Boundary::Inclusive,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Exact,
    Asymptotic,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Exact => Mode::Exact,
            ModeArg::Asymptotic => Mode::Asymptotic,
        }
    }
}

fn parse_run(s: &str) -> Result<usize, String> {
    if s == "inf" {
        return Ok(UNBOUNDED);
    }
    s.parse().map_err(|e| format!("{e}"))
}

/// Why a command failed, and the exit code that goes with it.
#[derive(Debug)]
enum Failure {
    Usage(String),
    Data(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Domain(_)
            | Error::UndefinedRedundancy(_)
            | Error::Refused { .. }
            | Error::Config(_)
            | Error::Parse { .. } => Failure::Usage(e.to_string()),
            Error::Decode { .. } | Error::Numeric(_) | Error::Internal(_) => {
                Failure::Data(e.to_string())
            }
        }
    }
}

type CmdResult<T = ()> = Result<T, Failure>;

fn out_path(out: &Path) -> PathBuf {
    match std::env::var_os(OUT_DIR_VAR) {
        Some(dir) if out.is_relative() => Path::new(&dir).join(out),
        _ => out.to_path_buf(),
    }
}

fn emit(out: Option<&Path>, bytes: &[u8]) -> CmdResult {
    let res = match out {
        Some(p) => {
            let p = out_path(p);
            fs::write(&p, bytes).map_err(|e| format!("cannot write {}: {e}", p.display()))
        }
        None => io::stdout()
            .write_all(bytes)
            .map_err(|e| format!("cannot write output: {e}")),
    };
    res.map_err(Failure::Data)
}

fn read_input(input: Option<&Path>) -> CmdResult<Vec<u8>> {
    match input {
        Some(p) => fs::read(p).map_err(|e| Failure::Data(format!("cannot read {}: {e}", p.display()))),
        None => {
            let mut buf = Vec::new();
            io::stdin()
                .read_to_end(&mut buf)
                .map_err(|e| Failure::Data(format!("cannot read standard input: {e}")))?;
            Ok(buf)
        }
    }
}

fn precision(s: &str) -> CmdResult<Precision> {
    Ok(s.parse()?)
}

fn fmt_value(v: f64, p: Precision, default: usize) -> String {
    match p {
        Precision::Default => format!("{v:.default$}"),
        Precision::Decimals(d) => format!("{v:.d$}"),
        Precision::Full => format!("{v}"),
    }
}

fn codec_spec(args: &CodecArgs) -> CmdResult<CodecSpec> {
    let need_m = || {
        args.m
            .ok_or_else(|| {
                let name = args.code.to_possible_value().expect("no skipped variants");
                Failure::Usage(format!("--m is required for {}", name.get_name()))
            })
    };
    Ok(match args.code {
        CodeArg::Knuth => CodecSpec::Knuth { data_len: args.n },
        CodeArg::WeakKnuth => CodecSpec::WeakKnuth {
            data_len: args.n,
            p0: args
                .p0
                .ok_or_else(|| Failure::Usage("--p0 is required for weak-knuth".into()))?,
        },
        CodeArg::Rll => CodecSpec::Rll { m: need_m()?, n: args.n },
        CodeArg::TwoMode => CodecSpec::Codebook {
            kind: CodebookKind::TwoMode,
            m: need_m()?,
            n: args.n,
        },
        CodeArg::StateIndependent => CodecSpec::Codebook {
            kind: CodebookKind::StateIndependent,
            m: need_m()?,
            n: args.n,
        },
        CodeArg::StateDependent => CodecSpec::Codebook {
            kind: CodebookKind::StateDependent,
            m: need_m()?,
            n: args.n,
        },
    })
}

fn cmd_count(q: u32, m: usize, n: usize, profile: bool) -> CmdResult<String> {
    if !profile {
        return Ok(format!("{}\n", rll_count(q, m, n)?));
    }
    let kind = match q {
        2 => Alphabet::Binary,
        4 => Alphabet::Quaternary,
        _ => return Err(Failure::Usage("weight profiles need q = 2 or 4".into())),
    };
    let p = weight_profile(kind, m, n)?;
    let mut out = String::from("w,count\n");
    for (w, c) in p.counts.iter().enumerate() {
        out.push_str(&format!("{w},{c}\n"));
    }
    Ok(out)
}

fn cmd_redundancy(r: &RedundancyArgs) -> CmdResult<String> {
    let p = precision(&r.precision)?;
    let boundary = r.boundary.into();
    let mode = r.mode.into();
    let v = match (r.m, r.a) {
        (None, None) => return Err(Failure::Usage("give --m, --a or both".into())),
        (None, Some(a)) => {
            if matches!(r.mode, ModeArg::Asymptotic) {
                return Err(Failure::Usage(
                    "the balance-only redundancy is exact; drop --mode".into(),
                ));
            }
            balance_redundancy(r.n, a, boundary)?
        }
        (Some(m), None) => rll_redundancy(r.q, m, r.n, mode)?,
        (Some(m), Some(a)) => {
            let kind = match r.q {
                2 => Alphabet::Binary,
                4 => Alphabet::Quaternary,
                _ => return Err(Failure::Usage("combined redundancy needs q = 2 or 4".into())),
            };
            combined_redundancy(kind, m, a, r.n, mode, boundary)?
        }
    };
    Ok(format!("{}\n", fmt_value(v, p, 4)))
}

fn cmd_encode(args: &CodecArgs, input: Option<&Path>) -> CmdResult<Vec<u8>> {
    let codec = codec_spec(args)?.build()?;
    let payload = read_input(input)?;
    let strands = encode_bytes(codec.as_ref(), &payload)?;
    Ok(write_strands(&strands).into_bytes())
}

fn cmd_decode(args: &CodecArgs, input: Option<&Path>) -> CmdResult<Vec<u8>> {
    let codec = codec_spec(args)?.build()?;
    let raw = read_input(input)?;
    let text = String::from_utf8(raw)
        .map_err(|_| Failure::Data("strand file is not valid UTF-8".into()))?;
    let lines = read_strands(&text).map_err(|e| match e {
        Error::Decode { reason, .. } => Failure::Data(reason),
        other => other.into(),
    })?;
    let strands: Vec<Oligo> = lines.iter().map(|(_, o)| o.clone()).collect();
    decode_bytes(codec.as_ref(), &strands).map_err(|e| match e {
        Error::Decode { record, reason } => {
            let line = lines.get(record).map_or(0, |(l, _)| *l);
            Failure::Data(format!("line {line}: {reason}"))
        }
        other => other.into(),
    })
}

/// Returns the report and whether every check passed.
fn cmd_verify(n_max: usize, m_max: usize, seed: u64) -> CmdResult<(String, bool)> {
    let mut report = String::new();
    let mut ok = true;
    let t0 = Instant::now();
    let mut compared = 0u64;
    for q in [2u32, 4] {
        for n in 1..=n_max {
            let brute = brute_weight_profiles(q, m_max, n)?;
            let kind = if q == 2 { Alphabet::Binary } else { Alphabet::Quaternary };
            for m in 1..=m_max {
                let formula = weight_profile(kind, m, n)?;
                let total = rll_count(q, m, n)?;
                let gf = rll_count_gf(q, m, n)?;
                let b = &brute[m - 1];
                let sum: u64 = b.iter().sum();
                let mut mismatch = Vec::new();
                if total != sum.into() || gf != sum.into() {
                    mismatch.push(format!("total {total} / {gf} vs brute {sum}"));
                }
                for (w, &c) in b.iter().enumerate() {
                    compared += 1;
                    if formula.get(w).cloned().unwrap_or_default() != c.into() {
                        mismatch.push(format!("w={w}: formula {:?} vs brute {c}", formula.get(w)));
                    }
                }
                if !mismatch.is_empty() {
                    ok = false;
                    report.push_str(&format!("[FAIL] counts q={q} m={m} n={n}: {}\n", mismatch.join("; ")));
                }
            }
        }
    }
    for n in 1..=n_max.min(10) {
        for a in [0.05, 0.1, 0.2, 0.25, 0.5] {
            for boundary in [Boundary::Strict, Boundary::Inclusive] {
                let brute = brute_balance_count(n, a, boundary)?;
                let formula = strandcode::counting::near_balanced_count(n, a, boundary)?;
                compared += 1;
                if formula != brute.into() {
                    ok = false;
                    report.push_str(&format!(
                        "[FAIL] balance n={n} a={a} {boundary:?}: formula {formula} vs brute {brute}\n"
                    ));
                }
            }
        }
    }
    report.push_str(&format!(
        "[{}] counts: {compared} comparisons, q in {{2,4}}, m 1..={m_max}, n 1..={n_max} ({:.2?})\n",
        if ok { "ok" } else { "FAIL" },
        t0.elapsed()
    ));
    for subject in oracle::default_grid() {
        match validate_codec(subject, seed) {
            Ok(r) => report.push_str(&format!(
                "[ok] {}: {} cases ({:.2?})\n",
                r.subject, r.count, r.elapsed
            )),
            Err(e) => {
                ok = false;
                report.push_str(&format!("[FAIL] {e}\n"));
            }
        }
    }
    Ok((report, ok))
}

fn run(cli: Cli) -> CmdResult<bool> {
    let out = cli.out.as_deref();
    match &cli.command {
        Command::Tables { id, precision: p } => {
            let id: TableId = id.parse()?;
            let csv = TableSpec::published(id).to_csv(precision(p)?)?;
            emit(out, csv.as_bytes())?;
        }
        Command::Figure1 {
            a,
            n_min,
            n_max,
            boundary,
            precision: p,
        } => {
            let csv = figure1_csv(a, *n_min, *n_max, (*boundary).into(), precision(p)?)?;
            emit(out, csv.as_bytes())?;
        }
        Command::Count {
            q,
            m,
            n,
            weight_profile,
        } => emit(out, cmd_count(*q, *m, *n, *weight_profile)?.as_bytes())?,
        Command::Capacity { q, m, precision: p } => {
            let c = capacity(*q, *m)?;
            let p = precision(p)?;
            let text = format!(
                "q,m,lambda,capacity\n{q},{},{},{}\n",
                if *m == UNBOUNDED { "inf".into() } else { m.to_string() },
                fmt_value(c.lambda, p, 4),
                fmt_value(c.capacity_bits, p, 4)
            );
            emit(out, text.as_bytes())?;
        }
        Command::Redundancy(r) => emit(out, cmd_redundancy(r)?.as_bytes())?,
        Command::Encode { codec, input } => emit(out, &cmd_encode(codec, input.as_deref())?)?,
        Command::Decode { codec, input } => emit(out, &cmd_decode(codec, input.as_deref())?)?,
        Command::Verify { n_max, m_max, seed } => {
            let (report, ok) = cmd_verify(*n_max, *m_max, *seed)?;
            emit(out, report.as_bytes())?;
            return Ok(ok);
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Data(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
