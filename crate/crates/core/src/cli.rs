//! The `tfweyl` command-line front end.
//!
//! Exit codes: 0 on success, 1 when an input violates a precondition
//! (malformed file, grid mismatch, inadmissible exponents, ...), 2 on I/O
//! failure.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::error::{Error, Result};
use crate::grid::gaussian;
use crate::io::{read_field, read_signal, write_atomic, write_field, write_operator, write_signal};
use crate::norms::{amalgam_norm, modulation_norm, symbol_amalgam_norm, NormSpec, Order};
use crate::quantization::{apply, convert_symbol, tau_matrix, weyl_matrix, OperatorMatrix, TauParam};
use crate::transforms::{stft1, tau_wigner, wigner};
use crate::verify::{
    check_exponents, default_windows, emit_report, ExperimentConfig, ExponentTuple, Lemma, ReportFormat,
};

#[derive(Debug, Parser)]
#[command(name = "tfweyl", version, about = "Discrete time-frequency transforms, norms and Weyl operators")]
struct Cli {
    /// Seed for every random ensemble; overrides the seed in a config file.
    #[arg(long, global = true, value_name = "U64")]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Short-time Fourier transform V_g f (position × frequency field).
    Stft(PairArgs),
    /// Cross-Wigner distribution W(f, g).
    Wigner(PairArgs),
    /// Cross-τ-Wigner distribution W_τ(f, g).
    TauWigner(TauWignerArgs),
    /// Modulation or amalgam norm of a signal or a symbol.
    Norm(NormArgs),
    /// Weyl operator matrix of a symbol.
    Weyl(OperatorArgs),
    /// τ-operator matrix of a symbol.
    TauOp(TauOpArgs),
    /// Convert a symbol from τ1- to τ2-quantization.
    ConvertSymbol(ConvertArgs),
    /// Check exponents (p, q, r1, r2) for admissibility.
    CheckExponents(ExponentArgs),
    /// Ratio experiment for the Wigner estimate with exponents p1, p2.
    VerifyLemma31(VerifyArgs),
    /// Ratio experiment for the L² Wigner estimate.
    VerifyLemma32(VerifyArgs),
    /// Ratio experiment for Weyl operator boundedness.
    VerifyTheorem(VerifyArgs),
}

#[derive(Debug, Args)]
struct PairArgs {
    /// Signal JSON file.
    #[arg(long, value_name = "PATH")]
    f: PathBuf,
    /// Second signal (window for stft); defaults to the normalized Gaussian.
    #[arg(long, value_name = "PATH")]
    g: Option<PathBuf>,
    /// Output field JSON file.
    #[arg(long, value_name = "PATH")]
    out: PathBuf,
}

#[derive(Debug, Args)]
struct TauWignerArgs {
    #[command(flatten)]
    pair: PairArgs,
    /// τ in [0, 1].
    #[arg(long)]
    tau: f64,
}

#[derive(Debug, Args)]
struct NormArgs {
    /// Signal or symbol JSON file; a file with an "axes" field is a symbol.
    #[arg(long, value_name = "PATH")]
    input: PathBuf,
    /// NormSpec JSON file.
    #[arg(long, value_name = "PATH")]
    spec: PathBuf,
    /// Window (signal JSON for signals, field JSON for symbols); defaults to the Gaussian.
    #[arg(long, value_name = "PATH")]
    window: Option<PathBuf>,
    /// Also write {"norm": value} to this JSON file.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct OperatorArgs {
    /// Symbol field JSON file.
    #[arg(long, value_name = "PATH")]
    symbol: PathBuf,
    /// Output binary operator file.
    #[arg(long, value_name = "PATH")]
    out: PathBuf,
    /// Apply the operator to this signal.
    #[arg(long, value_name = "PATH", requires = "apply_out")]
    apply: Option<PathBuf>,
    /// Where to write the applied signal.
    #[arg(long, value_name = "PATH", requires = "apply")]
    apply_out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct TauOpArgs {
    #[command(flatten)]
    op: OperatorArgs,
    /// τ in [0, 1].
    #[arg(long)]
    tau: f64,
}

#[derive(Debug, Args)]
struct ConvertArgs {
    /// Symbol field JSON file.
    #[arg(long, value_name = "PATH")]
    symbol: PathBuf,
    /// Source quantization τ1.
    #[arg(long)]
    from: f64,
    /// Target quantization τ2.
    #[arg(long)]
    to: f64,
    /// Output field JSON file.
    #[arg(long, value_name = "PATH")]
    out: PathBuf,
}

#[derive(Debug, Args)]
struct ExponentArgs {
    /// Exponent: number ≥ 1, ratio a/b, or inf.
    #[arg(long)]
    p: String,
    #[arg(long)]
    q: String,
    #[arg(long)]
    r1: String,
    #[arg(long)]
    r2: String,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    /// Experiment config JSON file.
    #[arg(long, value_name = "PATH")]
    config: PathBuf,
    /// Report file.
    #[arg(long, value_name = "PATH")]
    out: PathBuf,
    /// csv or json; defaults to json for a .json path, csv otherwise.
    #[arg(long)]
    format: Option<String>,
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Io(_) => 2,
        _ => 1,
    }
}

/// Runs the CLI on `argv` (including the program name) and returns the exit
/// code. Diagnostics go to stderr.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

fn read_text(path: &Path) -> Result<String> {
    Ok(fs::read_to_string(path)?)
}

fn is_field(path: &Path) -> Result<bool> {
    let v: serde_json::Value = serde_json::from_str(&read_text(path)?)?;
    Ok(v.get("axes").is_some())
}

fn dispatch(cli: Cli) -> Result<()> {
    let seed = cli.seed;
    match cli.command {
        Command::Stft(a) => {
            let f = read_signal(&a.f)?;
            let g = match &a.g {
                Some(p) => read_signal(p)?,
                None => gaussian(f.grid()),
            };
            write_field(&a.out, &stft1(&f, &g)?)
        }
        Command::Wigner(a) => {
            let f = read_signal(&a.f)?;
            let g = match &a.g {
                Some(p) => read_signal(p)?,
                None => f.clone(),
            };
            write_field(&a.out, &wigner(&f, &g)?)
        }
        Command::TauWigner(a) => {
            let tau = TauParam::new(a.tau)?;
            let f = read_signal(&a.pair.f)?;
            let g = match &a.pair.g {
                Some(p) => read_signal(p)?,
                None => f.clone(),
            };
            write_field(&a.pair.out, &tau_wigner(&f, &g, tau.value())?)
        }
        Command::Norm(a) => {
            let spec: NormSpec = serde_json::from_str(&read_text(&a.spec)?)?;
            let value = if is_field(&a.input)? {
                let sym = read_field(&a.input)?;
                let window = match &a.window {
                    Some(p) => read_field(p)?,
                    None => default_windows(sym.grid()).1,
                };
                symbol_amalgam_norm(&sym, &window, &spec)?
            } else {
                let f = read_signal(&a.input)?;
                let window = match &a.window {
                    Some(p) => read_signal(p)?,
                    None => gaussian(f.grid()),
                };
                match spec.order {
                    Order::Modulation => modulation_norm(&f, &window, &spec)?,
                    Order::Amalgam => amalgam_norm(&f, &window, &spec)?,
                }
            };
            println!("{value:?}");
            if let Some(out) = &a.out {
                let text = serde_json::to_string(&serde_json::json!({ "norm": value }))? + "\n";
                write_atomic(out, text.as_bytes())?;
            }
            Ok(())
        }
        Command::Weyl(a) => {
            let sym = read_field(&a.symbol)?;
            let op = weyl_matrix(&sym)?;
            emit_operator(&op, &a)
        }
        Command::TauOp(a) => {
            let tau = TauParam::new(a.tau)?;
            let sym = read_field(&a.op.symbol)?;
            let op = tau_matrix(&sym, tau)?;
            emit_operator(&op, &a.op)
        }
        Command::ConvertSymbol(a) => {
            let (from, to) = (TauParam::new(a.from)?, TauParam::new(a.to)?);
            let sym = read_field(&a.symbol)?;
            write_field(&a.out, &convert_symbol(&sym, from, to))
        }
        Command::CheckExponents(a) => {
            let t = ExponentTuple::parse(&a.p, &a.q, &a.r1, &a.r2)?;
            let verdict = check_exponents(&t);
            if verdict.admissible {
                println!("admissible");
                Ok(())
            } else {
                Err(Error::Inadmissible(verdict.failures.join(", ")))
            }
        }
        Command::VerifyLemma31(a) => verify(&a, seed, |c, s| c.run_lemma(Lemma::L31, s)),
        Command::VerifyLemma32(a) => verify(&a, seed, |c, s| c.run_lemma(Lemma::L32, s)),
        Command::VerifyTheorem(a) => verify(&a, seed, |c, s| c.run_theorem(s)),
    }
}

fn emit_operator(op: &OperatorMatrix, a: &OperatorArgs) -> Result<()> {
    if let (Some(input), Some(out)) = (&a.apply, &a.apply_out) {
        let f = read_signal(input)?;
        write_signal(out, &apply(op, &f)?)?;
    }
    write_operator(&a.out, op)
}

fn verify(
    a: &VerifyArgs,
    seed: Option<u64>,
    run: impl Fn(&ExperimentConfig, Option<u64>) -> Result<crate::verify::RatioReport>,
) -> Result<()> {
    let config = ExperimentConfig::from_json(&read_text(&a.config)?)?;
    let format = match &a.format {
        Some(f) => f.parse()?,
        None => ReportFormat::from_path(&a.out),
    };
    let report = run(&config, seed)?;
    emit_report(&report, &a.out, format)?;
    let used = seed.unwrap_or(config.seed);
    for s in &report.summary {
        println!("N={} trials={} max_ratio={:?}", s.grid_n, s.trials, s.max_ratio);
    }
    for s in &report.stability {
        println!("stability {}->{}: {:?}", s.from_n, s.to_n, s.quotient);
    }
    println!("seed {used}");
    Ok(())
}
