use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use sumprod_cli::report::{spectral_doc, ConstructionDoc, PrimeDoc, RingDoc, ZmExtremalDoc};
use sumprod_cli::{parse_set_file, run_exhaustive, run_sweep, CliError, Kind, SweepConfig};
use sumprod_core::construct::build_extremal;
use sumprod_core::theorems::{theorem1_report, theorem2_report, zm_extremal};
use sumprod_core::Modulus;

/// Sum-product experiments over Z/mZ.
///
/// Exit status: 0 success, 1 a checked bound failed, 2 usage or input error.
#[derive(Parser)]
#[command(name = "sumprod", version)]
struct Cli {
    /// Worker threads for sweeps (default: all cores). Never changes output.
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Prime,
    Ring,
}

#[derive(Subcommand)]
enum Command {
    /// Build a set with small max{|A+A|, |AA|} in F_p.
    Construct {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        n: u64,
        /// Write the JSON report here instead of stdout.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Check the prime-field bound on a set file.
    VerifyT1 {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        set: PathBuf,
    },
    /// Check the residue-ring bound and its intermediate inequalities on a set file.
    VerifyT2 {
        #[arg(long)]
        m: u64,
        #[arg(long)]
        set: PathBuf,
    },
    /// Seeded random sweep written as CSV.
    Sweep {
        #[arg(long)]
        modulus: u64,
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<u64>,
        #[arg(long)]
        trials: u64,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
        /// Draw from nonzero residues (default for prime fields).
        #[arg(long, conflicts_with = "include_zero")]
        exclude_zero: bool,
        /// Allow zero in draws (default for rings).
        #[arg(long)]
        include_zero: bool,
        /// Fill the elapsed_micros column; output is then no longer reproducible.
        #[arg(long)]
        timing: bool,
    },
    /// Minimum ratio over every k-subset of F_p \ {0}.
    Exhaustive {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        k: u64,
    },
    /// Spectral quadruple count and character-sum bounds on a set file.
    Spectral {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        set: PathBuf,
    },
    /// The set {0, p, 2p, ...} in Z/p^2 Z.
    ZmExtremal {
        #[arg(long)]
        p: u64,
    },
}

fn emit<T: Serialize>(doc: &T) -> Result<(), CliError> {
    let mut out = std::io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, doc)?;
    writeln!(out).map_err(|source| CliError::Write { path: "<stdout>".into(), source })?;
    Ok(())
}

fn warn_duplicates(n: usize) {
    if n > 0 {
        eprintln!("warning: {n} duplicate value(s) ignored");
    }
}

fn run(cli: Cli) -> Result<bool, CliError> {
    match cli.command {
        Command::Construct { p, n, json } => {
            let c = build_extremal(p, n)?;
            let doc = ConstructionDoc::new(&c);
            match json {
                Some(path) => {
                    let text = serde_json::to_string_pretty(&doc)? + "\n";
                    std::fs::write(&path, text).map_err(|source| CliError::Write { path: path.clone(), source })?;
                    println!(
                        "p={} n={} M={} L={} |A+A|={} |AA|={} cap={}",
                        c.p,
                        c.n,
                        c.window_len,
                        c.offset,
                        c.size_sum,
                        c.size_prod,
                        c.structural_cap()
                    );
                }
                None => emit(&doc)?,
            }
            Ok(doc.guarantees_hold)
        }
        Command::VerifyT1 { p, set } => {
            let modulus = Modulus::new(p)?;
            modulus.require_prime()?;
            let parsed = parse_set_file(&set, &modulus)?;
            warn_duplicates(parsed.duplicates);
            let report = theorem1_report(&parsed.set)?;
            let verified = report.verified();
            emit(&PrimeDoc { report: &report, duplicates: parsed.duplicates, verified })?;
            Ok(verified)
        }
        Command::VerifyT2 { m, set } => {
            let modulus = Modulus::new(m)?;
            let parsed = parse_set_file(&set, &modulus)?;
            warn_duplicates(parsed.duplicates);
            let report = theorem2_report(&parsed.set)?;
            let doc = RingDoc::build(&report, &parsed.set, parsed.duplicates)?;
            emit(&doc)?;
            Ok(doc.verified)
        }
        Command::Sweep { modulus, kind, sizes, trials, seed, out, exclude_zero, include_zero, timing } => {
            let kind = match kind {
                KindArg::Prime => Kind::PrimeField,
                KindArg::Ring => Kind::ResidueRing,
            };
            let mut cfg = SweepConfig::new(modulus, kind, sizes, trials, seed);
            if exclude_zero {
                cfg.exclude_zero = true;
            }
            if include_zero {
                cfg.exclude_zero = false;
            }
            cfg.output_path = Some(out);
            cfg.threads = cli.threads;
            cfg.timing = timing;
            let rows = run_sweep(&cfg)?;
            let failed = rows.iter().filter(|r| !r.verified).count();
            let min_ratio = rows.iter().map(|r| r.ratio).fold(f64::INFINITY, f64::min);
            eprintln!("{} rows, min ratio {min_ratio}, {failed} failed", rows.len());
            Ok(failed == 0)
        }
        Command::Exhaustive { p, k } => {
            let summary = run_exhaustive(p, k)?;
            emit(&summary)?;
            Ok(summary.violations == 0 && summary.unverified == 0)
        }
        Command::Spectral { p, set } => {
            let modulus = Modulus::new(p)?;
            modulus.require_prime()?;
            let parsed = parse_set_file(&set, &modulus)?;
            warn_duplicates(parsed.duplicates);
            let doc = spectral_doc(&parsed.set, parsed.duplicates)?;
            emit(&doc)?;
            Ok(doc.verified)
        }
        Command::ZmExtremal { p } => {
            let e = zm_extremal(p)?;
            let doc = ZmExtremalDoc::new(&e);
            emit(&doc)?;
            Ok(doc.sizes_match && e.report.verified())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("verification failed");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
