//! Seeded random sweeps. Each `(size, trial)` pair gets its own ChaCha8 stream
//! seeded by [`mix_seed`], so rows do not depend on scheduling or thread count.

use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use rand::seq::index;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use sumprod_core::residue::unit_part;
use sumprod_core::set_algebra::productset;
use sumprod_core::spectral::quotient_sum_check;
use sumprod_core::theorems::{theorem1_report, theorem2_report};
use sumprod_core::{Modulus, ResidueSet};

use crate::error::CliError;

pub const CSV_HEADER: [&str; 14] = [
    "modulus",
    "kind",
    "size",
    "trial",
    "derived_seed",
    "sum_size",
    "prod_size",
    "lhs",
    "bound",
    "ratio",
    "J",
    "fourier_max",
    "fourier_cap",
    "elapsed_micros",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    PrimeField,
    ResidueRing,
}

impl Kind {
    pub fn label(self) -> &'static str {
        match self {
            Kind::PrimeField => "prime",
            Kind::ResidueRing => "ring",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepConfig {
    pub modulus: u64,
    pub kind: Kind,
    pub sizes: Vec<u64>,
    pub trials_per_size: u64,
    pub seed: u64,
    /// CSV destination; `None` only computes rows.
    pub output_path: Option<PathBuf>,
    pub exclude_zero: bool,
    /// Worker threads, `0` for the machine default.
    pub threads: usize,
    /// Fill `elapsed_micros`. Off by default because timings are not reproducible.
    pub timing: bool,
}

impl SweepConfig {
    /// Zero is excluded for prime fields and kept for rings.
    pub fn new(modulus: u64, kind: Kind, sizes: Vec<u64>, trials_per_size: u64, seed: u64) -> Self {
        SweepConfig {
            modulus,
            kind,
            sizes,
            trials_per_size,
            seed,
            output_path: None,
            exclude_zero: kind == Kind::PrimeField,
            threads: 0,
            timing: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepRow {
    pub modulus: u64,
    pub kind: Kind,
    pub size: u64,
    pub trial_index: u64,
    pub derived_seed: u64,
    pub size_sum: u64,
    pub size_prod: u64,
    pub lhs: u64,
    pub bound: f64,
    pub ratio: f64,
    /// Quadruple count, prime fields only.
    pub j: Option<u128>,
    pub fourier_max: f64,
    pub fourier_cap: f64,
    pub elapsed_micros: Option<u128>,
    /// The underlying report verified every inequality it checks.
    pub verified: bool,
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// `splitmix64(splitmix64(seed ^ size) ^ trial)`, where `splitmix64` is the
/// standard SplitMix64 step (add the golden-ratio increment, then the
/// Stafford variant-13 finalizer).
pub fn mix_seed(seed: u64, size: u64, trial: u64) -> u64 {
    splitmix64(splitmix64(seed ^ size) ^ trial)
}

/// Uniform `size`-subset of `[0, m)` (or `[1, m)` with `exclude_zero`).
pub fn draw_subset(modulus: &Modulus, size: u64, exclude_zero: bool, derived_seed: u64) -> ResidueSet {
    let offset = u64::from(exclude_zero);
    let available = (modulus.m() - offset) as usize;
    let mut rng = ChaCha8Rng::seed_from_u64(derived_seed);
    let picks = index::sample(&mut rng, available, size as usize);
    ResidueSet::from_reduced(modulus, picks.into_iter().map(|i| i as u64 + offset))
}

fn validate(cfg: &SweepConfig) -> Result<Modulus, CliError> {
    let modulus = Modulus::new(cfg.modulus)?;
    if cfg.kind == Kind::PrimeField {
        modulus.require_prime()?;
    }
    if cfg.trials_per_size == 0 {
        return Err(CliError::Config("trials must be at least 1".into()));
    }
    if cfg.sizes.is_empty() {
        return Err(CliError::Config("no sizes given".into()));
    }
    let available = cfg.modulus - u64::from(cfg.exclude_zero);
    if let Some(&s) = cfg.sizes.iter().find(|&&s| s == 0 || s > available) {
        return Err(CliError::Config(format!("size {s} is outside [1, {available}]")));
    }
    Ok(modulus)
}

/// One row, computed from scratch.
pub fn trial_row(cfg: &SweepConfig, modulus: &Modulus, size: u64, trial: u64) -> Result<SweepRow, CliError> {
    let start = Instant::now();
    let derived_seed = mix_seed(cfg.seed, size, trial);
    let a = draw_subset(modulus, size, cfg.exclude_zero, derived_seed);
    let mut row = match cfg.kind {
        Kind::PrimeField => {
            let r = theorem1_report(&a)?;
            SweepRow {
                modulus: cfg.modulus,
                kind: cfg.kind,
                size,
                trial_index: trial,
                derived_seed,
                size_sum: r.size_sum,
                size_prod: r.size_prod,
                lhs: r.lhs,
                bound: r.bound,
                ratio: r.ratio,
                j: Some(r.j),
                fourier_max: r.fourier_max,
                fourier_cap: r.fourier_cap,
                elapsed_micros: None,
                verified: r.verified(),
            }
        }
        Kind::ResidueRing => {
            let r = theorem2_report(&a)?;
            let units = unit_part(&a);
            let (fourier_max, fourier_cap, fourier_holds) = if units.is_empty() {
                (0.0, 0.0, true)
            } else {
                let q = quotient_sum_check(&productset(&units, &units)?, &units)?;
                (q.max, q.cap, q.holds)
            };
            SweepRow {
                modulus: cfg.modulus,
                kind: cfg.kind,
                size,
                trial_index: trial,
                derived_seed,
                size_sum: r.size_sum,
                size_prod: r.size_prod,
                lhs: r.lhs,
                bound: r.bound,
                ratio: r.ratio,
                j: None,
                fourier_max,
                fourier_cap,
                elapsed_micros: None,
                verified: r.verified() && fourier_holds,
            }
        }
    };
    if cfg.timing {
        row.elapsed_micros = Some(start.elapsed().as_micros());
    }
    Ok(row)
}

/// All rows ordered by `(size, trial)`; writes the CSV when `output_path` is set.
pub fn run_sweep(cfg: &SweepConfig) -> Result<Vec<SweepRow>, CliError> {
    let modulus = validate(cfg)?;
    let jobs: Vec<(u64, u64)> =
        cfg.sizes.iter().flat_map(|&s| (0..cfg.trials_per_size).map(move |t| (s, t))).collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.threads)
        .build()
        .map_err(|e| CliError::Config(format!("thread pool: {e}")))?;
    // indexed collect keeps job order whatever the completion order
    let rows = pool.install(|| {
        jobs.par_iter().map(|&(s, t)| trial_row(cfg, &modulus, s, t)).collect::<Result<Vec<_>, _>>()
    })?;
    if let Some(path) = &cfg.output_path {
        let file = std::fs::File::create(path)
            .map_err(|source| CliError::Write { path: path.clone(), source })?;
        write_csv(&rows, std::io::BufWriter::new(file))?;
    }
    Ok(rows)
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

/// Header plus one record per row, LF line endings, floats in shortest
/// round-trip form.
pub fn write_csv<W: Write>(rows: &[SweepRow], out: W) -> Result<(), CliError> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in rows {
        w.write_record([
            r.modulus.to_string(),
            r.kind.label().to_string(),
            r.size.to_string(),
            r.trial_index.to_string(),
            r.derived_seed.to_string(),
            r.size_sum.to_string(),
            r.size_prod.to_string(),
            r.lhs.to_string(),
            r.bound.to_string(),
            r.ratio.to_string(),
            opt(r.j),
            r.fourier_max.to_string(),
            r.fourier_cap.to_string(),
            opt(r.elapsed_micros),
        ])?;
    }
    w.flush().map_err(|e| CliError::Csv(e.into()))?;
    Ok(())
}
