//! Every `k`-subset of `F_p \ {0}`, checked against the prime-field bound.

use serde::Serialize;
use sumprod_core::theorems::theorem1_report;
use sumprod_core::{Modulus, ResidueSet};

use crate::error::CliError;

pub const MAX_PRIME: u64 = 19;
pub const MAX_SUBSETS: u128 = 10_000_000;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExhaustiveSummary {
    pub p: u64,
    pub k: u64,
    pub subsets: u64,
    /// Smallest `|A+A||AA| / min{p|A|, |A|^4/p}`.
    pub min_ratio: f64,
    /// First subset (in increasing bitmask order) attaining `min_ratio`.
    pub witness: Vec<u64>,
    /// Subsets with `4|A+A||AA| < min{p|A|, |A|^4/p}`.
    pub violations: u64,
    /// Subsets where some other checked inequality failed.
    pub unverified: u64,
}

pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Calls `f` on every `k`-bit mask below `2^n` in increasing order (Gosper's hack).
pub fn for_each_k_subset(n: u32, k: u32, mut f: impl FnMut(u64)) {
    if k == 0 || k > n || n >= 64 {
        return;
    }
    let limit = 1u64 << n;
    let mut mask = (1u64 << k) - 1;
    while mask < limit {
        f(mask);
        let c = mask & mask.wrapping_neg();
        let r = mask + c;
        mask = (((r ^ mask) >> 2) / c) | r;
    }
}

pub fn run_exhaustive(p: u64, k: u64) -> Result<ExhaustiveSummary, CliError> {
    let modulus = Modulus::new(p)?;
    modulus.require_prime()?;
    if p > MAX_PRIME {
        return Err(CliError::Config(format!("exhaustive search is limited to p <= {MAX_PRIME}, got {p}")));
    }
    if k == 0 || k > p - 1 {
        return Err(CliError::Config(format!("k must lie in [1, {}], got {k}", p - 1)));
    }
    let count = binomial(p - 1, k);
    if count > MAX_SUBSETS {
        return Err(CliError::Config(format!("C({}, {k}) = {count} exceeds the cap {MAX_SUBSETS}", p - 1)));
    }
    let mut summary = ExhaustiveSummary {
        p,
        k,
        subsets: 0,
        min_ratio: f64::INFINITY,
        witness: Vec::new(),
        violations: 0,
        unverified: 0,
    };
    let mut failure = None;
    for_each_k_subset((p - 1) as u32, k as u32, |mask| {
        if failure.is_some() {
            return;
        }
        let elems: Vec<u64> = (0..p - 1).filter(|i| mask >> i & 1 == 1).map(|i| i + 1).collect();
        let report = match ResidueSet::from_residues(&modulus, elems.iter().copied()).and_then(|a| theorem1_report(&a)) {
            Ok(r) => r,
            Err(e) => {
                failure = Some(e);
                return;
            }
        };
        summary.subsets += 1;
        if report.ratio < summary.min_ratio {
            summary.min_ratio = report.ratio;
            summary.witness = elems;
        }
        summary.violations += u64::from(!report.constant_holds);
        summary.unverified += u64::from(!report.verified());
    });
    if let Some(e) = failure {
        return Err(e.into());
    }
    Ok(summary)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gosper_enumerates_all_subsets_in_order() {
        for n in 1..=10u32 {
            for k in 1..=n {
                let mut seen = Vec::new();
                for_each_k_subset(n, k, |m| seen.push(m));
                let expected: Vec<u64> = (0..1u64 << n).filter(|m| m.count_ones() == k).collect();
                assert_eq!(seen, expected, "n={n} k={k}");
                assert_eq!(seen.len() as u128, binomial(n as u64, k as u64));
            }
        }
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(4, 2), 6);
        assert_eq!(binomial(18, 9), 48_620);
        assert_eq!(binomial(3, 5), 0);
        assert_eq!(binomial(60, 30), 118_264_581_564_861_424);
    }

    #[test]
    fn preconditions() {
        assert!(matches!(run_exhaustive(23, 11), Err(CliError::Config(_))));
        assert!(matches!(run_exhaustive(23, 1), Err(CliError::Config(_))));
        assert!(matches!(run_exhaustive(9, 2), Err(CliError::Core(_))));
        assert!(matches!(run_exhaustive(7, 7), Err(CliError::Config(_))));
        assert!(matches!(run_exhaustive(7, 0), Err(CliError::Config(_))));
    }
}
