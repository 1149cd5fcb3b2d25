//! Flat JSON documents emitted by the subcommands.

use serde::Serialize;
use sumprod_core::construct::ExtremalConstruction;
use sumprod_core::spectral::{cauchy_schwarz_check, quotient_sum_check, spectral_quadruple_count, REL_TOL};
use sumprod_core::set_algebra::{productset, sumset_fast};
use sumprod_core::theorems::{
    count_quadruples, ring_chain, ExtremalRingExample, TheoremOneReport, TheoremTwoReport,
};
use sumprod_core::ResidueSet;

use crate::error::CliError;

#[derive(Clone, Debug, Serialize)]
pub struct ConstructionDoc<'a> {
    #[serde(flatten)]
    pub construction: &'a ExtremalConstruction,
    pub structural_cap: u64,
    /// `M^2 <= p · window_count`
    pub window_pigeonhole_holds: bool,
    pub guarantees_hold: bool,
}

impl<'a> ConstructionDoc<'a> {
    pub fn new(c: &'a ExtremalConstruction) -> Self {
        let pigeonhole = c.window_count * c.p >= c.window_len * c.window_len;
        let guarantees = pigeonhole && c.a.len() as u64 == c.n && c.max_size <= c.structural_cap();
        ConstructionDoc {
            construction: c,
            structural_cap: c.structural_cap(),
            window_pigeonhole_holds: pigeonhole,
            guarantees_hold: guarantees,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PrimeDoc<'a> {
    #[serde(flatten)]
    pub report: &'a TheoremOneReport,
    pub duplicates: usize,
    pub verified: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct RingDoc<'a> {
    #[serde(flatten)]
    pub report: &'a TheoremTwoReport,
    pub duplicates: usize,
    pub nonunit_intermediate_cap: u64,
    pub divisor_checks: usize,
    pub divisor_checks_failed: usize,
    pub parseval_checks_failed: usize,
    pub chain_holds: bool,
    pub verified: bool,
}

impl<'a> RingDoc<'a> {
    pub fn build(report: &'a TheoremTwoReport, a: &ResidueSet, duplicates: usize) -> Result<Self, CliError> {
        let chain = ring_chain(a)?;
        let chain_holds = chain.all_hold();
        Ok(RingDoc {
            report,
            duplicates,
            nonunit_intermediate_cap: chain.nonunit.intermediate_cap,
            divisor_checks: chain.divisor_checks.len(),
            divisor_checks_failed: chain.divisor_checks.iter().filter(|c| !c.holds).count(),
            parseval_checks_failed: chain
                .parseval_units
                .iter()
                .chain(&chain.parseval_unit_sums)
                .filter(|c| !c.holds)
                .count(),
            chain_holds,
            verified: report.verified() && chain_holds,
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ZmExtremalDoc<'a> {
    pub p: u64,
    pub a: &'a ResidueSet,
    pub sizes_match: bool,
    #[serde(flatten)]
    pub report: &'a TheoremTwoReport,
}

impl<'a> ZmExtremalDoc<'a> {
    pub fn new(e: &'a ExtremalRingExample) -> Self {
        ZmExtremalDoc { p: e.p, a: &e.a, sizes_match: e.sizes_match(), report: &e.report }
    }
}

/// Spectral evaluation of the quadruple count and the two character-sum
/// inequalities, on `A \ {0}`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpectralDoc {
    pub p: u64,
    pub size_a: u64,
    pub stripped_zero: bool,
    pub duplicates: usize,
    pub j: u128,
    pub spectral_j: f64,
    pub imaginary_residue: f64,
    pub identity_holds: bool,
    pub fourier_frequency: u64,
    pub fourier_max: f64,
    pub fourier_cap: f64,
    pub fourier_holds: bool,
    pub cauchy_schwarz_lhs: f64,
    pub cauchy_schwarz_rhs: f64,
    pub cauchy_schwarz_holds: bool,
    pub verified: bool,
}

pub fn spectral_doc(a: &ResidueSet, duplicates: usize) -> Result<SpectralDoc, CliError> {
    let modulus = a.modulus();
    modulus.require_prime()?;
    let stripped_zero = a.contains(0);
    let core = a.without(0);
    if core.is_empty() {
        return Err(sumprod_core::Error::EmptyInput.into());
    }
    let j = count_quadruples(&core)?;
    let spectral = spectral_quadruple_count(&core)?;
    let identity_holds = (spectral.value - j as f64).abs() <= REL_TOL * j as f64;
    let fourier = quotient_sum_check(&productset(&core, &core)?, &core)?;
    let cs = cauchy_schwarz_check(&core, &sumset_fast(&core, &core)?)?;
    Ok(SpectralDoc {
        p: modulus.m(),
        size_a: core.len() as u64,
        stripped_zero,
        duplicates,
        j,
        spectral_j: spectral.value,
        imaginary_residue: spectral.imaginary_residue,
        identity_holds,
        fourier_frequency: fourier.frequency,
        fourier_max: fourier.max,
        fourier_cap: fourier.cap,
        fourier_holds: fourier.holds,
        cauchy_schwarz_lhs: cs.lhs,
        cauchy_schwarz_rhs: cs.rhs,
        cauchy_schwarz_holds: cs.holds,
        verified: identity_holds && fourier.holds && cs.holds,
    })
}
