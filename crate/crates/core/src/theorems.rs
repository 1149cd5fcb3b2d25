//! Exact quadruple counts and the sum-product bound reports.
//!
//! Prime field: for `A ⊆ F_p \ {0}`,
//! `|A+A| |AA| >= (1/4) min{p|A|, |A|^4/p}`. The constant comes from the
//! master inequality `|A|^3 <= |AA||A|^2|A+A|/p + sqrt(p|AA||A|) sqrt(|A||A+A|)`:
//! if the first term is at least half of `|A|^3` then `|A+A||AA| >= p|A|/2`,
//! otherwise the second is and `|A+A||AA| >= |A|^4/(4p)`.
//!
//! Residue ring: for nonempty `A ⊆ Z/mZ`, with `D(m) = sum_{d|m, d<m} sqrt(d)`,
//! `|A+A| |AA| >= (1/64) min{m|A|, |A|^4/(m D(m)^2)}`. When `|A|^2 <= 4mD^2/d0`
//! the trivial branch gives a factor `1/4`; otherwise more than half of `A`
//! are units, and running the argument on the unit part loses `2^4 · 4`.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::residue::{gcd, min_gcd, unit_part, Modulus, ResidueSet, MODULUS_CAP};
use crate::set_algebra::{additive_rep, productset, quotient_rep, sumset_fast, MultiplicityVector, Sign};
use crate::spectral::{
    cauchy_schwarz_check, parseval_bound_check, per_divisor_check, quotient_sum_check, within_bound,
    BoundCheck, DivisorCheck,
};

/// Explicit constant for the prime-field bound.
pub const PRIME_CONSTANT: f64 = 0.25;
/// Explicit constant for the residue-ring bound.
pub const RING_CONSTANT: f64 = 1.0 / 64.0;
/// Work cap for [`count_quadruples_bruteforce`].
pub const BRUTEFORCE_CAP: u128 = 1_000_000_000;

fn require_zero_free_prime(a: &ResidueSet) -> Result<()> {
    a.modulus().require_prime()?;
    if a.contains(0) {
        Err(Error::ZeroElement)
    } else {
        Ok(())
    }
}

/// Number of `(x, a1, a2, y) ∈ AA × A × A × (A+A)` with `x a1^-1 + a2 = y`.
///
/// Computed as `sum_t q(t) w(t)` with `q` the quotient representation of
/// `AA` by `A` and `w(t) = #{(y, a2) : y - a2 = t}`.
pub fn count_quadruples(a: &ResidueSet) -> Result<u128> {
    require_zero_free_prime(a)?;
    let prod = productset(a, a)?;
    let sum = sumset_fast(a, a)?;
    let q = quotient_rep(&prod, a)?;
    let w = additive_rep(&sum, a, Sign::Minus)?;
    q.dot(&w)
}

/// Literal four-fold loop over `AA × A × A × (A+A)`; test oracle only.
pub fn count_quadruples_bruteforce(a: &ResidueSet) -> Result<u128> {
    require_zero_free_prime(a)?;
    let p = a.modulus().m();
    let prod = productset(a, a)?.to_vec();
    let sum = sumset_fast(a, a)?.to_vec();
    let elems = a.to_vec();
    let work = prod.len() as u128 * (elems.len() as u128).pow(2) * sum.len() as u128;
    if work > BRUTEFORCE_CAP {
        return Err(Error::CapExceeded { work, cap: BRUTEFORCE_CAP });
    }
    let inverses: Vec<u64> = elems
        .iter()
        .map(|&x| crate::residue::mod_inverse(x, a.modulus()))
        .collect::<Result<_>>()?;
    let mut count = 0u128;
    for &x in &prod {
        for &inv in &inverses {
            for &a2 in &elems {
                for &y in &sum {
                    if (x * inv % p + a2) % p == y {
                        count += 1;
                    }
                }
            }
        }
    }
    Ok(count)
}

/// Prime-field report.
///
/// Size fields describe the full `A`. Proof diagnostics (`j`, Fourier and
/// master-inequality fields) describe `A \ {0}`; `stripped_zero` records
/// whether `0` was removed.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct TheoremOneReport {
    pub p: u64,
    pub size_a: u64,
    pub size_sum: u64,
    pub size_prod: u64,
    pub lhs: u64,
    pub term_pa: f64,
    pub term_a4p: f64,
    pub bound: f64,
    pub ratio: f64,
    pub j: u128,
    pub j_lower: u128,
    pub fourier_max: f64,
    pub fourier_cap: f64,
    pub stripped_zero: bool,
    /// `|A'+A'| |A'A'| / min{p|A'|, |A'|^4/p}` for `A' = A \ {0}`; `None` if `A'` is empty.
    pub proof_ratio: Option<f64>,
    pub master_lhs: f64,
    pub master_term1: f64,
    pub master_term2: f64,
    pub master_holds: bool,
    pub cauchy_schwarz_lhs: f64,
    pub cauchy_schwarz_rhs: f64,
    pub constant_holds: bool,
}

impl TheoremOneReport {
    /// Every checked inequality holds.
    pub fn verified(&self) -> bool {
        self.constant_holds
            && self.j >= self.j_lower
            && within_bound(self.fourier_max, self.fourier_cap)
            && self.master_holds
            && within_bound(self.cauchy_schwarz_lhs, self.cauchy_schwarz_rhs)
    }
}

/// `4 |S||P| >= min{p n, n^4/p}` in exact integer arithmetic.
fn prime_constant_holds(p: u64, n: u64, sum: u64, prod: u64) -> bool {
    let lhs4 = 4 * sum as u128 * prod as u128;
    lhs4 >= p as u128 * n as u128 || lhs4 * p as u128 >= (n as u128).pow(4)
}

fn bound_terms(modulus: f64, n: f64, loss: f64) -> (f64, f64, f64) {
    let linear = modulus * n;
    let quartic = n * n * n * n / (modulus * loss);
    (linear, quartic, linear.min(quartic))
}

pub fn theorem1_report(a: &ResidueSet) -> Result<TheoremOneReport> {
    let modulus = a.modulus();
    modulus.require_prime()?;
    if a.is_empty() {
        return Err(Error::EmptyInput);
    }
    let p = modulus.m();
    let sum = sumset_fast(a, a)?;
    let prod = productset(a, a)?;
    let n = a.len() as u64;
    let (size_sum, size_prod) = (sum.len() as u64, prod.len() as u64);
    let lhs = size_sum * size_prod;
    let (term_pa, term_a4p, bound) = bound_terms(p as f64, n as f64, 1.0);

    let stripped_zero = a.contains(0);
    let core = if stripped_zero { a.without(0) } else { a.clone() };
    let (core_sum, core_prod) =
        if stripped_zero { (sumset_fast(&core, &core)?, productset(&core, &core)?) } else { (sum, prod) };
    let k = core.len() as u64;
    let (ks, kp) = (core_sum.len() as u64, core_prod.len() as u64);

    let (j, fourier_max, fourier_cap, cs) = if core.is_empty() {
        (0, 0.0, 0.0, BoundCheck::new(0.0, 0.0))
    } else {
        let fourier = quotient_sum_check(&core_prod, &core)?;
        (count_quadruples(&core)?, fourier.max, fourier.cap, cauchy_schwarz_check(&core, &core_sum)?)
    };
    let kf = k as f64;
    let master_lhs = kf * kf * kf;
    let master_term1 = kp as f64 * kf * kf * ks as f64 / p as f64;
    let master_term2 = libm::sqrt(p as f64 * kp as f64 * kf) * libm::sqrt(kf * ks as f64);
    let proof_ratio = (k > 0).then(|| {
        let (_, _, b) = bound_terms(p as f64, kf, 1.0);
        (ks * kp) as f64 / b
    });

    Ok(TheoremOneReport {
        p,
        size_a: n,
        size_sum,
        size_prod,
        lhs,
        term_pa,
        term_a4p,
        bound,
        ratio: lhs as f64 / bound,
        j,
        j_lower: (k as u128).pow(3),
        fourier_max,
        fourier_cap,
        stripped_zero,
        proof_ratio,
        master_lhs,
        master_term1,
        master_term2,
        master_holds: within_bound(master_lhs, master_term1 + master_term2),
        cauchy_schwarz_lhs: cs.lhs,
        cauchy_schwarz_rhs: cs.rhs,
        constant_holds: k == 0 || prime_constant_holds(p, k, ks, kp),
    })
}

/// Which side of the `|A|^2 > 4 m D(m)^2 / d0` threshold the set falls on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize), serde(rename_all = "snake_case"))]
pub enum Branch {
    /// `|A|^2 <= 4mD^2/d0`: the bound follows from `|AA| >= |A|/d0` alone.
    TrivialD0,
    /// More than half of `A` are units; the character-sum argument runs on them.
    UnitReduced,
}

/// Residue-ring report.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct TheoremTwoReport {
    pub m: u64,
    pub d0: u64,
    pub size_a: u64,
    pub size_unit_a: u64,
    pub size_sum: u64,
    pub size_prod: u64,
    /// `D(m)`
    pub d_sum: f64,
    pub lhs: u64,
    pub term_ma: f64,
    pub term_ring: f64,
    pub bound: f64,
    pub ratio: f64,
    pub nonunit_count: u64,
    pub nonunit_cap: f64,
    pub branch: Branch,
    /// `|AA| >= |A| / d0`
    pub dilation_holds: bool,
    /// `|A ∩ Z_m^*| > |A|/2`, only evaluated on the unit-reduced branch.
    pub unit_majority: Option<bool>,
    pub constant_holds: bool,
}

impl TheoremTwoReport {
    pub fn verified(&self) -> bool {
        self.constant_holds && self.dilation_holds && self.unit_majority != Some(false)
    }
}

pub fn theorem2_report(a: &ResidueSet) -> Result<TheoremTwoReport> {
    let modulus = a.modulus();
    let d0 = min_gcd(a)?;
    let m = modulus.m();
    let d_sum = modulus.divisor_halfpower_sum();
    let sum = sumset_fast(a, a)?;
    let prod = productset(a, a)?;
    let units = unit_part(a);
    let n = a.len() as u64;
    let (size_sum, size_prod) = (sum.len() as u64, prod.len() as u64);
    let lhs = size_sum * size_prod;
    let (term_ma, term_ring, bound) = bound_terms(m as f64, n as f64, d_sum * d_sum);

    let threshold = 4.0 * m as f64 * d_sum * d_sum;
    let branch = if (n as f64) * (n as f64) * d0 as f64 > threshold {
        Branch::UnitReduced
    } else {
        Branch::TrivialD0
    };
    let size_unit_a = units.len() as u64;
    let nonunit = nonunit_bound_check(a);

    let lhs64 = 64 * lhs as u128;
    let constant_holds = lhs64 >= m as u128 * n as u128 || within_bound(term_ring, lhs64 as f64);

    Ok(TheoremTwoReport {
        m,
        d0,
        size_a: n,
        size_unit_a,
        size_sum,
        size_prod,
        d_sum,
        lhs,
        term_ma,
        term_ring,
        bound,
        ratio: lhs as f64 / bound,
        nonunit_count: nonunit.count,
        nonunit_cap: nonunit.final_cap,
        branch,
        dilation_holds: size_prod * d0 >= n,
        unit_majority: (branch == Branch::UnitReduced).then_some(2 * size_unit_a > n),
        constant_holds,
    })
}

/// Count of non-units in `A` against the two caps of the unit-reduction step:
/// `count <= sum_{d|m, d >= max(d0,2)} m/d <= sqrt(m/d0) D(m)`.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct NonunitCheck {
    pub d0: u64,
    pub count: u64,
    pub intermediate_cap: u64,
    pub final_cap: f64,
    pub intermediate_holds: bool,
    pub final_holds: bool,
}

/// For an empty set `d0` is taken as `m`.
pub fn nonunit_bound_check(a: &ResidueSet) -> NonunitCheck {
    let modulus = a.modulus();
    let m = modulus.m();
    let d0 = min_gcd(a).unwrap_or(m);
    let floor = d0.max(2);
    let count = a.iter().filter(|&x| gcd(x, m) >= floor).count() as u64;
    let intermediate_cap: u64 = modulus.divisors().iter().filter(|&&d| d >= floor).map(|&d| m / d).sum();
    let final_cap = libm::sqrt(m as f64 / d0 as f64) * modulus.divisor_halfpower_sum();
    NonunitCheck {
        d0,
        count,
        intermediate_cap,
        final_cap,
        intermediate_holds: count <= intermediate_cap,
        final_holds: within_bound(intermediate_cap as f64, final_cap),
    }
}

/// Intermediate inequalities of the ring argument, evaluated on the unit part
/// `U = A ∩ Z_m^*` for every proper divisor `d` of `m`.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct RingChain {
    pub nonunit: NonunitCheck,
    /// `max |sum_{x∈UU, a∈U} e_{m/d}(n x a^-1)|^2 <= d m |UU| |U|`
    pub divisor_checks: Vec<DivisorCheck>,
    /// `sum_{n=1}^{m/d} |Û(n)|^2 <= m |U|`
    pub parseval_units: Vec<BoundCheck>,
    /// `sum_{n=1}^{m/d} |(U+U)^(n)|^2 <= m |U+U|`
    pub parseval_unit_sums: Vec<BoundCheck>,
}

impl RingChain {
    pub fn all_hold(&self) -> bool {
        self.nonunit.intermediate_holds
            && self.nonunit.final_holds
            && self.divisor_checks.iter().all(|c| c.holds)
            && self.parseval_units.iter().all(|c| c.holds)
            && self.parseval_unit_sums.iter().all(|c| c.holds)
    }
}

pub fn ring_chain(a: &ResidueSet) -> Result<RingChain> {
    let modulus = a.modulus();
    let m = modulus.m();
    let units = unit_part(a);
    let unit_prod = productset(&units, &units)?;
    let units_v = MultiplicityVector::from(&units);
    let sums_v = MultiplicityVector::from(&sumset_fast(&units, &units)?);
    let mut chain = RingChain {
        nonunit: nonunit_bound_check(a),
        divisor_checks: Vec::new(),
        parseval_units: Vec::new(),
        parseval_unit_sums: Vec::new(),
    };
    for &d in modulus.proper_divisors() {
        chain.divisor_checks.push(per_divisor_check(&unit_prod, &units, d)?);
        chain.parseval_units.push(parseval_bound_check(&units_v, m / d)?);
        chain.parseval_unit_sums.push(parseval_bound_check(&sums_v, m / d)?);
    }
    Ok(chain)
}

/// `A = {p x : x ∈ [0, p)}` inside `Z/p^2 Z`, where `|A| = |A+A| = p` and `|AA| = 1`.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct ExtremalRingExample {
    pub p: u64,
    pub m: u64,
    pub a: ResidueSet,
    pub size_a: u64,
    pub size_sum: u64,
    pub size_prod: u64,
    pub report: TheoremTwoReport,
}

impl ExtremalRingExample {
    /// Sizes are exactly `(p, p, 1)`.
    pub fn sizes_match(&self) -> bool {
        (self.size_a, self.size_sum, self.size_prod) == (self.p, self.p, 1)
    }
}

pub fn zm_extremal(p: u64) -> Result<ExtremalRingExample> {
    Modulus::new(p)?.require_prime()?;
    let m = p * p;
    if m > MODULUS_CAP {
        return Err(Error::CapExceeded { work: m as u128, cap: MODULUS_CAP as u128 });
    }
    let ring = Modulus::new(m)?;
    let a = ResidueSet::from_residues(&ring, (0..p).map(|x| p * x))?;
    let report = theorem2_report(&a)?;
    Ok(ExtremalRingExample {
        p,
        m,
        size_a: a.len() as u64,
        size_sum: report.size_sum,
        size_prod: report.size_prod,
        a,
        report,
    })
}
