//! Additive-character transforms `Ŝ(n) = sum_t c(t) e_q(nt)`, `e_q(x) = exp(2πi x/q)`,
//! and numerical checks of the character-sum inequalities used to bound the
//! quadruple count.
//!
//! All one-sided checks allow a relative slack of [`REL_TOL`] so that exact
//! equality cases survive rounding.

mod fft;

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::residue::{gcd, ResidueSet};
use crate::set_algebra::{productset, quotient_rep, sumset, unit_quotient_rep, MultiplicityVector};

/// Relative tolerance for identities and one-sided bounds.
pub const REL_TOL: f64 = 1e-9;

/// Periods up to this are transformed by direct summation; larger ones use the chirp path.
pub const DIRECT_LIMIT: u64 = 4096;

/// `|z|` through `libm` so results do not depend on which float backend
/// feature unification picks for `num-complex`.
#[inline]
pub fn magnitude(z: Complex64) -> f64 {
    libm::hypot(z.re, z.im)
}

/// `lhs <= rhs · (1 + REL_TOL)`.
#[inline]
pub fn within_bound(lhs: f64, rhs: f64) -> bool {
    lhs <= rhs * (1.0 + REL_TOL)
}

/// Spectrum of a count vector over the period `q`.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectrumVector {
    period: u64,
    amplitudes: Vec<Complex64>,
    source_mass: u64,
}

impl SpectrumVector {
    pub fn period(&self) -> u64 {
        self.period
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    /// Amplitude at any integer frequency (taken mod `q`).
    pub fn at(&self, n: u64) -> Complex64 {
        self.amplitudes[(n % self.period) as usize]
    }

    pub fn source_mass(&self) -> u64 {
        self.source_mass
    }

    /// `sum_n |Ŝ(n)|^2` over one full period.
    pub fn energy(&self) -> f64 {
        pairwise_sum(&self.amplitudes.iter().map(|a| a.norm_sqr()).collect::<Vec<_>>())
    }
}

/// Fixed-order pairwise summation.
pub fn pairwise_sum(xs: &[f64]) -> f64 {
    if xs.len() <= 8 {
        return xs.iter().sum();
    }
    let (l, r) = xs.split_at(xs.len() / 2);
    pairwise_sum(l) + pairwise_sum(r)
}

fn pairwise_sum_complex(xs: &[Complex64]) -> Complex64 {
    if xs.len() <= 8 {
        return xs.iter().sum();
    }
    let (l, r) = xs.split_at(xs.len() / 2);
    pairwise_sum_complex(l) + pairwise_sum_complex(r)
}

/// Direct `O(q · |support|)` transform of counts indexed by residue mod `q`.
pub fn dft_direct(counts: &[u64]) -> Vec<Complex64> {
    let q = counts.len() as u64;
    let roots = fft::unit_roots(q);
    let mut out = vec![Complex64::new(0.0, 0.0); q as usize];
    for (t, &c) in counts.iter().enumerate().filter(|(_, &c)| c > 0) {
        let (t, c) = (t as u64, c as f64);
        // k = n·t mod q, stepped instead of recomputed
        let mut k = 0u64;
        for slot in out.iter_mut() {
            *slot += roots[k as usize] * c;
            k += t;
            if k >= q {
                k -= q;
            }
        }
    }
    out
}

/// Chirp-transform path, `O(q log q)`.
pub fn dft_chirp(counts: &[u64]) -> Vec<Complex64> {
    let input: Vec<Complex64> = counts.iter().map(|&c| Complex64::new(c as f64, 0.0)).collect();
    fft::chirp_transform(&input)
}

fn spectrum_of_reduced(counts: &[u64]) -> SpectrumVector {
    let q = counts.len() as u64;
    let mut amplitudes = if q <= DIRECT_LIMIT { dft_direct(counts) } else { dft_chirp(counts) };
    let mass: u64 = counts.iter().sum();
    // the zero frequency is the plain sum of the counts
    if let Some(a0) = amplitudes.first_mut() {
        *a0 = Complex64::new(mass as f64, 0.0);
    }
    SpectrumVector { period: q, amplitudes, source_mass: mass }
}

/// Spectrum of `v` reduced mod `q`; `q` must divide `m`.
pub fn dft_counts(v: &MultiplicityVector, q: u64) -> Result<SpectrumVector> {
    Ok(spectrum_of_reduced(&v.reduce(q)?))
}

/// Spectrum of a set's indicator over its full modulus.
pub fn dft_set(set: &ResidueSet) -> SpectrumVector {
    dft_counts(&MultiplicityVector::from(set), set.modulus().m()).expect("m divides m")
}

/// Largest `|Ŝ(n)|` over `n != 0` (restricted to `gcd(n, q) = 1` when
/// `units_only`), ties to the smallest `n`. `None` when no frequency qualifies.
pub fn max_nontrivial(spec: &SpectrumVector, units_only: bool) -> Option<(u64, f64)> {
    let q = spec.period;
    let admissible = |n: &u64| !units_only || gcd(*n, q) == 1;
    let best = (1..q).filter(admissible).map(|n| magnitude(spec.at(n))).fold(None, |acc: Option<f64>, x| {
        Some(acc.map_or(x, |a| a.max(x)))
    })?;
    // magnitudes that agree up to rounding count as ties
    (1..q)
        .filter(admissible)
        .find(|&n| magnitude(spec.at(n)) >= best * (1.0 - REL_TOL))
        .map(|n| (n, best))
}

/// `J` evaluated through characters, with its imaginary rounding residue.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpectralCount {
    pub value: f64,
    pub imaginary_residue: f64,
}

/// `J = (1/p) sum_n Q̂(n) Â(n) conj(Ŝ(n))` with `Q = quotient_rep(AA, A)`,
/// `S = A + A`. Prime modulus and `0 ∉ A` required.
pub fn spectral_quadruple_count(a: &ResidueSet) -> Result<SpectralCount> {
    let modulus = a.modulus();
    modulus.require_prime()?;
    if a.contains(0) {
        return Err(Error::ZeroElement);
    }
    let p = modulus.m();
    let prod = productset(a, a)?;
    let sum = sumset(a, a)?;
    let q_hat = dft_counts(&quotient_rep(&prod, a)?, p)?;
    let a_hat = dft_set(a);
    let s_hat = dft_set(&sum);
    let terms: Vec<Complex64> = (0..p as usize)
        .map(|n| q_hat.amplitudes[n] * a_hat.amplitudes[n] * s_hat.amplitudes[n].conj())
        .collect();
    let total = pairwise_sum_complex(&terms) / p as f64;
    Ok(SpectralCount { value: total.re, imaginary_residue: total.im })
}

/// One-sided inequality with its two sides.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct BoundCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

impl BoundCheck {
    pub fn new(lhs: f64, rhs: f64) -> Self {
        BoundCheck { lhs, rhs, holds: within_bound(lhs, rhs) }
    }
}

/// `sum_{n=1}^{q} |Ŝ_q(n)|^2 <= m · sum_t counts[t]^2` for `q | m`.
///
/// For a set the right side is `m|S|`. The `n = q` term is the trivial
/// character and is kept, matching the summation range `1..=q`.
pub fn parseval_bound_check(source: &MultiplicityVector, q: u64) -> Result<BoundCheck> {
    let spec = dft_counts(source, q)?;
    let mut norms: Vec<f64> = spec.amplitudes[1..].iter().map(|a| a.norm_sqr()).collect();
    norms.push(spec.amplitudes[0].norm_sqr());
    let lhs = pairwise_sum(&norms);
    let rhs = source.modulus().m() as f64 * source.sum_of_squares() as f64;
    Ok(BoundCheck::new(lhs, rhs))
}

/// Largest character sum `|sum_{x∈X, a∈A} e_m(n x a^-1)|` over frequencies
/// coprime to `m`, against `sqrt(m |X| |A|)`. Elements of `A` must be units.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuotientSumCheck {
    pub frequency: u64,
    pub max: f64,
    pub cap: f64,
    pub holds: bool,
}

pub fn quotient_sum_check(x: &ResidueSet, a: &ResidueSet) -> Result<QuotientSumCheck> {
    let m = a.modulus().m();
    let rep = if a.modulus().is_prime() { quotient_rep(x, a)? } else { unit_quotient_rep(x, a)? };
    let spec = dft_counts(&rep, m)?;
    let (frequency, max) = max_nontrivial(&spec, true).unwrap_or((0, 0.0));
    let cap = libm::sqrt(m as f64 * x.len() as f64 * a.len() as f64);
    Ok(QuotientSumCheck { frequency, max, cap, holds: within_bound(max, cap) })
}

/// `sum_{n=0}^{p-1} |Â(n)| |Ŝ(n)| <= sqrt(p|A|) sqrt(p|S|)`.
pub fn cauchy_schwarz_check(a: &ResidueSet, s: &ResidueSet) -> Result<BoundCheck> {
    a.check_same_ring(s)?;
    let p = a.modulus().m() as f64;
    let a_hat = dft_set(a);
    let s_hat = dft_set(s);
    let terms: Vec<f64> =
        a_hat.amplitudes.iter().zip(&s_hat.amplitudes).map(|(x, y)| magnitude(*x) * magnitude(*y)).collect();
    let rhs = libm::sqrt(p * a.len() as f64) * libm::sqrt(p * s.len() as f64);
    Ok(BoundCheck::new(pairwise_sum(&terms), rhs))
}

/// Per-divisor square bound: for `d | m, d < m`, `q = m/d`,
/// `max over gcd(n,q)=1 of |sum_{x∈X, a∈A} e_q(n x a^-1)|^2 <= d·m·|X|·|A|`.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct DivisorCheck {
    pub d: u64,
    pub q: u64,
    pub max_sq: f64,
    pub cap: f64,
    pub holds: bool,
}

pub fn per_divisor_check(x: &ResidueSet, units: &ResidueSet, d: u64) -> Result<DivisorCheck> {
    let m = units.modulus().m();
    if d == 0 || !m.is_multiple_of(d) || d == m {
        return Err(Error::InvalidPeriod { q: d, modulus: m });
    }
    let q = m / d;
    let spec = dft_counts(&unit_quotient_rep(x, units)?, q)?;
    let max = max_nontrivial(&spec, true).map_or(0.0, |(_, v)| v);
    let max_sq = max * max;
    let cap = d as f64 * m as f64 * x.len() as f64 * units.len() as f64;
    Ok(DivisorCheck { d, q, max_sq, cap, holds: within_bound(max_sq, cap) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::residue::Modulus;
    use crate::set_algebra::MultiplicityVector;

    fn md(m: u64) -> Modulus {
        Modulus::new(m).unwrap()
    }

    fn set(m: u64, xs: &[u64]) -> ResidueSet {
        ResidueSet::from_residues(&md(m), xs.iter().copied()).unwrap()
    }

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    #[test]
    fn flat_and_orthogonal_spectra() {
        let delta = dft_set(&set(11, &[0]));
        assert!(delta.amplitudes().iter().all(|a| close(*a, Complex64::new(1.0, 0.0), 1e-12)));

        let full = dft_set(&ResidueSet::full(&md(11)));
        assert_eq!(full.at(0), Complex64::new(11.0, 0.0));
        assert!(full.amplitudes()[1..].iter().all(|a| a.norm() < 1e-12));

        let p = 13;
        let units = dft_set(&set(p, &(1..p).collect::<Vec<_>>()));
        assert!(units.amplitudes()[1..].iter().all(|a| close(*a, Complex64::new(-1.0, 0.0), 1e-12)));
    }

    #[test]
    fn invalid_period() {
        let v = MultiplicityVector::from(&set(9, &[1]));
        assert_eq!(dft_counts(&v, 4).unwrap_err(), Error::InvalidPeriod { q: 4, modulus: 9 });
    }

    #[test]
    fn max_nontrivial_examples() {
        let p = 13;
        let units = dft_set(&set(p, &(1..p).collect::<Vec<_>>()));
        let (n, mag) = max_nontrivial(&units, false).unwrap();
        assert_eq!(n, 1);
        assert!((mag - 1.0).abs() < 1e-12);

        let (n, mag) = max_nontrivial(&dft_set(&set(7, &[0])), false).unwrap();
        assert_eq!(n, 1);
        assert!((mag - 1.0).abs() < 1e-12);

        // direct complex summation over the 6 pairs of {1,2,4} x {1,2}^-1 mod 5
        let x = set(5, &[1, 2, 4]);
        let a = set(5, &[1, 2]);
        let oracle_max = (1..5u64)
            .map(|n| {
                let mut s = Complex64::new(0.0, 0.0);
                for xv in [1u64, 2, 4] {
                    for inv in [1u64, 3] {
                        let ang = 2.0 * core::f64::consts::PI * ((n * xv * inv) % 5) as f64 / 5.0;
                        s += Complex64::new(ang.cos(), ang.sin());
                    }
                }
                s.norm()
            })
            .fold(0.0, f64::max);
        let check = quotient_sum_check(&x, &a).unwrap();
        assert!((check.max - oracle_max).abs() < 1e-12);
        assert!((check.cap - 30f64.sqrt()).abs() < 1e-12);
        assert!(check.holds);
    }

    #[test]
    fn spectral_count_small_cases() {
        let j = spectral_quadruple_count(&set(5, &[1, 2])).unwrap();
        assert!((j.value - 9.0).abs() < 1e-9 * 9.0);
        assert!(j.imaginary_residue.abs() < 1e-9 * 9.0);
        for p in [5u64, 7, 11] {
            for a in 1..p {
                let j = spectral_quadruple_count(&set(p, &[a])).unwrap();
                assert!((j.value - 1.0).abs() < 1e-12);
            }
        }
        assert_eq!(spectral_quadruple_count(&set(5, &[0, 1])).unwrap_err(), Error::ZeroElement);
        assert_eq!(spectral_quadruple_count(&set(9, &[1])).unwrap_err(), Error::NotPrime(9));
    }

    #[test]
    fn parseval_examples() {
        let a = set(9, &[0, 3, 6]);
        let check = parseval_bound_check(&MultiplicityVector::from(&a), 3).unwrap();
        assert!((check.lhs - 27.0).abs() < 1e-9);
        assert_eq!(check.rhs, 27.0);
        assert!(check.holds);

        let e = parseval_bound_check(&MultiplicityVector::from(&ResidueSet::empty(&md(9))), 9).unwrap();
        assert_eq!((e.lhs, e.rhs), (0.0, 0.0));
        assert!(e.holds);

        // full period: equality m|A| for every A with m <= 100
        for m in 2..=100u64 {
            let a = ResidueSet::from_residues(&md(m), (0..m).filter(|t| t % 3 != 1)).unwrap();
            let c = parseval_bound_check(&MultiplicityVector::from(&a), m).unwrap();
            let exact = (m * a.len() as u64) as f64;
            assert!((c.lhs - exact).abs() <= 1e-9 * exact, "m={m}");
            assert!(c.holds);
        }
    }

    #[test]
    fn parseval_identity_and_mass() {
        let mut v = MultiplicityVector::zeros(&md(60));
        for (t, c) in [(0u64, 3u64), (7, 1), (13, 5), (59, 2), (30, 4)] {
            v.bump(t, c);
        }
        for &q in md(60).divisors() {
            let spec = dft_counts(&v, q).unwrap();
            let reduced = v.reduce(q).unwrap();
            let sq: u64 = reduced.iter().map(|c| c * c).sum();
            let expected = (q * sq) as f64;
            assert!((spec.energy() - expected).abs() <= 1e-9 * expected);
            assert!((spec.at(0).re - v.total_mass() as f64).abs() <= 1e-12 * v.total_mass() as f64);
            assert!(parseval_bound_check(&v, q).unwrap().holds);
        }
    }

    #[test]
    fn chirp_path_agrees_with_direct() {
        for q in [4097u64, 5000, 9973] {
            let counts: Vec<u64> = (0..q).map(|t| (t * t % 11 == 3) as u64 * (1 + t % 3)).collect();
            let a = dft_direct(&counts);
            let b = dft_chirp(&counts);
            let mass: u64 = counts.iter().sum();
            for (x, y) in a.iter().zip(&b) {
                assert!((x - y).norm() <= 1e-9 * mass as f64, "q={q}");
            }
            let spec = spectrum_of_reduced(&counts);
            assert_eq!(spec.at(0).re, mass as f64);
        }
    }

    #[test]
    fn per_divisor_examples() {
        let m = md(36);
        let units = ResidueSet::from_residues(&m, [1, 5, 7, 11, 25]).unwrap();
        let x = productset(&units, &units).unwrap();
        for &d in m.proper_divisors() {
            let c = per_divisor_check(&x, &units, d).unwrap();
            assert_eq!(c.q, 36 / d);
            assert!(c.holds, "d={d}: {} > {}", c.max_sq, c.cap);
        }
        assert!(per_divisor_check(&x, &units, 36).is_err());
    }
}
