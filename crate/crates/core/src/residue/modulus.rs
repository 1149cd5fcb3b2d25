use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

/// Largest supported modulus.
pub const MODULUS_CAP: u64 = 1 << 31;

/// Descriptor of the ring `Z/mZ`.
///
/// Cheap to clone; equality compares `m` only.
#[derive(Clone)]
pub struct Modulus(Arc<Info>);

struct Info {
    m: u64,
    is_prime: bool,
    factorization: Vec<(u64, u32)>,
    divisors: Vec<u64>,
    divisor_halfpower_sum: f64,
}

impl Modulus {
    pub fn new(m: u64) -> Result<Self> {
        if !(2..=MODULUS_CAP).contains(&m) {
            return Err(Error::InvalidModulus(m));
        }
        let factorization = factorize(m);
        let divisors = trial_divisors(m);
        let is_prime = divisors.len() == 2;
        // increasing order keeps the summation reproducible
        let divisor_halfpower_sum = divisors[..divisors.len() - 1]
            .iter()
            .map(|&d| libm::sqrt(d as f64))
            .sum();
        Ok(Modulus(Arc::new(Info { m, is_prime, factorization, divisors, divisor_halfpower_sum })))
    }

    #[inline]
    pub fn m(&self) -> u64 {
        self.0.m
    }

    pub fn is_prime(&self) -> bool {
        self.0.is_prime
    }

    /// `(prime, exponent)` pairs in increasing prime order.
    pub fn factorization(&self) -> &[(u64, u32)] {
        &self.0.factorization
    }

    /// All positive divisors of `m`, strictly increasing, `1` and `m` included.
    pub fn divisors(&self) -> &[u64] {
        &self.0.divisors
    }

    /// Proper divisors `d | m, d < m`.
    pub fn proper_divisors(&self) -> &[u64] {
        let d = &self.0.divisors;
        &d[..d.len() - 1]
    }

    /// `D(m) = sum over d | m, d < m of sqrt(d)`.
    pub fn divisor_halfpower_sum(&self) -> f64 {
        self.0.divisor_halfpower_sum
    }

    pub fn require_prime(&self) -> Result<()> {
        if self.is_prime() {
            Ok(())
        } else {
            Err(Error::NotPrime(self.m()))
        }
    }
}

impl PartialEq for Modulus {
    fn eq(&self, other: &Self) -> bool {
        self.m() == other.m()
    }
}

impl Eq for Modulus {}

impl fmt::Debug for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Modulus")
            .field("m", &self.m())
            .field("is_prime", &self.is_prime())
            .field("factorization", &self.factorization())
            .finish()
    }
}

/// Prime factorization of `n >= 1` by trial division.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn trial_divisors(m: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= m {
        if m.is_multiple_of(d) {
            small.push(d);
            if d * d != m {
                large.push(m / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn divisors_from_factorization(f: &[(u64, u32)]) -> Vec<u64> {
        let mut ds = vec![1u64];
        for &(p, e) in f {
            let mut next = Vec::new();
            for &d in &ds {
                let mut pk = 1;
                for _ in 0..=e {
                    next.push(d * pk);
                    pk *= p;
                }
            }
            ds = next;
        }
        ds.sort_unstable();
        ds
    }

    #[test]
    fn small_examples() {
        let m9 = Modulus::new(9).unwrap();
        assert_eq!(m9.divisors(), &[1, 3, 9]);
        assert!((m9.divisor_halfpower_sum() - 2.732_050_807_568_877).abs() < 1e-12);
        assert!(!m9.is_prime());

        let m7 = Modulus::new(7).unwrap();
        assert!(m7.is_prime());
        assert_eq!(m7.divisor_halfpower_sum(), 1.0);

        let m12 = Modulus::new(12).unwrap();
        assert_eq!(m12.divisors(), &[1, 2, 3, 4, 6, 12]);
        // 1 + sqrt2 + sqrt3 + 2 + sqrt6
        let expected = 1.0 + 2f64.sqrt() + 3f64.sqrt() + 2.0 + 6f64.sqrt();
        assert!((m12.divisor_halfpower_sum() - expected).abs() < 1e-12);
        assert!((m12.divisor_halfpower_sum() - 8.5955).abs() < 1e-3);
    }

    #[test]
    fn rejects_out_of_range() {
        assert_eq!(Modulus::new(0), Err(Error::InvalidModulus(0)));
        assert_eq!(Modulus::new(1), Err(Error::InvalidModulus(1)));
        assert!(Modulus::new(MODULUS_CAP + 1).is_err());
        let cap = Modulus::new(MODULUS_CAP).unwrap();
        assert_eq!(cap.factorization(), &[(2, 31)]);
        assert_eq!(cap.divisors().len(), 32);
    }

    #[test]
    fn divisor_routes_agree_up_to_ten_thousand() {
        for m in 2..=10_000u64 {
            let md = Modulus::new(m).unwrap();
            let product: u64 = md.factorization().iter().map(|&(p, e)| p.pow(e)).product();
            assert_eq!(product, m);
            assert_eq!(md.divisors(), divisors_from_factorization(md.factorization()).as_slice());
            assert!(md.divisors().windows(2).all(|w| w[0] < w[1]));
            assert_eq!(md.is_prime(), md.divisors().len() == 2);
            let direct: f64 = (1..m).filter(|d| m % d == 0).map(|d| (d as f64).sqrt()).sum();
            let d = md.divisor_halfpower_sum();
            assert!(d >= 1.0);
            assert!((d - direct).abs() <= 1e-12 * direct, "m={m}");
        }
    }
}
