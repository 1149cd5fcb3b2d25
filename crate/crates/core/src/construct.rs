//! Sets with small `max{|A+A|, |AA|}` from a power prefix and a window.
//!
//! Take `M = ceil(sqrt(pN))`, the first `M` powers `G = {g, g^2, ..., g^M}` of a
//! primitive root and the cyclic window `{L+1, ..., L+M}` that catches most of
//! them. Summed over all `p` offsets the window counts total `M·|G| = M^2`, so
//! the best offset catches at least `ceil(M^2/p) >= N` powers. Any `N` of them
//! have `|A+A| <= 2M-1` (window) and `|AA| <= 2M-1` (exponents in `[2, 2M]`).

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::residue::{find_generator, mul_mod, Modulus, ResidueSet};
use crate::set_algebra::{productset, sumset_fast};

/// `{g^x : 1 <= x <= len}`.
pub fn power_prefix(modulus: &Modulus, g: u64, len: u64) -> Result<ResidueSet> {
    modulus.require_prime()?;
    let p = modulus.m();
    if len == 0 || len > p - 1 {
        return Err(Error::Range { value: len, max: p - 1 });
    }
    let mut powers = Vec::with_capacity(len as usize);
    let mut cur = 1u64;
    for _ in 0..len {
        cur = mul_mod(cur, g % p, p);
        powers.push(cur);
    }
    let set = ResidueSet::from_residues(modulus, powers)?;
    if set.len() as u64 != len {
        return Err(Error::NotPrimitive { g, p });
    }
    Ok(set)
}

/// `counts[L] = |G ∩ {L+1, ..., L+len mod p}|` for every `L` in `[0, p)`, by one
/// cyclic sliding pass.
pub fn window_counts(set: &ResidueSet, len: u64) -> Vec<u64> {
    let p = set.modulus().m() as usize;
    let len = len as usize;
    let mut hit = vec![0u64; p];
    for x in set {
        hit[x as usize] = 1;
    }
    let mut out = Vec::with_capacity(p);
    let mut count: u64 = (1..=len).map(|j| hit[j % p]).sum();
    for l in 0..p {
        out.push(count);
        // slide {l+1..l+len} to {l+2..l+len+1}
        count = count + hit[(l + len + 1) % p] - hit[(l + 1) % p];
    }
    out
}

/// Offset `L` maximizing the window count, smallest `L` on ties.
pub fn best_window(set: &ResidueSet, len: u64) -> Result<(u64, u64)> {
    let p = set.modulus().m();
    if len == 0 || len > p - 1 {
        return Err(Error::Range { value: len, max: p - 1 });
    }
    let counts = window_counts(set, len);
    let mut best = (0u64, counts[0]);
    for (l, &c) in counts.iter().enumerate() {
        if c > best.1 {
            best = (l as u64, c);
        }
    }
    Ok(best)
}

/// `ceil(sqrt(x))` in integers.
pub fn ceil_sqrt(x: u64) -> u64 {
    let s = x.isqrt();
    if s * s < x {
        s + 1
    } else {
        s
    }
}

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct ExtremalConstruction {
    pub p: u64,
    pub n: u64,
    pub g: u64,
    /// `M`: prefix and window length.
    pub window_len: u64,
    /// `L`: window is `{L+1, ..., L+M} mod p`.
    pub offset: u64,
    pub window_count: u64,
    pub prefix: ResidueSet,
    pub a: ResidueSet,
    pub size_sum: u64,
    pub size_prod: u64,
    pub max_size: u64,
}

impl ExtremalConstruction {
    /// `2M - 1`.
    pub fn structural_cap(&self) -> u64 {
        2 * self.window_len - 1
    }

    pub fn in_window(&self, x: u64) -> bool {
        let shifted = (x + self.p - self.offset % self.p) % self.p;
        (1..=self.window_len).contains(&shifted)
    }
}

pub fn build_extremal(p: u64, n: u64) -> Result<ExtremalConstruction> {
    let modulus = Modulus::new(p)?;
    modulus.require_prime()?;
    if n == 0 {
        return Err(Error::Range { value: 0, max: p - 1 });
    }
    let window_len = ceil_sqrt(p * n);
    if window_len > p - 1 {
        return Err(Error::Infeasible { p, n, window: window_len });
    }
    let g = find_generator(&modulus)?;
    let prefix = power_prefix(&modulus, g, window_len)?;
    let (offset, window_count) = best_window(&prefix, window_len)?;
    debug_assert!(window_count * p >= window_len * window_len);

    let mut caught: Vec<u64> = prefix
        .iter()
        .filter(|&x| {
            let shifted = (x + p - offset) % p;
            (1..=window_len).contains(&shifted)
        })
        .collect();
    caught.sort_unstable();
    caught.truncate(n as usize);
    let a = ResidueSet::from_residues(&modulus, caught)?;
    debug_assert_eq!(a.len() as u64, n);

    let size_sum = sumset_fast(&a, &a)?.len() as u64;
    let size_prod = productset(&a, &a)?.len() as u64;
    Ok(ExtremalConstruction {
        p,
        n,
        g,
        window_len,
        offset,
        window_count,
        prefix,
        a,
        size_sum,
        size_prod,
        max_size: size_sum.max(size_prod),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn md(m: u64) -> Modulus {
        Modulus::new(m).unwrap()
    }

    fn naive_window_count(set: &ResidueSet, l: u64, len: u64) -> u64 {
        let p = set.modulus().m();
        (1..=len).filter(|j| set.contains((l + j) % p)).count() as u64
    }

    #[test]
    fn prefix_examples() {
        let p7 = md(7);
        // 3, 9=2, 6
        assert_eq!(power_prefix(&p7, 3, 3).unwrap().to_vec(), vec![2, 3, 6]);
        assert_eq!(power_prefix(&p7, 3, 1).unwrap().to_vec(), vec![3]);
        assert_eq!(power_prefix(&p7, 3, 6).unwrap(), ResidueSet::from_residues(&p7, 1..7).unwrap());
        assert_eq!(power_prefix(&p7, 3, 7).unwrap_err(), Error::Range { value: 7, max: 6 });
        assert_eq!(power_prefix(&p7, 2, 6).unwrap_err(), Error::NotPrimitive { g: 2, p: 7 });
    }

    #[test]
    fn window_examples() {
        let p7 = md(7);
        let g = ResidueSet::from_residues(&p7, [3, 2, 6]).unwrap();
        let counts: Vec<u64> = (0..7).map(|l| naive_window_count(&g, l, 3)).collect();
        assert_eq!(counts, vec![2, 2, 1, 1, 1, 1, 1]);
        assert_eq!(window_counts(&g, 3), counts);
        // {1,2,3} and {2,3,4} both catch two powers; the smaller offset wins
        assert_eq!(best_window(&g, 3), Ok((0, 2)));

        let full = ResidueSet::from_residues(&p7, 1..7).unwrap();
        let (_, c) = best_window(&full, 6).unwrap();
        assert!(c >= 36u64.div_ceil(7));
        assert_eq!(best_window(&ResidueSet::empty(&p7), 3), Ok((0, 0)));
    }

    #[test]
    fn sliding_equals_naive_up_to_1009() {
        for p in [5u64, 7, 11, 101, 211, 1009] {
            let modulus = md(p);
            let g = find_generator(&modulus).unwrap();
            for len in [1, 2, p / 7 + 1, p / 2, p - 1] {
                let prefix = power_prefix(&modulus, g, len).unwrap();
                let fast = window_counts(&prefix, len);
                for l in 0..p {
                    assert_eq!(fast[l as usize], naive_window_count(&prefix, l, len), "p={p} len={len} l={l}");
                }
                assert_eq!(fast.iter().sum::<u64>(), len * len);
            }
        }
    }

    #[test]
    fn small_constructions() {
        let c = build_extremal(7, 1).unwrap();
        assert_eq!((c.window_len, c.g, c.offset, c.window_count), (3, 3, 0, 2));
        assert_eq!(c.a.to_vec(), vec![2]);
        assert!(c.size_sum <= 5 && c.size_prod <= 5);

        let c = build_extremal(101, 10).unwrap();
        assert_eq!(c.window_len, 32);
        assert_eq!(c.a.len(), 10);
        assert!(c.max_size <= 63);
        assert!(c.a.iter().all(|x| c.prefix.contains(x) && c.in_window(x)));

        assert_eq!(build_extremal(7, 7).unwrap_err(), Error::Infeasible { p: 7, n: 7, window: 7 });
        assert!(build_extremal(7, 0).is_err());
        assert_eq!(build_extremal(8, 1).unwrap_err(), Error::NotPrime(8));
    }

    #[test]
    fn ceil_sqrt_values() {
        assert_eq!(ceil_sqrt(7), 3);
        assert_eq!(ceil_sqrt(1010), 32);
        assert_eq!(ceil_sqrt(1024), 32);
        assert_eq!(ceil_sqrt(1025), 33);
        assert_eq!(ceil_sqrt(1), 1);
    }
}
