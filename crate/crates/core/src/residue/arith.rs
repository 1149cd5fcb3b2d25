use alloc::vec;
use alloc::vec::Vec;

use super::{factorize, Modulus, ResidueSet};
use crate::error::{Error, Result};

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// `a * b mod m`; widens to 128 bits only when an operand needs more than 32 bits.
#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    if (a | b) >> 32 == 0 {
        a * b % m
    } else {
        ((a as u128 * b as u128) % m as u128) as u64
    }
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Inverse of `a` modulo `m` via the extended Euclidean algorithm.
pub fn mod_inverse(a: u64, modulus: &Modulus) -> Result<u64> {
    let m = modulus.m();
    let a = a % m;
    let (mut r0, mut r1) = (m as i128, a as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 != 1 {
        // r0 = gcd(a, m); gcd(0, m) = m
        return Err(Error::NonInvertible { value: a, gcd: r0 as u64 });
    }
    Ok(t0.rem_euclid(m as i128) as u64)
}

/// Smallest primitive root of a prime modulus.
pub fn find_generator(modulus: &Modulus) -> Result<u64> {
    modulus.require_prime()?;
    let p = modulus.m();
    if p == 2 {
        return Ok(1);
    }
    let order = p - 1;
    let primes: Vec<u64> = factorize(order).into_iter().map(|(q, _)| q).collect();
    (2..p)
        .find(|&g| primes.iter().all(|&q| pow_mod(g, order / q, p) != 1))
        .ok_or(Error::NotPrimitive { g: 0, p })
}

/// Discrete logarithms base `g` for every nonzero residue of a prime field.
#[derive(Clone, Debug)]
pub struct DlogTable {
    p: u64,
    g: u64,
    /// `log[a]` for `a` in `[1, p)`; index 0 unused
    log: Vec<u32>,
    /// `pow[x] = g^x` for `x` in `[0, p-1)`
    pow: Vec<u32>,
}

impl DlogTable {
    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn generator(&self) -> u64 {
        self.g
    }

    /// Exponent `x` in `[0, p-1)` with `g^x = a`; `None` for `a = 0` or `a >= p`.
    pub fn log(&self, a: u64) -> Option<u64> {
        if a == 0 || a >= self.p {
            None
        } else {
            Some(self.log[a as usize] as u64)
        }
    }

    /// `g^x` for any exponent.
    pub fn exp(&self, x: u64) -> u64 {
        self.pow[(x % (self.p - 1)) as usize] as u64
    }
}

/// One pass of successive multiplication by `g`; a repeat before `p - 1`
/// steps means `g` is not primitive.
pub fn dlog_table(modulus: &Modulus, g: u64) -> Result<DlogTable> {
    modulus.require_prime()?;
    let p = modulus.m();
    let order = (p - 1) as usize;
    let g = g % p;
    let mut log = vec![u32::MAX; p as usize];
    let mut pow = Vec::with_capacity(order);
    let mut cur = 1u64;
    for x in 0..order {
        if log[cur as usize] != u32::MAX || cur == 0 {
            return Err(Error::NotPrimitive { g, p });
        }
        log[cur as usize] = x as u32;
        pow.push(cur as u32);
        cur = mul_mod(cur, g, p);
    }
    if cur != 1 {
        return Err(Error::NotPrimitive { g, p });
    }
    Ok(DlogTable { p, g, log, pow })
}

/// `d0 = min over a in A of gcd(a, m)`, with `gcd(0, m) = m`.
pub fn min_gcd(set: &ResidueSet) -> Result<u64> {
    let m = set.modulus().m();
    set.iter().map(|a| gcd(a, m)).min().ok_or(Error::EmptyInput)
}

/// `A ∩ (Z/mZ)^*`.
pub fn unit_part(set: &ResidueSet) -> ResidueSet {
    let m = set.modulus().m();
    ResidueSet::with_layout(set.modulus(), set.iter().filter(|&a| gcd(a, m) == 1), set.layout())
        .expect("subset stays in range")
}
