//! Sum sets, product sets, dilations and representation functions.
//!
//! `sumset` / `productset` are the reference double loops. `sumset_fast`
//! (cyclic shifted bit-array unions) and `productset_dlog` (exponent sumset in
//! `Z/(p-1)Z`) are the fast paths; tests hold them equal to the reference.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::residue::{gcd, mod_inverse, mul_mod, DlogTable, Layout, Modulus, ResidueSet};

/// Representation functions of length up to this use a dense array.
pub const DENSE_COUNTS_LIMIT: u64 = 1 << 20;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Counts {
    Dense(Vec<u64>),
    Sparse(BTreeMap<u64, u64>),
}

/// Nonnegative integer counts indexed by residue.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplicityVector {
    modulus: Modulus,
    counts: Counts,
    total_mass: u64,
}

impl MultiplicityVector {
    pub fn zeros(modulus: &Modulus) -> Self {
        let counts = if modulus.m() <= DENSE_COUNTS_LIMIT {
            Counts::Dense(vec![0; modulus.m() as usize])
        } else {
            Counts::Sparse(BTreeMap::new())
        };
        MultiplicityVector { modulus: modulus.clone(), counts, total_mass: 0 }
    }

    /// Increments the count at residue `t` (already reduced).
    #[inline]
    pub fn bump(&mut self, t: u64, by: u64) {
        debug_assert!(t < self.modulus.m());
        match &mut self.counts {
            Counts::Dense(v) => v[t as usize] += by,
            Counts::Sparse(map) => *map.entry(t).or_insert(0) += by,
        }
        self.total_mass += by;
    }

    pub fn modulus(&self) -> &Modulus {
        &self.modulus
    }

    pub fn get(&self, t: u64) -> u64 {
        match &self.counts {
            Counts::Dense(v) => v.get(t as usize).copied().unwrap_or(0),
            Counts::Sparse(map) => map.get(&t).copied().unwrap_or(0),
        }
    }

    pub fn total_mass(&self) -> u64 {
        self.total_mass
    }

    /// `(t, counts[t])` for every `t` with a positive count, ascending.
    pub fn nonzero(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        let (dense, sparse) = match &self.counts {
            Counts::Dense(v) => (Some(v), None),
            Counts::Sparse(map) => (None, Some(map)),
        };
        let a = dense.into_iter().flat_map(|v| {
            v.iter().enumerate().filter(|(_, &c)| c > 0).map(|(t, &c)| (t as u64, c))
        });
        let b = sparse.into_iter().flat_map(|m| m.iter().filter(|(_, &c)| c > 0).map(|(&t, &c)| (t, c)));
        a.chain(b)
    }

    pub fn support(&self) -> ResidueSet {
        ResidueSet::from_residues(&self.modulus, self.nonzero().map(|(t, _)| t)).expect("in range")
    }

    /// `sum_t counts[t]^2`.
    pub fn sum_of_squares(&self) -> u128 {
        self.nonzero().map(|(_, c)| c as u128 * c as u128).sum()
    }

    /// `sum_t self[t] * other[t]`.
    pub fn dot(&self, other: &MultiplicityVector) -> Result<u128> {
        if self.modulus != other.modulus {
            return Err(Error::ModulusMismatch { left: self.modulus.m(), right: other.modulus.m() });
        }
        Ok(self.nonzero().map(|(t, c)| c as u128 * other.get(t) as u128).sum())
    }

    /// Counts aggregated by residue class mod `q`, for `q | m`.
    pub fn reduce(&self, q: u64) -> Result<Vec<u64>> {
        let m = self.modulus.m();
        if q == 0 || !m.is_multiple_of(q) {
            return Err(Error::InvalidPeriod { q, modulus: m });
        }
        let mut out = vec![0u64; q as usize];
        for (t, c) in self.nonzero() {
            out[(t % q) as usize] += c;
        }
        Ok(out)
    }
}

impl From<&ResidueSet> for MultiplicityVector {
    /// Indicator function of the set.
    fn from(set: &ResidueSet) -> Self {
        let mut v = MultiplicityVector::zeros(set.modulus());
        for a in set {
            v.bump(a, 1);
        }
        v
    }
}

/// Which of `a + b` / `a - b` an additive representation counts.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

fn collect_set(modulus: &Modulus, layout: Layout, values: impl Iterator<Item = u64>) -> ResidueSet {
    match layout {
        Layout::Dense => {
            let mut bits = BitSet::new(modulus.m() as usize);
            for v in values {
                bits.insert(v as usize);
            }
            ResidueSet::from_bits(modulus, bits)
        }
        Layout::Sparse => ResidueSet::from_residues(modulus, values).expect("reduced"),
    }
}

/// `A + B`, by direct enumeration of pairs.
pub fn sumset(a: &ResidueSet, b: &ResidueSet) -> Result<ResidueSet> {
    a.check_same_ring(b)?;
    let modulus = a.modulus();
    let m = modulus.m();
    let pairs = a.iter().flat_map(|x| b.iter().map(move |y| (x + y) % m));
    Ok(collect_set(modulus, Layout::for_modulus(m), pairs))
}

/// `A · B`, by direct enumeration of pairs.
pub fn productset(a: &ResidueSet, b: &ResidueSet) -> Result<ResidueSet> {
    a.check_same_ring(b)?;
    let modulus = a.modulus();
    let m = modulus.m();
    let pairs = a.iter().flat_map(|x| b.iter().map(move |y| mul_mod(x, y, m)));
    Ok(collect_set(modulus, Layout::for_modulus(m), pairs))
}

/// `A + B` via shifted unions of a bit array: `OR over a in A of rot(B, a)`.
///
/// Falls back to [`sumset`] when either operand is stored sparsely.
pub fn sumset_fast(a: &ResidueSet, b: &ResidueSet) -> Result<ResidueSet> {
    a.check_same_ring(b)?;
    let (small, large) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    let Some(bits) = large.dense_bits() else {
        return sumset(a, b);
    };
    let mut out = BitSet::new(bits.len());
    for s in small {
        out.or_rotated(bits, s as usize);
    }
    Ok(ResidueSet::from_bits(a.modulus(), out))
}

/// `A · B` for a prime modulus through discrete logs: nonzero products are
/// `g^(x+y)`, so the nonzero part is an exponent sumset in `Z/(p-1)Z`.
/// Zero is absorbing and is added back when it occurs in either factor.
pub fn productset_dlog(a: &ResidueSet, b: &ResidueSet, table: &DlogTable) -> Result<ResidueSet> {
    a.check_same_ring(b)?;
    let modulus = a.modulus();
    modulus.require_prime()?;
    if table.p() != modulus.m() {
        return Err(Error::ModulusMismatch { left: modulus.m(), right: table.p() });
    }
    if a.is_empty() || b.is_empty() {
        return Ok(ResidueSet::empty(modulus));
    }
    let p = modulus.m();
    let has_zero = a.contains(0) || b.contains(0);
    let mut out = Vec::new();
    if p > 2 {
        let order = Modulus::new(p - 1)?;
        let ea = ResidueSet::from_residues(&order, a.iter().filter_map(|x| table.log(x)))?;
        let eb = ResidueSet::from_residues(&order, b.iter().filter_map(|x| table.log(x)))?;
        let exps = sumset_fast(&ea, &eb)?;
        out.extend(exps.iter().map(|e| table.exp(e)));
    } else if a.contains(1) && b.contains(1) {
        out.push(1);
    }
    if has_zero {
        out.push(0);
    }
    ResidueSet::from_residues(modulus, out)
}

/// `c · A`.
pub fn dilate(c: u64, set: &ResidueSet) -> ResidueSet {
    let m = set.modulus().m();
    let c = c % m;
    collect_set(set.modulus(), set.layout(), set.iter().map(|a| mul_mod(c, a, m)))
}

/// `r(t) = #{(a, b) in A x B : a ± b = t}`.
pub fn additive_rep(a: &ResidueSet, b: &ResidueSet, sign: Sign) -> Result<MultiplicityVector> {
    a.check_same_ring(b)?;
    let m = a.modulus().m();
    let mut out = MultiplicityVector::zeros(a.modulus());
    for x in a {
        for y in b {
            let t = match sign {
                Sign::Plus => (x + y) % m,
                Sign::Minus => (x + m - y) % m,
            };
            out.bump(t, 1);
        }
    }
    Ok(out)
}

/// `r(t) = #{(x, a) in X x A : x · a^-1 = t}` over a prime field.
pub fn quotient_rep(x: &ResidueSet, a: &ResidueSet) -> Result<MultiplicityVector> {
    x.check_same_ring(a)?;
    a.modulus().require_prime()?;
    if a.contains(0) {
        return Err(Error::ZeroElement);
    }
    unit_quotient_rep(x, a)
}

/// Ring version of [`quotient_rep`]: every element of `A` must be a unit mod `m`.
pub fn unit_quotient_rep(x: &ResidueSet, a: &ResidueSet) -> Result<MultiplicityVector> {
    x.check_same_ring(a)?;
    let modulus = a.modulus();
    let m = modulus.m();
    let inverses = a.iter().map(|y| mod_inverse(y, modulus)).collect::<Result<Vec<u64>>>()?;
    let mut out = MultiplicityVector::zeros(modulus);
    for xv in x {
        for &inv in &inverses {
            out.bump(mul_mod(xv, inv, m), 1);
        }
    }
    Ok(out)
}

/// Lower bound `ceil(|A| / gcd(c, m))` on `|c · A|`; with `gcd(0, m) = m`.
pub fn dilation_floor(c: u64, set: &ResidueSet) -> usize {
    let g = gcd(c % set.modulus().m(), set.modulus().m()) as usize;
    set.len().div_ceil(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::residue::{dlog_table, find_generator};
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::collections::BTreeSet;

    fn md(m: u64) -> Modulus {
        Modulus::new(m).unwrap()
    }

    fn set(m: u64, xs: &[u64]) -> ResidueSet {
        ResidueSet::from_residues(&md(m), xs.iter().copied()).unwrap()
    }

    fn oracle_pairs(m: u64, a: &[u64], b: &[u64], op: impl Fn(u64, u64) -> u64) -> Vec<u64> {
        let mut out = BTreeSet::new();
        for &x in a {
            for &y in b {
                out.insert(op(x, y) % m);
            }
        }
        out.into_iter().collect()
    }

    #[test]
    fn sumset_examples() {
        let a = set(9, &[0, 3, 6]);
        assert_eq!(sumset(&a, &a).unwrap(), a);
        let b = set(9, &[1, 4, 5]);
        assert_eq!(sumset(&set(9, &[0]), &b).unwrap(), b);
        let c = set(7, &[1, 2, 3]);
        assert_eq!(oracle_pairs(7, &[1, 2, 3], &[1, 2, 3], |x, y| x + y), vec![2, 3, 4, 5, 6]);
        assert_eq!(sumset(&c, &c).unwrap().to_vec(), vec![2, 3, 4, 5, 6]);
        assert_eq!(
            sumset(&a, &c),
            Err(Error::ModulusMismatch { left: 9, right: 7 })
        );
    }

    #[test]
    fn productset_examples() {
        let a = set(9, &[0, 3, 6]);
        assert_eq!(productset(&a, &a).unwrap().to_vec(), vec![0]);
        let b = set(9, &[2, 4, 8]);
        assert_eq!(productset(&set(9, &[1]), &b).unwrap(), b);
        let c = set(7, &[1, 2, 3]);
        assert_eq!(oracle_pairs(7, &[1, 2, 3], &[1, 2, 3], |x, y| x * y), vec![1, 2, 3, 4, 6]);
        assert_eq!(productset(&c, &c).unwrap().to_vec(), vec![1, 2, 3, 4, 6]);
    }

    #[test]
    fn dilate_examples() {
        assert_eq!(dilate(3, &set(9, &[1, 2, 3])).to_vec(), vec![0, 3, 6]);
        let a = set(9, &[1, 5, 7]);
        assert_eq!(dilate(1, &a), a);
        assert_eq!(dilate(0, &a).to_vec(), vec![0]);
    }

    #[test]
    fn additive_rep_examples() {
        let a = set(5, &[1, 2]);
        let r = additive_rep(&a, &a, Sign::Plus).unwrap();
        assert_eq!((0..5).map(|t| r.get(t)).collect::<Vec<_>>(), vec![0, 0, 1, 2, 1]);
        assert_eq!(r.total_mass(), 4);

        let b = set(5, &[0, 3, 4]);
        let r = additive_rep(&set(5, &[0]), &b, Sign::Plus).unwrap();
        assert_eq!(r, MultiplicityVector::from(&b));

        let r = additive_rep(&a, &b, Sign::Minus).unwrap();
        assert_eq!(r.total_mass(), 6);
        assert_eq!(r.support().to_vec(), oracle_pairs(5, &[1, 2], &[0, 3, 4], |x, y| x + 5 - y));
    }

    #[test]
    fn quotient_rep_examples() {
        let x = set(5, &[1, 2, 4]);
        let a = set(5, &[1, 2]);
        let r = quotient_rep(&x, &a).unwrap();
        // inverses mod 5: 1 -> 1, 2 -> 3
        let mut oracle = [0u64; 5];
        for xv in [1u64, 2, 4] {
            for inv in [1u64, 3] {
                oracle[(xv * inv % 5) as usize] += 1;
            }
        }
        assert_eq!(oracle, [0, 2, 2, 1, 1]);
        assert_eq!((0..5).map(|t| r.get(t)).collect::<Vec<_>>(), oracle.to_vec());
        assert_eq!(r.total_mass(), 6);
        assert_eq!(quotient_rep(&x, &set(5, &[1])).unwrap(), MultiplicityVector::from(&x));
        assert_eq!(quotient_rep(&x, &set(5, &[0, 1])), Err(Error::ZeroElement));
        assert_eq!(quotient_rep(&set(9, &[1]), &set(9, &[1])), Err(Error::NotPrime(9)));
        assert_eq!(
            unit_quotient_rep(&set(9, &[1]), &set(9, &[3])),
            Err(Error::NonInvertible { value: 3, gcd: 3 })
        );
    }

    #[test]
    fn sumset_fast_edge_cases() {
        let m = md(16);
        let e = ResidueSet::empty(&m);
        assert!(sumset_fast(&e, &e).unwrap().is_empty());
        let full = ResidueSet::full(&m);
        assert_eq!(sumset_fast(&full, &full).unwrap(), full);
    }

    #[test]
    fn sumset_fast_matches_naive_randomized() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        let moduli = [16u64, 97, 360, 1024, 9973];
        let densities = [0.01, 0.1, 0.5];
        for case in 0..10_000usize {
            let m = moduli[case % moduli.len()];
            let dens = densities[(case / moduli.len()) % densities.len()];
            let modulus = md(m);
            let draw = |rng: &mut ChaCha8Rng| {
                ResidueSet::from_residues(&modulus, (0..m).filter(|_| rng.random_bool(dens))).unwrap()
            };
            let a = draw(&mut rng);
            let b = draw(&mut rng);
            let mut hit = vec![false; m as usize];
            let bs = b.to_vec();
            for x in a.iter() {
                for &y in &bs {
                    let s = x + y;
                    hit[(if s >= m { s - m } else { s }) as usize] = true;
                }
            }
            let expected: Vec<u64> = (0..m).filter(|&t| hit[t as usize]).collect();
            assert_eq!(sumset_fast(&a, &b).unwrap().to_vec(), expected, "m={m} density={dens}");
        }
    }

    #[test]
    fn sparse_layout_sumset_agrees() {
        let m = md(crate::residue::DENSE_LIMIT + 7);
        let a = ResidueSet::from_residues(&m, [1, 5, crate::residue::DENSE_LIMIT]).unwrap();
        let b = ResidueSet::from_residues(&m, [0, 9]).unwrap();
        let got = sumset_fast(&a, &b).unwrap();
        assert_eq!(got.layout(), Layout::Sparse);
        assert_eq!(got, sumset(&a, &b).unwrap());
        assert_eq!(got.len(), 6);
    }

    #[test]
    fn dlog_productset_matches_naive() {
        for p in [2u64, 3, 5, 7, 11, 13, 31, 101] {
            let modulus = md(p);
            let g = find_generator(&modulus).unwrap();
            let table = dlog_table(&modulus, g).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(p);
            for _ in 0..200 {
                let a = ResidueSet::from_residues(&modulus, (0..p).filter(|_| rng.random_bool(0.3))).unwrap();
                let b = ResidueSet::from_residues(&modulus, (0..p).filter(|_| rng.random_bool(0.3))).unwrap();
                assert_eq!(productset_dlog(&a, &b, &table).unwrap(), productset(&a, &b).unwrap(), "p={p}");
            }
        }
    }

    #[test]
    fn translation_covariance_exhaustive() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for m in 2..=100u64 {
            let modulus = md(m);
            for _ in 0..4 {
                let a = ResidueSet::from_residues(&modulus, (0..m).filter(|_| rng.random_bool(0.2))).unwrap();
                let b = ResidueSet::from_residues(&modulus, (0..m).filter(|_| rng.random_bool(0.2))).unwrap();
                let base = sumset(&a, &b).unwrap();
                for c in 0..m {
                    assert_eq!(sumset(&a.translate(c), &b).unwrap(), base.translate(c));
                }
            }
        }
    }

    #[test]
    fn dilation_fiber_bound() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for m in 2..=500u64 {
            let modulus = md(m);
            let a = ResidueSet::from_residues(&modulus, (0..m).filter(|_| rng.random_bool(0.3))).unwrap();
            for c in 0..m {
                let d = dilate(c, &a);
                assert!(d.len() >= dilation_floor(c, &a), "m={m} c={c}");
                assert!(d.len() * gcd(c, m) as usize >= a.len());
            }
        }
    }

    fn arb_pair() -> impl Strategy<Value = (u64, Vec<u64>, Vec<u64>)> {
        (2u64..120).prop_flat_map(|m| {
            (
                Just(m),
                proptest::collection::vec(0..m, 0..25),
                proptest::collection::vec(0..m, 0..25),
            )
        })
    }

    proptest! {
        #[test]
        fn commutative_and_consistent((m, xs, ys) in arb_pair()) {
            let a = set(m, &xs);
            let b = set(m, &ys);
            let ab = sumset(&a, &b).unwrap();
            prop_assert_eq!(&ab, &sumset(&b, &a).unwrap());
            prop_assert_eq!(productset(&a, &b).unwrap(), productset(&b, &a).unwrap());
            prop_assert_eq!(&ab, &sumset_fast(&a, &b).unwrap());
            prop_assert_eq!(ab.to_vec(), oracle_pairs(m, &a.to_vec(), &b.to_vec(), |x, y| x + y));
            if !a.is_empty() && !b.is_empty() {
                prop_assert!(ab.len() >= a.len().max(b.len()));
            }
            let rep = additive_rep(&a, &b, Sign::Plus).unwrap();
            prop_assert_eq!(rep.support(), ab);
            prop_assert_eq!(rep.total_mass(), (a.len() * b.len()) as u64);
            prop_assert_eq!(rep.nonzero().map(|(_, c)| c).sum::<u64>(), rep.total_mass());
        }

        #[test]
        fn unit_dilation_preserves_sizes(pi in 0usize..6, xs in proptest::collection::vec(1u64..1000, 1..20), c in 1u64..1000) {
            let p = [5u64, 7, 11, 13, 31, 101][pi];
            let a = ResidueSet::from_reduced(&md(p), xs);
            let c = c % p;
            prop_assume!(c != 0);
            let ca = dilate(c, &a);
            prop_assert_eq!(sumset(&ca, &ca).unwrap().len(), sumset(&a, &a).unwrap().len());
            prop_assert_eq!(productset(&ca, &ca).unwrap().len(), productset(&a, &a).unwrap().len());
        }
    }
}
