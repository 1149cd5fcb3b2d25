use alloc::vec::Vec;
use core::fmt;

use super::Modulus;
use crate::bitset::BitSet;
use crate::error::{Error, Result};

/// Moduli up to this size store sets as bit arrays.
pub const DENSE_LIMIT: u64 = 1 << 24;

/// Storage layout of a [`ResidueSet`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Layout {
    Dense,
    Sparse,
}

impl Layout {
    pub fn for_modulus(m: u64) -> Layout {
        if m <= DENSE_LIMIT {
            Layout::Dense
        } else {
            Layout::Sparse
        }
    }
}

#[derive(Clone)]
enum Repr {
    Dense(BitSet),
    /// strictly increasing
    Sparse(Vec<u64>),
}

/// A subset of `Z/mZ`.
#[derive(Clone)]
pub struct ResidueSet {
    modulus: Modulus,
    repr: Repr,
    size: usize,
}

impl ResidueSet {
    pub fn empty(modulus: &Modulus) -> Self {
        Self::empty_with_layout(modulus, Layout::for_modulus(modulus.m()))
    }

    fn empty_with_layout(modulus: &Modulus, layout: Layout) -> Self {
        let repr = match layout {
            Layout::Dense => Repr::Dense(BitSet::new(modulus.m() as usize)),
            Layout::Sparse => Repr::Sparse(Vec::new()),
        };
        ResidueSet { modulus: modulus.clone(), repr, size: 0 }
    }

    /// Builds a set from residues in `[0, m)`; duplicates are merged.
    pub fn from_residues<I: IntoIterator<Item = u64>>(modulus: &Modulus, residues: I) -> Result<Self> {
        Self::with_layout(modulus, residues, Layout::for_modulus(modulus.m()))
    }

    /// Same as [`from_residues`](Self::from_residues) with an explicit layout.
    pub fn with_layout<I: IntoIterator<Item = u64>>(
        modulus: &Modulus,
        residues: I,
        layout: Layout,
    ) -> Result<Self> {
        let m = modulus.m();
        let mut out = Self::empty_with_layout(modulus, layout);
        match &mut out.repr {
            Repr::Dense(bits) => {
                for r in residues {
                    if r >= m {
                        return Err(Error::OutOfRange { value: r, modulus: m });
                    }
                    bits.insert(r as usize);
                }
                out.size = bits.count_ones();
            }
            Repr::Sparse(v) => {
                for r in residues {
                    if r >= m {
                        return Err(Error::OutOfRange { value: r, modulus: m });
                    }
                    v.push(r);
                }
                v.sort_unstable();
                v.dedup();
                out.size = v.len();
            }
        }
        Ok(out)
    }

    /// Reduces arbitrary integers mod `m` before inserting.
    pub fn from_reduced<I: IntoIterator<Item = u64>>(modulus: &Modulus, values: I) -> Self {
        let m = modulus.m();
        Self::from_residues(modulus, values.into_iter().map(|v| v % m))
            .expect("reduced residues are in range")
    }

    pub(crate) fn from_bits(modulus: &Modulus, bits: BitSet) -> Self {
        debug_assert_eq!(bits.len() as u64, modulus.m());
        if Layout::for_modulus(modulus.m()) == Layout::Dense {
            let size = bits.count_ones();
            ResidueSet { modulus: modulus.clone(), repr: Repr::Dense(bits), size }
        } else {
            Self::from_residues(modulus, bits.iter_ones().map(|i| i as u64)).expect("in range")
        }
    }

    /// All of `Z/mZ`.
    pub fn full(modulus: &Modulus) -> Self {
        Self::from_residues(modulus, 0..modulus.m()).expect("in range")
    }

    pub fn modulus(&self) -> &Modulus {
        &self.modulus
    }

    pub fn layout(&self) -> Layout {
        match self.repr {
            Repr::Dense(_) => Layout::Dense,
            Repr::Sparse(_) => Layout::Sparse,
        }
    }

    pub fn len(&self) -> usize {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    pub fn contains(&self, r: u64) -> bool {
        match &self.repr {
            Repr::Dense(bits) => r < self.modulus.m() && bits.contains(r as usize),
            Repr::Sparse(v) => v.binary_search(&r).is_ok(),
        }
    }

    /// Elements in increasing order.
    pub fn iter(&self) -> Iter<'_> {
        match &self.repr {
            Repr::Dense(bits) => Iter::Dense(alloc::boxed::Box::new(bits.iter_ones())),
            Repr::Sparse(v) => Iter::Sparse(v.iter()),
        }
    }

    pub fn to_vec(&self) -> Vec<u64> {
        self.iter().collect()
    }

    pub(crate) fn dense_bits(&self) -> Option<&BitSet> {
        match &self.repr {
            Repr::Dense(bits) => Some(bits),
            Repr::Sparse(_) => None,
        }
    }

    /// `A \ {r}`.
    pub fn without(&self, r: u64) -> Self {
        let layout = self.layout();
        Self::with_layout(&self.modulus, self.iter().filter(|&a| a != r), layout).expect("in range")
    }

    /// `A + c`.
    pub fn translate(&self, c: u64) -> Self {
        let m = self.modulus.m();
        let c = c % m;
        Self::from_residues(&self.modulus, self.iter().map(|a| (a + c) % m)).expect("in range")
    }

    pub(crate) fn check_same_ring(&self, other: &ResidueSet) -> Result<()> {
        if self.modulus == other.modulus {
            Ok(())
        } else {
            Err(Error::ModulusMismatch { left: self.modulus.m(), right: other.modulus.m() })
        }
    }
}

/// Ascending iterator over a [`ResidueSet`].
pub enum Iter<'a> {
    Dense(alloc::boxed::Box<dyn Iterator<Item = usize> + 'a>),
    Sparse(core::slice::Iter<'a, u64>),
}

impl Iterator for Iter<'_> {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        match self {
            Iter::Dense(it) => it.next().map(|i| i as u64),
            Iter::Sparse(it) => it.next().copied(),
        }
    }
}

impl<'a> IntoIterator for &'a ResidueSet {
    type Item = u64;
    type IntoIter = Iter<'a>;

    fn into_iter(self) -> Iter<'a> {
        self.iter()
    }
}

impl PartialEq for ResidueSet {
    fn eq(&self, other: &Self) -> bool {
        self.modulus == other.modulus && self.size == other.size && self.iter().eq(other.iter())
    }
}

impl Eq for ResidueSet {}

impl fmt::Debug for ResidueSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ResidueSet(mod {}) ", self.modulus.m())?;
        f.debug_set().entries(self.iter()).finish()
    }
}

#[cfg(feature = "serde")]
impl serde::Serialize for ResidueSet {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> core::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn dedup_and_range() {
        let m = Modulus::new(7).unwrap();
        let s = ResidueSet::from_residues(&m, [3, 1, 3, 2]).unwrap();
        assert_eq!(s.len(), 3);
        assert_eq!(s.to_vec(), vec![1, 2, 3]);
        assert_eq!(
            ResidueSet::from_residues(&m, [7]),
            Err(Error::OutOfRange { value: 7, modulus: 7 })
        );
        assert!(ResidueSet::empty(&m).is_empty());
        assert_eq!(ResidueSet::full(&m).len(), 7);
    }

    #[test]
    fn large_modulus_is_sparse() {
        let m = Modulus::new(DENSE_LIMIT + 3).unwrap();
        let s = ResidueSet::from_residues(&m, [5, DENSE_LIMIT + 2, 5]).unwrap();
        assert_eq!(s.layout(), Layout::Sparse);
        assert_eq!(s.len(), 2);
        assert!(s.contains(DENSE_LIMIT + 2));
        assert!(!s.contains(6));
    }

    proptest! {
        #[test]
        fn layouts_agree(m in 2u64..300, raw in proptest::collection::vec(0u64..1000, 0..40)) {
            let md = Modulus::new(m).unwrap();
            let residues: Vec<u64> = raw.iter().map(|r| r % m).collect();
            let d = ResidueSet::with_layout(&md, residues.iter().copied(), Layout::Dense).unwrap();
            let s = ResidueSet::with_layout(&md, residues.iter().copied(), Layout::Sparse).unwrap();
            prop_assert_eq!(&d, &s);
            prop_assert_eq!(d.len(), d.iter().count());
            for r in 0..m {
                prop_assert_eq!(d.contains(r), s.contains(r));
                prop_assert_eq!(d.contains(r), residues.contains(&r));
            }
        }
    }
}
