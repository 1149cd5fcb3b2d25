//! Fixed-length bit array with cyclic shifted unions.

use alloc::vec;
use alloc::vec::Vec;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) struct BitSet {
    len: usize,
    words: Vec<u64>,
}

impl BitSet {
    pub fn new(len: usize) -> Self {
        BitSet { len, words: vec![0; len.div_ceil(64)] }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn insert(&mut self, i: usize) -> bool {
        debug_assert!(i < self.len);
        let (w, b) = (i / 64, i % 64);
        let fresh = self.words[w] & (1 << b) == 0;
        self.words[w] |= 1 << b;
        fresh
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        i < self.len && self.words[i / 64] & (1 << (i % 64)) != 0
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &word)| {
            let mut w = word;
            core::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * 64 + b)
            })
        })
    }

    /// 64 bits of `self` starting at bit `pos`; bits past `len` read as zero.
    #[inline]
    fn window64(&self, pos: usize) -> u64 {
        let (w, b) = (pos / 64, pos % 64);
        let lo = self.words.get(w).copied().unwrap_or(0) >> b;
        if b == 0 {
            lo
        } else {
            lo | (self.words.get(w + 1).copied().unwrap_or(0) << (64 - b))
        }
    }

    /// ORs `src[from .. from + count]` into `self[to .. to + count]`.
    fn or_range(&mut self, src: &BitSet, from: usize, to: usize, count: usize) {
        if count == 0 {
            return;
        }
        let end = to + count;
        let mut pos = to;
        while pos < end {
            let wi = pos / 64;
            let off = pos % 64;
            let take = (64 - off).min(end - pos);
            let mut bits = src.window64(from + (pos - to));
            if take < 64 {
                bits &= (1u64 << take) - 1;
            }
            self.words[wi] |= bits << off;
            pos += take;
        }
    }

    /// `self |= rotate(src, shift)` where bit `i` of `src` lands on `(i + shift) mod len`.
    pub fn or_rotated(&mut self, src: &BitSet, shift: usize) {
        debug_assert_eq!(self.len, src.len);
        let n = self.len;
        if n == 0 {
            return;
        }
        let s = shift % n;
        self.or_range(src, 0, s, n - s);
        self.or_range(src, n - s, 0, s);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive_rotate(src: &BitSet, shift: usize) -> BitSet {
        let mut out = BitSet::new(src.len());
        for i in src.iter_ones() {
            out.insert((i + shift) % src.len());
        }
        out
    }

    #[test]
    fn rotation_matches_naive() {
        for len in [1usize, 5, 63, 64, 65, 127, 128, 200] {
            let mut src = BitSet::new(len);
            for i in (0..len).filter(|i| i % 3 == 0 || i % 7 == 1) {
                src.insert(i);
            }
            for shift in 0..len + 3 {
                let mut got = BitSet::new(len);
                got.or_rotated(&src, shift);
                assert_eq!(got, naive_rotate(&src, shift), "len={len} shift={shift}");
            }
        }
    }

    #[test]
    fn iter_and_count() {
        let mut b = BitSet::new(130);
        for i in [0, 63, 64, 129] {
            assert!(b.insert(i));
        }
        assert!(!b.insert(64));
        assert_eq!(b.count_ones(), 4);
        assert_eq!(b.iter_ones().collect::<Vec<_>>(), vec![0, 63, 64, 129]);
        assert!(!b.contains(130));
    }
}
