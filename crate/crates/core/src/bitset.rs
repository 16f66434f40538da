//! Fixed-length bit set used as the canonical mask representation of a grid
//! function's 1-set. Unused high bits of the last word are always zero, so
//! equality, hashing and ordering on the word vector are well defined.

/// Fixed-length bit set backed by `u64` words.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Bitset {
    nbits: usize,
    words: Vec<u64>,
}

impl Bitset {
    pub fn new(nbits: usize) -> Self {
        Bitset {
            nbits,
            words: vec![0; nbits.div_ceil(64)],
        }
    }

    pub fn len(&self) -> usize {
        self.nbits
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.nbits);
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize, v: bool) {
        debug_assert!(i < self.nbits);
        if v {
            self.words[i / 64] |= 1 << (i % 64);
        } else {
            self.words[i / 64] &= !(1 << (i % 64));
        }
    }

    pub fn toggle(&mut self, i: usize) {
        debug_assert!(i < self.nbits);
        self.words[i / 64] ^= 1 << (i % 64);
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Indices of set bits, ascending.
    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(wi * 64 + b)
                }
            })
        })
    }

    fn zip_words(&self, other: &Bitset, f: impl Fn(u64, u64) -> u64) -> Bitset {
        debug_assert_eq!(self.nbits, other.nbits);
        Bitset {
            nbits: self.nbits,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }

    pub fn and(&self, other: &Bitset) -> Bitset {
        self.zip_words(other, |a, b| a & b)
    }

    pub fn or(&self, other: &Bitset) -> Bitset {
        self.zip_words(other, |a, b| a | b)
    }

    pub fn xor(&self, other: &Bitset) -> Bitset {
        self.zip_words(other, |a, b| a ^ b)
    }

    /// Bits set in `self` but not in `other`.
    pub fn minus(&self, other: &Bitset) -> Bitset {
        self.zip_words(other, |a, b| a & !b)
    }

    pub fn complement(&self) -> Bitset {
        let mut out = Bitset {
            nbits: self.nbits,
            words: self.words.iter().map(|&w| !w).collect(),
        };
        out.clear_tail();
        out
    }

    pub fn is_subset_of(&self, other: &Bitset) -> bool {
        debug_assert_eq!(self.nbits, other.nbits);
        self.words
            .iter()
            .zip(&other.words)
            .all(|(&a, &b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &Bitset) -> bool {
        debug_assert_eq!(self.nbits, other.nbits);
        self.words.iter().zip(&other.words).all(|(&a, &b)| a & b == 0)
    }

    pub fn full(nbits: usize) -> Bitset {
        let mut out = Bitset {
            nbits,
            words: vec![!0u64; nbits.div_ceil(64)],
        };
        out.clear_tail();
        out
    }

    fn clear_tail(&mut self) {
        let tail = self.nbits % 64;
        if tail != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << tail) - 1;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_get_roundtrip() {
        let mut b = Bitset::new(130);
        for i in [0, 1, 63, 64, 65, 128, 129] {
            assert!(!b.get(i));
            b.set(i, true);
            assert!(b.get(i));
        }
        assert_eq!(b.count_ones(), 7);
        assert_eq!(b.iter_ones().collect::<Vec<_>>(), vec![0, 1, 63, 64, 65, 128, 129]);
    }

    #[test]
    fn complement_respects_length() {
        let mut b = Bitset::new(70);
        b.set(3, true);
        let c = b.complement();
        assert_eq!(c.count_ones(), 69);
        assert!(!c.get(3));
        assert!(c.get(69));
        assert_eq!(Bitset::full(70).count_ones(), 70);
    }

    #[test]
    fn subset_and_setops() {
        let mut a = Bitset::new(40);
        let mut b = Bitset::new(40);
        a.set(5, true);
        b.set(5, true);
        b.set(7, true);
        assert!(a.is_subset_of(&b));
        assert!(!b.is_subset_of(&a));
        assert_eq!(a.and(&b), a);
        assert_eq!(a.or(&b), b);
        assert_eq!(b.minus(&a).iter_ones().collect::<Vec<_>>(), vec![7]);
        assert_eq!(a.xor(&b).iter_ones().collect::<Vec<_>>(), vec![7]);
    }
}
