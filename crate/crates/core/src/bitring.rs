//! A bitset over `Z/m` with word-level cyclic rotation.
//!
//! Multiplying a subset of a cyclic group by a fixed element is, in
//! discrete-log coordinates, a rotation of its indicator bitset; `or_rotated`
//! does that in `O(m/64)` words. Bits at positions `>= m` in the top word
//! are kept zero as an invariant.

#[derive(Clone, Debug)]
pub struct CyclicBitSet {
    m: u64,
    words: Vec<u64>,
}

impl CyclicBitSet {
    pub fn new(m: u64) -> CyclicBitSet {
        assert!(m > 0, "modulus must be positive");
        CyclicBitSet { m, words: vec![0; m.div_ceil(64) as usize] }
    }

    pub fn modulus(&self) -> u64 {
        self.m
    }

    #[inline]
    pub fn set(&mut self, k: u64) {
        debug_assert!(k < self.m);
        self.words[(k / 64) as usize] |= 1 << (k % 64);
    }

    #[inline]
    pub fn contains(&self, k: u64) -> bool {
        debug_assert!(k < self.m);
        self.words[(k / 64) as usize] >> (k % 64) & 1 == 1
    }

    pub fn count(&self) -> u64 {
        self.words.iter().map(|w| w.count_ones() as u64).sum()
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn is_subset_of(&self, other: &CyclicBitSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = u64> + '_ {
        self.words.iter().enumerate().flat_map(|(w, &word)| {
            let mut bits = word;
            std::iter::from_fn(move || {
                if bits == 0 {
                    return None;
                }
                let b = bits.trailing_zeros();
                bits &= bits - 1;
                Some(64 * w as u64 + b as u64)
            })
        })
    }

    /// `self |= rotate(src, shift)`, where bit `i` of `src` moves to
    /// `(i + shift) mod m`. `src` must come from a set with the same `m`.
    pub fn or_rotated(&mut self, src: &[u64], shift: u64) {
        debug_assert!(shift < self.m);
        debug_assert_eq!(src.len(), self.words.len());
        let m = self.m;
        for (w, &word) in src.iter().enumerate() {
            if word == 0 {
                continue;
            }
            let start = 64 * w as u64;
            let avail = (m - start).min(64) as u32;
            let base = (start + shift) % m;
            if base + avail as u64 <= m {
                self.scatter(base, word);
            } else {
                let first = (m - base) as u32;
                self.scatter(base, word & ((1u64 << first) - 1));
                self.scatter(0, word >> first);
            }
        }
    }

    #[inline]
    fn scatter(&mut self, pos: u64, bits: u64) {
        if bits == 0 {
            return;
        }
        let w = (pos / 64) as usize;
        let off = (pos % 64) as u32;
        self.words[w] |= bits << off;
        if off > 0 {
            let hi = bits >> (64 - off);
            if hi != 0 {
                self.words[w + 1] |= hi;
            }
        }
    }
}
