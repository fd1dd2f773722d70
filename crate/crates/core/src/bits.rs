//! Packed bit sets and boolean matrices over a fixed finite universe.
//!
//! Every set and matrix in this crate lives over the symbol alphabet of one
//! graph, so the universe size is carried explicitly and mixing universes is
//! a logic error (checked with debug assertions).

use alloc::vec;
use alloc::vec::Vec;

const WORD: usize = 64;

fn words_for(n: usize) -> usize {
    n.div_ceil(WORD)
}

/// Subset of `{0, .., len-1}` packed into `u64` words.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BitSet {
    len: usize,
    words: Vec<u64>,
}

impl BitSet {
    /// Empty set over a universe of `len` elements.
    pub fn new(len: usize) -> Self {
        BitSet {
            len,
            words: vec![0; words_for(len)],
        }
    }

    /// Set containing exactly the given indices.
    pub fn from_indices(len: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut s = BitSet::new(len);
        for i in indices {
            s.insert(i);
        }
        s
    }

    /// Universe size (not the cardinality).
    pub fn universe(&self) -> usize {
        self.len
    }

    pub fn insert(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i / WORD] |= 1 << (i % WORD);
    }

    pub fn remove(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i / WORD] &= !(1 << (i % WORD));
    }

    pub fn contains(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        self.words[i / WORD] >> (i % WORD) & 1 == 1
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Cardinality.
    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Smallest element, if any.
    pub fn first(&self) -> Option<usize> {
        for (k, &w) in self.words.iter().enumerate() {
            if w != 0 {
                return Some(k * WORD + w.trailing_zeros() as usize);
            }
        }
        None
    }

    pub fn union_with(&mut self, other: &BitSet) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn intersect_with(&mut self, other: &BitSet) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn intersection(&self, other: &BitSet) -> BitSet {
        let mut s = self.clone();
        s.intersect_with(other);
        s
    }

    pub fn is_subset_of(&self, other: &BitSet) -> bool {
        debug_assert_eq!(self.len, other.len);
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn intersects(&self, other: &BitSet) -> bool {
        debug_assert_eq!(self.len, other.len);
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    /// Ascending iterator over the elements.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(k, &w)| {
            let mut rest = w;
            core::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let b = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(k * WORD + b)
            })
        })
    }

    pub(crate) fn words(&self) -> &[u64] {
        &self.words
    }
}

impl core::fmt::Debug for BitSet {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Square boolean matrix over the same universe as [`BitSet`], one packed row
/// per element. Multiplication ORs rows, which keeps walk composition linear
/// in the number of set bits.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BitMatrix {
    n: usize,
    w: usize,
    bits: Vec<u64>,
}

impl BitMatrix {
    pub fn zero(n: usize) -> Self {
        let w = words_for(n);
        BitMatrix {
            n,
            w,
            bits: vec![0; n * w],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = BitMatrix::zero(n);
        for i in 0..n {
            m.set(i, i);
        }
        m
    }

    /// Diagonal matrix with ones exactly on `set`.
    pub fn diagonal(set: &BitSet) -> BitMatrix {
        let mut m = BitMatrix::zero(set.universe());
        for i in set.iter() {
            m.set(i, i);
        }
        m
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn set(&mut self, i: usize, j: usize) {
        debug_assert!(i < self.n && j < self.n);
        self.bits[i * self.w + j / WORD] |= 1 << (j % WORD);
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        debug_assert!(i < self.n && j < self.n);
        self.bits[i * self.w + j / WORD] >> (j % WORD) & 1 == 1
    }

    fn row_words(&self, i: usize) -> &[u64] {
        &self.bits[i * self.w..(i + 1) * self.w]
    }

    /// Row `i` as a set of column indices.
    pub fn row(&self, i: usize) -> BitSet {
        BitSet {
            len: self.n,
            words: self.row_words(i).to_vec(),
        }
    }

    pub fn row_is_zero(&self, i: usize) -> bool {
        self.row_words(i).iter().all(|&w| w == 0)
    }

    pub fn is_zero(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    /// Boolean product: `(self * rhs)(i, k) = OR_j self(i, j) & rhs(j, k)`.
    pub fn mul(&self, rhs: &BitMatrix) -> BitMatrix {
        debug_assert_eq!(self.n, rhs.n);
        let mut out = BitMatrix::zero(self.n);
        for i in 0..self.n {
            let dst_start = i * self.w;
            for j in self.row(i).iter() {
                let src = rhs.row_words(j);
                for (k, &word) in src.iter().enumerate() {
                    out.bits[dst_start + k] |= word;
                }
            }
        }
        out
    }

    /// Clears every column outside `keep`.
    pub fn mask_cols(&mut self, keep: &BitSet) {
        debug_assert_eq!(self.n, keep.universe());
        for i in 0..self.n {
            for (k, w) in keep.words().iter().enumerate() {
                self.bits[i * self.w + k] &= w;
            }
        }
    }

    /// Clears every row outside `keep`.
    pub fn mask_rows(&mut self, keep: &BitSet) {
        debug_assert_eq!(self.n, keep.universe());
        for i in 0..self.n {
            if !keep.contains(i) {
                self.bits[i * self.w..(i + 1) * self.w].fill(0);
            }
        }
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut out = BitMatrix::zero(self.n);
        for i in 0..self.n {
            for j in self.row(i).iter() {
                out.set(j, i);
            }
        }
        out
    }

    /// Indices of nonzero rows.
    pub fn row_support(&self) -> BitSet {
        BitSet::from_indices(self.n, (0..self.n).filter(|&i| !self.row_is_zero(i)))
    }

    /// Union of all rows: the set of columns hit anywhere.
    pub fn col_support(&self) -> BitSet {
        let mut s = BitSet::new(self.n);
        for i in 0..self.n {
            for (a, b) in s.words.iter_mut().zip(self.row_words(i)) {
                *a |= b;
            }
        }
        s
    }

    /// Set bits as ascending `(row, col)` pairs.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |i| self.row(i).iter().map(move |j| (i, j)).collect::<Vec<_>>())
    }
}

impl core::fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_set().entries(self.pairs()).finish()
    }
}
