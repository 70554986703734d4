//! Dense linear algebra over the two-element field.
//!
//! Vectors are packed 64 bits per word. Every elimination routine in this
//! module pivots on the *highest* set bit of a vector, which is the
//! convention filtered reductions need: order the basis by filtration
//! level and the pivot of a reduced column is its lowest-filtration-drop
//! target.

use std::fmt;

const WORD: usize = 64;

/// A vector in `F_2^len`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitVec {
    words: Vec<u64>,
    len: usize,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        BitVec {
            words: vec![0; len.div_ceil(WORD)],
            len,
        }
    }

    /// Vector with ones exactly at `indices` (repeated indices cancel).
    pub fn from_indices(len: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut v = BitVec::zeros(len);
        for i in indices {
            v.flip(i);
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        self.words[i / WORD] >> (i % WORD) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        let mask = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    pub fn xor_assign(&mut self, other: &BitVec) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= *b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|w| *w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Index of the highest set bit, if any.
    pub fn highest(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .rev()
            .find(|(_, w)| **w != 0)
            .map(|(k, w)| k * WORD + (WORD - 1 - w.leading_zeros() as usize))
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |i| self.get(*i))
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// An incrementally built basis in echelon form, keyed by highest set bit.
///
/// Supports span membership and rank queries without ever materialising a
/// full matrix.
#[derive(Clone, Debug)]
pub struct Echelon {
    dim: usize,
    pivots: Vec<Option<usize>>,
    basis: Vec<BitVec>,
}

impl Echelon {
    pub fn new(dim: usize) -> Self {
        Echelon {
            dim,
            pivots: vec![None; dim],
            basis: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Reduce `v` against the basis; the result is zero iff `v` lies in the span.
    pub fn reduce(&self, v: &BitVec) -> BitVec {
        let mut v = v.clone();
        while let Some(p) = v.highest() {
            match self.pivots[p] {
                Some(k) => v.xor_assign(&self.basis[k]),
                None => break,
            }
        }
        v
    }

    pub fn contains(&self, v: &BitVec) -> bool {
        self.reduce(v).is_zero()
    }

    /// Adds `v` to the span. Returns `true` when the rank grew.
    pub fn insert(&mut self, v: &BitVec) -> bool {
        debug_assert_eq!(v.len(), self.dim);
        let r = self.reduce(v);
        match r.highest() {
            Some(p) => {
                self.pivots[p] = Some(self.basis.len());
                self.basis.push(r);
                true
            }
            None => false,
        }
    }
}

/// Rank of the span of `vectors`, all of length `dim`.
pub fn rank(dim: usize, vectors: &[BitVec]) -> usize {
    let mut e = Echelon::new(dim);
    for v in vectors {
        e.insert(v);
    }
    e.rank()
}

/// Outcome of column-reducing a matrix given by its columns.
#[derive(Clone, Debug)]
pub struct ColumnReduction {
    /// Reduced columns; nonzero columns have pairwise distinct pivots.
    pub reduced: Vec<BitVec>,
    /// `combination[j]` records which original columns sum to `reduced[j]`.
    pub combination: Vec<BitVec>,
    /// `(column, pivot row)` for every nonzero reduced column.
    pub pairs: Vec<(usize, usize)>,
}

impl ColumnReduction {
    pub fn rank(&self) -> usize {
        self.pairs.len()
    }

    /// Basis of the null space, as combinations of the original columns.
    pub fn kernel(&self) -> Vec<BitVec> {
        self.reduced
            .iter()
            .zip(&self.combination)
            .filter(|(r, _)| r.is_zero())
            .map(|(_, c)| c.clone())
            .collect()
    }
}

/// Left-to-right column reduction: each column is reduced only by columns to
/// its left, so the pivot pairing respects any filtration the column order
/// encodes.
pub fn reduce_columns(nrows: usize, columns: &[BitVec]) -> ColumnReduction {
    let ncols = columns.len();
    let mut owner: Vec<Option<usize>> = vec![None; nrows];
    let mut reduced = Vec::with_capacity(ncols);
    let mut combination = Vec::with_capacity(ncols);
    let mut pairs = Vec::new();
    for (j, col) in columns.iter().enumerate() {
        debug_assert_eq!(col.len(), nrows);
        let mut r = col.clone();
        let mut c = BitVec::zeros(ncols);
        c.set(j, true);
        while let Some(p) = r.highest() {
            match owner[p] {
                Some(k) => {
                    r.xor_assign(&reduced[k]);
                    c.xor_assign(&combination[k]);
                }
                None => break,
            }
        }
        if let Some(p) = r.highest() {
            owner[p] = Some(j);
            pairs.push((j, p));
        }
        reduced.push(r);
        combination.push(c);
    }
    ColumnReduction {
        reduced,
        combination,
        pairs,
    }
}
