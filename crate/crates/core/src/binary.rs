//! Binary linear codes given by a row-reduced basis.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};

/// Largest dimension for full codeword enumeration (distance, weights).
pub const MAX_ENUMERATION_K: usize = 24;
/// Largest dimension for the exhaustive minimality scan.
pub const MAX_MINIMALITY_K: usize = 16;

/// A vector in F₂^n packed into 64-bit blocks.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Word {
    len: usize,
    blocks: Vec<u64>,
}

impl Word {
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            blocks: vec![0; len.div_ceil(64)],
        }
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut w = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b {
                w.set(i);
            }
        }
        w
    }

    pub fn from_positions(len: usize, positions: &[usize]) -> Self {
        let mut w = Self::zeros(len);
        for &i in positions {
            w.set(i);
        }
        w
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        self.blocks[i / 64] >> (i % 64) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize) {
        assert!(i < self.len, "bit {i} out of range for length {}", self.len);
        self.blocks[i / 64] |= 1 << (i % 64);
    }

    #[inline]
    pub fn xor_assign(&mut self, other: &Self) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.blocks.iter_mut().zip(&other.blocks) {
            *a ^= b;
        }
    }

    #[inline]
    pub fn weight(&self) -> usize {
        self.blocks.iter().map(|b| b.count_ones() as usize).sum()
    }

    /// `|Supp(self) ∩ Supp(other)|`.
    #[inline]
    pub fn overlap(&self, other: &Self) -> usize {
        self.blocks
            .iter()
            .zip(&other.blocks)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    /// Whether `Supp(self) ⊆ Supp(other)`.
    #[inline]
    pub fn is_covered_by(&self, other: &Self) -> bool {
        self.blocks.iter().zip(&other.blocks).all(|(a, b)| a & !b == 0)
    }

    /// Bits of `self` outside the support of `other`.
    pub fn and_not(&self, other: &Self) -> Self {
        Self {
            len: self.len,
            blocks: self.blocks.iter().zip(&other.blocks).map(|(a, b)| a & !b).collect(),
        }
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(|&b| b == 0)
    }

    pub fn first_one(&self) -> Option<usize> {
        self.blocks
            .iter()
            .enumerate()
            .find(|(_, &b)| b != 0)
            .map(|(i, b)| i * 64 + b.trailing_zeros() as usize)
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("Word(")?;
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        f.write_str(")")
    }
}

/// A binary linear code held as a basis in reduced row echelon form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryCode {
    n: usize,
    basis: Vec<Word>,
}

impl BinaryCode {
    /// Row-reduces `generators` into an independent basis of their span.
    pub fn from_generators<I>(n: usize, generators: I) -> Result<Self>
    where
        I: IntoIterator<Item = Word>,
    {
        let mut rows: Vec<(usize, Word)> = Vec::new();
        for mut g in generators {
            if g.len() != n {
                return Err(Error::LengthMismatch { left: n, right: g.len() });
            }
            for (pivot, row) in &rows {
                if g.get(*pivot) {
                    g.xor_assign(row);
                }
            }
            let Some(pivot) = g.first_one() else { continue };
            for (_, row) in rows.iter_mut() {
                if row.get(pivot) {
                    row.xor_assign(&g);
                }
            }
            rows.push((pivot, g));
        }
        rows.sort_by_key(|(p, _)| *p);
        Ok(Self {
            n,
            basis: rows.into_iter().map(|(_, r)| r).collect(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Word] {
        &self.basis
    }

    pub fn contains(&self, word: &Word) -> bool {
        if word.len() != self.n {
            return false;
        }
        let mut w = word.clone();
        for row in &self.basis {
            let pivot = row.first_one().expect("basis rows are nonzero");
            if w.get(pivot) {
                w.xor_assign(row);
            }
        }
        w.is_zero()
    }

    /// Every pair of basis rows, including each row with itself, meets in
    /// an even number of positions.
    pub fn is_self_orthogonal(&self) -> bool {
        self.basis.iter().enumerate().all(|(i, a)| {
            self.basis[i..].iter().all(|b| a.overlap(b) % 2 == 0)
        })
    }

    /// Hamming weight distribution over all `2^k` codewords.
    pub fn weight_distribution(&self) -> Result<BTreeMap<usize, u64>> {
        self.check_k(MAX_ENUMERATION_K, "weight enumeration")?;
        Ok(self.fold_codewords(
            BTreeMap::new,
            |hist, w| *hist.entry(w.weight()).or_insert(0u64) += 1,
            |mut a, b| {
                for (w, f) in b {
                    *a.entry(w).or_insert(0) += f;
                }
                a
            },
        ))
    }

    /// Minimum nonzero weight; `None` for the zero code.
    pub fn min_distance(&self) -> Result<Option<usize>> {
        self.check_k(MAX_ENUMERATION_K, "minimum distance")?;
        let d = self.fold_codewords(
            || usize::MAX,
            |best, w| {
                let wt = w.weight();
                if wt > 0 && wt < *best {
                    *best = wt;
                }
            },
            usize::min,
        );
        Ok((d != usize::MAX).then_some(d))
    }

    pub fn all_weights_div4(&self) -> Result<bool> {
        Ok(self.weight_distribution()?.keys().all(|w| w % 4 == 0))
    }

    /// True iff no nonzero codeword's support strictly contains another's.
    ///
    /// A nonzero `c` is minimal iff the subcode supported inside `Supp(c)`
    /// is `{0, c}`, i.e. the basis restricted to the complement of
    /// `Supp(c)` has rank `k - 1`.
    pub fn is_minimal_exhaustive(&self) -> Result<bool> {
        self.check_k(MAX_MINIMALITY_K, "minimality scan")?;
        let k = self.k();
        Ok(self.fold_codewords(
            || true,
            |ok, c| {
                if *ok && !c.is_zero() {
                    let outside: Vec<Word> = self.basis.iter().map(|r| r.and_not(c)).collect();
                    *ok = rank(outside) + 1 == k;
                }
            },
            |a, b| a && b,
        ))
    }

    fn check_k(&self, cap: usize, what: &'static str) -> Result<()> {
        if self.k() > cap {
            return Err(Error::DimensionTooLarge { k: self.k(), cap, what });
        }
        Ok(())
    }

    /// Visits all `2^k` codewords, split across threads by the top basis
    /// rows and walked in Gray-code order within each chunk.
    fn fold_codewords<A, I, V, M>(&self, init: I, visit: V, merge: M) -> A
    where
        A: Send,
        I: Fn() -> A + Sync + Send,
        V: Fn(&mut A, &Word) + Sync + Send,
        M: Fn(A, A) -> A + Sync + Send,
    {
        let k = self.k();
        let split = k.min(8);
        let low = k - split;
        (0u64..(1u64 << split))
            .into_par_iter()
            .map(|prefix| {
                let mut acc = init();
                let mut cur = Word::zeros(self.n);
                for j in 0..split {
                    if prefix >> j & 1 == 1 {
                        cur.xor_assign(&self.basis[low + j]);
                    }
                }
                visit(&mut acc, &cur);
                for i in 1u64..(1u64 << low) {
                    cur.xor_assign(&self.basis[i.trailing_zeros() as usize]);
                    visit(&mut acc, &cur);
                }
                acc
            })
            .reduce(&init, &merge)
    }
}

/// Rank over F₂ of a list of words.
pub fn rank(mut rows: Vec<Word>) -> usize {
    let mut r = 0;
    for i in 0..rows.len() {
        let Some(pivot) = rows[i].first_one() else { continue };
        let pivot_row = rows[i].clone();
        for row in rows[i + 1..].iter_mut() {
            if row.get(pivot) {
                row.xor_assign(&pivot_row);
            }
        }
        r += 1;
    }
    r
}

/// Summary statistics of a Hamming weight distribution.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightSummary {
    pub num_nonzero_weights: usize,
    pub wt_min: Option<usize>,
    pub wt_max: Option<usize>,
}

impl WeightSummary {
    pub fn of(distribution: &BTreeMap<usize, u64>) -> Self {
        let nonzero: Vec<usize> = distribution
            .iter()
            .filter(|&(&w, &f)| w > 0 && f > 0)
            .map(|(&w, _)| w)
            .collect();
        Self {
            num_nonzero_weights: nonzero.len(),
            wt_min: nonzero.first().copied(),
            wt_max: nonzero.last().copied(),
        }
    }
}
