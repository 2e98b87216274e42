//! Bit-packed GF(2) vectors and matrices.
//!
//! Storage is little-endian within 64-bit words: bit `i` lives in
//! `words[i / 64]` at position `i % 64`. Text form is an ASCII string of
//! `'0'`/`'1'` whose leftmost character is bit 0, so the 1-indexed basis
//! vector b^i of the literature is bit `i - 1` here.
//!
//! Row reduction always pivots on the lowest available column, and span
//! enumeration walks the reflected Gray code, so every derived list is
//! reproducible byte for byte.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Bits per storage word.
pub const WORD_BITS: usize = 64;

/// Default cap on the dimension of a subspace that [`span_iter`] will walk.
pub const DEFAULT_SPAN_CAP: usize = 30;

#[inline]
fn word_count(len: usize) -> usize {
    len.div_ceil(WORD_BITS)
}

/// Fixed-length vector over GF(2).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitString {
    len: usize,
    words: Vec<u64>,
}

impl Ord for BitString {
    /// Same as [`BitString::canonical_cmp`].
    fn cmp(&self, other: &Self) -> Ordering {
        self.canonical_cmp(other)
    }
}

impl PartialOrd for BitString {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl BitString {
    pub fn zeros(len: usize) -> Self {
        BitString {
            len,
            words: vec![0; word_count(len)],
        }
    }

    pub fn ones(len: usize) -> Self {
        let mut s = BitString {
            len,
            words: vec![u64::MAX; word_count(len)],
        };
        s.clear_tail();
        s
    }

    /// The unit vector with only bit `i` set.
    pub fn basis(len: usize, i: usize) -> Self {
        let mut s = Self::zeros(len);
        s.set(i, true);
        s
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(len: usize, indices: I) -> Self {
        let mut s = Self::zeros(len);
        for i in indices {
            s.set(i, true);
        }
        s
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        Self::from_indices(bits.len(), bits.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i))
    }

    /// Low `len` bits of `value`, bit 0 of the integer becoming bit 0 here.
    pub fn from_u64(len: usize, value: u64) -> Self {
        assert!(len <= WORD_BITS, "from_u64 supports at most 64 bits");
        let mut s = Self::zeros(len);
        if len > 0 {
            s.words[0] = value;
            s.clear_tail();
        }
        s
    }

    /// Inverse of [`BitString::from_u64`]; `None` when longer than 64 bits.
    pub fn to_u64(&self) -> Option<u64> {
        match self.words.len() {
            0 => Some(0),
            1 => Some(self.words[0]),
            _ => None,
        }
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
    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit {i} out of range for length {}", self.len);
        (self.words[i / WORD_BITS] >> (i % WORD_BITS)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit {i} out of range for length {}", self.len);
        let mask = 1u64 << (i % WORD_BITS);
        if value {
            self.words[i / WORD_BITS] |= mask;
        } else {
            self.words[i / WORD_BITS] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "bit {i} out of range for length {}", self.len);
        self.words[i / WORD_BITS] ^= 1u64 << (i % WORD_BITS);
    }

    /// Hamming weight.
    #[inline]
    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn lowest_set_bit(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * WORD_BITS + w.trailing_zeros() as usize)
    }

    /// Indices of set bits in increasing order.
    pub fn ones_iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    None
                } else {
                    let b = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    Some(wi * WORD_BITS + b)
                }
            })
        })
    }

    fn check_len(&self, other: &BitString) -> Result<()> {
        if self.len != other.len {
            return Err(Error::LengthMismatch {
                left: self.len,
                right: other.len,
            });
        }
        Ok(())
    }

    pub fn xor(&self, other: &BitString) -> Result<BitString> {
        self.check_len(other)?;
        let mut out = self.clone();
        out.xor_assign(other);
        Ok(out)
    }

    pub fn or(&self, other: &BitString) -> Result<BitString> {
        self.check_len(other)?;
        Ok(self.zip_words(other, |a, b| a | b))
    }

    pub fn and(&self, other: &BitString) -> Result<BitString> {
        self.check_len(other)?;
        Ok(self.zip_words(other, |a, b| a & b))
    }

    /// GF(2) inner product Σ k_i l_i mod 2.
    pub fn dot(&self, other: &BitString) -> Result<bool> {
        self.check_len(other)?;
        Ok(self.dot_unchecked(other))
    }

    /// In-place xor. Panics on length mismatch; use [`BitString::xor`] for
    /// the checked form.
    #[inline]
    pub fn xor_assign(&mut self, other: &BitString) {
        assert_eq!(self.len, other.len, "xor of bitstrings with different lengths");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= *b;
        }
    }

    #[inline]
    pub(crate) fn dot_unchecked(&self, other: &BitString) -> bool {
        let mut acc = 0u64;
        for (a, b) in self.words.iter().zip(&other.words) {
            acc ^= a & b;
        }
        acc.count_ones() % 2 == 1
    }

    /// weight(self ∨ other) without allocating.
    #[inline]
    pub fn or_weight(&self, other: &BitString) -> usize {
        debug_assert_eq!(self.len, other.len);
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a | b).count_ones() as usize)
            .sum()
    }

    /// weight(self ∧ other) without allocating.
    #[inline]
    pub fn and_weight(&self, other: &BitString) -> usize {
        debug_assert_eq!(self.len, other.len);
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    /// `(self ⊕ x) ∨ y` weight without allocating.
    #[inline]
    pub(crate) fn xor_or_weight(&self, x: &BitString, y: &BitString) -> usize {
        self.words
            .iter()
            .zip(&x.words)
            .zip(&y.words)
            .map(|((a, b), c)| ((a ^ b) | c).count_ones() as usize)
            .sum()
    }

    /// Concatenation `self ‖ other`.
    pub fn concat(&self, other: &BitString) -> BitString {
        let mut out = BitString::zeros(self.len + other.len);
        for i in self.ones_iter() {
            out.set(i, true);
        }
        for i in other.ones_iter() {
            out.set(self.len + i, true);
        }
        out
    }

    /// Bits `range.start..range.end` as a new string.
    pub fn slice(&self, start: usize, end: usize) -> BitString {
        assert!(start <= end && end <= self.len);
        BitString::from_indices(
            end - start,
            self.ones_iter().filter(|&i| i >= start && i < end).map(|i| i - start),
        )
    }

    /// Canonical order: lighter strings first, ties broken by the text form
    /// read left to right with `'0' < '1'`.
    pub fn canonical_cmp(&self, other: &BitString) -> Ordering {
        self.weight().cmp(&other.weight()).then_with(|| {
            for i in 0..self.len.min(other.len) {
                match (self.get(i), other.get(i)) {
                    (false, true) => return Ordering::Less,
                    (true, false) => return Ordering::Greater,
                    _ => {}
                }
            }
            self.len.cmp(&other.len)
        })
    }

    fn zip_words(&self, other: &BitString, f: impl Fn(u64, u64) -> u64) -> BitString {
        BitString {
            len: self.len,
            words: self.words.iter().zip(&other.words).map(|(&a, &b)| f(a, b)).collect(),
        }
    }

    fn clear_tail(&mut self) {
        let rem = self.len % WORD_BITS;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = (0..self.len).map(|i| if self.get(i) { '1' } else { '0' }).collect();
        f.write_str(&s)
    }
}

impl fmt::Debug for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitString({self})")
    }
}

impl FromStr for BitString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut out = BitString::zeros(s.chars().count());
        for (i, c) in s.chars().enumerate() {
            match c {
                '0' => {}
                '1' => out.set(i, true),
                other => return Err(Error::Parse(format!("unexpected character {other:?} in bitstring"))),
            }
        }
        Ok(out)
    }
}

impl Serialize for BitString {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for BitString {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Number of set bits.
pub fn weight(k: &BitString) -> usize {
    k.weight()
}

pub fn dot(k: &BitString, l: &BitString) -> Result<bool> {
    k.dot(l)
}

/// Dense row-major GF(2) matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Gf2Matrix {
    cols: usize,
    rows: Vec<BitString>,
}

impl Gf2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Gf2Matrix {
            cols,
            rows: vec![BitString::zeros(cols); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        Gf2Matrix {
            cols: n,
            rows: (0..n).map(|i| BitString::basis(n, i)).collect(),
        }
    }

    /// Builds a matrix from rows of equal length. An empty row list needs an
    /// explicit column count, see [`Gf2Matrix::from_rows_with_cols`].
    pub fn from_rows(rows: Vec<BitString>) -> Result<Self> {
        let cols = rows.first().map_or(0, BitString::len);
        Self::from_rows_with_cols(rows, cols)
    }

    pub fn from_rows_with_cols(rows: Vec<BitString>, cols: usize) -> Result<Self> {
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::LengthMismatch {
                left: cols,
                right: bad.len(),
            });
        }
        Ok(Gf2Matrix { cols, rows })
    }

    #[inline]
    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    #[inline]
    pub fn n_cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r].get(c)
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        self.rows[r].set(c, value);
    }

    #[inline]
    pub fn flip(&mut self, r: usize, c: usize) {
        self.rows[r].flip(c);
    }

    #[inline]
    pub fn row(&self, r: usize) -> &BitString {
        &self.rows[r]
    }

    pub fn rows(&self) -> &[BitString] {
        &self.rows
    }

    pub fn column(&self, c: usize) -> BitString {
        BitString::from_indices(self.rows.len(), (0..self.rows.len()).filter(|&r| self.rows[r].get(c)))
    }

    pub fn transpose(&self) -> Gf2Matrix {
        let mut t = Gf2Matrix::zeros(self.cols, self.rows.len());
        for (r, row) in self.rows.iter().enumerate() {
            for c in row.ones_iter() {
                t.set(c, r, true);
            }
        }
        t
    }

    pub fn is_square(&self) -> bool {
        self.rows.len() == self.cols
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && self
                .rows
                .iter()
                .enumerate()
                .all(|(r, row)| row.ones_iter().all(|c| self.get(c, r)))
    }

    pub fn has_zero_diagonal(&self) -> bool {
        self.is_square() && (0..self.cols).all(|i| !self.get(i, i))
    }

    /// GF(2) product `self · k`.
    pub fn mat_vec(&self, k: &BitString) -> Result<BitString> {
        if k.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "matrix has {} columns, vector has length {}",
                self.cols,
                k.len()
            )));
        }
        Ok(self.mat_vec_unchecked(k))
    }

    pub(crate) fn mat_vec_unchecked(&self, k: &BitString) -> BitString {
        BitString::from_indices(
            self.rows.len(),
            self.rows
                .iter()
                .enumerate()
                .filter(|(_, row)| row.dot_unchecked(k))
                .map(|(i, _)| i),
        )
    }

    /// Reduced row echelon form with lowest-column pivots; returns the
    /// nonzero reduced rows and their pivot columns.
    pub fn row_reduce(&self) -> (Vec<BitString>, Vec<usize>) {
        let mut rows = self.rows.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == rows.len() {
                break;
            }
            let Some(found) = (r..rows.len()).find(|&i| rows[i].get(c)) else {
                continue;
            };
            rows.swap(r, found);
            let pivot_row = rows[r].clone();
            for (j, row) in rows.iter_mut().enumerate() {
                if j != r && row.get(c) {
                    row.xor_assign(&pivot_row);
                }
            }
            pivots.push(c);
            r += 1;
        }
        rows.truncate(r);
        (rows, pivots)
    }

    pub fn rank(&self) -> usize {
        self.row_reduce().1.len()
    }

    /// Basis of {x : self·x = 0}, one vector per free column in increasing
    /// column order.
    pub fn kernel_basis(&self) -> Vec<BitString> {
        let (reduced, pivots) = self.row_reduce();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut x = BitString::basis(self.cols, f);
                for (row, &p) in reduced.iter().zip(&pivots) {
                    if row.get(f) {
                        x.set(p, true);
                    }
                }
                x
            })
            .collect()
    }
}

impl fmt::Debug for Gf2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Gf2Matrix {}x{}", self.rows.len(), self.cols)?;
        for row in &self.rows {
            writeln!(f, "  {row}")?;
        }
        Ok(())
    }
}

/// Incrementally built echelon basis keyed by lowest set bit.
///
/// Each stored vector has a distinct lowest set bit (its pivot); a vector is
/// reduced by walking pivots in increasing order, which clears every pivot
/// position of the input.
#[derive(Clone, Debug)]
pub struct EchelonBasis {
    len: usize,
    by_pivot: BTreeMap<usize, BitString>,
}

impl EchelonBasis {
    pub fn new(len: usize) -> Self {
        EchelonBasis {
            len,
            by_pivot: BTreeMap::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn rank(&self) -> usize {
        self.by_pivot.len()
    }

    pub fn is_empty(&self) -> bool {
        self.by_pivot.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.by_pivot.len() == self.len
    }

    pub fn reduce(&self, v: &BitString) -> BitString {
        let mut v = v.clone();
        self.reduce_in_place(&mut v);
        v
    }

    pub fn reduce_in_place(&self, v: &mut BitString) {
        assert_eq!(v.len(), self.len, "vector length does not match basis");
        for (&p, b) in &self.by_pivot {
            if v.get(p) {
                v.xor_assign(b);
            }
        }
    }

    pub fn contains(&self, v: &BitString) -> bool {
        self.reduce(v).is_zero()
    }

    /// Inserts `v` if it is independent of the current basis.
    pub fn insert(&mut self, v: &BitString) -> bool {
        let r = self.reduce(v);
        match r.lowest_set_bit() {
            Some(p) => {
                self.by_pivot.insert(p, r);
                true
            }
            None => false,
        }
    }

    pub fn vectors(&self) -> impl Iterator<Item = &BitString> {
        self.by_pivot.values()
    }
}

/// rank of a list of equal-length vectors.
pub fn rank_of(vs: &[BitString]) -> usize {
    let Some(first) = vs.first() else { return 0 };
    let mut basis = EchelonBasis::new(first.len());
    for v in vs {
        basis.insert(v);
    }
    basis.rank()
}

/// Maximal independent sublist, greedy in input order.
pub fn independent_subset(vs: &[BitString]) -> Result<Vec<BitString>> {
    let Some(first) = vs.first() else {
        return Ok(Vec::new());
    };
    let len = first.len();
    if let Some(bad) = vs.iter().find(|v| v.len() != len) {
        return Err(Error::LengthMismatch {
            left: len,
            right: bad.len(),
        });
    }
    let mut basis = EchelonBasis::new(len);
    Ok(vs.iter().filter(|v| basis.insert(v)).cloned().collect())
}

/// Walks all 2^r combinations of an independent basis in reflected Gray
/// code order, starting from the zero vector.
#[derive(Clone, Debug)]
pub struct SpanIter {
    basis: Vec<BitString>,
    current: BitString,
    step: u64,
    total: u64,
}

impl SpanIter {
    /// Number of vectors the iterator yields in total.
    pub fn total(&self) -> u64 {
        self.total
    }
}

impl Iterator for SpanIter {
    type Item = BitString;

    fn next(&mut self) -> Option<BitString> {
        if self.step >= self.total {
            return None;
        }
        if self.step > 0 {
            let flip = self.step.trailing_zeros() as usize;
            self.current.xor_assign(&self.basis[flip]);
        }
        self.step += 1;
        Some(self.current.clone())
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.total - self.step) as usize;
        (left, Some(left))
    }
}

/// Span enumeration for `basis` (vectors of length `len`), refusing bases
/// with more than `cap` vectors.
pub fn span_iter(basis: &[BitString], len: usize, cap: usize) -> Result<SpanIter> {
    if basis.len() > cap || basis.len() >= 64 {
        return Err(Error::SubspaceTooLarge {
            dim: basis.len(),
            cap: cap.min(63),
        });
    }
    if let Some(bad) = basis.iter().find(|b| b.len() != len) {
        return Err(Error::LengthMismatch {
            left: len,
            right: bad.len(),
        });
    }
    Ok(SpanIter {
        basis: basis.to_vec(),
        current: BitString::zeros(len),
        step: 0,
        total: 1u64 << basis.len(),
    })
}

/// Lexicographic k-subsets of `0..n`.
#[derive(Clone, Debug)]
pub struct Combinations {
    n: usize,
    idx: Vec<usize>,
    done: bool,
}

impl Combinations {
    pub fn new(n: usize, k: usize) -> Self {
        Combinations {
            n,
            idx: (0..k).collect(),
            done: k > n,
        }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.idx.clone();
        let k = self.idx.len();
        // advance to the next subset
        let mut i = k;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.idx[i] < self.n - k + i {
                self.idx[i] += 1;
                for j in i + 1..k {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}

/// All length-`n` strings of weight exactly `w`, in lexicographic order of
/// their support.
pub fn weight_class(n: usize, w: usize) -> impl Iterator<Item = BitString> {
    Combinations::new(n, w).map(move |c| BitString::from_indices(n, c))
}

/// All length-`n` strings of weight at most `max_w`, lighter classes first.
pub fn up_to_weight(n: usize, max_w: usize) -> impl Iterator<Item = BitString> {
    (0..=max_w.min(n)).flat_map(move |w| weight_class(n, w))
}

/// Binomial coefficient, saturating at `u128::MAX`.
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = match acc.checked_mul((n - i) as u128) {
            Some(v) => v / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// Σ_{w ≤ max_w} C(n, w).
pub fn count_up_to_weight(n: usize, max_w: usize) -> u128 {
    (0..=max_w.min(n)).fold(0u128, |acc, w| acc.saturating_add(binomial(n, w)))
}
