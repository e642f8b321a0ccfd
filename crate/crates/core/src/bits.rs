//! Dense GF(2) vectors and matrices.
//!
//! Bit `i` of a vector lives in word `i / 64` at in-word position `i % 64`.
//! Text forms list bits index-ascending from left to right. Bits above `len`
//! are always zero, so equality is plain word comparison.

use std::fmt;
use std::ops::{BitAnd, BitXor, BitXorAssign};
use std::str::FromStr;

use crate::error::{Error, Result};

const WORD: usize = 64;

fn words_for(len: usize) -> usize {
    len.div_ceil(WORD)
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitVector {
    len: usize,
    words: Vec<u64>,
}

impl BitVector {
    pub fn zeros(len: usize) -> Self {
        BitVector {
            len,
            words: vec![0; words_for(len)],
        }
    }

    pub fn ones(len: usize) -> Self {
        let mut v = BitVector {
            len,
            words: vec![u64::MAX; words_for(len)],
        };
        v.mask_tail();
        v
    }

    /// Unit vector with bit `i` set.
    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(i, true);
        v
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            v.set(i, b);
        }
        v
    }

    /// Builds a vector from raw words, clearing anything above `len`.
    pub fn from_words(len: usize, words: &[u64]) -> Self {
        let mut w = words.to_vec();
        w.resize(words_for(len), 0);
        let mut v = BitVector { len, words: w };
        v.mask_tail();
        v
    }

    /// Low `len` bits of `value`, bit 0 first.
    pub fn from_u64(len: usize, value: u64) -> Self {
        Self::from_words(len, &[value])
    }

    fn mask_tail(&mut self) {
        let rem = self.len % WORD;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(
            i < self.len,
            "bit index {i} out of range for length {}",
            self.len
        );
        (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        assert!(
            i < self.len,
            "bit index {i} out of range for length {}",
            self.len
        );
        let mask = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    pub fn flip(&mut self, i: usize) {
        assert!(
            i < self.len,
            "bit index {i} out of range for length {}",
            self.len
        );
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    /// Hamming weight.
    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Inner product over GF(2).
    pub fn dot(&self, other: &BitVector) -> bool {
        assert_eq!(self.len, other.len, "length mismatch in dot product");
        self.words
            .iter()
            .zip(&other.words)
            .fold(0u32, |acc, (a, b)| acc ^ (a & b).count_ones())
            & 1
            == 1
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    pub fn ones_positions(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |&i| self.get(i))
    }

    /// Cyclic shift by `l` positions: output bit `(i + l) % len` is input bit `i`.
    pub fn cyclic_shift(&self, l: usize) -> Result<BitVector> {
        if l >= self.len {
            return Err(Error::param(format!(
                "shift {l} out of range for length {}",
                self.len
            )));
        }
        Ok(self.rotate(l))
    }

    /// Same as [`cyclic_shift`](Self::cyclic_shift) with `l` reduced modulo the length.
    pub fn rotate(&self, l: usize) -> BitVector {
        if self.len == 0 {
            return self.clone();
        }
        let l = l % self.len;
        if l == 0 {
            return self.clone();
        }
        let mut out = Self::zeros(self.len);
        for i in self.ones_positions() {
            let j = (i + l) % self.len;
            out.words[j / WORD] |= 1u64 << (j % WORD);
        }
        out
    }

    /// Copy extended (or truncated) to `len` bits.
    pub fn resized(&self, len: usize) -> BitVector {
        Self::from_words(len, &self.words)
    }

    /// Index-ascending '0'/'1' string.
    pub fn to_bit_string(&self) -> String {
        self.iter().map(|b| if b { '1' } else { '0' }).collect()
    }

    /// Little-endian packing: bit `i` of byte `b` holds data bit `8b + i`.
    pub fn to_packed_bytes(&self) -> Vec<u8> {
        let mut out = vec![0u8; self.len.div_ceil(8)];
        for i in self.ones_positions() {
            out[i / 8] |= 1 << (i % 8);
        }
        out
    }

    pub fn from_packed_bytes(len: usize, bytes: &[u8]) -> Result<BitVector> {
        if bytes.len() < len.div_ceil(8) {
            return Err(Error::param(format!(
                "{} bytes cannot hold {len} bits",
                bytes.len()
            )));
        }
        let mut v = Self::zeros(len);
        for i in 0..len {
            if (bytes[i / 8] >> (i % 8)) & 1 == 1 {
                v.set(i, true);
            }
        }
        Ok(v)
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVector({})", self.to_bit_string())
    }
}

impl fmt::Display for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_bit_string())
    }
}

impl FromStr for BitVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut v = BitVector::zeros(s.len());
        for (i, c) in s.chars().enumerate() {
            match c {
                '0' => {}
                '1' => v.set(i, true),
                other => {
                    return Err(Error::param(format!(
                        "invalid bit character {other:?} at position {i}"
                    )))
                }
            }
        }
        Ok(v)
    }
}

impl BitXorAssign<&BitVector> for BitVector {
    fn bitxor_assign(&mut self, rhs: &BitVector) {
        assert_eq!(self.len, rhs.len, "length mismatch in xor");
        for (a, b) in self.words.iter_mut().zip(&rhs.words) {
            *a ^= b;
        }
    }
}

impl BitXor for &BitVector {
    type Output = BitVector;

    fn bitxor(self, rhs: &BitVector) -> BitVector {
        let mut out = self.clone();
        out ^= rhs;
        out
    }
}

impl BitAnd for &BitVector {
    type Output = BitVector;

    fn bitand(self, rhs: &BitVector) -> BitVector {
        assert_eq!(self.len, rhs.len, "length mismatch in and");
        BitVector {
            len: self.len,
            words: self
                .words
                .iter()
                .zip(&rhs.words)
                .map(|(a, b)| a & b)
                .collect(),
        }
    }
}

/// Dense GF(2) matrix stored as rows.
#[derive(Clone, PartialEq, Eq)]
pub struct BitMatrix {
    cols: usize,
    rows: Vec<BitVector>,
}

impl BitMatrix {
    pub fn from_rows(rows: Vec<BitVector>) -> Result<BitMatrix> {
        let first = rows
            .first()
            .ok_or_else(|| Error::param("matrix needs at least one row"))?;
        let cols = first.len();
        if cols == 0 {
            return Err(Error::param("matrix needs at least one column"));
        }
        if let Some((i, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != cols) {
            return Err(Error::param(format!(
                "row {i} has {} columns, expected {cols}",
                r.len()
            )));
        }
        Ok(BitMatrix { cols, rows })
    }

    pub fn identity(m: usize) -> BitMatrix {
        BitMatrix {
            cols: m,
            rows: (0..m).map(|i| BitVector::unit(m, i)).collect(),
        }
    }

    pub fn rows(&self) -> &[BitVector] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &BitVector {
        &self.rows[i]
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn num_cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r].get(c)
    }

    /// Copy with row `i` replaced.
    pub fn with_row(&self, i: usize, row: BitVector) -> Result<BitMatrix> {
        if row.len() != self.cols {
            return Err(Error::param("replacement row has wrong length"));
        }
        let mut rows = self.rows.clone();
        rows[i] = row;
        Ok(BitMatrix {
            cols: self.cols,
            rows,
        })
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &BitMatrix) -> Result<BitMatrix> {
        if self.num_rows() != other.num_rows() {
            return Err(Error::param("hstack: row counts differ"));
        }
        let cols = self.cols + other.cols;
        let rows = self
            .rows
            .iter()
            .zip(&other.rows)
            .map(|(a, b)| {
                let mut r = a.resized(cols);
                for j in b.ones_positions() {
                    r.set(self.cols + j, true);
                }
                r
            })
            .collect();
        Ok(BitMatrix { cols, rows })
    }

    /// Vertical concatenation.
    pub fn vstack(&self, other: &BitMatrix) -> Result<BitMatrix> {
        if self.cols != other.cols {
            return Err(Error::param(format!(
                "column mismatch: {} vs {}",
                self.cols, other.cols
            )));
        }
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        Ok(BitMatrix {
            cols: self.cols,
            rows,
        })
    }

    /// Row-vector product `u · G`.
    pub fn mul_vec(&self, u: &BitVector) -> Result<BitVector> {
        if u.len() != self.num_rows() {
            return Err(Error::param(format!(
                "information word has {} bits, matrix has {} rows",
                u.len(),
                self.num_rows()
            )));
        }
        let mut out = BitVector::zeros(self.cols);
        for i in u.ones_positions() {
            out ^= &self.rows[i];
        }
        Ok(out)
    }

    /// XOR of all rows.
    pub fn row_sum(&self) -> BitVector {
        let mut out = BitVector::zeros(self.cols);
        for r in &self.rows {
            out ^= r;
        }
        out
    }

    pub fn transpose(&self) -> BitMatrix {
        let rows = (0..self.cols)
            .map(|c| BitVector::from_bools(&self.rows.iter().map(|r| r.get(c)).collect::<Vec<_>>()))
            .collect();
        BitMatrix {
            cols: self.rows.len(),
            rows,
        }
    }

    /// GF(2) row rank, computed on a copy.
    pub fn rank(&self) -> usize {
        reduce(self.rows.clone()).len()
    }

    /// True iff `G · Gᵀ = 0`, diagonal included.
    pub fn is_self_orthogonal(&self) -> bool {
        self.rows
            .iter()
            .enumerate()
            .all(|(i, a)| self.rows[i..].iter().all(|b| !a.dot(b)))
    }

    /// Row-space membership.
    pub fn contains(&self, v: &BitVector) -> Result<bool> {
        if v.len() != self.cols {
            return Err(Error::param(format!(
                "vector has {} bits, matrix has {} columns",
                v.len(),
                self.cols
            )));
        }
        let basis = reduce(self.rows.clone());
        Ok(reduce_against(&basis, v.clone()).is_zero())
    }

    /// True iff both matrices span the same row space.
    pub fn row_space_equal(&self, other: &BitMatrix) -> Result<bool> {
        let stacked = self.vstack(other)?;
        let (ra, rb) = (self.rank(), other.rank());
        Ok(ra == rb && stacked.rank() == ra)
    }

    /// Text form: one '0'/'1' line per row, newline-terminated.
    pub fn to_text(&self) -> String {
        let mut s = String::with_capacity(self.rows.len() * (self.cols + 1));
        for r in &self.rows {
            s.push_str(&r.to_bit_string());
            s.push('\n');
        }
        s
    }

    /// Parses the text form; lines starting with '#' and blank lines are skipped.
    pub fn from_text(text: &str) -> Result<BitMatrix> {
        let mut rows = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let row = line
                .parse::<BitVector>()
                .map_err(|e| Error::parse("<matrix>", lineno + 1, e.to_string()))?;
            rows.push(row);
        }
        BitMatrix::from_rows(rows)
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{} [", self.rows.len(), self.cols)?;
        for r in &self.rows {
            writeln!(f, "  {r}")?;
        }
        write!(f, "]")
    }
}

/// Echelon basis of the span of `rows`, each basis vector with a distinct
/// leading (lowest) set bit, sorted by that bit.
fn reduce(rows: Vec<BitVector>) -> Vec<BitVector> {
    let mut basis: Vec<BitVector> = Vec::new();
    for row in rows {
        let r = reduce_against(&basis, row);
        if let Some(lead) = leading_bit(&r) {
            let pos = basis.partition_point(|b| leading_bit(b).unwrap() < lead);
            basis.insert(pos, r);
        }
    }
    basis
}

fn reduce_against(basis: &[BitVector], mut v: BitVector) -> BitVector {
    for b in basis {
        let lead = leading_bit(b).unwrap();
        if v.get(lead) {
            v ^= b;
        }
    }
    v
}

fn leading_bit(v: &BitVector) -> Option<usize> {
    v.words
        .iter()
        .enumerate()
        .find(|(_, &w)| w != 0)
        .map(|(i, w)| i * WORD + w.trailing_zeros() as usize)
}
