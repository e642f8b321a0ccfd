//! Generator matrices: circulants, pure and bordered double circulants, the
//! step-2 quasi-cyclic matrix of a rate-1/2 polynomial pair (type A0) and the
//! first-row replacement of a catastrophic type A0 matrix (type A3).
//!
//! Stream convention: stream 1 occupies even bit indices and carries `g1`,
//! stream 2 occupies odd bit indices and carries `g2`.

use crate::bits::{BitMatrix, BitVector};
use crate::error::{Error, Result};

/// Rate-1/2 encoder polynomials. Bit `j` of each polynomial is the coefficient
/// of `x^j` (tap `j`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolynomialPair {
    g1: BitVector,
    g2: BitVector,
}

impl PolynomialPair {
    pub fn new(g1: BitVector, g2: BitVector) -> Result<Self> {
        if g1.is_empty() {
            return Err(Error::param("constraint length must be at least 1"));
        }
        if g1.len() != g2.len() {
            return Err(Error::param(format!(
                "g1 has {} taps but g2 has {}",
                g1.len(),
                g2.len()
            )));
        }
        if g1.is_zero() || g2.is_zero() {
            return Err(Error::param("generator polynomials must be nonzero"));
        }
        if !g1.get(0) && !g2.get(0) {
            return Err(Error::param(
                "neither polynomial has a constant term (common factor x)",
            ));
        }
        Ok(PolynomialPair { g1, g2 })
    }

    /// Parses two tap strings, tap 0 leftmost.
    pub fn parse(g1: &str, g2: &str) -> Result<Self> {
        Self::new(g1.parse()?, g2.parse()?)
    }

    /// Constraint length K (taps per polynomial).
    pub fn constraint_length(&self) -> usize {
        self.g1.len()
    }

    pub fn g1(&self) -> &BitVector {
        &self.g1
    }

    pub fn g2(&self) -> &BitVector {
        &self.g2
    }

    /// Polynomial feeding stream 1 or 2.
    pub fn stream(&self, stream: Stream) -> &BitVector {
        match stream {
            Stream::One => &self.g1,
            Stream::Two => &self.g2,
        }
    }

    /// Bit masks of the taps, for K <= 64.
    pub(crate) fn tap_masks(&self) -> (u64, u64) {
        (self.g1.words()[0], self.g2.words()[0])
    }
}

/// One of the two interleaved output streams.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Stream {
    One,
    Two,
}

impl Stream {
    pub fn from_index(i: u8) -> Result<Stream> {
        match i {
            1 => Ok(Stream::One),
            2 => Ok(Stream::Two),
            other => Err(Error::param(format!("stream must be 1 or 2, got {other}"))),
        }
    }

    pub fn index(self) -> u8 {
        match self {
            Stream::One => 1,
            Stream::Two => 2,
        }
    }

    /// Offset of this stream inside each output pair.
    pub fn offset(self) -> usize {
        (self.index() - 1) as usize
    }
}

/// Square matrix whose row `i` is `first_row` cyclically shifted by `i`.
pub fn circulant(first_row: &BitVector) -> BitMatrix {
    let rows = (0..first_row.len()).map(|i| first_row.rotate(i)).collect();
    BitMatrix::from_rows(rows).expect("circulant of a non-empty row")
}

/// Interleaves the two polynomials: `s[2j] = g1[j]`, `s[2j+1] = g2[j]`.
pub fn mixed_string(p: &PolynomialPair) -> BitVector {
    let k = p.constraint_length();
    let mut s = BitVector::zeros(2 * k);
    for j in 0..k {
        s.set(2 * j, p.g1.get(j));
        s.set(2 * j + 1, p.g2.get(j));
    }
    s
}

/// Inverse of [`mixed_string`].
pub fn split_mixed_string(s: &BitVector) -> Result<(BitVector, BitVector)> {
    if !s.len().is_multiple_of(2) {
        return Err(Error::param("mixed string must have even length"));
    }
    let k = s.len() / 2;
    let mut g1 = BitVector::zeros(k);
    let mut g2 = BitVector::zeros(k);
    for j in 0..k {
        g1.set(j, s.get(2 * j));
        g2.set(j, s.get(2 * j + 1));
    }
    Ok((g1, g2))
}

/// True when the mixed string is longer than the code, so rows wrap onto
/// themselves.
pub fn rows_overlap(p: &PolynomialPair, n: usize) -> bool {
    n < 2 * mixed_string(p).len()
}

/// Row 0 of the type A0 matrix: the mixed string folded cyclically onto `n`
/// positions (plain zero extension whenever `2K <= n`).
fn qc_first_row(p: &PolynomialPair, n: usize) -> BitVector {
    let s = mixed_string(p);
    let mut row = BitVector::zeros(n);
    for i in s.ones_positions() {
        row.flip(i % n);
    }
    row
}

fn check_length(n: usize) -> Result<()> {
    if n == 0 || !n.is_multiple_of(2) {
        return Err(Error::param(format!(
            "code length must be even and positive, got {n}"
        )));
    }
    Ok(())
}

/// Type A0 quasi-cyclic generator: `n/2` rows, row `i` the mixed string
/// shifted by `2i`.
pub fn qc_generator(p: &PolynomialPair, n: usize) -> Result<BitMatrix> {
    check_length(n)?;
    let row0 = qc_first_row(p, n);
    BitMatrix::from_rows((0..n / 2).map(|i| row0.rotate(2 * i)).collect())
}

/// Ones on every position of `stream`, zeros on the other stream.
pub fn stream_pattern(n: usize, stream: Stream) -> BitVector {
    let mut v = BitVector::zeros(n);
    for i in (stream.offset()..n).step_by(2) {
        v.set(i, true);
    }
    v
}

/// True when the type A0 rows sum to zero, i.e. the all-ones input encodes
/// to the zero codeword.
pub fn is_catastrophic(p: &PolynomialPair, n: usize) -> Result<bool> {
    Ok(qc_generator(p, n)?.row_sum().is_zero())
}

/// Type A3: the catastrophic type A0 matrix with row 0 replaced by the
/// all-ones pattern on `ones_stream`.
pub fn a3_generator(p: &PolynomialPair, n: usize, ones_stream: Stream) -> Result<BitMatrix> {
    let g = qc_generator(p, n)?;
    if !g.row_sum().is_zero() {
        return Err(Error::Construction(
            "type_a3 requires a catastrophic type_a0 matrix (rows summing to zero); \
             both polynomials must have even weight"
                .into(),
        ));
    }
    g.with_row(0, stream_pattern(n, ones_stream))
}

/// `[I | circulant(q_row)]`.
pub fn pure_double_circulant(q_row: &BitVector) -> BitMatrix {
    BitMatrix::identity(q_row.len())
        .hstack(&circulant(q_row))
        .expect("square blocks of equal size")
}

/// `[I_m | B]` with `B = [[corner, 1 … 1], [1ᵀ, R']]`, `R' = circulant(r_row)`
/// and `m = r_row.len() + 1`.
pub fn bordered_double_circulant(r_row: &BitVector, corner: bool) -> Result<BitMatrix> {
    if r_row.is_empty() {
        return Err(Error::param("bordered circulant row must be non-empty"));
    }
    let m = r_row.len() + 1;
    let inner = circulant(r_row);
    let mut rows = Vec::with_capacity(m);
    let mut border = BitVector::ones(m);
    border.set(0, corner);
    rows.push(border);
    for r in inner.rows() {
        let mut row = BitVector::zeros(m);
        row.set(0, true);
        for j in r.ones_positions() {
            row.set(j + 1, true);
        }
        rows.push(row);
    }
    BitMatrix::identity(m).hstack(&BitMatrix::from_rows(rows)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bv(s: &str) -> BitVector {
        s.parse().unwrap()
    }

    fn toy() -> PolynomialPair {
        PolynomialPair::parse("11", "11").unwrap()
    }

    #[test]
    fn polynomial_pair_validation() {
        assert!(PolynomialPair::parse("", "").is_err());
        assert!(PolynomialPair::parse("101", "11").is_err());
        assert!(PolynomialPair::parse("000", "111").is_err());
        assert!(PolynomialPair::parse("010", "011").is_err());
        assert!(PolynomialPair::parse("010", "111").is_ok());
    }

    #[test]
    fn circulant_examples() {
        assert_eq!(circulant(&bv("1000")), BitMatrix::identity(4));
        assert_eq!(circulant(&bv("110")).to_text(), "110\n011\n101\n");
    }

    #[test]
    fn mixed_string_examples() {
        let p = PolynomialPair::parse("101", "111").unwrap();
        assert_eq!(mixed_string(&p), bv("110111"));
        assert_eq!(mixed_string(&toy()), bv("1111"));
        let (g1, g2) = split_mixed_string(&bv("110111")).unwrap();
        assert_eq!((g1, g2), (bv("101"), bv("111")));
    }

    #[test]
    fn qc_generator_examples() {
        let g = qc_generator(&toy(), 8).unwrap();
        assert_eq!(g.to_text(), "11110000\n00111100\n00001111\n11000011\n");
        let p = PolynomialPair::parse("10", "10").unwrap();
        let g = qc_generator(&p, 8).unwrap();
        assert_eq!(g.to_text(), "11000000\n00110000\n00001100\n00000011\n");
        assert!(qc_generator(&toy(), 7).is_err());
    }

    #[test]
    fn qc_generator_folds_short_lengths() {
        // K = 3 at n = 4: the mixed string wraps onto itself
        let p = PolynomialPair::parse("111", "101").unwrap();
        assert!(rows_overlap(&p, 4));
        let g = qc_generator(&p, 4).unwrap();
        // s = 11 10 11 -> positions 0,1,2,4,5 -> folded: 0^4, 1^5, 2 -> 0010
        assert_eq!(g.row(0), &bv("0010"));
    }

    #[test]
    fn a3_generator_examples() {
        let g = a3_generator(&toy(), 8, Stream::Two).unwrap();
        assert_eq!(g.to_text(), "01010101\n00111100\n00001111\n11000011\n");
        assert!(g.is_self_orthogonal());
        assert_eq!(g.rank(), 4);

        let g1 = a3_generator(&toy(), 8, Stream::One).unwrap();
        assert_eq!(g1.row(0), &bv("10101010"));
        assert!(g1.is_self_orthogonal());

        let p = PolynomialPair::parse("10", "10").unwrap();
        match a3_generator(&p, 8, Stream::Two) {
            Err(Error::Construction(msg)) => assert!(msg.contains("catastrophic")),
            other => panic!("expected construction error, got {other:?}"),
        }
    }

    #[test]
    fn pure_double_circulant_examples() {
        let g = pure_double_circulant(&bv("100"));
        assert_eq!(g.to_text(), "100100\n010010\n001001\n");
        let g = pure_double_circulant(&bv("111"));
        assert_eq!(g.to_text(), "100111\n010111\n001111\n");
    }

    #[test]
    fn bordered_shape() {
        let g = bordered_double_circulant(&bv("101"), false).unwrap();
        assert_eq!(g.num_rows(), 4);
        assert_eq!(g.num_cols(), 8);
        assert_eq!(g.row(0), &bv("10000111"));
        for i in 1..4 {
            assert!(g.get(i, 4), "border column");
            let b_weight = (4..8).filter(|&c| g.get(i, c)).count();
            assert_eq!(b_weight, 2 + 1);
        }
    }

    #[test]
    fn stream_patterns() {
        assert_eq!(stream_pattern(8, Stream::One), bv("10101010"));
        assert_eq!(stream_pattern(8, Stream::Two), bv("01010101"));
    }
}
