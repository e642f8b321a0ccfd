//! Brute-force oracles shared by the integration tests. Everything here works
//! from first principles (direct row XORs, full codebook scans) and never
//! calls the fast paths it is used to check.
#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tbsd::{BitMatrix, BitVector};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_vector(rng: &mut impl Rng, len: usize) -> BitVector {
    BitVector::from_bools(&(0..len).map(|_| rng.random::<bool>()).collect::<Vec<_>>())
}

pub fn random_matrix(rng: &mut impl Rng, rows: usize, cols: usize) -> BitMatrix {
    BitMatrix::from_rows((0..rows).map(|_| random_vector(rng, cols)).collect()).unwrap()
}

/// `u · G` by explicit row selection.
pub fn combine(g: &BitMatrix, mask: u64) -> BitVector {
    let mut acc = BitVector::zeros(g.num_cols());
    for (i, row) in g.rows().iter().enumerate() {
        if (mask >> i) & 1 == 1 {
            for j in 0..g.num_cols() {
                if row.get(j) {
                    acc.flip(j);
                }
            }
        }
    }
    acc
}

/// Every `(information mask, codeword)` pair of the row space enumeration.
pub fn codebook(g: &BitMatrix) -> Vec<BitVector> {
    assert!(g.num_rows() <= 16);
    (0..1u64 << g.num_rows()).map(|m| combine(g, m)).collect()
}

/// Weight histogram by scanning the codebook bit by bit.
pub fn brute_distribution(g: &BitMatrix) -> Vec<u64> {
    let mut counts = vec![0u64; g.num_cols() + 1];
    for c in codebook(g) {
        counts[c.iter().filter(|&b| b).count()] += 1;
    }
    counts
}

pub fn info_from_mask(k: usize, mask: u64) -> BitVector {
    BitVector::from_u64(k, mask)
}
