//! MacWilliams transform with exact integer arithmetic.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::WeightDistribution;
use crate::error::{Error, Result};

fn binomials(n: usize) -> Vec<Vec<BigInt>> {
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(n + 1);
    for m in 0..=n {
        let mut row = vec![BigInt::one(); m + 1];
        for i in 1..m {
            row[i] = &rows[m - 1][i - 1] + &rows[m - 1][i];
        }
        rows.push(row);
    }
    rows
}

/// Krawtchouk polynomial table `K_j(w)` for length `n`, indexed `[j][w]`.
pub fn krawtchouk_table(n: usize) -> Vec<Vec<BigInt>> {
    let c = binomials(n);
    let binom = |a: usize, b: usize| -> BigInt {
        if b > a {
            BigInt::zero()
        } else {
            c[a][b].clone()
        }
    };
    (0..=n)
        .map(|j| {
            (0..=n)
                .map(|w| {
                    (0..=j.min(w)).fold(BigInt::zero(), |acc, i| {
                        let term = binom(w, i) * binom(n - w, j - i);
                        if i % 2 == 0 {
                            acc + term
                        } else {
                            acc - term
                        }
                    })
                })
                .collect()
        })
        .collect()
}

/// Dual distribution `B_j = 2^-k Σ_w A_w K_j(w)`. `None` when some `B_j` is
/// not a nonnegative integer.
pub fn macwilliams_transform(dist: &WeightDistribution, k: usize) -> Result<Option<Vec<BigInt>>> {
    if dist.total() != 1u128 << k {
        return Err(Error::param(format!(
            "counts sum to {}, expected 2^{k}",
            dist.total()
        )));
    }
    let n = dist.n();
    let table = krawtchouk_table(n);
    let scale = BigInt::one() << k;
    let mut out = Vec::with_capacity(n + 1);
    for row in &table {
        let sum = dist
            .counts()
            .iter()
            .zip(row)
            .filter(|(&a, _)| a != 0)
            .fold(BigInt::zero(), |acc, (&a, kw)| acc + kw * BigInt::from(a));
        if sum.is_negative() || !(&sum % &scale).is_zero() {
            return Ok(None);
        }
        out.push(sum / &scale);
    }
    Ok(Some(out))
}

/// True iff the distribution is a fixed point of the MacWilliams transform.
pub fn macwilliams_selfcheck(dist: &WeightDistribution, k: usize) -> Result<bool> {
    Ok(match macwilliams_transform(dist, k)? {
        Some(dual) => dual
            .iter()
            .zip(dist.counts())
            .all(|(b, &a)| *b == BigInt::from(a)),
        None => false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn selfcheck_examples() {
        let toy = WeightDistribution::from_pairs(8, &[(0, 1), (4, 14), (8, 1)]).unwrap();
        assert!(macwilliams_selfcheck(&toy, 4).unwrap());
        let split =
            WeightDistribution::from_pairs(8, &[(0, 1), (2, 4), (4, 6), (6, 4), (8, 1)]).unwrap();
        assert!(macwilliams_selfcheck(&split, 4).unwrap());
        let rep = WeightDistribution::from_pairs(8, &[(0, 1), (8, 1)]).unwrap();
        assert!(!macwilliams_selfcheck(&rep, 1).unwrap());
        assert!(macwilliams_selfcheck(&rep, 2).is_err());
    }

    #[test]
    fn repetition_dual_is_even_weight_code() {
        let rep = WeightDistribution::from_pairs(8, &[(0, 1), (8, 1)]).unwrap();
        let dual = macwilliams_transform(&rep, 1).unwrap().unwrap();
        let expected: Vec<BigInt> = [1, 0, 28, 0, 70, 0, 28, 0, 1]
            .iter()
            .map(|&x| BigInt::from(x))
            .collect();
        assert_eq!(dual, expected);
    }

    #[test]
    fn krawtchouk_small() {
        // K_1(w) = n - 2w
        let t = krawtchouk_table(6);
        assert_eq!((t[0].len(), t[1].len()), (7, 7));
        for (w, (k0, k1)) in t[0].iter().zip(&t[1]).enumerate() {
            assert_eq!(*k1, BigInt::from(6 - 2 * w as i64));
            assert!(k0.is_one());
        }
    }
}
