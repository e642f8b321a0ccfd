//! Rate-1/2 tailbiting convolutional encoding.
//!
//! Tailbiting is computed as cyclic convolution modulo `x^(n/2) - 1`: output
//! stream `b` at time `t` is `Σ_j g_b[j]·u[(t - j) mod n/2]`. Reading it as a
//! shift-register encoder preloaded with the last `K - 1` information bits
//! gives the same codeword.

use crate::bits::BitVector;
use crate::codespec::{CodeSpec, Construction};
use crate::construction::{stream_pattern, PolynomialPair, Stream};
use crate::error::{Error, Result};

fn check_info(u: &BitVector, n: usize) -> Result<()> {
    if !n.is_multiple_of(2) || u.len() * 2 != n {
        return Err(Error::param(format!(
            "information word has {} bits, code length {n} needs {}",
            u.len(),
            n / 2
        )));
    }
    Ok(())
}

/// Tailbiting encoder output for `u`, streams interleaved.
pub fn tb_encode(u: &BitVector, p: &PolynomialPair, n: usize) -> Result<BitVector> {
    check_info(u, n)?;
    let k = n / 2;
    let mut c = BitVector::zeros(n);
    for t in 0..k {
        let mut out = [false; 2];
        for (b, g) in [p.g1(), p.g2()].into_iter().enumerate() {
            out[b] = g
                .ones_positions()
                .fold(false, |acc, j| acc ^ u.get((t + k * j - j) % k));
        }
        c.set(2 * t, out[0]);
        c.set(2 * t + 1, out[1]);
    }
    Ok(c)
}

/// Type A3 encoder: the tailbiting output with `u[0]` added onto every bit
/// of `ones_stream`.
pub fn a3_encode(
    u: &BitVector,
    p: &PolynomialPair,
    n: usize,
    ones_stream: Stream,
) -> Result<BitVector> {
    let mut c = tb_encode(u, p, n)?;
    if u.get(0) {
        c ^= &stream_pattern(n, ones_stream);
    }
    Ok(c)
}

/// Encodes with whatever construction `spec` describes. Double circulant
/// codes fall back to the matrix product.
pub fn encode(spec: &CodeSpec, u: &BitVector) -> Result<BitVector> {
    match &spec.construction {
        Construction::TypeA0 { polys } => tb_encode(u, polys, spec.n),
        Construction::TypeA3 { polys, ones_stream } => a3_encode(u, polys, spec.n, *ones_stream),
        Construction::PureDc { .. } | Construction::BorderedDc { .. } => {
            check_info(u, spec.n)?;
            spec.generator()?.mul_vec(u)
        }
    }
}
