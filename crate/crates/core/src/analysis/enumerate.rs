//! Exhaustive weight enumeration.
//!
//! The fast path walks the reflected Gray code over all row combinations, so
//! each step costs a single row XOR and a popcount. The lowest
//! [`TABLE_BITS`] rows are expanded once into a Gray-ordered table; the walk
//! over the remaining rows steps by `trailing_zeros(t)` and sweeps the table
//! at every step. Parallel runs fix the top rows as a block prefix; each
//! block is a full walk over the low rows starting from the XOR of its prefix
//! rows, with a private histogram merged by addition.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use super::WeightDistribution;
use crate::bits::BitMatrix;
use crate::error::{Error, Result};

pub const NAIVE_MAX_ROWS: usize = 24;
pub const GRAY_MAX_ROWS: usize = 40;
const TABLE_BITS: usize = 10;

/// Direct enumeration: every combination XORs its selected rows from scratch.
/// Counts sum to `2^rows`, whatever the rank.
pub fn weight_distribution_naive(g: &BitMatrix) -> Result<WeightDistribution> {
    let r = g.num_rows();
    if r > NAIVE_MAX_ROWS {
        return Err(Error::Refusal(format!(
            "naive enumeration limited to {NAIVE_MAX_ROWS} rows, matrix has {r}"
        )));
    }
    let n = g.num_cols();
    let mut counts = vec![0u64; n + 1];
    for m in 0u64..(1u64 << r) {
        let mut acc = vec![0u64; g.row(0).words().len()];
        for (i, row) in g.rows().iter().enumerate() {
            if (m >> i) & 1 == 1 {
                for (a, w) in acc.iter_mut().zip(row.words()) {
                    *a ^= w;
                }
            }
        }
        let w: u32 = acc.iter().map(|x| x.count_ones()).sum();
        counts[w as usize] += 1;
    }
    Ok(WeightDistribution::from_counts(counts))
}

/// Gray-code enumeration over `threads` workers. The result does not depend
/// on `threads`.
pub fn weight_distribution_gray(g: &BitMatrix, threads: usize) -> Result<WeightDistribution> {
    let r = g.num_rows();
    if r > GRAY_MAX_ROWS {
        return Err(Error::Refusal(format!(
            "enumeration limited to {GRAY_MAX_ROWS} rows (2^{GRAY_MAX_ROWS} codewords), matrix has {r}"
        )));
    }
    let n = g.num_cols();
    let counts = match n.div_ceil(64) {
        1 => run::<1>(g, threads),
        2 => run::<2>(g, threads),
        3 => run::<3>(g, threads),
        4 => run::<4>(g, threads),
        _ => run_wide(g, threads),
    };
    let mut counts = counts;
    counts.truncate(n + 1);
    Ok(WeightDistribution::from_counts(counts))
}

type Word<const W: usize> = [u64; W];

fn pack<const W: usize>(g: &BitMatrix) -> Vec<Word<W>> {
    g.rows()
        .iter()
        .map(|r| {
            let mut w = [0u64; W];
            w.copy_from_slice(r.words());
            w
        })
        .collect()
}

#[inline(always)]
fn xor<const W: usize>(a: &mut Word<W>, b: &Word<W>) {
    for i in 0..W {
        a[i] ^= b[i];
    }
}

#[inline(always)]
fn popcount_xor<const W: usize>(a: &Word<W>, b: &Word<W>) -> usize {
    let mut c = 0u32;
    for i in 0..W {
        c += (a[i] ^ b[i]).count_ones();
    }
    c as usize
}

/// Splits the rows into (table rows, walk rows, prefix rows), low to high.
fn layout(rows: usize, threads: usize) -> (usize, usize, usize) {
    let table = rows.min(TABLE_BITS);
    let rest = rows - table;
    // a few blocks per worker keeps the split even when blocks finish unevenly
    let want = if threads <= 1 {
        0
    } else {
        (usize::BITS - (threads - 1).leading_zeros()) as usize + 2
    };
    let prefix = want.min(rest);
    (table, rest - prefix, prefix)
}

fn gray_table<const W: usize>(rows: &[Word<W>]) -> Vec<Word<W>> {
    let size = 1usize << rows.len();
    let mut table = Vec::with_capacity(size);
    let mut acc = [0u64; W];
    table.push(acc);
    for t in 1..size {
        xor(&mut acc, &rows[t.trailing_zeros() as usize]);
        table.push(acc);
    }
    table
}

fn run<const W: usize>(g: &BitMatrix, threads: usize) -> Vec<u64> {
    let rows = pack::<W>(g);
    let n = g.num_cols();
    let (t_bits, w_bits, p_bits) = layout(rows.len(), threads);
    let table = gray_table(&rows[..t_bits]);
    let walk = &rows[t_bits..t_bits + w_bits];
    let prefix = &rows[t_bits + w_bits..];
    let blocks = 1usize << p_bits;

    let block = |b: usize| -> Vec<u64> {
        let mut base = [0u64; W];
        for (i, row) in prefix.iter().enumerate() {
            if (b >> i) & 1 == 1 {
                xor(&mut base, row);
            }
        }
        walk_block(&table, walk, base, n)
    };
    merge_blocks(blocks, threads, n, block)
}

fn merge_blocks(
    blocks: usize,
    threads: usize,
    n: usize,
    block: impl Fn(usize) -> Vec<u64> + Sync,
) -> Vec<u64> {
    let total = Mutex::new(vec![0u64; n + 1]);
    let next = AtomicUsize::new(0);
    let workers = threads.clamp(1, blocks);
    let work = || {
        let mut local = vec![0u64; n + 1];
        loop {
            let b = next.fetch_add(1, Ordering::Relaxed);
            if b >= blocks {
                break;
            }
            for (acc, c) in local.iter_mut().zip(block(b)) {
                *acc += c;
            }
        }
        let mut total = total.lock().unwrap();
        for (acc, c) in total.iter_mut().zip(local) {
            *acc += c;
        }
    };
    if workers == 1 {
        work();
    } else {
        std::thread::scope(|s| {
            for _ in 0..workers {
                s.spawn(work);
            }
        });
    }
    total.into_inner().unwrap()
}

fn walk_block<const W: usize>(
    table: &[Word<W>],
    walk: &[Word<W>],
    base: Word<W>,
    n: usize,
) -> Vec<u64> {
    #[cfg(target_arch = "x86_64")]
    {
        if std::is_x86_feature_detected!("popcnt") {
            // SAFETY: the popcnt feature was detected at runtime.
            return unsafe { walk_block_popcnt(table, walk, base, n) };
        }
    }
    walk_block_generic(table, walk, base, n)
}

#[cfg(target_arch = "x86_64")]
#[target_feature(enable = "popcnt")]
unsafe fn walk_block_popcnt<const W: usize>(
    table: &[Word<W>],
    walk: &[Word<W>],
    base: Word<W>,
    n: usize,
) -> Vec<u64> {
    walk_block_generic(table, walk, base, n)
}

#[inline(always)]
fn walk_block_generic<const W: usize>(
    table: &[Word<W>],
    walk: &[Word<W>],
    mut base: Word<W>,
    n: usize,
) -> Vec<u64> {
    // four interleaved histograms break the store-to-load chain on repeated weights
    let stride = n + 1;
    let mut hist = vec![0u64; 4 * stride];
    let steps = 1u64 << walk.len();
    let mut t = 0u64;
    loop {
        let mut chunks = table.chunks_exact(4);
        for c in &mut chunks {
            hist[popcount_xor(&base, &c[0])] += 1;
            hist[stride + popcount_xor(&base, &c[1])] += 1;
            hist[2 * stride + popcount_xor(&base, &c[2])] += 1;
            hist[3 * stride + popcount_xor(&base, &c[3])] += 1;
        }
        for e in chunks.remainder() {
            hist[popcount_xor(&base, e)] += 1;
        }
        t += 1;
        if t == steps {
            break;
        }
        xor(&mut base, &walk[t.trailing_zeros() as usize]);
    }
    (0..stride)
        .map(|w| hist[w] + hist[stride + w] + hist[2 * stride + w] + hist[3 * stride + w])
        .collect()
}

/// Fallback for matrices wider than 256 columns.
fn run_wide(g: &BitMatrix, threads: usize) -> Vec<u64> {
    let n = g.num_cols();
    let rows: Vec<&[u64]> = g.rows().iter().map(|r| r.words()).collect();
    let (t_bits, w_bits, p_bits) = layout(rows.len(), threads);
    let walk_rows = &rows[..t_bits + w_bits];
    let prefix = &rows[t_bits + w_bits..];
    merge_blocks(1 << p_bits, threads, n, |b| {
        let mut acc = vec![0u64; rows[0].len()];
        for (i, row) in prefix.iter().enumerate() {
            if (b >> i) & 1 == 1 {
                acc.iter_mut().zip(row.iter()).for_each(|(a, w)| *a ^= w);
            }
        }
        let mut hist = vec![0u64; n + 1];
        let steps = 1u64 << walk_rows.len();
        let mut t = 0u64;
        loop {
            hist[acc.iter().map(|x| x.count_ones() as usize).sum::<usize>()] += 1;
            t += 1;
            if t == steps {
                break;
            }
            let row = walk_rows[t.trailing_zeros() as usize];
            acc.iter_mut().zip(row.iter()).for_each(|(a, w)| *a ^= w);
        }
        hist
    })
}
