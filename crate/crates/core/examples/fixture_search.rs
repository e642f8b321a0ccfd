//! Exhaustive search for polynomial pairs giving self-dual [n, n/2, 12]
//! codes, used to populate `fixtures/codes`.
//!
//!     cargo run --release --example fixture_search -- a3    # K=9 type A3, n = 60..72
//!     cargo run --release --example fixture_search -- a0    # K=10 type A0, n = 68 and 72
//!
//! Candidates must satisfy the algebraic self-orthogonality condition (the
//! aperiodic autocorrelations of g1 and g2 cancel at every nonzero shift),
//! then survive a sparse-input low-weight screen before full enumeration.

use std::time::Instant;

use tbsd::analysis::{is_self_dual, weight_distribution_gray, WeightDistribution};
use tbsd::codespec::CodeSpec;
use tbsd::construction::{PolynomialPair, Stream};
use tbsd::tbcc::encode;
use tbsd::BitVector;

fn autocorrelation_cancels(g1: u64, g2: u64, k: usize) -> bool {
    (1..k)
        .all(|s| ((g1 & (g1 >> s)).count_ones() + (g2 & (g2 >> s)).count_ones()).is_multiple_of(2))
}

fn reverse(g: u64, k: usize) -> u64 {
    g.reverse_bits() >> (64 - k)
}

/// Smallest of the pair, its swap and their reversals.
fn is_canonical(g1: u64, g2: u64, k: usize) -> bool {
    let forms = [
        (g1, g2),
        (g2, g1),
        (reverse(g1, k), reverse(g2, k)),
        (reverse(g2, k), reverse(g1, k)),
    ];
    forms.iter().all(|&f| (g1, g2) <= f)
}

fn candidates(k: usize, odd: bool) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    for g1 in 0..1u64 << k {
        for g2 in 0..1u64 << k {
            let top = ((g1 | g2) >> (k - 1)) & 1 == 1;
            let low = (g1 | g2) & 1 == 1;
            let parity = |g: u64| g.count_ones() % 2 == 1;
            if !top || !low || parity(g1) != odd || parity(g2) != odd || g1 == 0 || g2 == 0 {
                continue;
            }
            if (g1.count_ones() + g2.count_ones()) < 12 {
                continue;
            }
            if autocorrelation_cancels(g1, g2, k) && is_canonical(g1, g2, k) {
                out.push((g1, g2));
            }
        }
    }
    out
}

fn pair(g1: u64, g2: u64, k: usize) -> PolynomialPair {
    PolynomialPair::new(BitVector::from_u64(k, g1), BitVector::from_u64(k, g2)).unwrap()
}

/// Lowest weight among codewords of inputs with weight <= 3, first bit at 0.
fn sparse_screen(spec: &CodeSpec) -> usize {
    let k = spec.k();
    let mut best = usize::MAX;
    let mut try_input = |ones: &[usize]| {
        let mut u = BitVector::zeros(k);
        for &i in ones {
            u.set(i, true);
        }
        let w = encode(spec, &u).unwrap().weight();
        if w > 0 {
            best = best.min(w);
        }
    };
    for a in 0..k {
        try_input(&[a]);
        for b in a + 1..k {
            try_input(&[a, b]);
            if a == 0 {
                for c in b + 1..k {
                    try_input(&[0, b, c]);
                }
            }
        }
    }
    best
}

fn summary(d: &WeightDistribution) -> String {
    let dmin = d.min_distance().unwrap();
    let parity = d.parity_class().as_str();
    let low: Vec<String> = (dmin..=dmin + 4)
        .map(|w| format!("A{w}={}", d.count(w)))
        .collect();
    format!("d={dmin} {parity} {}", low.join(" "))
}

fn screen(spec: &CodeSpec) -> bool {
    let g = match spec.generator() {
        Ok(g) => g,
        Err(_) => return false,
    };
    is_self_dual(&g).unwrap() && sparse_screen(spec) >= 12
}

fn full(spec: &CodeSpec) -> Option<WeightDistribution> {
    let g = spec.generator().ok()?;
    let t = Instant::now();
    let d = weight_distribution_gray(&g, 1).unwrap();
    eprintln!(
        "  {} enumerated in {:.1}s",
        spec.name,
        t.elapsed().as_secs_f64()
    );
    (d.min_distance().ok()? >= 12).then_some(d)
}

fn search_a3() {
    let k = 9;
    let cands = candidates(k, false);
    eprintln!("{} canonical K=9 candidates", cands.len());
    for (g1, g2) in cands {
        let p = pair(g1, g2, k);
        for stream in [Stream::One, Stream::Two] {
            let specs: Vec<CodeSpec> = [60, 64, 68, 72]
                .iter()
                .map(|&n| CodeSpec::type_a3(&format!("a3_n{n}"), n, p.clone(), stream).unwrap())
                .collect();
            if !specs.iter().all(screen) {
                continue;
            }
            eprintln!(
                "screen pass g1={} g2={} ones_stream={}",
                p.g1(),
                p.g2(),
                stream.index()
            );
            let mut lines = Vec::new();
            for spec in &specs {
                match full(spec) {
                    Some(d) => lines.push(format!("n={} {}", spec.n, summary(&d))),
                    None => break,
                }
            }
            if lines.len() == specs.len() {
                println!(
                    "FOUND a3 g1={} g2={} ones_stream={}",
                    p.g1(),
                    p.g2(),
                    stream.index()
                );
                for l in lines {
                    println!("  {l}");
                }
            }
        }
    }
}

fn search_a0() {
    let k = 10;
    let cands = candidates(k, true);
    eprintln!("{} canonical K=10 candidates", cands.len());
    for (g1, g2) in cands {
        let p = pair(g1, g2, k);
        let s68 = CodeSpec::type_a0("a0_n68", 68, p.clone()).unwrap();
        if !screen(&s68) {
            continue;
        }
        eprintln!("screen pass g1={} g2={}", p.g1(), p.g2());
        let Some(d68) = full(&s68) else { continue };
        println!("FOUND a0 g1={} g2={}", p.g1(), p.g2());
        println!("  n=68 {}", summary(&d68));
        let s72 = CodeSpec::type_a0("a0_n72", 72, p.clone()).unwrap();
        if screen(&s72) {
            if let Some(d72) = full(&s72) {
                println!("  n=72 {}", summary(&d72));
            }
        }
    }
}

fn main() {
    match std::env::args().nth(1).as_deref() {
        Some("a3") => search_a3(),
        Some("a0") => search_a0(),
        _ => eprintln!("usage: fixture_search a3|a0"),
    }
}
