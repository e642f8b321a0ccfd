mod common;

use rand::Rng;
use tbsd::codespec::CodeSpec;
use tbsd::decode::{apply_channel, viterbi_exact_ml, viterbi_wava, ChannelModel, ReceivedFrame};
use tbsd::registry::Registry;
use tbsd::tbcc::encode;
use tbsd::{BitVector, PolynomialPair, Stream};

fn small_codes() -> Vec<CodeSpec> {
    let pair = |a: &str, b: &str| PolynomialPair::parse(a, b).unwrap();
    vec![
        CodeSpec::type_a3("toy_a3", 8, pair("11", "11"), Stream::Two).unwrap(),
        CodeSpec::type_a0("a0_k3_n16", 16, pair("111", "101")).unwrap(),
        CodeSpec::type_a3("a3_k3_n24", 24, pair("110", "011"), Stream::One).unwrap(),
        CodeSpec::type_a0("a0_k4_n32", 32, pair("1101", "1111")).unwrap(),
        CodeSpec::type_a3("a3_k5_n32", 32, pair("11011", "10111"), Stream::Two).unwrap(),
    ]
}

/// Oracle score with the decoder's documented accumulation order: per stage,
/// stream 1 plus stream 2, then added to the running total.
fn oracle_score(frame: &ReceivedFrame, c: &BitVector) -> f64 {
    match frame {
        ReceivedFrame::Hard(r) => (0..c.len()).filter(|&i| r.get(i) != c.get(i)).count() as f64,
        ReceivedFrame::Soft(r) => {
            let term = |i: usize| {
                if c.get(i) {
                    -(r[i] as f64)
                } else {
                    r[i] as f64
                }
            };
            let mut acc = 0.0;
            for t in 0..c.len() / 2 {
                acc += term(2 * t) + term(2 * t + 1);
            }
            acc
        }
    }
}

/// Best score over the whole codebook and the codewords attaining it.
fn brute_ml(book: &[BitVector], frame: &ReceivedFrame) -> (f64, Vec<BitVector>) {
    let hard = frame.is_hard();
    let mut best = if hard {
        f64::INFINITY
    } else {
        f64::NEG_INFINITY
    };
    let mut winners = Vec::new();
    for c in book {
        let s = oracle_score(frame, c);
        let better = if hard { s < best } else { s > best };
        if better {
            best = s;
            winners.clear();
        }
        if s == best && !winners.contains(c) {
            winners.push(c.clone());
        }
    }
    (best, winners)
}

fn check_against_brute(spec: &CodeSpec, frames: usize, seed: u64) {
    let g = spec.generator().unwrap();
    let book = common::codebook(&g);
    let mut rng = common::rng(seed);
    for f in 0..frames {
        let u = common::random_vector(&mut rng, spec.k());
        let c = encode(spec, &u).unwrap();
        let frame = if f % 2 == 0 {
            let mut r = c.clone();
            for i in 0..spec.n {
                if rng.random::<f64>() < 0.15 {
                    r.flip(i);
                }
            }
            ReceivedFrame::Hard(r)
        } else {
            ReceivedFrame::Soft(
                c.iter()
                    .map(|b| (if b { -1.0 } else { 1.0 }) + rng.random_range(-1.5f32..1.5))
                    .collect(),
            )
        };
        let d = viterbi_exact_ml(&frame, spec).unwrap();
        let decoded = encode(spec, &d.info).unwrap();
        let (best, winners) = brute_ml(&book, &frame);
        assert_eq!(d.metric, best, "{} frame {f}", spec.name);
        assert_eq!(oracle_score(&frame, &decoded), d.metric);
        assert!(
            winners.contains(&decoded),
            "{} frame {f}: decoded word is not an ML codeword",
            spec.name
        );
        // bit-exact reproducibility
        assert_eq!(viterbi_exact_ml(&frame, spec).unwrap(), d);
    }
}

#[test]
fn exact_ml_matches_brute_force_on_small_codes() {
    for (i, spec) in small_codes().iter().enumerate() {
        check_against_brute(spec, 200, 100 + i as u64);
    }
}

#[test]
fn toy_single_flips_match_nearest_codeword() {
    let spec = &small_codes()[0];
    let book = common::codebook(&spec.generator().unwrap());
    for m in 0..16u64 {
        let u = common::info_from_mask(4, m);
        let c = encode(spec, &u).unwrap();
        for i in 0..8 {
            let mut r = c.clone();
            r.flip(i);
            let frame = ReceivedFrame::Hard(r);
            let (best, winners) = brute_ml(&book, &frame);
            assert_eq!((best, winners.len()), (1.0, 1));
            assert_eq!(viterbi_exact_ml(&frame, spec).unwrap().info, u);
        }
    }
}

fn fixture(name: &str) -> CodeSpec {
    Registry::load_default().unwrap().get(name).unwrap().clone()
}

#[test]
fn n72_noiseless_and_light_noise() {
    let spec = fixture("a3_k9_n72");
    let mut rng = common::rng(9);
    for _ in 0..200 {
        let u = common::random_vector(&mut rng, 36);
        let c = encode(&spec, &u).unwrap();
        let exact = viterbi_exact_ml(&ReceivedFrame::Hard(c.clone()), &spec).unwrap();
        assert_eq!(exact.info, u);
        let wava = viterbi_wava(&ReceivedFrame::Hard(c.clone()), &spec, 4).unwrap();
        assert_eq!(
            (wava.info, wava.converged, wava.iterations),
            (u.clone(), Some(true), 1)
        );

        let mut r = c.clone();
        for _ in 0..5 {
            r.flip(rng.random_range(0..72));
        }
        let d = viterbi_exact_ml(&ReceivedFrame::Hard(r.clone()), &spec).unwrap();
        assert_eq!(d.info, u);
        assert!(spec
            .generator()
            .unwrap()
            .contains(&encode(&spec, &d.info).unwrap())
            .unwrap());
    }
}

#[test]
fn wava_agrees_with_exact_ml_on_bsc() {
    let spec = fixture("a3_k9_n72");
    let ch = ChannelModel::parse("bsc:0.02", 2024).unwrap();
    let frames = 2000u64;
    let mut agree = 0;
    for f in 0..frames {
        let u = tbsd::decode::random_info(36, 2024, f);
        let r = apply_channel(&encode(&spec, &u).unwrap(), &ch, f);
        let exact = viterbi_exact_ml(&r, &spec).unwrap();
        let wava = viterbi_wava(&r, &spec, 4).unwrap();
        assert_eq!(wava.metric, r.score(&encode(&spec, &wava.info).unwrap()));
        if wava.converged == Some(true) {
            // a converged WAVA path is a valid tailbiting path, never better than ML
            assert!(wava.metric >= exact.metric);
        }
        agree += usize::from(exact.info == wava.info);
    }
    let rate = agree as f64 / frames as f64;
    eprintln!("wava/exact agreement on bsc:0.02: {rate:.4}");
    assert!(rate >= 0.99, "agreement {rate}");
}
