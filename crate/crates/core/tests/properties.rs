mod common;

use proptest::prelude::*;
use tbsd::analysis::{fit_template, EnumeratorTemplate, ParityClass, WeightDistribution};
use tbsd::construction::{a3_generator, circulant, mixed_string, qc_generator, split_mixed_string};
use tbsd::tbcc::{a3_encode, tb_encode};
use tbsd::{BitMatrix, BitVector, PolynomialPair, Stream};

fn bitvec(len: impl Into<proptest::sample::SizeRange>) -> impl Strategy<Value = BitVector> {
    proptest::collection::vec(any::<bool>(), len).prop_map(|b| BitVector::from_bools(&b))
}

fn matrix(max_rows: usize, cols: usize) -> impl Strategy<Value = BitMatrix> {
    proptest::collection::vec(bitvec(cols), 1..=max_rows)
        .prop_map(|rows| BitMatrix::from_rows(rows).unwrap())
}

fn poly_pair(k: usize) -> impl Strategy<Value = PolynomialPair> {
    (bitvec(k), bitvec(k))
        .prop_filter_map("valid pair", |(g1, g2)| PolynomialPair::new(g1, g2).ok())
}

proptest! {
    #[test]
    fn xor_weight_identity((a, b) in (1usize..200).prop_flat_map(|n| (bitvec(n), bitvec(n)))) {
        prop_assert_eq!((&a ^ &b).weight(), a.weight() + b.weight() - 2 * (&a & &b).weight());
    }

    #[test]
    fn shift_round_trip(v in bitvec(3..150), l in 0usize..1000) {
        let n = v.len();
        let l = l % n;
        let back = v.cyclic_shift(l).unwrap().cyclic_shift((n - l) % n).unwrap();
        prop_assert_eq!(back, v);
    }

    #[test]
    fn rank_invariant_under_row_ops(m in matrix(10, 20), ops in proptest::collection::vec((0usize..10, 0usize..10, any::<bool>()), 0..20)) {
        let r = m.rank();
        let mut rows: Vec<BitVector> = m.rows().to_vec();
        for (i, j, swap) in ops {
            let (i, j) = (i % rows.len(), j % rows.len());
            if swap {
                rows.swap(i, j);
            } else if i != j {
                let add = rows[j].clone();
                rows[i] ^= &add;
            }
        }
        let m2 = BitMatrix::from_rows(rows).unwrap();
        prop_assert_eq!(m2.rank(), r);
        prop_assert!(m2.row_space_equal(&m).unwrap());
    }

    #[test]
    fn codewords_are_members(m in matrix(12, 40), mask in any::<u64>()) {
        let u = BitVector::from_u64(m.num_rows(), mask);
        let c = m.mul_vec(&u).unwrap();
        prop_assert!(m.contains(&c).unwrap());
    }

    #[test]
    fn circulant_rows_are_shifts(v in bitvec(1..40)) {
        let c = circulant(&v);
        let m = v.len();
        for i in 0..m {
            prop_assert_eq!(c.row(i).rotate(1), c.row((i + 1) % m).clone());
        }
        prop_assert_eq!(circulant(&BitVector::unit(m, 0)), BitMatrix::identity(m));
    }

    #[test]
    fn mixed_string_round_trip(p in (1usize..12).prop_flat_map(poly_pair)) {
        let (g1, g2) = split_mixed_string(&mixed_string(&p)).unwrap();
        prop_assert_eq!(&g1, p.g1());
        prop_assert_eq!(&g2, p.g2());
    }

    #[test]
    fn qc_rows_are_two_shifts(p in (1usize..8).prop_flat_map(poly_pair), half in 8usize..30) {
        let n = 2 * half;
        let g = qc_generator(&p, n).unwrap();
        for i in 0..half {
            prop_assert_eq!(g.row(i).rotate(2), g.row((i + 1) % half).clone());
        }
    }

    #[test]
    fn encoder_linearity_and_shift_covariance(
        (p, u, v) in (2usize..10, 10usize..40).prop_flat_map(|(k, half)| (poly_pair(k), bitvec(half), bitvec(half)))
    ) {
        let n = 2 * u.len();
        let cu = tb_encode(&u, &p, n).unwrap();
        let cv = tb_encode(&v, &p, n).unwrap();
        prop_assert_eq!(tb_encode(&(&u ^ &v), &p, n).unwrap(), &cu ^ &cv);
        prop_assert_eq!(tb_encode(&u.rotate(1), &p, n).unwrap(), cu.rotate(2));
        prop_assert_eq!(cu, qc_generator(&p, n).unwrap().mul_vec(&u).unwrap());
    }

    #[test]
    fn odd_weight_means_not_even(counts in proptest::collection::vec(0u64..5, 9), odd in 0usize..4) {
        let mut counts = counts;
        counts[2 * odd + 1] += 1;
        prop_assert_eq!(WeightDistribution::from_counts(counts).parity_class(), ParityClass::NotEven);
    }

    // range keeps every expanded count non-negative
    #[test]
    fn consistent_fit_reexpands(alpha in -4398i64..5000) {
        let tpl = EnumeratorTemplate::parse("de", "params: alpha\n12\t4398\t1\n16\t197073\t-12\n20\t18396972\t66\n").unwrap();
        let pairs: Vec<(usize, u64)> = tpl.expand(&[alpha]).into_iter().map(|(w, a)| (w, a as u64)).collect();
        let d = WeightDistribution::from_pairs(72, &pairs).unwrap();
        let fit = fit_template(&d, &tpl).unwrap();
        prop_assert!(fit.consistent);
        for (w, a) in tpl.expand(&[fit.param("alpha").unwrap()]) {
            prop_assert_eq!(a, d.count(w) as i128);
        }
    }
}

/// Self-orthogonal generators only produce even-weight codewords.
#[test]
fn self_orthogonal_codes_are_even() {
    let mut rng = common::rng(5);
    let mut found = 0;
    while found < 40 {
        let rows = 1 + (found % 6);
        let m = common::random_matrix(&mut rng, rows, 12);
        if !m.is_self_orthogonal() {
            continue;
        }
        found += 1;
        for c in common::codebook(&m) {
            assert_eq!(c.weight() % 2, 0);
        }
    }
}

/// Type A3: the replacement view and the encoder-XOR view span the same code,
/// and the encoder image is exactly that code.
#[test]
fn a3_encoder_image_is_row_space() {
    let mut rng = common::rng(17);
    let mut checked = 0;
    for _ in 0..400 {
        let k = 2 + (checked % 4);
        let g1 = common::random_vector(&mut rng, k);
        let g2 = common::random_vector(&mut rng, k);
        if g1.weight() % 2 != 0 || g2.weight() % 2 != 0 {
            continue;
        }
        let Ok(p) = PolynomialPair::new(g1, g2) else {
            continue;
        };
        for half in [6usize, 8, 12] {
            if half < k {
                continue;
            }
            let n = 2 * half;
            for stream in [Stream::One, Stream::Two] {
                let g = a3_generator(&p, n, stream).unwrap();
                let qc = qc_generator(&p, n).unwrap();
                let pi = g.row(0).clone();
                let xor_view = qc.with_row(0, qc.row(0) ^ &pi).unwrap();
                assert!(g.row_space_equal(&xor_view).unwrap());
                assert!(tbsd::analysis::is_quasi_cyclic(&g, 2));

                let image: std::collections::HashSet<BitVector> = (0..1u64 << half)
                    .map(|m| a3_encode(&common::info_from_mask(half, m), &p, n, stream).unwrap())
                    .collect();
                let span: std::collections::HashSet<BitVector> =
                    common::codebook(&g).into_iter().collect();
                assert_eq!(image, span);
                if g.rank() == half {
                    assert_eq!(image.len(), 1 << half, "injective when full rank");
                }
            }
            checked += 1;
        }
    }
    assert!(checked > 20);
}
