use std::path::Path;
use std::process::{Command, Output};

fn tbsd(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tbsd"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn build_writes_generator() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("g.txt");
    let o = tbsd(&["build", "toy_a3_n8", "--out", p(&out)]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("k: 4"));
    let g = tbsd::BitMatrix::from_text(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!((g.num_rows(), g.num_cols(), g.rank()), (4, 8, 4));
    assert_eq!(g.row(0).to_bit_string(), "01010101");
}

#[test]
fn verify_toy_and_catastrophic_a0() {
    let o = tbsd(&["verify", "toy_a3_n8", "--enumerate"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    for line in [
        "rank: ok (4)",
        "self_dual: ok",
        "min_distance: 4",
        "parity: doubly_even",
        "result: PASS",
    ] {
        assert!(text.contains(line), "missing {line:?} in\n{text}");
    }

    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("cat.spec");
    std::fs::write(
        &spec,
        "name: cat\nn: 8\nconstruction: type_a0\nK: 2\ng1: 11\ng2: 11\n",
    )
    .unwrap();
    let o = tbsd(&["verify", p(&spec)]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    assert!(text.contains("rank: FAIL (3)"), "{text}");
    assert!(text.contains("result: FAIL (rank)"));
}

#[test]
fn usage_and_parse_errors_exit_2() {
    assert_eq!(tbsd(&["verify"]).status.code(), Some(2));
    assert_eq!(tbsd(&["build", "no_such_code"]).status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("bad.spec");
    std::fs::write(
        &spec,
        "name: bad\nn: 9\nconstruction: type_a0\nK: 2\ng1: 11\ng2: 11\n",
    )
    .unwrap();
    let o = tbsd(&["build", p(&spec)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("error"));
}

#[test]
fn enumerate_then_fit() {
    let dir = tempfile::tempdir().unwrap();
    let dist = dir.path().join("toy.dist");
    let o = tbsd(&["enumerate", "toy_a3_n8", "--out", p(&dist)]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&dist).unwrap();
    assert!(text.contains("# n: 8"));
    assert!(text.lines().any(|l| l == "4\t14"));

    // doubly-even 72 enumerator with A12 = 1578, A16 = 230913, A20 = 18210852
    let dist72 = dir.path().join("c72.dist");
    std::fs::write(
        &dist72,
        "# n: 72\n0\t1\n12\t1578\n16\t230913\n20\t18210852\n",
    )
    .unwrap();
    let o = tbsd(&["fit", "--dist", p(&dist72), "--template", "w72_de"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("alpha: -2820"), "{}", stdout(&o));

    std::fs::write(
        &dist72,
        "# n: 72\n0\t1\n12\t1578\n16\t230913\n20\t18210850\n",
    )
    .unwrap();
    let o = tbsd(&["fit", "--dist", p(&dist72), "--template", "w72_de"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn encode_decode_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let info = dir.path().join("info.bin");
    let coded = dir.path().join("coded.bin");
    let back = dir.path().join("back.bin");
    // 36-bit words pack into 5 bytes; padding bits stay zero
    let mut data = Vec::new();
    for f in 0..20u8 {
        data.extend([f.wrapping_mul(37), 0xa5 ^ f, f, 0x3c, f & 0x0f]);
    }
    std::fs::write(&info, &data).unwrap();
    assert_eq!(
        tbsd(&["encode", "a3_k9_n72", "--in", p(&info), "--out", p(&coded)])
            .status
            .code(),
        Some(0)
    );
    let mut c = std::fs::read(&coded).unwrap();
    assert_eq!(c.len(), 20 * 9);
    // two bit errors per frame
    for f in 0..20 {
        c[9 * f] ^= 0x10;
        c[9 * f + 5] ^= 0x02;
    }
    std::fs::write(&coded, &c).unwrap();
    for mode in ["exact_ml", "wava"] {
        let o = tbsd(&[
            "decode",
            "a3_k9_n72",
            "--in",
            p(&coded),
            "--mode",
            mode,
            "--out",
            p(&back),
        ]);
        assert_eq!(o.status.code(), Some(0));
        assert!(stdout(&o).contains("decoded 20 frames"));
        assert_eq!(std::fs::read(&back).unwrap(), data, "mode {mode}");
    }
}

#[test]
fn simulate_is_reproducible() {
    let o = tbsd(&[
        "simulate",
        "a3_k9_n60",
        "--channel",
        "bsc:0",
        "--frames",
        "50",
        "--omit-timing",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("bit_errors: 0"), "{text}");
    assert!(text.contains("ber: 0.00000e0"), "{text}");

    let args = [
        "simulate",
        "a3_k9_n64",
        "--channel",
        "awgn:2.0",
        "--frames",
        "200",
        "--seed",
        "7",
        "--omit-timing",
    ];
    let a = stdout(&tbsd(&args));
    let mut threaded = args.to_vec();
    threaded.extend(["--threads", "3"]);
    assert_eq!(a, stdout(&tbsd(&threaded)));
    assert!(!a.contains("elapsed"));
}

#[test]
fn registry_lists_fixtures() {
    let o = tbsd(&["registry", "list"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    for name in [
        "a3_k9_n60",
        "a3_k9_n64",
        "a3_k9_n68",
        "a3_k9_n72",
        "a0_k10_n68_1",
        "a0_k10_n68_2",
        "a0_k10_n72",
    ] {
        assert!(text.contains(name), "missing {name}");
    }
    let o = tbsd(&["registry", "show", "a3_k9_n72"]);
    assert!(stdout(&o).contains("g1: 111001011"));
}
