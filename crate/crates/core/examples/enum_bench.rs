use std::time::Instant;

use tbsd::analysis::weight_distribution_gray;
use tbsd::construction::qc_generator;
use tbsd::PolynomialPair;

fn main() {
    let n: usize = std::env::args()
        .nth(1)
        .map(|s| s.parse().unwrap())
        .unwrap_or(60);
    let p = PolynomialPair::parse("110110001", "101011011").unwrap();
    let g = qc_generator(&p, n).unwrap();
    let t = Instant::now();
    let d = weight_distribution_gray(&g, 1).unwrap();
    let secs = t.elapsed().as_secs_f64();
    println!(
        "n={n} rows={} {:.2}s {:.3} ns/codeword total={}",
        g.num_rows(),
        secs,
        secs * 1e9 / d.total() as f64,
        d.total()
    );
}
