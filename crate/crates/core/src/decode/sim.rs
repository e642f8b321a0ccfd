use std::fmt::Write as _;
use std::time::Instant;

use rand::Rng;

use super::channel::{apply_channel, frame_rng, ChannelModel, INFO};
use super::viterbi::{decode, DecoderMode};
use crate::bits::BitVector;
use crate::codespec::CodeSpec;
use crate::error::{Error, Result};
use crate::tbcc::encode;

#[derive(Debug, Clone, PartialEq)]
pub struct SimReport {
    pub code: String,
    pub channel: String,
    pub frames: u64,
    pub bit_errors: u64,
    pub frame_errors: u64,
    pub mode: DecoderMode,
    pub seed: u64,
    pub elapsed_ms: u128,
}

impl SimReport {
    pub fn ber(&self, k: usize) -> f64 {
        self.bit_errors as f64 / (self.frames as f64 * k as f64)
    }

    pub fn fer(&self) -> f64 {
        self.frame_errors as f64 / self.frames as f64
    }

    /// Report text; `with_timing = false` drops the wall-clock line so reports
    /// from different runs compare byte for byte.
    pub fn to_text(&self, k: usize, with_timing: bool) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "# simulation report");
        let _ = writeln!(s, "# code: {}", self.code);
        let _ = writeln!(s, "# channel: {}", self.channel);
        let _ = writeln!(s, "frames: {}", self.frames);
        let _ = writeln!(s, "bit_errors: {}", self.bit_errors);
        let _ = writeln!(s, "frame_errors: {}", self.frame_errors);
        let _ = writeln!(s, "ber: {:.5e}", self.ber(k));
        let _ = writeln!(s, "fer: {:.5e}", self.fer());
        let _ = writeln!(s, "mode: {}", self.mode.name());
        let _ = writeln!(s, "seed: {}", self.seed);
        if with_timing {
            let _ = writeln!(s, "elapsed_ms: {}", self.elapsed_ms);
        }
        s
    }
}

/// Information word for frame `frame`.
pub fn random_info(k: usize, seed: u64, frame: u64) -> BitVector {
    let mut rng = frame_rng(seed, frame, INFO);
    BitVector::from_bools(&(0..k).map(|_| rng.random::<bool>()).collect::<Vec<_>>())
}

/// Encode, transmit and decode `frames` random words. Frames are split across
/// `threads` workers; every frame's randomness depends only on the seed and
/// its index, so the counts do not depend on `threads`.
pub fn simulate(
    spec: &CodeSpec,
    ch: &ChannelModel,
    frames: u64,
    mode: DecoderMode,
    threads: usize,
) -> Result<SimReport> {
    if frames == 0 {
        return Err(Error::param("need at least one frame"));
    }
    let start = Instant::now();
    let k = spec.k();
    let run_frame = |f: u64| -> Result<u64> {
        let u = random_info(k, ch.seed, f);
        let c = encode(spec, &u)?;
        let r = apply_channel(&c, ch, f);
        let d = decode(&r, spec, mode)?;
        Ok((&d.info ^ &u).weight() as u64)
    };

    let workers = threads.clamp(1, frames as usize) as u64;
    let tallies: Vec<Result<(u64, u64)>> = std::thread::scope(|s| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                s.spawn(move || {
                    let mut bits = 0;
                    let mut errs = 0;
                    for f in (w..frames).step_by(workers as usize) {
                        let e = run_frame(f)?;
                        bits += e;
                        errs += u64::from(e > 0);
                    }
                    Ok((bits, errs))
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("worker panicked"))
            .collect()
    });
    let mut bit_errors = 0;
    let mut frame_errors = 0;
    for t in tallies {
        let (b, f) = t?;
        bit_errors += b;
        frame_errors += f;
    }
    Ok(SimReport {
        code: spec.name.clone(),
        channel: ch.label(),
        frames,
        bit_errors,
        frame_errors,
        mode,
        seed: ch.seed,
        elapsed_ms: start.elapsed().as_millis(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construction::{PolynomialPair, Stream};

    fn spec() -> CodeSpec {
        CodeSpec::type_a3(
            "toy",
            8,
            PolynomialPair::parse("11", "11").unwrap(),
            Stream::Two,
        )
        .unwrap()
    }

    #[test]
    fn noiseless_has_no_errors() {
        let ch = ChannelModel::parse("bsc:0", 42).unwrap();
        let r = simulate(&spec(), &ch, 50, DecoderMode::ExactMl, 1).unwrap();
        assert_eq!((r.bit_errors, r.frame_errors), (0, 0));
        assert!(r.to_text(4, false).contains("ber: 0.00000e0\n"));
    }

    #[test]
    fn thread_count_does_not_matter() {
        let ch = ChannelModel::parse("bsc:0.1", 42).unwrap();
        let a = simulate(&spec(), &ch, 200, DecoderMode::ExactMl, 1).unwrap();
        let b = simulate(&spec(), &ch, 200, DecoderMode::ExactMl, 3).unwrap();
        assert_eq!(a.to_text(4, false), b.to_text(4, false));
        assert!(a.frame_errors > 0);
    }

    #[test]
    fn zero_frames_rejected() {
        let ch = ChannelModel::parse("bsc:0", 1).unwrap();
        assert!(simulate(&spec(), &ch, 0, DecoderMode::ExactMl, 1).is_err());
    }
}
