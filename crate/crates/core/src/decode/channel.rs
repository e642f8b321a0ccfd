use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::viterbi::ReceivedFrame;
use crate::bits::BitVector;
use crate::error::{Error, Result};

const CODE_RATE: f64 = 0.5;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ChannelKind {
    /// Binary symmetric channel with crossover probability `p`.
    Bsc { p: f64 },
    /// BPSK over AWGN at the given Eb/N0 in dB.
    AwgnBpsk { ebn0_db: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelModel {
    pub kind: ChannelKind,
    pub seed: u64,
}

impl ChannelModel {
    pub fn new(kind: ChannelKind, seed: u64) -> Result<Self> {
        match kind {
            ChannelKind::Bsc { p } if !(0.0..0.5).contains(&p) => {
                return Err(Error::param(format!(
                    "crossover probability must be in [0, 0.5), got {p}"
                )))
            }
            ChannelKind::AwgnBpsk { ebn0_db } if !ebn0_db.is_finite() => {
                return Err(Error::param("Eb/N0 must be finite"))
            }
            _ => {}
        }
        Ok(ChannelModel { kind, seed })
    }

    /// Parses `bsc:P` or `awgn:DB`.
    pub fn parse(text: &str, seed: u64) -> Result<Self> {
        let (kind, value) = text.split_once(':').ok_or_else(|| {
            Error::param(format!("channel must be bsc:P or awgn:DB, got {text:?}"))
        })?;
        let value: f64 = value
            .parse()
            .map_err(|_| Error::param(format!("bad channel parameter {value:?}")))?;
        let kind = match kind {
            "bsc" => ChannelKind::Bsc { p: value },
            "awgn" => ChannelKind::AwgnBpsk { ebn0_db: value },
            other => return Err(Error::param(format!("unknown channel {other:?}"))),
        };
        Self::new(kind, seed)
    }

    pub fn label(&self) -> String {
        match self.kind {
            ChannelKind::Bsc { p } => format!("bsc:{p}"),
            ChannelKind::AwgnBpsk { ebn0_db } => format!("awgn:{ebn0_db}"),
        }
    }

    /// Noise variance per BPSK symbol for the rate-1/2 code.
    pub fn noise_variance(&self) -> Option<f64> {
        match self.kind {
            ChannelKind::AwgnBpsk { ebn0_db } => {
                Some(1.0 / (2.0 * CODE_RATE * 10f64.powf(ebn0_db / 10.0)))
            }
            ChannelKind::Bsc { .. } => None,
        }
    }
}

/// Random stream for one frame. Streams are keyed by `(seed, frame, purpose)`
/// so any frame can be regenerated in isolation.
pub(crate) fn frame_rng(seed: u64, frame: u64, purpose: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(frame.wrapping_mul(4).wrapping_add(purpose));
    rng
}

const NOISE: u64 = 0;
pub(crate) const INFO: u64 = 1;

/// Passes codeword `c` through the channel as frame number `frame`.
pub fn apply_channel(c: &BitVector, ch: &ChannelModel, frame: u64) -> ReceivedFrame {
    let mut rng = frame_rng(ch.seed, frame, NOISE);
    match ch.kind {
        ChannelKind::Bsc { p } => {
            let mut r = c.clone();
            for i in 0..c.len() {
                if rng.random::<f64>() < p {
                    r.flip(i);
                }
            }
            ReceivedFrame::Hard(r)
        }
        ChannelKind::AwgnBpsk { .. } => {
            let var = ch.noise_variance().unwrap();
            let sigma = var.sqrt();
            let soft = c
                .iter()
                .map(|b| {
                    let x = if b { -1.0 } else { 1.0 };
                    let n: f64 = rng.sample(StandardNormal);
                    (2.0 * (x + sigma * n) / var) as f32
                })
                .collect();
            ReceivedFrame::Soft(soft)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bsc_zero_is_identity() {
        let c: BitVector = "1011001110".parse().unwrap();
        let ch = ChannelModel::parse("bsc:0", 7).unwrap();
        assert_eq!(apply_channel(&c, &ch, 3), ReceivedFrame::Hard(c));
    }

    #[test]
    fn parameter_ranges() {
        assert!(ChannelModel::parse("bsc:0.5", 0).is_err());
        assert!(ChannelModel::parse("bsc:-0.1", 0).is_err());
        assert!(ChannelModel::parse("awgn:inf", 0).is_err());
        assert!(ChannelModel::parse("qam:3", 0).is_err());
        assert!(ChannelModel::parse("bsc", 0).is_err());
        assert!(ChannelModel::parse("awgn:3.5", 0).is_ok());
    }

    #[test]
    fn frames_are_reproducible() {
        let c = BitVector::zeros(72);
        let ch = ChannelModel::parse("awgn:2", 11).unwrap();
        assert_eq!(apply_channel(&c, &ch, 5), apply_channel(&c, &ch, 5));
        assert_ne!(apply_channel(&c, &ch, 5), apply_channel(&c, &ch, 6));
        let bsc = ChannelModel::parse("bsc:0.2", 11).unwrap();
        assert_eq!(apply_channel(&c, &bsc, 9), apply_channel(&c, &bsc, 9));
    }

    #[test]
    fn awgn_variance() {
        let ch = ChannelModel::parse("awgn:0", 1).unwrap();
        assert_eq!(ch.noise_variance(), Some(1.0));
        let ch = ChannelModel::parse("awgn:10", 1).unwrap();
        assert!((ch.noise_variance().unwrap() - 0.1).abs() < 1e-12);
    }

    #[test]
    fn bsc_flip_rate_is_plausible() {
        let c = BitVector::zeros(1000);
        let ch = ChannelModel::parse("bsc:0.1", 3).unwrap();
        let flips: usize = (0..20)
            .map(|f| match apply_channel(&c, &ch, f) {
                ReceivedFrame::Hard(r) => r.weight(),
                _ => unreachable!(),
            })
            .sum();
        // 20000 trials, mean 2000, sd ~42
        assert!((1800..2200).contains(&flips), "{flips}");
    }
}
