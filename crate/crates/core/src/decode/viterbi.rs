//! Tailbiting Viterbi decoding.
//!
//! Scores are maximised internally: hard frames score `-(r_i XOR c_i)` per
//! bit (reported back as a Hamming distance), soft frames score
//! `(1 - 2c_i)·r_i` (reported as the correlation). Branch scores are summed
//! per stage, stream 1 then stream 2, and stages are accumulated in order;
//! [`ReceivedFrame::score`] uses the same order so reported metrics match
//! re-encoded codewords exactly.
//!
//! For type A3 codes the encoder maps `u` and its complement onto the same
//! type A0 codeword, so both coset hypotheses `h` are decoded with the stage-0
//! input pinned to zero. The decoded word is `u[0] = h` and `u[i] = path[i] ^ h`.
//!
//! Ties are broken by coset bit, then start state, then the lexicographically
//! smallest input path.

use super::trellis::{build_trellis, Trellis};
use crate::bits::BitVector;
use crate::codespec::CodeSpec;
use crate::construction::Stream;
use crate::error::{Error, Result};
use crate::tbcc::encode;

/// Received channel values for one frame.
#[derive(Debug, Clone, PartialEq)]
pub enum ReceivedFrame {
    Hard(BitVector),
    /// Positive favours bit 0; magnitude is the confidence.
    Soft(Vec<f32>),
}

impl ReceivedFrame {
    pub fn len(&self) -> usize {
        match self {
            ReceivedFrame::Hard(v) => v.len(),
            ReceivedFrame::Soft(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_hard(&self) -> bool {
        matches!(self, ReceivedFrame::Hard(_))
    }

    /// `(score if bit is 0, score if bit is 1)` at position `i`.
    fn bit_scores(&self, i: usize) -> [f64; 2] {
        match self {
            ReceivedFrame::Hard(v) => {
                if v.get(i) {
                    [-1.0, 0.0]
                } else {
                    [0.0, -1.0]
                }
            }
            ReceivedFrame::Soft(v) => {
                let r = v[i] as f64;
                [r, -r]
            }
        }
    }

    fn internal_score(&self, c: &BitVector) -> f64 {
        let mut acc = 0.0f64;
        for t in 0..c.len() / 2 {
            let a = self.bit_scores(2 * t)[c.get(2 * t) as usize];
            let b = self.bit_scores(2 * t + 1)[c.get(2 * t + 1) as usize];
            acc += a + b;
        }
        acc
    }

    /// Hamming distance for hard frames, correlation for soft frames.
    pub fn score(&self, c: &BitVector) -> f64 {
        self.report(self.internal_score(c))
    }

    fn report(&self, internal: f64) -> f64 {
        if self.is_hard() {
            -internal
        } else {
            internal
        }
    }

    /// Hard decisions of the frame.
    pub fn hard_decisions(&self) -> BitVector {
        match self {
            ReceivedFrame::Hard(v) => v.clone(),
            ReceivedFrame::Soft(v) => {
                BitVector::from_bools(&v.iter().map(|&x| x < 0.0).collect::<Vec<_>>())
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DecoderMode {
    ExactMl,
    Wava { max_iters: usize },
}

impl DecoderMode {
    pub const DEFAULT_WAVA_ITERS: usize = 4;

    pub fn name(self) -> &'static str {
        match self {
            DecoderMode::ExactMl => "exact_ml",
            DecoderMode::Wava { .. } => "wava",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DecodeResult {
    pub info: BitVector,
    /// Hamming distance (hard) or correlation (soft) of the re-encoded codeword.
    pub metric: f64,
    pub mode: DecoderMode,
    /// Chosen type A3 hypothesis, `None` for other codes.
    pub coset_bit: Option<bool>,
    /// WAVA only: whether the survivor was tailbiting-consistent.
    pub converged: Option<bool>,
    pub iterations: usize,
}

/// Per-stage branch scores indexed by the trellis output pair.
struct Branches {
    stages: Vec<[f64; 4]>,
}

impl Branches {
    fn new(frame: &ReceivedFrame, ones_stream: Option<(Stream, bool)>) -> Self {
        let k = frame.len() / 2;
        let stages = (0..k)
            .map(|t| {
                let mut s1 = frame.bit_scores(2 * t);
                let mut s2 = frame.bit_scores(2 * t + 1);
                match ones_stream {
                    Some((Stream::One, true)) => s1.swap(0, 1),
                    Some((Stream::Two, true)) => s2.swap(0, 1),
                    _ => {}
                }
                [s1[0] + s2[0], s1[1] + s2[0], s1[0] + s2[1], s1[1] + s2[1]]
            })
            .collect();
        Branches { stages }
    }
}

struct Survivors {
    metric: Vec<f64>,
    /// input bits so far, first input most significant
    path: Vec<u128>,
    /// start state of each survivor
    origin: Vec<u32>,
}

/// One Viterbi pass from the given initial metrics.
fn forward(trellis: &Trellis, branches: &Branches, init: &[f64], pin_first: bool) -> Survivors {
    let states = trellis.num_states();
    let mut cur = Survivors {
        metric: init.to_vec(),
        path: vec![0; states],
        origin: (0..states as u32).collect(),
    };
    let mut nxt = Survivors {
        metric: vec![f64::NEG_INFINITY; states],
        path: vec![0; states],
        origin: vec![0; states],
    };
    for (t, bm) in branches.stages.iter().enumerate() {
        for s in 0..states {
            let mut best: Option<(f64, u128, u32)> = None;
            for (prev, b) in trellis.incoming(s) {
                if pin_first && t == 0 && b == 1 {
                    continue;
                }
                let m = cur.metric[prev] + bm[trellis.output_index(prev, b)];
                let p = (cur.path[prev] << 1) | b as u128;
                let better = match best {
                    None => true,
                    Some((bm_, bp, _)) => m > bm_ || (m == bm_ && p < bp),
                };
                if better {
                    best = Some((m, p, cur.origin[prev]));
                }
            }
            let (m, p, o) = best.unwrap_or((f64::NEG_INFINITY, 0, 0));
            nxt.metric[s] = m;
            nxt.path[s] = p;
            nxt.origin[s] = o;
        }
        std::mem::swap(&mut cur, &mut nxt);
    }
    cur
}

fn path_bits(path: u128, k: usize) -> BitVector {
    let mut u = BitVector::zeros(k);
    for t in 0..k {
        if (path >> (k - 1 - t)) & 1 == 1 {
            u.set(t, true);
        }
    }
    u
}

/// Maps a decoded trellis path back to the information word.
fn info_from_path(path: u128, k: usize, coset: Option<bool>) -> BitVector {
    let mut u = path_bits(path, k);
    if coset == Some(true) {
        u = &u ^ &BitVector::ones(k);
        u.set(0, true);
    }
    u
}

struct Setup {
    trellis: Trellis,
    k: usize,
    hypotheses: Vec<Option<bool>>,
    ones_stream: Option<Stream>,
}

fn setup(frame: &ReceivedFrame, spec: &CodeSpec) -> Result<Setup> {
    if frame.len() != spec.n {
        return Err(Error::param(format!(
            "frame has {} values, code length is {}",
            frame.len(),
            spec.n
        )));
    }
    let polys = spec.polys().ok_or_else(|| {
        Error::param(format!(
            "{} codes have no convolutional trellis",
            spec.construction.keyword()
        ))
    })?;
    let k = spec.k();
    let kc = polys.constraint_length();
    if k + 1 < kc {
        return Err(Error::param(format!(
            "tailbiting trellis needs n/2 >= K - 1 ({k} < {})",
            kc - 1
        )));
    }
    if k > 128 {
        return Err(Error::Refusal(format!(
            "decoder handles up to 128 stages, got {k}"
        )));
    }
    let ones_stream = spec.ones_stream();
    let hypotheses = match ones_stream {
        Some(_) => vec![Some(false), Some(true)],
        None => vec![None],
    };
    Ok(Setup {
        trellis: build_trellis(polys)?,
        k,
        hypotheses,
        ones_stream,
    })
}

/// Candidate ordering key: higher score wins, then `(coset, start, path)` ascending.
#[derive(Clone, Copy)]
struct Candidate {
    score: f64,
    coset: bool,
    start: usize,
    path: u128,
}

impl Candidate {
    fn beats(&self, other: &Candidate) -> bool {
        self.score > other.score
            || (self.score == other.score
                && (self.coset, self.start, self.path) < (other.coset, other.start, other.path))
    }
}

/// Exact maximum-likelihood tailbiting decoding.
///
/// A free-start pass bounds, for every end state, the best score of any path
/// ending there; a tailbiting path from `s` back to `s` can never beat that
/// bound, so start states whose bound cannot win are skipped.
pub fn viterbi_exact_ml(frame: &ReceivedFrame, spec: &CodeSpec) -> Result<DecodeResult> {
    let su = setup(frame, spec)?;
    let states = su.trellis.num_states();
    let mut best: Option<(Candidate, Option<bool>)> = None;

    for &h in &su.hypotheses {
        let branches = Branches::new(frame, su.ones_stream.zip(h));
        let pin = h.is_some();
        let bounds = forward(&su.trellis, &branches, &vec![0.0; states], pin).metric;
        let mut order: Vec<usize> = (0..states).collect();
        order.sort_by(|&a, &b| bounds[b].total_cmp(&bounds[a]).then(a.cmp(&b)));
        let coset = h.unwrap_or(false);

        for s0 in order {
            if let Some((b, _)) = &best {
                // bounds are sorted in descending order
                if bounds[s0] < b.score {
                    break;
                }
                if bounds[s0] == b.score && (coset, s0) > (b.coset, b.start) {
                    continue;
                }
            }
            let mut init = vec![f64::NEG_INFINITY; states];
            init[s0] = 0.0;
            let surv = forward(&su.trellis, &branches, &init, pin);
            if surv.metric[s0] == f64::NEG_INFINITY {
                continue;
            }
            let cand = Candidate {
                score: surv.metric[s0],
                coset,
                start: s0,
                path: surv.path[s0],
            };
            if best.as_ref().is_none_or(|(b, _)| cand.beats(b)) {
                best = Some((cand, h));
            }
        }
    }

    let (cand, h) = best.ok_or_else(|| Error::Degenerate("no tailbiting path".into()))?;
    Ok(DecodeResult {
        info: info_from_path(cand.path, su.k, h),
        metric: frame.report(cand.score),
        mode: DecoderMode::ExactMl,
        coset_bit: h,
        converged: None,
        iterations: 1,
    })
}

/// Wrap-around Viterbi: final state metrics seed the next pass until the
/// best survivor starts and ends in the same state.
pub fn viterbi_wava(
    frame: &ReceivedFrame,
    spec: &CodeSpec,
    max_iters: usize,
) -> Result<DecodeResult> {
    if max_iters == 0 {
        return Err(Error::param("WAVA needs at least one iteration"));
    }
    let su = setup(frame, spec)?;
    let states = su.trellis.num_states();
    let mode = DecoderMode::Wava { max_iters };
    let mut overall: Option<DecodeResult> = None;

    for &h in &su.hypotheses {
        let branches = Branches::new(frame, su.ones_stream.zip(h));
        let pin = h.is_some();
        let mut init = vec![0.0; states];
        let mut best_tb: Option<(f64, BitVector)> = None;
        let mut outcome = None;
        for iter in 1..=max_iters {
            let surv = forward(&su.trellis, &branches, &init, pin);
            let end = (0..states)
                .max_by(|&a, &b| surv.metric[a].total_cmp(&surv.metric[b]).then(b.cmp(&a)))
                .unwrap();
            if surv.origin[end] as usize == end {
                outcome = Some((info_from_path(surv.path[end], su.k, h), true, iter));
                break;
            }
            for s in (0..states).filter(|&s| surv.origin[s] as usize == s) {
                let info = info_from_path(surv.path[s], su.k, h);
                let score = frame.internal_score(&encode(spec, &info)?);
                if best_tb.as_ref().is_none_or(|(b, _)| score > *b) {
                    best_tb = Some((score, info));
                }
            }
            if iter == max_iters {
                let fallback = info_from_path(surv.path[end], su.k, h);
                let info = best_tb.take().map(|(_, i)| i).unwrap_or(fallback);
                outcome = Some((info, false, iter));
            }
            init = surv.metric;
        }
        let (info, converged, iterations) = outcome.expect("at least one iteration");
        let metric = frame.score(&encode(spec, &info)?);
        let result = DecodeResult {
            info,
            metric,
            mode,
            coset_bit: h,
            converged: Some(converged),
            iterations,
        };
        let better = match &overall {
            None => true,
            Some(o) => {
                let (a, b) = if frame.is_hard() {
                    (-metric, -o.metric)
                } else {
                    (metric, o.metric)
                };
                (converged && !o.converged.unwrap_or(false))
                    || (converged == o.converged.unwrap_or(false) && a > b)
            }
        };
        if better {
            overall = Some(result);
        }
    }
    Ok(overall.expect("at least one hypothesis"))
}

/// Decodes with the requested mode.
pub fn decode(frame: &ReceivedFrame, spec: &CodeSpec, mode: DecoderMode) -> Result<DecodeResult> {
    match mode {
        DecoderMode::ExactMl => viterbi_exact_ml(frame, spec),
        DecoderMode::Wava { max_iters } => viterbi_wava(frame, spec, max_iters),
    }
}
