//! Tailbiting Viterbi decoding over the `2^(K-1)`-state trellis, channel
//! models and a reproducible frame-error simulation loop.

mod channel;
mod sim;
mod trellis;
mod viterbi;

pub use channel::{apply_channel, ChannelKind, ChannelModel};
pub use sim::{random_info, simulate, SimReport};
pub use trellis::{build_trellis, Trellis, MAX_CONSTRAINT_LENGTH};
pub use viterbi::{
    decode, viterbi_exact_ml, viterbi_wava, DecodeResult, DecoderMode, ReceivedFrame,
};
