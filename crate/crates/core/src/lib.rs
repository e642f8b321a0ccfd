//! Binary self-dual quasi-cyclic codes built as rate-1/2 tailbiting
//! convolutional codes.
//!
//! The crate covers the whole pipeline: GF(2) linear algebra ([`bits`]),
//! generator matrix constructions ([`construction`], [`codespec`]),
//! tailbiting encoding ([`tbcc`]), exhaustive weight enumeration and
//! enumerator fitting ([`analysis`]), tailbiting Viterbi decoding with
//! channel simulation ([`decode`]), and the fixture [`registry`].

pub mod analysis;
pub mod bits;
pub mod cli;
pub mod codespec;
pub mod construction;
pub mod decode;
pub mod error;
pub mod registry;
pub mod tbcc;

pub use bits::{BitMatrix, BitVector};
pub use codespec::{CodeSpec, Construction};
pub use construction::{PolynomialPair, Stream};
pub use error::{Error, Result};
