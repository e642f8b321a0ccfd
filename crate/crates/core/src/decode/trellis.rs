use crate::construction::PolynomialPair;
use crate::error::{Error, Result};

pub const MAX_CONSTRAINT_LENGTH: usize = 16;

/// Rate-1/2 feedforward trellis. State bit `j - 1` holds the input from `j`
/// steps back, so a state is the previous `K - 1` inputs, most recent in bit 0.
#[derive(Debug, Clone)]
pub struct Trellis {
    constraint_length: usize,
    /// `next[s][b]`
    next: Vec<[u32; 2]>,
    /// `output[s][b]`: bit 0 is stream 1, bit 1 is stream 2
    output: Vec<[u8; 2]>,
    /// incoming `(previous state, input bit)` pairs per state
    incoming: Vec<[(u32, u8); 2]>,
}

pub fn build_trellis(p: &PolynomialPair) -> Result<Trellis> {
    let k = p.constraint_length();
    if k > MAX_CONSTRAINT_LENGTH {
        return Err(Error::Refusal(format!(
            "constraint length {k} exceeds the {MAX_CONSTRAINT_LENGTH}-tap trellis limit"
        )));
    }
    let (g1, g2) = p.tap_masks();
    let states = 1usize << (k - 1);
    let mask = (states - 1) as u64;
    let tap = |g: u64, s: u64, b: u64| -> u8 {
        ((((g & 1) * b) ^ ((g >> 1) & s).count_ones() as u64) & 1) as u8
    };

    let mut next = Vec::with_capacity(states);
    let mut output = Vec::with_capacity(states);
    let mut incoming: Vec<Vec<(u32, u8)>> = vec![Vec::with_capacity(2); states];
    for s in 0..states as u64 {
        let mut nx = [0u32; 2];
        let mut out = [0u8; 2];
        for b in 0..2u64 {
            let t = ((s << 1) | b) & mask;
            nx[b as usize] = t as u32;
            out[b as usize] = tap(g1, s, b) | (tap(g2, s, b) << 1);
            incoming[t as usize].push((s as u32, b as u8));
        }
        next.push(nx);
        output.push(out);
    }
    let incoming = incoming
        .into_iter()
        .map(|v| {
            assert_eq!(
                v.len(),
                2,
                "de Bruijn trellis has two incoming edges per state"
            );
            [v[0], v[1]]
        })
        .collect();
    Ok(Trellis {
        constraint_length: k,
        next,
        output,
        incoming,
    })
}

impl Trellis {
    pub fn constraint_length(&self) -> usize {
        self.constraint_length
    }

    pub fn num_states(&self) -> usize {
        self.next.len()
    }

    pub fn num_transitions(&self) -> usize {
        2 * self.next.len()
    }

    pub fn next_state(&self, state: usize, input: u8) -> usize {
        self.next[state][input as usize] as usize
    }

    /// Output pair as `(stream 1, stream 2)`.
    pub fn output(&self, state: usize, input: u8) -> (u8, u8) {
        let o = self.output[state][input as usize];
        (o & 1, o >> 1)
    }

    pub(crate) fn output_index(&self, state: usize, input: u8) -> usize {
        self.output[state][input as usize] as usize
    }

    pub fn incoming(&self, state: usize) -> [(usize, u8); 2] {
        let [a, b] = self.incoming[state];
        [(a.0 as usize, a.1), (b.0 as usize, b.1)]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bits::BitVector;

    #[test]
    fn k2_hand_unrolled() {
        let t = build_trellis(&PolynomialPair::parse("11", "11").unwrap()).unwrap();
        assert_eq!(t.num_states(), 2);
        for s in 0..2 {
            for b in 0..2u8 {
                let o = b ^ s as u8;
                assert_eq!(t.output(s, b), (o, o));
                assert_eq!(t.next_state(s, b), b as usize);
            }
        }
    }

    #[test]
    fn k9_size_and_degree() {
        let p = PolynomialPair::parse("111011010", "011101101").unwrap();
        let t = build_trellis(&p).unwrap();
        assert_eq!(t.num_states(), 256);
        assert_eq!(t.num_transitions(), 512);
        let mut indeg = vec![0; 256];
        for s in 0..256 {
            for b in 0..2 {
                indeg[t.next_state(s, b)] += 1;
            }
        }
        assert!(indeg.iter().all(|&d| d == 2));
        for s in 0..256 {
            for (prev, b) in t.incoming(s) {
                assert_eq!(t.next_state(prev, b), s);
            }
        }
    }

    #[test]
    fn constraint_length_guard() {
        let g = BitVector::ones(17);
        let p = PolynomialPair::new(g.clone(), g).unwrap();
        assert!(matches!(build_trellis(&p), Err(Error::Refusal(_))));
    }

    #[test]
    fn k1_single_state() {
        let t = build_trellis(&PolynomialPair::parse("1", "1").unwrap()).unwrap();
        assert_eq!(t.num_states(), 1);
        assert_eq!(t.output(0, 1), (1, 1));
    }
}
