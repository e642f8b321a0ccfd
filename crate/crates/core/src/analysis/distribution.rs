use std::fmt::Write as _;

use crate::error::{Error, Result};

/// Weight distribution `A_0 … A_n` of a code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightDistribution {
    counts: Vec<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParityClass {
    DoublyEven,
    SinglyEven,
    NotEven,
}

impl ParityClass {
    pub fn as_str(self) -> &'static str {
        match self {
            ParityClass::DoublyEven => "doubly_even",
            ParityClass::SinglyEven => "singly_even",
            ParityClass::NotEven => "not_even",
        }
    }
}

impl WeightDistribution {
    /// `counts[w] = A_w`; the length is `n + 1`.
    pub fn from_counts(counts: Vec<u64>) -> Self {
        assert!(!counts.is_empty(), "distribution needs at least A_0");
        WeightDistribution { counts }
    }

    /// Builds a length-`n` distribution from sparse `(w, A_w)` pairs.
    pub fn from_pairs(n: usize, pairs: &[(usize, u64)]) -> Result<Self> {
        let mut counts = vec![0u64; n + 1];
        for &(w, a) in pairs {
            if w > n {
                return Err(Error::param(format!("weight {w} exceeds length {n}")));
            }
            counts[w] += a;
        }
        Ok(WeightDistribution { counts })
    }

    pub fn n(&self) -> usize {
        self.counts.len() - 1
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn count(&self, w: usize) -> u64 {
        self.counts.get(w).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u128 {
        self.counts.iter().map(|&c| c as u128).sum()
    }

    /// `A_w == A_{n-w}` for all `w`.
    pub fn is_symmetric(&self) -> bool {
        self.counts.iter().eq(self.counts.iter().rev())
    }

    /// Smallest nonzero weight present.
    pub fn min_distance(&self) -> Result<usize> {
        self.counts
            .iter()
            .enumerate()
            .skip(1)
            .find(|(_, &c)| c > 0)
            .map(|(w, _)| w)
            .ok_or_else(|| Error::Degenerate("no codeword of nonzero weight".into()))
    }

    pub fn parity_class(&self) -> ParityClass {
        let present = || {
            self.counts
                .iter()
                .enumerate()
                .filter(|(_, &c)| c > 0)
                .map(|(w, _)| w)
        };
        if present().any(|w| w % 2 == 1) {
            ParityClass::NotEven
        } else if present().any(|w| w % 4 == 2) {
            ParityClass::SinglyEven
        } else {
            ParityClass::DoublyEven
        }
    }

    /// Distribution file body: `#` header lines then `w<TAB>A_w` for nonzero counts.
    pub fn to_file_text(&self, headers: &[(&str, String)]) -> String {
        let mut s = String::new();
        for (k, v) in headers {
            let _ = writeln!(s, "# {k}: {v}");
        }
        for (w, &c) in self.counts.iter().enumerate() {
            if c > 0 {
                let _ = writeln!(s, "{w}\t{c}");
            }
        }
        s
    }

    /// Parses a distribution file. The length comes from an `# n:` header.
    pub fn from_file_text(text: &str) -> Result<Self> {
        let mut n = None;
        let mut pairs = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(h) = line.strip_prefix('#') {
                if let Some((k, v)) = h.split_once(':') {
                    if k.trim() == "n" {
                        n = Some(v.trim().parse::<usize>().map_err(|_| {
                            Error::parse(
                                "<distribution>",
                                idx + 1,
                                format!("bad length {:?}", v.trim()),
                            )
                        })?);
                    }
                }
                continue;
            }
            let bad = || {
                Error::parse(
                    "<distribution>",
                    idx + 1,
                    format!("expected `w<TAB>A_w`, got {line:?}"),
                )
            };
            let (w, a) = line.split_once('\t').ok_or_else(bad)?;
            let w = w.trim().parse::<usize>().map_err(|_| bad())?;
            let a = a.trim().parse::<u64>().map_err(|_| bad())?;
            pairs.push((w, a));
        }
        let n = n.ok_or_else(|| Error::parse("<distribution>", 0, "missing `# n:` header"))?;
        Self::from_pairs(n, &pairs)
    }
}
