//! Declarative code descriptions and their `key: value` file format.

use std::fmt::Write as _;
use std::path::Path;

use crate::bits::{BitMatrix, BitVector};
use crate::construction::{self, PolynomialPair, Stream};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Construction {
    TypeA0 {
        polys: PolynomialPair,
    },
    TypeA3 {
        polys: PolynomialPair,
        ones_stream: Stream,
    },
    PureDc {
        first_row: BitVector,
    },
    BorderedDc {
        first_row: BitVector,
        corner: bool,
    },
}

impl Construction {
    pub fn keyword(&self) -> &'static str {
        match self {
            Construction::TypeA0 { .. } => "type_a0",
            Construction::TypeA3 { .. } => "type_a3",
            Construction::PureDc { .. } => "pure_dc",
            Construction::BorderedDc { .. } => "bordered_dc",
        }
    }
}

/// Whether the fixture's payload has been keyed in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ready,
    PendingTranscription,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodeSpec {
    pub name: String,
    pub n: usize,
    pub construction: Construction,
    pub status: Status,
}

impl CodeSpec {
    pub fn new(name: impl Into<String>, n: usize, construction: Construction) -> Result<CodeSpec> {
        let spec = CodeSpec {
            name: name.into(),
            n,
            construction,
            status: Status::Ready,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn type_a0(name: &str, n: usize, polys: PolynomialPair) -> Result<CodeSpec> {
        Self::new(name, n, Construction::TypeA0 { polys })
    }

    pub fn type_a3(
        name: &str,
        n: usize,
        polys: PolynomialPair,
        ones_stream: Stream,
    ) -> Result<CodeSpec> {
        Self::new(name, n, Construction::TypeA3 { polys, ones_stream })
    }

    fn validate(&self) -> Result<()> {
        if self.n == 0 || !self.n.is_multiple_of(2) {
            return Err(Error::param(format!(
                "code length must be even and positive, got {}",
                self.n
            )));
        }
        match &self.construction {
            Construction::PureDc { first_row } if first_row.len() != self.n / 2 => {
                Err(Error::param(format!(
                    "pure_dc first_row must have n/2 = {} bits",
                    self.n / 2
                )))
            }
            Construction::BorderedDc { first_row, .. } if first_row.len() + 1 != self.n / 2 => {
                Err(Error::param(format!(
                    "bordered_dc first_row must have n/2 - 1 = {} bits",
                    self.n / 2 - 1
                )))
            }
            _ => Ok(()),
        }
    }

    /// Dimension `n/2`.
    pub fn k(&self) -> usize {
        self.n / 2
    }

    pub fn polys(&self) -> Option<&PolynomialPair> {
        match &self.construction {
            Construction::TypeA0 { polys } | Construction::TypeA3 { polys, .. } => Some(polys),
            _ => None,
        }
    }

    /// Stream carrying the all-ones row, for type A3 codes.
    pub fn ones_stream(&self) -> Option<Stream> {
        match self.construction {
            Construction::TypeA3 { ones_stream, .. } => Some(ones_stream),
            _ => None,
        }
    }

    /// True when a type A0/A3 mixed string is longer than the code.
    pub fn rows_overlap(&self) -> bool {
        self.polys()
            .is_some_and(|p| construction::rows_overlap(p, self.n))
    }

    pub fn generator(&self) -> Result<BitMatrix> {
        match &self.construction {
            Construction::TypeA0 { polys } => construction::qc_generator(polys, self.n),
            Construction::TypeA3 { polys, ones_stream } => {
                construction::a3_generator(polys, self.n, *ones_stream)
            }
            Construction::PureDc { first_row } => {
                Ok(construction::pure_double_circulant(first_row))
            }
            Construction::BorderedDc { first_row, corner } => {
                construction::bordered_double_circulant(first_row, *corner)
            }
        }
    }

    pub fn load(path: impl AsRef<Path>) -> Result<CodeSpec> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse_named(&text, &path.display().to_string())
    }

    pub fn parse(text: &str) -> Result<CodeSpec> {
        Self::parse_named(text, "<spec>")
    }

    fn parse_named(text: &str, origin: &str) -> Result<CodeSpec> {
        let mut fields = Fields::default();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let lineno = idx + 1;
            let (key, value) = line.split_once(':').ok_or_else(|| {
                Error::parse(
                    origin,
                    lineno,
                    format!("expected `key: value`, got {line:?}"),
                )
            })?;
            let (key, value) = (key.trim(), value.trim());
            let bits = |v: &str| {
                v.parse::<BitVector>()
                    .map_err(|e| Error::parse(origin, lineno, format!("{key}: {e}")))
            };
            let number = |v: &str| {
                v.parse::<usize>().map_err(|_| {
                    Error::parse(origin, lineno, format!("{key}: not a number: {v:?}"))
                })
            };
            let slot = match key {
                "name" => fields.name.replace((lineno, value.to_string())).map(|_| ()),
                "n" => fields.n.replace((lineno, number(value)?)).map(|_| ()),
                "construction" => fields
                    .construction
                    .replace((lineno, value.to_string()))
                    .map(|_| ()),
                "K" => fields.k.replace((lineno, number(value)?)).map(|_| ()),
                "g1" => fields.g1.replace((lineno, bits(value)?)).map(|_| ()),
                "g2" => fields.g2.replace((lineno, bits(value)?)).map(|_| ()),
                "ones_stream" => fields
                    .ones_stream
                    .replace((lineno, number(value)?))
                    .map(|_| ()),
                "first_row" => fields.first_row.replace((lineno, bits(value)?)).map(|_| ()),
                "corner" => fields.corner.replace((lineno, number(value)?)).map(|_| ()),
                "status" => fields
                    .status
                    .replace((lineno, value.to_string()))
                    .map(|_| ()),
                _ => return Err(Error::parse(origin, lineno, format!("unknown key {key:?}"))),
            };
            if slot.is_some() {
                return Err(Error::parse(
                    origin,
                    lineno,
                    format!("duplicate key {key:?}"),
                ));
            }
        }
        fields.build(origin)
    }

    /// Serializes back to the file format.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "name: {}", self.name);
        let _ = writeln!(s, "n: {}", self.n);
        let _ = writeln!(s, "construction: {}", self.construction.keyword());
        match &self.construction {
            Construction::TypeA0 { polys } | Construction::TypeA3 { polys, .. } => {
                let _ = writeln!(s, "K: {}", polys.constraint_length());
                let _ = writeln!(s, "g1: {}", polys.g1());
                let _ = writeln!(s, "g2: {}", polys.g2());
            }
            Construction::PureDc { first_row } => {
                let _ = writeln!(s, "first_row: {first_row}");
            }
            Construction::BorderedDc { first_row, corner } => {
                let _ = writeln!(s, "first_row: {first_row}");
                let _ = writeln!(s, "corner: {}", u8::from(*corner));
            }
        }
        if let Some(stream) = self.ones_stream() {
            let _ = writeln!(s, "ones_stream: {}", stream.index());
        }
        if self.status == Status::PendingTranscription {
            let _ = writeln!(s, "status: pending-transcription");
        }
        s
    }
}

#[derive(Default)]
struct Fields {
    name: Option<(usize, String)>,
    n: Option<(usize, usize)>,
    construction: Option<(usize, String)>,
    k: Option<(usize, usize)>,
    g1: Option<(usize, BitVector)>,
    g2: Option<(usize, BitVector)>,
    ones_stream: Option<(usize, usize)>,
    first_row: Option<(usize, BitVector)>,
    corner: Option<(usize, usize)>,
    status: Option<(usize, String)>,
}

impl Fields {
    fn build(self, origin: &str) -> Result<CodeSpec> {
        let missing = |key: &str| Error::parse(origin, 0, format!("missing key {key:?}"));
        let (_, name) = self.name.ok_or_else(|| missing("name"))?;
        let (n_line, n) = self.n.ok_or_else(|| missing("n"))?;
        let (c_line, kind) = self.construction.ok_or_else(|| missing("construction"))?;

        let status = match self.status {
            None => Status::Ready,
            Some((_, s)) if s == "ready" => Status::Ready,
            Some((_, s)) if s == "pending-transcription" => Status::PendingTranscription,
            Some((line, s)) => {
                return Err(Error::parse(origin, line, format!("unknown status {s:?}")))
            }
        };

        let polys = || -> Result<PolynomialPair> {
            let (g1_line, g1) = self.g1.clone().ok_or_else(|| missing("g1"))?;
            let (_, g2) = self.g2.clone().ok_or_else(|| missing("g2"))?;
            if let Some((k_line, k)) = self.k {
                if g1.len() != k || g2.len() != k {
                    return Err(Error::parse(
                        origin,
                        k_line,
                        format!(
                            "K = {k} but polynomials have {} and {} taps",
                            g1.len(),
                            g2.len()
                        ),
                    ));
                }
            }
            PolynomialPair::new(g1, g2).map_err(|e| Error::parse(origin, g1_line, e.to_string()))
        };
        let first_row = || {
            self.first_row
                .clone()
                .map(|(_, r)| r)
                .ok_or_else(|| missing("first_row"))
        };

        let construction = match kind.as_str() {
            "type_a0" => Construction::TypeA0 { polys: polys()? },
            "type_a3" => {
                let (line, s) = self.ones_stream.ok_or_else(|| missing("ones_stream"))?;
                let stream = u8::try_from(s)
                    .map_err(|_| Error::param("stream out of range"))
                    .and_then(Stream::from_index)
                    .map_err(|e| Error::parse(origin, line, e.to_string()))?;
                Construction::TypeA3 {
                    polys: polys()?,
                    ones_stream: stream,
                }
            }
            "pure_dc" => Construction::PureDc {
                first_row: first_row()?,
            },
            "bordered_dc" => {
                let corner = match self.corner {
                    None | Some((_, 0)) => false,
                    Some((_, 1)) => true,
                    Some((line, v)) => {
                        return Err(Error::parse(
                            origin,
                            line,
                            format!("corner must be 0 or 1, got {v}"),
                        ))
                    }
                };
                Construction::BorderedDc {
                    first_row: first_row()?,
                    corner,
                }
            }
            other => {
                return Err(Error::parse(
                    origin,
                    c_line,
                    format!("unknown construction {other:?}"),
                ))
            }
        };

        let spec = CodeSpec {
            name,
            n,
            construction,
            status,
        };
        spec.validate()
            .map_err(|e| Error::parse(origin, n_line, e.to_string()))?;
        Ok(spec)
    }
}
