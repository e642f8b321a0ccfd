//! Parameterised weight enumerator forms and exact integer fitting.
//!
//! A template term states `A_w = c_w + Σ_p m_{w,p}·param_p`. Fitting solves
//! the first `|params|` terms exactly over the rationals, requires integer
//! parameters, then checks every remaining term.

use std::fmt::Write as _;
use std::path::Path;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use super::WeightDistribution;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TemplateTerm {
    pub weight: usize,
    pub constant: i64,
    pub coeffs: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumeratorTemplate {
    pub name: String,
    pub params: Vec<String>,
    pub terms: Vec<TemplateTerm>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Residual {
    pub weight: usize,
    pub expected: i128,
    pub observed: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TemplateFit {
    pub params: Vec<(String, i64)>,
    pub consistent: bool,
    pub residual_terms: Vec<Residual>,
}

impl TemplateFit {
    pub fn param(&self, name: &str) -> Option<i64> {
        self.params.iter().find(|(p, _)| p == name).map(|&(_, v)| v)
    }

    pub fn report(&self) -> String {
        let mut s = String::new();
        for (p, v) in &self.params {
            let _ = writeln!(s, "{p}: {v}");
        }
        let _ = writeln!(s, "consistent: {}", self.consistent);
        for r in &self.residual_terms {
            let _ = writeln!(
                s,
                "residual: w={} expected={} observed={}",
                r.weight, r.expected, r.observed
            );
        }
        s
    }
}

impl EnumeratorTemplate {
    pub fn new(
        name: impl Into<String>,
        params: Vec<String>,
        terms: Vec<TemplateTerm>,
    ) -> Result<Self> {
        if terms.len() < params.len() {
            return Err(Error::param(format!(
                "template has {} terms for {} parameters",
                terms.len(),
                params.len()
            )));
        }
        if let Some(t) = terms.iter().find(|t| t.coeffs.len() != params.len()) {
            return Err(Error::param(format!(
                "term for weight {} has {} coefficients, expected {}",
                t.weight,
                t.coeffs.len(),
                params.len()
            )));
        }
        Ok(EnumeratorTemplate {
            name: name.into(),
            params,
            terms,
        })
    }

    /// `A_w` predicted for the given parameter values.
    pub fn expand(&self, values: &[i64]) -> Vec<(usize, i128)> {
        self.terms
            .iter()
            .map(|t| {
                let v = t.constant as i128
                    + t.coeffs
                        .iter()
                        .zip(values)
                        .map(|(&m, &p)| m as i128 * p as i128)
                        .sum::<i128>();
                (t.weight, v)
            })
            .collect()
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let name = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default();
        Self::parse(&name, &text)
    }

    /// Template file: `#` comments, a `params:` line, then
    /// `w<TAB>c_w<TAB>m_1[,m_2…]` lines.
    pub fn parse(name: &str, text: &str) -> Result<Self> {
        let mut params: Option<Vec<String>> = None;
        let mut terms = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let lineno = idx + 1;
            if let Some(p) = line.strip_prefix("params:") {
                params = Some(
                    p.split(',')
                        .map(|s| s.trim().to_string())
                        .filter(|s| !s.is_empty())
                        .collect(),
                );
                continue;
            }
            let bad = |what: &str| Error::parse(name, lineno, format!("{what} in {line:?}"));
            let mut fields = line.split('\t');
            let weight = fields
                .next()
                .and_then(|f| f.trim().parse::<usize>().ok())
                .ok_or_else(|| bad("bad weight"))?;
            let constant = fields
                .next()
                .and_then(|f| f.trim().parse::<i64>().ok())
                .ok_or_else(|| bad("bad constant"))?;
            let coeffs = fields
                .next()
                .ok_or_else(|| bad("missing coefficients"))?
                .split(',')
                .map(|c| c.trim().parse::<i64>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|_| bad("bad coefficient"))?;
            terms.push(TemplateTerm {
                weight,
                constant,
                coeffs,
            });
        }
        let params = params.ok_or_else(|| Error::parse(name, 0, "missing `params:` line"))?;
        Self::new(name, params, terms)
    }

    pub fn to_file_text(&self) -> String {
        let mut s = format!("params: {}\n", self.params.join(","));
        for t in &self.terms {
            let coeffs: Vec<String> = t.coeffs.iter().map(|c| c.to_string()).collect();
            let _ = writeln!(s, "{}\t{}\t{}", t.weight, t.constant, coeffs.join(","));
        }
        s
    }
}

/// Solves the leading terms for the parameters and checks the rest.
pub fn fit_template(dist: &WeightDistribution, tpl: &EnumeratorTemplate) -> Result<TemplateFit> {
    if let Some(t) = tpl.terms.iter().find(|t| t.weight > dist.n()) {
        return Err(Error::param(format!(
            "template {} needs weight {} but the distribution has length {}",
            tpl.name,
            t.weight,
            dist.n()
        )));
    }
    let p = tpl.params.len();
    let exact = solve(&tpl.terms[..p], dist)
        .ok_or_else(|| Error::param(format!("template {} is underdetermined", tpl.name)))?;
    let integral = exact.iter().all(|v| v.is_integer());
    let values: Vec<i64> = exact
        .iter()
        .map(|v| v.round().to_integer().to_i64().unwrap_or(i64::MAX))
        .collect();

    let residual_terms: Vec<Residual> = tpl
        .expand(&values)
        .into_iter()
        .filter_map(|(w, expected)| {
            let observed = dist.count(w);
            (expected != observed as i128).then_some(Residual {
                weight: w,
                expected,
                observed,
            })
        })
        .collect();
    debug_assert!(integral || !residual_terms.is_empty());

    Ok(TemplateFit {
        params: tpl.params.iter().cloned().zip(values).collect(),
        consistent: residual_terms.is_empty(),
        residual_terms,
    })
}

/// Gauss-Jordan over the rationals; `None` when singular.
fn solve(terms: &[TemplateTerm], dist: &WeightDistribution) -> Option<Vec<BigRational>> {
    let p = terms.len();
    let big = |x: i64| BigRational::from_integer(BigInt::from(x));
    let mut m: Vec<Vec<BigRational>> = terms
        .iter()
        .map(|t| {
            let mut row: Vec<BigRational> = t.coeffs.iter().map(|&c| big(c)).collect();
            let rhs = BigInt::from(dist.count(t.weight)) - BigInt::from(t.constant);
            row.push(BigRational::from_integer(rhs));
            row
        })
        .collect();
    for col in 0..p {
        let pivot = (col..p).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, pivot);
        let inv = m[col][col].recip();
        for v in m[col].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = m[col].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != col && !row[col].is_zero() {
                let f = row[col].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row).skip(col) {
                    *x -= &f * y;
                }
            }
        }
    }
    Some(m.into_iter().map(|row| row[p].clone()).collect())
}
