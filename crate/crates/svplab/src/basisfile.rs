//! Bracketed integer-matrix files with `# key value` headers.
//!
//! The matrix is written one row per line, each row wrapped in `[ ... ]` and
//! the whole matrix wrapped in `[ ... ]`, the convention common lattice
//! tools read. Headers carry the scale of the written matrix and, for
//! decision instances, the norm index and thresholds *of the matrix as
//! written*: a reader that wants the unscaled lattice divides rows by
//! `scale` and `delta_pow` by `scale^p`.

use crate::exactmath::{rational_pow, NormIndex};
use crate::reduce::{GapSvpInstance, LatticeBasis, ReduceError};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BasisFileError {
    #[error("line {line}: malformed header `{got}`")]
    BadHeader { line: usize, got: String },
    #[error("malformed integer `{0}`")]
    BadInteger(String),
    #[error("malformed rational `{0}` (expected num/den)")]
    BadRational(String),
    #[error("unbalanced brackets in matrix body")]
    UnbalancedBrackets,
    #[error("matrix rows have inconsistent lengths")]
    RaggedRows,
    #[error("file contains no matrix rows")]
    EmptyMatrix,
    #[error("missing `# {0}` header needed for a decision instance")]
    MissingHeader(&'static str),
    #[error(transparent)]
    Invalid(#[from] ReduceError),
}

/// Parsed contents of a basis file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisFile {
    pub rows: Vec<Vec<BigInt>>,
    pub scale: BigInt,
    pub p: Option<NormIndex>,
    /// δ^p of the matrix as written (already scaled).
    pub delta_pow: Option<BigRational>,
    pub gamma: Option<BigRational>,
}

impl BasisFile {
    pub fn basis(&self) -> LatticeBasis {
        LatticeBasis::from_scaled_rows(self.rows.clone(), self.scale.clone())
    }

    /// Reassembles a decision instance; requires the p, delta_pow, and gamma
    /// headers. The stored threshold refers to the written matrix, so it is
    /// divided back by scale^p.
    pub fn to_gap_instance(&self) -> Result<GapSvpInstance, BasisFileError> {
        let p = self.p.ok_or(BasisFileError::MissingHeader("p"))?;
        let delta_scaled = self
            .delta_pow
            .clone()
            .ok_or(BasisFileError::MissingHeader("delta_pow"))?;
        let gamma = self
            .gamma
            .clone()
            .ok_or(BasisFileError::MissingHeader("gamma"))?;
        let scale_pow = rational_pow(&BigRational::from_integer(self.scale.clone()), p.get());
        let delta_pow = delta_scaled / scale_pow;
        Ok(GapSvpInstance::new(self.basis(), p, delta_pow, gamma)?)
    }
}

/// Renders a decision instance with full headers. Extra provenance lines are
/// emitted first, each prefixed with `# `.
pub fn write_gap_instance(g: &GapSvpInstance, provenance: &[String]) -> String {
    let scale_pow = rational_pow(
        &BigRational::from_integer(g.basis.scale().clone()),
        g.p.get(),
    );
    let delta_scaled = &g.delta_pow * scale_pow;
    let mut out = String::new();
    for line in provenance {
        out.push_str(&format!("# {line}\n"));
    }
    out.push_str(&format!("# scale {}\n", g.basis.scale()));
    out.push_str(&format!("# p {}\n", g.p));
    out.push_str(&format!(
        "# delta_pow {}/{}\n",
        delta_scaled.numer(),
        delta_scaled.denom()
    ));
    out.push_str(&format!(
        "# gamma {}/{}\n",
        g.gamma.numer(),
        g.gamma.denom()
    ));
    out.push_str(&render_matrix(g.basis.scaled_rows()));
    out
}

/// Renders a bare basis (scale header only).
pub fn write_basis(basis: &LatticeBasis, provenance: &[String]) -> String {
    let mut out = String::new();
    for line in provenance {
        out.push_str(&format!("# {line}\n"));
    }
    out.push_str(&format!("# scale {}\n", basis.scale()));
    out.push_str(&render_matrix(basis.scaled_rows()));
    out
}

fn render_matrix(rows: &[Vec<BigInt>]) -> String {
    let mut out = String::new();
    for (i, row) in rows.iter().enumerate() {
        let rendered: Vec<String> = row.iter().map(|v| v.to_string()).collect();
        let prefix = if i == 0 { "[[" } else { "[" };
        let suffix = if i + 1 == rows.len() { "]]" } else { "]" };
        out.push_str(&format!("{prefix}{}{suffix}\n", rendered.join(" ")));
    }
    out
}

/// Parses a basis file: headers first (any `#` line; known keys extracted,
/// the rest treated as provenance comments), then the bracketed matrix.
pub fn parse(text: &str) -> Result<BasisFile, BasisFileError> {
    let mut scale = BigInt::one();
    let mut p = None;
    let mut delta_pow = None;
    let mut gamma = None;
    let mut body = String::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(comment) = line.strip_prefix('#') {
            let mut tokens = comment.split_whitespace();
            match tokens.next() {
                Some("scale") => {
                    let token = tokens.next().ok_or(BasisFileError::BadHeader {
                        line: idx + 1,
                        got: line.to_string(),
                    })?;
                    scale = parse_int(token)?;
                    if scale < BigInt::one() {
                        return Err(BasisFileError::BadHeader {
                            line: idx + 1,
                            got: line.to_string(),
                        });
                    }
                }
                Some("p") => {
                    let token = tokens.next().ok_or(BasisFileError::BadHeader {
                        line: idx + 1,
                        got: line.to_string(),
                    })?;
                    let value: u32 = token
                        .parse()
                        .map_err(|_| BasisFileError::BadInteger(token.to_string()))?;
                    p = Some(NormIndex::new(value).map_err(ReduceError::Math)?);
                }
                Some("delta_pow") => {
                    let token = tokens.next().ok_or(BasisFileError::BadHeader {
                        line: idx + 1,
                        got: line.to_string(),
                    })?;
                    delta_pow = Some(parse_rational(token)?);
                }
                Some("gamma") => {
                    let token = tokens.next().ok_or(BasisFileError::BadHeader {
                        line: idx + 1,
                        got: line.to_string(),
                    })?;
                    gamma = Some(parse_rational(token)?);
                }
                _ => {} // provenance comment
            }
            continue;
        }
        body.push_str(line);
        body.push(' ');
    }

    let rows = parse_matrix(&body)?;
    Ok(BasisFile {
        rows,
        scale,
        p,
        delta_pow,
        gamma,
    })
}

fn parse_matrix(body: &str) -> Result<Vec<Vec<BigInt>>, BasisFileError> {
    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    let mut current: Option<Vec<BigInt>> = None;
    let mut outer_open = false;
    let mut outer_closed = false;
    let mut tokens = body
        .replace('[', " [ ")
        .replace(']', " ] ")
        .split_whitespace()
        .map(str::to_string)
        .collect::<Vec<_>>()
        .into_iter()
        .peekable();

    while let Some(token) = tokens.next() {
        match token.as_str() {
            "[" => {
                if !outer_open {
                    outer_open = true;
                } else if current.is_none() {
                    current = Some(Vec::new());
                } else {
                    return Err(BasisFileError::UnbalancedBrackets);
                }
            }
            "]" => {
                if let Some(row) = current.take() {
                    rows.push(row);
                } else if outer_open && !outer_closed {
                    outer_closed = true;
                    if tokens.peek().is_some() {
                        return Err(BasisFileError::UnbalancedBrackets);
                    }
                } else {
                    return Err(BasisFileError::UnbalancedBrackets);
                }
            }
            value => {
                let row = current.as_mut().ok_or(BasisFileError::UnbalancedBrackets)?;
                row.push(parse_int(value)?);
            }
        }
    }
    if !outer_open || !outer_closed || current.is_some() {
        return Err(BasisFileError::UnbalancedBrackets);
    }
    if rows.is_empty() {
        return Err(BasisFileError::EmptyMatrix);
    }
    let width = rows[0].len();
    if width == 0 || rows.iter().any(|r| r.len() != width) {
        return Err(BasisFileError::RaggedRows);
    }
    Ok(rows)
}

fn parse_int(token: &str) -> Result<BigInt, BasisFileError> {
    BigInt::from_str(token).map_err(|_| BasisFileError::BadInteger(token.to_string()))
}

fn parse_rational(token: &str) -> Result<BigRational, BasisFileError> {
    let (num, den) = match token.split_once('/') {
        Some((num, den)) => (num, den),
        None => (token, "1"),
    };
    let num = BigInt::from_str(num).map_err(|_| BasisFileError::BadRational(token.to_string()))?;
    let den = BigInt::from_str(den).map_err(|_| BasisFileError::BadRational(token.to_string()))?;
    if den == BigInt::from(0) {
        return Err(BasisFileError::BadRational(token.to_string()));
    }
    Ok(BigRational::new(num, den))
}
