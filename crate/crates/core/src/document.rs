//! JSON algebra documents: graded structure constants with exact rational
//! strings.
//!
//! ```json
//! {
//!   "format_version": "1",
//!   "sdim": [1, 1],
//!   "names": ["z", "w"],
//!   "brackets": [{ "left": "w", "right": "w", "value": { "z": "1" } }]
//! }
//! ```

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{AlgebraError, LieSuperalgebra, StructureBuilder, SuperDim};
use crate::linalg::{zero_vector, Scalar};

pub const FORMAT_VERSION: &str = "1";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DocumentError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unsupported format_version `{0}` (expected `{FORMAT_VERSION}`)")]
    Version(String),
    #[error("unknown basis names: {}", .0.join(", "))]
    UnknownNames(Vec<String>),
    #[error("basis index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("`{0}` is not an exact rational (expected \"p/q\" or an integer)")]
    Rational(String),
    #[error("{0}")]
    Structure(#[from] AlgebraError),
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
}

/// A basis element given by name or by 0-based index.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum BasisRef {
    Index(usize),
    Name(String),
}

impl fmt::Display for BasisRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisRef::Index(i) => write!(f, "{i}"),
            BasisRef::Name(s) => f.write_str(s),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketEntry {
    pub left: BasisRef,
    pub right: BasisRef,
    /// Output coordinates keyed by basis name or index.
    pub value: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraDocument {
    pub format_version: String,
    pub sdim: [usize; 2],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub names: Option<Vec<String>>,
    #[serde(default)]
    pub brackets: Vec<BracketEntry>,
}

/// Parses `"p/q"` or `"p"` exactly; rejects decimals and zero denominators.
pub fn parse_rational(text: &str) -> Result<Scalar, DocumentError> {
    let t = text.trim();
    let ok = !t.is_empty()
        && t.split('/').count() <= 2
        && t.split('/').all(|part| {
            let digits = part.strip_prefix(['-', '+']).unwrap_or(part);
            !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
        });
    if !ok {
        return Err(DocumentError::Rational(text.to_string()));
    }
    if let Some((_, den)) = t.split_once('/') {
        if den
            .trim_start_matches(['-', '+'])
            .bytes()
            .all(|b| b == b'0')
        {
            return Err(DocumentError::Rational(text.to_string()));
        }
    }
    Scalar::from_str(t.trim_start_matches('+'))
        .map_err(|_| DocumentError::Rational(text.to_string()))
}

pub fn format_rational(x: &Scalar) -> String {
    x.to_string()
}

impl AlgebraDocument {
    pub fn from_json(text: &str) -> Result<Self, DocumentError> {
        serde_json::from_str(text).map_err(|e| DocumentError::Syntax {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    }

    pub fn read(path: &std::path::Path) -> Result<Self, DocumentError> {
        let text = std::fs::read_to_string(path).map_err(|e| DocumentError::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
        Self::from_json(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serializes")
    }

    /// Lists each nonzero bracket once, with `i <= j`.
    pub fn from_algebra(l: &LieSuperalgebra) -> Self {
        let n = l.dim();
        let mut brackets = Vec::new();
        for i in 0..n {
            for j in i..n {
                let v = l.basis_bracket(i, j);
                let value: BTreeMap<String, String> = v
                    .iter()
                    .enumerate()
                    .filter(|(_, x)| !x.is_zero())
                    .map(|(k, x)| (l.name(k).to_string(), format_rational(x)))
                    .collect();
                if !value.is_empty() {
                    brackets.push(BracketEntry {
                        left: BasisRef::Name(l.name(i).to_string()),
                        right: BasisRef::Name(l.name(j).to_string()),
                        value,
                    });
                }
            }
        }
        Self {
            format_version: FORMAT_VERSION.to_string(),
            sdim: [l.sdim().even, l.sdim().odd],
            names: Some(l.names().to_vec()),
            brackets,
        }
    }

    /// Builds the algebra, completing skew partners. Does not check the
    /// Lie superalgebra axioms; see [`LieSuperalgebra::validate`].
    pub fn to_algebra(&self) -> Result<LieSuperalgebra, DocumentError> {
        if self.format_version != FORMAT_VERSION {
            return Err(DocumentError::Version(self.format_version.clone()));
        }
        let sdim = SuperDim::new(self.sdim[0], self.sdim[1]);
        let n = sdim.total();
        let mut builder = StructureBuilder::new(sdim);
        if let Some(names) = &self.names {
            builder = builder.names(names.clone());
        }
        let names: Vec<String> = match &self.names {
            Some(names) => names.clone(),
            None => StructureBuilder::new(sdim).build()?.names().to_vec(),
        };
        if names.len() != n {
            return Err(AlgebraError::NameCount {
                expected: n,
                found: names.len(),
            }
            .into());
        }

        let mut unknown = Vec::new();
        let mut resolve = |key: &str| -> Option<usize> {
            if let Some(i) = names.iter().position(|s| s == key) {
                return Some(i);
            }
            match key.parse::<usize>() {
                Ok(i) if i < n => Some(i),
                _ => {
                    if !unknown.iter().any(|u| u == key) {
                        unknown.push(key.to_string());
                    }
                    None
                }
            }
        };
        let mut resolved = Vec::new();
        for entry in &self.brackets {
            let refs = [&entry.left, &entry.right].map(|r| match r {
                BasisRef::Index(i) if *i < n => Ok(Some(*i)),
                BasisRef::Index(i) => Err(DocumentError::IndexOutOfRange { index: *i, dim: n }),
                BasisRef::Name(s) => Ok(resolve(s)),
            });
            let [left, right] = refs;
            let (left, right) = (left?, right?);
            let mut value = zero_vector(n);
            for (key, text) in &entry.value {
                let x = parse_rational(text)?;
                if let Some(k) = resolve(key) {
                    value[k] += x;
                }
            }
            resolved.push((left, right, value));
        }
        if !unknown.is_empty() {
            return Err(DocumentError::UnknownNames(unknown));
        }
        for (left, right, value) in resolved {
            let (i, j) = (left.expect("resolved"), right.expect("resolved"));
            builder.set(i, j, value)?;
        }
        Ok(builder.build()?)
    }
}

pub fn parse_algebra(text: &str) -> Result<LieSuperalgebra, DocumentError> {
    AlgebraDocument::from_json(text)?.to_algebra()
}
