//! JSON spec documents.
//!
//! ```json
//! {
//!   "name": "so3",
//!   "n": 1, "m": 3,
//!   "coords": ["o"],
//!   "anchor": [["0", "0", "0"]],
//!   "structure": [{"i": 1, "j": 2, "k": 3, "expr": "1"}]
//! }
//! ```
//!
//! Indices in `structure` are 1-based with `i < j`; the `j > i` entries follow by
//! antisymmetry and omitted entries are zero.

use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::{AlgebroidSpec, SpecError};
use crate::expr::{parse, Expr};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StructureEntry {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub expr: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecDocument {
    #[serde(default)]
    pub name: String,
    pub n: usize,
    pub m: usize,
    pub coords: Vec<String>,
    pub anchor: Vec<Vec<String>>,
    #[serde(default)]
    pub structure: Vec<StructureEntry>,
}

impl AlgebroidSpec {
    pub fn to_document(&self) -> SpecDocument {
        let (n, m) = (self.n(), self.m());
        let anchor = (0..n)
            .map(|a| {
                (0..m)
                    .map(|i| self.anchor(a, i).to_string_with(&self.coords))
                    .collect()
            })
            .collect();
        let mut structure = Vec::new();
        for i in 0..m {
            for j in i + 1..m {
                for k in 0..m {
                    let c = self.structure(k, i, j);
                    if !c.is_zero() {
                        structure.push(StructureEntry {
                            i: i + 1,
                            j: j + 1,
                            k: k + 1,
                            expr: c.to_string_with(&self.coords),
                        });
                    }
                }
            }
        }
        SpecDocument {
            name: self.name.clone(),
            n,
            m,
            coords: self.coords.clone(),
            anchor,
            structure,
        }
    }

    pub fn from_document(doc: &SpecDocument) -> Result<Self, SpecError> {
        let (n, m) = (doc.n, doc.m);
        if doc.coords.len() != n {
            return Err(SpecError::Malformed(format!(
                "`coords` has {} names but n = {n}",
                doc.coords.len()
            )));
        }
        if doc.anchor.len() != n {
            return Err(SpecError::Malformed(format!(
                "`anchor` has {} rows but n = {n}",
                doc.anchor.len()
            )));
        }
        let mut anchor = Vec::with_capacity(n);
        for (a, row) in doc.anchor.iter().enumerate() {
            if row.len() != m {
                return Err(SpecError::Malformed(format!(
                    "`anchor[{a}]` has {} entries but m = {m}",
                    row.len()
                )));
            }
            let parsed = row
                .iter()
                .enumerate()
                .map(|(i, s)| {
                    parse(s, &doc.coords).map_err(|source| SpecError::Expression {
                        location: format!("anchor[{a}][{i}]"),
                        source,
                    })
                })
                .collect::<Result<Vec<_>, _>>()?;
            anchor.push(parsed);
        }
        let mut structure = vec![Expr::zero(); m * m * m];
        let mut seen = std::collections::HashSet::new();
        for (idx, e) in doc.structure.iter().enumerate() {
            let in_range = |v: usize| (1..=m).contains(&v);
            if !(in_range(e.i) && in_range(e.j) && in_range(e.k)) {
                return Err(SpecError::Malformed(format!(
                    "structure[{idx}]: indices must lie in 1..={m}"
                )));
            }
            if e.i >= e.j {
                return Err(SpecError::Malformed(format!(
                    "structure[{idx}]: requires i < j"
                )));
            }
            if !seen.insert((e.i, e.j, e.k)) {
                return Err(SpecError::Malformed(format!(
                    "structure[{idx}]: duplicate entry ({}, {}, {})",
                    e.i, e.j, e.k
                )));
            }
            let c = parse(&e.expr, &doc.coords).map_err(|source| SpecError::Expression {
                location: format!("structure[{idx}]"),
                source,
            })?;
            let (i, j, k) = (e.i - 1, e.j - 1, e.k - 1);
            structure[(k * m + j) * m + i] = c.neg();
            structure[(k * m + i) * m + j] = c;
        }
        AlgebroidSpec::from_parts(doc.name.clone(), doc.coords.clone(), m, anchor, structure)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_document()).expect("serializable");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self, SpecError> {
        let doc: SpecDocument = serde_json::from_str(text)?;
        Self::from_document(&doc)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, SpecError> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<(), SpecError> {
        std::fs::write(path, self.to_json())?;
        Ok(())
    }

    /// First 16 hex digits of the SHA-256 of the canonical JSON form.
    pub fn content_hash(&self) -> String {
        let digest = Sha256::digest(self.to_json().as_bytes());
        digest.iter().take(8).map(|b| format!("{b:02x}")).collect()
    }
}
