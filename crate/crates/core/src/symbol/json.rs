//! JSON form `{ "s": .., "coeffs": [ { "j": [j1, j2], "block": [[..]] } ] }`.
//!
//! Entries are strings: `"a/b"` for exact blocks, shortest round-trip decimals
//! otherwise. Plain JSON numbers are accepted on input.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{format_rational, parse_rational, RatMatrix};

use super::{Index2, MatrixSymbol};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SymbolJson {
    pub s: usize,
    pub coeffs: Vec<CoeffJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CoeffJson {
    pub j: Index2,
    pub block: Vec<Vec<Entry>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Entry {
    Text(String),
    Number(f64),
}

impl MatrixSymbol {
    pub fn to_json(&self) -> SymbolJson {
        let s = self.s();
        let coeffs = self
            .coefficients()
            .map(|(j, b)| {
                let block = match &b.exact {
                    Some(m) => (0..s)
                        .map(|r| (0..s).map(|c| Entry::Text(format_rational(m.get(r, c)))).collect())
                        .collect(),
                    None => (0..s)
                        .map(|r| (0..s).map(|c| Entry::Text(format!("{:?}", b.values[r * s + c]))).collect())
                        .collect(),
                };
                CoeffJson { j, block }
            })
            .collect();
        SymbolJson { s, coeffs }
    }

    /// Blocks whose entries all parse as rationals are kept exact.
    pub fn from_json(doc: &SymbolJson) -> Result<Self> {
        let s = doc.s;
        if s == 0 {
            return Err(Error::InvalidArgument("block size s must be positive".into()));
        }
        let mut exact = Vec::new();
        let mut float = Vec::new();
        for c in &doc.coeffs {
            if c.block.len() != s || c.block.iter().any(|r| r.len() != s) {
                return Err(Error::DimensionMismatch { expected: s, actual: c.block.len() });
            }
            let rats: Option<Vec<Vec<_>>> = c
                .block
                .iter()
                .map(|r| {
                    r.iter()
                        .map(|e| match e {
                            Entry::Text(t) => parse_rational(t).ok(),
                            Entry::Number(_) => None,
                        })
                        .collect()
                })
                .collect();
            match rats {
                Some(rows) => exact.push((c.j, RatMatrix::from_rows(rows)?)),
                None => {
                    let mut vals = Vec::with_capacity(s * s);
                    for e in c.block.iter().flatten() {
                        vals.push(match e {
                            Entry::Number(v) => *v,
                            Entry::Text(t) => t
                                .trim()
                                .parse::<f64>()
                                .map_err(|_| Error::Parse(format!("bad matrix entry {t:?}")))?,
                        });
                    }
                    float.push((c.j, vals));
                }
            }
        }
        if float.is_empty() {
            MatrixSymbol::from_exact(s, exact)
        } else {
            float.extend(exact.into_iter().map(|(j, m)| (j, m.to_f64_vec())));
            MatrixSymbol::from_f64(s, float)
        }
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("symbol serializes")
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        let doc: SymbolJson = serde_json::from_str(text)?;
        Self::from_json(&doc)
    }

    pub fn read_json(path: &Path) -> Result<Self> {
        Self::from_json_str(&std::fs::read_to_string(path)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbol::builtin_dg_symbol;

    #[test]
    fn builtin_roundtrips_exactly() {
        let sym = builtin_dg_symbol(2).unwrap();
        let back = MatrixSymbol::from_json_str(&sym.to_json_string()).unwrap();
        assert!(back.is_exact());
        assert_eq!(back, sym);
        assert_eq!(back.content_hash(), sym.content_hash());
    }

    #[test]
    fn numbers_and_decimals_are_accepted() {
        let text = r#"{"s":1,"coeffs":[{"j":[0,0],"block":[[2.5]]},
            {"j":[1,0],"block":[["-0.25"]]},{"j":[-1,0],"block":[[-0.25]]}]}"#;
        let sym = MatrixSymbol::from_json_str(text).unwrap();
        assert!(!sym.is_exact());
        assert!((sym.eval([0.0, 0.0])[(0, 0)].re - 2.0).abs() < 1e-15);
    }

    #[test]
    fn ragged_block_is_rejected() {
        let text = r#"{"s":2,"coeffs":[{"j":[0,0],"block":[["1","0"],["0"]]}]}"#;
        assert!(MatrixSymbol::from_json_str(text).is_err());
    }
}
