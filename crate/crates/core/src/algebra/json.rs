//! The algebra JSON format:
//!
//! ```json
//! {"name": "L2", "size": 2,
//!  "operations": [{"symbol": "and", "arity": 2, "table": [0, 0, 0, 1]}]}
//! ```
//!
//! Tables are row-major with the leftmost argument varying slowest.

use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{checked_pow, FiniteAlgebra, Signature};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OperationFile {
    pub symbol: String,
    pub arity: usize,
    pub table: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraFile {
    pub name: String,
    pub size: usize,
    pub operations: Vec<OperationFile>,
}

impl AlgebraFile {
    /// Validates every invariant, naming the first offending position.
    pub fn to_algebra(&self) -> Result<FiniteAlgebra> {
        if self.size == 0 {
            return Err(Error::InvalidAlgebra("size: must be positive".into()));
        }
        for (i, op) in self.operations.iter().enumerate() {
            if op.symbol.is_empty() {
                return Err(Error::InvalidAlgebra(format!("operations[{i}].symbol: empty")));
            }
            if let Some(j) = self.operations[..i].iter().position(|o| o.symbol == op.symbol) {
                return Err(Error::InvalidAlgebra(format!(
                    "operations[{i}].symbol: `{}` already declared at operations[{j}]",
                    op.symbol
                )));
            }
            let expected = checked_pow(self.size, op.arity);
            if op.table.len() as u128 != expected {
                return Err(Error::InvalidAlgebra(format!(
                    "operations[{i}].table: length {} but size^arity = {expected}",
                    op.table.len()
                )));
            }
            if let Some(pos) = op.table.iter().position(|&v| v >= self.size) {
                return Err(Error::InvalidAlgebra(format!(
                    "operations[{i}].table[{pos}]: value {} is outside 0..{}",
                    op.table[pos], self.size
                )));
            }
        }
        let sig = Signature::new(self.operations.iter().map(|o| (o.symbol.clone(), o.arity)))?;
        FiniteAlgebra::new(
            self.name.clone(),
            self.size,
            sig,
            self.operations.iter().map(|o| o.table.clone()).collect(),
        )
    }

    pub fn from_algebra(a: &FiniteAlgebra) -> Self {
        AlgebraFile {
            name: a.name().to_string(),
            size: a.size(),
            operations: a
                .signature()
                .symbols()
                .iter()
                .enumerate()
                .map(|(op, (symbol, arity))| OperationFile {
                    symbol: symbol.clone(),
                    arity: *arity,
                    table: a.table(op).to_vec(),
                })
                .collect(),
        }
    }
}

pub fn from_json_str(text: &str) -> Result<FiniteAlgebra> {
    let file: AlgebraFile = serde_json::from_str(text)?;
    file.to_algebra()
}

pub fn to_json_string(a: &FiniteAlgebra) -> String {
    serde_json::to_string_pretty(&AlgebraFile::from_algebra(a)).expect("algebra serializes")
}

pub fn load(path: impl AsRef<Path>) -> Result<FiniteAlgebra> {
    let text = std::fs::read_to_string(path.as_ref())?;
    from_json_str(&text)
}
