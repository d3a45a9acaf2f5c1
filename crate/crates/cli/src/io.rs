//! File loading and writing with input errors mapped to exit code 2.

use std::path::Path;

use dqra::{
    validate_algebra, validate_context, AlgebraRecord, BinRel, ContextRecord, FiniteAlgebra, RelationRecord, RepContext,
};
use serde::de::DeserializeOwned;

use crate::Failure;

pub fn load_json<T: DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

pub fn load_algebra(path: &Path) -> Result<FiniteAlgebra, Failure> {
    let record: AlgebraRecord = load_json(path)?;
    validate_algebra(&record).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

pub fn load_context(path: &Path) -> Result<RepContext, Failure> {
    let record: ContextRecord = load_json(path)?;
    validate_context(&record).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

pub fn load_relations(path: &Path) -> Result<Vec<BinRel>, Failure> {
    let records: Vec<RelationRecord> = load_json(path)?;
    records.iter().map(|r| r.to_relation().map_err(|e| Failure::Input(format!("{}: {e}", path.display())))).collect()
}

pub fn write_text(path: &Path, text: &str) -> Result<(), Failure> {
    let mut text = text.to_owned();
    if !text.ends_with('\n') {
        text.push('\n');
    }
    std::fs::write(path, text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}
