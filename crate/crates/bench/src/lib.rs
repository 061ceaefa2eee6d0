//! Fixtures shared by the benchmarks.

use std::path::PathBuf;

use fakeherm_core::ingest::load_database;
use fakeherm_core::{Database, FieldPair};

pub fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data")
}

pub fn database() -> Database {
    load_database(&data_dir()).expect("bundled data loads")
}

pub fn pair<'a>(db: &'a Database, label: &str) -> &'a FieldPair {
    db.pairs.iter().find(|p| p.label == label).expect("pair in bundled data")
}
