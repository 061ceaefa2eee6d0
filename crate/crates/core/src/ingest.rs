//! Versioned TSV snapshots: field tables, the Martinet table, regulator
//! floors and golden tables.
//!
//! ```text
//! # snapshot: fields
//! # version: 2026-10-17
//! # provenance: free text, may repeat
//! # columns: label<TAB>d<TAB>...
//! # records: 2556
//! # sha256: <hex digest of the body, each record line terminated by \n>
//! <record lines>
//! ```

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::bounds::{DlRule, MartinetTable, RegulatorEntry};
use crate::classify::Database;
use crate::error::IngestError;
use crate::fields::{BaseField, Defining, ExtensionField, FieldPair, Galois, SplittingType};
use crate::rational::{parse_rational, ExactRational};

/// Column layout of field tables.
pub const FIELD_COLUMNS: [&str; 10] =
    ["label", "d", "D_k", "D_l", "divisors", "R_l", "w_l", "poly", "overrides", "galois"];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SnapshotKind {
    Fields,
    Martinet,
    Regulators,
    Golden,
}

impl SnapshotKind {
    pub fn as_str(self) -> &'static str {
        match self {
            SnapshotKind::Fields => "fields",
            SnapshotKind::Martinet => "martinet",
            SnapshotKind::Regulators => "regulators",
            SnapshotKind::Golden => "golden",
        }
    }
}

impl fmt::Display for SnapshotKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SnapshotKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "fields" => Ok(SnapshotKind::Fields),
            "martinet" => Ok(SnapshotKind::Martinet),
            "regulators" => Ok(SnapshotKind::Regulators),
            "golden" => Ok(SnapshotKind::Golden),
            _ => Err(format!("unknown snapshot kind `{s}`")),
        }
    }
}

/// One data line, with its 1-based line number in the source.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Record {
    pub line: usize,
    pub cells: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Snapshot {
    pub kind: SnapshotKind,
    pub version: String,
    pub provenance: Vec<String>,
    pub columns: Vec<String>,
    pub records: Vec<Record>,
}

/// Hex SHA-256 of the record lines, each terminated by a newline.
pub fn body_digest<'a>(lines: impl IntoIterator<Item = &'a str>) -> String {
    let mut h = Sha256::new();
    for l in lines {
        h.update(l.as_bytes());
        h.update(b"\n");
    }
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

/// Parses and validates a snapshot of the expected kind.
pub fn parse_snapshot(text: &str, kind: SnapshotKind) -> Result<Snapshot, IngestError> {
    let mut header: BTreeMap<String, Vec<String>> = BTreeMap::new();
    let mut body: Vec<(usize, &str)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.strip_suffix('\r').unwrap_or(raw);
        if let Some(rest) = line.strip_prefix('#') {
            if let Some((k, v)) = rest.split_once(':') {
                header.entry(k.trim().to_string()).or_default().push(v.trim().to_string());
            }
            continue;
        }
        if line.trim().is_empty() {
            continue;
        }
        body.push((i + 1, line));
    }
    let single = |key: &'static str| -> Result<String, IngestError> {
        header.get(key).and_then(|v| v.first()).cloned().ok_or(IngestError::MissingHeader(key))
    };
    let found = single("snapshot")?;
    if found != kind.as_str() {
        return Err(IngestError::KindMismatch { expected: kind.to_string(), found });
    }
    let version = single("version")?;
    let provenance = header.get("provenance").cloned().unwrap_or_default();
    let columns: Vec<String> = single("columns")?.split('\t').map(|c| c.trim().to_string()).collect();
    let declared = single("sha256")?;
    let digest = body_digest(body.iter().map(|(_, l)| *l));
    if declared != digest {
        return Err(IngestError::Checksum { header: declared, body: digest });
    }
    if let Some(n) = header.get("records").and_then(|v| v.first()) {
        let n: usize = n.parse().map_err(|_| IngestError::Parse { line: 0, msg: format!("bad record count `{n}`") })?;
        if n != body.len() {
            return Err(IngestError::Parse { line: 0, msg: format!("header declares {n} records, body has {}", body.len()) });
        }
    }
    let mut records = Vec::with_capacity(body.len());
    for (line, l) in body {
        let cells: Vec<String> = l.split('\t').map(str::to_string).collect();
        if cells.len() != columns.len() {
            return Err(IngestError::Parse {
                line,
                msg: format!("expected {} columns, found {}", columns.len(), cells.len()),
            });
        }
        records.push(Record { line, cells });
    }
    Ok(Snapshot { kind, version, provenance, columns, records })
}

/// Renders a snapshot in the format read by [`parse_snapshot`].
pub fn serialize_snapshot(s: &Snapshot) -> String {
    let lines: Vec<String> = s.records.iter().map(|r| r.cells.join("\t")).collect();
    let mut out = String::new();
    out.push_str(&format!("# snapshot: {}\n# version: {}\n", s.kind, s.version));
    for p in &s.provenance {
        out.push_str(&format!("# provenance: {p}\n"));
    }
    out.push_str(&format!("# columns: {}\n", s.columns.join("\t")));
    out.push_str(&format!("# records: {}\n", lines.len()));
    out.push_str(&format!("# sha256: {}\n", body_digest(lines.iter().map(String::as_str))));
    for l in &lines {
        out.push_str(l);
        out.push('\n');
    }
    out
}

pub fn read_snapshot(path: &Path, kind: SnapshotKind) -> Result<Snapshot, IngestError> {
    let text = std::fs::read_to_string(path)
        .map_err(|source| IngestError::Io { path: path.to_path_buf(), source })?;
    parse_snapshot(&text, kind).map_err(|e| in_file(path, e))
}

fn in_file(path: &Path, e: IngestError) -> IngestError {
    match e {
        IngestError::Io { .. } | IngestError::InFile { .. } => e,
        e => IngestError::InFile { path: path.to_path_buf(), source: Box::new(e) },
    }
}

fn cell<'a>(rec: &'a Record, cols: &[String], name: &str) -> Result<&'a str, IngestError> {
    let i = cols
        .iter()
        .position(|c| c == name)
        .ok_or_else(|| IngestError::Parse { line: rec.line, msg: format!("no column `{name}`") })?;
    Ok(rec.cells[i].trim())
}

fn parse_num<T: FromStr>(rec: &Record, what: &str, s: &str) -> Result<T, IngestError> {
    s.parse().map_err(|_| IngestError::Parse { line: rec.line, msg: format!("{what}: `{s}` is not an integer") })
}

fn parse_list<T: FromStr>(rec: &Record, what: &str, s: &str, sep: char) -> Result<Vec<T>, IngestError> {
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(sep).map(|t| parse_num(rec, what, t.trim())).collect()
}

fn parse_overrides(rec: &Record, s: &str) -> Result<BTreeMap<u64, Vec<SplittingType>>, IngestError> {
    let mut out = BTreeMap::new();
    if s.is_empty() {
        return Ok(out);
    }
    for item in s.split(';') {
        let (p, syms) = item
            .split_once(':')
            .ok_or_else(|| IngestError::Parse { line: rec.line, msg: format!("override `{item}` is not p:symbols") })?;
        let p: u64 = parse_num(rec, "override prime", p.trim())?;
        let syms = syms
            .trim()
            .chars()
            .map(|c| {
                SplittingType::from_symbol(c)
                    .ok_or_else(|| IngestError::Parse { line: rec.line, msg: format!("bad splitting symbol `{c}`") })
            })
            .collect::<Result<Vec<_>, _>>()?;
        out.insert(p, syms);
    }
    Ok(out)
}

/// Builds a validated pair from one field-table record.
pub fn pair_from_record(rec: &Record, cols: &[String]) -> Result<FieldPair, IngestError> {
    let c = |n: &str| cell(rec, cols, n);
    let label = c("label")?.to_string();
    let d: u8 = parse_num(rec, "d", c("d")?)?;
    let dk: u64 = parse_num(rec, "D_k", c("D_k")?)?;
    let dl: u64 = parse_num(rec, "D_l", c("D_l")?)?;
    let divisors: Vec<u64> = parse_list(rec, "divisors", c("divisors")?, ';')?;
    let regulator = parse_rational(c("R_l")?)
        .ok_or_else(|| IngestError::Parse { line: rec.line, msg: format!("R_l `{}` is not a decimal", c("R_l").unwrap_or("")) })?;
    let w: u32 = parse_num(rec, "w_l", c("w_l")?)?;
    let poly: Vec<i64> = parse_list(rec, "poly", c("poly")?, ',')?;
    let overrides = parse_overrides(rec, c("overrides")?)?;
    let galois: Galois = c("galois")?
        .parse()
        .map_err(|msg| IngestError::Parse { line: rec.line, msg })?;
    let invariant = |msg: String| IngestError::Invariant { line: rec.line, msg };
    let base = BaseField::new(d, dk).map_err(|e| invariant(e.to_string()))?;
    let defining = if d == 1 {
        if !poly.is_empty() || !overrides.is_empty() {
            return Err(invariant("d = 1 records carry no polynomial data".into()));
        }
        Defining::Quadratic(-(dl as i64))
    } else {
        Defining::Quartic { coeffs: poly, overrides }
    };
    let ext = ExtensionField { disc: dl, class_group: divisors, regulator, roots_of_unity: w, defining, galois };
    FieldPair::new(label, base, ext).map_err(|e| invariant(e.to_string()))
}

pub fn field_pairs(s: &Snapshot) -> Result<Vec<FieldPair>, IngestError> {
    s.records.iter().map(|r| pair_from_record(r, &s.columns)).collect()
}

/// Reads a field table and validates every record.
pub fn load_field_table(path: &Path) -> Result<Vec<FieldPair>, IngestError> {
    field_pairs(&read_snapshot(path, SnapshotKind::Fields)?).map_err(|e| in_file(path, e))
}

/// Pairs over the base field of discriminant `dk` with `D_l <= dl_max` and
/// `D_l / D_k^2 <= rel_max`.
pub fn filter_by_bounds(pairs: &[FieldPair], dk: u64, dl_max: u64, rel_max: u64) -> Vec<FieldPair> {
    pairs
        .iter()
        .filter(|p| p.base.disc() == dk && p.ext.disc <= dl_max && p.relative_disc() <= rel_max)
        .cloned()
        .collect()
}

/// `(degree, bound)` rows of a Martinet snapshot.
pub fn martinet_rows(s: &Snapshot) -> Result<Vec<(u32, ExactRational)>, IngestError> {
    s.records
        .iter()
        .map(|r| {
            let n: u32 = parse_num(r, "degree", cell(r, &s.columns, "degree")?)?;
            let b = cell(r, &s.columns, "bound")?;
            let b = parse_rational(b).ok_or_else(|| IngestError::Parse { line: r.line, msg: format!("bad bound `{b}`") })?;
            Ok((n, b))
        })
        .collect()
}

/// Martinet table from its snapshot; rejects unsorted or decreasing bounds.
pub fn martinet_table(s: &Snapshot) -> Result<MartinetTable, IngestError> {
    MartinetTable::new(martinet_rows(s)?).map_err(|e| IngestError::Parse { line: 0, msg: e.to_string() })
}

pub fn load_martinet(path: &Path) -> Result<MartinetTable, IngestError> {
    martinet_table(&read_snapshot(path, SnapshotKind::Martinet)?).map_err(|e| in_file(path, e))
}

/// Regulator floors; a missing `dl_rule` column means [`DlRule::Root`].
pub fn regulator_rows(s: &Snapshot) -> Result<Vec<RegulatorEntry>, IngestError> {
    s.records
        .iter()
        .map(|r| {
            let dk: u64 = parse_num(r, "D_k", cell(r, &s.columns, "D_k")?)?;
            let dec = |name: &str| -> Result<ExactRational, IngestError> {
                let v = cell(r, &s.columns, name)?;
                parse_rational(v).ok_or_else(|| IngestError::Parse { line: r.line, msg: format!("bad {name} `{v}`") })
            };
            let dl_rule = match s.columns.iter().any(|c| c == "dl_rule") {
                true => cell(r, &s.columns, "dl_rule")?.parse().map_err(|msg| IngestError::Parse { line: r.line, msg })?,
                false => DlRule::Root,
            };
            let delta = dec("delta")?;
            if delta <= 0 || delta >= 1 {
                return Err(IngestError::Invariant { line: r.line, msg: format!("delta {delta} outside (0, 1)") });
            }
            Ok(RegulatorEntry { dk, r0: dec("R_0")?, delta, dl_rule })
        })
        .collect()
}

pub fn load_regulators(path: &Path) -> Result<Vec<RegulatorEntry>, IngestError> {
    regulator_rows(&read_snapshot(path, SnapshotKind::Regulators)?).map_err(|e| in_file(path, e))
}

/// A golden row: section tag, row key and its cells.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GoldenRow {
    pub section: String,
    pub key: String,
    pub cells: Vec<String>,
}

pub fn golden_rows(s: &Snapshot) -> Result<Vec<GoldenRow>, IngestError> {
    s.records
        .iter()
        .map(|r| {
            let cells = cell(r, &s.columns, "cells")?;
            Ok(GoldenRow {
                section: cell(r, &s.columns, "section")?.to_string(),
                key: cell(r, &s.columns, "key")?.to_string(),
                cells: if cells.is_empty() { Vec::new() } else { cells.split(',').map(|c| c.trim().to_string()).collect() },
            })
        })
        .collect()
}

pub fn load_golden(path: &Path) -> Result<Vec<GoldenRow>, IngestError> {
    golden_rows(&read_snapshot(path, SnapshotKind::Golden)?).map_err(|e| in_file(path, e))
}

/// Every field table under `dir/fields`, the Martinet table and the
/// regulator floors under `dir/tables`.
pub fn load_database(dir: &Path) -> Result<Database, IngestError> {
    let fields = dir.join("fields");
    let entries = std::fs::read_dir(&fields).map_err(|source| IngestError::Io { path: fields.clone(), source })?;
    let mut paths: Vec<_> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "tsv"))
        .collect();
    paths.sort();
    let mut pairs = Vec::new();
    for p in &paths {
        pairs.extend(load_field_table(p)?);
    }
    Ok(Database {
        pairs,
        martinet: load_martinet(&dir.join("tables/martinet.tsv"))?,
        regulators: load_regulators(&dir.join("tables/regulators.tsv"))?,
    })
}

/// Golden rows of one section keyed by row key.
pub fn golden_section(rows: &[GoldenRow], section: &str) -> BTreeMap<String, Vec<String>> {
    rows.iter()
        .filter(|r| r.section == section)
        .map(|r| (r.key.clone(), r.cells.clone()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    const C1: &str = "C1\t2\t5\t125\t\t0.962423650119\t10\t1,-1,1,-1,1\t5:R\tC4:5,1";

    fn snapshot_text(lines: &[&str]) -> String {
        let s = Snapshot {
            kind: SnapshotKind::Fields,
            version: "test".into(),
            provenance: vec!["unit test".into()],
            columns: FIELD_COLUMNS.iter().map(|c| c.to_string()).collect(),
            records: lines
                .iter()
                .enumerate()
                .map(|(i, l)| Record { line: i + 1, cells: l.split('\t').map(str::to_string).collect() })
                .collect(),
        };
        serialize_snapshot(&s)
    }

    #[test]
    fn round_trip_and_pairs() {
        let text = snapshot_text(&[C1]);
        let s = parse_snapshot(&text, SnapshotKind::Fields).unwrap();
        assert_eq!(serialize_snapshot(&s), text);
        let pairs = field_pairs(&s).unwrap();
        assert_eq!(pairs[0].label, "C1");
        assert_eq!(pairs[0].relative_disc(), 5);
    }

    #[test]
    fn empty_table() {
        let s = parse_snapshot(&snapshot_text(&[]), SnapshotKind::Fields).unwrap();
        assert!(field_pairs(&s).unwrap().is_empty());
    }

    #[test]
    fn checksum_and_kind_errors() {
        let text = snapshot_text(&[C1]);
        let tampered = text.replace("\t125\t", "\t250\t");
        assert!(matches!(parse_snapshot(&tampered, SnapshotKind::Fields), Err(IngestError::Checksum { .. })));
        let truncated: String = text.lines().map(|l| if l.starts_with("# sha256") { &l[..20] } else { l }).collect::<Vec<_>>().join("\n");
        assert!(matches!(parse_snapshot(&truncated, SnapshotKind::Fields), Err(IngestError::Checksum { .. })));
        assert!(matches!(parse_snapshot(&text, SnapshotKind::Martinet), Err(IngestError::KindMismatch { .. })));
    }

    #[test]
    fn invariant_violation_reports_line() {
        let bad = C1.replace("\t125\t", "\t130\t");
        let text = snapshot_text(&[C1, &bad]);
        let s = parse_snapshot(&text, SnapshotKind::Fields).unwrap();
        match field_pairs(&s) {
            Err(IngestError::Invariant { line, .. }) => assert_eq!(line, s.records[1].line),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn column_count_error() {
        let text = snapshot_text(&["C1\t2"]);
        assert!(matches!(parse_snapshot(&text, SnapshotKind::Fields), Err(IngestError::Parse { .. })));
    }
}
