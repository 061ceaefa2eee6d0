//! The four commands. Each returns a [`Report`] whose diffs decide the exit
//! code; unreadable input is a [`CliError`].

use std::collections::{BTreeMap, BTreeSet};
use std::path::PathBuf;

use fakeherm_core::arith::{is_fundamental_discriminant, primes_up_to};
use fakeherm_core::bounds::{certified_floor, evaluate_quoted, large_dk_report, Ceiling, LARGE_DK_THRESHOLD};
use fakeherm_core::classify::{
    bounded_candidates, covolume, division_t_enumeration, enumerate_t0, hermitian_t_scan, r_stage, rank1_pair_scan,
    run_classification, small_dk_reports, split_primes, BoundStage, RValue, Unverifiable, D1_DL_MAX, RANK1_SMALL_CAP,
};
use fakeherm_core::fields::{class_number_imag_quadratic, SplitInK};
use fakeherm_core::ingest::{golden_section, load_database, load_golden, GoldenRow};
use fakeherm_core::rational::parse_rational;
use fakeherm_core::zeta::{script_r, zeta_k_neg};
use fakeherm_core::{
    Assignment, BaseField, BoundReport, CandidateReport, ClassifyOptions, Database, FieldPair, HighPrecisionReal,
    TConfiguration,
};
use serde_json::{json, Value};

use crate::{CliError, Report, RunConfig, Table};

fn golden(cfg: &RunConfig) -> Result<Vec<GoldenRow>, CliError> {
    let path = cfg.data_dir.join("golden/reference.tsv");
    load_golden(&path).map_err(|e| CliError::Input(format!("cannot load golden tables: {e}")))
}

fn database(cfg: &RunConfig) -> Result<Database, CliError> {
    for rel in ["fields", "tables/martinet.tsv", "tables/regulators.tsv"] {
        let p: PathBuf = cfg.data_dir.join(rel);
        if !p.exists() {
            return Err(CliError::Input(format!("missing data file {}", p.display())));
        }
    }
    load_database(&cfg.data_dir).map_err(|e| CliError::Input(format!("cannot load database: {e}")))
}

fn section<'a>(rows: &'a [GoldenRow], name: &str) -> Vec<&'a GoldenRow> {
    rows.iter().filter(|r| r.section == name).collect()
}

fn dec(x: &HighPrecisionReal) -> String {
    format!("{:.4}", x.upper().to_f64())
}

fn pinned(cell: &str) -> Result<fakeherm_core::ExactRational, CliError> {
    parse_rational(cell).ok_or_else(|| CliError::Input(format!("golden cell `{cell}` is not a rational")))
}

/// Base-field discriminant a quoted bound belongs to; `None` for the
/// uniform large-discriminant bounds.
fn quoted_dk(key: &str) -> Option<u64> {
    let (func, args) = key.split_once('(')?;
    if func.starts_with("f1") {
        return None;
    }
    let dk: u64 = args.trim_end_matches(')').split(',').nth(1)?.parse().ok()?;
    (dk < LARGE_DK_THRESHOLD).then_some(dk)
}

fn ceiling_cells(c: &Option<Ceiling>) -> (String, String) {
    match c {
        Some(c) => (c.degree.to_string(), c.h.to_string()),
        None => ("-".into(), "-".into()),
    }
}

fn row_table(title: &str) -> Table {
    Table::new(title, &["D_k", "q2", "q1(64)", "h4", "D_l", "D_l/D_k^2", "rule"])
}

fn check_row(report: &mut Report, table: &str, r: &BoundReport, cells: &[String]) -> Result<(), CliError> {
    let row = r.dk.to_string();
    if !r.q2.certainly_lt(&pinned(&cells[0])?) {
        report.diff(table, &row, "q2", format!("< {}", cells[0]), dec(&r.q2));
    }
    if cells[1] != "-" && !r.q1_64.certainly_lt(&pinned(&cells[1])?) {
        report.diff(table, &row, "q1(64)", format!("< {}", cells[1]), dec(&r.q1_64));
    }
    for (col, got, want) in [("h4", r.h4, &cells[2]), ("D_l", r.dl_bound, &cells[3]), ("D_l/D_k^2", r.rel_bound, &cells[4])] {
        if got.to_string() != *want {
            report.diff(table, &row, col, want, got);
        }
    }
    Ok(())
}

fn push_row(t: &mut Table, dk: &str, r: &BoundReport, dl: u64, rel: u64, rule: &str) {
    t.push(vec![dk.into(), dec(&r.q2), dec(&r.q1_64), r.h4.to_string(), dl.to_string(), rel.to_string(), rule.into()]);
}

fn quoted_tables(report: &mut Report, g: &[GoldenRow], keep: &dyn Fn(Option<u64>) -> bool) -> Result<(), CliError> {
    let mut upper = Table::new("quoted upper bounds", &["expression", "certified", "quoted", "holds"]);
    for row in section(g, "upper").into_iter().filter(|r| keep(quoted_dk(&r.key))) {
        let x = evaluate_quoted(&row.key).map_err(|e| CliError::Input(e.to_string()))?;
        let ok = x.certainly_lt(&pinned(&row.cells[0])?);
        if !ok {
            report.diff("quoted upper bounds", &row.key, "value", format!("< {}", row.cells[0]), format!("{:.6}", x.upper().to_f64()));
        }
        upper.push(vec![row.key.clone(), format!("{:.6}", x.upper().to_f64()), row.cells[0].clone(), yes_no(ok)]);
    }
    let mut floors = Table::new("quoted floors", &["expression", "certified floor", "quoted"]);
    for row in section(g, "floor").into_iter().filter(|r| keep(quoted_dk(&r.key))) {
        let x = evaluate_quoted(&row.key).map_err(|e| CliError::Input(e.to_string()))?;
        let got = certified_floor(&x).to_string();
        if got != row.cells[0] {
            report.diff("quoted floors", &row.key, "floor", &row.cells[0], &got);
        }
        floors.push(vec![row.key.clone(), got, row.cells[0].clone()]);
    }
    report.tables.push(upper);
    report.tables.push(floors);
    Ok(())
}

fn ceiling_table(report: &mut Report, g: &[GoldenRow], db: &Database, only: Option<&BTreeSet<String>>) -> Result<(), CliError> {
    let mut t = Table::new("class-number ceilings", &["root bound", "degree", "h", "quoted degree", "quoted h"]);
    for row in section(g, "ceiling") {
        if only.is_some_and(|s| !s.contains(&row.key)) {
            continue;
        }
        let x = HighPrecisionReal::from_rational(&pinned(&row.key)?, 128);
        let c = db.martinet.class_number_ceiling(&x).map_err(|e| CliError::Input(e.to_string()))?;
        let h = if row.cells[2] == "n" { c.h_loose } else { c.h };
        if c.degree.to_string() != row.cells[0] {
            report.diff("class-number ceilings", &row.key, "degree", &row.cells[0], c.degree);
        }
        if h.to_string() != row.cells[1] {
            report.diff("class-number ceilings", &row.key, "h", &row.cells[1], h);
        }
        t.push(vec![row.key.clone(), c.degree.to_string(), h.to_string(), row.cells[0].clone(), row.cells[1].clone()]);
    }
    report.tables.push(t);
    Ok(())
}

fn yes_no(b: bool) -> String {
    if b { "yes" } else { "no" }.into()
}

/// The discriminant-bound table, the quoted inequalities and the candidate
/// counts; with `dk`, the iteration behind one row.
pub fn bounds(cfg: &RunConfig, dk: Option<u64>) -> Result<Report, CliError> {
    let g = golden(cfg)?;
    let db = database(cfg)?;
    let mut report = Report::new("bounds");
    match dk {
        Some(dk) => bounds_one(&g, &db, dk, &mut report)?,
        None => bounds_all(&g, &db, &mut report)?,
    }
    Ok(report)
}

fn bounds_all(g: &[GoldenRow], db: &Database, report: &mut Report) -> Result<(), CliError> {
    let reports = small_dk_reports(db).map_err(|e| CliError::Input(e.to_string()))?;
    let large = large_dk_report(&db.martinet).map_err(|e| CliError::Input(e.to_string()))?;
    let table = golden_section(g, "table");
    let mut t = row_table("discriminant bounds");
    for r in &reports {
        push_row(&mut t, &r.dk.to_string(), r, r.dl_bound, r.rel_bound, &format!("{:?}", r.dl_rule).to_lowercase());
        match table.get(&r.dk.to_string()) {
            Some(cells) => check_row(report, "discriminant bounds", r, cells)?,
            None => report.notes.push(format!("D_k = {} has no pinned row", r.dk)),
        }
    }
    push_row(&mut t, ">=33", &large.report, large.dl_max, large.rel_max, "uniform");
    report.tables.push(t);
    large_checks(report, g, &large)?;
    quoted_tables(report, g, &|_| true)?;
    ceiling_table(report, g, db, None)?;

    let mut m = Table::new("golden-ratio database passes", &["D_l bound", "fields", "max h", "quoted fields", "quoted max h"]);
    for row in section(g, "malle") {
        let b: u64 = row.key.parse().map_err(|_| CliError::Input(format!("bad malle key `{}`", row.key)))?;
        let within: Vec<&FieldPair> = db.pairs.iter().filter(|p| p.base.disc() == 5 && p.ext.disc <= b).collect();
        let h = within.iter().map(|p| p.ext.class_number()).max();
        let h = h.map_or("-".into(), |h| h.to_string());
        if within.len().to_string() != row.cells[0] {
            report.diff("golden-ratio database passes", &row.key, "fields", &row.cells[0], within.len());
        }
        if row.cells[1] != "-" && h != row.cells[1] {
            report.diff("golden-ratio database passes", &row.key, "max h", &row.cells[1], &h);
        }
        m.push(vec![row.key.clone(), within.len().to_string(), h, row.cells[0].clone(), row.cells[1].clone()]);
    }
    report.tables.push(m);

    let (stages, _) = bounded_candidates(db).map_err(|e| CliError::Input(e.to_string()))?;
    count_tables(report, g, &stages);
    Ok(())
}

fn large_checks(report: &mut Report, g: &[GoldenRow], large: &fakeherm_core::LargeDkReport) -> Result<(), CliError> {
    let Some(cells) = golden_section(g, "large").get("33").cloned() else {
        report.notes.push("no pinned row for D_k >= 33".into());
        return Ok(());
    };
    let t = "discriminant bounds";
    if !large.report.q2.certainly_lt(&pinned(&cells[0])?) {
        report.diff(t, ">=33", "q2", format!("< {}", cells[0]), dec(&large.report.q2));
    }
    if !large.report.q1_64.certainly_lt(&pinned(&cells[1])?) {
        report.diff(t, ">=33", "q1(64)", format!("< {}", cells[1]), dec(&large.report.q1_64));
    }
    if !large.f1.certainly_lt(&pinned(&cells[5])?) {
        report.diff(t, ">=33", "f1", format!("< {}", cells[5]), dec(&large.f1));
    }
    let got = [large.report.h4, large.dl_max, large.rel_max, large.dk_max];
    for ((col, got), want) in ["h4", "D_l", "D_l/D_k^2", "D_k max"].iter().zip(got).zip([&cells[2], &cells[3], &cells[4], &cells[6]]) {
        if got.to_string() != *want {
            report.diff(t, ">=33", col, want, got);
        }
    }
    Ok(())
}

fn count_tables(report: &mut Report, g: &[GoldenRow], stages: &[BoundStage]) {
    let mut t = Table::new("candidate pairs", &["alpha", "D_k", "D_l bound", "pairs", "quoted"]);
    let mut d2 = 0;
    for row in section(g, "prop2") {
        let dk: u64 = row.cells[0].parse().unwrap_or(0);
        let got = stages.iter().find(|s| s.dk == dk);
        let (bound, count) = got.map_or(("-".into(), "-".into()), |s| (s.dl_bound.to_string(), s.count.to_string()));
        d2 += got.map_or(0, |s| s.count);
        if bound != row.cells[1] {
            report.diff("candidate pairs", &row.key, "D_l bound", &row.cells[1], &bound);
        }
        if count != row.cells[2] {
            report.diff("candidate pairs", &row.key, "pairs", &row.cells[2], &count);
        }
        t.push(vec![row.key.clone(), row.cells[0].clone(), bound, count, row.cells[2].clone()]);
    }
    report.tables.push(t);
    let mut totals = Table::new("candidate totals", &["group", "pairs", "quoted"]);
    let large = stages.iter().find(|s| s.dk == LARGE_DK_THRESHOLD).map_or(0, |s| s.count);
    let d1 = stages.iter().find(|s| s.dk == 1);
    for row in section(g, "prop2-total") {
        let (got, want) = match row.key.as_str() {
            "d2" => (d2.to_string(), row.cells[0].clone()),
            "large" => (large.to_string(), row.cells[0].clone()),
            "d1" => {
                let bound = d1.map_or(0, |s| s.dl_bound);
                if bound.to_string() != row.cells[0] {
                    report.diff("candidate totals", "d1", "D_l bound", &row.cells[0], bound);
                }
                (d1.map_or(0, |s| s.count).to_string(), row.cells[1].clone())
            }
            other => {
                report.notes.push(format!("unknown total `{other}`"));
                continue;
            }
        };
        if got != want {
            report.diff("candidate totals", &row.key, "pairs", &want, &got);
        }
        totals.push(vec![row.key.clone(), got, want]);
    }
    report.tables.push(totals);
}

fn bounds_one(g: &[GoldenRow], db: &Database, dk: u64, report: &mut Report) -> Result<(), CliError> {
    if dk >= LARGE_DK_THRESHOLD {
        let large = large_dk_report(&db.martinet).map_err(|e| CliError::Input(e.to_string()))?;
        let mut t = row_table("discriminant bounds");
        push_row(&mut t, ">=33", &large.report, large.dl_max, large.rel_max, "uniform");
        report.tables.push(t);
        large_checks(report, g, &large)?;
        iteration_tables(report, &large.report);
        report.notes.push(format!("D_k <= {} from f1; D_k = {dk} uses the uniform bounds", large.dk_max));
        if dk > large.dk_max {
            report.notes.push(format!("D_k = {dk} exceeds {}: no candidate pairs", large.dk_max));
        }
        quoted_tables(report, g, &|k| k.is_none())?;
        let values = quoted_values(g, &|k| k.is_none());
        return ceiling_table(report, g, db, Some(&values));
    }
    if !db.regulators.iter().any(|e| e.dk == dk) {
        return Err(CliError::Input(format!(
            "D_k = {dk} is not the discriminant of a real quadratic field with a pinned regulator floor"
        )));
    }
    let reports = small_dk_reports(db).map_err(|e| CliError::Input(e.to_string()))?;
    let r = reports.iter().find(|r| r.dk == dk).expect("regulator entry present");
    let mut t = row_table("discriminant bounds");
    push_row(&mut t, &dk.to_string(), r, r.dl_bound, r.rel_bound, &format!("{:?}", r.dl_rule).to_lowercase());
    report.tables.push(t);
    match golden_section(g, "table").get(&dk.to_string()) {
        Some(cells) => check_row(report, "discriminant bounds", r, cells)?,
        None => report.notes.push(format!("D_k = {dk} has no pinned row")),
    }
    iteration_tables(report, r);
    quoted_tables(report, g, &|k| k == Some(dk))?;
    let values = quoted_values(g, &|k| k == Some(dk));
    ceiling_table(report, g, db, Some(&values))
}

fn quoted_values(g: &[GoldenRow], keep: &dyn Fn(Option<u64>) -> bool) -> BTreeSet<String> {
    section(g, "upper").into_iter().filter(|r| keep(quoted_dk(&r.key))).map(|r| r.cells[0].clone()).collect()
}

fn iteration_tables(report: &mut Report, r: &BoundReport) {
    let (deg, h) = ceiling_cells(&r.q2_ceiling);
    let mut t = Table::new("iteration", &["step", "h4", "root bound", "degree", "h", "next h4", "D_l", "D_l/D_k^2"]);
    t.push(vec!["q2".into(), "-".into(), dec(&r.q2), deg, h, r.rows.first().map_or("-".into(), |x| x.h4.to_string()), "-".into(), "-".into()]);
    for (i, row) in r.rows.iter().enumerate() {
        let (deg, h) = ceiling_cells(&row.ceiling);
        t.push(vec![
            format!("q1 #{}", i + 1),
            row.h4.to_string(),
            dec(&row.root_bound),
            deg,
            h,
            row.h4_next.to_string(),
            row.dl_bound.to_string(),
            row.rel_bound.to_string(),
        ]);
    }
    report.tables.push(t);
    if !r.database.is_empty() {
        let mut d = Table::new("database passes", &["D_l bound", "fields", "max h", "h4"]);
        for row in &r.database {
            d.push(vec![row.dl_bound.to_string(), row.count.to_string(), row.h_max.to_string(), row.h4.to_string()]);
        }
        report.tables.push(d);
    }
}

fn r_row(r: &RValue) -> Vec<String> {
    vec![
        r.label.clone(),
        r.dk.to_string(),
        r.dl.to_string(),
        r.zeta_m1.to_string(),
        r.l_m2.clone().abs().to_string(),
        r.zeta_m3.to_string(),
        r.script_r.to_string(),
        yes_no(r.power_of_2),
        r.path.clone(),
    ]
}

const R_COLUMNS: [&str; 9] = ["pair", "D_k", "D_l", "zeta_k(-1)", "L(-2)", "zeta_k(-3)", "R", "power of 2", "path"];

/// Compares computed rows (by label) with pinned rows. A pinned row missing
/// from the database is a note; one present but not computed is a diff, as
/// is every computed row without a pinned counterpart.
fn compare_rows(
    report: &mut Report,
    table: &str,
    db: &Database,
    computed: &BTreeMap<String, Vec<String>>,
    pinned_rows: &[(String, Vec<(usize, String)>)],
    columns: &[&str],
) {
    for (label, cells) in pinned_rows {
        match computed.get(label) {
            Some(row) => {
                for (i, want) in cells {
                    if row[*i] != *want {
                        report.diff(table, label, columns[*i], want, &row[*i]);
                    }
                }
            }
            None if db.pairs.iter().any(|p| &p.label == label) => report.diff(table, label, "row", "present", "absent"),
            None => report.notes.push(format!("{table}: pinned row {label} is not in the database")),
        }
    }
    for label in computed.keys() {
        if !pinned_rows.iter().any(|(l, _)| l == label) {
            report.diff(table, label, "row", "absent", "present");
        }
    }
}

/// `R` for the large base fields, the golden-ratio survivors and the
/// imaginary quadratic survivors.
pub fn lvalues(cfg: &RunConfig) -> Result<Report, CliError> {
    let g = golden(cfg)?;
    let db = database(cfg)?;
    let mut report = Report::new("lvalues");
    let (_, pairs) = bounded_candidates(&db).map_err(|e| CliError::Input(e.to_string()))?;
    let (rvals, _, unverifiable) = r_stage(pairs, &cfg.numeric);

    let mut large = Table::new("large base fields", &R_COLUMNS);
    let mut computed = BTreeMap::new();
    for r in rvals.iter().filter(|r| r.d == 2 && r.dk >= LARGE_DK_THRESHOLD) {
        large.push(r_row(r));
        computed.insert(r.label.clone(), r_row(r));
    }
    let want: Vec<(String, Vec<(usize, String)>)> = section(&g, "zeta-large")
        .into_iter()
        .map(|row| (row.key.clone(), [3, 4, 5, 6].into_iter().zip(row.cells.iter().cloned()).collect()))
        .collect();
    report.tables.push(large);
    compare_rows(&mut report, "large base fields", &db, &computed, &want, &R_COLUMNS);

    let mut base = Table::new("golden-ratio base field", &["D_k", "zeta_k(-1)", "zeta_k(-3)"]);
    let z1 = zeta_k_neg(5, 1).map_err(|e| CliError::Input(e.to_string()))?.to_string();
    let z3 = zeta_k_neg(5, 3).map_err(|e| CliError::Input(e.to_string()))?.to_string();
    if let Some(cells) = golden_section(&g, "zeta-q5-base").get("5") {
        for (col, got, want) in [("zeta_k(-1)", &z1, &cells[0]), ("zeta_k(-3)", &z3, &cells[1])] {
            if got != want {
                report.diff("golden-ratio base field", "5", col, want, got);
            }
        }
    }
    base.push(vec!["5".into(), z1, z3]);
    report.tables.push(base);

    let mut d2 = Table::new("power-of-2 survivors over real quadratic fields", &R_COLUMNS);
    let mut computed = BTreeMap::new();
    for r in rvals.iter().filter(|r| r.d == 2 && r.dk < LARGE_DK_THRESHOLD && r.power_of_2) {
        d2.push(r_row(r));
        computed.insert(r.label.clone(), r_row(r));
    }
    let want: Vec<(String, Vec<(usize, String)>)> = section(&g, "zeta-q5")
        .into_iter()
        .map(|row| (row.key.clone(), [4, 6].into_iter().zip(row.cells.iter().cloned()).collect()))
        .collect();
    report.tables.push(d2);
    compare_rows(&mut report, "power-of-2 survivors over real quadratic fields", &db, &computed, &want, &R_COLUMNS);

    let cols = ["pair", "D_l", "h", "R", "path"];
    let mut d1 = Table::new("power-of-2 survivors over Q", &cols);
    let mut computed = BTreeMap::new();
    for r in rvals.iter().filter(|r| r.d == 1 && r.power_of_2) {
        let h = class_number_imag_quadratic(-(r.dl as i64)).map_err(|e| CliError::Input(e.to_string()))?;
        let row = vec![r.label.clone(), r.dl.to_string(), h.to_string(), r.script_r.to_string(), r.path.clone()];
        d1.push(row.clone());
        computed.insert(r.label.clone(), row);
    }
    let want: Vec<(String, Vec<(usize, String)>)> = section(&g, "zeta-q")
        .into_iter()
        .map(|row| (format!("Q(sqrt-{})", row.key), [2, 3].into_iter().zip(row.cells.iter().cloned()).collect()))
        .collect();
    report.tables.push(d1);
    compare_rows(&mut report, "power-of-2 survivors over Q", &db, &computed, &want, &cols);

    for u in &unverifiable {
        report.diff("R", &u.label, "value", "certified", &u.reason);
    }
    Ok(report)
}

/// Primes up to the prime cap under a place of `k` splitting in `l`.
pub fn split_primes_cmd(cfg: &RunConfig) -> Result<Report, CliError> {
    let g = golden(cfg)?;
    let db = database(cfg)?;
    let mut report = Report::new("split-primes");
    let mut t = Table::new("split primes", &["pair", "primes", "quoted"]);
    for row in section(&g, "split") {
        let got = if row.key == "k5" {
            let k = BaseField::new(2, 5).map_err(|e| CliError::Input(e.to_string()))?;
            primes_up_to(cfg.prime_cap).into_iter().filter(|&p| k.splitting_of(p) == SplitInK::Split).collect()
        } else {
            let Some(p) = db.pairs.iter().find(|p| p.label == row.key) else {
                report.notes.push(format!("pinned row {} is not in the database", row.key));
                continue;
            };
            split_primes(p, cfg.prime_cap).map_err(|e| CliError::Input(e.to_string()))?
        };
        let got = got.iter().map(u64::to_string).collect::<Vec<_>>().join(", ");
        let want = row.cells.join(", ");
        if got != want {
            report.diff("split primes", &row.key, "primes", &want, &got);
        }
        let label = if row.key == "k5" { "Q(sqrt5)".to_string() } else { row.key.clone() };
        t.push(vec![label, got, want]);
    }
    report.tables.push(t);
    Ok(report)
}

/// Pairs the pinned candidate counts or the complete list of imaginary
/// quadratic discriminants expect but the database lacks.
fn database_gaps(db: &Database, g: &[GoldenRow], stages: &[BoundStage]) -> Vec<Unverifiable> {
    let mut out = Vec::new();
    for row in section(g, "prop2") {
        let (Ok(dk), Ok(n)) = (row.cells[0].parse::<u64>(), row.cells[2].parse::<usize>()) else { continue };
        let count = stages.iter().find(|s| s.dk == dk).map_or(0, |s| s.count);
        if count < n {
            out.push(Unverifiable {
                label: format!("D_k = {dk}"),
                reason: format!("{n} candidate pairs expected, {count} in the database"),
            });
        }
    }
    let have: BTreeSet<u64> = db.pairs.iter().filter(|p| p.degree() == 1).map(|p| p.ext.disc).collect();
    for d in (3..=D1_DL_MAX).filter(|&d| is_fundamental_discriminant(-(d as i64)) && !have.contains(&d)) {
        let a = if d % 4 == 0 { d / 4 } else { d };
        out.push(Unverifiable { label: format!("Q(sqrt-{a})"), reason: "missing from the field database".into() });
    }
    out
}

fn candidate_row(c: &CandidateReport) -> Vec<String> {
    vec![
        c.label.clone(),
        c.config_text.clone(),
        c.script_r.to_string(),
        c.covolume.to_string(),
        c.submultiple_index.clone().unwrap_or_else(|| "-".into()),
        yes_no(c.e_exceeds),
    ]
}

const CANDIDATE_COLUMNS: [&str; 6] = ["pair", "configuration", "R", "covolume", "index to 1/n", "E > 4^#T"];

/// The full classification, or the configurations of one pair.
pub fn classify(cfg: &RunConfig, pair: Option<&str>, deg: Option<u8>) -> Result<Report, CliError> {
    let g = golden(cfg)?;
    let db = database(cfg)?;
    match pair {
        Some(query) => classify_pair(cfg, &g, &db, query, deg),
        None => classify_all(cfg, &g, &db),
    }
}

fn classify_all(cfg: &RunConfig, g: &[GoldenRow], db: &Database) -> Result<Report, CliError> {
    let mut report = Report::new("classify");
    let opts = ClassifyOptions { numeric: cfg.numeric, prime_cap: cfg.prime_cap };
    let mut run = run_classification(db, &opts).map_err(|e| CliError::Input(e.to_string()))?;
    run.unverifiable.extend(database_gaps(db, g, &run.bound_stage));

    let mut stages = Table::new("candidate pairs", &["D_k", "D_l bound", "D_l/D_k^2 bound", "pairs"]);
    for s in &run.bound_stage {
        stages.push(vec![s.dk.to_string(), s.dl_bound.to_string(), s.rel_bound.to_string(), s.count.to_string()]);
    }
    report.tables.push(stages);
    let survivors = run.r_values.iter().filter(|r| r.power_of_2).count();
    report.notes.push(format!("{} pairs evaluated, {survivors} with a power-of-2 numerator", run.r_values.len()));

    let mut t = Table::new("emitted configurations", &CANDIDATE_COLUMNS);
    for c in &run.candidates {
        t.push(candidate_row(c));
    }
    report.tables.push(t);

    let division: Vec<String> = run
        .theorem
        .division
        .iter()
        .flat_map(|(l, dd, _)| dd.iter().map(move |d| format!("{l}:{d}")))
        .collect();
    let mut th = Table::new("theorem", &["part", "pairs"]);
    th.push(vec!["a".into(), run.theorem.hermitian.join(",")]);
    th.push(vec!["b".into(), division.join(",")]);
    for (l, _, t0) in &run.theorem.division {
        let sets: Vec<String> = t0.iter().map(|s| format!("{s:?}")).collect();
        report.notes.push(format!("{l}: T_0 primes {}", sets.join(" ")));
    }
    report.tables.push(th);
    let theorem = golden_section(g, "theorem");
    for (part, got) in [("a", &run.theorem.hermitian), ("b", &division)] {
        let Some(want) = theorem.get(part) else { continue };
        for x in want.iter().filter(|x| !got.contains(x)) {
            report.diff("theorem", part, x, "present", "absent");
        }
        for x in got.iter().filter(|x| !want.contains(x)) {
            report.diff("theorem", part, x, "absent", "present");
        }
    }

    if !run.unverifiable.is_empty() {
        let mut u = Table::new("unverifiable candidates", &["pair", "reason"]);
        for x in &run.unverifiable {
            u.push(vec![x.label.clone(), x.reason.clone()]);
            report.diff("unverifiable candidates", &x.label, "status", "decided", &x.reason);
        }
        report.tables.push(u);
    }

    report.json.insert("candidates".into(), serde_json::to_value(&run.candidates).expect("plain data"));
    report.json.insert(
        "summary".into(),
        json!({
            "hermitian": run.theorem.hermitian,
            "division": run.theorem.division.iter().map(|(l, dd, t0)| json!({ "pair": l, "degrees": dd, "t0_primes": t0 })).collect::<Vec<Value>>(),
        }),
    );
    report.json.insert("unverifiable".into(), serde_json::to_value(&run.unverifiable).expect("plain data"));
    Ok(report)
}

/// `Q,-a` for `Q(sqrt-a)`, otherwise a label from the database.
fn find_pair<'a>(db: &'a Database, query: &str) -> Result<&'a FieldPair, CliError> {
    let label = match query.split_once(',') {
        Some(("Q" | "1", l)) => match l.trim().strip_prefix('-').map(str::parse::<u64>) {
            Some(Ok(a)) => format!("Q(sqrt-{a})"),
            _ => return Err(CliError::Input(format!("cannot read pair `{query}`: expected Q,-a"))),
        },
        Some(_) => return Err(CliError::Input(format!("cannot read pair `{query}`: only Q,-a or a label"))),
        None => query.to_string(),
    };
    db.pairs.iter().find(|p| p.label == label).ok_or_else(|| CliError::Input(format!("pair {label} is not in the database")))
}

fn pinned_config(p: &FieldPair, key: &str) -> Result<(u8, TConfiguration), CliError> {
    let bad = || CliError::Input(format!("bad pinned configuration `{key}`"));
    let (dd, rest) = key.split_once('|').ok_or_else(bad)?;
    let dd: u8 = dd.parse().map_err(|_| bad())?;
    let mut assignments = Vec::new();
    for s in rest.split(',') {
        let (prime, case) = s.split_once(':').ok_or_else(bad)?;
        let local = p.local_data(prime.parse().map_err(|_| bad())?).map_err(|e| CliError::Input(e.to_string()))?;
        let (place, split) = *local.first().ok_or_else(bad)?;
        assignments.push(Assignment { place, split, case: case.parse().map_err(|_| bad())? });
    }
    let c = TConfiguration::new(assignments, dd, 1).map_err(|e| CliError::Input(e.to_string()))?;
    Ok((dd, c))
}

fn classify_pair(cfg: &RunConfig, g: &[GoldenRow], db: &Database, query: &str, deg: Option<u8>) -> Result<Report, CliError> {
    let mut report = Report::new("classify");
    let p = find_pair(db, query)?;
    let degrees: Vec<u8> = match (deg, p.degree()) {
        (Some(1), 1) => return Err(CliError::Input("k = Q admits no D = l configuration; use --deg 2 or 4".into())),
        (Some(d @ (1 | 2 | 4)), _) => vec![d],
        (Some(d), _) => return Err(CliError::Input(format!("--deg must be 1, 2 or 4, got {d}"))),
        (None, 1) => vec![2, 4],
        (None, _) => vec![1],
    };
    let r = script_r(p, &cfg.numeric).map_err(|e| CliError::Input(e.to_string()))?;
    report.notes.push(format!("{}: R = {} via {}", p.label, r.value, r.path));
    let err = |e: fakeherm_core::ClassifyError| CliError::Input(e.to_string());

    let t0 = enumerate_t0(p, &r.value, cfg.prime_cap).map_err(err)?;
    let sets: Vec<String> = t0.prime_sets().iter().map(|s| format!("{s:?}")).collect();
    report.notes.push(format!(
        "T_0 prime sets: {}; places beyond {} excluded: {}",
        if sets.is_empty() { "none".into() } else { sets.join(" ") },
        cfg.prime_cap,
        yes_no(t0.beyond_cap.certified)
    ));

    let mut enumerated = BTreeSet::new();
    for &dd in &degrees {
        if dd == 1 {
            let rank1 = rank1_pair_scan(p, &r.value, RANK1_SMALL_CAP, cfg.prime_cap).map_err(err)?;
            let herm = hermitian_t_scan(p, &r.value).map_err(err)?;
            let mut t = Table::new("scans for D = l", &["scan", "checked", "survivors", "beyond cap", "verdict"]);
            t.push(vec![
                "rank-1 pairs".into(),
                rank1.pairs_checked.to_string(),
                rank1.failures.len().to_string(),
                yes_no(rank1.beyond_cap.certified),
                if rank1.t1_empty { "T_1 empty" } else { "T_1 not excluded" }.into(),
            ]);
            t.push(vec![
                format!("places below {}", herm.prime_cap),
                herm.single_places_checked.to_string(),
                herm.survivors.len().to_string(),
                yes_no(herm.beyond_cap.certified),
                if herm.t_empty { "T empty" } else { "T not excluded" }.into(),
            ]);
            report.tables.push(t);
            continue;
        }
        let en = division_t_enumeration(p, &r.value, dd, cfg.prime_cap).map_err(err)?;
        let mut t = Table::new(format!("configurations with D of degree {dd}"), &CANDIDATE_COLUMNS);
        for (c, _) in &en.configurations {
            let cand = CandidateReport::build(p, &r, c.clone()).map_err(err)?;
            enumerated.insert(c.to_string());
            t.push(candidate_row(&cand));
        }
        report.tables.push(t);
        report.notes.push(format!("D of degree {dd}: places beyond {} excluded: {}", cfg.prime_cap, yes_no(en.beyond_cap.certified)));
    }

    // The pinned covolumes all concern Q(sqrt-7).
    if p.label == "Q(sqrt-7)" {
        let mut t = Table::new("pinned covolumes", &["configuration", "covolume", "quoted", "enumerated"]);
        for row in section(g, "covolume") {
            let (dd, c) = pinned_config(p, &row.key)?;
            if !degrees.contains(&dd) {
                continue;
            }
            let got = covolume(&r.value, &c).map_err(err)?.to_string();
            if got != row.cells[0] {
                report.diff("pinned covolumes", &row.key, "covolume", &row.cells[0], &got);
            }
            t.push(vec![c.to_string(), got, row.cells[0].clone(), yes_no(enumerated.contains(&c.to_string()))]);
        }
        report.tables.push(t);
    }
    Ok(report)
}
