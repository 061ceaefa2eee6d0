use std::collections::BTreeMap;
use std::path::PathBuf;

use fakeherm_core::bounds::{
    certified_floor, database_iterate, evaluate_quoted, large_dk_report, small_dk_report, BoundReport, MartinetTable,
};
use fakeherm_core::ingest::{filter_by_bounds, golden_section, load_field_table, load_golden, load_martinet, load_regulators, GoldenRow};
use fakeherm_core::rational::parse_rational;
use fakeherm_core::HighPrecisionReal;

fn data(rel: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(rel)
}

fn golden() -> Vec<GoldenRow> {
    load_golden(&data("golden/reference.tsv")).unwrap()
}

fn martinet() -> MartinetTable {
    load_martinet(&data("tables/martinet.tsv")).unwrap()
}

fn reports() -> BTreeMap<u64, BoundReport> {
    let t = martinet();
    let mut out = BTreeMap::new();
    for e in load_regulators(&data("tables/regulators.tsv")).unwrap() {
        let mut r = small_dk_report(&e, &t).unwrap();
        if e.dk == 5 {
            let pairs = load_field_table(&data("fields/malle_q5.tsv")).unwrap();
            r = database_iterate(&r, &pairs, 1_360_000);
        }
        out.insert(e.dk, r);
    }
    out
}

fn eval(key: &str) -> HighPrecisionReal {
    evaluate_quoted(key).unwrap()
}

#[test]
fn quoted_upper_bounds() {
    let mut failed = Vec::new();
    for (key, cells) in golden_section(&golden(), "upper") {
        let c = parse_rational(&cells[0]).unwrap();
        if !eval(&key).certainly_lt(&c) {
            failed.push(key);
        }
    }
    // the quoted 12.6359 sits below the true value 12.635929...
    assert_eq!(failed, vec!["q1(2,12,8)".to_string()]);
}

#[test]
fn quoted_floors() {
    for (key, cells) in golden_section(&golden(), "floor") {
        assert_eq!(certified_floor(&eval(&key)).to_string(), cells[0], "{key}");
    }
}

#[test]
fn quoted_ceilings() {
    let t = martinet();
    for (bound, cells) in golden_section(&golden(), "ceiling") {
        let x = HighPrecisionReal::from_rational(&parse_rational(&bound).unwrap(), 128);
        let c = t.class_number_ceiling(&x).unwrap();
        assert_eq!(c.degree.to_string(), cells[0], "{bound}");
        let quoted = if cells[2] == "n" { c.h_loose } else { c.h };
        assert_eq!(quoted.to_string(), cells[1], "{bound}");
        assert_eq!(fakeherm_core::fields::h4_upper_bound(c.h), fakeherm_core::fields::h4_upper_bound(c.h_loose));
    }
}

#[test]
fn discriminant_table() {
    let reports = reports();
    for (dk, cells) in golden_section(&golden(), "table") {
        let r = &reports[&dk.parse::<u64>().unwrap()];
        assert!(r.q2.certainly_lt(&parse_rational(&cells[0]).unwrap()), "q2 for {dk}");
        if cells[1] != "-" {
            assert!(r.q1_64.certainly_lt(&parse_rational(&cells[1]).unwrap()), "q1 for {dk}");
        }
        let got = [r.h4, r.dl_bound, r.rel_bound].map(|v| v.to_string());
        assert_eq!(got.as_slice(), &cells[2..5], "D_k = {dk}");
    }
}

#[test]
fn iteration_is_monotone() {
    for r in reports().values() {
        for w in r.rows.windows(2) {
            assert!(w[1].h4 <= w[0].h4 && w[1].dl_bound <= w[0].dl_bound);
        }
        for w in r.database.windows(2) {
            assert!(w[1].h4 <= w[0].h4 && w[1].dl_bound <= w[0].dl_bound);
        }
    }
}

#[test]
fn golden_ratio_database_steps() {
    let r = &reports()[&5];
    let pairs = load_field_table(&data("fields/malle_q5.tsv")).unwrap();
    assert_eq!(pairs.len(), 2556);
    for (bound, cells) in golden_section(&golden(), "malle") {
        let b: u64 = bound.parse().unwrap();
        let within = filter_by_bounds(&pairs, 5, b, u64::MAX);
        assert_eq!(within.len().to_string(), cells[0], "D_l <= {b}");
        if cells[1] != "-" {
            let h = within.iter().map(|p| p.ext.class_number()).max().unwrap();
            assert_eq!(h.to_string(), cells[1], "max h for D_l <= {b}");
        }
    }
    assert_eq!(r.database[0].count, 2556);
    assert_eq!(r.database[1].dl_bound, 140565);
    assert_eq!(r.database[2].dl_bound, 80733);
}

#[test]
fn large_discriminants() {
    let l = large_dk_report(&martinet()).unwrap();
    let cells = &golden_section(&golden(), "large")["33"];
    assert!(l.report.q2.certainly_lt(&parse_rational(&cells[0]).unwrap()));
    assert!(l.report.q1_64.certainly_lt(&parse_rational(&cells[1]).unwrap()));
    assert!(l.f1.certainly_lt(&parse_rational(&cells[5]).unwrap()));
    let got = [l.report.h4, l.dl_max, l.rel_max].map(|v| v.to_string());
    assert_eq!(got.as_slice(), &cells[2..5]);
    assert_eq!(l.dk_max.to_string(), cells[6]);
}
