use std::path::PathBuf;
use std::sync::OnceLock;

use fakeherm_core::classify::{
    check_submultiple, covolume, division_t_enumeration, enumerate_t0, hermitian_t_scan, prop1_filter, rank1_pair_scan,
    run_classification, split_primes, Assignment, Classification, ClassifyOptions, Database, TConfiguration, PRIME_CAP,
    RANK1_SMALL_CAP,
};
use fakeherm_core::arith::primes_up_to;
use fakeherm_core::fields::SplitInK;
use fakeherm_core::ingest::{golden_section, load_database, load_golden, GoldenRow};
use fakeherm_core::parahoric::ParahoricCase;
use fakeherm_core::rational::parse_rational;
use fakeherm_core::zeta::{script_r, NumericConfig};
use fakeherm_core::{ExactRational, FieldPair};
use rug::Integer;

fn data() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data")
}

fn golden() -> Vec<GoldenRow> {
    load_golden(&data().join("golden/reference.tsv")).unwrap()
}

fn db() -> &'static Database {
    static DB: OnceLock<Database> = OnceLock::new();
    DB.get_or_init(|| load_database(&data()).unwrap())
}

fn full() -> &'static Classification {
    static RUN: OnceLock<Classification> = OnceLock::new();
    RUN.get_or_init(|| run_classification(db(), &ClassifyOptions::default()).unwrap())
}

fn pair(label: &str) -> &'static FieldPair {
    db().pairs.iter().find(|p| p.label == label).unwrap_or_else(|| panic!("{label} missing"))
}

fn r_of(label: &str) -> ExactRational {
    script_r(pair(label), &NumericConfig::default()).unwrap().value
}

fn q(s: &str) -> ExactRational {
    parse_rational(s).unwrap()
}

/// Parses `dd|p:case,p:case` for a pair over Q.
fn config(p: &FieldPair, key: &str) -> TConfiguration {
    let (dd, rest) = key.split_once('|').unwrap();
    let assignments = rest
        .split(',')
        .map(|s| {
            let (prime, case) = s.split_once(':').unwrap();
            let (place, split) = p.local_data(prime.parse().unwrap()).unwrap()[0];
            Assignment { place, split, case: case.parse().unwrap() }
        })
        .collect();
    TConfiguration::new(assignments, dd.parse().unwrap(), 1).unwrap()
}

#[test]
fn covolumes_of_the_sqrt_minus_7_configurations() {
    let p = pair("Q(sqrt-7)");
    let r = r_of("Q(sqrt-7)");
    assert_eq!(r, q("1/5040"));
    for (key, cells) in golden_section(&golden(), "covolume") {
        assert_eq!(covolume(&r, &config(p, &key)).unwrap(), q(&cells[0]), "{key}");
    }
}

/// Primes the golden table leaves out although a place of `k` over them
/// splits in `l`.
const SPLIT_TABLE_OMISSIONS: [(&str, &[u64]); 2] = [("C2", &[2, 47]), ("F1", &[2])];

#[test]
fn split_prime_table() {
    let mut extra = Vec::new();
    for (label, cells) in golden_section(&golden(), "split") {
        let want: Vec<u64> = cells.iter().map(|c| c.parse().unwrap()).collect();
        let got: Vec<u64> = if label == "k5" {
            let k = &pair("C1").base;
            primes_up_to(PRIME_CAP).into_iter().filter(|&p| k.splitting_of(p) == SplitInK::Split).collect()
        } else {
            split_primes(pair(&label), PRIME_CAP).unwrap()
        };
        assert!(want.iter().all(|p| got.contains(p)), "{label}: {got:?} misses part of {want:?}");
        let more: Vec<u64> = got.into_iter().filter(|p| !want.contains(p)).collect();
        if !more.is_empty() {
            extra.push((label, more));
        }
    }
    let documented: Vec<(String, Vec<u64>)> =
        SPLIT_TABLE_OMISSIONS.iter().map(|(l, ps)| (l.to_string(), ps.to_vec())).collect();
    assert_eq!(extra, documented);
}

#[test]
fn omitted_places_really_split() {
    // 2 and 47 are inert in Q(sqrt5) and split in Q(sqrt-15) resp. Q(sqrt-55).
    for (label, primes) in SPLIT_TABLE_OMISSIONS {
        for &p in primes {
            let data = pair(label).local_data(p).unwrap();
            assert_eq!(data.len(), 1);
            assert_eq!(data[0].0.q, p * p);
            assert_eq!(data[0].1, fakeherm_core::SplittingType::SplitInL, "{label} at {p}");
        }
    }
}

#[test]
fn power_of_two_filter_examples() {
    assert!(!prop1_filter(&r_of("C24")));
    assert!(prop1_filter(&r_of("Q(sqrt-47)")));
    assert!(prop1_filter(&r_of("F1")));
}

#[test]
fn t0_only_nonempty_for_sqrt_minus_7() {
    for (a, _) in golden_section(&golden(), "zeta-q") {
        let label = format!("Q(sqrt-{a})");
        let t0 = enumerate_t0(pair(&label), &r_of(&label), PRIME_CAP).unwrap();
        assert!(t0.beyond_cap.certified, "{label}");
        let want: Vec<Vec<u64>> = if a == "7" { vec![vec![2]] } else { Vec::new() };
        assert_eq!(t0.prime_sets(), want, "{label}");
    }
    for label in ["C1", "C2", "C3", "F1"] {
        let t0 = enumerate_t0(pair(label), &r_of(label), PRIME_CAP).unwrap();
        assert!(t0.beyond_cap.certified && t0.survivors.is_empty(), "{label}");
    }
}

#[test]
fn rank_one_pairs_over_19_and_29_for_c1() {
    let p = pair("C1");
    let r = r_of("C1");
    let place = |prime: u64| {
        let (v, s) = p.local_data(prime).unwrap()[0];
        assert_eq!(s, fakeherm_core::SplittingType::InertInL);
        Assignment { place: v, split: s, case: ParahoricCase::C3bi }
    };
    let v = covolume(&r, &TConfiguration::new(vec![place(19), place(29)], 1, 1).unwrap()).unwrap();
    assert!(!prop1_filter(&v), "{v}");
}

#[test]
fn scans_leave_t_empty_for_the_golden_ratio_survivors() {
    for label in ["C1", "C2", "C3", "F1"] {
        let r = r_of(label);
        let rank1 = rank1_pair_scan(pair(label), &r, RANK1_SMALL_CAP, PRIME_CAP).unwrap();
        assert!(rank1.failures.is_empty() && rank1.beyond_cap.certified, "{label}: {:?}", rank1.failures);
        let herm = hermitian_t_scan(pair(label), &r).unwrap();
        assert!(herm.t_empty && herm.beyond_cap.certified, "{label}: {:?}", herm.survivors);
        assert!(herm.prime_cap > PRIME_CAP);
    }
}

#[test]
fn division_configurations_for_sqrt_minus_7() {
    let p = pair("Q(sqrt-7)");
    let r = r_of("Q(sqrt-7)");
    let two = division_t_enumeration(p, &r, 2, PRIME_CAP).unwrap();
    let four = division_t_enumeration(p, &r, 4, PRIME_CAP).unwrap();
    assert!(two.beyond_cap.certified && four.beyond_cap.certified);
    let text = |e: &fakeherm_core::classify::DivisionEnumeration| -> Vec<String> {
        e.configurations.iter().map(|(c, v)| format!("{c} -> {v}")).collect()
    };
    assert_eq!(text(&two), ["D=2 {2:C2bi, 3:C3bi, 7:C4bi} -> 4/3"]);
    assert_eq!(text(&four), ["D=4 {2:C2a} -> 1/240", "D=4 {2:C2a, 3:C3bi, 7:C4bi} -> 4"]);
}

#[test]
fn submultiple_indices() {
    let none = Integer::from(1) << 20;
    assert_eq!(check_submultiple(&q("4/3"), 1, 1, &none), Some(Integer::from(8)));
    assert_eq!(check_submultiple(&q("1/240"), 1, 1, &none), Some(Integer::from(1)));
    assert_eq!(check_submultiple(&q("1/2"), 1, 1, &none), Some(Integer::from(2)));
    assert_eq!(check_submultiple(&q("3/2"), 1, 1, &none), None);
    assert_eq!(check_submultiple(&q("4/3"), 1, 1, &Integer::from(4)), None);
    assert_eq!(check_submultiple(&q("1/3"), 1, 1, &Integer::from(1)), None);
    assert_eq!(check_submultiple(&q("3/4"), 1, 3, &none), Some(Integer::from(3)));
}

#[test]
fn pipeline_survivors() {
    let c = full();
    assert!(c.unverifiable.is_empty(), "{:?}", c.unverifiable);
    let counts: Vec<usize> = c.bound_stage.iter().map(|s| s.count).collect();
    assert_eq!(counts, [121, 50, 13, 12, 4, 3, 2, 2, 1, 8, 414]);
    let d2: Vec<(&str, String)> =
        c.r_values.iter().filter(|r| r.d == 2 && r.power_of_2).map(|r| (r.label.as_str(), r.script_r.to_string())).collect();
    assert_eq!(
        d2,
        [("C1", "1/144000".into()), ("C2", "1/32400".into()), ("C3", "1/7680".into()), ("k5.1025.1", "1/720".into()), ("F1", "1/48".into())]
    );
    let d1: Vec<&str> = c.r_values.iter().filter(|r| r.d == 1 && r.power_of_2).map(|r| r.label.as_str()).collect();
    assert_eq!(d1.len(), 10);
    assert_eq!(c.theorem.hermitian, ["C1", "C2", "C3", "k5.1025.1", "F1"]);
    assert_eq!(c.theorem.division, [("Q(sqrt-7)".to_string(), vec![2u8, 4], vec![vec![2u64]])]);
    for cand in &c.candidates {
        assert!(cand.power_of_2 && cand.within_ceiling && cand.e_exceeds, "{}", cand.config_text);
        assert!(cand.submultiple_index.is_some(), "{}", cand.config_text);
    }
}

#[test]
fn pipeline_is_deterministic() {
    let a = serde_json::to_string(full()).unwrap();
    let b = serde_json::to_string(&run_classification(db(), &ClassifyOptions::default()).unwrap()).unwrap();
    assert_eq!(a, b);
}
