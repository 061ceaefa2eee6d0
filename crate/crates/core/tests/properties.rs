use std::path::PathBuf;
use std::sync::OnceLock;

use fakeherm_core::arith::{is_fundamental_discriminant, prime_factors, primes_up_to};
use fakeherm_core::bounds::{index_bound, p1, q1, MartinetTable};
use fakeherm_core::classify::search::{search, PlaceOption};
use fakeherm_core::classify::{Assignment, Database};
use fakeherm_core::fields::{splitting_by_characters, splitting_by_polynomial, SplitInK};
use fakeherm_core::ingest::{load_database, parse_snapshot, serialize_snapshot, Record, Snapshot, SnapshotKind};
use fakeherm_core::parahoric::{density, e_factor, e_prime, ParahoricCase};
use fakeherm_core::rational::{numerator_is_power_of_2, rational_reconstruct};
use fakeherm_core::zeta::{bernoulli, zeta_k_neg, zeta_quadratic_neg_numeric, BERNOULLI_CAP};
use fakeherm_core::{HighPrecisionReal, Place, SplittingType};
use proptest::prelude::*;
use rug::{Integer, Rational};

fn db() -> &'static Database {
    static DB: OnceLock<Database> = OnceLock::new();
    DB.get_or_init(|| load_database(&PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data")).unwrap())
}

fn prime_powers_up_to(n: u64) -> Vec<u64> {
    (2..=n)
        .filter(|&q| {
            let mut f = prime_factors(q);
            f.dedup();
            f.len() == 1
        })
        .collect()
}

proptest! {
    #[test]
    fn reconstruct_round_trip(num in -1000i64..=1000, den in 1u64..=1000) {
        let x = Rational::from((num, den));
        let eps = Rational::from((1, 1u64 << 40));
        let enc = HighPrecisionReal::from_rational(&x, 128).widen(&eps);
        prop_assert_eq!(rational_reconstruct(&enc, 1000).unwrap(), x);
    }

    #[test]
    fn snapshot_round_trip(
        version in "[0-9]{4}-[0-9]{2}-[0-9]{2}",
        provenance in prop::collection::vec("[a-zA-Z0-9 ,.()]{1,30}", 0..3),
        rows in prop::collection::vec(prop::collection::vec("[a-zA-Z0-9.,/;:+-]{0,12}", 3), 0..20),
    ) {
        let s = Snapshot {
            kind: SnapshotKind::Golden,
            version,
            provenance: provenance.into_iter().map(|p| p.trim().to_string()).filter(|p| !p.is_empty()).collect(),
            columns: vec!["section".into(), "key".into(), "cells".into()],
            records: rows
                .into_iter()
                .filter(|r| !r.join("\t").trim().is_empty() && !r[0].starts_with('#'))
                .enumerate()
                .map(|(i, cells)| Record { line: i + 1, cells })
                .collect(),
        };
        let text = serialize_snapshot(&s);
        let mut back = parse_snapshot(&text, SnapshotKind::Golden).unwrap();
        for r in &mut back.records {
            r.line = 0;
        }
        let mut want = s.clone();
        for r in &mut want.records {
            r.line = 0;
        }
        prop_assert_eq!(back, want);
    }

    #[test]
    fn q1_and_p1_decrease_in_dk_and_grow_in_h4(a in 0usize..9, b in 0usize..9, h in 0u32..6) {
        let dks = [5u64, 8, 12, 13, 17, 21, 24, 28, 29];
        let (lo, hi) = (dks[a.min(b)], dks[a.max(b)]);
        let h4 = 1u64 << h;
        prop_assert!(!q1(2, lo, h4).certainly_lt_real(&q1(2, hi, h4)));
        prop_assert!(!p1(2, lo, h4).certainly_lt_real(&p1(2, hi, h4)));
        prop_assert!(q1(2, lo, h4).certainly_lt_real(&q1(2, lo, 2 * h4)));
        prop_assert!(p1(2, lo, h4).certainly_lt_real(&p1(2, lo, 2 * h4)));
    }

    #[test]
    fn class_number_ceiling_is_monotone(x in 900u32..1898, y in 900u32..1898) {
        let t = martinet();
        let (lo, hi) = (x.min(y), x.max(y));
        let at = |v: u32| t.class_number_ceiling(&HighPrecisionReal::from_rational(&Rational::from((v, 100)), 128)).unwrap().h;
        prop_assert!(at(lo) <= at(hi));
    }

    #[test]
    fn index_bound_is_monotone(d in 1u32..3, t in 0u32..6, h in 1u64..64) {
        prop_assert_eq!(index_bound(d, 1, t + 1, h), index_bound(d, 1, t, h) * 4u32);
        prop_assert!(index_bound(d, 1, t, h) <= index_bound(d, 1, t, h + 1));
    }

    #[test]
    fn pruned_search_matches_brute_force(
        seed_r in (1u64..50, 1u64..5000),
        picks in prop::collection::vec((0usize..12, prop::collection::vec(0usize..22, 1..3)), 1..6),
        c in 1u64..300,
    ) {
        let r = Rational::from(seed_r);
        let qs = [2u64, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19];
        let mut options: Vec<PlaceOption> = Vec::new();
        for (i, (qi, cases)) in picks.into_iter().enumerate() {
            let split = ParahoricCase::ALL[cases[0]].splitting();
            let cases: Vec<ParahoricCase> = cases
                .into_iter()
                .map(|c| ParahoricCase::ALL[c])
                .filter(|c| c.splitting() == split && !c.is_unramified_special())
                .collect::<std::collections::BTreeSet<_>>()
                .into_iter()
                .collect();
            let place = Place { p: 1000 + i as u64, q: qs[qi], in_k: SplitInK::Split, index: 0 };
            options.push(PlaceOption { place, split, cases });
        }
        let ceiling = |t: usize| Rational::from(Integer::from(c) << (2 * t as u32));
        let accept = |_: &[Assignment]| true;
        let mut got: Vec<String> = search(&r, options.clone(), 4, &ceiling, &accept)
            .survivors
            .iter()
            .map(|s| {
                let mut a = s.assignments.clone();
                a.sort_by_key(|a| (a.place, a.case));
                format!("{a:?}")
            })
            .collect();
        got.sort();
        let mut want = Vec::new();
        brute(&r, &options, 0, &mut Vec::new(), &ceiling, &mut want);
        want.sort();
        prop_assert_eq!(got, want);
    }
}

fn brute(r: &Rational, options: &[PlaceOption], i: usize, chosen: &mut Vec<Assignment>, ceil: &dyn Fn(usize) -> Rational, out: &mut Vec<String>) {
    if i == options.len() {
        let v = chosen.iter().fold(r.clone(), |acc, a| acc * a.e_prime());
        if !chosen.is_empty() && v <= ceil(chosen.len()) && numerator_is_power_of_2(&v) {
            let mut sorted = chosen.clone();
            sorted.sort_by_key(|a| (a.place, a.case));
            out.push(format!("{sorted:?}"));
        }
        return;
    }
    brute(r, options, i + 1, chosen, ceil, out);
    for case in &options[i].cases {
        chosen.push(Assignment { place: options[i].place, split: options[i].split, case: *case });
        brute(r, options, i + 1, chosen, ceil, out);
        chosen.pop();
    }
}

fn martinet() -> MartinetTable {
    db().martinet.clone()
}

#[test]
fn e_prime_is_an_integer_and_increasing() {
    let qs = prime_powers_up_to(1000);
    for case in ParahoricCase::ALL {
        let mut last = Integer::from(0);
        for &q in &qs {
            let exact = e_factor(case, q) * density(case.splitting(), q);
            assert_eq!(*exact.denom(), 1, "{case} at {q}");
            let e = e_prime(case, q);
            assert_eq!(exact, Rational::from(&e), "{case} at {q}");
            assert!(e >= 1);
            if case.is_unramified_special() {
                assert_eq!(e, 1);
            } else {
                assert!(e > last, "{case} at {q}");
                last = e;
            }
        }
    }
}

#[test]
fn bernoulli_recurrence() {
    for n in 1..BERNOULLI_CAP {
        let mut s = Rational::new();
        for k in 0..=n {
            s += Rational::from(Integer::from(Integer::binomial_u(n + 1, k))) * bernoulli(k).unwrap();
        }
        assert_eq!(s, 0, "n = {n}");
    }
}

#[test]
fn siegel_sums_match_functional_equation() {
    let tol = Rational::from((1, 1_000_000_000u64));
    for dk in (5..=100u64).filter(|&d| is_fundamental_discriminant(d as i64)) {
        for j in [1u32, 2] {
            let exact = zeta_k_neg(dk, 2 * j - 1).unwrap();
            let numeric = zeta_quadratic_neg_numeric(dk, j, 192).unwrap();
            let lo = Rational::from(&exact - &tol);
            let hi = Rational::from(&exact + &tol);
            assert!(numeric.certainly_gt(&lo) && numeric.certainly_lt(&hi), "D_k = {dk}, j = {j}");
        }
    }
}

#[test]
fn splitting_by_polynomial_matches_characters() {
    let mut checked = 0;
    for pair in db().pairs.iter().filter(|p| p.degree() == 2 && p.ext.galois.is_abelian() && p.ext.disc <= 61175) {
        for p in primes_up_to(1000) {
            let mut by_poly: Vec<SplittingType> = Vec::new();
            let mut by_char: Vec<SplittingType> = Vec::new();
            for v in pair.places_above(p) {
                by_poly.push(splitting_by_polynomial(pair, &v).unwrap());
                by_char.push(splitting_by_characters(pair, &v).unwrap());
            }
            by_poly.sort();
            by_char.sort();
            assert_eq!(by_poly, by_char, "{} at {p}", pair.label);
            checked += 1;
        }
    }
    assert!(checked > 10_000, "{checked}");
}
