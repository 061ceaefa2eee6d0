//! The search itself: covolumes of principal arithmetic subgroups, the
//! power-of-2 filter, and the enumeration of the exceptional set `T`.

pub mod search;

use std::collections::BTreeSet;
use std::fmt;

use rayon::prelude::*;
use rug::{Integer, Rational};
use serde::Serialize;

use crate::arith::{is_prime, prime_factors, primes_up_to};
use crate::bounds::{self, BoundReport, LargeDkReport, MartinetTable, RegulatorEntry};
use crate::error::{ClassifyError, FieldError};
use crate::fields::{h4, FieldPair, Place, SplittingType};
use crate::parahoric::{e_prime, t0_minimal_multiple, ParahoricCase};
use crate::rational::{numerator_is_power_of_2, ExactRational};
use crate::real::HighPrecisionReal;
use crate::zeta::{functional_eq_zeta, l3_from_minus2, script_r, NumericConfig, ScriptR};
use search::{search, PlaceOption, Survivor};
use ParahoricCase::*;

/// Places over primes up to this bound are enumerated explicitly.
pub const PRIME_CAP: u64 = 71;

/// Below this, a pair of rank-1 places is ruled out by the numerator test.
pub const RANK1_SMALL_CAP: u64 = 29;

/// `D_l` bound for `k = Q`.
pub const D1_DL_MAX: u64 = 1363;

/// Number of real places where `G` is isotropic.
pub const ISOTROPIC_REAL_PLACES: u32 = 1;

/// Factor by which the covolume ceiling grows per place of `T`.
const CEILING_GROWTH: u32 = 4;

const E_CHECK_PREC: u32 = 128;

/// A parahoric case at a place.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Assignment {
    pub place: Place,
    pub split: SplittingType,
    pub case: ParahoricCase,
}

impl Assignment {
    pub fn e_prime(&self) -> Integer {
        e_prime(self.case, self.place.q)
    }
}

/// The exceptional set `T` with its cases, the degree of the division
/// algebra and the number of isotropic real places.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TConfiguration {
    pub assignments: Vec<Assignment>,
    pub division_degree: u8,
    pub isotropic_real_places: u32,
}

impl TConfiguration {
    pub fn new(mut assignments: Vec<Assignment>, division_degree: u8, isotropic_real_places: u32) -> Result<Self, ClassifyError> {
        assignments.sort();
        let c = TConfiguration { assignments, division_degree, isotropic_real_places };
        c.validate()?;
        Ok(c)
    }

    /// Empty `T`, `D = l`.
    pub fn trivial() -> Self {
        TConfiguration { assignments: Vec::new(), division_degree: 1, isotropic_real_places: ISOTROPIC_REAL_PLACES }
    }

    fn validate(&self) -> Result<(), ClassifyError> {
        let bad = |m: String| Err(ClassifyError::InvalidConfig(m));
        if ![1, 2, 4].contains(&self.division_degree) {
            return bad(format!("division algebra degree {}", self.division_degree));
        }
        for a in &self.assignments {
            a.case.check(a.split)?;
        }
        let places: BTreeSet<Place> = self.assignments.iter().map(|a| a.place).collect();
        if places.len() != self.assignments.len() {
            return bad("a place carries two cases".into());
        }
        let t0: Vec<&Assignment> = self.t0().collect();
        match self.division_degree {
            1 if !t0.is_empty() => return bad("T_0 must be empty when D = l".into()),
            2 | 4 if t0.is_empty() => return bad("T_0 must be nonempty when D != l".into()),
            2 if t0.iter().any(|a| a.case == C2a) => return bad("local degree 4 needs a division algebra of degree 4".into()),
            4 if t0.iter().all(|a| a.case != C2a) => return bad("degree 4 needs a place of local degree 4".into()),
            _ => {}
        }
        if !self.rank_one_count().is_multiple_of(2) {
            return bad("odd number of rank-1 places not split in l".into());
        }
        Ok(())
    }

    pub fn t0(&self) -> impl Iterator<Item = &Assignment> {
        self.assignments.iter().filter(|a| a.case.in_t0())
    }

    pub fn rank_one_count(&self) -> usize {
        self.assignments.iter().filter(|a| a.case.is_rank_one_nonsplit()).count()
    }

    /// `#T`: places with `e' != 1`.
    pub fn size(&self) -> usize {
        self.assignments.iter().filter(|a| !a.case.is_unramified_special()).count()
    }

    pub fn e_prime_product(&self) -> Integer {
        self.assignments.iter().map(Assignment::e_prime).product()
    }
}

impl fmt::Display for TConfiguration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.assignments.iter().map(|a| format!("{}:{}", a.place, a.case)).collect();
        write!(f, "D={} {{{}}}", self.division_degree, parts.join(", "))
    }
}

/// `2^{d + 2r + 2#T} h_{l,4}`: the largest index of `Lambda` in its
/// normalizer, and the largest covolume of `Lambda` that can still yield a
/// lattice of Euler characteristic 1.
pub fn ceiling(d: u8, r: u32, t_size: usize, h4: u64) -> ExactRational {
    Rational::from(bounds::index_bound(d as u32, r, t_size as u32, h4))
}

/// `mu(G/Lambda) = R prod_{v in T} e'(P_v)`.
pub fn covolume(r: &ExactRational, config: &TConfiguration) -> Result<ExactRational, ClassifyError> {
    config.validate()?;
    Ok(Rational::from(r * config.e_prime_product()))
}

/// Keep iff the numerator of `R` is a power of 2.
pub fn prop1_filter(r: &ExactRational) -> bool {
    numerator_is_power_of_2(r)
}

/// Rational primes `p <= cap` below some place of `k` that splits in `l`.
pub fn split_primes(pair: &FieldPair, cap: u64) -> Result<Vec<u64>, FieldError> {
    let mut out = Vec::new();
    for p in primes_up_to(cap) {
        if pair.local_data(p)?.iter().any(|(_, s)| *s == SplittingType::SplitInL) {
            out.push(p);
        }
    }
    Ok(out)
}

fn options_up_to(pair: &FieldPair, cap: u64, cases: impl Fn(SplittingType) -> Vec<ParahoricCase>) -> Result<Vec<PlaceOption>, FieldError> {
    let mut out = Vec::new();
    for p in primes_up_to(cap) {
        for (place, split) in pair.local_data(p)? {
            out.push(PlaceOption { place, split, cases: cases(split) });
        }
    }
    Ok(out)
}

fn next_prime(n: u64) -> u64 {
    (n + 1..).find(|&m| is_prime(m)).expect("primes are unbounded")
}

/// Largest prime ramified in `l`.
fn max_ramified_prime(pair: &FieldPair) -> u64 {
    prime_factors(pair.ext.disc).into_iter().max().unwrap_or(1)
}

/// Certificate that no place over a prime beyond the explicit range can
/// join `T`: its smallest `e'` already pushes `R e'` over the ceiling, with
/// `slack` covering cheap places (factor at most the ceiling growth) in the
/// explicit range.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BeyondCap {
    pub prime: u64,
    #[serde(serialize_with = "ser_integer")]
    pub min_e_prime: Integer,
    #[serde(serialize_with = "crate::report::ser_rational")]
    pub value: ExactRational,
    #[serde(serialize_with = "crate::report::ser_rational")]
    pub ceiling: ExactRational,
    pub certified: bool,
}

fn ser_integer<S: serde::Serializer>(x: &Integer, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

fn slack(options: &[PlaceOption]) -> ExactRational {
    options
        .iter()
        .filter(|o| !o.cases.is_empty())
        .map(|o| o.min_factor())
        .filter(|m| *m <= CEILING_GROWTH)
        .fold(Rational::from(1), |acc, m| acc * Rational::from((m, CEILING_GROWTH)))
}

fn beyond(r: &ExactRational, prime: u64, min_e: Integer, slack: &ExactRational, ceil1: ExactRational) -> BeyondCap {
    let value = Rational::from(r * &min_e) * slack;
    BeyondCap { prime, certified: value > ceil1, min_e_prime: min_e, value, ceiling: ceil1 }
}

fn t0_cases(split: SplittingType) -> Vec<ParahoricCase> {
    match split {
        SplittingType::SplitInL => vec![C2a, C2bi, C2bii],
        _ => Vec::new(),
    }
}

/// Surviving choices of `T_0` for one pair.
#[derive(Clone, Debug, Serialize)]
pub struct T0Report {
    pub prime_cap: u64,
    pub survivors: Vec<Survivor>,
    pub beyond_cap: BeyondCap,
    pub nodes: u64,
}

impl T0Report {
    /// Distinct place sets among the survivors.
    pub fn place_sets(&self) -> Vec<Vec<Place>> {
        let sets: BTreeSet<Vec<Place>> =
            self.survivors.iter().map(|s| s.assignments.iter().map(|a| a.place).collect()).collect();
        sets.into_iter().collect()
    }

    /// Rational primes under the surviving sets.
    pub fn prime_sets(&self) -> Vec<Vec<u64>> {
        let sets: BTreeSet<Vec<u64>> = self
            .place_sets()
            .iter()
            .map(|s| s.iter().map(|v| v.p).collect::<BTreeSet<u64>>().into_iter().collect())
            .collect();
        sets.into_iter().collect()
    }
}

/// Nonempty sets of places split in `l` (over primes `<= prime_cap`), each
/// with a `T_0` case, for which `R prod e'` has a power-of-2 numerator and
/// stays within the ceiling.
pub fn enumerate_t0(pair: &FieldPair, r: &ExactRational, prime_cap: u64) -> Result<T0Report, ClassifyError> {
    let d = pair.degree();
    let hl4 = h4(&pair.ext);
    let options = options_up_to(pair, prime_cap, t0_cases)?;
    let ceil = |t: usize| ceiling(d, ISOTROPIC_REAL_PLACES, t, hl4);
    let out = search(r, options.clone(), CEILING_GROWTH, &ceil, &|_: &[Assignment]| true);
    let prime = next_prime(prime_cap);
    let b = beyond(r, prime, t0_minimal_multiple(prime), &slack(&options), ceil(1));
    Ok(T0Report { prime_cap, survivors: out.survivors, beyond_cap: b, nodes: out.nodes })
}

fn rank_one_cases(split: SplittingType) -> Vec<ParahoricCase> {
    match split {
        SplittingType::SplitInL => Vec::new(),
        SplittingType::InertInL => vec![C3bi, C3bii],
        SplittingType::RamifiedInL => vec![C4bi, C4bii, C4biii],
    }
}

/// Result of the scan over pairs of rank-1 places not split in `l`.
#[derive(Clone, Debug, Serialize)]
pub struct Rank1Report {
    pub small_cap: u64,
    pub big_cap: u64,
    pub pairs_checked: usize,
    /// Pairs contradicting the expected verdict.
    pub failures: Vec<String>,
    pub beyond_cap: BeyondCap,
    pub t1_empty: bool,
}

/// For every two distinct places `v', v''` not split in `l`, over primes
/// `<= big_cap`, and every rank-1 case at each: when both primes are
/// `<= small_cap` the numerator of `R e'(v') e'(v'')` must not be a power of
/// 2; otherwise the product must exceed 1.
pub fn rank1_pair_scan(pair: &FieldPair, r: &ExactRational, small_cap: u64, big_cap: u64) -> Result<Rank1Report, ClassifyError> {
    let options: Vec<PlaceOption> =
        options_up_to(pair, big_cap, rank_one_cases)?.into_iter().filter(|o| !o.cases.is_empty()).collect();
    let mut failures = Vec::new();
    let mut checked = 0;
    for (i, a) in options.iter().enumerate() {
        for b in &options[i + 1..] {
            for ca in &a.cases {
                for cb in &b.cases {
                    checked += 1;
                    let v = Rational::from(r * e_prime(*ca, a.place.q)) * e_prime(*cb, b.place.q);
                    let small = a.place.p <= small_cap && b.place.p <= small_cap;
                    let ok = if small { !numerator_is_power_of_2(&v) } else { v > 1 };
                    if !ok {
                        failures.push(format!("{}:{} {}:{} -> {}", a.place, ca, b.place, cb, v));
                    }
                }
            }
        }
    }
    let partner = options.iter().map(|o| o.min_factor()).min().unwrap_or_else(|| Integer::from(1));
    let prime = next_prime(big_cap.max(max_ramified_prime(pair)));
    let b = beyond(r, prime, e_prime(C3bi, prime) * partner, &Rational::from(1), Rational::from(1));
    let t1_empty = failures.is_empty() && b.certified;
    Ok(Rank1Report { small_cap, big_cap, pairs_checked: checked, failures, beyond_cap: b, t1_empty })
}

fn hermitian_cases(split: SplittingType) -> Vec<ParahoricCase> {
    ParahoricCase::compatible_with(split).filter(|c| !c.is_unramified_special() && !c.in_t0()).collect()
}

/// Result of the search for a nonempty `T` when `D = l`.
#[derive(Clone, Debug, Serialize)]
pub struct HermitianReport {
    /// Explicit range: places over primes below this.
    pub prime_cap: u64,
    pub single_places_checked: usize,
    pub survivors: Vec<Survivor>,
    pub beyond_cap: BeyondCap,
    pub t_empty: bool,
    pub nodes: u64,
}

/// Searches every set of places with non-special cases (rank-1 cases at an
/// even number of places not split in `l`) for a power-of-2 numerator within
/// the ceiling. The explicit range extends past `PRIME_CAP` until the
/// smallest non-special `e'` certifies every larger prime.
pub fn hermitian_t_scan(pair: &FieldPair, r: &ExactRational) -> Result<HermitianReport, ClassifyError> {
    let d = pair.degree();
    let hl4 = h4(&pair.ext);
    let ceil = |t: usize| ceiling(d, ISOTROPIC_REAL_PLACES, t, hl4);
    let unramified_min = |q: u64| e_prime(C1b, q).min(e_prime(C3bi, q)).min(e_prime(C3aii, q));
    let mut cap = next_prime(PRIME_CAP.max(max_ramified_prime(pair)));
    loop {
        let options = options_up_to(pair, cap - 1, hermitian_cases)?;
        let b = beyond(r, cap, unramified_min(cap), &slack(&options), ceil(1));
        if b.certified {
            let singles = options.iter().map(|o| o.cases.len()).sum();
            let even = |s: &[Assignment]| s.iter().filter(|a| a.case.is_rank_one_nonsplit()).count() % 2 == 0;
            let out = search(r, options, CEILING_GROWTH, &ceil, &even);
            return Ok(HermitianReport {
                prime_cap: cap,
                single_places_checked: singles,
                t_empty: out.survivors.is_empty(),
                survivors: out.survivors,
                beyond_cap: b,
                nodes: out.nodes,
            });
        }
        cap = next_prime(cap);
    }
}

/// Configurations for `k = Q` with a division algebra of degree `dd`: `T`
/// contains a nonempty `T_0`, an even number of rank-1 places (at least two
/// when `dd = 2`), and any other non-special places over primes `<= prime_cap`.
#[derive(Clone, Debug, Serialize)]
pub struct DivisionEnumeration {
    pub division_degree: u8,
    pub prime_cap: u64,
    pub configurations: Vec<(TConfiguration, String)>,
    pub beyond_cap: BeyondCap,
    pub nodes: u64,
}

pub fn division_t_enumeration(pair: &FieldPair, r: &ExactRational, dd: u8, prime_cap: u64) -> Result<DivisionEnumeration, ClassifyError> {
    let d = pair.degree();
    let hl4 = h4(&pair.ext);
    let ceil = |t: usize| ceiling(d, ISOTROPIC_REAL_PLACES, t, hl4);
    let cases = |split: SplittingType| -> Vec<ParahoricCase> {
        ParahoricCase::compatible_with(split)
            .filter(|c| !c.is_unramified_special())
            .filter(|c| dd == 4 || *c != C2a)
            .collect()
    };
    let options = options_up_to(pair, prime_cap, cases)?;
    let accept = |s: &[Assignment]| {
        let rank1 = s.iter().filter(|a| a.case.is_rank_one_nonsplit()).count();
        let t0: Vec<&Assignment> = s.iter().filter(|a| a.case.in_t0()).collect();
        !t0.is_empty()
            && rank1 % 2 == 0
            && (dd != 2 || rank1 >= 2)
            && (dd != 4 || t0.iter().any(|a| a.case == C2a))
    };
    let out = search(r, options.clone(), CEILING_GROWTH, &ceil, &accept);
    let mut configurations = Vec::new();
    for s in out.survivors {
        let c = TConfiguration::new(s.assignments, dd, ISOTROPIC_REAL_PLACES)?;
        configurations.push((c, s.value.to_string()));
    }
    let prime = next_prime(prime_cap.max(max_ramified_prime(pair)));
    let min_e = e_prime(C1b, prime).min(e_prime(C2bi, prime)).min(e_prime(C3bi, prime));
    let b = beyond(r, prime, min_e, &slack(&options), ceil(1));
    Ok(DivisionEnumeration { division_degree: dd, prime_cap, configurations, beyond_cap: b, nodes: out.nodes })
}

/// Smallest admissible index `[Gamma : Lambda]` (a power of 2 times a
/// divisor of `h_{l,4}`, at most `index_max`) that turns `mu` into `1/n`
/// with `n >= 4^r`.
pub fn check_submultiple(mu: &ExactRational, r: u32, h4: u64, index_max: &Integer) -> Option<Integer> {
    if *mu <= 0 {
        return None;
    }
    let mut indices = BTreeSet::new();
    for t in (1..=h4).filter(|t| h4.is_multiple_of(*t)) {
        let mut i = Integer::from(t);
        while i <= *index_max {
            indices.insert(i.clone());
            i <<= 1;
        }
    }
    let four_r = Integer::from(1) << (2 * r);
    indices.into_iter().find(|i| {
        let x = Rational::from(mu / i);
        *x.numer() == 1 && *x.denom() >= four_r
    })
}

/// `E = zeta_k(2) L_{l|k}(3) zeta_k(4) prod e'` against `4^{#T}`.
pub fn e_check(pair: &FieldPair, r: &ScriptR, config: &TConfiguration) -> Result<bool, ClassifyError> {
    let e = e_value(pair, r, config)?;
    let bound = Rational::from(Integer::from(1) << (2 * config.size() as u32));
    Ok(e.certainly_gt(&bound))
}

/// One emitted configuration with all its verdicts.
#[derive(Clone, Debug, Serialize)]
pub struct CandidateReport {
    pub label: String,
    pub d: u8,
    pub dk: u64,
    pub dl: u64,
    pub h4: u64,
    pub config: TConfiguration,
    pub config_text: String,
    #[serde(serialize_with = "crate::report::ser_rational")]
    pub script_r: ExactRational,
    #[serde(serialize_with = "ser_integer")]
    pub e_prime_product: Integer,
    #[serde(serialize_with = "crate::report::ser_rational")]
    pub covolume: ExactRational,
    #[serde(serialize_with = "ser_integer")]
    pub index_bound: Integer,
    pub power_of_2: bool,
    pub within_ceiling: bool,
    pub submultiple_index: Option<String>,
    pub e_exceeds: bool,
}

impl CandidateReport {
    pub fn build(pair: &FieldPair, r: &ScriptR, config: TConfiguration) -> Result<Self, ClassifyError> {
        let hl4 = h4(&pair.ext);
        let cov = covolume(&r.value, &config)?;
        let t = config.size();
        let idx = bounds::index_bound(pair.degree() as u32, ISOTROPIC_REAL_PLACES, t as u32, hl4);
        let sub = check_submultiple(&cov, ISOTROPIC_REAL_PLACES, hl4, &idx).map(|i| i.to_string());
        let e_exceeds = e_check(pair, r, &config)?;
        Ok(CandidateReport {
            label: pair.label.clone(),
            d: pair.degree(),
            dk: pair.base.disc(),
            dl: pair.ext.disc,
            h4: hl4,
            config_text: config.to_string(),
            e_prime_product: config.e_prime_product(),
            power_of_2: numerator_is_power_of_2(&cov),
            within_ceiling: cov <= ceiling(pair.degree(), ISOTROPIC_REAL_PLACES, t, hl4),
            covolume: cov,
            index_bound: idx,
            submultiple_index: sub,
            e_exceeds,
            script_r: r.value.clone(),
            config,
        })
    }
}

/// A pair the pipeline could not decide, with the reason.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Unverifiable {
    pub label: String,
    pub reason: String,
}

/// Everything the classification needs, loaded once.
#[derive(Clone, Debug)]
pub struct Database {
    pub pairs: Vec<FieldPair>,
    pub martinet: MartinetTable,
    pub regulators: Vec<RegulatorEntry>,
}

#[derive(Clone, Debug)]
pub struct ClassifyOptions {
    pub numeric: NumericConfig,
    pub prime_cap: u64,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions { numeric: NumericConfig::default(), prime_cap: PRIME_CAP }
    }
}

/// `R` for one candidate pair.
#[derive(Clone, Debug, Serialize)]
pub struct RValue {
    pub label: String,
    pub d: u8,
    pub dk: u64,
    pub dl: u64,
    #[serde(serialize_with = "crate::report::ser_rational")]
    pub zeta_m1: ExactRational,
    #[serde(serialize_with = "crate::report::ser_rational")]
    pub l_m2: ExactRational,
    #[serde(serialize_with = "crate::report::ser_rational")]
    pub zeta_m3: ExactRational,
    #[serde(serialize_with = "crate::report::ser_rational")]
    pub script_r: ExactRational,
    pub path: String,
    pub power_of_2: bool,
}

/// Candidate counts per base field after the discriminant bounds.
#[derive(Clone, Debug, Serialize)]
pub struct BoundStage {
    pub dk: u64,
    pub dl_bound: u64,
    pub rel_bound: u64,
    pub count: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Theorem {
    /// Pairs with `D = l` and `T` empty.
    pub hermitian: Vec<String>,
    /// Pairs with `D != l`: label, possible degrees of `D`, primes of `T_0`.
    pub division: Vec<(String, Vec<u8>, Vec<Vec<u64>>)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Classification {
    pub bound_stage: Vec<BoundStage>,
    pub r_values: Vec<RValue>,
    pub t0: Vec<(String, Vec<Vec<u64>>, bool)>,
    pub rank1: Vec<(String, Rank1Report)>,
    pub hermitian: Vec<(String, HermitianReport)>,
    pub division: Vec<(String, DivisionEnumeration)>,
    pub candidates: Vec<CandidateReport>,
    pub unverifiable: Vec<Unverifiable>,
    pub theorem: Theorem,
}

/// Bound reports for every pinned small base field, with the database pass
/// for `D_k = 5`.
pub fn small_dk_reports(db: &Database) -> Result<Vec<BoundReport>, ClassifyError> {
    let mut out = Vec::new();
    for e in &db.regulators {
        let mut r = bounds::small_dk_report(e, &db.martinet).map_err(|x| ClassifyError::InvalidConfig(x.to_string()))?;
        if e.dk == 5 {
            let q2_4 = bounds::certified_floor(&r.q2.powi(4)).to_u64().expect("fits");
            let start = db.pairs.iter().filter(|p| p.base.disc() == 5).map(|p| p.ext.disc).max().unwrap_or(0).max(q2_4);
            r = bounds::database_iterate(&r, &db.pairs, start);
        }
        out.push(r);
    }
    Ok(out)
}

/// Pairs passing the discriminant bounds, grouped per base field.
pub fn bounded_candidates(db: &Database) -> Result<(Vec<BoundStage>, Vec<FieldPair>), ClassifyError> {
    let mut stages = Vec::new();
    let mut pairs = Vec::new();
    let mut take = |dk_match: &dyn Fn(u64) -> bool, dk: u64, dl: u64, rel: u64, pairs: &mut Vec<FieldPair>| {
        let hits: Vec<FieldPair> = db
            .pairs
            .iter()
            .filter(|p| p.degree() == 2 && dk_match(p.base.disc()) && p.ext.disc <= dl && p.relative_disc() <= rel)
            .cloned()
            .collect();
        stages.push(BoundStage { dk, dl_bound: dl, rel_bound: rel, count: hits.len() });
        pairs.extend(hits);
    };
    for r in small_dk_reports(db)? {
        take(&|x| x == r.dk, r.dk, r.dl_bound, r.rel_bound, &mut pairs);
    }
    let large: LargeDkReport = bounds::large_dk_report(&db.martinet).map_err(|x| ClassifyError::InvalidConfig(x.to_string()))?;
    let max = large.dk_max;
    take(&|x| (bounds::LARGE_DK_THRESHOLD..=max).contains(&x), bounds::LARGE_DK_THRESHOLD, large.dl_max, large.rel_max, &mut pairs);
    let d1: Vec<FieldPair> = db.pairs.iter().filter(|p| p.degree() == 1 && p.ext.disc <= D1_DL_MAX).cloned().collect();
    stages.push(BoundStage { dk: 1, dl_bound: D1_DL_MAX, rel_bound: D1_DL_MAX, count: d1.len() });
    pairs.extend(d1);
    Ok((stages, pairs))
}

fn r_value(p: &FieldPair, r: &ScriptR) -> RValue {
    RValue {
        label: p.label.clone(),
        d: p.degree(),
        dk: p.base.disc(),
        dl: p.ext.disc,
        zeta_m1: r.zeta_m1.clone(),
        l_m2: r.l_m2.clone(),
        zeta_m3: r.zeta_m3.clone(),
        script_r: r.value.clone(),
        path: r.path.to_string(),
        power_of_2: prop1_filter(&r.value),
    }
}

fn pair_order(p: &FieldPair) -> (u8, u64, u64, String) {
    (p.degree(), p.base.disc(), p.ext.disc, p.label.clone())
}

/// `R` for every pair, computed concurrently and reported in a fixed order,
/// with the power-of-2 survivors and the pairs whose `R` could not be
/// certified.
pub fn r_stage(mut pairs: Vec<FieldPair>, numeric: &NumericConfig) -> (Vec<RValue>, Vec<(FieldPair, ScriptR)>, Vec<Unverifiable>) {
    pairs.sort_by_key(pair_order);
    let computed: Vec<(FieldPair, Result<ScriptR, String>)> = pairs
        .into_par_iter()
        .map(|p| {
            let r = script_r(&p, numeric).map_err(|e| e.to_string());
            (p, r)
        })
        .collect();
    let mut unverifiable = Vec::new();
    let mut r_values = Vec::new();
    let mut survivors = Vec::new();
    for (p, r) in computed {
        match r {
            Ok(r) => {
                r_values.push(r_value(&p, &r));
                if prop1_filter(&r.value) {
                    survivors.push((p, r));
                }
            }
            Err(e) => unverifiable.push(Unverifiable { label: p.label.clone(), reason: e }),
        }
    }
    (r_values, survivors, unverifiable)
}

/// The full pipeline: discriminant bounds, `R` with the power-of-2 filter,
/// `T_0` elimination, then the scans for `D = l` and the enumeration for
/// `D != l`.
pub fn run_classification(db: &Database, opts: &ClassifyOptions) -> Result<Classification, ClassifyError> {
    let (bound_stage, pairs) = bounded_candidates(db)?;
    let (r_values, survivors, unverifiable) = r_stage(pairs, &opts.numeric);

    let mut out = Classification {
        bound_stage,
        r_values,
        t0: Vec::new(),
        rank1: Vec::new(),
        hermitian: Vec::new(),
        division: Vec::new(),
        candidates: Vec::new(),
        unverifiable,
        theorem: Theorem { hermitian: Vec::new(), division: Vec::new() },
    };
    for (p, r) in &survivors {
        let t0 = match enumerate_t0(p, &r.value, opts.prime_cap) {
            Ok(t) => t,
            Err(e) => {
                out.unverifiable.push(Unverifiable { label: p.label.clone(), reason: e.to_string() });
                continue;
            }
        };
        let sets = t0.prime_sets();
        out.t0.push((p.label.clone(), sets.clone(), t0.beyond_cap.certified));
        if !t0.beyond_cap.certified {
            out.unverifiable.push(Unverifiable { label: p.label.clone(), reason: format!("places beyond {} not excluded from T_0", opts.prime_cap) });
            continue;
        }
        if let Err(e) = finish_pair(p, r, &t0, opts, &mut out) {
            out.unverifiable.push(Unverifiable { label: p.label.clone(), reason: e.to_string() });
        }
    }
    Ok(out)
}

fn finish_pair(p: &FieldPair, r: &ScriptR, t0: &T0Report, opts: &ClassifyOptions, out: &mut Classification) -> Result<(), ClassifyError> {
    let sets = t0.prime_sets();
    if !sets.is_empty() {
        let mut degrees = Vec::new();
        for dd in [2u8, 4] {
            let en = division_t_enumeration(p, &r.value, dd, opts.prime_cap)?;
            if !en.beyond_cap.certified {
                return Err(ClassifyError::ScanAssertion(format!("D={dd}: places beyond {} not excluded", opts.prime_cap)));
            }
            if !en.configurations.is_empty() {
                degrees.push(dd);
            }
            for (c, _) in &en.configurations {
                out.candidates.push(CandidateReport::build(p, r, c.clone())?);
            }
            out.division.push((p.label.clone(), en));
        }
        if !degrees.is_empty() {
            out.theorem.division.push((p.label.clone(), degrees, sets));
        }
        return Ok(());
    }
    if p.degree() == 1 {
        // k = Q forces D != l.
        return Ok(());
    }
    let rank1 = rank1_pair_scan(p, &r.value, RANK1_SMALL_CAP, opts.prime_cap)?;
    let herm = hermitian_t_scan(p, &r.value)?;
    let ok = rank1.t1_empty && herm.t_empty;
    out.rank1.push((p.label.clone(), rank1));
    out.hermitian.push((p.label.clone(), herm));
    if !ok {
        return Err(ClassifyError::ScanAssertion(format!("{}: T not shown empty", p.label)));
    }
    out.candidates.push(CandidateReport::build(p, r, TConfiguration::trivial())?);
    out.theorem.hermitian.push(p.label.clone());
    Ok(())
}

/// Certified floor for every pair: the least `e'` of a `T_0` place over
/// `prime` already exceeds each pair's ceiling.
pub fn certify_beyond_cap(r_values: &[(u8, u64, ExactRational)], prime: u64) -> bool {
    r_values.iter().all(|(d, hl4, r)| Rational::from(r * t0_minimal_multiple(prime)) > ceiling(*d, ISOTROPIC_REAL_PLACES, 1, *hl4))
}

/// Enclosure of `E = zeta_k(2) L_{l|k}(3) zeta_k(4) prod e'`.
pub fn e_value(pair: &FieldPair, r: &ScriptR, config: &TConfiguration) -> Result<HighPrecisionReal, ClassifyError> {
    let d = pair.degree();
    let dk = pair.base.disc();
    let z2 = functional_eq_zeta(d, dk, 1, &r.zeta_m1, E_CHECK_PREC)?;
    let z4 = functional_eq_zeta(d, dk, 2, &r.zeta_m3, E_CHECK_PREC)?;
    let l3 = l3_from_minus2(d, dk, pair.ext.disc, &r.l_m2, E_CHECK_PREC)?;
    Ok((&(&z2 * &l3) * &z4).mul_rational(&Rational::from(config.e_prime_product())))
}
