//! Discriminant and class-number bounds for the pairs `(k, l)`, and the
//! Hilbert class field iteration against root-discriminant tables.

use rug::ops::Pow;
use rug::{Integer, Rational};
use serde::Serialize;

use crate::arith::is_fundamental_discriminant;
use crate::error::BoundsError;
use crate::fields::{allowed_roots_of_unity, h4_upper_bound, FieldPair};
use crate::rational::{parse_rational, ExactRational};
use crate::real::HighPrecisionReal;

/// Working precision of every bound evaluation.
pub const BOUNDS_PREC: u32 = 256;

/// Smallest `D_k` handled by the uniform regulator estimate.
pub const LARGE_DK_THRESHOLD: u64 = 33;

/// Lower bound for `R_l / w_l` when `D_k >= 33`.
pub fn friedman_floor() -> ExactRational {
    Rational::from((1, 8))
}

/// `delta` used with [`friedman_floor`].
pub fn friedman_delta() -> ExactRational {
    Rational::from((3, 5))
}

/// Upper limit on the Hilbert class field iteration.
pub const MAX_ITERATIONS: usize = 20;

fn big_c(prec: u32) -> HighPrecisionReal {
    // 2^8 pi^9 / 3
    HighPrecisionReal::pi(prec).powi(9).mul_rational(&Rational::from((256, 3)))
}

fn real(x: &Rational) -> HighPrecisionReal {
    HighPrecisionReal::from_rational(x, BOUNDS_PREC)
}

fn int(n: u64) -> HighPrecisionReal {
    HighPrecisionReal::from_int(n as i64, BOUNDS_PREC)
}

fn check_delta(delta: &Rational) -> Result<(), BoundsError> {
    if *delta <= 0 || *delta >= 1 {
        return Err(BoundsError::DeltaRange(delta.to_string()));
    }
    Ok(())
}

/// `f_1(d, h) = [(2^8 pi^9/3)^d h]^{2/15d}`, an upper bound for `D_k^{1/d}`.
pub fn f1(d: u8, h4: u64) -> HighPrecisionReal {
    let base = &big_c(BOUNDS_PREC).powi(d as i32) * &int(h4);
    base.pow_rational(&Rational::from((2, 15 * d as u32)))
}

/// `q_1(d, D_k, h) = [h D_k^{-5/2} (2^8 pi^9/3)^d]^{1/5d}`, an upper bound
/// for `D_l^{1/2d}`.
pub fn q1(d: u8, dk: u64, h4: u64) -> HighPrecisionReal {
    let dk52 = int(dk).pow_rational(&Rational::from((5, 2)));
    let base = &(&int(h4) / &dk52) * &big_c(BOUNDS_PREC).powi(d as i32);
    base.pow_rational(&Rational::from((1, 5 * d as u32)))
}

/// `Gamma(1+delta) zeta(1+delta)^2 / (2 pi)^{1+delta} * 2^8 pi^9 / 3`.
fn analytic_factor(delta: &Rational) -> HighPrecisionReal {
    let s = real(&Rational::from(delta + 1u32));
    let two_pi = HighPrecisionReal::pi(BOUNDS_PREC).mul_rational(&Rational::from(2));
    let num = &s.gamma() * &s.zeta().sqr();
    &(&num / &two_pi.pow(&s)) * &big_c(BOUNDS_PREC)
}

fn delta_prefactor(r_over_w: &Rational, delta: &Rational) -> HighPrecisionReal {
    let dd = delta * Rational::from(delta + 1u32);
    &real(&dd) / &real(r_over_w)
}

/// `q_2(d, D_k, R/w, delta)`, an upper bound for `D_l^{1/2d}`.
pub fn q2(d: u8, dk: u64, r_over_w: &Rational, delta: &Rational) -> Result<HighPrecisionReal, BoundsError> {
    check_delta(delta)?;
    let dk52 = int(dk).pow_rational(&Rational::from((5, 2)));
    let base = &(&delta_prefactor(r_over_w, delta) / &dk52) * &analytic_factor(delta).powi(d as i32);
    let e = Rational::from(1) / ((4 - delta.clone()) * d as u32);
    Ok(base.pow_rational(&e))
}

/// `p_1(d, D_k, h) = [h (2^8 pi^9/3)^d D_k^{-15/2}]^{2/5}`, an upper bound
/// for `D_l / D_k^2`.
pub fn p1(d: u8, dk: u64, h4: u64) -> HighPrecisionReal {
    let dk152 = int(dk).pow_rational(&Rational::from((15, 2)));
    let base = &(&int(h4) * &big_c(BOUNDS_PREC).powi(d as i32)) / &dk152;
    base.pow_rational(&Rational::from((2, 5)))
}

/// `p_2(d, D_k, R/w, delta)`, an upper bound for `D_l / D_k^2`.
pub fn p2(d: u8, dk: u64, r_over_w: &Rational, delta: &Rational) -> Result<HighPrecisionReal, BoundsError> {
    check_delta(delta)?;
    let e_dk = (13 - Rational::from(delta * 2u32)) / 2u32;
    let dk_pow = int(dk).pow_rational(&e_dk);
    let base = &(&delta_prefactor(r_over_w, delta) / &dk_pow) * &analytic_factor(delta).powi(d as i32);
    let e = Rational::from(2) / (4 - delta.clone());
    Ok(base.pow_rational(&e))
}

/// Certified floor of an enclosure; panics if the enclosure straddles an
/// integer, which at the working precision means a genuine tie.
pub fn certified_floor(x: &HighPrecisionReal) -> Integer {
    x.floor_certain().unwrap_or_else(|| panic!("enclosure {x} straddles an integer"))
}

/// Nearest integer to an enclosure.
pub fn certified_nearest(x: &HighPrecisionReal) -> Integer {
    certified_floor(&(x + &HighPrecisionReal::from_rational(&Rational::from((1, 2)), x.prec())))
}

/// Lower bounds `M_c(n)` for root discriminants of totally complex fields
/// of degree `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MartinetTable {
    rows: Vec<(u32, ExactRational)>,
}

/// One application of the Hilbert class field argument.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Ceiling {
    /// Least tabulated degree whose bound exceeds the root discriminant.
    pub degree: u32,
    #[serde(serialize_with = "crate::report::ser_rational")]
    pub mc: ExactRational,
    /// `floor((degree - 1)/4)`: `4 h < degree`.
    pub h: u64,
    /// `floor(degree/4)`, the looser reading.
    pub h_loose: u64,
}

impl MartinetTable {
    pub fn new(mut rows: Vec<(u32, ExactRational)>) -> Result<Self, BoundsError> {
        rows.sort_by_key(|r| r.0);
        if rows.is_empty() {
            return Err(BoundsError::InvalidTable("empty".into()));
        }
        for w in rows.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(BoundsError::InvalidTable(format!("degree {} listed twice", w[0].0)));
            }
            if w[0].1 > w[1].1 {
                return Err(BoundsError::InvalidTable(format!("bound decreases between degrees {} and {}", w[0].0, w[1].0)));
            }
        }
        if rows.iter().any(|r| r.0 % 2 == 1) {
            return Err(BoundsError::InvalidTable("odd degree for a totally complex field".into()));
        }
        Ok(MartinetTable { rows })
    }

    pub fn rows(&self) -> &[(u32, ExactRational)] {
        &self.rows
    }

    /// Largest tabulated bound at degree `<= n`.
    pub fn mc_lower_bound(&self, n: u32) -> Result<&ExactRational, BoundsError> {
        self.rows
            .iter()
            .rev()
            .find(|r| r.0 <= n)
            .map(|r| &r.1)
            .ok_or(BoundsError::BelowTable(n))
    }

    /// Largest `h` allowed for a field of root discriminant `< root_disc`:
    /// its Hilbert class field has degree `4h` and the same root
    /// discriminant, so `4h` is below the least degree whose bound exceeds
    /// `root_disc`.
    pub fn class_number_ceiling(&self, root_disc: &HighPrecisionReal) -> Result<Ceiling, BoundsError> {
        let (degree, mc) = self
            .rows
            .iter()
            .find(|(_, b)| root_disc.certainly_lt(b))
            .ok_or_else(|| BoundsError::BeyondTable(format!("{:.6}", root_disc.upper().to_f64())))?;
        Ok(Ceiling { degree: *degree, mc: mc.clone(), h: ((degree - 1) / 4) as u64, h_loose: (degree / 4) as u64 })
    }
}

/// One round: `q_1` at the current `h_{l,4}` and the resulting ceiling.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IterationRow {
    pub h4: u64,
    #[serde(serialize_with = "ser_real")]
    pub root_bound: HighPrecisionReal,
    pub ceiling: Option<Ceiling>,
    pub h4_next: u64,
    /// Nearest integer to `q_1^{2d}`.
    #[serde(serialize_with = "ser_integer")]
    pub dl_bound: Integer,
    /// `floor(p_1)`.
    #[serde(serialize_with = "ser_integer")]
    pub rel_bound: Integer,
}

fn ser_real<S: serde::Serializer>(x: &HighPrecisionReal, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&format!("{:.10}", x.upper().to_f64()))
}

fn ser_integer<S: serde::Serializer>(x: &Integer, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

/// How the final `D_l` cell is derived.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum DlRule {
    /// Nearest integer to `q_1(d, D_k, h_{l,4})^{2d}`.
    Root,
    /// `D_k^2 floor(p_1(d, D_k, h_{l,4}))`.
    Relative,
}

impl std::str::FromStr for DlRule {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "root" => Ok(DlRule::Root),
            "relative" => Ok(DlRule::Relative),
            _ => Err(format!("unknown D_l rule `{s}`")),
        }
    }
}

/// Class-number bounds read off a field table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DatabaseRow {
    pub dl_bound: u64,
    pub count: usize,
    pub h_max: u64,
    pub h4: u64,
}

/// Full record of the bound computation for one base field.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundReport {
    pub d: u8,
    pub dk: u64,
    #[serde(serialize_with = "crate::report::ser_rational")]
    pub r_over_w: ExactRational,
    #[serde(serialize_with = "crate::report::ser_rational")]
    pub delta: ExactRational,
    #[serde(serialize_with = "ser_real")]
    pub q2: HighPrecisionReal,
    pub q2_ceiling: Option<Ceiling>,
    #[serde(serialize_with = "ser_real")]
    pub q1_64: HighPrecisionReal,
    pub rows: Vec<IterationRow>,
    pub database: Vec<DatabaseRow>,
    pub h4: u64,
    pub dl_rule: DlRule,
    pub dl_bound: u64,
    pub rel_bound: u64,
}

impl BoundReport {
    fn finalize(&mut self) {
        let rel = certified_floor(&p1(self.d, self.dk, self.h4));
        self.rel_bound = rel.to_u64().expect("fits");
        self.dl_bound = match self.dl_rule {
            DlRule::Root => certified_nearest(&q1(self.d, self.dk, self.h4).powi(2 * self.d as i32)),
            DlRule::Relative => rel * (self.dk * self.dk),
        }
        .to_u64()
        .expect("fits");
    }
}

/// Alternates `q_2`/`q_1` evaluation with the class-number ceiling until
/// `h_{l,4}` is stable.
pub fn hilbert_iterate(
    d: u8,
    dk: u64,
    r_over_w: &Rational,
    delta: &Rational,
    table: &MartinetTable,
    h4_start: u64,
) -> Result<BoundReport, BoundsError> {
    let q2v = q2(d, dk, r_over_w, delta)?;
    let q2_ceiling = table.class_number_ceiling(&q2v).ok();
    let mut h4 = match &q2_ceiling {
        Some(c) => h4_start.min(h4_upper_bound(c.h)),
        None => h4_start,
    };
    let mut rows = Vec::new();
    loop {
        if rows.len() >= MAX_ITERATIONS {
            return Err(BoundsError::NonTerminating(rows.len()));
        }
        let root = q1(d, dk, h4);
        let ceiling = table.class_number_ceiling(&root).ok();
        let next = match &ceiling {
            Some(c) => h4.min(h4_upper_bound(c.h)),
            None => h4,
        };
        let dl_bound = certified_nearest(&root.powi(2 * d as i32));
        let rel_bound = certified_floor(&p1(d, dk, h4));
        rows.push(IterationRow { h4, root_bound: root, ceiling, h4_next: next, dl_bound, rel_bound });
        if next == h4 {
            break;
        }
        h4 = next;
    }
    let mut report = BoundReport {
        d,
        dk,
        r_over_w: r_over_w.clone(),
        delta: delta.clone(),
        q2: q2v,
        q2_ceiling,
        q1_64: q1(d, dk, 64),
        rows,
        database: Vec::new(),
        h4,
        dl_rule: DlRule::Root,
        dl_bound: 0,
        rel_bound: 0,
    };
    report.finalize();
    Ok(report)
}

/// Continues the iteration with class numbers read from a field table over
/// the same base field, starting from the larger of `dl_start` and the `q_2`
/// discriminant bound.
pub fn database_iterate(report: &BoundReport, pairs: &[FieldPair], dl_start: u64) -> BoundReport {
    let mut out = report.clone();
    let d = report.d;
    let over_k: Vec<&FieldPair> = pairs.iter().filter(|p| p.base.disc() == report.dk).collect();
    let mut dl = certified_floor(&report.q2.powi(2 * d as i32)).to_u64().expect("fits").max(dl_start);
    let mut h4 = report.h4;
    for _ in 0..MAX_ITERATIONS {
        let within: Vec<&&FieldPair> = over_k.iter().filter(|p| p.ext.disc <= dl).collect();
        let h_max = within.iter().map(|p| p.ext.class_number()).max().unwrap_or(1);
        let next = h4.min(h4_upper_bound(h_max));
        out.database.push(DatabaseRow { dl_bound: dl, count: within.len(), h_max, h4: next });
        if next == h4 && out.database.len() > 1 {
            break;
        }
        h4 = next;
        dl = certified_nearest(&q1(d, report.dk, h4).powi(2 * d as i32)).to_u64().expect("fits");
    }
    out.h4 = h4;
    out.finalize();
    out
}

/// Pinned per-base-field inputs: regulator floor and `delta`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RegulatorEntry {
    pub dk: u64,
    #[serde(serialize_with = "crate::report::ser_rational")]
    pub r0: ExactRational,
    #[serde(serialize_with = "crate::report::ser_rational")]
    pub delta: ExactRational,
    pub dl_rule: DlRule,
}

/// Bound report for a small real quadratic base field, using `R_l/w_l >= R_0/2`.
pub fn small_dk_report(entry: &RegulatorEntry, table: &MartinetTable) -> Result<BoundReport, BoundsError> {
    let rw = Rational::from(&entry.r0 / 2u32);
    let mut r = hilbert_iterate(2, entry.dk, &rw, &entry.delta, table, 64)?;
    r.dl_rule = entry.dl_rule;
    r.finalize();
    Ok(r)
}

/// The uniform bounds for `D_k >= 33`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LargeDkReport {
    pub report: BoundReport,
    #[serde(serialize_with = "ser_real")]
    pub f1: HighPrecisionReal,
    pub dk_max: u64,
    /// `floor(b^4)` where `b` is the final `q_1` bound rounded up to two decimals.
    pub dl_max: u64,
    pub rel_max: u64,
}

pub fn large_dk_report(table: &MartinetTable) -> Result<LargeDkReport, BoundsError> {
    let report = hilbert_iterate(2, LARGE_DK_THRESHOLD, &friedman_floor(), &friedman_delta(), table, 64)?;
    let f = f1(2, report.h4);
    let dk_max = certified_floor(&f.sqr()).to_u64().expect("fits");
    let root = q1(2, LARGE_DK_THRESHOLD, report.h4);
    let printed = round_up_decimals(&root, 2);
    let dl_max = Integer::from(Pow::pow(printed, 4u32).floor_ref()).to_u64().expect("fits");
    let rel_max = report.rel_bound;
    Ok(LargeDkReport { report, f1: f, dk_max, dl_max, rel_max })
}

/// Smallest decimal with `places` digits that is at least the enclosure.
pub fn round_up_decimals(x: &HighPrecisionReal, places: u32) -> Rational {
    let scale = Pow::pow(Integer::from(10), places);
    let up = x.upper_rational() * &scale;
    Rational::from((Integer::from(up.ceil_ref()), scale))
}

/// Evaluates a quoted bound written as `q1(2,12,8)`, `f1(2,4)`, `p1(2,33,4)`
/// or `q2(2,29,0.8235,0.65)`, optionally raised to a power: `q2^4(...)`.
pub fn evaluate_quoted(key: &str) -> Result<HighPrecisionReal, BoundsError> {
    let bad = || BoundsError::BadKey(key.to_string());
    let (head, args) = key.strip_suffix(')').and_then(|k| k.split_once('(')).ok_or_else(bad)?;
    let (name, power) = match head.split_once('^') {
        Some((n, p)) => (n, p.parse::<i32>().map_err(|_| bad())?),
        None => (head, 1),
    };
    let a: Vec<&str> = args.split(',').map(str::trim).collect();
    let int = |i: usize| a.get(i).and_then(|x| x.parse::<u64>().ok()).ok_or_else(bad);
    let rat = |i: usize| a.get(i).and_then(|x| parse_rational(x)).ok_or_else(bad);
    let degree = int(0)? as u8;
    let v = match (name, a.len()) {
        ("f1", 2) => f1(degree, int(1)?),
        ("q1", 3) => q1(degree, int(1)?, int(2)?),
        ("p1", 3) => p1(degree, int(1)?, int(2)?),
        ("q2", 4) => q2(degree, int(1)?, &rat(2)?, &rat(3)?)?,
        ("p2", 4) => p2(degree, int(1)?, &rat(2)?, &rat(3)?)?,
        _ => return Err(bad()),
    };
    Ok(v.powi(power))
}

/// `[Gamma : Lambda] <= 2^{d + 2r + 2#T} h_{l,4}`.
pub fn index_bound(d: u32, r: u32, t_size: u32, h4: u64) -> Integer {
    Integer::from(h4) << (d + 2 * r + 2 * t_size)
}

/// Possible orders of the group of roots of unity of `l`.
pub fn allowed_w(d: u8) -> Vec<u32> {
    allowed_roots_of_unity(d)
}

/// Discriminants of real quadratic fields below `bound`.
pub fn real_quadratic_discriminants_below(bound: u64) -> Vec<u64> {
    (2..bound).filter(|&n| is_fundamental_discriminant(n as i64)).collect()
}
