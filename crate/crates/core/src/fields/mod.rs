//! Number-field descriptors for the pairs `(k, l)`, splitting of places,
//! and class-group arithmetic.

pub mod polymod;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rug::Rational;
use serde::{Deserialize, Serialize};

use crate::arith::{self, gcd, is_fundamental_discriminant, is_prime, kronecker};
use crate::error::FieldError;
use crate::rational::ExactRational;
use crate::zeta::character::{DirichletCharacter, GaussInt};

pub use polymod::factor_degrees_mod_p;

/// Default cap on |D| for reduced-form class number enumeration.
pub const CLASS_NUMBER_CAP: u64 = 1_000_000;

/// Behaviour of a rational prime in the base field `k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SplitInK {
    Split,
    Inert,
    Ramified,
}

/// Behaviour of a place of `k` in the quadratic extension `l`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SplittingType {
    SplitInL,
    InertInL,
    RamifiedInL,
}

impl SplittingType {
    pub fn symbol(self) -> char {
        match self {
            SplittingType::SplitInL => 'S',
            SplittingType::InertInL => 'I',
            SplittingType::RamifiedInL => 'R',
        }
    }

    pub fn from_symbol(c: char) -> Option<Self> {
        match c {
            'S' => Some(SplittingType::SplitInL),
            'I' => Some(SplittingType::InertInL),
            'R' => Some(SplittingType::RamifiedInL),
            _ => None,
        }
    }

    fn from_character_value(v: i8) -> Self {
        match v {
            1 => SplittingType::SplitInL,
            -1 => SplittingType::InertInL,
            _ => SplittingType::RamifiedInL,
        }
    }
}

/// Canonical order of the per-place symbols of a split prime: `I < R < S`.
pub fn canonical_symbols(mut v: Vec<SplittingType>) -> Vec<SplittingType> {
    v.sort_by_key(|s| s.symbol());
    v
}

/// The totally real base field: either Q or a real quadratic field.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BaseField {
    degree: u8,
    disc: u64,
    #[serde(serialize_with = "crate::report::ser_rational")]
    regulator_floor: ExactRational,
}

impl BaseField {
    pub fn rationals() -> Self {
        BaseField { degree: 1, disc: 1, regulator_floor: Rational::new() }
    }

    pub fn real_quadratic(disc: u64, regulator_floor: ExactRational) -> Result<Self, FieldError> {
        if !is_fundamental_discriminant(disc as i64) {
            return Err(FieldError::InvalidBase(format!("D_k = {disc} is not a fundamental discriminant")));
        }
        Ok(BaseField { degree: 2, disc, regulator_floor })
    }

    pub fn new(degree: u8, disc: u64) -> Result<Self, FieldError> {
        match degree {
            1 if disc == 1 => Ok(Self::rationals()),
            1 => Err(FieldError::InvalidBase(format!("degree 1 requires D_k = 1, got {disc}"))),
            2 => Self::real_quadratic(disc, Rational::new()),
            _ => Err(FieldError::InvalidBase(format!("degree {degree} not in {{1, 2}}"))),
        }
    }

    pub fn degree(&self) -> u8 {
        self.degree
    }

    pub fn disc(&self) -> u64 {
        self.disc
    }

    pub fn regulator_floor(&self) -> &ExactRational {
        &self.regulator_floor
    }

    pub fn splitting_of(&self, p: u64) -> SplitInK {
        if self.degree == 1 {
            return SplitInK::Split;
        }
        match kronecker(self.disc as i64, p) {
            1 => SplitInK::Split,
            -1 => SplitInK::Inert,
            _ => SplitInK::Ramified,
        }
    }
}

/// A nonarchimedean place of `k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Place {
    pub p: u64,
    /// Residue field size `p^f`.
    pub q: u64,
    pub in_k: SplitInK,
    /// 0 or 1; distinguishes the two places over a split prime.
    pub index: u8,
}

impl Place {
    pub fn residue_degree(&self) -> u32 {
        if self.q == self.p {
            1
        } else {
            2
        }
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.in_k {
            SplitInK::Split if self.q == self.p && self.index > 0 => write!(f, "{}'", self.p),
            _ => write!(f, "{}", self.p),
        }
    }
}

/// How `l` is cut out over Q when it is abelian.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Galois {
    /// d = 1: `l = Q(sqrt D)`.
    Quadratic(i64),
    /// Biquadratic `l` with imaginary quadratic subfields of discriminants `m1`, `m2`.
    Biquadratic(i64, i64),
    /// Cyclic quartic: the quartic character of conductor `q` twisted by
    /// the Kronecker character of `twist` (`1` for no twist).
    Cyclic { q: u64, twist: i64 },
    NonAbelian,
}

impl Galois {
    pub fn is_abelian(&self) -> bool {
        !matches!(self, Galois::NonAbelian)
    }

    /// The odd character `chi` with `L_{l|k} = L(chi) L(conj chi)` in the
    /// cyclic case.
    pub fn cyclic_character(&self) -> Option<DirichletCharacter> {
        match *self {
            Galois::Cyclic { q, twist } => {
                let psi = DirichletCharacter::quartic(q);
                Some(if twist == 1 { psi } else { &psi * &DirichletCharacter::kronecker(twist) })
            }
            _ => None,
        }
    }
}

impl fmt::Display for Galois {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Galois::Quadratic(d) => write!(f, "V2:{d}"),
            Galois::Biquadratic(a, b) => write!(f, "V4:{a},{b}"),
            Galois::Cyclic { q, twist } => write!(f, "C4:{q},{twist}"),
            Galois::NonAbelian => write!(f, "D4"),
        }
    }
}

impl FromStr for Galois {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let bad = || format!("bad galois descriptor `{s}`");
        if s == "D4" {
            return Ok(Galois::NonAbelian);
        }
        let (tag, rest) = s.split_once(':').ok_or_else(bad)?;
        let nums: Vec<i64> = rest
            .split(',')
            .map(|t| t.trim().parse::<i64>())
            .collect::<Result<_, _>>()
            .map_err(|_| bad())?;
        match (tag, nums.as_slice()) {
            ("V2", [d]) => Ok(Galois::Quadratic(*d)),
            ("V4", [a, b]) => Ok(Galois::Biquadratic(*a, *b)),
            ("C4", [q, t]) if *q > 0 => Ok(Galois::Cyclic { q: *q as u64, twist: *t }),
            _ => Err(bad()),
        }
    }
}

/// Defining data of `l`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Defining {
    /// Negative fundamental discriminant.
    Quadratic(i64),
    /// Monic quartic (constant term first) plus the splitting of the places
    /// of `k` over primes dividing the polynomial discriminant.
    Quartic {
        coeffs: Vec<i64>,
        overrides: BTreeMap<u64, Vec<SplittingType>>,
    },
}

/// The totally complex quadratic extension `l` of `k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtensionField {
    pub disc: u64,
    pub class_group: Vec<u64>,
    #[serde(serialize_with = "crate::report::ser_rational")]
    pub regulator: ExactRational,
    pub roots_of_unity: u32,
    pub defining: Defining,
    pub galois: Galois,
}

impl ExtensionField {
    pub fn class_number(&self) -> u64 {
        self.class_group.iter().product()
    }
}

/// Order of the 4-torsion of the class group, `prod gcd(4, d_i)`.
pub fn h4(ext: &ExtensionField) -> u64 {
    ext.class_group.iter().map(|&d| gcd(4, d)).product()
}

/// Largest power of two not exceeding `h`.
pub fn h4_upper_bound(h: u64) -> u64 {
    assert!(h >= 1);
    1u64 << (63 - h.leading_zeros())
}

/// Root-of-unity counts allowed in a totally complex field of degree `2d`.
pub fn allowed_roots_of_unity(d: u8) -> Vec<u32> {
    (2..=24u32)
        .step_by(2)
        .filter(|&m| (2 * d as u64).is_multiple_of(arith::phi(m as u64)))
        .collect()
}

/// Number of distinct real roots of an integer polynomial (Sturm).
pub fn real_root_count(coeffs: &[i64]) -> usize {
    type P = Vec<Rational>;
    fn trim(mut p: P) -> P {
        while p.last().is_some_and(|c| *c == 0) {
            p.pop();
        }
        p
    }
    fn rem(a: &P, b: &P) -> P {
        let mut r = a.clone();
        let db = b.len() - 1;
        while r.len() > db && !r.is_empty() {
            let shift = r.len() - 1 - db;
            let coef = Rational::from(r.last().unwrap() / b.last().unwrap());
            for (i, bc) in b.iter().enumerate() {
                r[i + shift] -= Rational::from(&coef * bc);
            }
            r = trim(r);
        }
        r
    }
    let f: P = trim(coeffs.iter().map(|&c| Rational::from(c)).collect());
    if f.len() < 2 {
        return 0;
    }
    let df: P = trim(f.iter().enumerate().skip(1).map(|(i, c)| Rational::from(c * i as u32)).collect());
    let mut seq = vec![f, df];
    loop {
        let n = seq.len();
        if seq[n - 1].len() <= 1 {
            break;
        }
        let r: P = rem(&seq[n - 2], &seq[n - 1]).into_iter().map(|c| -c).collect();
        if r.is_empty() {
            break;
        }
        seq.push(r);
    }
    let changes = |signs: Vec<i32>| {
        let s: Vec<i32> = signs.into_iter().filter(|&x| x != 0).collect();
        s.windows(2).filter(|w| w[0] != w[1]).count()
    };
    let at_pos: Vec<i32> = seq.iter().map(|p| p.last().unwrap().cmp0() as i32).collect();
    let at_neg: Vec<i32> = seq
        .iter()
        .map(|p| {
            let s = p.last().unwrap().cmp0() as i32;
            if (p.len() - 1) % 2 == 1 {
                -s
            } else {
                s
            }
        })
        .collect();
    changes(at_neg) - changes(at_pos)
}

/// The pair `(k, l)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FieldPair {
    pub label: String,
    pub base: BaseField,
    pub ext: ExtensionField,
}

impl FieldPair {
    /// Builds a pair after checking every structural invariant.
    pub fn new(label: impl Into<String>, base: BaseField, ext: ExtensionField) -> Result<Self, FieldError> {
        let pair = FieldPair { label: label.into(), base, ext };
        pair.validate()?;
        Ok(pair)
    }

    fn validate(&self) -> Result<(), FieldError> {
        let bad = |m: String| Err(FieldError::InvalidExtension(format!("{}: {m}", self.label)));
        let d = self.base.degree;
        let dk = self.base.disc;
        let dl = self.ext.disc;
        if dl == 0 || !dl.is_multiple_of(dk * dk) {
            return bad(format!("D_l = {dl} is not divisible by D_k^2 = {}", dk * dk));
        }
        if self.ext.class_group.contains(&0) {
            return bad("zero elementary divisor".into());
        }
        if !allowed_roots_of_unity(d).contains(&self.ext.roots_of_unity) {
            return bad(format!("w_l = {} impossible in degree {}", self.ext.roots_of_unity, 2 * d));
        }
        match (&self.ext.defining, d) {
            (Defining::Quadratic(disc), 1) => {
                if *disc >= 0 || !is_fundamental_discriminant(*disc) || disc.unsigned_abs() != dl {
                    return bad(format!("defining discriminant {disc} inconsistent with D_l = {dl}"));
                }
                if self.ext.galois != Galois::Quadratic(*disc) {
                    return bad("galois descriptor must be V2 for a quadratic field".into());
                }
            }
            (Defining::Quartic { coeffs, overrides }, 2) => {
                if coeffs.len() != 5 || coeffs[4] != 1 {
                    return bad("defining polynomial must be a monic quartic".into());
                }
                if real_root_count(coeffs) != 0 {
                    return bad("defining polynomial has real roots".into());
                }
                for (p, syms) in overrides {
                    let expected = match self.base.splitting_of(*p) {
                        SplitInK::Split => 2,
                        _ => 1,
                    };
                    if syms.len() != expected {
                        return bad(format!("override at {p} lists {} places, expected {expected}", syms.len()));
                    }
                }
                self.validate_galois()?;
            }
            _ => return bad("defining data does not match the degree".into()),
        }
        Ok(())
    }

    fn validate_galois(&self) -> Result<(), FieldError> {
        let dk = self.base.disc as i64;
        let dl = self.ext.disc;
        let bad = |m: String| Err(FieldError::InvalidExtension(format!("{}: {m}", self.label)));
        match self.ext.galois {
            Galois::Biquadratic(m1, m2) => {
                let ok = m1 < 0
                    && m2 < 0
                    && is_fundamental_discriminant(m1)
                    && is_fundamental_discriminant(m2)
                    && core_discriminant(dk * m1) == m2
                    && (dk as u64) * m1.unsigned_abs() * m2.unsigned_abs() == dl;
                if !ok {
                    return bad(format!("V4:{m1},{m2} inconsistent with D_k = {dk}, D_l = {dl}"));
                }
            }
            Galois::Cyclic { .. } => {
                let chi = self.ext.galois.cyclic_character().unwrap();
                let sq = (&chi * &chi).modulus();
                let f = chi.modulus();
                if !chi.is_odd() || sq != dk as u64 || (dk as u64) * f * f != dl {
                    return bad(format!("{} inconsistent with D_k = {dk}, D_l = {dl}", self.ext.galois));
                }
            }
            Galois::NonAbelian => {}
            Galois::Quadratic(_) => return bad("V2 descriptor on a quartic field".into()),
        }
        Ok(())
    }

    pub fn degree(&self) -> u8 {
        self.base.degree
    }

    /// `D_l / D_k^2`.
    pub fn relative_disc(&self) -> u64 {
        self.ext.disc / (self.base.disc * self.base.disc)
    }

    /// Conductor of `L_{l|k}` as a degree-`d` L-function over Q: `D_l / D_k`.
    pub fn conductor(&self) -> u64 {
        self.ext.disc / self.base.disc
    }

    pub fn places_above(&self, p: u64) -> Vec<Place> {
        places_above(&self.base, p)
    }

    /// Every place of `k` over `p` together with its splitting in `l`.
    pub fn local_data(&self, p: u64) -> Result<Vec<(Place, SplittingType)>, FieldError> {
        self.places_above(p)
            .into_iter()
            .map(|v| splitting_in_ell(self, &v).map(|s| (v, s)))
            .collect()
    }
}

/// Fundamental discriminant of `Q(sqrt n)`.
pub fn core_discriminant(n: i64) -> i64 {
    let sign = n.signum();
    let mut m = n.unsigned_abs();
    let mut core = 1u64;
    let mut d = 2u64;
    while d * d <= m {
        let mut e = 0;
        while m.is_multiple_of(d) {
            m /= d;
            e += 1;
        }
        if e % 2 == 1 {
            core *= d;
        }
        d += 1;
    }
    core *= m;
    let c = sign * core as i64;
    if c.rem_euclid(4) == 1 {
        c
    } else {
        4 * c
    }
}

/// Kronecker symbol `(D | p)` for a fundamental discriminant `D` and a prime `p`.
pub fn kronecker_symbol(d: i64, p: u64) -> Result<i8, FieldError> {
    if !is_fundamental_discriminant(d) {
        return Err(FieldError::NotFundamental(d));
    }
    if !is_prime(p) {
        return Err(FieldError::NotPrime(p));
    }
    Ok(kronecker(d, p))
}

/// Places of `k` above the rational prime `p`.
pub fn places_above(k: &BaseField, p: u64) -> Vec<Place> {
    match k.splitting_of(p) {
        SplitInK::Split if k.degree == 2 => (0..2)
            .map(|index| Place { p, q: p, in_k: SplitInK::Split, index })
            .collect(),
        SplitInK::Split => vec![Place { p, q: p, in_k: SplitInK::Split, index: 0 }],
        SplitInK::Inert => vec![Place { p, q: p * p, in_k: SplitInK::Inert, index: 0 }],
        SplitInK::Ramified => vec![Place { p, q: p, in_k: SplitInK::Ramified, index: 0 }],
    }
}

/// Splitting of `v` in `l` read off the abelian character decomposition.
/// `None` when `l` is not abelian over Q.
pub fn splitting_by_characters(pair: &FieldPair, v: &Place) -> Option<SplittingType> {
    let p = v.p;
    let f = v.residue_degree();
    match pair.ext.galois {
        Galois::Quadratic(d) => Some(SplittingType::from_character_value(kronecker(d, p))),
        Galois::Biquadratic(m1, m2) => {
            let chi = if kronecker(m1, p) != 0 {
                kronecker(m1, p)
            } else if kronecker(m2, p) != 0 {
                kronecker(m2, p)
            } else {
                return Some(SplittingType::RamifiedInL);
            };
            Some(SplittingType::from_character_value(chi.pow(f)))
        }
        Galois::Cyclic { .. } => {
            let chi = pair.ext.galois.cyclic_character()?;
            let value = chi.eval(p as i64).pow(f);
            Some(if value == GaussInt::ZERO {
                SplittingType::RamifiedInL
            } else if value == GaussInt::ONE {
                SplittingType::SplitInL
            } else {
                SplittingType::InertInL
            })
        }
        Galois::NonAbelian => None,
    }
}

/// Splitting of `v` in `l` from the factorization of the defining quartic
/// modulo `p`, falling back to the override table at bad primes.
pub fn splitting_by_polynomial(pair: &FieldPair, v: &Place) -> Result<SplittingType, FieldError> {
    let missing = || FieldError::MissingSplitting { label: pair.label.clone(), p: v.p };
    let (coeffs, overrides) = match &pair.ext.defining {
        Defining::Quartic { coeffs, overrides } => (coeffs, overrides),
        Defining::Quadratic(d) => return Ok(SplittingType::from_character_value(kronecker(*d, v.p))),
    };
    let symbols: Vec<SplittingType> = match factor_degrees_mod_p(coeffs, v.p) {
        Some(degrees) => {
            use SplittingType::*;
            match (v.in_k, degrees.as_slice()) {
                (SplitInK::Split, [1, 1, 1, 1]) => vec![SplitInL, SplitInL],
                (SplitInK::Split, [1, 1, 2]) => canonical_symbols(vec![SplitInL, InertInL]),
                (SplitInK::Split, [2, 2]) => vec![InertInL, InertInL],
                (SplitInK::Inert, [2, 2]) => vec![SplitInL],
                (SplitInK::Inert, [4]) => vec![InertInL],
                _ => return Err(missing()),
            }
        }
        None => overrides.get(&v.p).cloned().ok_or_else(missing)?,
    };
    symbols.get(v.index as usize).copied().ok_or_else(missing)
}

/// Splitting of the place `v` of `k` in `l`.
pub fn splitting_in_ell(pair: &FieldPair, v: &Place) -> Result<SplittingType, FieldError> {
    match splitting_by_characters(pair, v) {
        Some(s) => Ok(s),
        None => splitting_by_polynomial(pair, v),
    }
}

/// Class number of the imaginary quadratic order of discriminant `d`, by
/// counting reduced forms `(a, b, c)` with `|b| <= a <= c` and `b >= 0`
/// whenever `|b| = a` or `a = c`.
pub fn class_number_imag_quadratic(d: i64) -> Result<u64, FieldError> {
    class_number_imag_quadratic_capped(d, CLASS_NUMBER_CAP)
}

pub fn class_number_imag_quadratic_capped(d: i64, cap: u64) -> Result<u64, FieldError> {
    if d >= 0 || !is_fundamental_discriminant(d) {
        return Err(FieldError::NotFundamental(d));
    }
    let abs = d.unsigned_abs();
    if abs > cap {
        return Err(FieldError::EnumerationCap { abs, cap });
    }
    let abs = abs as i64;
    let mut count = 0u64;
    let mut a = 1i64;
    while 3 * a * a <= abs {
        for b in -a..=a {
            if (b - d).rem_euclid(2) != 0 {
                continue;
            }
            let num = b * b - d;
            if num % (4 * a) != 0 {
                continue;
            }
            let c = num / (4 * a);
            if c < a {
                continue;
            }
            if b < 0 && (-b == a || a == c) {
                continue;
            }
            count += 1;
        }
        a += 1;
    }
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q5() -> BaseField {
        BaseField::real_quadratic(5, Rational::from((4811, 10000))).unwrap()
    }

    fn quad(d: i64, h: u64) -> FieldPair {
        let ext = ExtensionField {
            disc: d.unsigned_abs(),
            class_group: if h == 1 { vec![] } else { vec![h] },
            regulator: Rational::from(1),
            roots_of_unity: match d {
                -3 => 6,
                -4 => 4,
                _ => 2,
            },
            defining: Defining::Quadratic(d),
            galois: Galois::Quadratic(d),
        };
        FieldPair::new(format!("Q(sqrt{d})"), BaseField::rationals(), ext).unwrap()
    }

    fn zeta5() -> FieldPair {
        let mut overrides = BTreeMap::new();
        overrides.insert(5, vec![SplittingType::RamifiedInL]);
        let ext = ExtensionField {
            disc: 125,
            class_group: vec![],
            regulator: Rational::from((962, 1000)),
            roots_of_unity: 10,
            defining: Defining::Quartic { coeffs: vec![1, -1, 1, -1, 1], overrides },
            galois: Galois::Cyclic { q: 5, twist: 1 },
        };
        FieldPair::new("C1", q5(), ext).unwrap()
    }

    #[test]
    fn kronecker_examples() {
        assert_eq!(kronecker_symbol(-7, 2).unwrap(), 1);
        assert_eq!(kronecker_symbol(-7, 7).unwrap(), 0);
        assert_eq!(kronecker_symbol(5, 11).unwrap(), 1);
        assert!(matches!(kronecker_symbol(-8 * 4, 3), Err(FieldError::NotFundamental(_))));
        assert!(matches!(kronecker_symbol(5, 9), Err(FieldError::NotPrime(9))));
    }

    #[test]
    fn places() {
        let q = BaseField::rationals();
        assert_eq!(places_above(&q, 2), vec![Place { p: 2, q: 2, in_k: SplitInK::Split, index: 0 }]);
        let over11 = places_above(&q5(), 11);
        assert_eq!(over11.len(), 2);
        assert!(over11.iter().all(|v| v.q == 11));
        let over2 = places_above(&q5(), 2);
        assert_eq!(over2.len(), 1);
        assert_eq!(over2[0].q, 4);
        let over5 = places_above(&q5(), 5);
        assert_eq!((over5.len(), over5[0].q), (1, 5));
    }

    #[test]
    fn splitting_examples() {
        let gi = quad(-4, 1);
        let v5 = places_above(&gi.base, 5)[0];
        assert_eq!(splitting_in_ell(&gi, &v5).unwrap(), SplittingType::SplitInL);
        let g7 = quad(-7, 1);
        let v7 = places_above(&g7.base, 7)[0];
        assert_eq!(splitting_in_ell(&g7, &v7).unwrap(), SplittingType::RamifiedInL);
        let c1 = zeta5();
        for v in c1.places_above(11) {
            assert_eq!(splitting_in_ell(&c1, &v).unwrap(), SplittingType::SplitInL);
            assert_eq!(splitting_by_polynomial(&c1, &v).unwrap(), SplittingType::SplitInL);
        }
        for v in c1.places_above(19) {
            assert_eq!(splitting_in_ell(&c1, &v).unwrap(), SplittingType::InertInL);
        }
        let v2 = c1.places_above(2)[0];
        assert_eq!(splitting_in_ell(&c1, &v2).unwrap(), SplittingType::InertInL);
    }

    #[test]
    fn class_numbers() {
        assert_eq!(class_number_imag_quadratic(-4).unwrap(), 1);
        assert_eq!(class_number_imag_quadratic(-47).unwrap(), 5);
        assert_eq!(class_number_imag_quadratic(-23).unwrap(), 3);
        assert_eq!(class_number_imag_quadratic(-3).unwrap(), 1);
        assert_eq!(class_number_imag_quadratic(-20).unwrap(), 2);
        assert!(matches!(
            class_number_imag_quadratic_capped(-1_000_003, 1_000_000),
            Err(FieldError::EnumerationCap { .. })
        ));
        assert!(class_number_imag_quadratic(-16).is_err());
    }

    #[test]
    fn h4_values() {
        let mut e = quad(-7, 1).ext;
        assert_eq!(h4(&e), 1);
        e.class_group = vec![2];
        assert_eq!(h4(&e), 2);
        e.class_group = vec![5];
        assert_eq!(h4(&e), 1);
        e.class_group = vec![2, 8];
        assert_eq!(h4(&e), 8);
        assert_eq!(h4_upper_bound(7), 4);
        assert_eq!(h4_upper_bound(21), 16);
        assert_eq!(h4_upper_bound(1), 1);
        assert_eq!(h4_upper_bound(64), 64);
    }

    #[test]
    fn roots_of_unity_sets() {
        assert_eq!(allowed_roots_of_unity(2), vec![2, 4, 6, 8, 10, 12]);
        assert_eq!(allowed_roots_of_unity(1), vec![2, 4, 6]);
    }

    #[test]
    fn sturm_counts() {
        assert_eq!(real_root_count(&[1, -1, 1, -1, 1]), 0);
        assert_eq!(real_root_count(&[-1, 0, 1]), 2);
        assert_eq!(real_root_count(&[4, 0, -5, 0, 1]), 4);
        assert_eq!(real_root_count(&[-2, 0, 0, 0, 1]), 2);
    }

    #[test]
    fn core_discriminants() {
        assert_eq!(core_discriminant(5 * -3), -15);
        assert_eq!(core_discriminant(5 * -4), -20);
        assert_eq!(core_discriminant(33 * -3), -11);
        assert_eq!(core_discriminant(-8 * 56), -7);
        assert_eq!(core_discriminant(2), 8);
    }

    #[test]
    fn rejects_bad_pairs() {
        let mut ext = zeta5().ext;
        ext.disc = 130;
        assert!(FieldPair::new("x", q5(), ext).is_err());
        let mut real = zeta5().ext;
        real.defining = Defining::Quartic { coeffs: vec![4, 0, -5, 0, 1], overrides: BTreeMap::new() };
        assert!(FieldPair::new("x", q5(), real).is_err());
        let mut w = zeta5().ext;
        w.roots_of_unity = 14;
        assert!(FieldPair::new("x", q5(), w).is_err());
    }
}
