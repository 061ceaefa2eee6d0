//! Certified real enclosures on top of MPFR.
//!
//! A [`HighPrecisionReal`] is a closed interval `[lo, hi]` whose endpoints are
//! MPFR floats. Every operation rounds the lower endpoint down and the upper
//! endpoint up, so the exact result of the corresponding real operation is
//! always contained in the returned interval.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use rug::float::{Constant, Round};
use rug::{Float, Integer, Rational};

/// Location of the minimum of Gamma on the positive axis.
const GAMMA_ARGMIN: f64 = 1.461_632_144_968_362;
/// A lower bound for min Gamma(x), x > 0 (the true minimum is 0.88560319...).
const GAMMA_MIN_FLOOR: &str = "0.8856031";

#[derive(Clone, Debug, PartialEq)]
pub struct HighPrecisionReal {
    lo: Float,
    hi: Float,
}

impl HighPrecisionReal {
    pub fn from_bounds(lo: Float, hi: Float) -> Self {
        assert!(lo <= hi, "empty interval");
        HighPrecisionReal { lo, hi }
    }

    pub fn from_int(n: i64, prec: u32) -> Self {
        let lo = Float::with_val_round(prec, n, Round::Down).0;
        let hi = Float::with_val_round(prec, n, Round::Up).0;
        HighPrecisionReal { lo, hi }
    }

    pub fn from_rational(r: &Rational, prec: u32) -> Self {
        let lo = Float::with_val_round(prec, r, Round::Down).0;
        let hi = Float::with_val_round(prec, r, Round::Up).0;
        HighPrecisionReal { lo, hi }
    }

    pub fn from_integer(n: &Integer, prec: u32) -> Self {
        let lo = Float::with_val_round(prec, n, Round::Down).0;
        let hi = Float::with_val_round(prec, n, Round::Up).0;
        HighPrecisionReal { lo, hi }
    }

    /// Encloses an exact decimal string such as `"0.4811"` or `"1/8"`.
    pub fn from_decimal(s: &str, prec: u32) -> Option<Self> {
        crate::rational::parse_rational(s).map(|r| Self::from_rational(&r, prec))
    }

    pub fn pi(prec: u32) -> Self {
        let lo = Float::with_val_round(prec, Constant::Pi, Round::Down).0;
        let hi = Float::with_val_round(prec, Constant::Pi, Round::Up).0;
        HighPrecisionReal { lo, hi }
    }

    pub fn euler_gamma(prec: u32) -> Self {
        let lo = Float::with_val_round(prec, Constant::Euler, Round::Down).0;
        let hi = Float::with_val_round(prec, Constant::Euler, Round::Up).0;
        HighPrecisionReal { lo, hi }
    }

    pub fn prec(&self) -> u32 {
        self.lo.prec().max(self.hi.prec())
    }

    pub fn lower(&self) -> &Float {
        &self.lo
    }

    pub fn upper(&self) -> &Float {
        &self.hi
    }

    pub fn lower_rational(&self) -> Rational {
        self.lo.to_rational().expect("finite endpoint")
    }

    pub fn upper_rational(&self) -> Rational {
        self.hi.to_rational().expect("finite endpoint")
    }

    pub fn mid(&self) -> Float {
        let p = self.prec() + 2;
        (Float::with_val(p, &self.lo + &self.hi)) / 2u32
    }

    pub fn radius(&self) -> Float {
        let p = self.prec();
        let w = Float::with_val_round(p, &self.hi - &self.lo, Round::Up).0;
        w / 2u32
    }

    pub fn to_f64(&self) -> f64 {
        self.mid().to_f64()
    }

    /// Same enclosure widened by `eps` on both sides.
    pub fn widen(&self, eps: &Rational) -> Self {
        let p = self.prec();
        let lo = Float::with_val_round(p, &self.lo - &Float::with_val_round(p, eps, Round::Up).0, Round::Down).0;
        let hi = Float::with_val_round(p, &self.hi + &Float::with_val_round(p, eps, Round::Up).0, Round::Up).0;
        HighPrecisionReal { lo, hi }
    }

    /// Re-rounds the endpoints outward to `prec` bits.
    pub fn with_prec(&self, prec: u32) -> Self {
        let lo = Float::with_val_round(prec, &self.lo, Round::Down).0;
        let hi = Float::with_val_round(prec, &self.hi, Round::Up).0;
        HighPrecisionReal { lo, hi }
    }

    pub fn contains_rational(&self, r: &Rational) -> bool {
        self.lo <= *r && self.hi >= *r
    }

    pub fn contains_zero(&self) -> bool {
        self.lo <= 0 && self.hi >= 0
    }

    pub fn is_positive(&self) -> bool {
        self.lo > 0
    }

    /// `hi < c`: the whole enclosure lies strictly below `c`.
    pub fn certainly_lt(&self, c: &Rational) -> bool {
        self.hi < *c
    }

    pub fn certainly_gt(&self, c: &Rational) -> bool {
        self.lo > *c
    }

    pub fn certainly_lt_real(&self, other: &HighPrecisionReal) -> bool {
        self.hi < other.lo
    }

    /// The common floor of every point in the enclosure, if there is one.
    pub fn floor_certain(&self) -> Option<Integer> {
        let a = self.lo.clone().floor().to_integer()?;
        let b = self.hi.clone().floor().to_integer()?;
        (a == b).then_some(a)
    }

    pub fn abs(&self) -> Self {
        if self.lo >= 0 {
            self.clone()
        } else if self.hi <= 0 {
            -self
        } else {
            let p = self.prec();
            let m = if Float::with_val(p, -&self.lo) > self.hi {
                Float::with_val(p, -&self.lo)
            } else {
                self.hi.clone()
            };
            HighPrecisionReal { lo: Float::new(p), hi: m }
        }
    }

    pub fn sqr(&self) -> Self {
        self * self
    }

    pub fn recip(&self) -> Self {
        assert!(!self.contains_zero(), "reciprocal of an interval containing 0");
        let p = self.prec();
        let lo = Float::with_val_round(p, self.hi.recip_ref(), Round::Down).0;
        let hi = Float::with_val_round(p, self.lo.recip_ref(), Round::Up).0;
        HighPrecisionReal { lo, hi }
    }

    pub fn sqrt(&self) -> Self {
        assert!(self.lo >= 0, "square root of a negative enclosure");
        let p = self.prec();
        let lo = Float::with_val_round(p, self.lo.sqrt_ref(), Round::Down).0;
        let hi = Float::with_val_round(p, self.hi.sqrt_ref(), Round::Up).0;
        HighPrecisionReal { lo, hi }
    }

    pub fn ln(&self) -> Self {
        assert!(self.lo > 0, "logarithm of a nonpositive enclosure");
        let p = self.prec();
        let lo = Float::with_val_round(p, self.lo.ln_ref(), Round::Down).0;
        let hi = Float::with_val_round(p, self.hi.ln_ref(), Round::Up).0;
        HighPrecisionReal { lo, hi }
    }

    pub fn exp(&self) -> Self {
        let p = self.prec();
        let lo = Float::with_val_round(p, self.lo.exp_ref(), Round::Down).0;
        let hi = Float::with_val_round(p, self.hi.exp_ref(), Round::Up).0;
        HighPrecisionReal { lo, hi }
    }

    /// `self^e` for a positive base, computed as `exp(e ln self)`.
    pub fn pow(&self, e: &HighPrecisionReal) -> Self {
        (e * &self.ln()).exp()
    }

    pub fn pow_rational(&self, e: &Rational) -> Self {
        let e = HighPrecisionReal::from_rational(e, self.prec());
        self.pow(&e)
    }

    pub fn powi(&self, n: i32) -> Self {
        let mut acc = HighPrecisionReal::from_int(1, self.prec());
        let mut base = if n < 0 { self.recip() } else { self.clone() };
        let mut k = n.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            base = base.sqr();
            k >>= 1;
        }
        acc
    }

    /// Riemann zeta on an enclosure inside `(1, inf)`, where it is decreasing.
    pub fn zeta(&self) -> Self {
        assert!(self.lo > 1, "zeta enclosure requires argument > 1");
        let p = self.prec();
        let lo = Float::with_val_round(p, self.hi.zeta_ref(), Round::Down).0;
        let hi = Float::with_val_round(p, self.lo.zeta_ref(), Round::Up).0;
        HighPrecisionReal { lo, hi }
    }

    /// Gamma on an enclosure inside `[1, inf)`.
    pub fn gamma(&self) -> Self {
        assert!(self.lo >= 1, "gamma enclosure requires argument >= 1");
        let p = self.prec();
        let g_lo = |x: &Float| Float::with_val_round(p, x.gamma_ref(), Round::Down).0;
        let g_hi = |x: &Float| Float::with_val_round(p, x.gamma_ref(), Round::Up).0;
        if self.hi <= GAMMA_ARGMIN - 1e-9 {
            HighPrecisionReal { lo: g_lo(&self.hi), hi: g_hi(&self.lo) }
        } else if self.lo >= GAMMA_ARGMIN + 1e-9 {
            HighPrecisionReal { lo: g_lo(&self.lo), hi: g_hi(&self.hi) }
        } else {
            let floor = Float::with_val_round(p, Float::parse(GAMMA_MIN_FLOOR).unwrap(), Round::Down).0;
            let a = g_hi(&self.lo);
            let b = g_hi(&self.hi);
            HighPrecisionReal { lo: floor, hi: if a > b { a } else { b } }
        }
    }

    pub fn max(&self, other: &HighPrecisionReal) -> Self {
        let lo = if self.lo > other.lo { self.lo.clone() } else { other.lo.clone() };
        let hi = if self.hi > other.hi { self.hi.clone() } else { other.hi.clone() };
        HighPrecisionReal { lo, hi }
    }

    /// Convex hull of two enclosures.
    pub fn hull(&self, other: &HighPrecisionReal) -> Self {
        let lo = if self.lo < other.lo { self.lo.clone() } else { other.lo.clone() };
        let hi = if self.hi > other.hi { self.hi.clone() } else { other.hi.clone() };
        HighPrecisionReal { lo, hi }
    }

    pub fn mul_rational(&self, r: &Rational) -> Self {
        self * &HighPrecisionReal::from_rational(r, self.prec())
    }

    pub fn cmp_rational(&self, c: &Rational) -> Option<Ordering> {
        if self.hi < *c {
            Some(Ordering::Less)
        } else if self.lo > *c {
            Some(Ordering::Greater)
        } else {
            None
        }
    }
}

impl fmt::Display for HighPrecisionReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f.precision().unwrap_or(12);
        write!(
            f,
            "{} +/- {:.2e}",
            self.mid().to_string_radix(10, Some(digits)),
            self.radius().to_f64()
        )
    }
}

impl Neg for &HighPrecisionReal {
    type Output = HighPrecisionReal;
    fn neg(self) -> HighPrecisionReal {
        HighPrecisionReal {
            lo: Float::with_val(self.hi.prec(), -&self.hi),
            hi: Float::with_val(self.lo.prec(), -&self.lo),
        }
    }
}

impl Neg for HighPrecisionReal {
    type Output = HighPrecisionReal;
    fn neg(self) -> HighPrecisionReal {
        -&self
    }
}

impl Add for &HighPrecisionReal {
    type Output = HighPrecisionReal;
    fn add(self, rhs: &HighPrecisionReal) -> HighPrecisionReal {
        let p = self.prec().max(rhs.prec());
        HighPrecisionReal {
            lo: Float::with_val_round(p, &self.lo + &rhs.lo, Round::Down).0,
            hi: Float::with_val_round(p, &self.hi + &rhs.hi, Round::Up).0,
        }
    }
}

impl Sub for &HighPrecisionReal {
    type Output = HighPrecisionReal;
    fn sub(self, rhs: &HighPrecisionReal) -> HighPrecisionReal {
        let p = self.prec().max(rhs.prec());
        HighPrecisionReal {
            lo: Float::with_val_round(p, &self.lo - &rhs.hi, Round::Down).0,
            hi: Float::with_val_round(p, &self.hi - &rhs.lo, Round::Up).0,
        }
    }
}

impl Mul for &HighPrecisionReal {
    type Output = HighPrecisionReal;
    fn mul(self, rhs: &HighPrecisionReal) -> HighPrecisionReal {
        let p = self.prec().max(rhs.prec());
        let pairs = [
            (&self.lo, &rhs.lo),
            (&self.lo, &rhs.hi),
            (&self.hi, &rhs.lo),
            (&self.hi, &rhs.hi),
        ];
        let mut lo: Option<Float> = None;
        let mut hi: Option<Float> = None;
        for (a, b) in pairs {
            let d = Float::with_val_round(p, a * b, Round::Down).0;
            let u = Float::with_val_round(p, a * b, Round::Up).0;
            if lo.as_ref().is_none_or(|l| d < *l) {
                lo = Some(d);
            }
            if hi.as_ref().is_none_or(|h| u > *h) {
                hi = Some(u);
            }
        }
        HighPrecisionReal { lo: lo.unwrap(), hi: hi.unwrap() }
    }
}

impl Div for &HighPrecisionReal {
    type Output = HighPrecisionReal;
    fn div(self, rhs: &HighPrecisionReal) -> HighPrecisionReal {
        assert!(!rhs.contains_zero(), "division by an interval containing 0");
        let p = self.prec().max(rhs.prec());
        let pairs = [
            (&self.lo, &rhs.lo),
            (&self.lo, &rhs.hi),
            (&self.hi, &rhs.lo),
            (&self.hi, &rhs.hi),
        ];
        let mut lo: Option<Float> = None;
        let mut hi: Option<Float> = None;
        for (a, b) in pairs {
            let d = Float::with_val_round(p, a / b, Round::Down).0;
            let u = Float::with_val_round(p, a / b, Round::Up).0;
            if lo.as_ref().is_none_or(|l| d < *l) {
                lo = Some(d);
            }
            if hi.as_ref().is_none_or(|h| u > *h) {
                hi = Some(u);
            }
        }
        HighPrecisionReal { lo: lo.unwrap(), hi: hi.unwrap() }
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $m:ident),*) => {$(
        impl $tr for HighPrecisionReal {
            type Output = HighPrecisionReal;
            fn $m(self, rhs: HighPrecisionReal) -> HighPrecisionReal {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&HighPrecisionReal> for HighPrecisionReal {
            type Output = HighPrecisionReal;
            fn $m(self, rhs: &HighPrecisionReal) -> HighPrecisionReal {
                (&self).$m(rhs)
            }
        }
        impl $tr<HighPrecisionReal> for &HighPrecisionReal {
            type Output = HighPrecisionReal;
            fn $m(self, rhs: HighPrecisionReal) -> HighPrecisionReal {
                self.$m(&rhs)
            }
        }
    )*};
}

forward_owned!(Add::add, Sub::sub, Mul::mul, Div::div);

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> Rational {
        crate::rational::parse_rational(s).unwrap()
    }

    #[test]
    fn pi_and_constants_are_tight() {
        let pi = HighPrecisionReal::pi(256);
        assert!(pi.certainly_gt(&r("3.14159265358979323846264338327950288419")));
        assert!(pi.certainly_lt(&r("3.14159265358979323846264338327950288420")));
        assert!(pi.radius().to_f64() < 1e-70);
        let g = HighPrecisionReal::euler_gamma(128);
        assert!(g.certainly_gt(&r("0.5772156649015328")));
        assert!(g.certainly_lt(&r("0.5772156649015329")));
    }

    #[test]
    fn arithmetic_encloses_exact_results() {
        let third = HighPrecisionReal::from_rational(&r("1/3"), 64);
        let one = &(&third + &third) + &third;
        assert!(one.contains_rational(&r("1")));
        let neg = -&third;
        let prod = &neg * &third;
        assert!(prod.contains_rational(&r("-1/9")));
        let q = &third / &neg;
        assert!(q.contains_rational(&r("-1")));
        assert!((&third - &third).contains_zero());
    }

    #[test]
    fn special_functions() {
        let two = HighPrecisionReal::from_int(2, 128);
        let z2 = two.zeta();
        let pi2_6 = HighPrecisionReal::pi(128).sqr() / HighPrecisionReal::from_int(6, 128);
        assert!(!z2.certainly_lt_real(&pi2_6) && !pi2_6.certainly_lt_real(&z2));
        let g = HighPrecisionReal::from_rational(&r("1.5"), 128).gamma();
        let sqrt_pi_half = HighPrecisionReal::pi(128).sqrt() / two.clone();
        assert!(!g.certainly_lt_real(&sqrt_pi_half) && !sqrt_pi_half.certainly_lt_real(&g));
        // straddling the minimum of Gamma
        let around = HighPrecisionReal::from_bounds(Float::with_val(64, 1.4), Float::with_val(64, 1.5));
        let ga = around.gamma();
        assert!(ga.certainly_lt(&r("0.8873")) && ga.certainly_gt(&r("0.8856")));
        let e = HighPrecisionReal::from_int(1, 128).exp();
        assert!(e.ln().contains_rational(&r("1")));
        assert!(two.powi(-3).contains_rational(&r("1/8")));
        assert!(two.pow_rational(&r("1/2")).sqr().contains_rational(&r("2")));
    }

    #[test]
    fn floors() {
        let x = HighPrecisionReal::from_rational(&r("788.3"), 64);
        assert_eq!(x.floor_certain(), Some(Integer::from(788)));
        let y = HighPrecisionReal::from_rational(&r("5"), 64).widen(&r("1/100"));
        assert_eq!(y.floor_certain(), None);
    }
}
