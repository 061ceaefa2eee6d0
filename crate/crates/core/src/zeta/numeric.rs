//! Certified numerical values of Dirichlet series at integers s >= 2.

use rug::{Integer, Rational};

use super::bernoulli;
use super::character::DirichletCharacter;
use crate::real::HighPrecisionReal;

const EM_SHIFT: u64 = 30;
const EM_TERMS: u32 = 15;

fn rising(s: u32, j: u32) -> Integer {
    (0..j).fold(Integer::from(1), |acc, i| acc * (s + i))
}

fn factorial(n: u32) -> Integer {
    Integer::from(Integer::factorial(n))
}

/// Hurwitz zeta `sum_{n >= 0} (n + x)^{-s}` for integer `s >= 2` and
/// rational `x > 0`, by Euler-Maclaurin with an explicit remainder bound.
pub fn hurwitz_zeta(s: u32, x: &Rational, prec: u32) -> HighPrecisionReal {
    assert!(s >= 2 && *x > 0);
    let mut sum = HighPrecisionReal::from_int(0, prec);
    for n in 0..EM_SHIFT {
        let base = HighPrecisionReal::from_rational(&Rational::from(x + n), prec);
        sum = &sum + &base.powi(-(s as i32));
    }
    let y = HighPrecisionReal::from_rational(&Rational::from(x + EM_SHIFT), prec);
    let s_int = s as i32;
    sum = &sum + &(y.powi(1 - s_int) / HighPrecisionReal::from_int(s as i64 - 1, prec));
    sum = &sum + &(y.powi(-s_int) / HighPrecisionReal::from_int(2, prec));
    for j in 1..=EM_TERMS {
        let b = bernoulli(2 * j).expect("within cap");
        let coef = b * Rational::from((rising(s, 2 * j - 1), factorial(2 * j)));
        let term = y.powi(-(s_int + 2 * j as i32 - 1)).mul_rational(&coef);
        sum = &sum + &term;
    }
    let bk = bernoulli(2 * EM_TERMS).expect("within cap").abs();
    let rem_coef = bk * Rational::from((rising(s, 2 * EM_TERMS - 1), factorial(2 * EM_TERMS)));
    let rem = y.powi(-(s_int + 2 * EM_TERMS as i32 - 1)).mul_rational(&rem_coef);
    let eps = rem.upper_rational();
    sum.widen(&eps)
}

/// `L(s, chi)` for a character of conductor `f`, via Hurwitz zeta.
pub fn dirichlet_l(s: u32, chi: &DirichletCharacter, prec: u32) -> HighPrecisionReal {
    let f = chi.modulus();
    let mut total = HighPrecisionReal::from_int(0, prec);
    for a in 1..=f {
        let v = chi.eval(a as i64);
        assert_eq!(v.im, 0, "real characters only");
        if v.re == 0 {
            continue;
        }
        let h = hurwitz_zeta(s, &Rational::from((a, f)), prec);
        total = if v.re > 0 { &total + &h } else { &total - &h };
    }
    let scale = HighPrecisionReal::from_int(f as i64, prec).powi(-(s as i32));
    &total * &scale
}

/// `zeta_k(s)` for the real quadratic field of discriminant `d`.
pub fn zeta_quadratic(d: u64, s: u32, prec: u32) -> HighPrecisionReal {
    let chi = DirichletCharacter::kronecker(d as i64);
    let z = HighPrecisionReal::from_int(s as i64, prec).zeta();
    &z * &dirichlet_l(s, &chi, prec)
}
