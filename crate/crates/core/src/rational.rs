//! Exact rationals and recovery of rationals from certified enclosures.

use rug::ops::Pow;
use rug::{Integer, Rational};

use crate::error::ZetaError;
use crate::real::HighPrecisionReal;

/// Reduced fraction with positive denominator. `rug::Rational` keeps both
/// invariants on every operation.
pub type ExactRational = Rational;

/// Parses `a/b`, `a`, or a finite decimal such as `-0.4811`.
pub fn parse_rational(s: &str) -> Option<ExactRational> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    if let Some((num, den)) = s.split_once('/') {
        let num: Integer = num.trim().parse().ok()?;
        let den: Integer = den.trim().parse().ok()?;
        if den == 0 {
            return None;
        }
        return Some(Rational::from((num, den)));
    }
    if let Some((int_part, frac_part)) = s.split_once('.') {
        if frac_part.is_empty() || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let negative = int_part.starts_with('-');
        let int_digits = int_part.trim_start_matches(['-', '+']);
        if !int_digits.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let digits = format!("{int_digits}{frac_part}");
        let mut num: Integer = digits.parse().ok()?;
        if negative {
            num = -num;
        }
        let den = Integer::from(10).pow(frac_part.len() as u32);
        return Some(Rational::from((num, den)));
    }
    let n: Integer = s.parse().ok()?;
    Some(Rational::from(n))
}

/// Always `num/den`, including `n/1` for integers.
pub fn format_fraction(x: &ExactRational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// True iff `x > 0` and its reduced numerator is 1, 2, 4, 8, ...
pub fn numerator_is_power_of_2(x: &ExactRational) -> bool {
    *x.numer() > 0 && x.numer().is_power_of_two()
}

pub fn is_integer(x: &ExactRational) -> bool {
    *x.denom() == 1
}

/// Smallest-denominator rational in the closed interval `[lo, hi]`.
pub fn simplest_in_interval(lo: &Rational, hi: &Rational) -> Rational {
    debug_assert!(lo <= hi);
    if *lo <= 0 && *hi >= 0 {
        return Rational::new();
    }
    if *hi < 0 {
        let neg_lo = Rational::from(-hi);
        let neg_hi = Rational::from(-lo);
        return -simplest_in_interval(&neg_lo, &neg_hi);
    }
    // 0 < lo <= hi
    let ceil_lo = lo.clone().ceil();
    if ceil_lo <= *hi {
        return ceil_lo;
    }
    let floor_lo = lo.clone().floor();
    let a = Rational::from(lo - &floor_lo);
    let b = Rational::from(hi - &floor_lo);
    let inner = simplest_in_interval(&b.recip(), &a.recip());
    floor_lo + inner.recip()
}

/// Recovers the unique rational with denominator at most `den_cap` inside
/// the enclosure `x`.
///
/// The enclosure radius must be below `1/(2 den_cap^2)`; two distinct
/// fractions with denominators at most `den_cap` are then further apart than
/// the enclosure is wide, so any hit is unique.
pub fn rational_reconstruct(
    x: &HighPrecisionReal,
    den_cap: u64,
) -> Result<ExactRational, ZetaError> {
    let lo = x.lower_rational();
    let hi = x.upper_rational();
    let radius = Rational::from(&hi - &lo) / 2u32;
    let cap = Integer::from(den_cap);
    let limit = Rational::from((Integer::from(1), Integer::from(2u32) * &cap * &cap));
    if radius >= limit {
        return Err(ZetaError::PrecisionInsufficient {
            cap: den_cap,
            radius: format!("{:.3e}", radius.to_f64()),
        });
    }
    let best = simplest_in_interval(&lo, &hi);
    if *best.denom() > cap {
        return Err(ZetaError::NoRationalFound {
            cap: den_cap,
            lo: format!("{:.12e}", lo.to_f64()),
            hi: format!("{:.12e}", hi.to_f64()),
        });
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Rational {
        parse_rational(s).unwrap()
    }

    #[test]
    fn parses_all_forms() {
        assert_eq!(q("4/5"), Rational::from((4, 5)));
        assert_eq!(q("-6/4"), Rational::from((-3, 2)));
        assert_eq!(q("17"), Rational::from(17));
        assert_eq!(q("0.4811"), Rational::from((4811, 10000)));
        assert_eq!(q("-1.5"), Rational::from((-3, 2)));
        assert!(parse_rational("1/0").is_none());
        assert!(parse_rational("1.").is_none());
        assert!(parse_rational("x").is_none());
    }

    #[test]
    fn power_of_two_numerators() {
        assert!(!numerator_is_power_of_2(&q("2503/168")));
        assert!(numerator_is_power_of_2(&q("4/3")));
        assert!(numerator_is_power_of_2(&q("1/240")));
        assert!(!numerator_is_power_of_2(&q("-4/3")));
        assert!(!numerator_is_power_of_2(&q("0")));
    }

    #[test]
    fn simplest_rational() {
        assert_eq!(simplest_in_interval(&q("0.79"), &q("0.81")), q("4/5"));
        assert_eq!(simplest_in_interval(&q("-0.51"), &q("-0.49")), q("-1/2"));
        assert_eq!(simplest_in_interval(&q("-1"), &q("1")), q("0"));
        assert_eq!(simplest_in_interval(&q("3.1415"), &q("3.1416")), q("333/106"));
    }

    #[test]
    fn reconstruct_examples() {
        let prec = 128;
        let eps = q("1/10000000000");
        let x = HighPrecisionReal::from_rational(&q("0.8"), prec).widen(&eps);
        assert_eq!(rational_reconstruct(&x, 10_000).unwrap(), q("4/5"));
        let half = HighPrecisionReal::from_rational(&q("1/2"), prec).widen(&eps);
        assert_eq!(rational_reconstruct(&half, 10_000).unwrap(), q("1/2"));
        let pi = HighPrecisionReal::pi(prec).widen(&eps);
        assert!(matches!(
            rational_reconstruct(&pi, 10),
            Err(ZetaError::NoRationalFound { .. })
        ));
        let wide = HighPrecisionReal::from_rational(&q("1/3"), prec).widen(&q("1/1000"));
        assert!(matches!(
            rational_reconstruct(&wide, 10_000),
            Err(ZetaError::PrecisionInsufficient { .. })
        ));
    }
}
