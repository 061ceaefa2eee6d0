//! Local volume factors `e(P_v)` and `e'(P_v)` for every parahoric subgroup
//! of an outer form of type A3.

use std::fmt;
use std::str::FromStr;

use rug::ops::Pow;
use rug::{Integer, Rational};
use serde::Serialize;

use crate::error::ParahoricError;
use crate::fields::SplittingType;
use crate::rational::ExactRational;

/// Local form of `G` at a place, as far as the case table depends on it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum LocalForm {
    /// `v` splits in `l` and `G` splits over `k_v`.
    Split,
    /// `v` splits in `l`, `G` is an inner form of `SL_4` over a division
    /// algebra, with the given `k_v`-rank (0 or 1).
    DivisionAlgebra(u8),
    /// `v` does not split in `l`; `k_v`-rank 2 (quasi-split) or 1.
    Unitary(u8),
}

/// The parahoric cases, grouped as split, non-split split-in-`l`, inert and
/// ramified.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum ParahoricCase {
    C1a,
    C1b,
    C1c,
    C1d,
    C1e,
    C2a,
    C2bi,
    C2bii,
    C3ai,
    C3aii,
    C3aiii,
    C3aiv,
    C3av,
    C3bi,
    C3bii,
    C4ai,
    C4aii,
    C4aiii,
    C4aiv,
    C4bi,
    C4bii,
    C4biii,
}

use ParahoricCase::*;

impl ParahoricCase {
    pub const ALL: [ParahoricCase; 22] = [
        C1a, C1b, C1c, C1d, C1e, C2a, C2bi, C2bii, C3ai, C3aii, C3aiii, C3aiv, C3av, C3bi, C3bii, C4ai,
        C4aii, C4aiii, C4aiv, C4bi, C4bii, C4biii,
    ];

    /// Splitting type of `v` in `l` that the case requires.
    pub fn splitting(self) -> SplittingType {
        match self {
            C1a | C1b | C1c | C1d | C1e | C2a | C2bi | C2bii => SplittingType::SplitInL,
            C3ai | C3aii | C3aiii | C3aiv | C3av | C3bi | C3bii => SplittingType::InertInL,
            _ => SplittingType::RamifiedInL,
        }
    }

    pub fn local_form(self) -> LocalForm {
        match self {
            C1a | C1b | C1c | C1d | C1e => LocalForm::Split,
            C2a => LocalForm::DivisionAlgebra(0),
            C2bi | C2bii => LocalForm::DivisionAlgebra(1),
            C3ai | C3aii | C3aiii | C3aiv | C3av | C4ai | C4aii | C4aiii | C4aiv => LocalForm::Unitary(2),
            C3bi | C3bii | C4bi | C4bii | C4biii => LocalForm::Unitary(1),
        }
    }

    /// `k_v`-rank of `G`.
    pub fn local_rank(self) -> u8 {
        match self.local_form() {
            LocalForm::Split => 3,
            LocalForm::DivisionAlgebra(r) | LocalForm::Unitary(r) => r,
        }
    }

    /// Places with this case lie in `T_0` (division algebra ramified there).
    pub fn in_t0(self) -> bool {
        matches!(self.local_form(), LocalForm::DivisionAlgebra(_))
    }

    /// Rank-1 cases at places not split in `l`.
    pub fn is_rank_one_nonsplit(self) -> bool {
        self.local_form() == LocalForm::Unitary(1)
    }

    /// Hyperspecial or special maximal parahoric: `e' = 1`.
    pub fn is_unramified_special(self) -> bool {
        matches!(self, C1a | C3ai | C4ai)
    }

    pub fn is_iwahori(self) -> bool {
        matches!(self, C1e | C2a | C2bii | C3av | C3bii | C4aiv | C4biii)
    }

    /// Cases available at a place with the given behaviour in `l`.
    pub fn compatible_with(split: SplittingType) -> impl Iterator<Item = ParahoricCase> {
        Self::ALL.into_iter().filter(move |c| c.splitting() == split)
    }

    pub fn check(self, split: SplittingType) -> Result<(), ParahoricError> {
        if self.splitting() == split {
            Ok(())
        } else {
            Err(ParahoricError::Incompatible { case: self.to_string(), detail: format!("{split:?}") })
        }
    }
}

impl fmt::Display for ParahoricCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl FromStr for ParahoricCase {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Self::ALL
            .into_iter()
            .find(|c| c.to_string().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown parahoric case `{s}`"))
    }
}

/// Deepest parahoric (maximal `e'`) for each splitting type.
pub fn iwahori_for(split: SplittingType) -> ParahoricCase {
    match split {
        SplittingType::SplitInL => C1e,
        SplittingType::InertInL => C3av,
        SplittingType::RamifiedInL => C4aiv,
    }
}

fn r(x: &Integer) -> Rational {
    Rational::from(x)
}

/// `1 + s q^{-k}` as an exact rational.
fn f(q: &Integer, k: u32, s: i32) -> Rational {
    let qk = Integer::from(Pow::pow(q, k));
    Rational::from((Integer::from(&qk + s), qk))
}

/// `#M(f_v)/q_v^{dim M}` for the reductive quotient of a hyperspecial or
/// special parahoric at `v`.
pub fn density(split: SplittingType, q: u64) -> ExactRational {
    let q = Integer::from(q);
    match split {
        SplittingType::SplitInL => f(&q, 2, -1) * f(&q, 3, -1) * f(&q, 4, -1),
        SplittingType::InertInL => f(&q, 2, -1) * f(&q, 3, 1) * f(&q, 4, -1),
        SplittingType::RamifiedInL => f(&q, 2, -1) * f(&q, 4, -1),
    }
}

/// `e(P_v)` for a residue field of size `q`.
pub fn e_factor(case: ParahoricCase, q: u64) -> ExactRational {
    let qi = Integer::from(q);
    let qp = |k: u32| r(&Integer::from(Pow::pow(&qi, k)));
    let inv = |k: u32, s: i32| f(&qi, k, s).recip();
    match case {
        C1a => inv(2, -1) * inv(3, -1) * inv(4, -1),
        C1b => qp(3) * inv(1, -1) * inv(2, -1) * inv(3, -1),
        C1c => qp(4) * inv(1, -1) * inv(2, -1).square(),
        C1d => qp(5) * inv(2, -1) * inv(1, -1).square(),
        C1e => qp(6) * inv(1, -1).square() * inv(1, -1),
        C2a => qp(6) * inv(1, 1) * inv(2, 1),
        C2bi => qp(4) * inv(1, 1) * inv(4, -1),
        C2bii => qp(6) * inv(1, 1) * inv(2, -1),
        C3ai => inv(2, -1) * inv(3, 1) * inv(4, -1),
        C3aii => qp(4) * inv(1, 1) * inv(2, -1).square(),
        C3aiii => qp(4) * inv(1, -1) * inv(4, -1),
        C3aiv => qp(5) * inv(2, -1).square(),
        C3av => qp(6) * inv(1, -1) * inv(2, -1),
        C3bi => qp(3) * inv(1, 1) * inv(2, -1) * inv(3, 1),
        C3bii => qp(6) * inv(1, 1) * inv(2, -1),
        C4ai => inv(2, -1) * inv(4, -1),
        C4aii => qp(2) * inv(2, -1).square(),
        C4aiii => qp(3) * inv(1, -1) * inv(2, -1),
        C4aiv => qp(4) * inv(1, -1).square(),
        C4bi => qp(2) * inv(4, -1),
        C4bii => qp(3) * inv(1, 1) * inv(2, -1),
        C4biii => qp(4) * inv(2, -1),
    }
}

/// `e'(P_v) = e(P_v) #M(f_v)/q_v^{dim M}`, a positive integer.
pub fn e_prime(case: ParahoricCase, q: u64) -> Integer {
    let q = Integer::from(q);
    let p = |k: u32, s: i32| Integer::from(Pow::pow(&q, k)) + s;
    let q2q1 = p(2, 0) + &q + 1u32;
    match case {
        C1a | C3ai | C4ai => Integer::from(1),
        C1b => p(1, 1) * p(2, 1),
        C1c => p(2, 1) * q2q1,
        C1d => p(1, 1) * p(2, 1) * q2q1,
        C1e => p(1, 1).square() * p(2, 1) * q2q1,
        C2a => p(1, -1) * p(2, -1) * p(3, -1),
        C2bi => p(1, -1) * p(3, -1),
        C2bii => p(1, -1) * p(2, 1) * p(3, -1),
        C3aii => p(2, 1) * (p(2, 1) - &q),
        C3aiii => p(1, 1) * p(3, 1),
        C3aiv => p(2, 1) * p(3, 1),
        C3av => p(1, 1) * p(2, 1) * p(3, 1),
        C3bi => p(1, -1) * p(2, 1),
        C3bii => p(1, -1) * p(2, 1) * p(3, 1),
        C4aii => p(2, 1),
        C4aiii => p(1, 1) * p(2, 1),
        C4aiv => p(1, 1).square() * p(2, 1),
        C4bi => p(2, -1),
        C4bii => p(1, -1) * p(2, 1),
        C4biii => p(4, -1),
    }
}

/// `e'` after checking the case against the place's splitting type.
pub fn e_prime_checked(case: ParahoricCase, split: SplittingType, q: u64) -> Result<Integer, ParahoricError> {
    case.check(split)?;
    Ok(e_prime(case, q))
}

/// Every `e'` at a place of `T_0` is a multiple of `(q - 1)(q^3 - 1)`,
/// the value for a maximal parahoric of `k_v`-rank 1.
pub fn t0_minimal_multiple(q: u64) -> Integer {
    e_prime(C2bi, q)
}

/// `psi_1(q) = q^2 - 1`.
pub fn psi1(q: u64) -> Integer {
    e_prime(C4bi, q)
}

/// `psi_2(q) = (q - 1)(q^2 + 1)`.
pub fn psi2(q: u64) -> Integer {
    e_prime(C3bi, q)
}

/// Smallest `e' > 1` over all cases compatible with `split` at size `q`.
pub fn min_nontrivial_e_prime(split: SplittingType, q: u64) -> Integer {
    ParahoricCase::compatible_with(split)
        .filter(|c| !c.is_unramified_special())
        .map(|c| e_prime(c, q))
        .min()
        .expect("every splitting type has non-special cases")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::parse_rational;

    #[test]
    fn densities() {
        assert_eq!(density(SplittingType::SplitInL, 2), parse_rational("315/512").unwrap());
        assert_eq!(density(SplittingType::InertInL, 2), parse_rational("405/512").unwrap());
        assert_eq!(density(SplittingType::RamifiedInL, 2), parse_rational("45/64").unwrap());
    }

    #[test]
    fn quoted_values() {
        assert_eq!(e_factor(C2a, 2), parse_rational("512/15").unwrap());
        assert_eq!(e_prime(C2bi, 2), 7);
        assert_eq!(e_prime(C2bii, 2), 35);
        assert_eq!(e_prime(C2a, 2), 21);
        assert_eq!(e_prime(C4bi, 7), 48);
        assert_eq!(psi2(3), 20);
        assert_eq!(psi2(5), 104);
        assert_eq!(psi2(7), 300);
        assert_eq!(psi2(13), 2040);
        assert_eq!(psi1(2), 3);
        assert_eq!(e_prime(C4bii, 7), psi2(7));
    }

    #[test]
    fn relation_between_e_and_e_prime() {
        for case in ParahoricCase::ALL {
            for q in [2u64, 3, 4, 5, 7, 9, 49, 121] {
                let lhs = e_factor(case, q) * density(case.splitting(), q);
                assert_eq!(lhs, Rational::from(e_prime(case, q)), "{case} q={q}");
            }
        }
    }

    #[test]
    fn names_round_trip() {
        for case in ParahoricCase::ALL {
            assert_eq!(case.to_string().parse::<ParahoricCase>().unwrap(), case);
        }
        assert!("C5a".parse::<ParahoricCase>().is_err());
    }

    #[test]
    fn compatibility() {
        assert!(C2bi.check(SplittingType::SplitInL).is_ok());
        assert!(C2bi.check(SplittingType::InertInL).is_err());
        assert_eq!(ParahoricCase::compatible_with(SplittingType::InertInL).count(), 7);
        assert_eq!(min_nontrivial_e_prime(SplittingType::RamifiedInL, 2), 3);
    }
}
