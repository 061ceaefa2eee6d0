//! Special values of `zeta`, `zeta_k` and `L_{l|k}` at the negative integers
//! entering the covolume formula, together with the functional equations
//! linking them to the values at `s = 2, 3, 4`.

pub mod afe;
pub mod character;
pub mod numeric;

use std::sync::OnceLock;

use rug::ops::Pow;
use rug::{Integer, Rational};
use serde::Serialize;

use crate::arith::{is_fundamental_discriminant, primes_up_to, sigma};
use crate::error::ZetaError;
use crate::fields::{FieldPair, Galois, SplittingType};
use crate::rational::ExactRational;
use crate::real::HighPrecisionReal;

pub use crate::rational::{numerator_is_power_of_2, rational_reconstruct};
use character::DirichletCharacter;

/// Largest Bernoulli index served by [`bernoulli`].
pub const BERNOULLI_CAP: u32 = 64;

/// Largest index accepted by [`generalized_bernoulli`].
pub const GENERALIZED_BERNOULLI_CAP: u32 = 8;

fn bernoulli_table() -> &'static [Rational] {
    static TABLE: OnceLock<Vec<Rational>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let n = BERNOULLI_CAP as usize;
        let mut b: Vec<Rational> = Vec::with_capacity(n + 1);
        b.push(Rational::from(1));
        for m in 1..=n {
            // sum_{k <= m} C(m+1, k) B_k = 0
            let mut s = Rational::new();
            for (k, bk) in b.iter().enumerate() {
                s += Rational::from(bk * Integer::from(Integer::binomial_u(m as u32 + 1, k as u32)));
            }
            b.push(-s / Integer::from(m + 1));
        }
        b
    })
}

/// Bernoulli number `B_n` with `B_1 = -1/2`.
pub fn bernoulli(n: u32) -> Result<ExactRational, ZetaError> {
    if n > BERNOULLI_CAP {
        return Err(ZetaError::BernoulliCap(n));
    }
    Ok(bernoulli_table()[n as usize].clone())
}

/// Bernoulli polynomial `B_n(x)`.
pub fn bernoulli_polynomial(n: u32, x: &Rational) -> Result<ExactRational, ZetaError> {
    let mut s = Rational::new();
    let mut xp = Rational::from(1);
    // accumulate from the top coefficient down: B_n(x) = sum C(n,k) B_{n-k} x^k
    for k in 0..=n {
        let c = Integer::from(Integer::binomial_u(n, k));
        s += bernoulli(n - k)? * c * &xp;
        xp *= x;
    }
    Ok(s)
}

/// `zeta(-n)` for `n` in `{1, 3}`.
pub fn zeta_rational_neg(n: u32) -> Result<ExactRational, ZetaError> {
    if n != 1 && n != 3 {
        return Err(ZetaError::Unsupported(format!("zeta(-{n})")));
    }
    Ok(-bernoulli(n + 1)? / (n + 1))
}

/// `zeta_k(-n)`, `n` in `{1, 3}`, for the real quadratic field of
/// discriminant `dk`, by Siegel's divisor sums
/// `zeta_k(-1) = (1/60) sum_t sigma_1((dk - t^2)/4)` and
/// `zeta_k(-3) = (1/120) sum_t sigma_3((dk - t^2)/4)`.
pub fn zeta_quadratic_neg(dk: i64, n: u32) -> Result<ExactRational, ZetaError> {
    if dk <= 1 || !is_fundamental_discriminant(dk) {
        return Err(crate::error::FieldError::NotFundamental(dk).into());
    }
    let den = match n {
        1 => 60,
        3 => 120,
        _ => return Err(ZetaError::Unsupported(format!("zeta_k(-{n})"))),
    };
    let mut total = Integer::new();
    let mut t: i64 = -((dk as f64).sqrt() as i64) - 1;
    while t * t < dk || t <= 0 {
        if t * t < dk && (dk - t * t) % 4 == 0 {
            total += sigma(((dk - t * t) / 4) as u64, n);
        }
        t += 1;
    }
    Ok(Rational::from((total, den)))
}

/// `zeta_k(-n)` for `k = Q` (`dk = 1`) or real quadratic `k`.
pub fn zeta_k_neg(dk: u64, n: u32) -> Result<ExactRational, ZetaError> {
    if dk == 1 {
        zeta_rational_neg(n)
    } else {
        zeta_quadratic_neg(dk as i64, n)
    }
}

/// Generalized Bernoulli number `B_{n,chi} = f^{n-1} sum_a chi(a) B_n(a/f)`
/// of the primitive character inducing `chi`, as `(re, im)`.
pub fn generalized_bernoulli(
    n: u32,
    chi: &DirichletCharacter,
) -> Result<(ExactRational, ExactRational), ZetaError> {
    if n > GENERALIZED_BERNOULLI_CAP {
        return Err(ZetaError::BernoulliCap(n));
    }
    let chi = chi.primitive();
    let f = chi.modulus();
    let mut re = Rational::new();
    let mut im = Rational::new();
    for a in 1..=f {
        let v = chi.eval(a as i64);
        if v.is_zero() {
            continue;
        }
        let b = bernoulli_polynomial(n, &Rational::from((a, f)))?;
        re += Rational::from(&b * v.re);
        im += b * v.im;
    }
    let scale = Integer::from(f).pow(n - 1);
    Ok((re * &scale, im * scale))
}

/// `L(1 - n, chi) = -B_{n,chi}/n` as `(re, im)`.
pub fn l_value_neg(n: u32, chi: &DirichletCharacter) -> Result<(ExactRational, ExactRational), ZetaError> {
    let (re, im) = generalized_bernoulli(n, chi)?;
    Ok((-re / n, -im / n))
}

/// How `L_{l|k}(-2)` was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum LPath {
    /// Generalized Bernoulli numbers of the characters cutting out `l`.
    Bernoulli,
    /// Approximate functional equation followed by rational reconstruction.
    Afe,
    /// Euler product at `s = 3`, functional equation, rational reconstruction.
    EulerProduct,
}

impl std::fmt::Display for LPath {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            LPath::Bernoulli => "exact",
            LPath::Afe => "reconstructed",
            LPath::EulerProduct => "euler-product",
        })
    }
}

/// Precision and caps for the numeric L-value paths.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct NumericConfig {
    pub precision_bits: u32,
    pub prime_cap: u64,
    pub den_cap: u64,
}

impl Default for NumericConfig {
    fn default() -> Self {
        NumericConfig { precision_bits: 384, prime_cap: 1_000_000, den_cap: 10_000 }
    }
}

/// A signed relative L-value and the path that produced it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LValue {
    pub value: ExactRational,
    pub path: LPath,
}

fn l_minus2_exact(pair: &FieldPair) -> Result<Option<ExactRational>, ZetaError> {
    let real = |(re, im): (Rational, Rational)| {
        debug_assert_eq!(im, 0);
        re
    };
    Ok(match pair.ext.galois {
        Galois::Quadratic(d) => Some(real(l_value_neg(3, &DirichletCharacter::kronecker(d))?)),
        Galois::Biquadratic(m1, m2) => {
            let a = real(l_value_neg(3, &DirichletCharacter::kronecker(m1))?);
            let b = real(l_value_neg(3, &DirichletCharacter::kronecker(m2))?);
            Some(a * b)
        }
        Galois::Cyclic { .. } => {
            let chi = pair.ext.galois.cyclic_character().expect("cyclic");
            let (re, im) = l_value_neg(3, &chi)?;
            Some(re.square() + im.square())
        }
        Galois::NonAbelian => None,
    })
}

/// Signed `L_{l|k}(-2)` along an explicitly chosen path.
pub fn l_rel_minus2_via(pair: &FieldPair, path: LPath, cfg: &NumericConfig) -> Result<ExactRational, ZetaError> {
    match path {
        LPath::Bernoulli => l_minus2_exact(pair)?
            .ok_or_else(|| ZetaError::Unsupported(format!("{} is not abelian over Q", pair.label))),
        LPath::Afe => {
            if pair.degree() != 2 {
                return Err(ZetaError::Unsupported("approximate functional equation needs [k:Q] = 2".into()));
            }
            let x = afe::l_minus2(pair, cfg.precision_bits)?;
            rational_reconstruct(&x, cfg.den_cap)
        }
        LPath::EulerProduct => {
            let l3 = euler_product_l3(pair, cfg.prime_cap, cfg.precision_bits)?;
            let x = functional_eq_l(pair.degree(), pair.base.disc(), pair.ext.disc, 1, &l3)?;
            rational_reconstruct(&x, cfg.den_cap)
        }
    }
}

/// Signed `L_{l|k}(-2)`: exact for abelian `l`, reconstructed otherwise.
pub fn l_rel_minus2_signed(pair: &FieldPair, cfg: &NumericConfig) -> Result<LValue, ZetaError> {
    if let Some(value) = l_minus2_exact(pair)? {
        return Ok(LValue { value, path: LPath::Bernoulli });
    }
    let path = if pair.degree() == 2 { LPath::Afe } else { LPath::EulerProduct };
    Ok(LValue { value: l_rel_minus2_via(pair, path, cfg)?, path })
}

/// `|L_{l|k}(-2)|`, after checking the sign forced by the functional
/// equation (negative for `d = 1`, positive for `d = 2`).
pub fn l_rel_minus2(pair: &FieldPair, cfg: &NumericConfig) -> Result<LValue, ZetaError> {
    let mut lv = l_rel_minus2_signed(pair, cfg)?;
    let expected_negative = pair.degree() == 1;
    if (lv.value < 0) != expected_negative || lv.value == 0 {
        return Err(ZetaError::Sign(pair.label.clone()));
    }
    lv.value.abs_mut();
    Ok(lv)
}

fn gamma_factor(j: u32, prec: u32) -> HighPrecisionReal {
    // (-1)^j 2^{2j-1} pi^{2j} / (2j-1)!
    let pi = HighPrecisionReal::pi(prec);
    let num = Integer::from(1) << (2 * j - 1);
    let den = Integer::from(Integer::factorial(2 * j - 1));
    let mut c = Rational::from((num, den));
    if j % 2 == 1 {
        c = -c;
    }
    pi.powi(2 * j as i32).mul_rational(&c)
}

fn check_zeta_args(d: u8, j: u32) -> Result<(), ZetaError> {
    if d != 1 && d != 2 {
        return Err(ZetaError::Unsupported(format!("degree {d}")));
    }
    if j != 1 && j != 2 {
        return Err(ZetaError::Unsupported(format!("j = {j}")));
    }
    Ok(())
}

/// `zeta_k(2j)` from `zeta_k(1 - 2j)`:
/// `zeta_k(2j) = D_k^{1/2-2j} ((-1)^j 2^{2j-1} pi^{2j} / (2j-1)!)^d zeta_k(1-2j)`.
pub fn functional_eq_zeta(d: u8, dk: u64, j: u32, value: &ExactRational, prec: u32) -> Result<HighPrecisionReal, ZetaError> {
    check_zeta_args(d, j)?;
    let factor = zeta_fe_factor(d, dk, j, prec);
    Ok(factor.mul_rational(value))
}

/// `zeta_k(1 - 2j)` from an enclosure of `zeta_k(2j)`.
pub fn functional_eq_zeta_inverse(d: u8, dk: u64, j: u32, value: &HighPrecisionReal) -> Result<HighPrecisionReal, ZetaError> {
    check_zeta_args(d, j)?;
    let factor = zeta_fe_factor(d, dk, j, value.prec());
    Ok(value / &factor)
}

fn zeta_fe_factor(d: u8, dk: u64, j: u32, prec: u32) -> HighPrecisionReal {
    let g = gamma_factor(j, prec).powi(d as i32);
    let disc = HighPrecisionReal::from_int(dk as i64, prec);
    let e = Rational::from((1 - 4 * j as i64, 2));
    &disc.pow_rational(&e) * &g
}

/// `L_{l|k}(-2j)` from an enclosure of `L_{l|k}(2j+1)`, inverting
/// `L(2j+1) = (D_k/D_l)^{2j+1/2} ((-1)^j 2^{2j} pi^{2j+1} / (2j)!)^d L(-2j)`.
pub fn functional_eq_l(d: u8, dk: u64, dl: u64, j: u32, value: &HighPrecisionReal) -> Result<HighPrecisionReal, ZetaError> {
    if j != 1 {
        return Err(ZetaError::Unsupported(format!("j = {j}")));
    }
    if d != 1 && d != 2 {
        return Err(ZetaError::Unsupported(format!("degree {d}")));
    }
    if dl <= dk || !dl.is_multiple_of(dk) {
        return Err(ZetaError::Unsupported(format!("D_l = {dl} must be a proper multiple of D_k = {dk}")));
    }
    let prec = value.prec();
    let pi = HighPrecisionReal::pi(prec);
    // (-1)^1 2^2 pi^3 / 2! = -2 pi^3
    let g = pi.powi(3).mul_rational(&Rational::from(-2)).powi(d as i32);
    let ratio = HighPrecisionReal::from_rational(&Rational::from((dk, dl)), prec);
    let factor = &ratio.pow_rational(&Rational::from((5, 2))) * &g;
    Ok(value / &factor)
}

/// `L_{l|k}(3)` from the exact value `L_{l|k}(-2)`.
pub fn l3_from_minus2(d: u8, dk: u64, dl: u64, value: &ExactRational, prec: u32) -> Result<HighPrecisionReal, ZetaError> {
    let one = HighPrecisionReal::from_int(1, prec);
    let factor = functional_eq_l(d, dk, dl, 1, &one)?.recip();
    Ok(factor.mul_rational(value))
}

/// `L_{l|k}(3)` as an Euler product over the places with `q_v <= prime_cap`.
///
/// Each omitted factor has `|log| <= 1/(q^3 - 1)`, and at most two places lie
/// over each prime, so the log of the tail is bounded by `2/cap^2`.
pub fn euler_product_l3(pair: &FieldPair, prime_cap: u64, prec: u32) -> Result<HighPrecisionReal, ZetaError> {
    let wp = prec + 32;
    let mut prod = HighPrecisionReal::from_int(1, wp);
    for p in primes_up_to(prime_cap) {
        for (v, split) in pair.local_data(p)? {
            if v.q > prime_cap {
                continue;
            }
            let q3 = Integer::from(v.q).pow(3);
            let factor = match split {
                SplittingType::SplitInL => Rational::from((q3.clone(), q3 - 1u32)),
                SplittingType::InertInL => Rational::from((q3.clone(), q3 + 1u32)),
                SplittingType::RamifiedInL => continue,
            };
            prod = prod.mul_rational(&factor);
        }
    }
    let t = HighPrecisionReal::from_rational(&Rational::from((2u64, Integer::from(prime_cap).square())), wp);
    let lo = (-&t).exp();
    let hi = t.exp();
    let range = HighPrecisionReal::from_bounds(lo.lower().clone(), hi.upper().clone());
    Ok((&prod * &range).with_prec(prec))
}

/// The signed factors of `R = 2^{-3d} zeta_k(-1) L_{l|k}(-2) zeta_k(-3)`
/// and their absolute product.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScriptR {
    pub zeta_m1: ExactRational,
    pub l_m2: ExactRational,
    pub zeta_m3: ExactRational,
    pub path: LPath,
    pub value: ExactRational,
}

/// `R` for a pair, from the exact negative values.
pub fn script_r(pair: &FieldPair, cfg: &NumericConfig) -> Result<ScriptR, ZetaError> {
    let dk = pair.base.disc();
    let d = pair.degree() as u32;
    let zeta_m1 = zeta_k_neg(dk, 1)?;
    let zeta_m3 = zeta_k_neg(dk, 3)?;
    let lv = l_rel_minus2_signed(pair, cfg)?;
    let product = Rational::from(&zeta_m1 * &lv.value) * &zeta_m3 / (Integer::from(1) << (3 * d));
    if product <= 0 {
        return Err(ZetaError::Sign(pair.label.clone()));
    }
    Ok(ScriptR { zeta_m1, l_m2: lv.value, zeta_m3, path: lv.path, value: product })
}

/// `zeta_k(1 - 2j)` by the functional equation applied to a certified
/// numerical value of `zeta_k(2j)`; an oracle independent of Siegel's sums.
pub fn zeta_quadratic_neg_numeric(dk: u64, j: u32, prec: u32) -> Result<HighPrecisionReal, ZetaError> {
    let z = numeric::zeta_quadratic(dk, 2 * j, prec);
    functional_eq_zeta_inverse(2, dk, j, &z)
}
