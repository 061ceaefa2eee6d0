//! Approximate functional equation for `L_{l|k}(-2)` when `[k : Q] = 2`.
//!
//! With `N = D_l / D_k` and `A = sqrt(N) / pi`, the completed function
//! `Lambda(s) = pi^{-1} A^s Gamma((s+1)/2)^2 L(s)` satisfies
//! `Lambda(s) = Lambda(1 - s)`. Splitting its Mellin integral at the
//! self-dual point gives
//!
//! ```text
//! L(-2) = N / (4 pi^3) * sum_n a_n [G(3, n/A) + G(-2, n/A)]
//! G(s, x) = 4 x^{-s} int_x^inf u^s K_0(2u) du
//! ```
//!
//! and `G(3, x) + G(-2, x) = x^{-3} + 4 pi x^2 - 4x sum_k t_k (alpha_k - c beta_k)`
//! where `t_k = x^{2k} / (k!)^2`, `c = gamma + ln x`, and `alpha_k`, `beta_k`
//! are rationals collecting the two power series of the incomplete integrals.

use rayon::prelude::*;
use rug::Rational;

use crate::arith::primes_up_to;
use crate::error::FieldError;
use crate::fields::{FieldPair, SplittingType};
use crate::real::HighPrecisionReal;

/// Absolute size of the discarded tail of the Dirichlet sum.
const TAIL_BITS: u32 = 110;

/// Coefficients `a_1..=a_nmax` of `L_{l|k}(s) = sum a_n n^{-s}` (index 0 unused).
pub fn dirichlet_coefficients(pair: &FieldPair, nmax: usize) -> Result<Vec<i64>, FieldError> {
    let mut spf = vec![0usize; nmax + 1];
    let mut local: Vec<Vec<i64>> = vec![Vec::new(); nmax + 1];
    for p in primes_up_to(nmax as u64) {
        let p = p as usize;
        let mut m = p;
        while m <= nmax {
            if spf[m] == 0 {
                spf[m] = p;
            }
            m += p;
        }
        let mut len = 1usize;
        let mut pk = p;
        while pk <= nmax {
            len += 1;
            pk = pk.saturating_mul(p);
        }
        // series in X = p^{-s}: product over places of (1 - eps X^f)^{-1}
        let mut series = vec![0i64; len];
        series[0] = 1;
        for (v, split) in pair.local_data(p as u64)? {
            let f = v.residue_degree() as usize;
            let eps = match split {
                SplittingType::SplitInL => 1i64,
                SplittingType::InertInL => -1,
                SplittingType::RamifiedInL => continue,
            };
            // multiply by 1 + eps X^f + X^{2f} eps^2 + ...
            for i in f..len {
                series[i] += eps * series[i - f];
            }
        }
        local[p] = series;
    }
    let mut a = vec![0i64; nmax + 1];
    if nmax >= 1 {
        a[1] = 1;
    }
    for n in 2..=nmax {
        let p = spf[n];
        let mut m = n;
        let mut e = 0;
        while m % p == 0 {
            m /= p;
            e += 1;
        }
        a[n] = a[m] * local[p][e];
    }
    Ok(a)
}

struct SeriesTables {
    alpha: Vec<HighPrecisionReal>,
    beta: Vec<HighPrecisionReal>,
    inv_k2: Vec<HighPrecisionReal>,
}

fn series_tables(kmax: usize, prec: u32) -> SeriesTables {
    let mut alpha = Vec::with_capacity(kmax + 1);
    let mut beta = Vec::with_capacity(kmax + 1);
    let mut inv_k2 = Vec::with_capacity(kmax + 1);
    let mut harmonic = Rational::new();
    for k in 0..=kmax as i64 {
        if k > 0 {
            harmonic += Rational::from((1, k));
        }
        let m3 = Rational::from(2 * k + 4);
        let m2 = Rational::from(2 * k - 1);
        let r1 = Rational::from(m3.recip_ref()) + Rational::from(m2.recip_ref());
        let r2 = Rational::from(m3.recip_ref()).square() + Rational::from(m2.recip_ref()).square();
        let a = Rational::from(&harmonic * &r1) + r2;
        alpha.push(HighPrecisionReal::from_rational(&a, prec));
        beta.push(HighPrecisionReal::from_rational(&r1, prec));
        inv_k2.push(if k == 0 {
            HighPrecisionReal::from_int(1, prec)
        } else {
            HighPrecisionReal::from_rational(&Rational::from((1, k * k)), prec)
        });
    }
    SeriesTables { alpha, beta, inv_k2 }
}

/// `G(3, x) + G(-2, x)` for an enclosure `x >= 1`.
fn kernel(x: &HighPrecisionReal, tables: &SeriesTables, euler: &HighPrecisionReal, pi: &HighPrecisionReal, target_bits: u32) -> HighPrecisionReal {
    let prec = x.prec();
    let u = x.sqr();
    let c = euler + &x.ln();
    let c_abs = c.abs().upper().to_f64();
    let xf = x.upper().to_f64();
    let mut t = HighPrecisionReal::from_int(1, prec);
    let mut sa = HighPrecisionReal::from_int(0, prec);
    let mut sb = HighPrecisionReal::from_int(0, prec);
    let mut k = 0usize;
    loop {
        if k > 0 {
            t = &(&t * &u) * &tables.inv_k2[k];
        }
        sa = &sa + &(&t * &tables.alpha[k]);
        sb = &sb + &(&t * &tables.beta[k]);
        k += 1;
        if k + 1 >= tables.alpha.len() {
            panic!("series table too short for x = {xf}");
        }
        if (k as f64) >= 2.0 * xf + 1.0 {
            // next term bound t_k (2k + 2 + 2|c|), successive ratio <= 3/8
            let next = &(&t * &u) * &tables.inv_k2[k];
            let bound = next.upper().to_f64() * (2.0 * k as f64 + 2.0 + 2.0 * c_abs) * 1.6;
            if bound < 2f64.powi(-(target_bits as i32)) {
                let eps = Rational::from_f64(bound * 1.01).expect("finite bound");
                let sum = &sa - &(&c * &sb);
                let sum = sum.widen(&eps);
                let four = HighPrecisionReal::from_int(4, prec);
                let first = x.powi(-3);
                let second = &(&four * pi) * &u;
                let third = &(&four * x) * &sum;
                return &(&first + &second) - &third;
            }
        }
    }
}

/// Certified enclosure of `L_{l|k}(-2)` for a pair with `[k : Q] = 2`.
pub fn l_minus2(pair: &FieldPair, prec: u32) -> Result<HighPrecisionReal, FieldError> {
    assert_eq!(pair.degree(), 2, "approximate functional equation is set up for d = 2");
    let n_cond = pair.conductor() as i64;
    let a_f = (n_cond as f64).sqrt() / std::f64::consts::PI;
    // smallest x0 with the tail bound below 2^-TAIL_BITS, found on floats and certified below
    let mut x0 = 5.0f64;
    loop {
        let n0 = (x0 * a_f).ceil();
        let t = 3.0 * std::f64::consts::PI.sqrt() / x0.sqrt()
            * (-2.0 * x0).exp()
            * (a_f * n0 / 2.0 + a_f * a_f / 4.0 + a_f);
        if t < 2f64.powi(-(TAIL_BITS as i32)) {
            break;
        }
        x0 += 0.5;
    }
    let n0 = (x0 * a_f).ceil() as usize;
    let wp = prec + (3.0 * x0) as u32 + 64;
    let coeffs = dirichlet_coefficients(pair, n0)?;

    let pi = HighPrecisionReal::pi(wp);
    let euler = HighPrecisionReal::euler_gamma(wp);
    let big_n = HighPrecisionReal::from_int(n_cond, wp);
    let a = &big_n.sqrt() / &pi;
    let kmax = (2.0 * x0 + 2.0 * TAIL_BITS as f64) as usize + 64;
    let tables = series_tables(kmax, wp);

    let terms: Vec<HighPrecisionReal> = (1..=n0)
        .into_par_iter()
        .filter(|&n| coeffs[n] != 0)
        .map(|n| {
            let x = &HighPrecisionReal::from_int(n as i64, wp) / &a;
            let g = kernel(&x, &tables, &euler, &pi, prec.max(TAIL_BITS + 20));
            g.mul_rational(&Rational::from(coeffs[n]))
        })
        .collect();
    let mut s = HighPrecisionReal::from_int(0, wp);
    for t in &terms {
        s = &s + t;
    }

    // tail: sum_{n > n0} |a_n| |G(3,x_n) + G(-2,x_n)| with |a_n| <= n and
    // K_0(z) <= sqrt(pi/2z) e^{-z}
    let n0r = HighPrecisionReal::from_int(n0 as i64, wp);
    let x0r = &n0r / &a;
    let three_sqrt_pi = &HighPrecisionReal::from_int(3, wp) * &pi.sqrt();
    let decay = (-(&HighPrecisionReal::from_int(2, wp) * &x0r)).exp();
    let poly = &(&(&a * &n0r) / &HighPrecisionReal::from_int(2, wp)) + &(&a.sqr() / &HighPrecisionReal::from_int(4, wp));
    let tail = &(&(&three_sqrt_pi / &x0r.sqrt()) * &decay) * &poly;
    let s = s.widen(&tail.upper_rational());

    let four_pi3 = &HighPrecisionReal::from_int(4, wp) * &pi.powi(3);
    Ok((&(&big_n * &s) / &four_pi3).with_prec(prec))
}
