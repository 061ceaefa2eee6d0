//! Dirichlet characters of order dividing 4, valued in the Gaussian integers.

use std::collections::HashMap;
use std::ops::Mul;

use crate::arith::{gcd, kronecker, lcm, primitive_root};

/// `re + im*i` with small integer parts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GaussInt {
    pub re: i64,
    pub im: i64,
}

impl GaussInt {
    pub const ZERO: GaussInt = GaussInt { re: 0, im: 0 };
    pub const ONE: GaussInt = GaussInt { re: 1, im: 0 };
    pub const I: GaussInt = GaussInt { re: 0, im: 1 };

    pub fn conj(self) -> GaussInt {
        GaussInt { re: self.re, im: -self.im }
    }

    pub fn is_zero(self) -> bool {
        self == GaussInt::ZERO
    }

    pub fn pow(self, mut e: u32) -> GaussInt {
        let mut acc = GaussInt::ONE;
        let mut b = self;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * b;
            }
            b = b * b;
            e >>= 1;
        }
        acc
    }
}

impl Mul for GaussInt {
    type Output = GaussInt;
    fn mul(self, o: GaussInt) -> GaussInt {
        GaussInt {
            re: self.re * o.re - self.im * o.im,
            im: self.re * o.im + self.im * o.re,
        }
    }
}

/// A Dirichlet character stored as its value table modulo `modulus`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirichletCharacter {
    modulus: u64,
    values: Vec<GaussInt>,
}

impl DirichletCharacter {
    pub fn trivial() -> Self {
        DirichletCharacter { modulus: 1, values: vec![GaussInt::ONE] }
    }

    /// The quadratic character `n -> (d | n)` of a fundamental discriminant.
    pub fn kronecker(d: i64) -> Self {
        let m = d.unsigned_abs();
        let values = (0..m)
            .map(|n| GaussInt { re: kronecker(d, n) as i64, im: 0 })
            .collect();
        DirichletCharacter { modulus: m, values }
    }

    /// The quartic character of conductor `q` sending the least primitive
    /// root to `i` (q prime, q = 1 mod 4), or for `q = 16` the even
    /// character with `5 -> i`.
    pub fn quartic(q: u64) -> Self {
        let mut values = vec![GaussInt::ZERO; q as usize];
        if q == 16 {
            let mut g = 1u64;
            for j in 0..4u32 {
                values[g as usize] = GaussInt::I.pow(j);
                values[(16 - g) as usize] = GaussInt::I.pow(j);
                g = g * 5 % 16;
            }
        } else {
            assert!(q % 4 == 1, "quartic character needs q = 1 mod 4");
            let g = primitive_root(q);
            let mut x = 1u64;
            for j in 0..(q - 1) {
                values[x as usize] = GaussInt::I.pow((j % 4) as u32);
                x = x * g % q;
            }
        }
        DirichletCharacter { modulus: q, values }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn eval(&self, n: i64) -> GaussInt {
        self.values[n.rem_euclid(self.modulus as i64) as usize]
    }

    pub fn conj(&self) -> Self {
        DirichletCharacter {
            modulus: self.modulus,
            values: self.values.iter().map(|v| v.conj()).collect(),
        }
    }

    /// Smallest k in {1, 2, 4} with chi^k trivial on units.
    pub fn order(&self) -> u8 {
        for k in [1u32, 2, 4] {
            if self.values.iter().filter(|v| !v.is_zero()).all(|v| v.pow(k) == GaussInt::ONE) {
                return k as u8;
            }
        }
        unreachable!("values are fourth roots of unity")
    }

    pub fn is_odd(&self) -> bool {
        self.eval(-1) == GaussInt { re: -1, im: 0 }
    }

    /// The primitive character inducing this one; its modulus is the conductor.
    pub fn primitive(&self) -> Self {
        let m = self.modulus;
        let divisors: Vec<u64> = (1..=m).filter(|d| m.is_multiple_of(*d)).collect();
        for f in divisors {
            let mut by_class: HashMap<u64, GaussInt> = HashMap::new();
            let mut ok = true;
            for a in 0..m {
                if gcd(a, m) != 1 {
                    continue;
                }
                let v = self.values[a as usize];
                match by_class.insert(a % f, v) {
                    Some(prev) if prev != v => {
                        ok = false;
                        break;
                    }
                    _ => {}
                }
            }
            if ok {
                let values = (0..f)
                    .map(|r| {
                        if gcd(r, f) == 1 {
                            by_class[&(r % f)]
                        } else {
                            GaussInt::ZERO
                        }
                    })
                    .collect();
                return DirichletCharacter { modulus: f, values };
            }
        }
        unreachable!("the modulus itself always works")
    }

    pub fn conductor(&self) -> u64 {
        self.primitive().modulus
    }
}

impl Mul for &DirichletCharacter {
    type Output = DirichletCharacter;
    /// Product character, reduced to its primitive form.
    fn mul(self, o: &DirichletCharacter) -> DirichletCharacter {
        let m = lcm(self.modulus, o.modulus);
        let values = (0..m)
            .map(|n| {
                if gcd(n, m) != 1 {
                    GaussInt::ZERO
                } else {
                    self.eval(n as i64) * o.eval(n as i64)
                }
            })
            .collect();
        DirichletCharacter { modulus: m, values }.primitive()
    }
}
