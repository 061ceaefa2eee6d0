//! Factorization patterns of small integer polynomials modulo a prime.

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, b, p);
        }
        b = mulmod(b, b, p);
        e >>= 1;
    }
    acc
}

/// Dense polynomial over F_p, lowest coefficient first, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Poly {
    c: Vec<u64>,
}

impl Poly {
    fn new(mut c: Vec<u64>) -> Self {
        while c.last() == Some(&0) {
            c.pop();
        }
        Poly { c }
    }

    fn from_ints(coeffs: &[i64], p: u64) -> Self {
        Poly::new(coeffs.iter().map(|&a| a.rem_euclid(p as i64) as u64).collect())
    }

    fn x() -> Self {
        Poly { c: vec![0, 1] }
    }

    fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    fn sub(&self, other: &Poly, p: u64) -> Poly {
        let n = self.c.len().max(other.c.len());
        let mut out = vec![0u64; n];
        for (i, slot) in out.iter_mut().enumerate() {
            let a = self.c.get(i).copied().unwrap_or(0);
            let b = other.c.get(i).copied().unwrap_or(0);
            *slot = (a + p - b) % p;
        }
        Poly::new(out)
    }

    fn mul(&self, other: &Poly, p: u64) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::new(vec![]);
        }
        let mut out = vec![0u64; self.c.len() + other.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            for (j, &b) in other.c.iter().enumerate() {
                out[i + j] = (out[i + j] + mulmod(a, b, p)) % p;
            }
        }
        Poly::new(out)
    }

    /// Returns (quotient, remainder).
    fn divrem(&self, d: &Poly, p: u64) -> (Poly, Poly) {
        let dd = d.degree().expect("division by zero polynomial");
        let inv = powmod(d.c[dd], p - 2, p);
        let mut r = self.c.clone();
        if r.len() <= dd {
            return (Poly::new(vec![]), Poly::new(r));
        }
        let mut q = vec![0u64; r.len() - dd];
        for i in (dd..r.len()).rev() {
            let coef = mulmod(r[i], inv, p);
            if coef == 0 {
                continue;
            }
            q[i - dd] = coef;
            for j in 0..=dd {
                let sub = mulmod(coef, d.c[j], p);
                r[i - dd + j] = (r[i - dd + j] + p - sub) % p;
            }
        }
        (Poly::new(q), Poly::new(r))
    }

    fn rem(&self, d: &Poly, p: u64) -> Poly {
        self.divrem(d, p).1
    }

    fn gcd(&self, other: &Poly, p: u64) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b, p);
            a = b;
            b = r;
        }
        a
    }

    fn derivative(&self, p: u64) -> Poly {
        Poly::new(
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &a)| mulmod(a, i as u64 % p, p))
                .collect(),
        )
    }

    /// `self^e mod m`.
    fn powmod(&self, mut e: u64, m: &Poly, p: u64) -> Poly {
        let mut acc = Poly::new(vec![1]).rem(m, p);
        let mut base = self.rem(m, p);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base, p).rem(m, p);
            }
            base = base.mul(&base, p).rem(m, p);
            e >>= 1;
        }
        acc
    }
}

/// Degrees of the irreducible factors of `f` modulo `p`, sorted ascending.
///
/// `coeffs` lists the integer coefficients from the constant term up and the
/// polynomial must be monic. Returns `None` when `f` is not squarefree
/// modulo `p`, i.e. when `p` divides the polynomial discriminant.
pub fn factor_degrees_mod_p(coeffs: &[i64], p: u64) -> Option<Vec<usize>> {
    let f = Poly::from_ints(coeffs, p);
    let n = f.degree()?;
    if n == 0 {
        return Some(vec![]);
    }
    let g = f.gcd(&f.derivative(p), p);
    if g.degree() != Some(0) {
        return None;
    }
    let mut degrees = Vec::new();
    let mut rest = f;
    let mut h = Poly::x();
    let mut i = 1usize;
    while rest.degree().unwrap_or(0) >= 2 * i {
        h = h.powmod(p, &rest, p);
        let g = rest.gcd(&h.sub(&Poly::x(), p), p);
        let gd = g.degree().unwrap_or(0);
        if gd > 0 {
            degrees.extend(std::iter::repeat_n(i, gd / i));
            rest = rest.divrem(&g, p).0;
            h = h.rem(&rest, p);
        }
        i += 1;
    }
    if let Some(d) = rest.degree() {
        if d > 0 {
            degrees.push(d);
        }
    }
    degrees.sort_unstable();
    Some(degrees)
}
