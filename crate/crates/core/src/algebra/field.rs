use serde::{Deserialize, Serialize};

use super::AlgebraError;

/// Element of a prime field, stored as its canonical representative in `[0, p)`.
///
/// The modulus is carried by the surrounding [`PrimeField`] or [`super::Poly`].
pub type FieldElement = u32;

/// The prime field `F_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self, AlgebraError> {
        if !is_prime(u64::from(p)) {
            return Err(AlgebraError::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    /// Skips the primality check. Callers must already hold a validated modulus.
    pub(crate) const fn new_unchecked(p: u32) -> Self {
        PrimeField { p }
    }

    #[inline]
    pub fn modulus(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn reduce(&self, v: u64) -> FieldElement {
        (v % u64::from(self.p)) as u32
    }

    #[inline]
    pub fn reduce_signed(&self, v: i64) -> FieldElement {
        v.rem_euclid(i64::from(self.p)) as u32
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(&self, a: FieldElement) -> FieldElement {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        ((u64::from(a) * u64::from(b)) % u64::from(self.p)) as u32
    }

    pub fn pow(&self, a: FieldElement, mut e: u64) -> FieldElement {
        let mut base = a % self.p;
        let mut acc = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse by the extended Euclidean algorithm. `None` for zero.
    pub fn inv(&self, a: FieldElement) -> Option<FieldElement> {
        let a = a % self.p;
        if a == 0 {
            return None;
        }
        let (mut r0, mut r1) = (i64::from(self.p), i64::from(a));
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        debug_assert_eq!(r0, 1);
        Some(self.reduce_signed(t0))
    }

    /// True iff `a` is the square of a nonzero element (Euler's criterion; `p = 2` treats 1 as a square).
    pub fn is_nonzero_square(&self, a: FieldElement) -> bool {
        let a = a % self.p;
        if a == 0 {
            return false;
        }
        if self.p == 2 {
            return true;
        }
        self.pow(a, u64::from((self.p - 1) / 2)) == 1
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        0..self.p
    }
}

/// Deterministic primality by trial division; moduli here are small.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// `C(n, k) mod p` via Lucas' theorem.
pub fn binomial_mod(mut n: u64, mut k: u64, p: u32) -> FieldElement {
    if k > n {
        return 0;
    }
    let field = PrimeField::new_unchecked(p);
    let pp = u64::from(p);
    let mut acc: FieldElement = 1 % p;
    while n > 0 || k > 0 {
        let (ni, ki) = (n % pp, k % pp);
        if ki > ni {
            return 0;
        }
        acc = field.mul(acc, small_binomial(ni, ki, &field));
        n /= pp;
        k /= pp;
    }
    acc
}

fn small_binomial(n: u64, k: u64, field: &PrimeField) -> FieldElement {
    // n < p, so every factor below is invertible.
    let mut num = 1;
    let mut den = 1;
    for i in 0..k {
        num = field.mul(num, field.reduce(n - i));
        den = field.mul(den, field.reduce(i + 1));
    }
    field.mul(num, field.inv(den).expect("k < p"))
}
