use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::field::{binomial_mod, FieldElement, PrimeField};
use super::AlgebraError;

/// Univariate polynomial over `F_p`, coefficients lowest degree first.
///
/// Always canonical: no trailing zero coefficients, and the zero polynomial
/// has an empty coefficient vector. [`Poly::degree`] returns `None` for zero,
/// which sorts below every `Some(d)` and so plays the role of `-inf`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    p: u32,
    coeffs: Vec<FieldElement>,
}

impl Poly {
    /// Builds a polynomial, reducing each coefficient mod `p` and trimming.
    ///
    /// `p` is not checked for primality here; use [`PrimeField::new`] at the
    /// boundary where a modulus enters the program.
    pub fn new(p: u32, coeffs: impl IntoIterator<Item = u64>) -> Self {
        let pp = u64::from(p);
        let coeffs = coeffs.into_iter().map(|c| (c % pp) as u32).collect();
        Self::from_reduced(p, coeffs)
    }

    pub fn from_signed(p: u32, coeffs: impl IntoIterator<Item = i64>) -> Self {
        let pp = i64::from(p);
        let coeffs = coeffs.into_iter().map(|c| c.rem_euclid(pp) as u32).collect();
        Self::from_reduced(p, coeffs)
    }

    pub(crate) fn from_reduced(p: u32, mut coeffs: Vec<FieldElement>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Poly { p, coeffs }
    }

    pub fn zero(p: u32) -> Self {
        Poly { p, coeffs: Vec::new() }
    }

    pub fn one(p: u32) -> Self {
        Self::constant(p, 1)
    }

    pub fn constant(p: u32, c: u64) -> Self {
        Self::new(p, [c])
    }

    /// The polynomial `x`.
    pub fn x(p: u32) -> Self {
        Self::monomial(p, 1, 1)
    }

    pub fn monomial(p: u32, degree: usize, c: u64) -> Self {
        let mut coeffs = vec![0u64; degree + 1];
        coeffs[degree] = c;
        Self::new(p, coeffs)
    }

    /// The unique polynomial of degree `< p` whose value at `a` is `values[a]`.
    ///
    /// Uses `f(X) = sum_a v_a (1 - (X - a)^(p-1))`.
    pub fn interpolate(p: u32, values: &[FieldElement]) -> Result<Self, AlgebraError> {
        if values.len() != p as usize {
            return Err(AlgebraError::InterpolationLength {
                expected: p as usize,
                got: values.len(),
            });
        }
        let field = PrimeField::new(p)?;
        let mut acc = Poly::zero(p);
        for (a, &v) in values.iter().enumerate() {
            if v == 0 {
                continue;
            }
            let shifted = Poly::new(p, [u64::from(field.neg(a as u32)), 1]);
            let indicator = &Poly::one(p) - &shifted.pow(u64::from(p - 1));
            acc = &acc + &indicator.scale(v);
        }
        Ok(acc)
    }

    #[inline]
    pub fn modulus(&self) -> u32 {
        self.p
    }

    #[inline]
    pub(crate) fn field(&self) -> PrimeField {
        PrimeField::new_unchecked(self.p)
    }

    /// Coefficients lowest degree first, without trailing zeros.
    #[inline]
    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    /// Coefficient of `x^i` (zero beyond the degree).
    #[inline]
    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    #[inline]
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn leading_coeff(&self) -> FieldElement {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff() == 1
    }

    /// Divides by the leading coefficient. The zero polynomial is returned unchanged.
    pub fn to_monic(&self) -> Self {
        match self.field().inv(self.leading_coeff()) {
            Some(inv) => self.scale(inv),
            None => self.clone(),
        }
    }

    pub fn scale(&self, c: FieldElement) -> Self {
        let f = self.field();
        Self::from_reduced(self.p, self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    /// Multiplication by `x^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![0; k];
        coeffs.extend_from_slice(&self.coeffs);
        Poly { p: self.p, coeffs }
    }

    /// Horner evaluation at `a`.
    pub fn eval(&self, a: FieldElement) -> FieldElement {
        let f = self.field();
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| f.add(f.mul(acc, a), c))
    }

    /// Value table `[f(0), f(1), ..., f(p-1)]`.
    pub fn value_table(&self) -> Vec<FieldElement> {
        (0..self.p).map(|a| self.eval(a)).collect()
    }

    /// Formal derivative.
    pub fn derivative(&self) -> Self {
        self.hasse_derivative(1)
    }

    /// `k`-th Hasse derivative: `sum_i C(i, k) a_i x^(i-k)`, binomials reduced mod `p`.
    pub fn hasse_derivative(&self, k: usize) -> Self {
        if k == 0 {
            return self.clone();
        }
        let f = self.field();
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(k)
            .map(|(i, &a)| f.mul(binomial_mod(i as u64, k as u64, self.p), a))
            .collect();
        Self::from_reduced(self.p, coeffs)
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Poly::one(self.p);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `self^e mod modulus`.
    pub fn pow_mod(&self, mut e: u64, modulus: &Poly) -> Result<Self, AlgebraError> {
        let mut base = self.rem(modulus)?;
        let mut acc = Poly::one(self.p).rem(modulus)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = (&acc * &base).rem(modulus)?;
            }
            e >>= 1;
            if e > 0 {
                base = (&base * &base).rem(modulus)?;
            }
        }
        Ok(acc)
    }

    fn check_modulus(&self, other: &Poly) -> Result<(), AlgebraError> {
        if self.p != other.p {
            return Err(AlgebraError::ModulusMismatch(self.p, other.p));
        }
        Ok(())
    }

    /// Quotient and remainder with `deg(rem) < deg(divisor)`.
    pub fn div_rem(&self, divisor: &Poly) -> Result<(Poly, Poly), AlgebraError> {
        self.check_modulus(divisor)?;
        let dd = divisor.degree().ok_or(AlgebraError::DivisionByZero)?;
        let f = self.field();
        let lead_inv = f.inv(divisor.leading_coeff()).expect("nonzero leading coefficient");
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Poly::zero(self.p), self.clone()));
        }
        let mut quot = vec![0; rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = f.mul(rem[i + dd], lead_inv);
            if c == 0 {
                continue;
            }
            quot[i] = c;
            for (j, &dc) in divisor.coeffs.iter().enumerate() {
                rem[i + j] = f.sub(rem[i + j], f.mul(c, dc));
            }
        }
        rem.truncate(dd);
        Ok((Self::from_reduced(self.p, quot), Self::from_reduced(self.p, rem)))
    }

    pub fn rem(&self, divisor: &Poly) -> Result<Poly, AlgebraError> {
        Ok(self.div_rem(divisor)?.1)
    }

    /// Exact division; errors if `divisor` does not divide `self`.
    pub fn exact_div(&self, divisor: &Poly) -> Result<Poly, AlgebraError> {
        let (q, r) = self.div_rem(divisor)?;
        if !r.is_zero() {
            return Err(AlgebraError::NotDivisible);
        }
        Ok(q)
    }

    /// Monic greatest common divisor. `gcd(0, 0)` is an error.
    pub fn gcd(&self, other: &Poly) -> Result<Poly, AlgebraError> {
        self.check_modulus(other)?;
        if self.is_zero() && other.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        Ok(a.to_monic())
    }

    /// Total order used for canonical listings: degree first, then the
    /// coefficient vector compared lexicographically from the constant term up.
    pub fn canonical_cmp(&self, other: &Poly) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.coeffs.cmp(&other.coeffs))
    }

    /// Text form: a `p=<prime>` header line followed by comma-separated
    /// coefficients, lowest degree first. The zero polynomial is written as `0`.
    pub fn to_text(&self) -> String {
        format!("p={}\n{}\n", self.p, self.coeff_list())
    }

    /// Comma-separated coefficients, lowest degree first (`0` for zero).
    pub fn coeff_list(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        self.coeffs
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }

    /// Parses the format written by [`Poly::to_text`].
    pub fn from_text(text: &str) -> Result<Self, AlgebraError> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let header = lines.next().ok_or_else(|| AlgebraError::Parse("empty input".into()))?;
        let p = header
            .strip_prefix("p=")
            .and_then(|v| v.trim().parse::<u32>().ok())
            .ok_or_else(|| AlgebraError::Parse(format!("expected `p=<prime>` header, got `{header}`")))?;
        PrimeField::new(p)?;
        let body: Vec<&str> = lines.collect();
        Self::parse_coeffs(p, &body.join(","))
    }

    /// Parses a comma-separated coefficient list over `F_p`.
    pub fn parse_coeffs(p: u32, list: &str) -> Result<Self, AlgebraError> {
        let mut coeffs = Vec::new();
        for tok in list.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let v: i64 = tok
                .parse()
                .map_err(|_| AlgebraError::Parse(format!("bad coefficient `{tok}`")))?;
            coeffs.push(v);
        }
        Ok(Self::from_signed(p, coeffs))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[p={}]({})", self.p, self)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (i, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "x")?,
                (1, c) => write!(f, "{c}x")?,
                (i, 1) => write!(f, "x^{i}")?,
                (i, c) => write!(f, "{c}x^{i}")?,
            }
        }
        Ok(())
    }
}

impl serde::Serialize for Poly {
    /// Serialized as the coefficient list, lowest degree first.
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.coeffs.serialize(s)
    }
}

fn assert_same_field(a: &Poly, b: &Poly) {
    assert_eq!(a.p, b.p, "polynomials over different fields");
}

impl Add for &Poly {
    type Output = Poly;

    fn add(self, rhs: &Poly) -> Poly {
        assert_same_field(self, rhs);
        let f = self.field();
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| f.add(self.coeff(i), rhs.coeff(i))).collect();
        Poly::from_reduced(self.p, coeffs)
    }
}

impl Sub for &Poly {
    type Output = Poly;

    fn sub(self, rhs: &Poly) -> Poly {
        assert_same_field(self, rhs);
        let f = self.field();
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| f.sub(self.coeff(i), rhs.coeff(i))).collect();
        Poly::from_reduced(self.p, coeffs)
    }
}

impl Neg for &Poly {
    type Output = Poly;

    fn neg(self) -> Poly {
        let f = self.field();
        Poly::from_reduced(self.p, self.coeffs.iter().map(|&c| f.neg(c)).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;

    fn mul(self, rhs: &Poly) -> Poly {
        assert_same_field(self, rhs);
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(self.p);
        }
        let pp = u64::from(self.p);
        let mut acc = vec![0u64; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                acc[i + j] = (acc[i + j] + u64::from(a) * u64::from(b)) % pp;
            }
        }
        Poly::from_reduced(self.p, acc.into_iter().map(|c| c as u32).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// Operation selector for [`poly_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Mul,
    DivMod,
    Gcd,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PolyArithOutput {
    Single(Poly),
    QuotRem(Poly, Poly),
}

/// Checked entry point for binary polynomial arithmetic.
///
/// Unlike the operator impls, mismatched moduli are reported as an error
/// rather than a panic.
pub fn poly_arith(f: &Poly, g: &Poly, op: PolyOp) -> Result<PolyArithOutput, AlgebraError> {
    f.check_modulus(g)?;
    Ok(match op {
        PolyOp::Add => PolyArithOutput::Single(f + g),
        PolyOp::Mul => PolyArithOutput::Single(f * g),
        PolyOp::DivMod => {
            let (q, r) = f.div_rem(g)?;
            PolyArithOutput::QuotRem(q, r)
        }
        PolyOp::Gcd => {
            if g.is_zero() {
                return Err(AlgebraError::DivisionByZero);
            }
            PolyArithOutput::Single(f.gcd(g)?)
        }
    })
}
