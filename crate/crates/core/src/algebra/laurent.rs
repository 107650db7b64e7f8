use super::field::FieldElement;
use super::poly::Poly;
use super::AlgebraError;

/// Truncated Laurent series at infinity, `sum_{e <= top} c_e x^e`, kept for
/// exponents `top >= e >= order`.
///
/// Coefficients below `order` were not computed; [`LaurentSeries::coeff`]
/// returns `None` for them so callers can detect insufficient precision.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentSeries {
    p: u32,
    top: i64,
    order: i64,
    // coeffs[k] is the coefficient of x^(top - k)
    coeffs: Vec<FieldElement>,
}

impl LaurentSeries {
    pub fn modulus(&self) -> u32 {
        self.p
    }

    /// Exponent of the leading term (`deg num - deg den`). Meaningless for the zero series.
    pub fn top_exponent(&self) -> i64 {
        self.top
    }

    pub fn truncation_order(&self) -> i64 {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// Coefficient of `x^e`, or `None` if `e` lies below the truncation order.
    pub fn coeff(&self, e: i64) -> Option<FieldElement> {
        if e < self.order {
            return None;
        }
        if e > self.top {
            return Some(0);
        }
        Some(self.coeffs[(self.top - e) as usize])
    }

    /// Coefficient of `x^(-k)`; the digit convention used by the digital constructions.
    pub fn coeff_neg(&self, k: usize) -> Option<FieldElement> {
        self.coeff(-(k as i64))
    }
}

/// Expands `num / den` in powers of `x^-1`, down to and including `x^order`.
pub fn laurent_expand(num: &Poly, den: &Poly, order: i64) -> Result<LaurentSeries, AlgebraError> {
    if num.modulus() != den.modulus() {
        return Err(AlgebraError::ModulusMismatch(num.modulus(), den.modulus()));
    }
    let dd = den.degree().ok_or(AlgebraError::DivisionByZero)? as i64;
    let p = num.modulus();
    let Some(nd) = num.degree() else {
        return Ok(LaurentSeries { p, top: order - 1, order, coeffs: Vec::new() });
    };
    let top = nd as i64 - dd;
    if top < order {
        return Ok(LaurentSeries { p, top, order, coeffs: Vec::new() });
    }
    // num * x^k = q * den + r with deg r < deg den, so num/den and q * x^-k agree
    // on every exponent >= -k.
    let k = (-order).max(0) as usize;
    let (q, _) = num.shift(k).div_rem(den)?;
    let coeffs = (order..=top)
        .rev()
        .map(|e| q.coeff((e + k as i64) as usize))
        .collect();
    Ok(LaurentSeries { p, top, order, coeffs })
}

/// First `terms` coefficients of the power series `num / den` at `x = 0`.
/// Requires `den(0) != 0`.
pub fn power_series_div(num: &Poly, den: &Poly, terms: usize) -> Result<Vec<FieldElement>, AlgebraError> {
    if num.modulus() != den.modulus() {
        return Err(AlgebraError::ModulusMismatch(num.modulus(), den.modulus()));
    }
    let field = den.field();
    let c0_inv = field.inv(den.coeff(0)).ok_or(AlgebraError::NotInvertibleAtZero)?;
    let mut out = Vec::with_capacity(terms);
    // out[n] = (num_n - sum_{i=1..n} den_i out[n-i]) / den_0
    for n in 0..terms {
        let mut acc = num.coeff(n);
        for i in 1..=n.min(den.coeffs().len().saturating_sub(1)) {
            acc = field.sub(acc, field.mul(den.coeff(i), out[n - i]));
        }
        out.push(field.mul(acc, c0_inv));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p2(c: &[u64]) -> Poly {
        Poly::new(2, c.iter().copied())
    }

    #[test]
    fn one_over_x() {
        let s = laurent_expand(&Poly::one(2), &p2(&[0, 1]), -6).unwrap();
        assert_eq!(s.top_exponent(), -1);
        for e in -6..=3 {
            assert_eq!(s.coeff(e), Some(u32::from(e == -1)));
        }
        assert_eq!(s.coeff(-7), None);
    }

    #[test]
    fn one_over_x_squared() {
        let s = laurent_expand(&Poly::one(2), &p2(&[0, 0, 1]), -5).unwrap();
        let got: Vec<_> = (-5..=0).map(|e| s.coeff(e).unwrap()).collect();
        assert_eq!(got, vec![0, 0, 0, 1, 0, 0]);
    }

    #[test]
    fn one_over_x_plus_one() {
        let den = p2(&[1, 1]);
        let s = laurent_expand(&Poly::one(2), &den, -4).unwrap();
        let got: Vec<_> = (1..=4).map(|k| s.coeff_neg(k).unwrap()).collect();
        assert_eq!(got, vec![1, 1, 1, 1]);
        assert_eq!(s.coeff(0), Some(0));
        // (x + 1)(x^-1 + x^-2 + x^-3 + x^-4) = 1 + x^-4; scale by x^4 to stay polynomial.
        let s_poly = p2(&[1, 1, 1, 1]); // x^3 + x^2 + x + 1 = x^4 * S
        assert_eq!(&den * &s_poly, p2(&[1, 0, 0, 0, 1]));
    }

    #[test]
    fn polynomial_part_and_zero() {
        // (x^3 + 1) / x over F_3 = x^2 + x^-1
        let s = laurent_expand(&Poly::new(3, [1, 0, 0, 1]), &Poly::x(3), -3).unwrap();
        assert_eq!(s.top_exponent(), 2);
        let got: Vec<_> = (-3..=2).rev().map(|e| s.coeff(e).unwrap()).collect();
        assert_eq!(got, vec![1, 0, 0, 1, 0, 0]);
        assert!(laurent_expand(&Poly::zero(3), &Poly::x(3), -3).unwrap().is_zero());
        assert_eq!(
            laurent_expand(&Poly::one(3), &Poly::zero(3), -3),
            Err(AlgebraError::DivisionByZero)
        );
    }

    #[test]
    fn power_series_inverse() {
        // 1 / (1 + x) over F_3 = 1 - x + x^2 - ...
        let s = power_series_div(&Poly::one(3), &Poly::new(3, [1, 1]), 6).unwrap();
        assert_eq!(s, vec![1, 2, 1, 2, 1, 2]);
        assert_eq!(
            power_series_div(&Poly::one(3), &Poly::x(3), 3),
            Err(AlgebraError::NotInvertibleAtZero)
        );
    }

    proptest! {
        // den * S reproduces num in every coefficient the truncation can vouch for.
        #[test]
        fn multiply_back(num in prop::collection::vec(0u64..3, 0..7),
                         den in prop::collection::vec(0u64..3, 1..6),
                         depth in 1i64..12) {
            let num = Poly::new(3, num);
            let den = Poly::new(3, den);
            prop_assume!(!den.is_zero());
            let order = -depth;
            let s = laurent_expand(&num, &den, order).unwrap();
            let dd = den.degree().unwrap() as i64;
            let hi = num.degree().map_or(0, |d| d as i64);
            // coefficient of x^e in den * S is exact for e >= order + dd
            for e in (order + dd)..=hi.max(order + dd) {
                let mut acc = 0u64;
                for (i, &c) in den.coeffs().iter().enumerate() {
                    acc += u64::from(c) * u64::from(s.coeff(e - i as i64).unwrap());
                }
                let expected = if e >= 0 { num.coeff(e as usize) } else { 0 };
                prop_assert_eq!((acc % 3) as u32, expected, "exponent {}", e);
            }
        }
    }
}
