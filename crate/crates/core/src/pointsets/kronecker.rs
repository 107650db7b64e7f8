use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;

use super::{PointSet, PointSetError, Provenance};

/// Irrational (or decimal) multiplier of a Kronecker sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Alpha {
    /// `sqrt(d)`
    Sqrt(u64),
    /// A non-negative decimal such as `0.6180339887498948482`.
    Decimal(String),
}

impl FromStr for Alpha {
    type Err = PointSetError;

    /// Accepts `sqrt(d)`, `sqrt d`, `√d`, or a decimal.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let bad = || PointSetError::BadAlpha(s.to_string());
        let inner = t
            .strip_prefix("sqrt")
            .or_else(|| t.strip_prefix('√'))
            .map(|r| r.trim().trim_start_matches('(').trim_end_matches(')').trim());
        if let Some(d) = inner {
            return d.parse().map(Alpha::Sqrt).map_err(|_| bad());
        }
        let (int, frac) = t.split_once('.').unwrap_or((t, ""));
        let digits_ok = |x: &str| x.chars().all(|c| c.is_ascii_digit());
        if (int.is_empty() && frac.is_empty()) || !digits_ok(int) || !digits_ok(frac) {
            return Err(bad());
        }
        Ok(Alpha::Decimal(t.to_string()))
    }
}

impl fmt::Display for Alpha {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Alpha::Sqrt(d) => write!(f, "sqrt({d})"),
            Alpha::Decimal(s) => f.write_str(s),
        }
    }
}

impl Alpha {
    /// `floor({alpha} * 2^bits)` for `bits` a multiple of 64.
    pub fn fractional_bits(&self, bits: u32) -> BigUint {
        let one = BigUint::from(1u8) << bits;
        match self {
            Alpha::Sqrt(d) => (BigUint::from(*d) << (2 * bits)).sqrt() % &one,
            Alpha::Decimal(s) => {
                let frac = s.split_once('.').map_or("", |(_, f)| f);
                if frac.is_empty() {
                    return BigUint::default();
                }
                let num: BigUint = frac.parse().expect("validated digits");
                let den = BigUint::from(10u8).pow(frac.len() as u32);
                (num << bits) / den
            }
        }
    }

    /// The fractional part as 128-bit fixed point.
    pub fn fixed_point(&self) -> u128 {
        let v = self.fractional_bits(128);
        v.iter_u64_digits()
            .take(2)
            .enumerate()
            .fold(0u128, |acc, (i, d)| acc | (u128::from(d) << (64 * i)))
    }
}

/// Top 53 bits of a 128-bit fraction as an `f64` in `[0, 1)`.
fn fixed_to_f64(v: u128) -> f64 {
    (v >> 75) as f64 / (1u64 << 53) as f64
}

/// Kronecker sequence `x_n = ({n alpha_1}, ..., {n alpha_s})`, `n = 0..N`.
///
/// Each `{n alpha}` is computed as a wrapping product in 128-bit fixed point,
/// so the only error is the `2^-128` truncation of alpha times `n` plus the
/// final rounding to `f64`.
pub fn kronecker(alphas: &[Alpha], n: usize) -> Result<PointSet, PointSetError> {
    let fixed: Vec<u128> = alphas.iter().map(Alpha::fixed_point).collect();
    let s = alphas.len();
    let mut vals = Vec::with_capacity(n * s);
    for i in 0..n as u128 {
        for &a in &fixed {
            vals.push(fixed_to_f64(i.wrapping_mul(a)));
        }
    }
    Ok(PointSet::float(
        s,
        vals,
        Provenance::Kronecker { alphas: alphas.iter().map(Alpha::to_string).collect(), n },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!("sqrt(2)".parse::<Alpha>().unwrap(), Alpha::Sqrt(2));
        assert_eq!("√3".parse::<Alpha>().unwrap(), Alpha::Sqrt(3));
        assert_eq!("0.5".parse::<Alpha>().unwrap(), Alpha::Decimal("0.5".into()));
        assert!("abc".parse::<Alpha>().is_err());
        assert!("-0.5".parse::<Alpha>().is_err());
        assert!(".".parse::<Alpha>().is_err());
    }

    #[test]
    fn simple_values() {
        let k = kronecker(&["0.5".parse().unwrap()], 4).unwrap();
        assert_eq!(k.value(3, 0), 0.5);
        assert_eq!(k.value(2, 0), 0.0);
        let r = kronecker(&[Alpha::Sqrt(2)], 2).unwrap();
        assert!((r.value(1, 0) - (2f64.sqrt() - 1.0)).abs() < 1e-15);
        let whole = kronecker(&["3.25".parse().unwrap()], 2).unwrap();
        assert_eq!(whole.value(1, 0), 0.25);
    }

    #[test]
    fn accuracy_against_256_bit_reference() {
        // reference: 256-bit fraction of alpha, n * alpha mod 1 in 256 bits
        let modulus = BigUint::from(1u8) << 256;
        for alpha in [Alpha::Sqrt(2), Alpha::Sqrt(3), Alpha::Sqrt(1_000_003), "0.7071067811865475244008443621048490392848".parse().unwrap()] {
            let a256 = alpha.fractional_bits(256);
            let fixed = alpha.fixed_point();
            for n in (0u64..=1 << 20).step_by(4099).chain([1 << 20]) {
                let r: BigUint = (&a256 * BigUint::from(n)) % &modulus;
                let reference = (r >> 192u32).to_u64_digits().first().copied().unwrap_or(0) as f64 / 2f64.powi(64);
                let got = fixed_to_f64(u128::from(n).wrapping_mul(fixed));
                assert!((got - reference).abs() <= 2f64.powi(-50), "{alpha} n={n}: {got} vs {reference}");
            }
        }
    }
}
