use std::f64::consts::PI;

use serde::Serialize;

use super::QualityError;

/// `B_2(x) = x^2 - x + 1/6`.
fn bernoulli2(x: f64) -> f64 {
    x * x - x + 1.0 / 6.0
}

/// Worst-case error `P_alpha` of the lattice rule with generator `a` and `N` points.
///
/// Only `alpha = 2` is supported:
/// `P_2 = -1 + (1/N) sum_n prod_j (1 + 2 pi^2 B_2({n a_j / N}))`, which equals
/// `sum' prod_j max(1, |h_j|)^-2` over nonzero dual lattice points `h`
/// (`a . h = 0 mod N`).
pub fn p_alpha(a: &[i64], n: u64, alpha: u32) -> Result<f64, QualityError> {
    if alpha != 2 {
        return Err(QualityError::UnsupportedAlpha(alpha));
    }
    if n == 0 {
        return Err(QualityError::Empty);
    }
    let reduced: Vec<u128> = a.iter().map(|&x| x.rem_euclid(n as i64) as u128).collect();
    let (mut sum, mut comp) = (0f64, 0f64);
    for i in 0..u128::from(n) {
        let term: f64 = reduced
            .iter()
            .map(|&aj| 1.0 + 2.0 * PI * PI * bernoulli2(((i * aj) % u128::from(n)) as f64 / n as f64))
            .product();
        neumaier_add(&mut sum, &mut comp, term);
    }
    Ok(-1.0 + (sum + comp) / n as f64)
}

/// Compensated (Neumaier) summation step.
pub(crate) fn neumaier_add(sum: &mut f64, comp: &mut f64, x: f64) {
    let t = *sum + x;
    if sum.abs() >= x.abs() {
        *comp += (*sum - t) + x;
    } else {
        *comp += (x - t) + *sum;
    }
    *sum = t;
}

/// Result of the character orthogonality check `(1/N) sum_n e(n (a . h) / N)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CharacterSum {
    /// 1 iff `a . h = 0 mod N`.
    pub exact: u8,
    /// Modulus of the floating-point average.
    pub numeric: f64,
    pub agrees: bool,
}

pub const CHARACTER_TOLERANCE: f64 = 1e-10;

/// Exact integer test for the character sum, cross-checked by summing the
/// roots of unity in floating point.
pub fn character_orthogonality(a: &[i64], n: u64, h: &[i64]) -> Result<CharacterSum, QualityError> {
    if n == 0 {
        return Err(QualityError::Empty);
    }
    if a.len() != h.len() {
        return Err(QualityError::Dimension(format!("a has {} entries, h has {}", a.len(), h.len())));
    }
    let nn = i128::from(n);
    let dot = a.iter().zip(h).fold(0i128, |acc, (&x, &y)| (acc + i128::from(x) * i128::from(y)).rem_euclid(nn));
    let exact = u8::from(dot == 0);
    let (mut re, mut im, mut cre, mut cim) = (0f64, 0f64, 0f64, 0f64);
    for k in 0..nn {
        let phase = 2.0 * PI * ((k * dot) % nn) as f64 / n as f64;
        neumaier_add(&mut re, &mut cre, phase.cos());
        neumaier_add(&mut im, &mut cim, phase.sin());
    }
    let numeric = ((re + cre).powi(2) + (im + cim).powi(2)).sqrt() / n as f64;
    Ok(CharacterSum { exact, numeric, agrees: (numeric - f64::from(exact)).abs() < CHARACTER_TOLERANCE })
}

/// Fibonacci numbers `F_0 = 0, F_1 = 1, ...` up to index `k`.
pub fn fibonacci(k: usize) -> Vec<u64> {
    let mut f = vec![0u64, 1];
    while f.len() <= k {
        let next = f[f.len() - 1] + f[f.len() - 2];
        f.push(next);
    }
    f.truncate(k + 1);
    f
}
