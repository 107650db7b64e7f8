//! Continued fractions of rationals and the search for multipliers with
//! bounded partial quotients.

use num_integer::Integer;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiophantineError {
    #[error("need 0 < a < N, got a={a}, N={n}")]
    OutOfRange { a: u64, n: u64 },
    #[error("gcd({a}, {n}) = {g} != 1")]
    NotCoprime { a: u64, n: u64, g: u64 },
}

/// `a / N = [0; a_1, ..., a_k]` in canonical form (last quotient >= 2 when `k >= 2`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ContinuedFraction {
    pub numerator: u64,
    pub denominator: u64,
    pub quotients: Vec<u64>,
}

impl ContinuedFraction {
    pub fn max_quotient(&self) -> u64 {
        self.quotients.iter().copied().max().unwrap_or(0)
    }

    /// The other expansion of the same rational: `[..., m]` becomes `[..., m - 1, 1]`.
    pub fn alternate_quotients(&self) -> Vec<u64> {
        let mut q = self.quotients.clone();
        if let Some(last) = q.last_mut() {
            *last -= 1;
            q.push(1);
        }
        q
    }

    /// Folds the quotients back into `(numerator, denominator)`.
    pub fn convergent(quotients: &[u64]) -> (u64, u64) {
        // [0; a_1, ..., a_k] evaluated from the tail: x = 1 / (a_i + x)
        let (mut num, mut den) = (0u64, 1u64);
        for &a in quotients.iter().rev() {
            (num, den) = (den, a * den + num);
        }
        (num, den)
    }
}

/// Canonical expansion of `a / n` by the Euclidean algorithm.
pub fn continued_fraction(a: u64, n: u64) -> Result<ContinuedFraction, DiophantineError> {
    if a == 0 || a >= n {
        return Err(DiophantineError::OutOfRange { a, n });
    }
    let g = a.gcd(&n);
    if g != 1 {
        return Err(DiophantineError::NotCoprime { a, n, g });
    }
    let mut quotients = Vec::new();
    let (mut x, mut y) = (n, a);
    while y != 0 {
        quotients.push(x / y);
        (x, y) = (y, x % y);
    }
    // Euclid never produces a final 1 unless the expansion is [1], excluded by a < n.
    debug_assert!(quotients.len() < 2 || *quotients.last().unwrap() >= 2);
    Ok(ContinuedFraction { numerator: a, denominator: n, quotients })
}

/// True iff every partial quotient of `a / n` is at most `c`. Stops at the first
/// quotient exceeding `c`. Assumes `gcd(a, n) = 1`.
fn quotients_bounded(a: u64, n: u64, c: u64) -> bool {
    let (mut x, mut y) = (n, a);
    while y != 0 {
        if x / y > c {
            return false;
        }
        (x, y) = (y, x % y);
    }
    true
}

/// Smallest `a` in `[1, N)` coprime to `N` whose expansion `a / N` has all
/// partial quotients `<= c`.
pub fn zaremba_search(n: u64, c: u64) -> Option<u64> {
    if n < 2 || c == 0 {
        return None;
    }
    // the first quotient is floor(N / a) <= c, so a > N / (c + 1)
    let start = (n / (c + 1)).max(1);
    (start..n).find(|&a| a.gcd(&n) == 1 && quotients_bounded(a, n, c))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ZarembaRow {
    pub m: u32,
    pub n: u64,
    pub witness: Option<u64>,
    pub quotients: Option<Vec<u64>>,
}

/// Witnesses for `N = base^m`, `m = 1..=m_max`.
pub fn zaremba_table(base: u64, m_max: u32, c: u64) -> Vec<ZarembaRow> {
    (1..=m_max)
        .into_par_iter()
        .map(|m| {
            let n = base.pow(m);
            let witness = zaremba_search(n, c);
            let quotients = witness.map(|a| continued_fraction(a, n).expect("witness is valid").quotients);
            ZarembaRow { m, n, witness, quotients }
        })
        .collect()
}
