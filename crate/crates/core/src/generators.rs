//! Inversive pseudorandom generator `u_{n+1} = a u_n^{-1} + b` over `F_q`
//! (with `0 -> b`), its period structure and power-residue statistics.

use std::collections::HashMap;

use serde::Serialize;
use thiserror::Error;

use crate::algebra::{AlgebraError, FieldElement, PrimeField};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeneratorError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("multiplier a must be nonzero (a = 0 makes the sequence constant)")]
    ZeroMultiplier,
    #[error("{s} does not divide q - 1 = {}", .q - 1)]
    NotADivisor { s: u32, q: u32 },
    #[error("window length {n} exceeds the least period {period}")]
    WindowTooLong { n: usize, period: usize },
    #[error("window length must be at least 1")]
    EmptyWindow,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct InversiveParams {
    field: PrimeField,
    pub a: FieldElement,
    pub b: FieldElement,
    pub u0: FieldElement,
}

impl InversiveParams {
    pub fn new(q: u32, a: u32, b: u32, u0: u32) -> Result<Self, GeneratorError> {
        let field = PrimeField::new(q)?;
        let a = a % q;
        if a == 0 {
            return Err(GeneratorError::ZeroMultiplier);
        }
        Ok(InversiveParams { field, a, b: b % q, u0: u0 % q })
    }

    pub fn q(&self) -> u32 {
        self.field.modulus()
    }

    /// One step of the recurrence.
    #[inline]
    pub fn step(&self, u: FieldElement) -> FieldElement {
        match self.field.inv(u) {
            Some(inv) => self.field.add(self.field.mul(self.a, inv), self.b),
            None => self.b,
        }
    }
}

/// `u_0, ..., u_{n-1}`.
pub fn inversive_sequence(params: &InversiveParams, n: usize) -> Vec<FieldElement> {
    let mut out = Vec::with_capacity(n);
    let mut u = params.u0;
    for _ in 0..n {
        out.push(u);
        u = params.step(u);
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Period {
    pub pre_period: usize,
    pub period: usize,
}

/// Least period and pre-period by walking the orbit with a visited map.
pub fn least_period(params: &InversiveParams) -> Period {
    let mut seen: HashMap<FieldElement, usize> = HashMap::new();
    let mut u = params.u0;
    let mut n = 0;
    loop {
        if let Some(&first) = seen.get(&u) {
            return Period { pre_period: first, period: n - first };
        }
        seen.insert(u, n);
        u = params.step(u);
        n += 1;
    }
}

/// Set of `s`-power residues `{z^s : z in F_q}`; includes 0.
pub fn power_residues(q: u32, s: u32, include_zero: bool) -> Result<Vec<bool>, GeneratorError> {
    let field = PrimeField::new(q)?;
    if s == 0 || !(q - 1).is_multiple_of(s) {
        return Err(GeneratorError::NotADivisor { s, q });
    }
    let mut set = vec![false; q as usize];
    for z in 1..q {
        set[field.pow(z, u64::from(s)) as usize] = true;
    }
    set[0] = include_zero;
    Ok(set)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ResidueStat {
    pub s: u32,
    pub n: usize,
    /// Number of `s`-power residues among `u_0 .. u_{n-1}`.
    pub count: usize,
    /// `2.2 * n^(1/2) * q^(1/4)`
    pub bound: f64,
    pub deviation: f64,
    pub satisfied: bool,
}

pub const RESIDUE_BOUND_CONSTANT: f64 = 2.2;

/// `R_s(N)` for each requested window, checked against `|R_s(N) - N/s| < 2.2 N^(1/2) q^(1/4)`.
///
/// Zero counts as an `s`-power residue (`0 = 0^s`); pass `include_zero = false`
/// for the strict-nonzero variant.
pub fn residue_stats(
    params: &InversiveParams,
    s: u32,
    windows: &[usize],
    include_zero: bool,
) -> Result<Vec<ResidueStat>, GeneratorError> {
    let q = params.q();
    let residues = power_residues(q, s, include_zero)?;
    let period = least_period(params).period;
    let max_n = windows.iter().copied().max().unwrap_or(0);
    if let Some(&n) = windows.iter().find(|&&n| n > period) {
        return Err(GeneratorError::WindowTooLong { n, period });
    }
    if windows.contains(&0) {
        return Err(GeneratorError::EmptyWindow);
    }
    let seq = inversive_sequence(params, max_n);
    let mut prefix = vec![0usize; max_n + 1];
    for (i, &u) in seq.iter().enumerate() {
        prefix[i + 1] = prefix[i] + usize::from(residues[u as usize]);
    }
    Ok(windows
        .iter()
        .map(|&n| {
            let count = prefix[n];
            let bound = RESIDUE_BOUND_CONSTANT * (n as f64).sqrt() * f64::from(q).powf(0.25);
            let deviation = (count as f64 - n as f64 / f64::from(s)).abs();
            ResidueStat { s, n, count, bound, deviation, satisfied: deviation < bound }
        })
        .collect())
}

/// `u -> u / q`.
pub fn to_unit_interval(seq: &[FieldElement], q: u32) -> Vec<f64> {
    seq.iter().map(|&u| f64::from(u) / f64::from(q)).collect()
}

pub fn divisors(n: u32) -> Vec<u32> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct BoundViolation {
    pub q: u32,
    pub a: u32,
    pub b: u32,
    pub u0: u32,
    pub s: u32,
    pub n: usize,
    pub count: usize,
    pub bound: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct AuditReport {
    pub q_max: u32,
    pub parameter_sets: usize,
    pub checks: usize,
    /// Parameter sets whose least period is below 4.
    pub short_periods: usize,
    pub violations: Vec<BoundViolation>,
}

/// Checks the residue bound for every prime `q <= q_max`, `a in 1..q`, each `b`
/// in `b_values`, the given `u0`, every `s | q - 1`, and every window `N <= period`.
pub fn audit_residue_bound(q_max: u32, b_values: &[u32], u0: u32) -> AuditReport {
    use rayon::prelude::*;
    let primes: Vec<u32> = (2..=q_max).filter(|&q| crate::algebra::is_prime(u64::from(q))).collect();
    let jobs: Vec<(u32, u32, u32)> = primes
        .iter()
        .flat_map(|&q| (1..q).flat_map(move |a| b_values.iter().map(move |&b| (q, a, b))))
        .collect();
    let results: Vec<(usize, bool, Vec<BoundViolation>)> = jobs
        .par_iter()
        .map(|&(q, a, b)| {
            let params = InversiveParams::new(q, a, b, u0).expect("a != 0, q prime");
            let period = least_period(&params).period;
            let windows: Vec<usize> = (1..=period).collect();
            let mut checks = 0;
            let mut bad = Vec::new();
            for s in divisors(q - 1) {
                for st in residue_stats(&params, s, &windows, true).expect("valid s and windows") {
                    checks += 1;
                    if !st.satisfied {
                        bad.push(BoundViolation { q, a, b, u0: params.u0, s, n: st.n, count: st.count, bound: st.bound });
                    }
                }
            }
            (checks, period < 4, bad)
        })
        .collect();
    AuditReport {
        q_max,
        parameter_sets: jobs.len(),
        checks: results.iter().map(|r| r.0).sum(),
        short_periods: results.iter().filter(|r| r.1).count(),
        violations: results.into_iter().flat_map(|r| r.2).collect(),
    }
}
