//! Brute-force reference implementations.
//!
//! Each function here recomputes a quantity by direct enumeration and shares
//! no code path with the library routine it is used to check. They are slow
//! on purpose and only meant for small parameters.

use crate::algebra::{monic_polys_of_degree, Poly};

/// Irreducibility by trial division against every monic polynomial of degree `1..=deg/2`.
pub fn is_irreducible_by_trial_division(f: &Poly) -> bool {
    let Some(d) = f.degree() else { return false };
    if d == 0 {
        return false;
    }
    let p = f.modulus();
    for k in 1..=d / 2 {
        for g in monic_polys_of_degree(p, k) {
            if f.rem(&g).expect("g monic").is_zero() {
                return false;
            }
        }
    }
    true
}

/// Complete factorization by trial division: `(leading coefficient, [(monic irreducible, multiplicity)])`
/// with factors in canonical order.
pub fn factor_by_trial_division(f: &Poly) -> (u32, Vec<(Poly, u32)>) {
    let lc = f.leading_coeff();
    let mut rest = f.to_monic();
    let p = f.modulus();
    let mut out = Vec::new();
    let mut k = 1;
    while rest.degree().unwrap_or(0) >= 1 {
        if 2 * k > rest.degree().unwrap() {
            // what is left has no factor of degree <= deg/2
            out.push((rest.clone(), 1));
            break;
        }
        for g in monic_polys_of_degree(p, k) {
            let mut mult = 0;
            loop {
                let (q, r) = rest.div_rem(&g).expect("g monic");
                if !r.is_zero() {
                    break;
                }
                rest = q;
                mult += 1;
            }
            if mult > 0 {
                out.push((g, mult));
            }
        }
        k += 1;
    }
    out.sort_by(|a, b| a.0.canonical_cmp(&b.0));
    (lc, out)
}

/// `true` iff `values` is a permutation of `0..q`, checked with a seen-table.
pub fn is_bijection(values: &[u32], q: u32) -> bool {
    let mut seen = vec![false; q as usize];
    for &v in values {
        if v >= q || seen[v as usize] {
            return false;
        }
        seen[v as usize] = true;
    }
    values.len() == q as usize
}

/// `P_2` of a lattice rule as the truncated dual sum
/// `sum over 0 < |h|_inf <= H with a . h = 0 mod N of prod_j max(1, |h_j|)^-2`.
pub fn p2_dual_sum(a: &[i64], n: u64, h_max: i64) -> f64 {
    let s = a.len();
    let nn = n as i64;
    let weight = |h: i64| if h == 0 { 1.0 } else { 1.0 / (h * h) as f64 };
    let mut h = vec![-h_max; s];
    let mut total = 0.0;
    loop {
        let dot = a.iter().zip(&h).fold(0i64, |acc, (&x, &y)| (acc + x.rem_euclid(nn) * y.rem_euclid(nn)) % nn);
        if dot == 0 && h.iter().any(|&v| v != 0) {
            total += h.iter().map(|&v| weight(v)).product::<f64>();
        }
        // odometer over [-H, H]^s
        let mut k = 0;
        loop {
            if k == s {
                return total;
            }
            h[k] += 1;
            if h[k] <= h_max {
                break;
            }
            h[k] = -h_max;
            k += 1;
        }
    }
}

/// Bound on the omitted part of [`p2_dual_sum`]: the same sum over all of
/// `Z^s` outside the cube, `(1 + pi^2/3)^s - (1 + 2 sum_{h<=H} h^-2)^s`.
pub fn p2_tail_bound(s: usize, h_max: i64) -> f64 {
    let full = 1.0 + std::f64::consts::PI.powi(2) / 3.0;
    let partial = 1.0 + 2.0 * (1..=h_max).map(|h| 1.0 / (h * h) as f64).sum::<f64>();
    full.powi(s as i32) - partial.powi(s as i32)
}
