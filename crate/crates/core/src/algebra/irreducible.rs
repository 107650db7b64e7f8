use super::field::PrimeField;
use super::poly::Poly;
use super::AlgebraError;

/// Rabin's irreducibility test.
///
/// A polynomial of degree `d >= 1` is irreducible iff `x^(p^d) = x mod f` and
/// `gcd(x^(p^(d/r)) - x, f) = 1` for each prime `r | d`.
pub fn is_irreducible(f: &Poly) -> bool {
    let Some(d) = f.degree() else { return false };
    if d == 0 {
        return false;
    }
    if d == 1 {
        return true;
    }
    let p = f.modulus();
    let x = Poly::x(p);
    let frob = |k: usize| -> Poly {
        // x^(p^k) mod f by k successive p-th powers
        let mut acc = x.clone();
        for _ in 0..k {
            acc = acc.pow_mod(u64::from(p), f).expect("f nonzero");
        }
        acc
    };
    if &frob(d) - &x.rem(f).expect("f nonzero") != Poly::zero(p) {
        return false;
    }
    prime_divisors(d).into_iter().all(|r| {
        let h = &frob(d / r) - &x;
        h.gcd(f).map(|g| g.is_one()).unwrap_or(false)
    })
}

fn prime_divisors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// All monic polynomials of exact degree `d` over `F_p`, in canonical order
/// (coefficient vectors compared lexicographically from the constant term).
pub fn monic_polys_of_degree(p: u32, d: usize) -> impl Iterator<Item = Poly> {
    let total = u64::from(p).pow(d as u32);
    (0..total).map(move |mut t| {
        let mut coeffs = vec![0u64; d + 1];
        coeffs[d] = 1;
        // constant term is the most significant digit of t
        for i in (0..d).rev() {
            coeffs[i] = t % u64::from(p);
            t /= u64::from(p);
        }
        Poly::new(p, coeffs)
    })
}

/// The first `count` monic irreducible polynomials over `F_p`, ordered by
/// degree and then lexicographically by coefficient vector, constant term first.
///
/// Niederreiter generating matrices depend on this order.
pub fn monic_irreducibles(p: u32, count: usize) -> Result<Vec<Poly>, AlgebraError> {
    PrimeField::new(p)?;
    let mut out = Vec::with_capacity(count);
    let mut d = 1;
    while out.len() < count {
        for f in monic_polys_of_degree(p, d) {
            if out.len() == count {
                break;
            }
            if is_irreducible(&f) {
                out.push(f);
            }
        }
        d += 1;
    }
    Ok(out)
}
