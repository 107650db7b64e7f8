//! Deterministic factorization over small prime fields via the kernel of
//! `h -> f^q * H^(q-1)(h/f) - h^q`.
//!
//! With `H` the Hasse derivative the sign in front of `h^q` is minus: for
//! `y = g'/g` one has `H^(q-1)(y) = y^q`, since `H^(q-1) = -D^(q-1)` by
//! Wilson's theorem. The two signs coincide in characteristic 2.
//!
//! For squarefree `f` with `r` distinct irreducible factors the kernel (over
//! `deg h < deg f`) has dimension `r` and consists of the polynomials
//! `sum_i c_i g_i' f / g_i`. A kernel element with some but not all `c_i = 0`
//! shares a proper factor with `f`.

use serde::Serialize;
use thiserror::Error;

use crate::algebra::linalg::nullspace;
use crate::algebra::{power_series_div, AlgebraError, FieldElement, Poly, PrimeField};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FactorError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("characteristic {0} is not supported (use 2, 3 or 5)")]
    UnsupportedCharacteristic(u32),
    #[error("polynomial must have degree >= 1")]
    Constant,
    #[error("operator requires a monic polynomial")]
    NotMonic,
    #[error("operator requires f(0) != 0; strip factors of x first")]
    VanishesAtZero,
    #[error("h must have degree below deg f")]
    DegreeTooLarge,
}

const SUPPORTED: [u32; 3] = [2, 3, 5];

fn check_operator_input(f: &Poly) -> Result<usize, FactorError> {
    let d = f.degree().filter(|&d| d >= 1).ok_or(FactorError::Constant)?;
    if !f.is_monic() {
        return Err(FactorError::NotMonic);
    }
    if f.coeff(0) == 0 {
        return Err(FactorError::VanishesAtZero);
    }
    Ok(d)
}

/// `f^q * H^(q-1)(h/f) - h^q`, where `H^k` is the Hasse derivative applied termwise
/// to the power series of `h/f` at `x = 0`.
///
/// The result has degree below `q * deg f`, so the series is expanded just far
/// enough to determine those coefficients.
pub fn niederreiter_operator(f: &Poly, h: &Poly) -> Result<Poly, FactorError> {
    let d = check_operator_input(f)?;
    if f.modulus() != h.modulus() {
        return Err(AlgebraError::ModulusMismatch(f.modulus(), h.modulus()).into());
    }
    if h.degree().is_some_and(|dh| dh >= d) {
        return Err(FactorError::DegreeTooLarge);
    }
    let q = f.modulus() as usize;
    let out_len = q * d;
    let k = q - 1;
    // coefficient j of H^k(S) is C(j + k, k) s_{j+k}; need j < out_len
    let series = power_series_div(h, f, out_len + k)?;
    let shifted = Poly::new(
        f.modulus(),
        (0..out_len).map(|j| {
            let c = crate::algebra::binomial_mod((j + k) as u64, k as u64, f.modulus());
            u64::from(c) * u64::from(series[j + k])
        }),
    );
    let fq = f.pow(q as u64);
    let prod = &fq * &shifted;
    let truncated = Poly::from_reduced(f.modulus(), prod.coeffs().iter().take(out_len).copied().collect());
    Ok(&truncated - &h.pow(q as u64))
}

/// Basis of `{h : deg h < deg f, operator(f, h) = 0}` in reduced echelon form.
pub fn kernel_basis(f: &Poly) -> Result<Vec<Poly>, FactorError> {
    let d = check_operator_input(f)?;
    let p = f.modulus();
    let field = PrimeField::new(p)?;
    // columns[i] = operator(f, x^i) as a coefficient vector
    let rows = p as usize * d;
    let columns: Vec<Vec<FieldElement>> = (0..d)
        .map(|i| {
            let img = niederreiter_operator(f, &Poly::monomial(p, i, 1))?;
            Ok((0..rows).map(|r| img.coeff(r)).collect())
        })
        .collect::<Result<_, FactorError>>()?;
    let mut m: Vec<Vec<FieldElement>> = (0..rows).map(|r| columns.iter().map(|c| c[r]).collect()).collect();
    let null = nullspace(&mut m, d, &field);
    Ok(null.into_iter().map(|v| Poly::from_reduced(p, v)).collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Factor {
    pub poly: Poly,
    pub multiplicity: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorizationResult {
    pub input: Poly,
    /// Leading coefficient of the input.
    pub content: FieldElement,
    /// Monic irreducible factors, sorted by degree then coefficient vector.
    pub factors: Vec<Factor>,
}

impl FactorizationResult {
    /// `content * prod factor^multiplicity`.
    pub fn reassemble(&self) -> Poly {
        let p = self.input.modulus();
        self.factors
            .iter()
            .fold(Poly::constant(p, u64::from(self.content)), |acc, f| {
                &acc * &f.poly.pow(u64::from(f.multiplicity))
            })
    }
}

/// Splits a monic squarefree `f` with `f(0) != 0` into irreducible factors.
fn split_squarefree(f: &Poly, out: &mut Vec<Poly>) -> Result<(), FactorError> {
    if f.degree().unwrap_or(0) <= 1 {
        if f.degree() == Some(1) {
            out.push(f.clone());
        }
        return Ok(());
    }
    let basis = kernel_basis(f)?;
    if basis.len() == 1 {
        // kernel dimension equals the number of irreducible factors
        out.push(f.clone());
        return Ok(());
    }
    let deriv = f.derivative();
    let p = f.modulus();
    for h in &basis {
        for c in 0..p {
            // f' lies in the kernel (all c_i = 1); subtracting c f' zeroes the c_i equal to c
            let cand = h - &deriv.scale(c);
            if cand.is_zero() {
                continue;
            }
            let g = f.gcd(&cand)?;
            let dg = g.degree().unwrap_or(0);
            if dg >= 1 && Some(dg) < f.degree() {
                let rest = f.exact_div(&g)?;
                split_squarefree(&g, out)?;
                split_squarefree(&rest, out)?;
                return Ok(());
            }
        }
    }
    unreachable!("kernel of dimension {} produced no split of {f:?}", basis.len());
}

/// Squarefree decomposition of a monic polynomial: pairs `(part, multiplicity)`
/// where each part is squarefree and the parts are pairwise coprime.
fn squarefree_decomposition(f: &Poly) -> Result<Vec<(Poly, u32)>, FactorError> {
    let p = f.modulus();
    let mut out = Vec::new();
    if f.degree().unwrap_or(0) == 0 {
        return Ok(out);
    }
    let df = f.derivative();
    if df.is_zero() {
        // f = g(x^p) = g(x)^p over F_p
        let root = p_th_root(f);
        for (g, m) in squarefree_decomposition(&root)? {
            out.push((g, m * p));
        }
        return Ok(out);
    }
    let mut c = f.gcd(&df)?;
    let mut w = f.exact_div(&c)?;
    let mut i = 1;
    while !w.is_one() {
        let y = w.gcd(&c)?;
        let part = w.exact_div(&y)?;
        if !part.is_one() {
            out.push((part, i));
        }
        w = y;
        c = c.exact_div(&w)?;
        i += 1;
    }
    if !c.is_one() {
        let root = p_th_root(&c);
        for (g, m) in squarefree_decomposition(&root)? {
            out.push((g, m * p));
        }
    }
    Ok(out)
}

fn p_th_root(f: &Poly) -> Poly {
    let p = f.modulus() as usize;
    Poly::from_reduced(f.modulus(), f.coeffs().iter().step_by(p).copied().collect())
}

/// Complete factorization over `F_p`, `p in {2, 3, 5}`.
pub fn factor(f: &Poly) -> Result<FactorizationResult, FactorError> {
    let p = f.modulus();
    if !SUPPORTED.contains(&p) {
        return Err(FactorError::UnsupportedCharacteristic(p));
    }
    if f.degree().unwrap_or(0) == 0 {
        return Err(FactorError::Constant);
    }
    let content = f.leading_coeff();
    let monic = f.to_monic();
    let x_power = monic.coeffs().iter().take_while(|&&c| c == 0).count();
    let stripped = Poly::from_reduced(p, monic.coeffs()[x_power..].to_vec());

    let mut factors: Vec<Factor> = Vec::new();
    if x_power > 0 {
        factors.push(Factor { poly: Poly::x(p), multiplicity: x_power as u32 });
    }
    for (part, mult) in squarefree_decomposition(&stripped)? {
        let mut irreducibles = Vec::new();
        split_squarefree(&part, &mut irreducibles)?;
        for g in irreducibles {
            match factors.iter_mut().find(|fa| fa.poly == g) {
                Some(fa) => fa.multiplicity += mult,
                None => factors.push(Factor { poly: g, multiplicity: mult }),
            }
        }
    }
    factors.sort_by(|a, b| a.poly.canonical_cmp(&b.poly));
    Ok(FactorizationResult { input: f.clone(), content, factors })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::monic_polys_of_degree;
    use crate::oracles::{factor_by_trial_division, is_irreducible_by_trial_division};
    use proptest::prelude::*;

    fn p2(c: &[u64]) -> Poly {
        Poly::new(2, c.iter().copied())
    }

    #[test]
    fn operator_zero_and_errors() {
        let f = Poly::new(3, [1, 0, 1, 1]);
        assert!(niederreiter_operator(&f, &Poly::zero(3)).unwrap().is_zero());
        assert_eq!(niederreiter_operator(&Poly::new(3, [0, 1, 1]), &Poly::one(3)), Err(FactorError::VanishesAtZero));
        assert_eq!(niederreiter_operator(&Poly::new(3, [1, 2]), &Poly::zero(3)), Err(FactorError::NotMonic));
        assert_eq!(niederreiter_operator(&f, &Poly::monomial(3, 3, 1)), Err(FactorError::DegreeTooLarge));
    }

    // Independent route: f^p H^(p-1)(h/f) = H^(p-1)(h f^(p-1)) since f^p has
    // vanishing Hasse derivatives of orders 1..p-1.
    #[test]
    fn operator_matches_closed_form() {
        for p in [2u32, 3, 5] {
            for f in monic_polys_of_degree(p, 3).filter(|f| f.coeff(0) != 0).take(20) {
                for hi in 0..(p as u64).pow(3) {
                    let h = Poly::new(p, [hi % p as u64, hi / p as u64 % p as u64, hi / (p as u64 * p as u64)]);
                    let closed = &(&h * &f.pow(u64::from(p) - 1)).hasse_derivative(p as usize - 1) - &h.pow(u64::from(p));
                    assert_eq!(niederreiter_operator(&f, &h).unwrap(), closed);
                }
            }
        }
    }

    #[test]
    fn kernel_dimension_counts_factors_gf2() {
        for d in 1..=8 {
            for f in monic_polys_of_degree(2, d).filter(|f| f.coeff(0) != 0) {
                let squarefree = f.gcd(&f.derivative()).unwrap().is_one();
                if !squarefree {
                    continue;
                }
                let (_, facs) = factor_by_trial_division(&f);
                let basis = kernel_basis(&f).unwrap();
                assert_eq!(basis.len(), facs.len(), "{f:?}");
                for h in &basis {
                    assert!(niederreiter_operator(&f, h).unwrap().is_zero());
                }
            }
        }
    }

    #[test]
    fn kernel_splits_iff_reducible() {
        for p in [2u32, 3] {
            let max_d = if p == 2 { 8 } else { 5 };
            for d in 2..=max_d {
                for f in monic_polys_of_degree(p, d).filter(|f| f.coeff(0) != 0) {
                    if !f.gcd(&f.derivative()).unwrap().is_one() {
                        continue;
                    }
                    let basis = kernel_basis(&f).unwrap();
                    let deriv = f.derivative();
                    let splits = basis.iter().any(|h| {
                        (0..p).any(|c| {
                            let cand = h - &deriv.scale(c);
                            !cand.is_zero() && {
                                let g = f.gcd(&cand).unwrap();
                                g.degree().unwrap() >= 1 && g.degree() < f.degree()
                            }
                        })
                    });
                    assert_eq!(splits, !is_irreducible_by_trial_division(&f), "{f:?}");
                }
            }
        }
    }

    #[test]
    fn x2_plus_x_kernel_has_splitting_element() {
        // x^2 + x vanishes at 0, so factor() strips x before the operator is used
        let r = factor(&p2(&[0, 1, 1])).unwrap();
        assert_eq!(r.factors, vec![Factor { poly: p2(&[0, 1]), multiplicity: 1 }, Factor { poly: p2(&[1, 1]), multiplicity: 1 }]);
        // (x+1)(x+2) = x^2 + 2 over F_3
        let f = Poly::new(3, [2, 0, 1]);
        let basis = kernel_basis(&f).unwrap();
        assert_eq!(basis.len(), 2);
        // the echelon basis {1, x} itself need not split; some combination does
        let hit = (0..9u32).any(|k| {
            let h = &basis[0].scale(k % 3) + &basis[1].scale(k / 3);
            !h.is_zero() && {
                let g = f.gcd(&h).unwrap();
                g == Poly::new(3, [1, 1]) || g == Poly::new(3, [2, 1])
            }
        });
        assert!(hit);
    }

    #[test]
    fn square_in_char_two() {
        let r = factor(&p2(&[1, 0, 1])).unwrap();
        assert_eq!(r.factors, vec![Factor { poly: p2(&[1, 1]), multiplicity: 2 }]);
    }

    #[test]
    fn unsupported_and_constant() {
        assert_eq!(factor(&Poly::new(7, [1, 1])), Err(FactorError::UnsupportedCharacteristic(7)));
        assert_eq!(factor(&Poly::one(3)), Err(FactorError::Constant));
    }

    #[test]
    fn high_multiplicities() {
        // (x+1)^7 (x^2+x+1)^4 x^3 over F_2, and a p-th power times a non-power over F_3
        let f = &(&p2(&[1, 1]).pow(7) * &p2(&[1, 1, 1]).pow(4)) * &p2(&[0, 0, 0, 1]);
        let r = factor(&f).unwrap();
        assert_eq!(r.reassemble(), f);
        let mults: Vec<_> = r.factors.iter().map(|f| f.multiplicity).collect();
        assert_eq!(mults, vec![3, 7, 4]);
        let g = &Poly::new(3, [1, 0, 1]).pow(4) * &Poly::new(3, [1, 1]).pow(3);
        let r = factor(&g.scale(2)).unwrap();
        assert_eq!(r.content, 2);
        assert_eq!(r.reassemble(), g.scale(2));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]
        #[test]
        fn factor_matches_trial_division(p in prop::sample::select(vec![2u32, 3, 5]),
                                          coeffs in prop::collection::vec(0u64..5, 2..11)) {
            let f = Poly::new(p, coeffs);
            prop_assume!(f.degree().unwrap_or(0) >= 1);
            let r = factor(&f).unwrap();
            prop_assert_eq!(r.reassemble(), f.clone());
            let (lc, oracle) = factor_by_trial_division(&f);
            prop_assert_eq!(r.content, lc);
            let got: Vec<_> = r.factors.iter().map(|fa| (fa.poly.clone(), fa.multiplicity)).collect();
            prop_assert_eq!(got, oracle);
        }
    }
}
