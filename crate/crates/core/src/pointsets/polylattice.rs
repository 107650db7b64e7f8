use super::{GeneratingMatrixSet, PointSet, PointSetError, Provenance};
use crate::algebra::{is_prime, laurent_expand, Poly};

/// Modulus `f` of degree `m` and generators `g_j` of degree `< m` over `F_b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyLatticeParams {
    f: Poly,
    g: Vec<Poly>,
}

impl PolyLatticeParams {
    pub fn new(f: Poly, g: Vec<Poly>) -> Result<Self, PointSetError> {
        let b = f.modulus();
        if !is_prime(u64::from(b)) {
            return Err(PointSetError::PolyLattice(format!("base {b} is not prime")));
        }
        let m = match f.degree() {
            Some(m) if m >= 1 => m,
            _ => return Err(PointSetError::PolyLattice("modulus must have degree >= 1".into())),
        };
        for (j, gj) in g.iter().enumerate() {
            if gj.modulus() != b {
                return Err(PointSetError::PolyLattice(format!("g_{} is over F_{}", j + 1, gj.modulus())));
            }
            if gj.degree().is_some_and(|d| d >= m) {
                return Err(PointSetError::PolyLattice(format!("deg g_{} >= deg f = {m}", j + 1)));
            }
        }
        Ok(PolyLatticeParams { f, g })
    }

    pub fn b(&self) -> u32 {
        self.f.modulus()
    }

    pub fn m(&self) -> usize {
        self.f.degree().expect("validated")
    }

    pub fn modulus(&self) -> &Poly {
        &self.f
    }

    pub fn generators(&self) -> &[Poly] {
        &self.g
    }
}

/// Digits `c_1..c_m` of `num / f` at `x^-1..x^-m`, packed as a base-`b` numerator.
fn v_m(num: &Poly, f: &Poly, m: usize, b: u64) -> Result<u64, PointSetError> {
    let series = laurent_expand(num, f, -(m as i64))?;
    Ok((1..=m).fold(0u64, |acc, k| acc * b + u64::from(series.coeff_neg(k).expect("expanded to -m"))))
}

/// The `b^m` points `x_n = (v_m(n(x) g_1 / f), ..., v_m(n(x) g_s / f))`.
pub fn polynomial_lattice(params: &PolyLatticeParams) -> Result<PointSet, PointSetError> {
    let (b, m) = (params.b(), params.m());
    let bb = u64::from(b);
    let count = bb.checked_pow(m as u32).ok_or(PointSetError::Overflow)?;
    let s = params.g.len();
    let mut nums = Vec::with_capacity(count as usize * s);
    for n in 0..count {
        let mut digits = Vec::with_capacity(m);
        let mut v = n;
        while v > 0 {
            digits.push(v % bb);
            v /= bb;
        }
        let np = Poly::new(b, digits);
        for gj in &params.g {
            nums.push(v_m(&(&np * gj), &params.f, m, bb)?);
        }
    }
    Ok(PointSet::exact(s, vec![count; s], nums, provenance(params)?))
}

/// Generating matrices of the polynomial lattice: row `i`, column `r` of `C_j`
/// is the coefficient of `x^-(i+1)` in `x^r g_j / f`.
pub fn polynomial_lattice_matrices(params: &PolyLatticeParams) -> Result<GeneratingMatrixSet, PointSetError> {
    let (b, m) = (params.b(), params.m());
    let mut matrices = Vec::with_capacity(params.g.len());
    for gj in &params.g {
        let columns: Vec<_> = (0..m)
            .map(|r| laurent_expand(&gj.shift(r), &params.f, -(m as i64)))
            .collect::<Result<_, _>>()?;
        matrices.push((1..=m).map(|i| columns.iter().map(|c| c.coeff_neg(i).expect("expanded")).collect()).collect());
    }
    GeneratingMatrixSet::new(b, m, m, matrices)
}

fn provenance(params: &PolyLatticeParams) -> Result<Provenance, PointSetError> {
    Ok(Provenance::PolynomialLattice {
        b: params.b(),
        modulus: params.f.coeffs().to_vec(),
        generators: params.g.iter().map(|g| g.coeffs().to_vec()).collect(),
        matrices: polynomial_lattice_matrices(params)?,
    })
}
