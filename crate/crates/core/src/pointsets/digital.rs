use serde::{Deserialize, Serialize};

use super::{PointSet, PointSetError, Provenance};
use crate::algebra::{laurent_expand, monic_irreducibles, is_prime, Poly};

/// Generating matrices `C_1, ..., C_s` over `F_b`, each `rows x cols`.
///
/// Column `r` multiplies the index digit `n_r` (least significant first); row
/// `i` produces the output digit of weight `b^-(i+1)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratingMatrixSet {
    pub b: u32,
    pub rows: usize,
    pub cols: usize,
    pub matrices: Vec<Vec<Vec<u32>>>,
}

impl GeneratingMatrixSet {
    pub fn new(b: u32, rows: usize, cols: usize, matrices: Vec<Vec<Vec<u32>>>) -> Result<Self, PointSetError> {
        if !is_prime(u64::from(b)) {
            return Err(PointSetError::MatrixShape(format!("base {b} is not prime")));
        }
        if rows == 0 || cols == 0 {
            return Err(PointSetError::MatrixShape("empty matrices".into()));
        }
        for (j, c) in matrices.iter().enumerate() {
            if c.len() != rows || c.iter().any(|row| row.len() != cols) {
                return Err(PointSetError::MatrixShape(format!("C_{} is not {rows}x{cols}", j + 1)));
            }
            if c.iter().flatten().any(|&v| v >= b) {
                return Err(PointSetError::MatrixShape(format!("C_{} has entries outside F_{b}", j + 1)));
            }
        }
        Ok(GeneratingMatrixSet { b, rows, cols, matrices })
    }

    /// Square `m x m` matrices, the shape of a digital net.
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn dim(&self) -> usize {
        self.matrices.len()
    }

    /// Leading `m x m` blocks, i.e. the generating matrices of the first `b^m` points.
    pub fn truncate(&self, m: usize) -> GeneratingMatrixSet {
        assert!(m <= self.rows && m <= self.cols);
        GeneratingMatrixSet {
            b: self.b,
            rows: m,
            cols: m,
            matrices: self.matrices.iter().map(|c| c[..m].iter().map(|r| r[..m].to_vec()).collect()).collect(),
        }
    }

    /// Numerator (over `b^rows`) of coordinate `j` for the digit vector `digits`.
    fn coordinate(&self, j: usize, digits: &[u32]) -> u64 {
        let b = u64::from(self.b);
        self.matrices[j].iter().fold(0u64, |acc, row| {
            let y = row.iter().zip(digits).map(|(&c, &d)| u64::from(c) * u64::from(d)).sum::<u64>() % b;
            acc * b + y
        })
    }

    fn points(&self, start: u64, count: u64) -> Result<(Vec<u64>, Vec<u64>), PointSetError> {
        let b = u64::from(self.b);
        let end = start + count;
        let capacity = b.checked_pow(self.cols as u32);
        if capacity.is_none_or(|c| end > c) {
            return Err(PointSetError::IndexOverflow { start, end, cols: self.cols, b: self.b });
        }
        let den = b.checked_pow(self.rows as u32).ok_or(PointSetError::Overflow)?;
        let s = self.dim();
        let mut nums = Vec::with_capacity(count as usize * s);
        let mut digits = vec![0u32; self.cols];
        for n in start..end {
            let mut v = n;
            for d in digits.iter_mut() {
                *d = (v % b) as u32;
                v /= b;
            }
            for j in 0..s {
                nums.push(self.coordinate(j, &digits));
            }
        }
        Ok((vec![den; s], nums))
    }
}

/// The `b^m` points of the digital net with square generating matrices.
pub fn digital_net(g: &GeneratingMatrixSet) -> Result<PointSet, PointSetError> {
    if !g.is_square() {
        return Err(PointSetError::MatrixShape(format!("net needs square matrices, got {}x{}", g.rows, g.cols)));
    }
    let count = u64::from(g.b).checked_pow(g.cols as u32).ok_or(PointSetError::Overflow)?;
    let (dens, nums) = g.points(0, count)?;
    Ok(PointSet::exact(g.dim(), dens, nums, Provenance::Digital { matrices: g.clone(), start: 0 }))
}

/// Points `start .. start + count` of the digital sequence with matrices `g`
/// (`rows` output digits, `cols` index digits).
pub fn digital_sequence_points(g: &GeneratingMatrixSet, start: u64, count: u64) -> Result<PointSet, PointSetError> {
    let (dens, nums) = g.points(start, count)?;
    Ok(PointSet::exact(g.dim(), dens, nums, Provenance::Digital { matrices: g.clone(), start }))
}

/// Niederreiter generating matrices: `C_j[i][r]` is the coefficient of
/// `x^-(r+1)` in `x^u / p_j^(Q+1)`, where `p_j` is the `j`-th monic
/// irreducible over `F_b`, `e_j = deg p_j` and `i = Q e_j + u`, `0 <= u < e_j`.
pub fn niederreiter_matrices(b: u32, s: usize, rows: usize, cols: usize) -> Result<GeneratingMatrixSet, PointSetError> {
    let irreducibles = monic_irreducibles(b, s)?;
    let mut matrices = Vec::with_capacity(s);
    for p in &irreducibles {
        let e = p.degree().expect("irreducible is nonzero");
        let mut power = p.clone();
        let mut q_current = 0;
        let mut c = Vec::with_capacity(rows);
        for i in 0..rows {
            let (q, u) = (i / e, i % e);
            while q_current < q {
                power = &power * p;
                q_current += 1;
            }
            let series = laurent_expand(&Poly::monomial(b, u, 1), &power, -(cols as i64))?;
            c.push((0..cols).map(|r| series.coeff_neg(r + 1).expect("expanded to -cols")).collect());
        }
        matrices.push(c);
    }
    GeneratingMatrixSet::new(b, rows, cols, matrices)
}

/// `sum_j (e_j - 1)` for the first `s` monic irreducibles over `F_b`; the
/// quality parameter bound of the Niederreiter sequence.
pub fn t_upper_bound(b: u32, s: usize) -> Result<usize, PointSetError> {
    Ok(monic_irreducibles(b, s)?.iter().map(|p| p.degree().expect("nonzero") - 1).sum())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn identity(m: usize) -> Vec<Vec<u32>> {
        (0..m).map(|i| (0..m).map(|r| u32::from(i == r)).collect()).collect()
    }

    #[test]
    fn identity_gives_van_der_corput() {
        let g = GeneratingMatrixSet::new(2, 2, 2, vec![identity(2)]).unwrap();
        let p = digital_net(&g).unwrap();
        assert_eq!(p.numerators_over(4).unwrap(), vec![0, 2, 1, 3]);
        let g3 = GeneratingMatrixSet::new(3, 3, 3, vec![identity(3), identity(3)]).unwrap();
        let p3 = digital_net(&g3).unwrap();
        for n in 0..27 {
            let (num, den) = crate::pointsets::radical_inverse(n as u64, 3);
            assert_eq!(p3.value(n, 0), num as f64 / den as f64);
            assert_eq!(p3.value(n, 1), p3.value(n, 0));
        }
    }

    #[test]
    fn zero_matrix_collapses() {
        let g = GeneratingMatrixSet::new(2, 3, 3, vec![vec![vec![0; 3]; 3]]).unwrap();
        assert!(digital_net(&g).unwrap().numerators_over(8).unwrap().iter().all(|&v| v == 0));
    }

    #[test]
    fn shape_checks() {
        assert!(GeneratingMatrixSet::new(4, 2, 2, vec![identity(2)]).is_err());
        assert!(GeneratingMatrixSet::new(2, 2, 2, vec![vec![vec![0, 2], vec![0, 0]]]).is_err());
        assert!(GeneratingMatrixSet::new(2, 2, 3, vec![identity(2)]).is_err());
        let rect = GeneratingMatrixSet::new(2, 3, 2, vec![vec![vec![1, 0], vec![0, 1], vec![0, 0]]]).unwrap();
        assert!(digital_net(&rect).is_err());
        assert!(digital_sequence_points(&rect, 2, 3).is_err());
        assert_eq!(digital_sequence_points(&rect, 1, 3).unwrap().numerators_over(8).unwrap(), vec![4, 2, 6]);
    }

    #[test]
    fn niederreiter_linear_x_is_identity() {
        let g = niederreiter_matrices(2, 1, 6, 6).unwrap();
        assert_eq!(g.matrices[0], identity(6));
    }

    #[test]
    fn niederreiter_x_plus_one() {
        // 1/(x+1)^(i+1) over F_2: row 0 is all ones (x^-1 + x^-2 + ...)
        let g = niederreiter_matrices(2, 2, 4, 4).unwrap();
        assert_eq!(g.matrices[1][0], vec![1, 1, 1, 1]);
        // (x+1)^-2 = x^-2 + x^-4 + ... in characteristic 2
        assert_eq!(g.matrices[1][1], vec![0, 1, 0, 1]);
        // square matrices from this rule are upper triangular with unit diagonal for linear p_j
        for c in &g.matrices {
            for (i, row) in c.iter().enumerate() {
                assert_eq!(row[i], 1);
                assert!(row[..i].iter().all(|&v| v == 0));
            }
        }
    }

    #[test]
    fn t_bound_values() {
        assert_eq!(t_upper_bound(2, 2).unwrap(), 0);
        assert_eq!(t_upper_bound(2, 3).unwrap(), 1);
        assert_eq!(t_upper_bound(3, 3).unwrap(), 0);
        assert_eq!(t_upper_bound(2, 5).unwrap(), 1 + 2 + 2);
    }
}
