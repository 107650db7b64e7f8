use serde::Serialize;

use super::net::compositions;
use super::QualityError;
use crate::algebra::linalg::{nullspace, rank};
use crate::algebra::{FieldElement, PrimeField};
use crate::pointsets::GeneratingMatrixSet;

/// Dual of the row space `M = {(C_1 u, ..., C_s u)}` in `F_b^(s m)`.
///
/// Coordinates are grouped in `s` blocks of `m`; position `i` (0-based) of a
/// block is the digit of weight `b^-(i+1)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DualSpace {
    pub b: u32,
    pub m: usize,
    pub s: usize,
    pub basis: Vec<Vec<FieldElement>>,
    /// Minimum NRT weight over nonzero dual vectors; `m + 1` when none has weight `<= m`.
    pub min_weight: usize,
}

/// NRT weight of one block: 0 for the zero block, else the 1-based position of
/// the last nonzero digit.
pub fn nrt_block_weight(block: &[FieldElement]) -> usize {
    block.iter().rposition(|&v| v != 0).map_or(0, |i| i + 1)
}

/// NRT weight of a full vector (sum over blocks of length `m`).
pub fn nrt_weight(v: &[FieldElement], m: usize) -> usize {
    v.chunks(m).map(nrt_block_weight).sum()
}

/// Computes `M^perp` as the null space of `[C_1^T | ... | C_s^T]` and its
/// minimum NRT weight.
pub fn dual_space(g: &GeneratingMatrixSet) -> Result<DualSpace, QualityError> {
    if !g.is_square() {
        return Err(QualityError::Dimension(format!("dual needs square matrices, got {}x{}", g.rows, g.cols)));
    }
    let (b, m, s) = (g.b, g.rows, g.dim());
    let field = PrimeField::new(b).map_err(|e| QualityError::Dimension(e.to_string()))?;
    let cols = s * m;
    // row r: the r-th column of every C_j, i.e. sum_{j,i} C_j[i][r] a_(j,i) = 0
    let mut a: Vec<Vec<FieldElement>> = (0..m)
        .map(|r| g.matrices.iter().flat_map(|c| (0..m).map(move |i| c[i][r])).collect())
        .collect();
    let basis = nullspace(&mut a, cols, &field);
    let min_weight = min_nrt_weight(&basis, m, s, &field);
    Ok(DualSpace { b, m, s, basis, min_weight })
}

/// Smallest `w <= m` such that some nonzero dual vector fits a weight profile
/// `v` with `sum v = w`; `m + 1` if there is none.
///
/// A dual vector fits `v` when block `j` vanishes from position `v_j` on. The
/// subspace of such vectors is nonzero iff the basis restricted to those
/// forced-zero positions has rank below the dual dimension.
fn min_nrt_weight(basis: &[Vec<FieldElement>], m: usize, s: usize, field: &PrimeField) -> usize {
    let k = basis.len();
    if k == 0 {
        return m + 1;
    }
    for w in 1..=m {
        let found = compositions(w, s).into_iter().any(|profile| {
            let outside: Vec<usize> =
                (0..s).flat_map(|j| (profile[j]..m).map(move |i| j * m + i)).collect();
            let restricted: Vec<Vec<FieldElement>> =
                basis.iter().map(|v| outside.iter().map(|&c| v[c]).collect()).collect();
            rank(&restricted, outside.len(), field) < k
        });
        if found {
            return w;
        }
    }
    m + 1
}

/// `t = clamp(m + 1 - delta, 0, m)` from the dual minimum weight.
pub fn minimal_t_dual(g: &GeneratingMatrixSet) -> Result<usize, QualityError> {
    let dual = dual_space(g)?;
    Ok((dual.m + 1).saturating_sub(dual.min_weight).min(dual.m))
}
