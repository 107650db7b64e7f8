//! Dense Gaussian elimination over `F_p`.

use super::field::{FieldElement, PrimeField};

/// Null space of an `rows x cols` matrix (modified in place) over `F_p`.
pub(crate) fn nullspace(m: &mut [Vec<FieldElement>], cols: usize, field: &PrimeField) -> Vec<Vec<FieldElement>> {
    let pivots = row_reduce(m, cols, field);
    let mut is_pivot = vec![None; cols];
    for (r, &c) in pivots.iter().enumerate() {
        is_pivot[c] = Some(r);
    }
    let mut out = Vec::new();
    for free in (0..cols).filter(|&c| is_pivot[c].is_none()) {
        let mut v = vec![0; cols];
        v[free] = 1;
        for (c, pr) in is_pivot.iter().enumerate() {
            if let Some(r) = *pr {
                v[c] = field.neg(m[r][free]);
            }
        }
        out.push(v);
    }
    out
}

/// Gauss-Jordan elimination; returns the pivot column of each leading row.
pub(crate) fn row_reduce(m: &mut [Vec<FieldElement>], cols: usize, field: &PrimeField) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(pr) = (r..m.len()).find(|&i| m[i][c] != 0) else { continue };
        m.swap(r, pr);
        let inv = field.inv(m[r][c]).expect("nonzero pivot");
        for v in m[r].iter_mut() {
            *v = field.mul(*v, inv);
        }
        for i in 0..m.len() {
            if i != r && m[i][c] != 0 {
                let factor = m[i][c];
                for j in 0..cols {
                    let sub = field.mul(factor, m[r][j]);
                    m[i][j] = field.sub(m[i][j], sub);
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    pivots
}

/// Rank of a matrix (copied, not modified).
pub(crate) fn rank(m: &[Vec<FieldElement>], cols: usize, field: &PrimeField) -> usize {
    let mut work = m.to_vec();
    row_reduce(&mut work, cols, field).len()
}
