use rayon::prelude::*;

use super::QualityError;
use crate::pointsets::PointSet;

/// All `d in N^parts` with `sum d = total`.
pub(crate) fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    fn rec(rest: usize, parts: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if parts == 1 {
            cur.push(rest);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for d in 0..=rest {
            cur.push(d);
            rec(rest - d, parts - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if parts > 0 {
        rec(total, parts, &mut Vec::with_capacity(parts), &mut out);
    }
    out
}

/// Numerators over `b^m`, after checking `N = b^m` and exactness.
pub(crate) fn net_numerators(p: &PointSet, b: u32, m: usize) -> Result<Vec<u64>, QualityError> {
    let n = u64::from(b).checked_pow(m as u32).ok_or(QualityError::Overflow)?;
    if p.len() as u64 != n {
        return Err(QualityError::WrongCount { expected: n, got: p.len() });
    }
    if p.dim() == 0 {
        return Err(QualityError::Dimension("point set has dimension 0".into()));
    }
    if !p.is_exact() {
        return Err(QualityError::NotExact);
    }
    p.numerators_over(n).ok_or(QualityError::DenominatorMismatch(n))
}

fn holds_for_shape(nums: &[u64], s: usize, b: u64, m: usize, shape: &[usize], per_cell: u32) -> bool {
    let cells: u64 = shape.iter().map(|&d| b.pow(d as u32)).product();
    let mut counts = vec![0u32; cells as usize];
    let divisors: Vec<u64> = shape.iter().map(|&d| b.pow((m - d) as u32)).collect();
    let radices: Vec<u64> = shape.iter().map(|&d| b.pow(d as u32)).collect();
    for point in nums.chunks_exact(s) {
        let mut idx = 0u64;
        for j in 0..s {
            idx = idx * radices[j] + point[j] / divisors[j];
        }
        let c = &mut counts[idx as usize];
        *c += 1;
        if *c > per_cell {
            return false;
        }
    }
    // N = b^m points in b^(m-t) cells with none over b^t means all equal b^t
    true
}

fn holds(nums: &[u64], s: usize, b: u32, m: usize, t: usize) -> bool {
    if t >= m {
        return true;
    }
    let per_cell = u32::try_from(u64::from(b).pow(t as u32)).unwrap_or(u32::MAX);
    compositions(m - t, s)
        .par_iter()
        .all(|shape| holds_for_shape(nums, s, u64::from(b), m, shape, per_cell))
}

/// Whether `p` is a `(t, m, s)`-net in base `b`: every elementary interval of
/// volume `b^(t-m)` holds exactly `b^t` points. Membership uses exact numerators.
pub fn satisfies_net_property(p: &PointSet, b: u32, m: usize, t: usize) -> Result<bool, QualityError> {
    let nums = net_numerators(p, b, m)?;
    Ok(holds(&nums, p.dim(), b, m, t))
}

/// Smallest `t` in `[0, m]` for which `p` is a `(t, m, s)`-net in base `b`.
pub fn minimal_t_geometric(p: &PointSet, b: u32, m: usize) -> Result<usize, QualityError> {
    let nums = net_numerators(p, b, m)?;
    Ok((0..=m).find(|&t| holds(&nums, p.dim(), b, m, t)).expect("t = m always holds"))
}

/// True iff the net property at `t` implies it at every `t' in [t, m]`, each
/// checked directly.
pub fn t_monotonicity_check(p: &PointSet, b: u32, m: usize, t: usize) -> Result<bool, QualityError> {
    let nums = net_numerators(p, b, m)?;
    if !holds(&nums, p.dim(), b, m, t) {
        return Ok(true);
    }
    Ok((t..=m).all(|u| holds(&nums, p.dim(), b, m, u)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pointsets::{digital_net, niederreiter_matrices, PointSet, Provenance};

    fn pts(dim: usize, den: u64, nums: Vec<u64>) -> PointSet {
        PointSet::exact(dim, vec![den; dim], nums, Provenance::Imported { source: "test".into() })
    }

    #[test]
    fn compositions_count() {
        assert_eq!(compositions(3, 2), vec![vec![0, 3], vec![1, 2], vec![2, 1], vec![3, 0]]);
        assert_eq!(compositions(4, 3).len(), 15);
        assert_eq!(compositions(0, 3), vec![vec![0, 0, 0]]);
    }

    #[test]
    fn van_der_corput_is_t0() {
        let p = pts(1, 4, vec![0, 2, 1, 3]);
        assert_eq!(minimal_t_geometric(&p, 2, 2).unwrap(), 0);
    }

    #[test]
    fn origin_copies_are_tm() {
        let p = pts(2, 8, vec![0; 16]);
        assert_eq!(minimal_t_geometric(&p, 2, 3).unwrap(), 3);
        assert!(t_monotonicity_check(&p, 2, 3, 3).unwrap());
    }

    #[test]
    fn input_checks() {
        let p = pts(1, 4, vec![0, 2, 1]);
        assert!(matches!(minimal_t_geometric(&p, 2, 2), Err(QualityError::WrongCount { .. })));
        let f = PointSet::float(1, vec![0.0, 0.5], Provenance::Imported { source: "t".into() });
        assert_eq!(minimal_t_geometric(&f, 2, 1), Err(QualityError::NotExact));
        let odd = pts(1, 3, vec![0, 1]);
        assert!(matches!(minimal_t_geometric(&odd, 2, 1), Err(QualityError::DenominatorMismatch(2))));
    }

    #[test]
    fn niederreiter_b3_s2_is_t0() {
        let g = niederreiter_matrices(3, 2, 2, 2).unwrap();
        assert_eq!(minimal_t_geometric(&digital_net(&g).unwrap(), 3, 2).unwrap(), 0);
        let g = niederreiter_matrices(2, 2, 6, 6).unwrap();
        assert_eq!(minimal_t_geometric(&digital_net(&g).unwrap(), 2, 6).unwrap(), 0);
    }

    #[test]
    fn niederreiter_b2_s3_within_bound() {
        for m in 1..=8 {
            let g = niederreiter_matrices(2, 3, m, m).unwrap();
            let t = minimal_t_geometric(&digital_net(&g).unwrap(), 2, m).unwrap();
            assert!(t <= 1, "m={m}: t={t}");
        }
    }

    #[test]
    fn property_set_is_up_set() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let (b, m, s) = (rng.gen_range(2..=3u32), rng.gen_range(1..=4usize), rng.gen_range(1..=3usize));
            let n = u64::from(b).pow(m as u32);
            let p = pts(s, n, (0..n as usize * s).map(|_| rng.gen_range(0..n)).collect());
            let holds: Vec<bool> = (0..=m).map(|t| satisfies_net_property(&p, b, m, t).unwrap()).collect();
            let first = holds.iter().position(|&h| h).unwrap();
            assert!(holds[first..].iter().all(|&h| h));
            assert_eq!(minimal_t_geometric(&p, b, m).unwrap(), first);
            for t in 0..=m {
                assert!(t_monotonicity_check(&p, b, m, t).unwrap());
            }
        }
    }
}
