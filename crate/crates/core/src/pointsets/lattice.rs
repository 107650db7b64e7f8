use super::{PointSet, Provenance};

/// Rank-1 lattice rule `x_n = ({n a_1 / N}, ..., {n a_s / N})`, `n = 0..N`.
///
/// Generator entries may be negative; they are reduced mod `N` first.
pub fn lattice_points(generator: &[i64], n: u64) -> PointSet {
    assert!(n >= 1, "lattice rule needs N >= 1");
    let s = generator.len();
    let reduced: Vec<u64> = generator.iter().map(|&a| a.rem_euclid(n as i64) as u64).collect();
    let mut nums = Vec::with_capacity(n as usize * s);
    for i in 0..n {
        for &a in &reduced {
            nums.push(((u128::from(i) * u128::from(a)) % u128::from(n)) as u64);
        }
    }
    PointSet::exact(
        s,
        vec![n; s],
        nums,
        Provenance::Lattice { generator: generator.to_vec(), n: n as usize },
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn four_points() {
        let p = lattice_points(&[1, 3], 4);
        let pts: Vec<_> = (0..4).map(|i| p.point(i)).collect();
        assert_eq!(pts, vec![vec![0.0, 0.0], vec![0.25, 0.75], vec![0.5, 0.5], vec![0.75, 0.25]]);
        let grid = lattice_points(&[1], 5);
        assert_eq!(grid.numerators_over(5).unwrap(), vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn generator_reduced_mod_n() {
        let a = lattice_points(&[1, 3], 7);
        let b = lattice_points(&[8, -4], 7);
        assert_eq!(a.coordinates(), b.coordinates());
    }
}
