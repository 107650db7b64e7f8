use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use serde::{Serialize, Serializer};

use super::QualityError;
use crate::pointsets::{Coordinates, PointSet};

/// Grid cells allowed for the exact algorithm. Together with `s <= 3` this
/// bounds time and memory.
pub const MAX_GRID_CELLS: u64 = 150_000_000;
pub const MAX_EXACT_DIM: usize = 3;

/// Star discrepancy value, exact when the coordinates are.
#[derive(Debug, Clone, PartialEq)]
pub struct StarDiscrepancy {
    pub exact: Option<Ratio<i128>>,
    pub value: f64,
}

impl StarDiscrepancy {
    fn from_ratio(r: Ratio<i128>) -> Self {
        StarDiscrepancy { value: *r.numer() as f64 / *r.denom() as f64, exact: Some(r) }
    }

    /// `num/den` when exact, otherwise the decimal value.
    pub fn to_rational_string(&self) -> String {
        match &self.exact {
            Some(r) => format!("{}/{}", r.numer(), r.denom()),
            None => format!("{}", self.value),
        }
    }
}

impl Serialize for StarDiscrepancy {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = ser.serialize_struct("StarDiscrepancy", 2)?;
        st.serialize_field("exact", &self.exact.as_ref().map(|r| format!("{}/{}", r.numer(), r.denom())))?;
        st.serialize_field("value", &self.value)?;
        st.end()
    }
}

/// Distinct sorted values of each column plus the top grid value `1`, and each
/// point's rank in its column.
struct Grid<T> {
    values: Vec<Vec<T>>,
    ranks: Vec<usize>,
}

fn build_grid<T: Copy + PartialOrd>(p: &PointSet, get: impl Fn(usize, usize) -> T, one: impl Fn(usize) -> T) -> Grid<T> {
    let (n, s) = (p.len(), p.dim());
    let mut values = Vec::with_capacity(s);
    let mut ranks = vec![0usize; n * s];
    for j in 0..s {
        let mut col: Vec<T> = (0..n).map(|i| get(i, j)).collect();
        col.sort_by(|a, b| a.partial_cmp(b).expect("finite coordinates"));
        col.dedup_by(|a, b| a == b);
        for i in 0..n {
            let v = get(i, j);
            ranks[i * s + j] = col.partition_point(|x| x < &v);
        }
        col.push(one(j));
        values.push(col);
    }
    Grid { values, ranks }
}

/// Walks every grid corner and reports `(open count, closed count, corner index)`.
///
/// Layers along coordinate 0 are processed in order while an `(s-1)`-dimensional
/// cumulative histogram of the remaining coordinates is kept, so memory is the
/// size of one layer.
fn for_each_corner(grid_sizes: &[usize], ranks: &[usize], s: usize, mut visit: impl FnMut(u64, u64, &[usize])) {
    let rest: Vec<usize> = grid_sizes[1..].to_vec();
    let layer_len: usize = rest.iter().product();
    let n = ranks.len() / s;
    let mut by_first: Vec<Vec<usize>> = vec![Vec::new(); grid_sizes[0]];
    for i in 0..n {
        by_first[ranks[i * s]].push(i);
    }
    let mut hist = vec![0u64; layer_len];
    let mut prev = vec![0u64; layer_len];
    let mut cur = vec![0u64; layer_len];
    let mut corner = vec![0usize; s];
    let mut strides = vec![1usize; rest.len()];
    for k in (0..rest.len().saturating_sub(1)).rev() {
        strides[k] = strides[k + 1] * rest[k + 1];
    }
    let flat = |idx: &[usize]| idx.iter().zip(&strides).map(|(a, b)| a * b).sum::<usize>();
    // flat index of (idx - 1, ..., idx - 1) is cell - stride_sum
    let stride_sum: usize = strides.iter().sum();
    for c0 in 0..grid_sizes[0] {
        for &i in &by_first[c0] {
            let idx: Vec<usize> = (1..s).map(|j| ranks[i * s + j]).collect();
            hist[flat(&idx)] += 1;
        }
        // inclusive prefix sums over the remaining coordinates
        cur.copy_from_slice(&hist);
        for (k, &stride) in strides.iter().enumerate() {
            let len = rest[k];
            for base in 0..layer_len {
                if (base / stride) % len != 0 {
                    cur[base] += cur[base - stride];
                }
            }
        }
        let mut idx = vec![0usize; rest.len()];
        for cell in 0..layer_len {
            let mut rem = cell;
            for k in 0..rest.len() {
                idx[k] = rem / strides[k];
                rem %= strides[k];
            }
            let closed = cur[cell];
            // open box: strictly below the corner in every coordinate
            let open = if c0 == 0 || idx.contains(&0) {
                0
            } else {
                prev[cell - stride_sum]
            };
            corner[0] = c0;
            corner[1..].copy_from_slice(&idx);
            visit(open, closed, &corner);
        }
        std::mem::swap(&mut prev, &mut cur);
    }
}

fn check_budget(p: &PointSet) -> Result<(), QualityError> {
    if p.is_empty() {
        return Err(QualityError::Empty);
    }
    if p.dim() == 0 || p.dim() > MAX_EXACT_DIM {
        return Err(QualityError::Budget(format!(
            "exact star discrepancy supports 1 <= s <= {MAX_EXACT_DIM}, got s = {}; use the sampled lower bound",
            p.dim()
        )));
    }
    let cells = (p.len() as u64 + 1).saturating_pow(p.dim() as u32);
    if p.dim() > 1 && cells > MAX_GRID_CELLS {
        return Err(QualityError::Budget(format!(
            "grid of up to {cells} cells exceeds {MAX_GRID_CELLS}; use the sampled lower bound"
        )));
    }
    Ok(())
}

/// Star discrepancy `D*_N` by the grid algorithm (any `s <= 3`).
pub fn star_discrepancy_grid(p: &PointSet) -> Result<StarDiscrepancy, QualityError> {
    check_budget(p)?;
    let (n, s) = (p.len(), p.dim());
    match p.coordinates() {
        Coordinates::Exact { denominators, numerators } => {
            let grid = build_grid(p, |i, j| numerators[i * s + j], |j| denominators[j]);
            let sizes: Vec<usize> = grid.values.iter().map(Vec::len).collect();
            let den_prod: i128 = denominators.iter().map(|&d| i128::from(d)).product();
            let n128 = n as i128;
            let lcd = n128.checked_mul(den_prod).ok_or(QualityError::Overflow)?;
            let mut best = 0i128;
            for_each_corner(&sizes, &grid.ranks, s, |open, closed, corner| {
                // everything scaled by L = N * prod D_j
                let vol: i128 = n128 * (0..s).map(|j| i128::from(grid.values[j][corner[j]])).product::<i128>();
                let a = open as i128 * den_prod;
                let c = closed as i128 * den_prod;
                best = best.max(vol - a).max(c - vol);
            });
            Ok(StarDiscrepancy::from_ratio(Ratio::new(best, lcd)))
        }
        Coordinates::Float(v) => {
            let grid = build_grid(p, |i, j| v[i * s + j], |_| 1.0);
            let sizes: Vec<usize> = grid.values.iter().map(Vec::len).collect();
            let mut best = 0f64;
            for_each_corner(&sizes, &grid.ranks, s, |open, closed, corner| {
                let vol: f64 = (0..s).map(|j| grid.values[j][corner[j]]).product();
                best = best.max(vol - open as f64 / n as f64).max(closed as f64 / n as f64 - vol);
            });
            Ok(StarDiscrepancy { exact: None, value: best })
        }
    }
}

/// One-dimensional closed form `D* = 1/(2N) + max_i |x_(i) - (2i-1)/(2N)|`.
pub fn star_discrepancy_1d(p: &PointSet) -> Result<StarDiscrepancy, QualityError> {
    if p.dim() != 1 {
        return Err(QualityError::Dimension(format!("closed form is one-dimensional, got s = {}", p.dim())));
    }
    if p.is_empty() {
        return Err(QualityError::Empty);
    }
    let n = p.len();
    match p.coordinates() {
        Coordinates::Exact { denominators, numerators } => {
            let d = i128::from(denominators[0]);
            let mut xs: Vec<u64> = numerators.clone();
            xs.sort_unstable();
            let two_n = 2 * n as i128;
            // |x - (2i-1)/(2N)| = |2N num - (2i-1) D| / (2 N D)
            let worst = xs
                .iter()
                .enumerate()
                .map(|(k, &x)| (two_n * i128::from(x) - (2 * k as i128 + 1) * d).abs())
                .max()
                .expect("nonempty");
            Ok(StarDiscrepancy::from_ratio(Ratio::new(d + worst, two_n * d)))
        }
        Coordinates::Float(v) => {
            let mut xs = v.clone();
            xs.sort_by(f64::total_cmp);
            let nf = n as f64;
            let worst = xs
                .iter()
                .enumerate()
                .map(|(k, &x)| (x - (2 * k + 1) as f64 / (2.0 * nf)).abs())
                .fold(0.0, f64::max);
            Ok(StarDiscrepancy { exact: None, value: 1.0 / (2.0 * nf) + worst })
        }
    }
}

/// Star discrepancy: the closed form for `s = 1`, the grid algorithm otherwise.
pub fn star_discrepancy(p: &PointSet) -> Result<StarDiscrepancy, QualityError> {
    if p.dim() == 1 {
        star_discrepancy_1d(p)
    } else {
        star_discrepancy_grid(p)
    }
}

/// `|A([0, y)) / N - vol([0, y))|` for the half-open box anchored at the origin.
pub fn local_discrepancy(p: &PointSet, y: &[f64]) -> f64 {
    assert_eq!(y.len(), p.dim());
    let inside = (0..p.len()).filter(|&i| (0..p.dim()).all(|j| p.value(i, j) < y[j])).count();
    let vol: f64 = y.iter().product();
    (inside as f64 / p.len() as f64 - vol).abs()
}

/// Lower bound on `D*_N` from `samples` random anchored boxes (seeded, so
/// reproducible). Works in any dimension; it never exceeds the true value.
pub fn star_discrepancy_lower_bound(p: &PointSet, samples: usize, seed: u64) -> f64 {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut y = vec![0.0; p.dim()];
    let mut best = 0f64;
    for _ in 0..samples {
        for v in y.iter_mut() {
            *v = rng.gen::<f64>();
        }
        best = best.max(local_discrepancy(p, &y));
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pointsets::{lattice_points, Provenance};

    fn exact1(den: u64, nums: Vec<u64>) -> PointSet {
        PointSet::exact(1, vec![den], nums, Provenance::Imported { source: "t".into() })
    }

    #[test]
    fn one_dim_examples() {
        let half = exact1(2, vec![0, 1]);
        assert_eq!(star_discrepancy_1d(&half).unwrap().exact, Some(Ratio::new(1, 2)));
        assert_eq!(star_discrepancy_grid(&half).unwrap().exact, Some(Ratio::new(1, 2)));
        let origin = exact1(5, vec![0]);
        assert_eq!(star_discrepancy(&origin).unwrap().exact, Some(Ratio::new(1, 1)));
        assert_eq!(star_discrepancy_grid(&origin).unwrap().exact, Some(Ratio::new(1, 1)));
        // (2i-1)/(2N) for N = 5 over denominator 10
        let mid = exact1(10, vec![1, 3, 5, 7, 9]);
        assert_eq!(star_discrepancy(&mid).unwrap().exact, Some(Ratio::new(1, 10)));
        assert_eq!(star_discrepancy_grid(&mid).unwrap().exact, Some(Ratio::new(1, 10)));
    }

    #[test]
    fn grid_matches_closed_form_random() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..100 {
            let n = rng.gen_range(1..60usize);
            let den = rng.gen_range(1..200u64);
            let p = exact1(den, (0..n).map(|_| rng.gen_range(0..den)).collect());
            assert_eq!(star_discrepancy_grid(&p).unwrap(), star_discrepancy_1d(&p).unwrap());
        }
    }

    #[test]
    fn two_dim_brute_force() {
        // brute force over all corners with rational arithmetic
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
        for _ in 0..30 {
            let n = rng.gen_range(1..12usize);
            let dens = [rng.gen_range(1..9u64), rng.gen_range(1..9u64)];
            let nums: Vec<u64> = (0..n).flat_map(|_| [rng.gen_range(0..dens[0]), rng.gen_range(0..dens[1])]).collect();
            let p = PointSet::exact(2, dens.to_vec(), nums.clone(), Provenance::Imported { source: "t".into() });
            let mut best = Ratio::new(0i128, 1);
            for y0 in 0..=dens[0] {
                for y1 in 0..=dens[1] {
                    let vol = Ratio::new((y0 * y1) as i128, (dens[0] * dens[1]) as i128);
                    let open = (0..n).filter(|&i| nums[2 * i] < y0 && nums[2 * i + 1] < y1).count();
                    let closed = (0..n).filter(|&i| nums[2 * i] <= y0 && nums[2 * i + 1] <= y1).count();
                    let a = Ratio::new(open as i128, n as i128);
                    let c = Ratio::new(closed as i128, n as i128);
                    best = best.max(vol - a).max(c - vol);
                }
            }
            assert_eq!(star_discrepancy_grid(&p).unwrap().exact, Some(best));
        }
    }

    #[test]
    fn float_matches_exact() {
        let p = lattice_points(&[1, 5, 7], 17);
        let f = PointSet::float(3, (0..17).flat_map(|i| p.point(i)).collect(), Provenance::Imported { source: "t".into() });
        let e = star_discrepancy(&p).unwrap();
        assert!((star_discrepancy(&f).unwrap().value - e.value).abs() < 1e-12);
    }

    #[test]
    fn sampling_never_exceeds_exact() {
        let p = lattice_points(&[1, 21], 55);
        let exact = star_discrepancy(&p).unwrap().value;
        let lb = star_discrepancy_lower_bound(&p, 10_000, 1);
        assert!(lb <= exact + 1e-12 && lb > 0.0);
    }

    #[test]
    fn lattice_permutation_invariant() {
        let p = lattice_points(&[1, 21, 8], 55);
        let q = lattice_points(&[8, 1, 21], 55);
        assert_eq!(star_discrepancy(&p).unwrap(), star_discrepancy(&q).unwrap());
    }

    #[test]
    fn budget_guard() {
        let p = lattice_points(&[1, 2, 3, 4], 8);
        assert!(matches!(star_discrepancy(&p), Err(QualityError::Budget(_))));
    }
}
