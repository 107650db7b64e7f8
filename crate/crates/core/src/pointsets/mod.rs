//! Point-set and sequence constructions.
//!
//! Constructions over finite fields produce exact coordinates: each column
//! has one integer denominator (`b^m`, `N`, ...) and every coordinate is stored
//! as its numerator. Verifiers rely on this to decide half-open interval
//! membership without rounding.

mod digital;
mod halton;
mod kronecker;
mod lattice;
mod polylattice;

pub use digital::{
    digital_net, digital_sequence_points, niederreiter_matrices, t_upper_bound, GeneratingMatrixSet,
};
pub use halton::{halton, radical_inverse};
pub use kronecker::{kronecker, Alpha};
pub use lattice::lattice_points;
pub use polylattice::{polynomial_lattice, polynomial_lattice_matrices, PolyLatticeParams};

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::AlgebraError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PointSetError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("bases {0} and {1} are not coprime")]
    NonCoprimeBases(u64, u64),
    #[error("base must be at least 2, got {0}")]
    BadBase(u64),
    #[error("point counts differ: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("generating matrices: {0}")]
    MatrixShape(String),
    #[error("index range {start}..{end} needs more than {cols} digits in base {b}")]
    IndexOverflow { start: u64, end: u64, cols: usize, b: u32 },
    #[error("invalid polynomial lattice parameters: {0}")]
    PolyLattice(String),
    #[error("cannot parse alpha `{0}` (expected sqrt(d) or a non-negative decimal)")]
    BadAlpha(String),
    #[error("CSV: {0}")]
    Csv(String),
    #[error("denominator overflow")]
    Overflow,
}

/// Coordinates, row-major (`point * dim + coordinate`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Coordinates {
    /// Coordinate `(i, j)` is `numerators[i * dim + j] / denominators[j]`.
    Exact { denominators: Vec<u64>, numerators: Vec<u64> },
    Float(Vec<f64>),
}

/// How a point set was produced. Written to the JSON sidecar next to CSV output.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Provenance {
    Lattice { generator: Vec<i64>, n: usize },
    Kronecker { alphas: Vec<String>, n: usize },
    Halton { bases: Vec<u64>, n: usize, start: u64 },
    Hybrid { first: Box<Provenance>, second: Box<Provenance> },
    Digital { matrices: GeneratingMatrixSet, start: u64 },
    Niederreiter { b: u32, s: usize, m: usize, start: u64, matrices: GeneratingMatrixSet },
    PolynomialLattice { b: u32, modulus: Vec<u32>, generators: Vec<Vec<u32>>, matrices: GeneratingMatrixSet },
    Empty { n: usize },
    Imported { source: String },
}

impl Provenance {
    /// Generating matrices, when the set is a digital construction.
    pub fn matrices(&self) -> Option<&GeneratingMatrixSet> {
        match self {
            Provenance::Digital { matrices, .. }
            | Provenance::Niederreiter { matrices, .. }
            | Provenance::PolynomialLattice { matrices, .. } => Some(matrices),
            _ => None,
        }
    }
}

/// `N` points in `[0, 1)^s`. Immutable once built.
#[derive(Debug, Clone, PartialEq)]
pub struct PointSet {
    dim: usize,
    len: usize,
    coords: Coordinates,
    provenance: Provenance,
}

impl PointSet {
    /// Exact point set. Panics if a numerator is not below its column denominator.
    pub fn exact(dim: usize, denominators: Vec<u64>, numerators: Vec<u64>, provenance: Provenance) -> Self {
        assert_eq!(denominators.len(), dim);
        let len = if dim == 0 { 0 } else { numerators.len() / dim };
        assert_eq!(len * dim, numerators.len());
        for (k, &num) in numerators.iter().enumerate() {
            assert!(num < denominators[k % dim], "coordinate outside [0, 1)");
        }
        PointSet { dim, len, coords: Coordinates::Exact { denominators, numerators }, provenance }
    }

    /// Floating-point point set. Panics on coordinates outside `[0, 1)`.
    pub fn float(dim: usize, values: Vec<f64>, provenance: Provenance) -> Self {
        let len = if dim == 0 { 0 } else { values.len() / dim };
        assert_eq!(len * dim, values.len());
        assert!(values.iter().all(|v| (0.0..1.0).contains(v)), "coordinate outside [0, 1)");
        PointSet { dim, len, coords: Coordinates::Float(values), provenance }
    }

    /// `n` points in dimension zero; the identity for [`hybrid`].
    pub fn empty(n: usize) -> Self {
        PointSet {
            dim: 0,
            len: n,
            coords: Coordinates::Exact { denominators: Vec::new(), numerators: Vec::new() },
            provenance: Provenance::Empty { n },
        }
    }

    /// Same points with a different provenance record (used when re-attaching a
    /// JSON sidecar to points read from CSV).
    pub fn with_provenance(mut self, provenance: Provenance) -> Self {
        self.provenance = provenance;
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn coordinates(&self) -> &Coordinates {
        &self.coords
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn is_exact(&self) -> bool {
        matches!(self.coords, Coordinates::Exact { .. })
    }

    /// Column denominators of an exact set.
    pub fn denominators(&self) -> Option<&[u64]> {
        match &self.coords {
            Coordinates::Exact { denominators, .. } => Some(denominators),
            Coordinates::Float(_) => None,
        }
    }

    /// `(numerator, denominator)` of coordinate `j` of point `i` in an exact set.
    pub fn exact_coord(&self, i: usize, j: usize) -> Option<(u64, u64)> {
        match &self.coords {
            Coordinates::Exact { denominators, numerators } => Some((numerators[i * self.dim + j], denominators[j])),
            Coordinates::Float(_) => None,
        }
    }

    pub fn value(&self, i: usize, j: usize) -> f64 {
        match &self.coords {
            Coordinates::Exact { denominators, numerators } => {
                numerators[i * self.dim + j] as f64 / denominators[j] as f64
            }
            Coordinates::Float(v) => v[i * self.dim + j],
        }
    }

    pub fn point(&self, i: usize) -> Vec<f64> {
        (0..self.dim).map(|j| self.value(i, j)).collect()
    }

    /// Numerators of an exact set rescaled to the common denominator `den`
    /// (which every column denominator must divide).
    pub fn numerators_over(&self, den: u64) -> Option<Vec<u64>> {
        let Coordinates::Exact { denominators, numerators } = &self.coords else { return None };
        if denominators.iter().any(|&d| d == 0 || !den.is_multiple_of(d)) {
            return None;
        }
        Some(
            numerators
                .iter()
                .enumerate()
                .map(|(k, &v)| v * (den / denominators[k % self.dim]))
                .collect(),
        )
    }

    /// Points with indices `range` (provenance kept).
    pub fn slice(&self, start: usize, count: usize) -> PointSet {
        let (a, b) = (start * self.dim, (start + count) * self.dim);
        let coords = match &self.coords {
            Coordinates::Exact { denominators, numerators } => {
                Coordinates::Exact { denominators: denominators.clone(), numerators: numerators[a..b].to_vec() }
            }
            Coordinates::Float(v) => Coordinates::Float(v[a..b].to_vec()),
        };
        PointSet { dim: self.dim, len: count, coords, provenance: self.provenance.clone() }
    }

    /// Same points with columns reordered by `perm` (`new column k = old column perm[k]`).
    pub fn permute_columns(&self, perm: &[usize]) -> PointSet {
        assert_eq!(perm.len(), self.dim);
        let pick = |v: &[u64]| -> Vec<u64> {
            (0..self.len).flat_map(|i| perm.iter().map(move |&j| v[i * self.dim + j])).collect()
        };
        let coords = match &self.coords {
            Coordinates::Exact { denominators, numerators } => Coordinates::Exact {
                denominators: perm.iter().map(|&j| denominators[j]).collect(),
                numerators: pick(numerators),
            },
            Coordinates::Float(v) => {
                Coordinates::Float((0..self.len).flat_map(|i| perm.iter().map(move |&j| v[i * self.dim + j])).collect())
            }
        };
        PointSet { dim: self.dim, len: self.len, coords, provenance: self.provenance.clone() }
    }

    /// CSV with a header row `x1,...,xs`. Exact coordinates are written as
    /// `num/den` unless `force_float` is set.
    pub fn to_csv(&self, force_float: bool) -> String {
        let mut out = String::new();
        let header: Vec<String> = (1..=self.dim).map(|j| format!("x{j}")).collect();
        out.push_str(&header.join(","));
        out.push('\n');
        for i in 0..self.len {
            let row: Vec<String> = (0..self.dim)
                .map(|j| match self.exact_coord(i, j) {
                    Some((num, den)) if !force_float => format!("{num}/{den}"),
                    _ => format!("{:.17}", self.value(i, j)),
                })
                .collect();
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }

    /// Parses CSV written by [`PointSet::to_csv`] (or any CSV of coordinates).
    ///
    /// A non-numeric first row is treated as a header. If every cell is a
    /// fraction the set is exact, with each column brought to the lcm of its
    /// denominators.
    pub fn from_csv(text: &str, source: &str) -> Result<PointSet, PointSetError> {
        let rows: Vec<Vec<&str>> = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty())
            .map(|l| l.split(',').map(str::trim).collect())
            .collect();
        let mut rows = rows.as_slice();
        let mut dim = rows.first().map_or(0, Vec::len);
        if let Some(first) = rows.first() {
            if first.iter().any(|c| c.chars().next().is_some_and(|ch| ch.is_ascii_alphabetic())) {
                dim = first.len();
                rows = &rows[1..];
            }
        }
        if rows.iter().any(|r| r.len() != dim) {
            return Err(PointSetError::Csv("rows have different lengths".into()));
        }
        let provenance = Provenance::Imported { source: source.to_string() };
        let all_exact = rows.iter().flatten().all(|c| c.contains('/'));
        if all_exact && dim > 0 {
            let mut fracs = Vec::with_capacity(rows.len() * dim);
            for cell in rows.iter().flatten() {
                let (n, d) = cell.split_once('/').expect("checked");
                let n: u64 = n.trim().parse().map_err(|_| PointSetError::Csv(format!("bad numerator in `{cell}`")))?;
                let d: u64 = d.trim().parse().map_err(|_| PointSetError::Csv(format!("bad denominator in `{cell}`")))?;
                if d == 0 || n >= d {
                    return Err(PointSetError::Csv(format!("`{cell}` is not in [0, 1)")));
                }
                fracs.push((n, d));
            }
            let mut dens = vec![1u64; dim];
            for (k, &(_, d)) in fracs.iter().enumerate() {
                dens[k % dim] = dens[k % dim].lcm(&d);
            }
            let nums = fracs.iter().enumerate().map(|(k, &(n, d))| n * (dens[k % dim] / d)).collect();
            return Ok(PointSet::exact(dim, dens, nums, provenance));
        }
        let mut vals = Vec::with_capacity(rows.len() * dim);
        for cell in rows.iter().flatten() {
            let v = match cell.split_once('/') {
                Some((n, d)) => {
                    let n: f64 = n.trim().parse().map_err(|_| PointSetError::Csv(format!("bad cell `{cell}`")))?;
                    let d: f64 = d.trim().parse().map_err(|_| PointSetError::Csv(format!("bad cell `{cell}`")))?;
                    n / d
                }
                None => cell.parse().map_err(|_| PointSetError::Csv(format!("bad cell `{cell}`")))?,
            };
            if !(0.0..1.0).contains(&v) {
                return Err(PointSetError::Csv(format!("`{cell}` is not in [0, 1)")));
            }
            vals.push(v);
        }
        Ok(PointSet::float(dim, vals, provenance))
    }
}

/// Row-wise concatenation `z_n = (x_n, y_n)`. The result is exact only if both inputs are.
pub fn hybrid(first: &PointSet, second: &PointSet) -> Result<PointSet, PointSetError> {
    if first.len != second.len {
        return Err(PointSetError::LengthMismatch(first.len, second.len));
    }
    let dim = first.dim + second.dim;
    let provenance =
        Provenance::Hybrid { first: Box::new(first.provenance.clone()), second: Box::new(second.provenance.clone()) };
    let n = first.len;
    match (&first.coords, &second.coords) {
        (
            Coordinates::Exact { denominators: d1, numerators: n1 },
            Coordinates::Exact { denominators: d2, numerators: n2 },
        ) => {
            let dens = d1.iter().chain(d2).copied().collect();
            let nums = (0..n)
                .flat_map(|i| {
                    n1[i * first.dim..(i + 1) * first.dim]
                        .iter()
                        .chain(&n2[i * second.dim..(i + 1) * second.dim])
                        .copied()
                })
                .collect();
            let mut out = PointSet::exact(dim, dens, nums, provenance);
            out.len = n;
            Ok(out)
        }
        _ => {
            let vals = (0..n).flat_map(|i| first.point(i).into_iter().chain(second.point(i))).collect();
            let mut out = PointSet::float(dim, vals, provenance);
            out.len = n;
            Ok(out)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_round_trip_exact_and_float() {
        let p = lattice_points(&[1, 3], 4);
        let back = PointSet::from_csv(&p.to_csv(false), "t").unwrap();
        assert_eq!(back.coordinates(), p.coordinates());
        let f = PointSet::from_csv(&p.to_csv(true), "t").unwrap();
        assert!(!f.is_exact());
        assert_eq!(f.point(1), vec![0.25, 0.75]);
        assert!(PointSet::from_csv("x1\n3/2\n", "t").is_err());
        assert!(PointSet::from_csv("x1,x2\n0.5\n", "t").is_err());
    }

    #[test]
    fn csv_reduced_fractions_share_denominator() {
        let p = PointSet::from_csv("1/2\n1/4\n3/4\n0/1\n", "t").unwrap();
        assert_eq!(p.denominators().unwrap(), &[4]);
        assert_eq!(p.numerators_over(4).unwrap(), vec![2, 1, 3, 0]);
    }

    #[test]
    fn hybrid_identity_and_dims() {
        let h = halton(&[2], 4, 0, false).unwrap();
        let e = PointSet::empty(4);
        let z = hybrid(&h, &e).unwrap();
        assert_eq!(z.coordinates(), h.coordinates());
        assert_eq!(z.len(), 4);
        let k = kronecker(&[Alpha::Sqrt(2)], 4).unwrap();
        let z = hybrid(&h, &k).unwrap();
        assert_eq!(z.dim(), 2);
        assert!(!z.is_exact());
        assert_eq!(z.value(1, 0), 0.5);
        assert!((z.value(1, 1) - 0.41421356237309503).abs() < 1e-15);
        assert_eq!(hybrid(&h, &PointSet::empty(3)), Err(PointSetError::LengthMismatch(4, 3)));
    }
}
