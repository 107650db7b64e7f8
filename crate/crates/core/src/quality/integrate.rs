use serde::Serialize;

use super::discrepancy::{star_discrepancy, StarDiscrepancy};
use super::lattice::neumaier_add;
use super::net::minimal_t_geometric;
use super::QualityError;
use crate::pointsets::PointSet;

/// QMC estimate `(1/N) sum_n f(x_n)` with compensated summation.
pub fn qmc_integrate(f: impl Fn(&[f64]) -> f64, p: &PointSet) -> Result<f64, QualityError> {
    if p.is_empty() {
        return Err(QualityError::Empty);
    }
    let (mut sum, mut comp) = (0f64, 0f64);
    let mut x = vec![0.0; p.dim()];
    for i in 0..p.len() {
        for (j, v) in x.iter_mut().enumerate() {
            *v = p.value(i, j);
        }
        let y = f(&x);
        if !y.is_finite() {
            return Err(QualityError::NonFinite { index: i });
        }
        neumaier_add(&mut sum, &mut comp, y);
    }
    Ok((sum + comp) / p.len() as f64)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NetDiagnostic {
    pub t: usize,
    pub star_discrepancy: StarDiscrepancy,
    /// `D*_N N / (b^t (log N)^(s-1))`
    pub ratio: f64,
}

/// `D*_N * N / (b^t (log N)^(s-1))` with `t` the geometric minimal t. Needs `m >= 2`
/// so that `log N > 1`.
pub fn net_discrepancy_diagnostic(p: &PointSet, b: u32, m: usize) -> Result<NetDiagnostic, QualityError> {
    if m < 2 {
        return Err(QualityError::Dimension("diagnostic needs m >= 2".into()));
    }
    let t = minimal_t_geometric(p, b, m)?;
    let d = star_discrepancy(p)?;
    let n = p.len() as f64;
    let ratio = d.value * n / (f64::from(b).powi(t as i32) * n.ln().powi(p.dim() as i32 - 1));
    Ok(NetDiagnostic { t, star_discrepancy: d, ratio })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pointsets::{digital_net, lattice_points, niederreiter_matrices, GeneratingMatrixSet};
    use crate::quality::local_discrepancy;

    #[test]
    fn constant_and_errors() {
        let p = lattice_points(&[1, 3], 7);
        assert!((qmc_integrate(|_| 1.0, &p).unwrap() - 1.0).abs() < 1e-15);
        assert_eq!(qmc_integrate(|x| 1.0 / x[0], &p), Err(QualityError::NonFinite { index: 0 }));
    }

    #[test]
    fn product_error_shrinks_on_nets() {
        let mut errs = Vec::new();
        for m in 4..=12 {
            let net = digital_net(&niederreiter_matrices(2, 2, m, m).unwrap()).unwrap();
            let est = qmc_integrate(|x| x.iter().map(|v| 2.0 * v).product(), &net).unwrap();
            let n = net.len() as f64;
            errs.push(((est - 1.0).abs(), (est - 1.0).abs() * n / n.ln()));
        }
        assert!(errs.last().unwrap().0 < errs[0].0);
        let c = errs[..4].iter().map(|e| e.1).fold(0.0, f64::max);
        assert!(errs.iter().all(|e| e.1 <= 1.5 * c.max(1e-12)), "{errs:?}");
    }

    #[test]
    fn indicator_bounded_by_discrepancy() {
        let p = lattice_points(&[1, 13], 34);
        let d = star_discrepancy(&p).unwrap().value;
        for y in [[0.3, 0.7], [0.5, 0.5], [0.99, 0.1]] {
            let est = qmc_integrate(|x| f64::from(u8::from(x[0] < y[0] && x[1] < y[1])), &p).unwrap();
            assert!((est - y[0] * y[1]).abs() <= d + 1e-12);
            assert!(((est - y[0] * y[1]).abs() - local_discrepancy(&p, &y)).abs() < 1e-12);
        }
    }

    #[test]
    fn diagnostic_guards() {
        let zero = GeneratingMatrixSet::new(2, 3, 3, vec![vec![vec![0; 3]; 3]; 2]).unwrap();
        let d = net_discrepancy_diagnostic(&digital_net(&zero).unwrap(), 2, 3).unwrap();
        assert_eq!(d.t, 3);
        assert!(d.ratio.is_finite());
        let one = GeneratingMatrixSet::new(2, 1, 1, vec![vec![vec![1]]]).unwrap();
        assert!(net_discrepancy_diagnostic(&digital_net(&one).unwrap(), 2, 1).is_err());
    }

    #[test]
    fn diagnostic_on_niederreiter_nets() {
        // t = 0 throughout; the ratio stays in a narrow band as m grows
        let mut ratios = Vec::new();
        for m in 4..=9 {
            let net = digital_net(&niederreiter_matrices(2, 2, m, m).unwrap()).unwrap();
            let d = net_discrepancy_diagnostic(&net, 2, m).unwrap();
            assert_eq!(d.t, 0);
            assert!(d.star_discrepancy.value > 0.0);
            ratios.push(d.ratio);
        }
        let (lo, hi) = ratios.iter().fold((f64::MAX, 0f64), |(a, b), &r| (a.min(r), b.max(r)));
        assert!(hi < 2.0 * lo, "{ratios:?}");
    }
}
