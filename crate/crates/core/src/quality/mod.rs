//! Quality measures for point sets: the `(t, m, s)`-net verifier, the dual
//! (NRT weight) computation of `t`, exact star discrepancy, the lattice-rule
//! worst-case error `P_2`, and the QMC integration harness.

mod discrepancy;
mod dual;
mod integrate;
mod lattice;
mod net;

pub use discrepancy::{
    local_discrepancy, star_discrepancy, star_discrepancy_1d, star_discrepancy_grid, star_discrepancy_lower_bound,
    StarDiscrepancy, MAX_EXACT_DIM, MAX_GRID_CELLS,
};
pub use dual::{dual_space, minimal_t_dual, nrt_block_weight, nrt_weight, DualSpace};
pub use integrate::{net_discrepancy_diagnostic, qmc_integrate, NetDiagnostic};
pub use lattice::{character_orthogonality, fibonacci, p_alpha, CharacterSum, CHARACTER_TOLERANCE};
pub use net::{minimal_t_geometric, satisfies_net_property, t_monotonicity_check};

use serde::Serialize;
use thiserror::Error;

use crate::pointsets::{PointSet, Provenance};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QualityError {
    #[error("expected {expected} points, got {got}")]
    WrongCount { expected: u64, got: usize },
    #[error("net verification needs exact coordinates")]
    NotExact,
    #[error("column denominators must divide {0}")]
    DenominatorMismatch(u64),
    #[error("{0}")]
    Dimension(String),
    #[error("budget exceeded: {0}")]
    Budget(String),
    #[error("P_alpha is implemented for alpha = 2 only, got {0}")]
    UnsupportedAlpha(u32),
    #[error("integrand is not finite at node {index}")]
    NonFinite { index: usize },
    #[error("empty point set")]
    Empty,
    #[error("arithmetic overflow")]
    Overflow,
}

/// Summary of the quality measures that apply to a point set.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QualityReport {
    pub n: usize,
    pub s: usize,
    pub b: Option<u32>,
    pub m: Option<usize>,
    pub t_geometric: Option<usize>,
    pub t_dual: Option<usize>,
    pub star_discrepancy: Option<StarDiscrepancy>,
    pub p2: Option<f64>,
    /// `N D*_N / (b^t (log N)^(s-1))`
    pub diagnostic: Option<f64>,
    /// Measures that were requested but could not be computed, with the reason.
    pub skipped: Vec<String>,
}

/// Computes every measure that applies. `net` gives `(b, m)` when `p` should
/// be checked as a net; generating matrices are taken from the provenance.
pub fn quality_report(p: &PointSet, net: Option<(u32, usize)>) -> QualityReport {
    let mut report = QualityReport {
        n: p.len(),
        s: p.dim(),
        b: net.map(|x| x.0),
        m: net.map(|x| x.1),
        t_geometric: None,
        t_dual: None,
        star_discrepancy: None,
        p2: None,
        diagnostic: None,
        skipped: Vec::new(),
    };
    if let Some((b, m)) = net {
        match minimal_t_geometric(p, b, m) {
            Ok(t) => report.t_geometric = Some(t),
            Err(e) => report.skipped.push(format!("t_geometric: {e}")),
        }
        match p.provenance().matrices() {
            Some(g) if g.b == b && g.rows >= m && g.cols >= m => match minimal_t_dual(&g.truncate(m)) {
                Ok(t) => report.t_dual = Some(t),
                Err(e) => report.skipped.push(format!("t_dual: {e}")),
            },
            _ => report.skipped.push("t_dual: no generating matrices in provenance".into()),
        }
    }
    match star_discrepancy(p) {
        Ok(d) => report.star_discrepancy = Some(d),
        Err(e) => report.skipped.push(format!("star_discrepancy: {e}")),
    }
    if let Provenance::Lattice { generator, n } = p.provenance() {
        report.p2 = p_alpha(generator, *n as u64, 2).ok();
    }
    if let (Some((b, m)), Some(t), Some(d)) = (net, report.t_geometric, &report.star_discrepancy) {
        if m >= 2 {
            let n = p.len() as f64;
            report.diagnostic = Some(d.value * n / (f64::from(b).powi(t as i32) * n.ln().powi(p.dim() as i32 - 1)));
        }
    }
    report
}
