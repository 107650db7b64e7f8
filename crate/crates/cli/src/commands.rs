//! One function per subcommand. Each returns an [`Outcome`]; writing files and
//! printing is left to the dispatcher.

use std::fmt::Write as _;
use std::path::Path;

use serde_json::json;

use lowdisc::algebra::{is_irreducible, is_prime, Poly};
use lowdisc::diophantine::{zaremba_search, zaremba_table};
use lowdisc::factorizer::factor;
use lowdisc::generators::{audit_residue_bound, divisors, inversive_sequence, least_period, residue_stats, InversiveParams};
use lowdisc::permutations::{fb_sweep, Isbn10};
use lowdisc::pointsets::{
    digital_net, digital_sequence_points, halton, hybrid, kronecker, lattice_points, niederreiter_matrices,
    polynomial_lattice, Alpha, GeneratingMatrixSet, PointSet, PolyLatticeParams, Provenance,
};
use lowdisc::quality::{p_alpha, qmc_integrate, quality_report, star_discrepancy, star_discrepancy_lower_bound};

use crate::{
    experiments, AuditArgs, CliError, CmsweepArgs, Command, Context, DiscrepancyArgs, FactorArgs, GenArgs,
    Integrand, IntegrateArgs, InversiveArgs, IsbnArgs, Kind, Outcome, P2Args, ReproduceArgs, VerifyArgs,
    ZarembaArgs,
};

pub fn execute(cmd: &Command) -> Result<Outcome, CliError> {
    match cmd {
        Command::Gen(a) => gen(a),
        Command::Verify(a) => verify(a),
        Command::Discrepancy(a) => discrepancy(a),
        Command::P2(a) => p2(a),
        Command::Integrate(a) => integrate(a),
        Command::Isbn(a) => isbn(a),
        Command::Cmsweep(a) => cmsweep(a),
        Command::Factor(a) => factor_cmd(a),
        Command::Inversive(a) => inversive(a),
        Command::InversiveAudit(a) => inversive_audit(a),
        Command::Zaremba(a) => zaremba(a),
        Command::Reproduce(a) => reproduce(a),
    }
}

fn need<T: Copy>(v: Option<T>, flag: &str) -> Result<T, CliError> {
    v.ok_or_else(|| CliError::new("usage", format!("{flag} is required for this kind")))
}

fn alphas(list: &[String]) -> Result<Vec<Alpha>, CliError> {
    if list.is_empty() {
        return Err(CliError::new("usage", "--alpha is required"));
    }
    list.iter().map(|s| s.parse::<Alpha>()).collect::<Result<_, _>>().ctx("pointsets")
}

fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::new("io", format!("{}: {e}", path.display())))
}

fn read_matrices(path: &Path) -> Result<GeneratingMatrixSet, CliError> {
    let text = read_file(path)?;
    let raw: GeneratingMatrixSet = serde_json::from_str(&text).ctx("parse")?;
    GeneratingMatrixSet::new(raw.b, raw.rows, raw.cols, raw.matrices).ctx("pointsets")
}

/// Smallest `k` with `b^k > block`.
fn digits_needed(block: u64, b: u64) -> usize {
    let mut k = 0;
    let mut cap = 1u64;
    while cap <= block {
        cap = cap.saturating_mul(b);
        k += 1;
    }
    k
}

fn build_points(a: &GenArgs) -> Result<PointSet, CliError> {
    let points = match a.kind {
        Kind::Lattice => {
            if a.a.is_empty() {
                return Err(CliError::new("usage", "--a is required for lattice points"));
            }
            let n = need(a.n, "--n")?;
            if n == 0 {
                return Err(CliError::new("pointsets", "N must be at least 1"));
            }
            lattice_points(&a.a, n)
        }
        Kind::Kronecker => kronecker(&alphas(&a.alpha)?, need(a.n, "--n")? as usize).ctx("pointsets")?,
        Kind::Halton => halton(&a.bases, need(a.n, "--n")? as usize, a.start, a.allow_non_coprime).ctx("pointsets")?,
        Kind::Hybrid => {
            let n = need(a.n, "--n")? as usize;
            let first = halton(&a.bases, n, a.start, a.allow_non_coprime).ctx("pointsets")?;
            let second = kronecker(&alphas(&a.alpha)?, n).ctx("pointsets")?;
            hybrid(&first, &second).ctx("pointsets")?
        }
        Kind::Digital => {
            let path = a.matrices.as_ref().ok_or_else(|| CliError::new("usage", "--matrices is required"))?;
            digital_net(&read_matrices(path)?).ctx("pointsets")?
        }
        Kind::Niederreiter => {
            let (b, s, m) = (need(a.b, "--b")?, need(a.s, "--s")?, need(a.m, "--m")?);
            if !is_prime(u64::from(b)) {
                return Err(CliError::new("pointsets", format!("base {b} is not prime")));
            }
            let cols = m + digits_needed(a.block, u64::from(b));
            let g = niederreiter_matrices(b, s, m, cols).ctx("pointsets")?;
            let n = u64::from(b).checked_pow(m as u32).ok_or_else(|| CliError::new("pointsets", "b^m overflows"))?;
            let start = a.block.checked_mul(n).ok_or_else(|| CliError::new("pointsets", "block index overflows"))?;
            digital_sequence_points(&g, start, n)
                .ctx("pointsets")?
                .with_provenance(Provenance::Niederreiter { b, s, m, start, matrices: g })
        }
        Kind::Polylattice => {
            let b = need(a.b, "--b")?;
            let f = a.f.as_deref().ok_or_else(|| CliError::new("usage", "--f is required"))?;
            let g = a.g.as_deref().ok_or_else(|| CliError::new("usage", "--g is required"))?;
            let f = Poly::parse_coeffs(b, f).ctx("algebra")?;
            let g = g.split(';').map(|c| Poly::parse_coeffs(b, c)).collect::<Result<Vec<_>, _>>().ctx("algebra")?;
            polynomial_lattice(&PolyLatticeParams::new(f, g).ctx("pointsets")?).ctx("pointsets")?
        }
    };
    Ok(points)
}

fn gen(a: &GenArgs) -> Result<Outcome, CliError> {
    let points = build_points(a)?;
    let csv = points.to_csv(a.float);
    let sidecar = json!({
        "n": points.len(),
        "s": points.dim(),
        "exact": points.is_exact() && !a.float,
        "provenance": points.provenance(),
    });
    let sidecar_text = serde_json::to_string_pretty(&sidecar).expect("serializable") + "\n";
    Ok(Outcome {
        human: format!("wrote {} points in dimension {}\n", points.len(), points.dim()),
        json: sidecar,
        artifacts: vec![("points.csv".into(), csv.into_bytes()), ("points.json".into(), sidecar_text.into_bytes())],
        primary: Some(0),
        ok: true,
    })
}

/// Reads a CSV point set and, if present, its JSON sidecar (same path, `.json`).
fn load_points(path: &Path) -> Result<PointSet, CliError> {
    let text = read_file(path)?;
    let mut points = PointSet::from_csv(&text, &path.display().to_string()).ctx("pointsets")?;
    let sidecar = path.with_extension("json");
    if let Ok(side) = std::fs::read_to_string(&sidecar) {
        let v: serde_json::Value = serde_json::from_str(&side).ctx("parse")?;
        if let Some(p) = v.get("provenance") {
            let prov: Provenance = serde_json::from_value(p.clone()).ctx("parse")?;
            points = points.with_provenance(prov);
        }
    }
    Ok(points)
}

fn verify(a: &VerifyArgs) -> Result<Outcome, CliError> {
    let mut points = load_points(&a.points)?;
    if let Some(s) = a.s {
        if s != points.dim() {
            return Err(CliError::new("quality", format!("expected dimension {s}, file has {}", points.dim())));
        }
    }
    if let Some(path) = &a.matrices {
        points = points.with_provenance(Provenance::Digital { matrices: read_matrices(path)?, start: 0 });
    }
    let report = quality_report(&points, Some((a.b, a.m)));
    if report.t_geometric.is_none() {
        return Err(CliError::new("quality", report.skipped.first().cloned().unwrap_or_default()));
    }
    let mut human = String::new();
    let _ = writeln!(human, "N = {}, s = {}, b = {}, m = {}", report.n, report.s, a.b, a.m);
    let _ = writeln!(human, "t (geometric) = {}", report.t_geometric.expect("checked"));
    match report.t_dual {
        Some(t) => {
            let _ = writeln!(human, "t (dual)      = {t}");
        }
        None => {
            let _ = writeln!(human, "t (dual)      = n/a");
        }
    }
    if let Some(d) = &report.star_discrepancy {
        let _ = writeln!(human, "D*_N          = {} ({:.6e})", d.to_rational_string(), d.value);
    }
    if let Some(r) = report.diagnostic {
        let _ = writeln!(human, "N D* / (b^t (log N)^(s-1)) = {r:.6}");
    }
    for s in &report.skipped {
        let _ = writeln!(human, "skipped: {s}");
    }
    let body = serde_json::to_value(&report).expect("serializable");
    let text = serde_json::to_string_pretty(&body).expect("serializable") + "\n";
    Ok(Outcome { human, json: body, artifacts: vec![("quality.json".into(), text.into_bytes())], primary: None, ok: true })
}

fn discrepancy(a: &DiscrepancyArgs) -> Result<Outcome, CliError> {
    let points = load_points(&a.points)?;
    if let Some(samples) = a.samples {
        let lb = star_discrepancy_lower_bound(&points, samples, a.seed);
        let body = json!({ "mode": "sampled_lower_bound", "samples": samples, "seed": a.seed, "lower_bound": lb });
        return Ok(Outcome {
            human: format!("D*_N >= {lb:.12} (lower bound from {samples} sampled boxes, seed {})\n", a.seed),
            json: body,
            ok: true,
            ..Default::default()
        });
    }
    let d = star_discrepancy(&points).ctx("quality")?;
    let body = json!({ "mode": "exact", "rational": d.exact.as_ref().map(|_| d.to_rational_string()), "value": d.value });
    Ok(Outcome { human: format!("{}\n{:.17}\n", d.to_rational_string(), d.value), json: body, ok: true, ..Default::default() })
}

fn p2(a: &P2Args) -> Result<Outcome, CliError> {
    if a.a.is_empty() {
        return Err(CliError::new("usage", "--a is required"));
    }
    let v = p_alpha(&a.a, a.n, a.alpha).ctx("quality")?;
    Ok(Outcome {
        human: format!("{v:.15}\n"),
        json: json!({ "a": a.a, "n": a.n, "alpha": a.alpha, "p2": v }),
        ok: true,
        ..Default::default()
    })
}

fn integrate(a: &IntegrateArgs) -> Result<Outcome, CliError> {
    let points = load_points(&a.points)?;
    let s = points.dim();
    let (estimate, exact) = match a.integrand {
        Integrand::One => (qmc_integrate(|_| 1.0, &points), 1.0),
        Integrand::Product => (qmc_integrate(|x| x.iter().map(|v| 2.0 * v).product(), &points), 1.0),
        Integrand::SumSquares => (qmc_integrate(|x| x.iter().map(|v| v * v).sum(), &points), s as f64 / 3.0),
        Integrand::Box => {
            if a.y.len() != s {
                return Err(CliError::new("usage", format!("--y needs {s} values")));
            }
            let y = a.y.clone();
            let est = qmc_integrate(|x| f64::from(u8::from(x.iter().zip(&y).all(|(v, w)| v < w))), &points);
            (est, a.y.iter().product())
        }
    };
    let estimate = estimate.ctx("quality")?;
    let error = (estimate - exact).abs();
    Ok(Outcome {
        human: format!("estimate {estimate:.15}\nexact    {exact:.15}\nerror    {error:.3e}\n"),
        json: json!({ "n": points.len(), "s": s, "estimate": estimate, "exact": exact, "error": error }),
        ok: true,
        ..Default::default()
    })
}

fn isbn(a: &IsbnArgs) -> Result<Outcome, CliError> {
    let code = Isbn10::parse(&a.code).ctx("isbn")?;
    let valid = code.is_valid();
    let sum = code.weighted_sum();
    Ok(Outcome {
        human: format!("{}: weighted sum {sum} = {} mod 11, {}\n", a.code, sum % 11, if valid { "valid" } else { "INVALID" }),
        json: json!({ "isbn": a.code, "digits": code.digits(), "weighted_sum": sum, "valid": valid }),
        ok: valid,
        ..Default::default()
    })
}

fn cmsweep(a: &CmsweepArgs) -> Result<Outcome, CliError> {
    let mut rows = Vec::new();
    let mut csv = String::from("q,count,witnesses,mismatches\n");
    let mut human = String::new();
    for q in (3..=a.qmax).filter(|&q| is_prime(u64::from(q))) {
        let sweep = fb_sweep(q).ctx("permutations")?;
        let join = |v: &[u32]| v.iter().map(u32::to_string).collect::<Vec<_>>().join(" ");
        let _ = writeln!(csv, "{},{},{},{}", q, sweep.count, join(&sweep.witnesses), join(&sweep.mismatches));
        let _ = writeln!(human, "q = {q:>3}: {:>3} complete f_b, {} mismatches", sweep.count, sweep.mismatches.len());
        rows.push(sweep);
    }
    let ok = rows.iter().all(|r| r.mismatches.is_empty());
    Ok(Outcome {
        human,
        json: json!({ "qmax": a.qmax, "rows": rows, "all_agree": ok }),
        artifacts: vec![("cmsweep.csv".into(), csv.into_bytes())],
        primary: None,
        ok,
    })
}

fn factor_cmd(a: &FactorArgs) -> Result<Outcome, CliError> {
    let f = match (&a.file, a.p, &a.poly) {
        (Some(path), _, _) => Poly::from_text(&read_file(path)?).ctx("algebra")?,
        (None, Some(p), Some(list)) => {
            if !is_prime(u64::from(p)) {
                return Err(CliError::new("algebra", format!("{p} is not prime")));
            }
            Poly::parse_coeffs(p, list).ctx("algebra")?
        }
        _ => return Err(CliError::new("usage", "give --file, or both --p and --poly")),
    };
    let r = factor(&f).ctx("factorizer")?;
    let verified = r.reassemble() == f && r.factors.iter().all(|x| is_irreducible(&x.poly));
    let factors: Vec<_> = r
        .factors
        .iter()
        .map(|x| json!({ "coeffs": x.poly.coeffs(), "multiplicity": x.multiplicity, "text": x.poly.to_string() }))
        .collect();
    let mut human = format!("{f} =");
    if r.content != 1 {
        let _ = write!(human, " {}", r.content);
    }
    for x in &r.factors {
        let _ = write!(human, " ({})", x.poly);
        if x.multiplicity > 1 {
            let _ = write!(human, "^{}", x.multiplicity);
        }
    }
    let _ = writeln!(human, "\nverified: {verified}");
    Ok(Outcome {
        human,
        json: json!({ "p": f.modulus(), "input": f.coeffs(), "content": r.content, "factors": factors, "verified": verified }),
        ok: verified,
        ..Default::default()
    })
}

fn inversive(a: &InversiveArgs) -> Result<Outcome, CliError> {
    let params = InversiveParams::new(a.q, a.a, a.b, a.u0).ctx("generators")?;
    let period = least_period(&params);
    let mut stats = Vec::new();
    for s in divisors(a.q - 1) {
        stats.extend(residue_stats(&params, s, &[period.period], !a.exclude_zero).ctx("generators")?);
    }
    let mut human = format!(
        "q = {}, a = {}, b = {}, u0 = {}: least period {} (pre-period {})\n",
        a.q, params.a, params.b, params.u0, period.period, period.pre_period
    );
    for st in &stats {
        let _ = writeln!(
            human,
            "s = {:>3}: R_s({}) = {}, |R - N/s| = {:.3} < {:.3}: {}",
            st.s, st.n, st.count, st.deviation, st.bound, st.satisfied
        );
    }
    let mut artifacts = Vec::new();
    let mut primary = None;
    if let Some(n) = a.emit_points {
        let seq = inversive_sequence(&params, n);
        let mut csv = String::from("n,u,x\n");
        for (i, &u) in seq.iter().enumerate() {
            let _ = writeln!(csv, "{i},{u},{:.17}", f64::from(u) / f64::from(a.q));
        }
        artifacts.push(("inversive.csv".into(), csv.into_bytes()));
        primary = Some(0);
    }
    Ok(Outcome {
        human,
        json: json!({ "q": a.q, "a": params.a, "b": params.b, "u0": params.u0, "period": period, "residues": stats }),
        artifacts,
        primary,
        ok: true,
    })
}

fn inversive_audit(a: &AuditArgs) -> Result<Outcome, CliError> {
    let report = audit_residue_bound(a.qmax, &a.b, a.u0);
    let body = serde_json::to_value(&report).expect("serializable");
    let text = serde_json::to_string_pretty(&body).expect("serializable") + "\n";
    let human = format!(
        "{} parameter sets, {} checks, {} with period < 4, {} violations\n",
        report.parameter_sets,
        report.checks,
        report.short_periods,
        report.violations.len()
    );
    Ok(Outcome {
        human,
        json: body,
        artifacts: vec![("audit.json".into(), text.into_bytes())],
        primary: None,
        ok: report.violations.is_empty(),
    })
}

fn zaremba(a: &ZarembaArgs) -> Result<Outcome, CliError> {
    if a.c == 0 {
        return Err(CliError::new("diophantine", "c must be at least 1"));
    }
    if let Some(max_n) = a.any_n {
        // exploratory scan, not a verified result
        let absent: Vec<u64> = (2..=max_n).filter(|&n| zaremba_search(n, a.c).is_none()).collect();
        let mut csv = String::from("N\n");
        for n in &absent {
            let _ = writeln!(csv, "{n}");
        }
        return Ok(Outcome {
            human: format!("exploratory scan N <= {max_n}, c = {}: {} values without a witness\n", a.c, absent.len()),
            json: json!({ "exploratory": true, "c": a.c, "max_n": max_n, "absent": absent }),
            artifacts: vec![("zaremba_any_n.csv".into(), csv.into_bytes())],
            primary: None,
            ok: true,
        });
    }
    if a.base < 2 || (a.base as f64).powi(a.mmax as i32) > 1e18 {
        return Err(CliError::new("diophantine", "base^mmax must fit in 64 bits and base >= 2"));
    }
    let rows = zaremba_table(a.base, a.mmax, a.c);
    let mut csv = String::from("m,N,a,quotients\n");
    for r in &rows {
        let q = r.quotients.as_ref().map(|q| q.iter().map(u64::to_string).collect::<Vec<_>>().join(" "));
        let _ = writeln!(
            csv,
            "{},{},{},{}",
            r.m,
            r.n,
            r.witness.map(|w| w.to_string()).unwrap_or_default(),
            q.unwrap_or_default()
        );
    }
    let absent = rows.iter().filter(|r| r.witness.is_none()).count();
    Ok(Outcome {
        human: csv.clone(),
        json: json!({ "base": a.base, "c": a.c, "rows": rows, "absent": absent }),
        artifacts: vec![("zaremba.csv".into(), csv.into_bytes())],
        primary: Some(0),
        ok: absent == 0,
    })
}

fn reproduce(a: &ReproduceArgs) -> Result<Outcome, CliError> {
    let ids: Vec<u32> = if a.id == "all" {
        experiments::CRITERIA.to_vec()
    } else {
        let id: u32 = a.id.parse().map_err(|_| CliError::new("usage", format!("unknown criterion `{}`", a.id)))?;
        if !experiments::CRITERIA.contains(&id) {
            return Err(CliError::new("usage", format!("unknown criterion `{id}` (1-11)")));
        }
        vec![id]
    };
    let results: Vec<_> = ids.into_iter().map(experiments::run_criterion).collect();
    let human: String = results.iter().map(|r| r.line() + "\n").collect();
    let body = serde_json::to_value(&results).expect("serializable");
    let text = serde_json::to_string_pretty(&body).expect("serializable") + "\n";
    Ok(Outcome {
        human,
        ok: results.iter().all(|r| r.passed),
        json: body,
        artifacts: vec![("criteria.json".into(), text.into_bytes())],
        primary: None,
    })
}
