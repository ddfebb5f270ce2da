use std::fmt::Write as _;
use std::time::Instant;

use num_complex::Complex64;
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use super::format::{
    csv_block, exact_rows, format_complex, latex_exact, latex_numeric, numeric_rows, ExactEmission, NumericEmission,
    NumericMatrixJson,
};
use super::{
    parse_expr, parse_point, parse_samples, CasimirArgs, CliError, EmitArgs, Format, Report, ScanArgs, Target,
    TargetArgs, VerifyArgs, MAX_DIM, MAX_LEVELS,
};
use crate::algebra::{
    check_relations, default_q_samples, fermion_coupled_bosonic_relation, relation_catalog, rescale_bosonic,
    AlgebraError, CatalogKind, Gen, GeneratorSet, LabeledMatrices, Relation, RelationResidual,
};
use crate::exact::json::ratfunc_to_json;
use crate::exact::rational::ratq_to_string;
use crate::exact::{eval_numeric, q_number, QPoint};
use crate::fock::{
    build_truncated_generators, casimir_spectrum_fock, closed_form_phi, compare_ansatz, ladder_squares,
    DiscrepancyJson,
};
use crate::matrix_rep::{build_generators, casimir_diagonal, MatrixRepError};
use crate::oscillator::{
    build_oscillator, check_similarity, coordinate_realization, osp_realization, qderiv, PolyVec,
};
use crate::{GenMatrix, NumMatrix, RatFuncQ, RatQ};

struct Resolved {
    target: Target,
    size: usize,
    m0: RatFuncQ,
}

impl Resolved {
    fn header(&self) -> String {
        match self.target {
            Target::Matrix | Target::Bosonic => format!("target {}, dim {}", self.target.name(), self.size),
            Target::Fock => format!("target fock, levels {}, m0 = {}", self.size, self.m0),
            Target::Oscillator => format!("target oscillator, levels {}", self.size),
            Target::Qderiv => format!("target qderiv, degree {}", self.size),
        }
    }
}

fn resolve(t: &TargetArgs, min_levels: usize) -> Result<Resolved, CliError> {
    let conflict = |flag: &str| {
        Err(CliError::Usage(format!(
            "--{flag} does not apply to --target {}",
            t.target.name()
        )))
    };
    if t.target != Target::Fock && (t.j.is_some() || t.m0.is_some()) {
        return conflict(if t.j.is_some() { "j" } else { "m0" });
    }
    let (size, name, lo, hi) = match t.target {
        Target::Matrix | Target::Bosonic => {
            if t.levels.is_some() {
                return conflict("levels");
            }
            if t.degree.is_some() {
                return conflict("degree");
            }
            (t.dim.unwrap_or(3), "dimension", 1, MAX_DIM)
        }
        Target::Fock | Target::Oscillator => {
            if t.dim.is_some() {
                return conflict("dim");
            }
            if t.degree.is_some() {
                return conflict("degree");
            }
            let lo = if t.target == Target::Fock { 1 } else { min_levels };
            (t.levels.unwrap_or(8), "levels", lo, MAX_LEVELS)
        }
        Target::Qderiv => {
            if t.dim.is_some() {
                return conflict("dim");
            }
            if t.levels.is_some() {
                return conflict("levels");
            }
            (t.degree.unwrap_or(8), "degree", 2, MAX_LEVELS)
        }
    };
    if !(lo..=hi).contains(&size) {
        return Err(CliError::Domain(format!("{name} {size} is outside {lo}..={hi}")));
    }
    let m0 = match (&t.j, &t.m0) {
        (Some(j), _) => -parse_expr("j", j)?,
        (None, Some(m)) => parse_expr("m0", m)?,
        (None, None) => RatFuncQ::zero(),
    };
    Ok(Resolved {
        target: t.target,
        size,
        m0,
    })
}

fn domain<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Domain(e.to_string())
}

fn build_matrix(dim: usize) -> Result<GeneratorSet, CliError> {
    build_generators(dim).map_err(|e| match e {
        MatrixRepError::Parity(p) => CliError::Domain(p.to_string()),
        other => domain(other),
    })
}

fn osp_catalog() -> Vec<Relation> {
    let mut rels = relation_catalog(&CatalogKind::Defining);
    rels.extend(relation_catalog(&CatalogKind::Derived));
    rels
}

// ---- verify ----

#[derive(Serialize)]
struct VerifyRow {
    suite: &'static str,
    #[serde(flatten)]
    residual: RelationResidual,
}

#[derive(Serialize)]
struct CheckRow {
    name: String,
    passed: bool,
}

#[derive(Serialize)]
struct FockDiscrepancyOut {
    #[serde(flatten)]
    summary: DiscrepancyJson,
    delta: Vec<String>,
    relation_residuals: Vec<String>,
}

#[derive(Serialize)]
struct VerifyReport {
    target: &'static str,
    size: usize,
    margin: Option<usize>,
    q_samples: Vec<String>,
    passed: usize,
    total: usize,
    relations: Vec<VerifyRow>,
    checks: Vec<CheckRow>,
    notes: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    discrepancy: Option<FockDiscrepancyOut>,
}

impl VerifyReport {
    fn failed(&self) -> bool {
        self.passed != self.total || self.checks.iter().any(|c| !c.passed)
    }
}

struct Suites<'a> {
    rows: Vec<VerifyRow>,
    margin: Option<usize>,
    samples: &'a [RatQ],
}

impl Suites<'_> {
    fn run(&mut self, suite: &'static str, mats: &LabeledMatrices, rels: &[Relation]) -> Result<(), CliError> {
        let report = check_relations(mats, rels, self.margin, self.samples).map_err(domain)?;
        self.rows
            .extend(report.relations.into_iter().map(|residual| VerifyRow { suite, residual }));
        Ok(())
    }
}

pub(super) fn verify(a: &VerifyArgs) -> Result<Report, CliError> {
    let r = resolve(&a.target, 3)?;
    let samples = match &a.q {
        Some(s) => parse_samples(s)?,
        None => default_q_samples(),
    };
    // finite representations are checked on every column
    let finite_margin = a.margin.or(Some(0));
    let mut checks = Vec::new();
    let mut notes = Vec::new();
    let mut discrepancy = None;
    let mut suites = Suites {
        rows: Vec::new(),
        margin: a.margin,
        samples: &samples,
    };
    let osc_catalog = relation_catalog(&CatalogKind::Oscillator);

    match r.target {
        Target::Matrix => {
            let g = build_matrix(r.size)?;
            suites.margin = finite_margin;
            suites.run("osp", &g.labeled(), &osp_catalog())?;
        }
        Target::Bosonic => {
            let g = build_matrix(r.size)?;
            suites.margin = finite_margin;
            let mut mats = rescale_bosonic(&g);
            suites.run("bosonic", &mats, &relation_catalog(&CatalogKind::bosonic_witten()))?;
            mats.insert(Gen::VPlus, g.vplus().clone());
            mats.insert(Gen::VMinus, g.vminus().clone());
            suites.run("bosonic-fermion", &mats, &[fermion_coupled_bosonic_relation()])?;
            notes.push("rescaling: H' = q/(1+q) H, J+' = q (1+q)^(-3/2) J+, J-' = -q (1+q)^(-3/2) J-".into());
            notes.push("(r, s) = (q^-1, q^-2), i.e. s = r^2, is the instantiation the relations force and the one checked".into());
            notes.push("the reading r = s^2 is recorded only; it does not match the rescaled relations".into());
            notes.push("the third identity holds only with the fermion bilinear (1-q)/(1+q) V- V+ kept".into());
        }
        Target::Fock => {
            let g = build_truncated_generators(&r.m0, r.size).map_err(domain)?;
            suites.run("osp", &g.labeled(), &osp_catalog())?;
            let phi = ladder_squares(&r.m0, r.size);
            let closed: Vec<RatFuncQ> = (0..=r.size).map(|n| closed_form_phi(&r.m0, n)).collect();
            checks.push(CheckRow {
                name: "ladder squares match the closed form".into(),
                passed: phi == closed,
            });
            let d = compare_ansatz(&-&r.m0, r.size);
            notes.push("the discrepancy block compares the closed-form coefficients K^2 [n], K^2 = (1 + (1-q) j)/(2q), with the recurrence; it is informational and does not affect the exit code".into());
            discrepancy = Some(FockDiscrepancyOut {
                summary: d.to_json(),
                delta: d.delta.iter().map(|x| x.to_string()).collect(),
                relation_residuals: d.relation_residuals.iter().map(|x| x.to_string()).collect(),
            });
        }
        Target::Oscillator => {
            let rep = build_oscillator(r.size);
            suites.run("oscillator", &rep.labeled(), &osc_catalog)?;
            let g = osp_realization(r.size).map_err(domain)?;
            suites.run("osp-realization", &g.labeled(), &osp_catalog())?;
            let vacuum = (0..r.size).all(|i| rep.a.get(i, 0).is_zero() && rep.num.get(i, 0).is_zero());
            checks.push(CheckRow {
                name: "a and N annihilate the vacuum".into(),
                passed: vacuum,
            });
        }
        Target::Qderiv => {
            let d = r.size;
            let c = coordinate_realization(d).map_err(domain)?;
            suites.run("coordinate", &c.oscillator_labels(), &osc_catalog)?;
            suites.run("coordinate-osp", &c.osp_labels(), &osp_catalog())?;
            let rule = (1..=d).all(|n| {
                let image = qderiv(&PolyVec::monomial(n, d));
                let mut expect = PolyVec::zero(d).coeffs().to_vec();
                expect[n - 1] = q_number(n as i64);
                image == PolyVec::from_coeffs(expect)
            }) && qderiv(&PolyVec::monomial(0, d)) == PolyVec::zero(d);
            checks.push(CheckRow {
                name: "D x^n = [n] x^(n-1)".into(),
                passed: rule,
            });
            let sim = check_similarity(d).map_err(domain)?;
            checks.push(CheckRow {
                name: "S^-1 a S = D, S^-1 a+ S = x, S^-1 N S = x D with S = diag(sqrt([n]!))".into(),
                passed: sim.holds(),
            });
            let classical = (0..=d as i64).all(|n| q_number(n).classical_limit() == Some(RatQ::from_integer(n.into())));
            checks.push(CheckRow {
                name: "q = 1 limit: D x^n = n x^(n-1)".into(),
                passed: classical,
            });
        }
    }

    let rows = suites.rows;
    let report = VerifyReport {
        target: r.target.name(),
        size: r.size,
        margin: a.margin,
        q_samples: samples.iter().map(ratq_to_string).collect(),
        passed: rows.iter().filter(|x| x.residual.symbolic_zero).count(),
        total: rows.len(),
        relations: rows,
        checks,
        notes,
        discrepancy,
    };
    let text = match a.format {
        Format::Json => json(&report)?,
        Format::Csv => verify_csv(&report),
        Format::Latex => verify_latex(&report),
        Format::Table => verify_table(&r, &report),
    };
    Ok(Report {
        text,
        failed: report.failed(),
    })
}

fn json<T: Serialize>(v: &T) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(v).map_err(domain)?;
    s.push('\n');
    Ok(s)
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "ok"
    } else {
        "FAIL"
    }
}

fn verify_table(r: &Resolved, v: &VerifyReport) -> String {
    let mut out = format!("{}\nq samples: {}\n", r.header(), v.q_samples.join(", "));
    let mut current = "";
    for row in &v.relations {
        if row.suite != current {
            current = row.suite;
            let _ = writeln!(out, "suite {current}");
        }
        let res = &row.residual;
        let _ = write!(
            out,
            "  {:<4}  {:<58} margin {}  max numeric {:.3e}",
            verdict(res.symbolic_zero),
            res.name,
            res.margin_used,
            res.max_numeric_residual
        );
        if !res.offending_entries.is_empty() {
            let cells: Vec<String> = res.offending_entries.iter().map(|[i, j]| format!("({i},{j})")).collect();
            let _ = write!(out, "  nonzero at {}", cells.join(" "));
        }
        if !res.skipped_samples.is_empty() {
            let _ = write!(out, "  skipped q = {}", res.skipped_samples.join(", "));
        }
        out.push('\n');
    }
    let _ = writeln!(out, "{}/{} relations zero", v.passed, v.total);
    for c in &v.checks {
        let _ = writeln!(out, "check {:<4}  {}", verdict(c.passed), c.name);
    }
    for n in &v.notes {
        let _ = writeln!(out, "note: {n}");
    }
    if let Some(d) = &v.discrepancy {
        let s = &d.summary;
        let _ = writeln!(out, "closed-form ladder comparison");
        let _ = writeln!(out, "  j                         {}", ratfunc_text(&s.j));
        let _ = writeln!(out, "  delta_zero                {}", s.delta_zero);
        let level = s.first_nonzero_level.map_or("none".to_string(), |l| l.to_string());
        let _ = writeln!(out, "  first_nonzero_level       {level}");
        let _ = writeln!(out, "  relation_residual_level0  {}", ratfunc_text(&s.relation_residual_level0));
        for (n, x) in d.delta.iter().enumerate() {
            let _ = writeln!(out, "  delta[{n}] = {x}");
        }
    }
    out
}

fn ratfunc_text(j: &crate::exact::json::RatFuncJson) -> String {
    crate::exact::json::ratfunc_from_json(j).map_or_else(|_| "?".into(), |r| r.to_string())
}

fn verify_csv(v: &VerifyReport) -> String {
    let mut out = String::from("suite,relation,symbolic_zero,margin,max_numeric_residual\n");
    for row in &v.relations {
        let res = &row.residual;
        let _ = writeln!(
            out,
            "{},\"{}\",{},{},{:e}",
            row.suite, res.name, res.symbolic_zero, res.margin_used, res.max_numeric_residual
        );
    }
    for c in &v.checks {
        let _ = writeln!(out, "check,\"{}\",{},,", c.name, c.passed);
    }
    out
}

fn tex_escape(s: &str) -> String {
    let mut out = String::new();
    for ch in s.chars() {
        match ch {
            '{' | '}' | '_' | '&' | '%' | '#' | '$' => {
                out.push('\\');
                out.push(ch);
            }
            '^' => out.push_str("\\^{}"),
            '\\' => out.push_str("\\textbackslash{}"),
            _ => out.push(ch),
        }
    }
    out
}

fn verify_latex(v: &VerifyReport) -> String {
    let mut out = String::from("\\begin{tabular}{llcr}\nsuite & relation & zero & margin \\\\\n\\hline\n");
    for row in &v.relations {
        let res = &row.residual;
        let _ = writeln!(
            out,
            "{} & \\texttt{{{}}} & {} & {} \\\\",
            row.suite,
            tex_escape(&res.name),
            if res.symbolic_zero { "yes" } else { "no" },
            res.margin_used
        );
    }
    out.push_str("\\end{tabular}\n");
    out
}

// ---- emit ----

fn latex_name(name: &str) -> &str {
    match name {
        "V+" => "V_+",
        "V-" => "V_-",
        "a+" => "a^+",
        "a+ a" => "a^+ a",
        "x" => "\\hat{x}",
        "D" => "\\hat{D}",
        "x D" => "\\hat{x}\\hat{D}",
        "J+'" => "J_+'",
        "J-'" => "J_-'",
        other => other,
    }
}

fn emission_matrices(r: &Resolved) -> Result<Vec<(String, GenMatrix)>, CliError> {
    let named = |v: Vec<(&str, GenMatrix)>| v.into_iter().map(|(n, m)| (n.to_string(), m)).collect();
    Ok(match r.target {
        Target::Matrix => {
            let g = build_matrix(r.size)?;
            named(vec![("H", g.h().clone()), ("V+", g.vplus().clone()), ("V-", g.vminus().clone())])
        }
        Target::Fock => {
            let g = build_truncated_generators(&r.m0, r.size).map_err(domain)?;
            named(vec![("H", g.h().clone()), ("V+", g.vplus().clone()), ("V-", g.vminus().clone())])
        }
        Target::Oscillator => {
            let o = build_oscillator(r.size);
            let ada = o.adag.checked_mul(&o.a).map_err(domain)?;
            named(vec![("a", o.a), ("a+", o.adag), ("N", o.num), ("a+ a", ada)])
        }
        Target::Qderiv => {
            let c = coordinate_realization(r.size).map_err(domain)?;
            let h = c.osp.h().clone();
            named(vec![("x", c.xhat), ("D", c.dhat), ("x D", c.nhat), ("H", h)])
        }
        Target::Bosonic => {
            let g = build_matrix(r.size)?;
            let mut m = rescale_bosonic(&g);
            let take = |m: &mut LabeledMatrices, g: Gen| m.remove(&g).expect("rescaled label");
            named(vec![
                ("H'", take(&mut m, Gen::H)),
                ("J+'", take(&mut m, Gen::JPlus)),
                ("J-'", take(&mut m, Gen::JMinus)),
            ])
        }
    })
}

fn numeric(mats: &[(String, GenMatrix)], at: &QPoint) -> Result<Vec<(String, NumMatrix)>, CliError> {
    mats.iter()
        .map(|(name, m)| {
            let mut z = m.try_map(|s| eval_numeric(s, at)).map_err(domain)?;
            // V- is the adjoint of V+: conjugate once the branch is resolved
            if name == "V-" {
                z = z.map(|c: &Complex64| c.conj());
            }
            Ok((name.clone(), z))
        })
        .collect()
}

pub(super) fn emit(a: &EmitArgs) -> Result<Report, CliError> {
    let r = resolve(&a.target, 2)?;
    if a.format == Format::Table {
        return Err(CliError::Usage("emit supports --format json, latex or csv".into()));
    }
    let mats = emission_matrices(&r)?;
    let text = match &a.q {
        None => match a.format {
            Format::Json => json(&ExactEmission::new(r.target.name(), r.size, &mats))?,
            Format::Latex => join_blocks(mats.iter().map(|(n, m)| latex_exact(latex_name(n), m))),
            _ => join_blocks(mats.iter().map(|(n, m)| csv_block(n, exact_rows(m)))),
        },
        Some(qs) => {
            let x = parse_point(qs)?;
            let nums = numeric(&mats, &QPoint::Rational(x.clone()))?;
            match a.format {
                Format::Json => json(&NumericEmission {
                    target: r.target.name().into(),
                    size: r.size,
                    q: ratq_to_string(&x),
                    matrices: nums
                        .iter()
                        .map(|(n, m)| NumericMatrixJson {
                            name: n.clone(),
                            entries: numeric_rows(m),
                        })
                        .collect(),
                })?,
                Format::Latex => join_blocks(nums.iter().map(|(n, m)| latex_numeric(latex_name(n), m))),
                _ => join_blocks(nums.iter().map(|(n, m)| csv_block(n, numeric_rows(m)))),
            }
        }
    };
    Ok(Report { text, failed: false })
}

fn join_blocks(blocks: impl Iterator<Item = String>) -> String {
    blocks.collect::<Vec<_>>().join("\n")
}

// ---- scan ----

#[derive(Serialize)]
struct ScanRow {
    dim: usize,
    buildable: bool,
    relations_passed: Option<usize>,
    relations_total: Option<usize>,
    casimir_scalar: Option<bool>,
    /// Obstruction of the consistency condition for rejected dimensions.
    obstruction: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    time_ms: Option<f64>,
}

fn parse_range(s: &str) -> Result<(usize, usize), CliError> {
    let bad = || CliError::Usage(format!("--dims: expected a..b, got {s:?}"));
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (a.trim(), b.trim().trim_start_matches('=')),
        None => (s.trim(), s.trim()),
    };
    let lo: usize = lo.parse().map_err(|_| bad())?;
    let hi: usize = hi.parse().map_err(|_| bad())?;
    Ok((lo, hi))
}

fn scan_row(dim: usize, timing: bool) -> Result<ScanRow, AlgebraError> {
    let start = Instant::now();
    let mut row = ScanRow {
        dim,
        buildable: false,
        relations_passed: None,
        relations_total: None,
        casimir_scalar: None,
        obstruction: None,
        time_ms: None,
    };
    match build_generators(dim) {
        Ok(g) => {
            let rep = check_relations(&g.labeled(), &osp_catalog(), Some(0), &[])?;
            row.buildable = true;
            row.relations_passed = Some(rep.passed());
            row.relations_total = Some(rep.relations.len());
            row.casimir_scalar = Some(casimir_diagonal(&g)?.is_scalar);
        }
        Err(MatrixRepError::Parity(p)) => row.obstruction = Some(p.obstruction.to_string()),
        Err(MatrixRepError::Algebra(e)) => return Err(e),
        Err(MatrixRepError::ZeroDimension) => {}
    }
    if timing {
        row.time_ms = Some(start.elapsed().as_secs_f64() * 1e3);
    }
    Ok(row)
}

pub(super) fn scan(a: &ScanArgs) -> Result<Report, CliError> {
    let (lo, hi) = parse_range(&a.dims)?;
    let rows: Vec<ScanRow> = if lo > hi {
        Vec::new()
    } else {
        if lo == 0 || hi > MAX_DIM {
            return Err(CliError::Domain(format!("dimensions must lie in 1..={MAX_DIM}")));
        }
        (lo..=hi)
            .into_par_iter()
            .map(|d| scan_row(d, a.timing))
            .collect::<Result<_, _>>()
            .map_err(domain)?
    };
    let failed = rows
        .iter()
        .any(|r| r.buildable && r.relations_passed != r.relations_total);
    let opt = |o: Option<String>| o.unwrap_or_else(|| "-".into());
    let text = match a.format {
        Format::Json => json(&rows)?,
        Format::Table => trim_lines(&scan_table(&rows, a.timing)),
        Format::Csv | Format::Latex => {
            let mut out = String::from("dim,buildable,relations_passed,relations_total,casimir_scalar");
            out.push_str(if a.timing { ",time_ms\n" } else { "\n" });
            for r in &rows {
                let _ = write!(
                    out,
                    "{},{},{},{},{}",
                    r.dim,
                    if r.buildable { "yes" } else { "parity-rejected" },
                    opt(r.relations_passed.map(|x| x.to_string())),
                    opt(r.relations_total.map(|x| x.to_string())),
                    opt(r.casimir_scalar.map(|x| x.to_string())),
                );
                if let Some(t) = r.time_ms {
                    let _ = write!(out, ",{t:.3}");
                }
                out.push('\n');
            }
            out
        }
    };
    Ok(Report { text, failed })
}


fn trim_lines(s: &str) -> String {
    s.lines().map(|l| format!("{}\n", l.trim_end())).collect()
}

fn scan_table(rows: &[ScanRow], timing: bool) -> String {
    let opt = |o: Option<String>| o.unwrap_or_else(|| "-".into());
    let mut out = format!("{:>4}  {:<16} {:>9}  {:<14}", "dim", "buildable", "relations", "casimir_scalar");
    out.push_str(if timing { "  time_ms\n" } else { "\n" });
    for r in rows {
        let rel = match (r.relations_passed, r.relations_total) {
            (Some(p), Some(t)) => format!("{p}/{t}"),
            _ => "-".into(),
        };
        let _ = write!(
            out,
            "{:>4}  {:<16} {:>9}  {:<14}",
            r.dim,
            if r.buildable { "yes" } else { "parity-rejected" },
            rel,
            opt(r.casimir_scalar.map(|x| x.to_string())),
        );
        if let Some(t) = r.time_ms {
            let _ = write!(out, "  {t:.3}");
        }
        out.push('\n');
    }
    out
}

// ---- casimir ----

#[derive(Serialize)]
struct CasimirEntry {
    exact: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    numeric: Option<String>,
}

#[derive(Serialize)]
struct CasimirReport {
    target: &'static str,
    size: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    q: Option<String>,
    /// Diagonal of `C` (matrix) or the per-level values `c_n` (fock).
    entries: Vec<CasimirEntry>,
    scalar: bool,
    /// `c_{n+1} + q c_n = 0` for all levels (fock only).
    #[serde(skip_serializing_if = "Option::is_none")]
    geometric: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    m0: Option<crate::exact::json::RatFuncJson>,
}

pub(super) fn casimir(a: &CasimirArgs) -> Result<Report, CliError> {
    if !matches!(a.target.target, Target::Matrix | Target::Fock) {
        return Err(CliError::Usage("casimir supports --target matrix or fock".into()));
    }
    let r = resolve(&a.target, 1)?;
    let at = a.q.as_deref().map(parse_point).transpose()?;
    let (values, scalar, geometric, m0) = match r.target {
        Target::Matrix => {
            let g = build_matrix(r.size)?;
            let c = casimir_diagonal(&g).map_err(domain)?;
            (c.entries, c.is_scalar, None, None)
        }
        _ => {
            let c = casimir_spectrum_fock(&r.m0, r.size);
            let q = RatFuncQ::q();
            let geo = c.values.windows(2).all(|w| (&w[1] + &(&q * &w[0])).is_zero());
            let vals = c.values.into_iter().map(Into::into).collect();
            (vals, c.constant, Some(geo), Some(ratfunc_to_json(&r.m0)))
        }
    };
    let entries = values
        .iter()
        .map(|s| {
            let numeric = match &at {
                Some(x) => Some(format_complex(eval_numeric(s, &QPoint::Rational(x.clone())).map_err(domain)?)),
                None => None,
            };
            Ok(CasimirEntry {
                exact: s.to_string(),
                numeric,
            })
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    let report = CasimirReport {
        target: r.target.name(),
        size: r.size,
        q: at.as_ref().map(ratq_to_string),
        entries,
        scalar,
        geometric,
        m0,
    };
    let text = match a.format {
        Format::Json => json(&report)?,
        Format::Csv | Format::Latex => {
            let mut out = String::from("n,exact,numeric\n");
            for (n, e) in report.entries.iter().enumerate() {
                let _ = writeln!(out, "{n},\"{}\",{}", e.exact, e.numeric.as_deref().unwrap_or(""));
            }
            out
        }
        Format::Table => {
            let mut out = format!("{}\n", r.header());
            if let Some(q) = &report.q {
                let _ = writeln!(out, "q = {q}");
            }
            for (n, e) in report.entries.iter().enumerate() {
                let _ = write!(out, "  c[{n}] = {}", e.exact);
                if let Some(v) = &e.numeric {
                    let _ = write!(out, "  ~ {v}");
                }
                out.push('\n');
            }
            let _ = writeln!(out, "scalar: {}", report.scalar);
            if let Some(g) = report.geometric {
                let _ = writeln!(out, "c[n+1] + q c[n] = 0: {g}");
            }
            out
        }
    };
    Ok(Report { text, failed: false })
}
