use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use ribbonforge::double::{
    build_double, drinfeld_u, r_matrix, r_matrix_closed_form, u_closed_form, verify_dual_basis_formula,
    verify_quasitriangular, Double,
};
use ribbonforge::hopf::verify::verify_hopf_axioms_bounded;
use ribbonforge::hopf::{AxiomCheck, Depth, HopfAlgebra, HopfError};
use ribbonforge::radford::{build_dual, build_radford, build_taft, verify_dual_structure};
use ribbonforge::ribbon::{classify_ribbon, expected_counts, RibbonOptions, RibbonReport, SCHEMA};

use crate::store::{cell_path, read_cell, write_json};
use crate::{DepthArg, FamilyArg, Format};

pub struct RunConfig {
    pub full_bound: usize,
    pub budget: usize,
    pub out: Option<PathBuf>,
    pub format: Format,
}

pub enum Outcome {
    Pass,
    Fail(String),
    Usage(String),
}

impl Outcome {
    pub fn exit(self) -> ExitCode {
        match self {
            Outcome::Pass => ExitCode::SUCCESS,
            Outcome::Fail(msg) => {
                eprintln!("verification failed: {msg}");
                ExitCode::from(1)
            }
            Outcome::Usage(msg) => {
                eprintln!("error: {msg}");
                ExitCode::from(2)
            }
        }
    }
}

fn from_hopf(e: HopfError) -> Outcome {
    match e {
        HopfError::Invalid(_) | HopfError::Budget { .. } => Outcome::Usage(e.to_string()),
        other => Outcome::Fail(other.to_string()),
    }
}

/// Parameters of a family: `(m, n)` for Radford, `n` for Taft.
#[derive(Clone, Copy)]
struct Params {
    family: FamilyArg,
    m: u32,
    n: u32,
}

impl Params {
    fn new(family: FamilyArg, first: u32, second: Option<u32>) -> Result<Params, Outcome> {
        match (family, second) {
            (FamilyArg::Radford, Some(n)) => {
                if first < 2 {
                    return Err(Outcome::Usage(format!("radford requires m >= 2, got m = {first}")));
                }
                if n < 1 {
                    return Err(Outcome::Usage("radford requires n >= 1".into()));
                }
                Ok(Params { family, m: first, n })
            }
            (FamilyArg::Radford, None) => Err(Outcome::Usage("radford needs both m and n".into())),
            (FamilyArg::Taft, None) => {
                if first < 2 {
                    return Err(Outcome::Usage(format!("taft requires n >= 2, got n = {first}")));
                }
                Ok(Params { family, m: 1, n: first })
            }
            (FamilyArg::Taft, Some(_)) => Err(Outcome::Usage("taft takes a single parameter n".into())),
        }
    }

    fn double_dim(&self) -> usize {
        let d = self.m as usize * (self.n as usize).pow(2);
        d * d
    }

    fn slug(&self) -> String {
        match self.family {
            FamilyArg::Radford => format!("radford-{}-{}", self.m, self.n),
            FamilyArg::Taft => format!("taft-{}", self.n),
        }
    }

    fn build(&self, budget: usize) -> Result<Double, Outcome> {
        let dim = self.double_dim();
        if dim > budget {
            return Err(Outcome::Usage(format!("dim {dim} exceeds budget {budget} (set RIBBONFORGE_BUDGET)")));
        }
        let fam = match self.family {
            FamilyArg::Radford => build_radford(self.m, self.n),
            FamilyArg::Taft => build_taft(self.n),
        }
        .map_err(from_hopf)?;
        let fd = build_dual(&fam).map_err(from_hopf)?;
        build_double(&fam, &fd, budget).map_err(from_hopf)
    }
}

fn check_config(cfg: &RunConfig) -> Result<(), Outcome> {
    if cfg.full_bound < 1 {
        return Err(Outcome::Usage("--full-bound must be at least 1".into()));
    }
    Ok(())
}

#[derive(Serialize)]
struct Section {
    name: String,
    subject: String,
    depth: Option<Depth>,
    passed: bool,
    checks: Vec<AxiomCheck>,
}

impl Section {
    fn new(name: &str, subject: String, depth: Option<Depth>, checks: Vec<AxiomCheck>) -> Section {
        let passed = checks.iter().all(|c| c.passed);
        Section { name: name.into(), subject, depth, passed, checks }
    }

    fn error(name: &str, subject: String, err: HopfError) -> Section {
        Section::new(name, subject, None, vec![AxiomCheck::fail("evaluation", 0, err.to_string())])
    }
}

#[derive(Serialize)]
struct VerifyReport {
    schema: &'static str,
    kind: &'static str,
    family: String,
    m: u32,
    n: u32,
    dim_h: usize,
    dim_d: usize,
    full_bound: usize,
    sections: Vec<Section>,
    failures: usize,
}

fn clip(requested: DepthArg, dim: usize, bound: usize) -> Depth {
    match requested {
        DepthArg::Full if dim <= bound => Depth::Full,
        _ => Depth::Generators,
    }
}

fn axioms_section(name: &str, h: &HopfAlgebra, requested: DepthArg, bound: usize) -> Section {
    let depth = clip(requested, h.dim(), bound);
    match verify_hopf_axioms_bounded(h, depth, bound) {
        Ok(r) => Section::new(name, r.algebra, Some(r.depth), r.checks),
        Err(e) => Section::error(name, h.name().to_string(), e),
    }
}

pub fn verify(cfg: &RunConfig, family: FamilyArg, first: u32, second: Option<u32>, depth: DepthArg) -> Outcome {
    let params = match check_config(cfg).and_then(|_| Params::new(family, first, second)) {
        Ok(p) => p,
        Err(o) => return o,
    };
    let start = Instant::now();
    let dd = match params.build(cfg.budget) {
        Ok(d) => d,
        Err(o) => return o,
    };
    let fam = &dd.family;
    let fd = &dd.dual;
    let bound = cfg.full_bound;
    let mut sections = vec![Section::new("family_axioms", fam.h.name().to_string(), Some(fam.axioms.depth), fam.axioms.checks.clone())];
    sections.push(axioms_section("dual_axioms", &fd.dual, depth, bound));
    sections.push(axioms_section("cop_axioms", &fd.cop, depth, bound));
    sections.push(match verify_dual_structure(fam, fd, bound) {
        Ok(r) => Section::new("dual_structure", r.subject, None, r.checks),
        Err(e) => Section::error("dual_structure", fd.dual.name().to_string(), e),
    });
    sections.push(match verify_dual_basis_formula(fam, fd) {
        Ok(r) => Section::new("dual_basis_formula", r.subject, None, r.checks),
        Err(e) => Section::error("dual_basis_formula", fd.dual.name().to_string(), e),
    });
    sections.push(axioms_section("double_axioms", &dd.d, depth, bound));

    let r = r_matrix(&dd);
    let qt_depth = clip(depth, dd.d.dim(), bound);
    sections.push(match verify_quasitriangular(&dd, &r, qt_depth) {
        Ok(rep) => Section::new("quasitriangular", rep.subject, Some(qt_depth), rep.checks),
        Err(e) => Section::error("quasitriangular", dd.d.name().to_string(), e),
    });
    let subject = dd.d.name().to_string();
    sections.push(match drinfeld_u(&dd, &r) {
        Ok(du) => {
            let mut checks = du.report.checks.clone();
            let closed = u_closed_form(&dd).map(|u| u == du.u);
            checks.push(AxiomCheck::from_witness("u_closed_form", 1, witness(closed, "u differs from its expanded form")));
            let closed = r_matrix_closed_form(&dd).map(|rc| rc == r);
            checks.push(AxiomCheck::from_witness("r_closed_form", 1, witness(closed, "R differs from its closed form")));
            Section::new("drinfeld_u", subject, None, checks)
        }
        Err(e) => Section::error("drinfeld_u", subject, e),
    });

    let failures = sections.iter().flat_map(|s| &s.checks).filter(|c| !c.passed).count();
    let report = VerifyReport {
        schema: SCHEMA,
        kind: "verify",
        family: fam.descriptor(),
        m: params.m,
        n: params.n,
        dim_h: fam.h.dim(),
        dim_d: dd.d.dim(),
        full_bound: bound,
        sections,
        failures,
    };
    match cfg.format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&report).expect("serializable")),
        Format::Text => {
            println!("{}: dim H = {}, dim D = {}", report.family, report.dim_h, report.dim_d);
            for s in &report.sections {
                let depth = s.depth.map(|d| format!(" [{}]", depth_name(d))).unwrap_or_default();
                println!("{} {}{}: {}", if s.passed { "PASS" } else { "FAIL" }, s.name, depth, s.subject);
                for c in s.checks.iter().filter(|c| !c.passed) {
                    println!("    {}: {}", c.name, c.counterexample.as_deref().unwrap_or(""));
                }
            }
            println!("failures: {}", report.failures);
            println!("elapsed: {:.2?}", start.elapsed());
        }
    }
    if let Some(dir) = &cfg.out {
        if let Err(e) = write_json(&dir.join(format!("verify-{}.json", params.slug())), &report) {
            return Outcome::Usage(format!("{e:#}"));
        }
    }
    if failures == 0 {
        Outcome::Pass
    } else {
        Outcome::Fail(format!("{failures} failing checks"))
    }
}

fn witness(r: Result<bool, HopfError>, msg: &str) -> Option<String> {
    match r {
        Ok(true) => None,
        Ok(false) => Some(msg.to_string()),
        Err(e) => Some(e.to_string()),
    }
}

fn depth_name(d: Depth) -> &'static str {
    match d {
        Depth::Full => "full",
        Depth::Generators => "generators",
    }
}

fn classify(params: Params, cfg: &RunConfig, double_integrals: bool) -> Result<RibbonReport, Outcome> {
    let dd = params.build(cfg.budget)?;
    let opts = RibbonOptions { full_bound: cfg.full_bound, double_integrals, pair_test_full: false };
    classify_ribbon(&dd, &opts).map_err(from_hopf)
}

pub fn ribbon(cfg: &RunConfig, family: FamilyArg, m: u32, n: u32, double_integrals: bool) -> Outcome {
    let params = match family {
        FamilyArg::Radford => Params::new(family, m, Some(n)),
        FamilyArg::Taft => Params::new(family, n, None),
    };
    let params = match check_config(cfg).and(params) {
        Ok(p) => p,
        Err(o) => return o,
    };
    let start = Instant::now();
    let report = match classify(params, cfg, double_integrals) {
        Ok(r) => r,
        Err(o) => return o,
    };
    match cfg.format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&report).expect("serializable")),
        Format::Text => {
            print_ribbon(&report);
            println!("elapsed: {:.2?}", start.elapsed());
        }
    }
    if let Some(dir) = &cfg.out {
        if let Err(e) = write_json(&dir.join(format!("ribbon-{}.json", params.slug())), &report) {
            return Outcome::Usage(format!("{e:#}"));
        }
    }
    if report.passed() {
        Outcome::Pass
    } else {
        let failed: Vec<_> = report.checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect();
        Outcome::Fail(failed.join(", "))
    }
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn print_ribbon(r: &RibbonReport) {
    println!("{}: dim H = {}, dim D = {}", r.family, r.dim_h, r.dim_d);
    println!("distinguished grouplikes: alpha~ = {}, g~ = {}", r.integrals.alpha_tilde, r.integrals.g_tilde);
    if let Some(d) = &r.integrals.double {
        println!("double unimodular: {}", yes(d.unimodular));
    }
    println!("h_eps = {}", r.h_alpha);
    println!("square roots in G(D): {}", if r.square_roots.is_empty() { "none".into() } else { r.square_roots.join(", ") });
    for c in &r.root_candidates {
        println!(
            "  candidate {}: grouplike {}, squares to h_eps {}, S^2-conjugation {}, ribbon {}",
            c.label,
            yes(c.grouplike),
            yes(c.squares_to_h_alpha),
            yes(c.conjugates_to_s2),
            yes(c.yields_ribbon)
        );
    }
    for c in &r.certificates {
        println!("  pair (gamma = {}, h = {}): pair test {}, ribbon {}", c.gamma, c.h, yes(c.pair_test), yes(c.is_ribbon));
    }
    println!("quasi-ribbon elements: {}", r.quasi_ribbon_count);
    println!("ribbon elements: {}", r.ribbon_count);
    for (i, v) in r.ribbon_elements.iter().enumerate() {
        println!("  v{} = {}", i + 1, v);
    }
    if let Some(e) = &r.explicit {
        println!("closed forms {}: {}", e.formulas.join(", "), if e.matched { "match" } else { "MISMATCH" });
    }
    for c in &r.checks {
        println!("{} {}{}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.counterexample.as_ref().map(|w| format!(": {w}")).unwrap_or_default());
    }
}

#[derive(Serialize)]
struct Cell {
    m: u32,
    n: u32,
    dim: usize,
    status: String,
    quasi_ribbon_count: Option<usize>,
    ribbon_count: Option<usize>,
    expected_ribbon_count: usize,
    parity_ok: Option<bool>,
    passed: Option<bool>,
    report: Option<String>,
}

#[derive(Serialize)]
struct Index {
    schema: &'static str,
    budget: usize,
    cells: Vec<Cell>,
}

fn sweep_cell(cfg: &RunConfig, dir: &std::path::Path, m: u32, n: u32, force: bool) -> Cell {
    let params = Params { family: FamilyArg::Radford, m, n };
    let dim = params.double_dim();
    let (quasi_expected, expected) = expected_counts(m, n);
    let path = cell_path(dir, m, n);
    let mut cell = Cell {
        m,
        n,
        dim,
        status: String::new(),
        quasi_ribbon_count: None,
        ribbon_count: None,
        expected_ribbon_count: expected,
        parity_ok: None,
        passed: None,
        report: None,
    };
    let counts = if dim > cfg.budget {
        cell.status = format!("skipped: dim {dim} exceeds budget");
        None
    } else if let Some(c) = (!force).then(|| read_cell(&path, m, n)).flatten() {
        cell.status = "cached".into();
        Some((c.quasi_ribbon_count, c.ribbon_count, c.passed))
    } else {
        match classify(params, cfg, true) {
            Ok(r) => match write_json(&path, &r) {
                Ok(()) => {
                    cell.status = "computed".into();
                    Some((r.quasi_ribbon_count, r.ribbon_count, r.passed()))
                }
                Err(e) => {
                    cell.status = format!("error: {e:#}");
                    None
                }
            },
            Err(Outcome::Fail(msg)) | Err(Outcome::Usage(msg)) => {
                cell.status = format!("error: {msg}");
                None
            }
            Err(Outcome::Pass) => unreachable!(),
        }
    };
    if let Some((q, r, passed)) = counts {
        cell.quasi_ribbon_count = Some(q);
        cell.ribbon_count = Some(r);
        cell.parity_ok = Some((q > 0) == quasi_expected && r == expected);
        cell.passed = Some(passed);
        cell.report = path.file_name().map(|f| f.to_string_lossy().into_owned());
    }
    cell
}

pub fn sweep(cfg: &RunConfig, m: (u32, u32), n: (u32, u32), force: bool) -> Outcome {
    if let Err(o) = check_config(cfg) {
        return o;
    }
    if m.0 < 2 || n.0 < 1 {
        return Outcome::Usage("sweep requires m >= 2 and n >= 1".into());
    }
    let dir = cfg.out.clone().expect("sweep always has an output directory");
    let grid: Vec<(u32, u32)> = (m.0..=m.1).flat_map(|a| (n.0..=n.1).map(move |b| (a, b))).collect();
    let start = Instant::now();
    let cells: Vec<Cell> = grid.par_iter().map(|&(a, b)| sweep_cell(cfg, &dir, a, b, force)).collect();
    let index = Index { schema: SCHEMA, budget: cfg.budget, cells };
    if let Err(e) = write_json(&dir.join("index.json"), &index) {
        return Outcome::Usage(format!("{e:#}"));
    }

    println!("{:>3} {:>3} {:>6} {:>6} {:>7} {:>9}  status", "m", "n", "dim", "quasi", "ribbon", "expected");
    let show = |x: Option<usize>| x.map_or("-".to_string(), |v| v.to_string());
    for c in &index.cells {
        let status = match (c.passed, c.parity_ok) {
            (Some(false), _) | (_, Some(false)) => format!("{} (FAIL)", c.status),
            _ => c.status.clone(),
        };
        println!(
            "{:>3} {:>3} {:>6} {:>6} {:>7} {:>9}  {}",
            c.m,
            c.n,
            c.dim,
            show(c.quasi_ribbon_count),
            show(c.ribbon_count),
            c.expected_ribbon_count,
            status
        );
    }
    println!("elapsed: {:.2?}", start.elapsed());

    let bad: Vec<String> = index
        .cells
        .iter()
        .filter(|c| c.status.starts_with("error") || c.passed == Some(false) || c.parity_ok == Some(false))
        .map(|c| format!("({},{})", c.m, c.n))
        .collect();
    if bad.is_empty() {
        Outcome::Pass
    } else {
        Outcome::Fail(format!("cells {}", bad.join(" ")))
    }
}
