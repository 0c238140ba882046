//! Subcommand implementations. Each returns the bytes to emit plus the exit
//! status for a completed run; errors carry their own exit codes.

use bohr_lab::acceptance::Battery;
use bohr_lab::families::{coeff_a, coeffs_a, coeffs_c};
use bohr_lab::par::Execution;
use bohr_lab::radius::{closed_form_radius, find_radius, EnclosureOptions};
use bohr_lab::verify::{problem_suite, run_default_suite, CertificationConfig, VerificationReport};
use bohr_lab::{RadiusProblem, RadiusResult, Variant};
use serde_json::{json, Map, Value};

use crate::args::{CoeffsArgs, Format, ProblemArgs, RadiusArgs, ScanArgs, SelftestArgs, VerifyArgs};
use crate::emit::{csv_table, g17, json_bytes, text_table};

/// Failure classes of the exit-code contract.
#[derive(Debug)]
pub enum CliError {
    /// Rejected input: exit 2.
    Invalid(String),
    /// Solver, harness or I/O failure: exit 3.
    Failure(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Invalid(_) => 2,
            CliError::Failure(_) => 3,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Invalid(m) => write!(f, "invalid input: {m}"),
            CliError::Failure(m) => write!(f, "failure: {m}"),
        }
    }
}

impl From<bohr_lab::Error> for CliError {
    fn from(e: bohr_lab::Error) -> Self {
        use bohr_lab::Error as E;
        match e {
            E::Domain(_) | E::InvalidParameter(_) | E::NonzeroInnerConstant(_) | E::ConstantTermNotOne(_) => {
                CliError::Invalid(e.to_string())
            }
            _ => CliError::Failure(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Failure(e.to_string())
    }
}

pub type CmdResult = Result<(Vec<u8>, u8), CliError>;

fn invalid(msg: impl Into<String>) -> CliError {
    CliError::Invalid(msg.into())
}

fn finite_positive(name: &str, v: f64) -> Result<(), CliError> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(invalid(format!("--{name} must be a positive finite number, got {v}")))
    }
}

pub fn build_problem(args: &ProblemArgs) -> Result<RadiusProblem, CliError> {
    let thm = args.thm.ok_or_else(|| invalid("--thm is required"))?;
    let problem = match (thm, args.alpha, args.p) {
        (1 | 2, Some(alpha), None) => {
            if thm == 1 {
                RadiusProblem::subordinate(alpha, args.n, args.m0)?
            } else {
                RadiusProblem::distortion(alpha, args.n, args.m0, args.m1, args.m2, args.h.clone())?
            }
        }
        (4, None, Some(p)) => RadiusProblem::pole_subordinate(p, args.n, args.m0)?,
        (1 | 2, _, _) => return Err(invalid(format!("--thm {thm} takes --alpha and not --p"))),
        _ => return Err(invalid("--thm 4 takes --p and not --alpha")),
    };
    Ok(problem)
}

/// Value of `--thm` selecting `variant`.
fn thm_flag(variant: Variant) -> u8 {
    match variant {
        Variant::Subordinate => 1,
        Variant::Distortion => 2,
        Variant::PoleSubordinate => 4,
    }
}

/// Problem description in the stable key order shared by every JSON output.
fn problem_fields(problem: &RadiusProblem) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("variant".into(), json!(format!("thm{}", thm_flag(problem.variant))));
    match (problem.alpha(), problem.p()) {
        (Some(a), _) => m.insert("alpha".into(), json!(a)),
        (_, Some(p)) => m.insert("p".into(), json!(p)),
        _ => None,
    };
    m.insert("N".into(), json!(problem.n));
    m.insert("m0".into(), json!(problem.m0));
    let distortion = problem.variant == Variant::Distortion;
    m.insert("m1".into(), if distortion { json!(problem.m1) } else { Value::Null });
    m.insert("m2".into(), if distortion { json!(problem.m2) } else { Value::Null });
    m.insert("h".into(), if distortion { json!(problem.h) } else { Value::Null });
    m
}

fn value_cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        Value::Number(n) => n.as_f64().filter(|_| n.is_f64()).map_or_else(|| n.to_string(), g17),
        other => other.to_string(),
    }
}

pub fn radius(args: &RadiusArgs) -> CmdResult {
    finite_positive("tol", args.tol)?;
    let problem = build_problem(&args.problem)?;
    let result = find_radius(&problem, args.tol)?;
    let closed = closed_form_radius(&problem);
    let mut m = problem_fields(&problem);
    insert_result(&mut m, &result, closed);
    let body = match args.out.format.unwrap_or(Format::Text) {
        Format::Json => json_bytes(&Value::Object(m)),
        Format::Csv => {
            let header: Vec<&str> = m.keys().map(String::as_str).collect();
            let row: Vec<String> = m
                .values()
                .map(|v| match v {
                    Value::Array(xs) => xs.iter().map(value_cell).collect::<Vec<_>>().join(" "),
                    v => value_cell(v),
                })
                .collect();
            csv_table(&header, &[row])?
        }
        Format::Text => radius_text(&m, &result, closed),
    };
    Ok((body, 0))
}

fn insert_result(m: &mut Map<String, Value>, r: &RadiusResult, closed: Option<f64>) {
    m.insert("root".into(), json!(r.root));
    m.insert("reported_radius".into(), json!(r.reported_radius));
    m.insert("capped".into(), json!(r.capped));
    m.insert("residual".into(), json!(r.residual));
    m.insert("bracket".into(), json!([r.bracket.0, r.bracket.1]));
    m.insert("iterations".into(), json!(r.iterations));
    m.insert("closed_form".into(), json!(closed));
}

fn radius_text(m: &Map<String, Value>, r: &RadiusResult, closed: Option<f64>) -> Vec<u8> {
    let mut out = String::new();
    for (k, v) in m.iter().take_while(|(k, _)| k.as_str() != "root") {
        if !v.is_null() {
            out.push_str(&format!("{k:<16} {}\n", value_cell(v)));
        }
    }
    out.push_str(&format!("{:<16} {:.12}\n", "root", r.root));
    out.push_str(&format!("{:<16} {:.12}\n", "reported_radius", r.reported_radius));
    out.push_str(&format!("{:<16} {}\n", "capped", r.capped));
    out.push_str(&format!("{:<16} {:.3e}\n", "residual", r.residual));
    out.push_str(&format!("{:<16} [{}, {}]\n", "bracket", g17(r.bracket.0), g17(r.bracket.1)));
    match closed {
        Some(c) => out.push_str(&format!("{:<16} {:.12} (|diff| {:.1e})\n", "closed_form", c, (c - r.root).abs())),
        None => out.push_str(&format!("{:<16} none\n", "closed_form")),
    }
    out.into_bytes()
}

const MAX_COEFF_INDEX: usize = 1 << 20;

pub fn coeffs(args: &CoeffsArgs) -> CmdResult {
    if args.from == 0 || args.from > args.to || args.to > MAX_COEFF_INDEX {
        return Err(invalid(format!("need 1 <= --from <= --to <= {MAX_COEFF_INDEX}")));
    }
    let (name, param, table) = match (args.alpha, args.p) {
        (Some(a), None) => ("alpha", a, coeffs_a(a, args.to)?),
        (None, Some(p)) => ("p", p, coeffs_c(p, args.to)?),
        _ => return Err(invalid("give exactly one of --alpha and --p")),
    };
    let range = args.from..=args.to;
    let body = match args.out.format.unwrap_or(Format::Csv) {
        Format::Json => {
            let rows: Vec<Value> = range.map(|n| json!({"n": n, "coefficient": table[n]})).collect();
            let mut m = Map::new();
            m.insert(name.into(), json!(param));
            m.insert("coefficients".into(), Value::Array(rows));
            json_bytes(&Value::Object(m))
        }
        fmt => {
            let rows: Vec<Vec<String>> = range.map(|n| vec![n.to_string(), g17(table[n])]).collect();
            if fmt == Format::Csv {
                csv_table(&["n", "coefficient"], &rows)?
            } else {
                text_table(&["n", "coefficient"], &rows)
            }
        }
    };
    Ok((body, 0))
}

pub fn scan(args: &ScanArgs) -> CmdResult {
    finite_positive("tol", args.tol)?;
    if args.points < 2 {
        return Err(invalid("--points must be at least 2"));
    }
    let problem = build_problem(&args.problem)?;
    let domain = problem.domain_max();
    let result = find_radius(&problem, args.tol)?;
    let x_max = match args.x_max {
        Some(x) => {
            if !(x > 0.0 && x <= domain) {
                return Err(invalid(format!("--x-max must lie in (0, {domain}]")));
            }
            x
        }
        None => (2.0 * result.root).min(domain),
    };
    // Plot data needs a value, not a sign certificate: accept wider enclosures.
    let opts = EnclosureOptions { max_width: 1e-9, ..EnclosureOptions::default() };
    let mut rows: Vec<(f64, f64, bool)> = Vec::with_capacity(args.points + 1);
    for i in 0..args.points {
        let x = x_max * i as f64 / (args.points - 1) as f64;
        rows.push((x, problem.evaluate(x, &opts)?.mid(), false));
    }
    if result.root <= x_max {
        let at = rows.partition_point(|r| r.0 <= result.root);
        rows.insert(at, (result.root, problem.evaluate(result.root, &opts)?.mid(), true));
    }
    let body = match args.out.format.unwrap_or(Format::Csv) {
        Format::Json => {
            let mut m = problem_fields(&problem);
            m.insert("root".into(), json!(result.root));
            let pts: Vec<Value> = rows.iter().map(|&(x, v, r)| json!({"x": x, "value": v, "root": r})).collect();
            m.insert("points".into(), Value::Array(pts));
            json_bytes(&Value::Object(m))
        }
        fmt => {
            let cells: Vec<Vec<String>> =
                rows.iter().map(|&(x, v, r)| vec![g17(x), g17(v), u8::from(r).to_string()]).collect();
            if fmt == Format::Csv {
                csv_table(&["x", "value", "root"], &cells)?
            } else {
                text_table(&["x", "value", "root"], &cells)
            }
        }
    };
    Ok((body, 0))
}

pub fn verify(args: &VerifyArgs) -> CmdResult {
    if !(args.tol.is_finite() && args.tol >= 0.0) {
        return Err(invalid("--tol must be a finite non-negative number"));
    }
    finite_positive("radius-factor", args.radius_factor)?;
    let cfg = CertificationConfig {
        samples: args.samples,
        seed: args.seed,
        tolerance: args.tol,
        order: args.order,
        execution: if args.sequential { Execution::Sequential } else { Execution::Parallel },
        ..CertificationConfig::default()
    };
    cfg.validate()?;
    let (scope, report) = if args.problem.thm.is_some() {
        let problem = build_problem(&args.problem)?;
        let scope = Value::Object(problem_fields(&problem));
        (scope, problem_suite(&problem, args.samples, args.radius_factor, &cfg)?)
    } else {
        (json!("default"), run_default_suite(&cfg)?)
    };
    let body = match args.out.format.unwrap_or(Format::Json) {
        Format::Json => json_bytes(&report_json(scope, args, &report)),
        Format::Csv => {
            let rows: Vec<Vec<String>> = report.worst_by_check.iter().map(|(k, v)| vec![k.clone(), g17(*v)]).collect();
            csv_table(&["check", "worst_margin"], &rows)?
        }
        Format::Text => verify_text(&report),
    };
    Ok((body, if report.passed { 0 } else { 1 }))
}

fn report_json(scope: Value, args: &VerifyArgs, report: &VerificationReport) -> Value {
    let mut m = Map::new();
    m.insert("scope".into(), scope);
    m.insert("seed".into(), json!(args.seed));
    m.insert("samples".into(), json!(args.samples));
    m.insert("tolerance".into(), json!(args.tol));
    m.insert("passed".into(), json!(report.passed));
    m.insert("checks_run".into(), json!(report.checks_run));
    m.insert("worst_margin".into(), json!(report.worst_margin));
    m.insert("worst_by_check".into(), json!(report.worst_by_check));
    m.insert("violations".into(), json!(report.violations));
    Value::Object(m)
}

fn verify_text(report: &VerificationReport) -> Vec<u8> {
    let mut out = format!(
        "passed: {}\nchecks run: {}\nworst margin: {}\n",
        report.passed,
        report.checks_run,
        g17(report.worst_margin)
    );
    for (k, v) in &report.worst_by_check {
        out.push_str(&format!("  {k:<20} {}\n", g17(*v)));
    }
    out.push_str(&format!("violations: {}\n", report.violations.len()));
    for v in &report.violations {
        out.push_str(&format!("  {} {} margin {}\n", v.check, v.params, g17(v.margin)));
    }
    out.into_bytes()
}

fn tampered_coeff(alpha: f64, n: usize) -> bohr_lab::Result<f64> {
    Ok(coeff_a(alpha, n)? * (1.0 + 1e-9 * n as f64))
}

pub fn selftest(args: &SelftestArgs) -> CmdResult {
    let mut battery = Battery::new();
    if args.tamper_coefficients {
        battery = battery.with_coeff_source(tampered_coeff);
    }
    let outcomes = battery.run_all();
    let failed = outcomes.iter().filter(|o| !o.passed).count();
    let body = match args.out.format.unwrap_or(Format::Text) {
        Format::Json => json_bytes(&json!({"passed": failed == 0, "criteria": outcomes})),
        Format::Csv => {
            let rows: Vec<Vec<String>> = outcomes
                .iter()
                .map(|o| vec![o.id.to_string(), o.name.to_string(), o.passed.to_string(), o.detail.clone()])
                .collect();
            csv_table(&["id", "criterion", "passed", "detail"], &rows)?
        }
        Format::Text => {
            let mut out: String = outcomes.iter().map(|o| format!("{o}\n")).collect();
            out.push_str(&format!("{} of {} criteria passed\n", outcomes.len() - failed, outcomes.len()));
            out.into_bytes()
        }
    };
    Ok((body, if failed == 0 { 0 } else { 1 }))
}
