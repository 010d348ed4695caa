use std::fmt::Write as _;
use std::str::FromStr;

use serde_json::{Map, Number, Value};

use super::config::{Config, ConfigError, RunTolerances};
use crate::eigen::{PairingReport, Spectrum};
use crate::verify::{ConvergenceReport, Identity, ParityReport, ResidualReport};

/// Version tag written into every JSON report.
pub const SCHEMA: &str = "ptlab-report/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Check,
    Spectrum,
    Converge,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Check => "check",
            Command::Spectrum => "spectrum",
            Command::Converge => "converge",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    /// Nothing was checked.
    NoOp,
    Pass,
    Fail,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::NoOp => "no-op",
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
        }
    }

    /// Process exit status: 1 on failure, 0 otherwise.
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Fail => 1,
            Verdict::NoOp | Verdict::Pass => 0,
        }
    }
}

/// A check that was requested but not run.
#[derive(Debug, Clone, PartialEq)]
pub struct Skipped {
    pub identity: Identity,
    pub reason: String,
}

#[derive(Debug, Clone)]
pub struct Report {
    pub command: Command,
    pub config: Config,
    pub tolerances: RunTolerances,
    pub parity: Option<ParityReport>,
    pub checks: Vec<ResidualReport>,
    pub skipped: Vec<Skipped>,
    pub spectrum: Option<Spectrum>,
    pub pairing: Option<PairingReport>,
    pub convergence: Option<ConvergenceReport>,
}

impl Report {
    pub fn new(command: Command, config: Config, tolerances: RunTolerances) -> Self {
        Report {
            command,
            config,
            tolerances,
            parity: None,
            checks: Vec::new(),
            skipped: Vec::new(),
            spectrum: None,
            pairing: None,
            convergence: None,
        }
    }

    /// Fails if the parity conditions, any applicable check, the pairing or
    /// the convergence study fails; no-op if none of them was run.
    pub fn verdict(&self) -> Verdict {
        let mut outcomes = Vec::new();
        if let Some(p) = &self.parity {
            outcomes.push(p.pass());
        }
        outcomes.extend(self.checks.iter().filter(|c| c.applicable).map(|c| c.passed()));
        if let Some(p) = &self.pairing {
            outcomes.push(p.all_matched());
        }
        if let Some(c) = &self.convergence {
            outcomes.push(c.pass);
        }
        if outcomes.is_empty() {
            Verdict::NoOp
        } else if outcomes.iter().all(|&ok| ok) {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }
}

/// Round-trip text for a float: 17 significant digits in scientific
/// notation.
pub fn sci(v: f64) -> String {
    format!("{v:.16e}")
}

/// A JSON number in [`sci`] form, or a string for non-finite values.
fn num(v: f64) -> Value {
    if v.is_finite() {
        Value::Number(Number::from_str(&sci(v)).expect("formatted float is valid JSON"))
    } else {
        Value::String(v.to_string())
    }
}

fn opt_num(v: Option<f64>) -> Value {
    v.map_or(Value::Null, num)
}

fn complex(z: num_complex::Complex64) -> Value {
    Value::Array(vec![num(z.re), num(z.im)])
}

fn obj<const N: usize>(entries: [(&str, Value); N]) -> Value {
    let mut m = Map::new();
    for (k, v) in entries {
        m.insert(k.to_owned(), v);
    }
    Value::Object(m)
}

fn indices(v: &[usize]) -> Value {
    Value::Array(v.iter().map(|&i| Value::from(i)).collect())
}

fn config_json(c: &Config, t: &RunTolerances) -> Value {
    let params = c
        .params
        .iter()
        .map(|(k, [re, im])| (k.clone(), Value::Array(vec![num(*re), num(*im)])))
        .collect();
    obj([
        ("potential_V", Value::from(c.potential_v.as_str())),
        ("potential_A", Value::from(c.potential_a.as_str())),
        ("mass", num(c.mass)),
        ("half_width", num(c.half_width)),
        ("grid_points", Value::from(c.grid_points)),
        ("params", Value::Object(params)),
        (
            "tolerances",
            obj([
                ("exact", num(t.verify.exact)),
                ("discretization", num(t.verify.discretization)),
                ("parity", num(t.verify.parity)),
                ("eigen", num(t.eigen)),
                ("pairing", num(t.pairing)),
            ]),
        ),
    ])
}

fn check_json(r: &ResidualReport) -> Value {
    obj([
        ("identity", Value::from(r.identity.name())),
        ("statement", Value::from(r.identity.statement())),
        ("absolute", num(r.absolute)),
        ("relative", num(r.relative)),
        ("consistency", opt_num(r.consistency)),
        ("expected", Value::from(r.expected.as_str())),
        ("classification", Value::from(r.classification.as_str())),
        ("applicable", Value::from(r.applicable)),
        ("note", r.note.as_deref().map_or(Value::Null, Value::from)),
    ])
}

fn parity_json(p: &ParityReport) -> Value {
    let conditions = p
        .conditions
        .iter()
        .map(|c| {
            obj([
                ("name", Value::from(c.name)),
                ("max_violation", num(c.max_violation)),
                ("pass", Value::from(c.pass)),
            ])
        })
        .collect();
    obj([
        ("tolerance", num(p.tolerance)),
        ("pass", Value::from(p.pass())),
        ("conditions", Value::Array(conditions)),
    ])
}

/// Partner index of every eigenvalue, `-1` for real or unmatched values.
fn partners(n: usize, pairing: Option<&PairingReport>) -> Vec<i64> {
    let mut out = vec![-1i64; n];
    if let Some(p) = pairing {
        for &(i, j) in &p.pairs {
            out[i] = j as i64;
            out[j] = i as i64;
        }
    }
    out
}

fn spectrum_json(s: &Spectrum, pairing: Option<&PairingReport>) -> Value {
    let partner = partners(s.len(), pairing);
    let values = s
        .pairs
        .iter()
        .enumerate()
        .map(|(k, p)| {
            obj([
                ("index", Value::from(k)),
                ("value", complex(p.value)),
                ("residual", num(p.residual)),
                ("partner", Value::from(partner[k])),
            ])
        })
        .collect();
    obj([
        ("count", Value::from(s.len())),
        ("norm", num(s.norm)),
        ("basis_condition", num(s.basis_condition)),
        ("max_residual", num(s.max_residual())),
        ("eigenvalues", Value::Array(values)),
    ])
}

fn pairing_json(p: &PairingReport) -> Value {
    let pairs = p
        .pairs
        .iter()
        .map(|&(i, j)| Value::Array(vec![Value::from(i), Value::from(j)]))
        .collect();
    obj([
        ("tolerance", num(p.tolerance)),
        ("radius", num(p.radius)),
        ("pairs", Value::Array(pairs)),
        ("real", indices(&p.real)),
        ("unmatched", indices(&p.unmatched)),
    ])
}

fn convergence_json(c: &ConvergenceReport) -> Value {
    let samples = c
        .samples
        .iter()
        .map(|s| {
            obj([
                ("n", Value::from(s.n)),
                ("h", num(s.h)),
                ("relative", num(s.report.relative)),
                ("consistency", opt_num(s.report.consistency)),
                ("classification", Value::from(s.report.classification.as_str())),
            ])
        })
        .collect();
    obj([
        ("identity", Value::from(c.identity.name())),
        ("window", Value::Array(vec![num(c.window.0), num(c.window.1)])),
        ("slope", opt_num(c.slope)),
        ("matrix_slope", opt_num(c.matrix_slope)),
        ("exact", Value::from(c.exact)),
        ("pass", Value::from(c.pass)),
        ("samples", Value::Array(samples)),
    ])
}

/// The report as a JSON value with keys in their documented order.
pub fn report_json(r: &Report) -> Value {
    let mut m = Map::new();
    m.insert("schema".into(), Value::from(SCHEMA));
    m.insert("command".into(), Value::from(r.command.name()));
    m.insert("config".into(), config_json(&r.config, &r.tolerances));
    if let Some(p) = &r.parity {
        m.insert("parity".into(), parity_json(p));
    }
    m.insert("checks".into(), Value::Array(r.checks.iter().map(check_json).collect()));
    let skipped = r
        .skipped
        .iter()
        .map(|s| obj([("identity", Value::from(s.identity.name())), ("reason", Value::from(s.reason.as_str()))]))
        .collect();
    m.insert("skipped".into(), Value::Array(skipped));
    if let Some(s) = &r.spectrum {
        m.insert("spectrum".into(), spectrum_json(s, r.pairing.as_ref()));
    }
    if let Some(p) = &r.pairing {
        m.insert("pairing".into(), pairing_json(p));
    }
    if let Some(c) = &r.convergence {
        m.insert("convergence".into(), convergence_json(c));
    }
    m.insert("verdict".into(), Value::from(r.verdict().as_str()));
    Value::Object(m)
}

/// Eigenvalue table: `index,re,im,residual,pairing_partner_index`.
pub fn spectrum_csv(s: &Spectrum, pairing: Option<&PairingReport>) -> Vec<u8> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    let partner = partners(s.len(), pairing);
    w.write_record(["index", "re", "im", "residual", "pairing_partner_index"])
        .expect("write to memory");
    for (k, p) in s.pairs.iter().enumerate() {
        w.write_record([
            k.to_string(),
            sci(p.value.re),
            sci(p.value.im),
            sci(p.residual),
            partner[k].to_string(),
        ])
        .expect("write to memory");
    }
    w.into_inner().expect("flush to memory")
}

fn short(v: f64) -> String {
    format!("{v:.3e}")
}

pub fn report_text(r: &Report) -> String {
    let c = &r.config;
    let mut out = String::new();
    let _ = writeln!(out, "ptlab {}", r.command.name());
    let _ = writeln!(
        out,
        "  V(x) = {}   A(x) = {}   m = {}   L = {}   N = {}",
        c.potential_v, c.potential_a, c.mass, c.half_width, c.grid_points
    );
    for (k, [re, im]) in &c.params {
        let _ = writeln!(out, "  {k} = {re} + {im}i");
    }
    if let Some(p) = &r.parity {
        let verdict = if p.pass() { "pass" } else { "fail" };
        let _ = writeln!(out, "parity conditions (tol {}): {verdict}", short(p.tolerance));
        for cond in &p.conditions {
            let _ = writeln!(out, "  {:<10} max violation {}", cond.name, short(cond.max_violation));
        }
    }
    if !r.checks.is_empty() || !r.skipped.is_empty() {
        let _ = writeln!(out, "checks:");
    }
    for ch in &r.checks {
        let _ = write!(
            out,
            "  {:<16} {:<15} relative {}",
            ch.identity.name(),
            ch.classification.as_str(),
            short(ch.relative)
        );
        if let Some(cons) = ch.consistency {
            let _ = write!(out, "  consistency {}", short(cons));
        }
        if !ch.applicable {
            let _ = write!(out, "  (not applicable)");
        }
        out.push('\n');
    }
    for s in &r.skipped {
        let _ = writeln!(out, "  {:<16} skipped: {}", s.identity.name(), s.reason);
    }
    if let Some(s) = &r.spectrum {
        let _ = writeln!(
            out,
            "spectrum: {} eigenvalues, max residual {}, basis condition {}",
            s.len(),
            short(s.max_residual()),
            short(s.basis_condition)
        );
        for (k, p) in s.pairs.iter().take(10).enumerate() {
            let _ = writeln!(out, "  {k:>4}  {:>22.12} {:+.12}i", p.value.re, p.value.im);
        }
        if s.len() > 10 {
            let _ = writeln!(out, "  ... {} more", s.len() - 10);
        }
    }
    if let Some(p) = &r.pairing {
        let _ = writeln!(
            out,
            "pairing (radius {}): {} real, {} conjugate pairs, {} unmatched",
            short(p.radius),
            p.real.len(),
            p.pairs.len(),
            p.unmatched.len()
        );
    }
    if let Some(cv) = &r.convergence {
        let _ = writeln!(out, "convergence of {}:", cv.identity.name());
        for s in &cv.samples {
            let _ = writeln!(
                out,
                "  N = {:<5} h = {}  relative {}  fitted {}",
                s.n,
                short(s.h),
                short(s.report.relative),
                short(s.fitted_residual())
            );
        }
        let slope = cv.slope.map_or("n/a".to_owned(), |s| format!("{s:.3}"));
        let _ = writeln!(
            out,
            "  slope {slope} (window [{}, {}]){}",
            cv.window.0,
            cv.window.1,
            if cv.exact { ", exact" } else { "" }
        );
    }
    let _ = writeln!(out, "verdict: {}", r.verdict().as_str());
    out
}

/// Encodes `report`. CSV is the eigenvalue table and needs a spectrum.
pub fn emit_report(report: &Report, format: Format) -> Result<Vec<u8>, ConfigError> {
    match format {
        Format::Json => {
            let mut bytes = serde_json::to_vec_pretty(&report_json(report))?;
            bytes.push(b'\n');
            Ok(bytes)
        }
        Format::Text => Ok(report_text(report).into_bytes()),
        Format::Csv => match &report.spectrum {
            Some(s) => Ok(spectrum_csv(s, report.pairing.as_ref())),
            None => Err(ConfigError::CsvNeedsSpectrum),
        },
    }
}
