//! Request types, evaluation and rendering behind the `pionless-qre`
//! command.
//!
//! Everything that decides what is printed lives here so that the binary
//! only parses flags, calls in, and maps failures to exit codes.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use pionless_core::{
    commutator_bounds, cost_trotter, lambda_t, lcu::lambda_v, qsp_evolution, Accounting,
    EstimateError, HamiltonianParams, KickbackConstant, LatticeConfig, LogBase, SystemSpec,
    TimeSpec, TrotterOrder,
};

/// Version of the CSV and JSON layouts.
pub const SCHEMA: u32 = 1;

/// Environment variable naming a parameter file.
pub const PARAMS_ENV: &str = "PIONLESS_QRE_PARAMS";

/// Failure of a command before or during evaluation.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Estimate(#[from] EstimateError),
    #[error("cannot read parameter file {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

/// Simulation method.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Trotter1,
    Trotter2,
    Trotter4,
    Qsp,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Trotter1 => "trotter1",
            Method::Trotter2 => "trotter2",
            Method::Trotter4 => "trotter4",
            Method::Qsp => "qsp",
        }
    }

    fn order(self) -> Option<TrotterOrder> {
        match self {
            Method::Trotter1 => Some(TrotterOrder::First),
            Method::Trotter2 => Some(TrotterOrder::Second),
            Method::Trotter4 => Some(TrotterOrder::Fourth),
            Method::Qsp => None,
        }
    }
}

impl FromStr for Method {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        <Self as clap::ValueEnum>::from_str(s, false).map_err(|_| {
            format!("unknown method `{s}` (expected trotter1, trotter2, trotter4 or qsp)")
        })
    }
}

/// Parses `cross:<E>`, `response:<Δω>` (either optionally suffixed with
/// `MeV`) or a bare time in MeV⁻¹.
pub fn parse_time(text: &str) -> Result<TimeSpec, String> {
    let number = |s: &str| -> Result<f64, String> {
        let s = s.trim();
        let s = s.strip_suffix("MeV").unwrap_or(s).trim();
        s.parse::<f64>()
            .map_err(|e| format!("invalid number `{s}` in time `{text}`: {e}"))
    };
    if let Some(rest) = text.strip_prefix("cross:") {
        Ok(TimeSpec::Crossing {
            energy: number(rest)?,
        })
    } else if let Some(rest) = text.strip_prefix("response:") {
        Ok(TimeSpec::Response {
            delta_omega: number(rest)?,
        })
    } else {
        Ok(TimeSpec::Explicit { t: number(text)? })
    }
}

/// Formats a time model the way it is accepted on the command line.
pub fn format_time(time: &TimeSpec) -> String {
    match time {
        TimeSpec::Explicit { t } => format!("{t}"),
        TimeSpec::Crossing { energy } => format!("cross:{energy}MeV"),
        TimeSpec::Response { delta_omega } => format!("response:{delta_omega}MeV"),
    }
}

/// Reads parameters from a file, or returns the defaults for `None`.
pub fn load_params(path: Option<&Path>) -> Result<HamiltonianParams, CliError> {
    match path {
        None => Ok(HamiltonianParams::default()),
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|source| CliError::Io {
                path: p.display().to_string(),
                source,
            })?;
            Ok(HamiltonianParams::from_config_str(&text)?)
        }
    }
}

/// One estimate to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EstimateRequest {
    pub method: Method,
    pub eta: u64,
    pub d: u32,
    pub m: u32,
    pub eps: f64,
    pub time: TimeSpec,
    pub accounting: Accounting,
}

/// Resolved evolution time.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ResolvedTime {
    #[serde(flatten)]
    pub model: TimeSpec,
    /// Evolution time in MeV⁻¹.
    pub value: f64,
}

/// One-norms of the Hamiltonian pieces in MeV.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Lambdas {
    #[serde(rename = "T")]
    pub t: f64,
    #[serde(rename = "V")]
    pub v: f64,
    #[serde(rename = "H")]
    pub h: f64,
}

/// Qubit totals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Qubits {
    pub system: u64,
    pub ancilla: u64,
    pub total: u64,
}

/// Result of one estimate.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EstimateOutput {
    pub schema: u32,
    pub method: Method,
    pub eta: u64,
    pub d: u32,
    pub m: u32,
    pub eps: f64,
    pub params: HamiltonianParams,
    pub accounting: Accounting,
    pub time: ResolvedTime,
    /// Exact total T-count.
    pub t_count: u128,
    /// The same count in scientific notation.
    pub t_count_sci: String,
    pub qubits: Qubits,
    /// Product-formula steps `r`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<u64>,
    /// QSP segments `R`.
    #[serde(rename = "R", skip_serializing_if = "Option::is_none")]
    pub big_r: Option<u64>,
    pub lambda: Lambdas,
    /// Commutator bounds `α₁, α₂, α₄` for product formulas.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<BTreeMap<String, f64>>,
    pub breakdown: BTreeMap<String, i128>,
    pub registers: BTreeMap<String, u64>,
    pub warnings: Vec<String>,
}

/// `1.234e9`-style rendering of a count.
pub fn sci(x: u128) -> String {
    format!("{:.3e}", x as f64)
}

/// Evaluates one estimate.
pub fn estimate(
    req: &EstimateRequest,
    params: &HamiltonianParams,
) -> Result<EstimateOutput, CliError> {
    let spec = SystemSpec::new(*params, LatticeConfig::new(req.d, req.m)?, req.eta)?;
    let t = req.time.resolve(&spec)?;
    let lt = lambda_t(&spec);
    let lv = lambda_v(&spec);
    let lambda = Lambdas {
        t: lt,
        v: lv,
        h: lt + lv,
    };
    let base = EstimateOutput {
        schema: SCHEMA,
        method: req.method,
        eta: req.eta,
        d: req.d,
        m: req.m,
        eps: req.eps,
        params: *params,
        accounting: req.accounting,
        time: ResolvedTime {
            model: req.time,
            value: t,
        },
        t_count: 0,
        t_count_sci: String::new(),
        qubits: Qubits {
            system: 0,
            ancilla: 0,
            total: 0,
        },
        r: None,
        big_r: None,
        lambda,
        alpha: None,
        breakdown: BTreeMap::new(),
        registers: BTreeMap::new(),
        warnings: Vec::new(),
    };
    let out = match req.method.order() {
        Some(order) => {
            let rep = cost_trotter(&spec, order, req.eps, t, &req.accounting)?;
            let a = commutator_bounds(&spec);
            EstimateOutput {
                t_count: rep.t_count,
                t_count_sci: sci(rep.t_count),
                qubits: Qubits {
                    system: rep.system_qubits,
                    ancilla: rep.ancilla_qubits,
                    total: rep.total_qubits,
                },
                r: rep.steps,
                alpha: Some(BTreeMap::from([
                    ("alpha1".to_string(), a.alpha1),
                    ("alpha2".to_string(), a.alpha2),
                    ("alpha4".to_string(), a.alpha4),
                ])),
                breakdown: rep.breakdown,
                registers: rep.registers,
                warnings: rep.warnings,
                ..base
            }
        }
        None => {
            let rep = qsp_evolution(&spec, req.eps, t, &req.accounting)?;
            EstimateOutput {
                t_count: rep.t_count,
                t_count_sci: sci(rep.t_count),
                qubits: Qubits {
                    system: rep.system_qubits,
                    ancilla: rep.ancilla_qubits,
                    total: rep.total_qubits,
                },
                big_r: Some(rep.r),
                lambda: Lambdas {
                    h: rep.lambda_h,
                    ..lambda
                },
                breakdown: rep.breakdown,
                registers: rep.registers,
                ..base
            }
        }
    };
    Ok(out)
}

/// Quantity varied by a sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    Eta,
    M,
}

impl Axis {
    pub fn as_str(self) -> &'static str {
        match self {
            Axis::Eta => "eta",
            Axis::M => "m",
        }
    }
}

/// Output layout of a sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

/// Inclusive arithmetic range `start..end` with a positive step.
pub fn parse_range(text: &str, step: u64) -> Result<Vec<u64>, String> {
    let (a, b) = text
        .split_once("..")
        .ok_or_else(|| format!("range `{text}` must look like START..END"))?;
    let start: u64 = a
        .trim()
        .parse()
        .map_err(|e| format!("range start `{a}`: {e}"))?;
    let end: u64 = b
        .trim()
        .trim_start_matches('=')
        .parse()
        .map_err(|e| format!("range end `{b}`: {e}"))?;
    if step == 0 {
        return Err("step must be positive".into());
    }
    if end < start {
        return Err(format!("range `{text}` is empty"));
    }
    Ok((start..=end).step_by(step as usize).collect())
}

/// A family of estimates along one axis.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRequest {
    pub axis: Axis,
    pub values: Vec<u64>,
    pub methods: Vec<Method>,
    /// Fixed values; the swept one is overridden per point.
    pub eta: u64,
    pub d: u32,
    pub m: u32,
    pub eps: f64,
    pub time: TimeSpec,
    pub accounting: Accounting,
}

/// One sweep point; failed points keep their error message.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub method: Method,
    pub value: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub estimate: Option<EstimateOutput>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl SweepRequest {
    fn point(&self, method: Method, value: u64) -> Result<EstimateRequest, CliError> {
        let mut req = EstimateRequest {
            method,
            eta: self.eta,
            d: self.d,
            m: self.m,
            eps: self.eps,
            time: self.time,
            accounting: self.accounting,
        };
        match self.axis {
            Axis::Eta => req.eta = value,
            Axis::M => {
                req.m = u32::try_from(value)
                    .map_err(|_| CliError::Usage(format!("m = {value} is too large")))?
            }
        }
        Ok(req)
    }
}

/// Evaluates every `(method, value)` point concurrently and returns rows
/// ordered by method and then by value.
pub fn sweep(req: &SweepRequest, params: &HamiltonianParams) -> Result<Vec<SweepRow>, CliError> {
    if req.values.is_empty() {
        return Err(CliError::Usage("sweep range is empty".into()));
    }
    if req.values.windows(2).any(|w| w[1] <= w[0]) {
        return Err(CliError::Usage("sweep values must increase".into()));
    }
    if req.methods.is_empty() {
        return Err(CliError::Usage("no methods given".into()));
    }
    let points: Vec<(Method, u64)> = req
        .methods
        .iter()
        .flat_map(|m| req.values.iter().map(move |v| (*m, *v)))
        .collect();
    Ok(points
        .par_iter()
        .map(|(method, value)| {
            let result = req
                .point(*method, *value)
                .and_then(|p| estimate(&p, params));
            match result {
                Ok(e) => SweepRow {
                    method: *method,
                    value: *value,
                    estimate: Some(e),
                    error: None,
                },
                Err(e) => SweepRow {
                    method: *method,
                    value: *value,
                    estimate: None,
                    error: Some(e.to_string()),
                },
            }
        })
        .collect())
}

/// Header comment lines shared by the sweep outputs.
fn header_lines(req: &SweepRequest, params: &HamiltonianParams) -> Vec<(String, String)> {
    let a = &req.accounting;
    vec![
        ("axis".into(), req.axis.as_str().into()),
        ("eta".into(), req.eta.to_string()),
        ("d".into(), req.d.to_string()),
        ("m".into(), req.m.to_string()),
        ("eps".into(), req.eps.to_string()),
        ("time".into(), format_time(&req.time)),
        ("include_internal".into(), a.include_internal.to_string()),
        ("kickback_constant".into(), a.kickback.as_str().into()),
        ("qsp_log_base".into(), a.qsp_log_base.as_str().into()),
        ("kinetic_scale_mev".into(), params.kinetic_scale.to_string()),
        ("c_mev".into(), params.c.to_string()),
        ("g_mev".into(), params.g.to_string()),
        ("a_fm".into(), params.a.to_string()),
        ("mu_mev".into(), params.mu.to_string()),
    ]
}

/// CSV with a `# schema=1` line, one `# key=value` line per fixed
/// setting, a header row, and one row per point.
pub fn render_csv(req: &SweepRequest, params: &HamiltonianParams, rows: &[SweepRow]) -> String {
    let mut s = format!("# schema={SCHEMA}\n");
    for (k, v) in header_lines(req, params) {
        let _ = writeln!(s, "# {k}={v}");
    }
    s.push_str("method,axis,value,t_count,t_count_sci,total_qubits,steps,lambda_h,time,error\n");
    for row in rows {
        match &row.estimate {
            Some(e) => {
                let steps = e.r.or(e.big_r).map(|x| x.to_string()).unwrap_or_default();
                let _ = writeln!(
                    s,
                    "{},{},{},{},{},{},{},{},{},",
                    row.method.as_str(),
                    req.axis.as_str(),
                    row.value,
                    e.t_count,
                    e.t_count_sci,
                    e.qubits.total,
                    steps,
                    e.lambda.h,
                    e.time.value
                );
            }
            None => {
                let msg = row
                    .error
                    .clone()
                    .unwrap_or_default()
                    .replace(['"', ','], ";");
                let _ = writeln!(
                    s,
                    "{},{},{},,,,,,,\"{msg}\"",
                    row.method.as_str(),
                    req.axis.as_str(),
                    row.value
                );
            }
        }
    }
    s
}

#[derive(Serialize)]
struct SweepJson<'a> {
    schema: u32,
    settings: BTreeMap<String, String>,
    rows: &'a [SweepRow],
}

/// JSON document with the same settings and rows as [`render_csv`].
pub fn render_json(req: &SweepRequest, params: &HamiltonianParams, rows: &[SweepRow]) -> String {
    let doc = SweepJson {
        schema: SCHEMA,
        settings: header_lines(req, params).into_iter().collect(),
        rows,
    };
    serde_json::to_string_pretty(&doc).expect("sweep serializes")
}

/// Renders an estimate as pretty JSON.
pub fn render_estimate(out: &EstimateOutput) -> String {
    serde_json::to_string_pretty(out).expect("estimate serializes")
}

/// Accounting built from the command-line spellings.
pub fn accounting(
    include_internal: bool,
    kickback: KickbackConstant,
    qsp_log_base: LogBase,
) -> Accounting {
    Accounting {
        include_internal,
        kickback,
        qsp_log_base,
    }
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn log_log_slope(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let (lx, ly): (Vec<f64>, Vec<f64>) = points.iter().map(|(x, y)| (x.ln(), y.ln())).unzip();
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = lx.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn time_spellings() {
        assert_eq!(
            parse_time("cross:10MeV").unwrap(),
            TimeSpec::Crossing { energy: 10.0 }
        );
        assert_eq!(
            parse_time("response:100").unwrap(),
            TimeSpec::Response { delta_omega: 100.0 }
        );
        assert_eq!(parse_time("0.5").unwrap(), TimeSpec::Explicit { t: 0.5 });
        assert!(parse_time("cross:fast").is_err());
        for t in ["cross:10MeV", "response:100MeV", "0.25"] {
            assert_eq!(format_time(&parse_time(t).unwrap()), t);
        }
    }

    #[test]
    fn ranges() {
        assert_eq!(parse_range("3..6", 1).unwrap(), vec![3, 4, 5, 6]);
        assert_eq!(parse_range("8..=32", 8).unwrap(), vec![8, 16, 24, 32]);
        assert!(parse_range("6..3", 1).is_err());
        assert!(parse_range("1..3", 0).is_err());
        assert!(parse_range("7", 1).is_err());
    }

    #[test]
    fn slope_of_power_law() {
        let pts: Vec<(f64, f64)> = (1..6)
            .map(|x| (x as f64, 3.0 * (x as f64).powf(1.5)))
            .collect();
        assert!((log_log_slope(&pts) - 1.5).abs() < 1e-12);
    }
}
