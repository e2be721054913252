//! Run configuration: a flat JSON document with physics parameters, level
//! and time truncations, requested methods and the output location.

use std::fs;
use std::path::{Path, PathBuf};

use ringdec_core::decoherence::Method;
use ringdec_core::{RingParams, SolverConfig, M_P};
use serde_json::{Map, Value};

use crate::error::{CliError, Result};

const KNOWN_KEYS: [&str; 13] = [
    "N",
    "mass_mp",
    "mass_kg",
    "kappa_N_per_m",
    "R_m",
    "T_K",
    "n_max",
    "alpha_max",
    "methods",
    "times",
    "output",
    "solver",
    "sweep",
];

pub const DEFAULT_POINTS: usize = 2000;
pub const DEFAULT_ALPHA_MAX: usize = 1;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Window {
    Auto,
    Fixed(f64),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeSpec {
    pub window: Window,
    pub points: usize,
}

impl Default for TimeSpec {
    fn default() -> Self {
        Self {
            window: Window::Auto,
            points: DEFAULT_POINTS,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OutputSpec {
    pub dir: PathBuf,
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepAxis {
    N,
    Temperature,
    Kappa,
    Radius,
    Mass,
    FixedDensityN,
}

impl SweepAxis {
    pub fn name(self) -> &'static str {
        match self {
            SweepAxis::N => "N",
            SweepAxis::Temperature => "T",
            SweepAxis::Kappa => "kappa",
            SweepAxis::Radius => "R",
            SweepAxis::Mass => "m",
            SweepAxis::FixedDensityN => "fixed-density-N",
        }
    }

    fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "N" => SweepAxis::N,
            "T" => SweepAxis::Temperature,
            "kappa" => SweepAxis::Kappa,
            "R" => SweepAxis::Radius,
            "m" => SweepAxis::Mass,
            "fixed-density-N" => SweepAxis::FixedDensityN,
            _ => return None,
        })
    }

    fn is_count(self) -> bool {
        matches!(self, SweepAxis::N | SweepAxis::FixedDensityN)
    }
}

/// One sweep axis with explicit values. Masses are in proton masses, the
/// other axes in SI units.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub axis: SweepAxis,
    pub values: Vec<f64>,
}

impl SweepSpec {
    pub fn new(axis: SweepAxis, values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(CliError::config("sweep.values", "must not be empty"));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(CliError::config("sweep.values", "must be finite"));
        }
        let up = values.windows(2).all(|w| w[0] < w[1]);
        let down = values.windows(2).all(|w| w[0] > w[1]);
        if !(up || down) {
            return Err(CliError::config(
                "sweep.values",
                "must be strictly monotone",
            ));
        }
        if axis.is_count() {
            if let Some(i) = values.iter().position(|v| v.fract() != 0.0 || *v < 3.0) {
                return Err(CliError::config(
                    format!("sweep.values[{i}]"),
                    "particle counts must be integers of at least 3",
                ));
            }
        }
        Ok(Self { axis, values })
    }

    /// Parameters of the sweep point `value`, starting from `base`.
    pub fn apply(&self, base: &RingParams, value: f64) -> ringdec_core::Result<RingParams> {
        match self.axis {
            SweepAxis::N => base.with_n(value as usize),
            SweepAxis::Temperature => base.with_temperature(value),
            SweepAxis::Kappa => base.with_kappa(value),
            SweepAxis::Radius => base.with_radius(value),
            SweepAxis::Mass => base.with_mass(value * M_P),
            SweepAxis::FixedDensityN => {
                let n = value as usize;
                base.with_n(n)?
                    .with_radius(base.radius() * n as f64 / base.n() as f64)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub params: RingParams,
    pub n_max: i64,
    pub alpha_max: usize,
    pub methods: Vec<Method>,
    pub times: TimeSpec,
    pub output: OutputSpec,
    pub solver: SolverConfig,
    pub sweep: Option<SweepSpec>,
}

impl RunConfig {
    /// Configuration with defaults around `params`.
    pub fn with_params(params: RingParams) -> Self {
        Self {
            params,
            n_max: params.n() as i64,
            alpha_max: DEFAULT_ALPHA_MAX,
            methods: Method::ALL.to_vec(),
            times: TimeSpec::default(),
            output: OutputSpec {
                dir: PathBuf::from("."),
                format: Format::Csv,
            },
            solver: SolverConfig::default(),
            sweep: None,
        }
    }

    pub fn from_value(doc: &Value) -> Result<Self> {
        let obj = doc
            .as_object()
            .ok_or_else(|| CliError::config("$", "config must be a JSON object"))?;
        if let Some(key) = obj.keys().find(|k| !KNOWN_KEYS.contains(&k.as_str())) {
            return Err(CliError::config(key.clone(), "unknown key"));
        }

        let n = count(obj, "N")?.ok_or_else(|| missing("N"))?;
        let (mass, mass_key) = match (obj.get("mass_mp"), obj.get("mass_kg")) {
            (Some(_), Some(_)) => {
                return Err(CliError::config(
                    "mass_kg",
                    "give either mass_mp or mass_kg, not both",
                ));
            }
            (Some(_), None) => (number(obj, "mass_mp")?.unwrap() * M_P, "mass_mp"),
            (None, Some(_)) => (number(obj, "mass_kg")?.unwrap(), "mass_kg"),
            (None, None) => return Err(missing("mass_mp")),
        };
        let kappa = number(obj, "kappa_N_per_m")?.ok_or_else(|| missing("kappa_N_per_m"))?;
        let radius = number(obj, "R_m")?.ok_or_else(|| missing("R_m"))?;
        let temperature = number(obj, "T_K")?.ok_or_else(|| missing("T_K"))?;
        let params = RingParams::new(n, mass, kappa, radius, temperature).map_err(|e| match e {
            ringdec_core::Error::InvalidParameter { field, reason } => {
                let key = match field {
                    "N" => "N",
                    "mass" => mass_key,
                    "kappa" => "kappa_N_per_m",
                    "R" => "R_m",
                    "T" => "T_K",
                    other => other,
                };
                CliError::config(key, reason)
            }
            other => CliError::Solver(other),
        })?;

        let mut cfg = RunConfig::with_params(params);
        if let Some(v) = count(obj, "n_max")? {
            if v < 1 {
                return Err(CliError::config("n_max", "must be at least 1"));
            }
            cfg.n_max = v as i64;
        }
        if let Some(v) = count(obj, "alpha_max")? {
            if v < 1 {
                return Err(CliError::config("alpha_max", "must be at least 1"));
            }
            cfg.alpha_max = v;
        }
        if let Some(v) = obj.get("methods") {
            cfg.methods = parse_methods(v)?;
        }
        if let Some(v) = obj.get("times") {
            cfg.times = parse_times(v)?;
        }
        if let Some(v) = obj.get("output") {
            cfg.output = parse_output(v)?;
        }
        if let Some(v) = obj.get("solver") {
            cfg.solver = parse_solver(v)?;
        }
        if let Some(v) = obj.get("sweep") {
            cfg.sweep = Some(parse_sweep(v)?);
        }
        Ok(cfg)
    }
}

pub fn load_config(path: &Path) -> Result<RunConfig> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::config("$", format!("cannot read {}: {e}", path.display())))?;
    let doc: Value = serde_json::from_str(&text)
        .map_err(|e| CliError::config("$", format!("invalid JSON: {e}")))?;
    RunConfig::from_value(&doc)
}

fn missing(key: &str) -> CliError {
    CliError::config(key, "required key is missing")
}

fn number(obj: &Map<String, Value>, key: &str) -> Result<Option<f64>> {
    match obj.get(key) {
        None => Ok(None),
        Some(v) => v
            .as_f64()
            .map(Some)
            .ok_or_else(|| CliError::config(key, "expected a number")),
    }
}

fn count(obj: &Map<String, Value>, key: &str) -> Result<Option<usize>> {
    match obj.get(key) {
        None => Ok(None),
        Some(v) => v
            .as_u64()
            .map(|u| Some(u as usize))
            .ok_or_else(|| CliError::config(key, "expected a non-negative integer")),
    }
}

pub fn parse_methods(v: &Value) -> Result<Vec<Method>> {
    let list = v
        .as_array()
        .ok_or_else(|| CliError::config("methods", "expected an array of method names"))?;
    if list.is_empty() {
        return Err(CliError::config("methods", "must not be empty"));
    }
    let mut out = Vec::new();
    for (i, item) in list.iter().enumerate() {
        let path = format!("methods[{i}]");
        let name = item
            .as_str()
            .ok_or_else(|| CliError::config(&path, "expected a string"))?;
        let m: Method = name
            .parse()
            .map_err(|_| CliError::config(&path, format!("unknown method `{name}`")))?;
        if out.contains(&m) {
            return Err(CliError::config(
                &path,
                format!("duplicate method `{name}`"),
            ));
        }
        out.push(m);
    }
    Ok(out)
}

fn parse_times(v: &Value) -> Result<TimeSpec> {
    let obj = v
        .as_object()
        .ok_or_else(|| CliError::config("times", "expected an object"))?;
    let mut spec = TimeSpec::default();
    for (key, val) in obj {
        let path = format!("times.{key}");
        match key.as_str() {
            "t_max_s" => {
                spec.window = match val {
                    Value::String(s) if s == "auto" => Window::Auto,
                    _ => match val.as_f64() {
                        Some(t) if t > 0.0 && t.is_finite() => Window::Fixed(t),
                        _ => {
                            return Err(CliError::config(
                                path,
                                "expected a positive number or \"auto\"",
                            ))
                        }
                    },
                }
            }
            "points" => {
                spec.points = match val.as_u64() {
                    Some(p) if p >= 2 => p as usize,
                    _ => return Err(CliError::config(path, "expected an integer of at least 2")),
                }
            }
            _ => return Err(CliError::config(path, "unknown key")),
        }
    }
    Ok(spec)
}

fn parse_output(v: &Value) -> Result<OutputSpec> {
    let obj = v
        .as_object()
        .ok_or_else(|| CliError::config("output", "expected an object"))?;
    let mut spec = OutputSpec {
        dir: PathBuf::from("."),
        format: Format::Csv,
    };
    for (key, val) in obj {
        let path = format!("output.{key}");
        match key.as_str() {
            "dir" => {
                spec.dir = val
                    .as_str()
                    .map(PathBuf::from)
                    .ok_or_else(|| CliError::config(path, "expected a path string"))?
            }
            "format" => {
                spec.format = match val.as_str() {
                    Some("csv") => Format::Csv,
                    Some("json") => Format::Json,
                    _ => return Err(CliError::config(path, "expected \"csv\" or \"json\"")),
                }
            }
            _ => return Err(CliError::config(path, "unknown key")),
        }
    }
    Ok(spec)
}

fn parse_solver(v: &Value) -> Result<SolverConfig> {
    let solver: SolverConfig =
        serde_json::from_value(v.clone()).map_err(|e| CliError::config("solver", e.to_string()))?;
    solver.validate().map_err(|e| match e {
        ringdec_core::Error::InvalidParameter { field, reason } => {
            CliError::config(format!("solver.{field}"), reason)
        }
        other => CliError::config("solver", other.to_string()),
    })?;
    Ok(solver)
}

fn parse_sweep(v: &Value) -> Result<SweepSpec> {
    let obj = v
        .as_object()
        .ok_or_else(|| CliError::config("sweep", "expected an object"))?;
    if let Some(key) = obj.keys().find(|k| *k != "axis" && *k != "values") {
        return Err(CliError::config(format!("sweep.{key}"), "unknown key"));
    }
    let axis = obj
        .get("axis")
        .and_then(Value::as_str)
        .and_then(SweepAxis::parse)
        .ok_or_else(|| {
            CliError::config(
                "sweep.axis",
                "expected one of N, T, kappa, R, m, fixed-density-N",
            )
        })?;
    let values = obj
        .get("values")
        .and_then(Value::as_array)
        .ok_or_else(|| CliError::config("sweep.values", "expected an array of numbers"))?
        .iter()
        .enumerate()
        .map(|(i, x)| {
            x.as_f64()
                .ok_or_else(|| CliError::config(format!("sweep.values[{i}]"), "expected a number"))
        })
        .collect::<Result<Vec<f64>>>()?;
    SweepSpec::new(axis, values)
}
