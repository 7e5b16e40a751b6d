//! Run configuration: defaults, a flat `key = value` file, command-line
//! overrides, in increasing precedence.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;
use std::path::{Path, PathBuf};

use succoef_core::{ClassParams, Family, GridSize};

/// Bad input from the user; reported with exit status 2.
#[derive(Debug, Clone, PartialEq)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn usage<T>(msg: impl Into<String>) -> Result<T, UsageError> {
    Err(UsageError(msg.into()))
}

/// Subcommand.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    /// Closed-form intervals.
    Bounds,
    /// Grid optimization against the closed form.
    Verify,
    /// `verify` over a parameter lattice.
    Sweep,
    /// Coefficients of the extremal functions.
    Extremal,
    /// Random no-violation sampling.
    Sample,
}

impl Command {
    /// Subcommand name.
    pub fn name(self) -> &'static str {
        match self {
            Command::Bounds => "bounds",
            Command::Verify => "verify",
            Command::Sweep => "sweep",
            Command::Extremal => "extremal",
            Command::Sample => "sample",
        }
    }
}

/// Output encoding.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    /// Comma-separated with a header row.
    Csv,
    /// One JSON document.
    Json,
    /// Aligned text for terminals.
    Table,
}

/// Fully resolved settings for one run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    /// Which subcommand.
    pub command: Command,
    /// Class family.
    pub family: Family,
    /// Order `α`.
    pub alpha: f64,
    /// Spiral angle `γ`.
    pub gamma: f64,
    /// Ozaki parameter `λ`.
    pub lambda: f64,
    /// Sweep values of `α`.
    pub alphas: Vec<f64>,
    /// Sweep values of `γ`.
    pub gammas: Vec<f64>,
    /// Sweep values of `λ`.
    pub lambdas: Vec<f64>,
    /// Optimizer grid.
    pub grid: GridSize,
    /// Series truncation order for extremal tables.
    pub order: usize,
    /// Residual tolerance.
    pub tol: f64,
    /// Sampling seed.
    pub seed: u64,
    /// Number of random samples.
    pub samples: usize,
    /// Maximum atoms per sample.
    pub atoms: usize,
    /// Output file, stdout if absent.
    pub out: Option<PathBuf>,
    /// Output encoding.
    pub format: Format,
}

/// Keys accepted on the command line and in config files.
pub const KEYS: &[&str] = &[
    "family", "alpha", "gamma", "lambda", "alphas", "gammas", "lambdas", "grid", "order", "tol", "seed", "samples",
    "atoms", "out", "format",
];

const DEFAULTS: &[(&str, &str)] = &[
    ("family", "spirallike"),
    ("alpha", "0"),
    ("gamma", "0"),
    ("lambda", "1"),
    ("grid", "201,101,256"),
    ("order", "12"),
    ("tol", "1e-3"),
    ("seed", "0"),
    ("samples", "500"),
    ("atoms", "6"),
    ("format", "csv"),
];

/// Parses a flat `key = value` file; `#` starts a comment.
pub fn parse_config_text(text: &str) -> Result<BTreeMap<String, String>, UsageError> {
    let mut out = BTreeMap::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((k, v)) = line.split_once('=') else {
            return usage(format!("config line {}: expected key = value", n + 1));
        };
        let key = k.trim().replace('-', "_");
        if !KEYS.contains(&key.as_str()) {
            return usage(format!("config line {}: unknown key '{}'", n + 1, k.trim()));
        }
        out.insert(key, v.trim().to_string());
    }
    Ok(out)
}

/// Reads and parses a config file.
pub fn read_config_file(path: &Path) -> Result<BTreeMap<String, String>, UsageError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| UsageError(format!("cannot read config {}: {e}", path.display())))?;
    parse_config_text(&text)
}

/// Parses a real number. Accepts plain decimals, `p/q`, and multiples of π
/// such as `pi`, `-pi/3`, `2*pi/3`, `0.25pi`.
pub fn parse_real(s: &str) -> Result<f64, UsageError> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect::<String>().to_lowercase();
    let bad = || UsageError(format!("cannot parse number '{s}'"));
    if t.is_empty() {
        return Err(bad());
    }
    let (num, den) = match t.split_once('/') {
        Some((a, b)) => (a, Some(b)),
        None => (t.as_str(), None),
    };
    let numerator = if let Some(coef) = num.strip_suffix("pi").or_else(|| num.strip_suffix("π")) {
        let coef = coef.strip_suffix('*').unwrap_or(coef);
        let k = match coef {
            "" | "+" => 1.0,
            "-" => -1.0,
            c => c.parse::<f64>().map_err(|_| bad())?,
        };
        k * PI
    } else {
        num.parse::<f64>().map_err(|_| bad())?
    };
    let value = match den {
        None => numerator,
        Some(d) => {
            let d: f64 = d.parse().map_err(|_| bad())?;
            if d == 0.0 {
                return Err(bad());
            }
            numerator / d
        }
    };
    if !value.is_finite() {
        return Err(bad());
    }
    Ok(value)
}

/// A list `a,b,c` or an inclusive range `start:stop:count`; empty means no values.
pub fn parse_list(s: &str) -> Result<Vec<f64>, UsageError> {
    let t = s.trim();
    if t.is_empty() {
        return Ok(Vec::new());
    }
    let parts: Vec<&str> = t.split(':').collect();
    match parts.as_slice() {
        [_] => t.split(',').map(parse_real).collect(),
        [a, b, n] => {
            let (a, b) = (parse_real(a)?, parse_real(b)?);
            let n: usize = n.trim().parse().map_err(|_| UsageError(format!("bad count in range '{s}'")))?;
            Ok(match n {
                0 => Vec::new(),
                1 => vec![a],
                _ => (0..n)
                    .map(|i| if i + 1 == n { b } else { a + (b - a) * i as f64 / (n - 1) as f64 })
                    .collect(),
            })
        }
        _ => usage(format!("range must be start:stop:count, got '{s}'")),
    }
}

/// `C,R,T` grid sizes, each at least 2.
pub fn parse_grid(s: &str) -> Result<GridSize, UsageError> {
    let v: Vec<usize> = s
        .split(',')
        .map(|p| p.trim().parse::<usize>())
        .collect::<Result<_, _>>()
        .map_err(|_| UsageError(format!("grid must be C,R,T integers, got '{s}'")))?;
    match v.as_slice() {
        [c, r, t] => GridSize::new(*c, *r, *t).map_err(|e| UsageError(e.to_string())),
        _ => usage(format!("grid must have three sizes, got '{s}'")),
    }
}

/// `spirallike`, `convex` or `ozaki`.
pub fn parse_family(s: &str) -> Result<Family, UsageError> {
    match s.trim().to_lowercase().as_str() {
        "spirallike" => Ok(Family::Spirallike),
        "convex" => Ok(Family::ConvexGamma),
        "ozaki" => Ok(Family::OzakiG),
        other => usage(format!("unknown family '{other}' (spirallike, convex, ozaki)")),
    }
}

fn parse_format(s: &str) -> Result<Format, UsageError> {
    match s.trim().to_lowercase().as_str() {
        "csv" => Ok(Format::Csv),
        "json" => Ok(Format::Json),
        "table" => Ok(Format::Table),
        other => usage(format!("unknown format '{other}' (csv, json, table)")),
    }
}

fn parse_int<T: std::str::FromStr>(key: &str, s: &str) -> Result<T, UsageError> {
    s.trim().parse().map_err(|_| UsageError(format!("{key}: expected an integer, got '{s}'")))
}

impl RunConfig {
    /// Merges defaults, `file` and `cli` (highest precedence) and validates.
    pub fn resolve(
        command: Command,
        file: &BTreeMap<String, String>,
        cli: &BTreeMap<String, String>,
    ) -> Result<Self, UsageError> {
        let mut m: BTreeMap<String, String> = DEFAULTS.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect();
        m.extend(file.iter().map(|(k, v)| (k.clone(), v.clone())));
        m.extend(cli.iter().map(|(k, v)| (k.clone(), v.clone())));
        let get = |k: &str| m.get(k).map(String::as_str);

        let alpha = parse_real(get("alpha").unwrap_or("0"))?;
        let gamma = parse_real(get("gamma").unwrap_or("0"))?;
        let lambda = parse_real(get("lambda").unwrap_or("1"))?;
        let list_or = |k: &str, single: f64| match get(k) {
            Some(s) => parse_list(s),
            None => Ok(vec![single]),
        };
        let order: usize = parse_int("order", get("order").unwrap_or("12"))?;
        if order < 4 {
            return usage("order must be at least 4");
        }
        let tol = parse_real(get("tol").unwrap_or("1e-3"))?;
        if tol <= 0.0 {
            return usage("tol must be positive");
        }
        let samples: usize = parse_int("samples", get("samples").unwrap_or("500"))?;
        let atoms: usize = parse_int("atoms", get("atoms").unwrap_or("6"))?;
        if samples == 0 || atoms == 0 {
            return usage("samples and atoms must be at least 1");
        }
        let cfg = RunConfig {
            command,
            family: parse_family(get("family").unwrap_or("spirallike"))?,
            alpha,
            gamma,
            lambda,
            alphas: list_or("alphas", alpha)?,
            gammas: list_or("gammas", gamma)?,
            lambdas: list_or("lambdas", lambda)?,
            grid: parse_grid(get("grid").unwrap_or("201,101,256"))?,
            order,
            tol,
            seed: parse_int("seed", get("seed").unwrap_or("0"))?,
            samples,
            atoms,
            out: get("out").filter(|s| !s.is_empty()).map(PathBuf::from),
            format: parse_format(get("format").unwrap_or("csv"))?,
        };
        if command != Command::Sweep {
            cfg.params()?;
        }
        Ok(cfg)
    }

    /// Class parameters from `family`, `alpha`, `gamma`, `lambda`.
    pub fn params(&self) -> Result<ClassParams, UsageError> {
        params_for(self.family, self.alpha, self.gamma, self.lambda)
    }
}

/// Validated class parameters for one family.
pub fn params_for(family: Family, alpha: f64, gamma: f64, lambda: f64) -> Result<ClassParams, UsageError> {
    let p = match family {
        Family::Spirallike => ClassParams::spirallike(alpha, gamma),
        Family::ConvexGamma => ClassParams::convex(alpha, gamma),
        Family::OzakiG => ClassParams::ozaki(lambda),
    };
    p.map_err(|e| UsageError(e.to_string()))
}
