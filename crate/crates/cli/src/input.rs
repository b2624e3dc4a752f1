use std::fmt;
use std::path::{Path, PathBuf};

use num_rational::Ratio;
use perfectoid_core::arith::{AnyElement, FieldConfig};
use perfectoid_core::Error;
use serde_json::Value;

use crate::args::Global;

pub const FIXTURES_ENV: &str = "PERFECTOID_FIXTURES";

/// Configuration used when neither the flags nor the input fix one.
pub const DEFAULT_CONFIG: (u32, u32, u32) = (3, 8, 2);

#[derive(Debug)]
pub enum CliError {
    /// Bad invocation or unreadable input; exit code 2.
    Usage(String),
    Io(String),
    Domain(Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Io(_) => "io",
            CliError::Domain(e) => e.kind(),
        }
    }

    pub fn to_json(&self) -> Value {
        serde_json::json!({ "error": { "kind": self.kind(), "message": self.to_string() } })
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Io(m) => f.write_str(m),
            CliError::Domain(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Domain(e)
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

pub fn fixtures_dir() -> PathBuf {
    match std::env::var_os(FIXTURES_ENV) {
        Some(d) => PathBuf::from(d),
        None => Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/fixtures"),
    }
}

/// An input argument: inline JSON, a path, or the name of a fixture.
pub enum Source {
    Json(Value),
    Text(String),
}

fn parse_json(text: &str, origin: &str) -> CliResult<Value> {
    serde_json::from_str(text).map_err(|e| CliError::Usage(format!("malformed JSON in {origin}: {e}")))
}

pub fn resolve_path(arg: &str) -> Option<PathBuf> {
    let direct = PathBuf::from(arg);
    if direct.is_file() {
        return Some(direct);
    }
    let dir = fixtures_dir();
    [dir.join(arg), dir.join(format!("{arg}.json"))].into_iter().find(|p| p.is_file())
}

pub fn source(arg: &str) -> CliResult<Source> {
    let trimmed = arg.trim_start();
    if trimmed.starts_with('{') || trimmed.starts_with('[') {
        return Ok(Source::Json(parse_json(arg, "inline argument")?));
    }
    match resolve_path(arg) {
        Some(path) => {
            let text = std::fs::read_to_string(&path)
                .map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))?;
            Ok(Source::Json(parse_json(&text, &path.display().to_string())?))
        }
        None => Ok(Source::Text(arg.to_string())),
    }
}

pub fn json(arg: &str) -> CliResult<Value> {
    match source(arg)? {
        Source::Json(v) => Ok(v),
        Source::Text(t) => Err(CliError::Io(format!("no such file or fixture: {t}"))),
    }
}

/// The configuration named entirely by flags, if any flag is given; gaps
/// are filled from `base`.
pub fn flag_config(g: &Global, base: Option<FieldConfig>) -> CliResult<Option<FieldConfig>> {
    if g.p.is_none() && g.prec.is_none() && g.dencap.is_none() {
        return Ok(base);
    }
    let (p0, n0, m0) = match base {
        Some(c) => (c.p(), c.prec(), c.dencap()),
        None => DEFAULT_CONFIG,
    };
    Ok(Some(FieldConfig::new(g.p.unwrap_or(p0), g.prec.unwrap_or(n0), g.dencap.unwrap_or(m0))?))
}

pub fn config_or_default(g: &Global, base: Option<FieldConfig>) -> CliResult<FieldConfig> {
    match flag_config(g, base)? {
        Some(c) => Ok(c),
        None => {
            let (p, n, m) = DEFAULT_CONFIG;
            Ok(FieldConfig::new(p, n, m)?)
        }
    }
}

/// Rejects inputs whose prime disagrees with `--p`.
pub fn check_p(g: &Global, cfg: FieldConfig) -> CliResult<()> {
    match g.p {
        Some(p) if p != cfg.p() => Err(Error::ConfigMismatch(format!("--p {p} but the input has p = {}", cfg.p())).into()),
        _ => Ok(()),
    }
}

/// Element from JSON, or from the text form under the flag configuration.
pub fn element(arg: &str, g: &Global) -> CliResult<AnyElement> {
    let x = match source(arg)? {
        Source::Json(v) => AnyElement::from_json_value(&v)?,
        Source::Text(t) => {
            if g.p.is_none() {
                return Err(CliError::Io(format!("no such file or fixture: {t} (text elements need --p)")));
            }
            let cfg = config_or_default(g, None)?;
            AnyElement::from_text(&t, cfg, None)?
        }
    };
    check_p(g, x.config())?;
    Ok(x)
}

/// First element configuration found anywhere inside a JSON value.
pub fn find_config(v: &Value) -> Option<FieldConfig> {
    match v {
        Value::Object(map) => {
            if map.contains_key("kind") && map.contains_key("terms") {
                if let Ok(x) = AnyElement::from_json_value(v) {
                    return Some(x.config());
                }
            }
            map.values().find_map(find_config)
        }
        Value::Array(items) => items.iter().find_map(find_config),
        _ => None,
    }
}

pub fn ratio(s: &str, what: &str) -> CliResult<Ratio<i64>> {
    s.trim()
        .parse::<Ratio<i64>>()
        .map_err(|e| CliError::Usage(format!("--{what} {s:?} is not a rational number: {e}")))
}
