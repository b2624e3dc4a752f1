//! Canonical printing of fixture files.
//!
//! The fixture kind is read from the file name prefix: `elem-`, `poly-`,
//! `witt-`, `tate-`, `fan-`, `divisor-<fan>-`, `point-`, `subset-`.
//! A divisor file `divisor-pn2-hyperplane.json` is read against `fan-pn2.json`.

use std::path::{Path, PathBuf};

use perfectoid_core::adicdisc::{AdicPoint, RationalSubset};
use perfectoid_core::arith::AnyElement;
use perfectoid_core::polyroots::AnyPoly;
use perfectoid_core::tatealg::{AnyTate, HomogeneousElement};
use perfectoid_core::tiltkit::WittVector;
use perfectoid_core::toric::{Fan, TWeilDivisor};
use serde_json::Value;

use crate::input::{config_or_default, find_config, CliError, CliResult};
use crate::args::{Format, Global};

pub fn canonical_string(v: &Value) -> String {
    let mut s = serde_json::to_string(v).expect("serializable");
    s.push('\n');
    s
}

fn read(path: &Path) -> CliResult<Value> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("malformed JSON in {}: {e}", path.display())))
}

fn no_flags() -> Global {
    Global { p: None, prec: None, dencap: None, seed: None, format: Format::Json }
}

/// Parses a fixture and prints it back.
pub fn reprint(path: &Path) -> CliResult<String> {
    let name = path.file_name().and_then(|n| n.to_str()).unwrap_or_default();
    let v = read(path)?;
    let out = match name.split('-').next().unwrap_or_default() {
        "elem" => AnyElement::from_json_value(&v)?.to_json_value(),
        "poly" => AnyPoly::from_json_value(&v)?.to_json_value(),
        "witt" => WittVector::from_json_value(&v)?.to_json_value(),
        "fan" => Fan::from_json_value(&v)?.to_json_value(),
        "tate" => {
            let cfg = config_or_default(&no_flags(), None)?;
            let (t, d) = AnyTate::from_json_value(&v, Some((cfg, 1)))?;
            match (t, d) {
                (AnyTate::Untilt(x), Some(d)) => HomogeneousElement::new(x, d)?.to_json_value(),
                (AnyTate::Tilt(x), Some(d)) => HomogeneousElement::new(x, d)?.to_json_value(),
                (AnyTate::Untilt(x), None) => without_degree(x.to_json_value()),
                (AnyTate::Tilt(x), None) => without_degree(x.to_json_value()),
            }
        }
        "divisor" => {
            let fan_name = name.split('-').nth(1).unwrap_or_default();
            let fan = Fan::from_json_value(&read(&path.with_file_name(format!("fan-{fan_name}.json")))?)?;
            TWeilDivisor::from_json_value(&v, &fan)?.to_json_value()
        }
        "point" => {
            let cfg = config_or_default(&no_flags(), find_config(&v))?;
            AdicPoint::from_json_value(&v, cfg)?.to_json_value()
        }
        "subset" => RationalSubset::from_json_value(&v)?.to_json_value(),
        _ => return Err(CliError::Usage(format!("unknown fixture kind for {name}"))),
    };
    Ok(canonical_string(&out))
}

fn without_degree(mut v: Value) -> Value {
    v["degree"] = Value::Null;
    v
}

pub fn list(dir: &Path) -> CliResult<Vec<PathBuf>> {
    let entries = std::fs::read_dir(dir).map_err(|e| CliError::Io(format!("cannot list {}: {e}", dir.display())))?;
    let mut files: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    Ok(files)
}

#[derive(Debug)]
pub struct RoundTrip {
    pub checked: usize,
    pub failures: Vec<String>,
}

/// Checks that every fixture reprints to its exact bytes.
pub fn round_trip(dir: &Path) -> CliResult<RoundTrip> {
    let files = list(dir)?;
    let mut failures = Vec::new();
    for f in &files {
        let original = std::fs::read_to_string(f).map_err(|e| CliError::Io(e.to_string()))?;
        let name = f.file_name().unwrap_or_default().to_string_lossy().into_owned();
        match reprint(f) {
            Ok(s) if s == original => {}
            Ok(_) => failures.push(format!("{name}: reprint differs")),
            Err(e) => failures.push(format!("{name}: {e}")),
        }
    }
    Ok(RoundTrip { checked: files.len(), failures })
}
