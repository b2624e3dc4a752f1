use std::time::Instant;

use perfectoid_core::suite::{self, Outcome, DEFAULT_SEED};
use serde_json::{json, Value};

use crate::fixtures::round_trip;
use crate::input::fixtures_dir;

pub const ALL: [u32; 9] = [1, 2, 3, 4, 5, 6, 7, 8, 9];

/// Commands that criterion 9 runs twice to compare output bytes.
const DETERMINISM_RUNS: &[&[&str]] = &[
    &["sharp", "elem-t"],
    &["newton", "poly-x2-minus-p"],
    &["root", "poly-x2-minus-p"],
    &["transfer", "--n", "2", "poly-x2-minus-t"],
    &["theta", "witt-t-one"],
    &["approx", "--c", "2", "--eps", "1/3", "tate-linear3"],
    &["disc", "eval", "poly-x2-minus-p", "--point", "point-gauss"],
    &["toric", "sections", "fan-pn2", "divisor-pn2-hyperplane"],
    &["suite", "--only", "1,5"],
];

fn invoke(args: &[&str]) -> (i32, Vec<u8>) {
    let argv = std::iter::once("perfectoid").chain(args.iter().copied());
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = crate::run(argv, &mut out, &mut err);
    (code, out)
}

fn cli_criterion(seed: u64) -> Outcome {
    let start = Instant::now();
    let mut notes = Vec::new();
    let mut ok = true;
    match round_trip(&fixtures_dir()) {
        Ok(r) => {
            ok &= r.failures.is_empty() && r.checked > 0;
            notes.push(format!("{} fixtures round-trip, {} failures", r.checked, r.failures.len()));
            if let Some(f) = r.failures.first() {
                notes.push(f.clone());
            }
        }
        Err(e) => {
            ok = false;
            notes.push(format!("fixtures: {e}"));
        }
    }
    let mut differ = Vec::new();
    for args in DETERMINISM_RUNS {
        let a = invoke(args);
        let b = invoke(args);
        if a != b || a.0 != 0 {
            differ.push(args.join(" "));
        }
    }
    ok &= differ.is_empty();
    notes.push(format!("{} commands deterministic with exit 0: {}", DETERMINISM_RUNS.len(), differ.is_empty()));
    // the suite's exit status must agree with its own table
    let seed_s = seed.to_string();
    let (code, out) = invoke(&["suite", "--only", "1", "--seed", &seed_s]);
    let table: Value = serde_json::from_slice(&out).unwrap_or(Value::Null);
    let agrees = table["passed"].as_bool().map(|p| (code == 0) == p).unwrap_or(false);
    let (bad_code, _) = invoke(&["suite", "--only", "10"]);
    ok &= agrees && bad_code == 2;
    notes.push(format!("suite exit code agrees with table: {agrees}"));
    let elapsed = start.elapsed();
    let limit = suite::limit_secs(9);
    Outcome {
        id: 9,
        title: suite::title(9).to_string(),
        passed: ok,
        within_limit: elapsed.as_secs_f64() < limit as f64,
        limit_secs: limit,
        detail: notes.join("; "),
        elapsed,
    }
}

/// Runs the selected criteria, core ones in parallel, and reports them in
/// order of id.
pub fn run(only: &[u32], seed: Option<u64>) -> Result<Vec<Outcome>, u32> {
    let seed = seed.unwrap_or(DEFAULT_SEED);
    let ids: Vec<u32> = if only.is_empty() { ALL.to_vec() } else { only.to_vec() };
    if let Some(&bad) = ids.iter().find(|i| !ALL.contains(i)) {
        return Err(bad);
    }
    let mut outcomes: Vec<Outcome> = std::thread::scope(|s| {
        let handles: Vec<_> = ids
            .iter()
            .filter(|&&i| i != 9)
            .map(|&i| s.spawn(move || suite::run(i, seed)))
            .collect();
        handles.into_iter().map(|h| h.join().expect("criterion thread panicked")).collect()
    });
    if ids.contains(&9) {
        outcomes.push(cli_criterion(seed));
    }
    outcomes.sort_by_key(|o| o.id);
    outcomes.dedup_by_key(|o| o.id);
    Ok(outcomes)
}

pub fn to_json(outcomes: &[Outcome], seed: u64) -> Value {
    json!({
        "seed": seed,
        "passed": outcomes.iter().all(Outcome::ok),
        "criteria": outcomes,
    })
}

pub fn to_text(outcomes: &[Outcome]) -> String {
    let mut lines: Vec<String> = outcomes
        .iter()
        .map(|o| {
            let status = match (o.passed, o.within_limit) {
                (true, true) => "PASS",
                (true, false) => "SLOW",
                _ => "FAIL",
            };
            format!("{:>2} {status} {:<28} {}", o.id, o.title, o.detail)
        })
        .collect();
    let all = outcomes.iter().all(Outcome::ok);
    lines.push(format!("overall {}", if all { "PASS" } else { "FAIL" }));
    lines.join("\n")
}
