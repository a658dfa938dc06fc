//! Plain-text sweep configuration: `key = value` lines, `#` starts a comment.
//!
//! ```text
//! sweep  = V0          # one of E, V0, a, x0
//! start  = 0
//! stop   = 10
//! step   = 0.01
//! E      = 2
//! a      = 0.5
//! x0     = -1
//! engine = matcher     # matcher, oracle, analytic_kg, analytic_schrodinger
//! ```

use std::collections::HashMap;
use std::fs;
use std::path::Path;

use super::{Engine, ScanSpec, SweepVariable};
use crate::barrier::ScatterParams;
use crate::error::{Error, Result};

/// `a` used by the analytic engines when the config leaves it out.
const ANALYTIC_SMOOTHNESS: f64 = 1e-3;

fn canonical_key(key: &str) -> Option<&'static str> {
    Some(match key {
        "sweep" => "sweep",
        "start" => "start",
        "stop" => "stop",
        "step" => "step",
        "engine" => "engine",
        "E" | "energy" => "E",
        "V0" | "height" => "V0",
        "a" | "smoothness" => "a",
        "x0" | "left_edge" => "x0",
        _ => return None,
    })
}

pub fn parse_config(text: &str) -> Result<ScanSpec> {
    let mut values: HashMap<&'static str, (usize, String)> = HashMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let bad = |message: String| Error::Config {
            line: line_no,
            message,
        };
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| bad(format!("expected `key = value`, got `{line}`")))?;
        let key = key.trim();
        let value = value.trim();
        let canon = canonical_key(key).ok_or_else(|| bad(format!("unknown key `{key}`")))?;
        if value.is_empty() {
            return Err(bad(format!("empty value for `{key}`")));
        }
        if values.insert(canon, (line_no, value.to_string())).is_some() {
            return Err(bad(format!("duplicate key `{key}`")));
        }
    }

    let missing = |key: &str| Error::Config {
        line: 0,
        message: format!("missing key `{key}`"),
    };
    let number = |key: &'static str| -> Result<Option<f64>> {
        match values.get(key) {
            None => Ok(None),
            Some((line, v)) => v.parse::<f64>().map(Some).map_err(|e| Error::Config {
                line: *line,
                message: format!("`{key} = {v}`: {e}"),
            }),
        }
    };

    let (sweep_line, sweep) = values.get("sweep").ok_or_else(|| missing("sweep"))?;
    let variable: SweepVariable = sweep.parse().map_err(|message| Error::Config {
        line: *sweep_line,
        message,
    })?;
    let engine = match values.get("engine") {
        None => Engine::Matcher,
        Some((line, v)) => v.parse().map_err(|message| Error::Config {
            line: *line,
            message,
        })?,
    };
    let start = number("start")?.ok_or_else(|| missing("start"))?;
    let stop = number("stop")?.ok_or_else(|| missing("stop"))?;
    let step = number("step")?.ok_or_else(|| missing("step"))?;

    let analytic = matches!(engine, Engine::AnalyticKg | Engine::AnalyticSchrodinger);
    let mut fixed = [0.0; 4];
    for (slot, (key, var)) in fixed.iter_mut().zip([
        ("E", SweepVariable::Energy),
        ("V0", SweepVariable::Height),
        ("a", SweepVariable::Smoothness),
        ("x0", SweepVariable::LeftEdge),
    ]) {
        *slot = match number(key)? {
            Some(v) => v,
            None if var == variable => start,
            None if key == "a" && analytic => ANALYTIC_SMOOTHNESS,
            None => return Err(missing(key)),
        };
    }
    let spec = ScanSpec {
        variable,
        start,
        stop,
        step,
        fixed: ScatterParams {
            energy: fixed[0],
            height: fixed[1],
            smoothness: fixed[2],
            left_edge: fixed[3],
        },
        engine,
    };
    spec.validate().map_err(|e| Error::Config {
        line: 0,
        message: e.to_string(),
    })?;
    Ok(spec)
}

pub fn read_config(path: &Path) -> Result<ScanSpec> {
    parse_config(&fs::read_to_string(path)?)
}
