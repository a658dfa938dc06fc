use std::fs;
use std::io::{self, Write};
use std::path::Path;

use super::{Engine, ScanOutcome, ScanRow};
use crate::error::{Error, Result};

pub const CSV_HEADER: &str = "swept_value,R,T,unitarity_residual,engine";

/// Formats `v` with 12 significant digits, `%.12g` style.
pub fn format_sig(v: f64) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    if !v.is_finite() {
        return format!("{v}");
    }
    let sci = format!("{v:.11e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..12).contains(&exp) {
        return format!("{}e{exp}", strip_zeros(mantissa));
    }
    let decimals = (11 - exp) as usize;
    strip_zeros(&format!("{v:.decimals$}")).to_string()
}

fn strip_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

fn sanitize(reason: &str) -> String {
    reason.replace(['\n', '\r'], " ")
}

/// Writes the header, then rows and `# skipped` comment lines merged in
/// ascending swept order.
pub fn write_csv<W: Write>(outcome: &ScanOutcome, mut out: W) -> io::Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    let mut skipped = outcome.skipped.iter().peekable();
    for row in &outcome.rows {
        while let Some(s) = skipped.next_if(|s| s.swept_value < row.swept_value) {
            writeln!(
                out,
                "# skipped swept_value={} reason={}",
                format_sig(s.swept_value),
                sanitize(&s.reason)
            )?;
        }
        writeln!(
            out,
            "{},{},{},{},{}",
            format_sig(row.swept_value),
            format_sig(row.reflection),
            format_sig(row.transmission),
            format_sig(row.unitarity_residual),
            row.engine
        )?;
    }
    for s in skipped {
        writeln!(
            out,
            "# skipped swept_value={} reason={}",
            format_sig(s.swept_value),
            sanitize(&s.reason)
        )?;
    }
    Ok(())
}

pub fn emit_csv(outcome: &ScanOutcome, path: &Path) -> Result<()> {
    let mut buf = Vec::new();
    write_csv(outcome, &mut buf)?;
    fs::write(path, buf)?;
    Ok(())
}

/// Parses rows written by [`write_csv`]; comment lines are ignored.
pub fn parse_csv(text: &str) -> Result<Vec<ScanRow>> {
    let mut rows = Vec::new();
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, h)) if h == CSV_HEADER => {}
        _ => {
            return Err(Error::Config {
                line: 1,
                message: format!("expected header `{CSV_HEADER}`"),
            })
        }
    }
    for (i, line) in lines {
        if line.starts_with('#') || line.trim().is_empty() {
            continue;
        }
        let bad = |message: String| Error::Config {
            line: i + 1,
            message,
        };
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 5 {
            return Err(bad(format!("expected 5 fields, found {}", fields.len())));
        }
        let num = |s: &str| s.parse::<f64>().map_err(|e| bad(format!("`{s}`: {e}")));
        rows.push(ScanRow {
            swept_value: num(fields[0])?,
            reflection: num(fields[1])?,
            transmission: num(fields[2])?,
            unitarity_residual: num(fields[3])?,
            engine: fields[4].parse::<Engine>().map_err(bad)?,
        });
    }
    Ok(rows)
}

pub fn read_csv(path: &Path) -> Result<Vec<ScanRow>> {
    parse_csv(&fs::read_to_string(path)?)
}
