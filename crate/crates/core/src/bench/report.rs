//! Text rendering of the CSV reports.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::{Error, Result};

/// Aligns a simple CSV (no quoted commas in numeric tables) into columns.
/// Quoted fields are kept whole.
pub fn render_table(csv: &str) -> String {
    let rows: Vec<Vec<String>> = csv.lines().filter(|l| !l.is_empty()).map(split_csv_line).collect();
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> =
        (0..cols).map(|c| rows.iter().filter_map(|r| r.get(c)).map(|s| s.chars().count()).max().unwrap_or(0)).collect();
    let mut out = String::new();
    for (i, r) in rows.iter().enumerate() {
        let line: Vec<String> = r
            .iter()
            .enumerate()
            .map(|(c, s)| {
                let cell = if s.is_empty() && i > 0 { "-" } else { s.as_str() };
                if c == 0 {
                    format!("{cell:<w$}", w = widths[c])
                } else {
                    format!("{cell:>w$}", w = widths[c])
                }
            })
            .collect();
        let _ = writeln!(out, "{}", line.join("  ").trim_end());
    }
    out
}

fn split_csv_line(line: &str) -> Vec<String> {
    let mut fields = Vec::new();
    let mut cur = String::new();
    let mut quoted = false;
    let mut chars = line.chars().peekable();
    while let Some(c) = chars.next() {
        match c {
            '"' if quoted && chars.peek() == Some(&'"') => {
                cur.push('"');
                chars.next();
            }
            '"' => quoted = !quoted,
            ',' if !quoted => fields.push(std::mem::take(&mut cur)),
            _ => cur.push(c),
        }
    }
    fields.push(cur);
    fields
}

/// Report for an output directory: the summary table, the reference optimum
/// when present, and the per-run table. Also written to `report.txt`.
pub fn report_dir(out: &Path) -> Result<String> {
    let summary = fs::read_to_string(out.join("summary.csv"))
        .map_err(|e| Error::Config(format!("no summary.csv in {}: {e}", out.display())))?;
    let mut text = String::new();
    if let Ok(cfg) = fs::read_to_string(out.join("config.toml")) {
        if let Some(name) = cfg.lines().find_map(|l| l.strip_prefix("name = ")) {
            let _ = writeln!(text, "experiment {}\n", name.trim_matches('"'));
        }
    }
    text.push_str("first-passage iterations (medians over instances)\n");
    text.push_str(&render_table(&summary));
    if let Ok(r) = fs::read_to_string(out.join("reference.toml")) {
        let value = |key: &str| r.lines().find_map(|l| l.strip_prefix(key)).map(|v| v.trim().trim_matches('"').to_string());
        if let (Some(f), Some(it), Some(term)) = (value("f_star = "), value("iterations = "), value("termination = ")) {
            let _ = writeln!(text, "\nreference optimum {f} ({it} iterations, {term})");
        }
    }
    if let Ok(runs) = fs::read_to_string(out.join("runs.csv")) {
        text.push_str("\nruns\n");
        text.push_str(&render_table(&runs));
    }
    fs::write(out.join("report.txt"), &text)?;
    Ok(text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn aligns_columns() {
        let t = render_table("solver,pass\nritz,12\nabbmin1,\n");
        let lines: Vec<&str> = t.lines().collect();
        assert_eq!(lines[0], "solver   pass");
        assert_eq!(lines[1], "ritz       12");
        assert_eq!(lines[2], "abbmin1     -");
    }

    #[test]
    fn quoted_fields_stay_whole() {
        assert_eq!(split_csv_line(r#"a,"b, c",d"#), vec!["a", "b, c", "d"]);
        assert_eq!(split_csv_line(r#""say ""hi""",x"#), vec![r#"say "hi""#, "x"]);
    }

    #[test]
    fn missing_directory_is_an_error() {
        let dir = tempfile::tempdir().unwrap();
        assert!(report_dir(dir.path()).is_err());
    }
}
