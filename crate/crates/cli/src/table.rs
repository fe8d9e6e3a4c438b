use std::fmt::Write;

use sod_core::graded::GradedDims;

/// Right-aligned columns, one line per row, each line indented by `indent`.
pub fn matrix(rows: &[Vec<i64>], indent: &str) -> String {
    let width = rows.iter().flatten().map(|x| x.to_string().len()).max().unwrap_or(1);
    let mut out = String::new();
    for row in rows {
        let cells: Vec<String> = row.iter().map(|x| format!("{x:>width$}")).collect();
        writeln!(out, "{indent}[ {} ]", cells.join("  ")).unwrap();
    }
    out
}

/// Two aligned columns under a header line.
pub fn rows(header: &[&str], body: &[Vec<String>]) -> String {
    let n = header.len();
    let widths: Vec<usize> = (0..n)
        .map(|i| body.iter().map(|r| r[i].len()).chain([header[i].len()]).max().unwrap_or(0))
        .collect();
    let line = |cells: Vec<&str>| {
        let padded: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
        padded.join("  ").trim_end().to_string()
    };
    let mut out = line(header.to_vec());
    out.push('\n');
    for r in body {
        out.push_str(&line(r.iter().map(String::as_str).collect()));
        out.push('\n');
    }
    out
}

pub fn dims(d: &GradedDims) -> String {
    if d.is_zero() {
        "0".into()
    } else {
        d.to_string()
    }
}
