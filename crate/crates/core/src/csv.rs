//! Plain CSV helpers. Floats are written with 17 significant digits.

use std::fmt::Write as _;

/// Scientific notation with 17 significant digits, e.g. `1.0666666666666667e0`.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// Quotes a text cell if it contains a comma or a quote.
pub fn text_cell(s: &str) -> String {
    if s.contains(',') || s.contains('"') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Builds a CSV document from a header and rows of already formatted cells.
pub fn render(header: &str, rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut out = String::new();
    out.push_str(header);
    out.push('\n');
    for row in rows {
        let _ = writeln!(out, "{}", row.join(","));
    }
    out
}
