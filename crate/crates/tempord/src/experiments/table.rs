//! Delimiter-separated output tables with a schema header line.
//!
//! Cells are formatted once at insertion (shortest round-trip form for
//! floats), so identical inputs produce byte-identical files.

use std::fmt::Write as _;

#[derive(Debug, Clone)]
pub struct Table {
    pub schema: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

/// Shortest round-trip decimal form of a float; scientific notation outside
/// a moderate magnitude window.
pub fn fmt_f64(v: f64) -> String {
    if v.is_nan() {
        "nan".to_string()
    } else if v.is_infinite() {
        if v > 0.0 { "inf".to_string() } else { "-inf".to_string() }
    } else if v == 0.0 {
        "0".to_string()
    } else if v.abs() >= 1e-4 && v.abs() < 1e16 {
        format!("{v}")
    } else {
        format!("{v:e}")
    }
}

impl Table {
    pub fn new<S: Into<String>>(schema: S, columns: &[&str]) -> Self {
        Self {
            schema: schema.into(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push_row(&mut self, cells: Vec<String>) {
        assert_eq!(
            cells.len(),
            self.columns.len(),
            "row width mismatch for schema {}",
            self.schema
        );
        self.rows.push(cells);
    }

    pub fn push_f64_row(&mut self, values: &[f64]) {
        self.push_row(values.iter().map(|&v| fmt_f64(v)).collect());
    }

    /// Render as tab-separated text with a `# schema:` header line.
    pub fn to_dsv(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# schema: {} v1", self.schema);
        let _ = writeln!(out, "{}", self.columns.join("\t"));
        for row in &self.rows {
            let _ = writeln!(out, "{}", row.join("\t"));
        }
        out
    }
}
