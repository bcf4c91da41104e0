//! CSV/JSON table emission.
//!
//! CSV output is UTF-8 with `\n` line endings: `#`-prefixed header comments
//! (full parameter set and unit convention), one column-header row, then
//! data rows with floats printed to 17 significant digits. JSON output
//! carries the same comments/columns/rows; NaN cells become `null`.

use std::io::Write;

use crate::CliError;

#[derive(Debug, Clone)]
pub enum Cell {
    Num(f64),
    Text(String),
}

#[derive(Debug, Clone)]
pub struct Sheet {
    pub comments: Vec<String>,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

fn fmt_float(x: f64) -> String {
    if x.is_nan() {
        "nan".to_string()
    } else {
        format!("{x:.16e}")
    }
}

impl Sheet {
    pub fn write(&self, format: Format, w: &mut dyn Write) -> Result<(), CliError> {
        match format {
            Format::Csv => self.write_csv(w),
            Format::Json => self.write_json(w),
        }
        .map_err(|e| CliError::Io(format!("cannot write output: {e}")))
    }

    fn write_csv(&self, w: &mut dyn Write) -> std::io::Result<()> {
        for c in &self.comments {
            writeln!(w, "# {c}")?;
        }
        writeln!(w, "{}", self.columns.join(","))?;
        for row in &self.rows {
            let cells: Vec<String> = row
                .iter()
                .map(|c| match c {
                    Cell::Num(x) => fmt_float(*x),
                    Cell::Text(s) => s.clone(),
                })
                .collect();
            writeln!(w, "{}", cells.join(","))?;
        }
        Ok(())
    }

    fn write_json(&self, w: &mut dyn Write) -> std::io::Result<()> {
        let rows: Vec<Vec<serde_json::Value>> = self
            .rows
            .iter()
            .map(|row| {
                row.iter()
                    .map(|c| match c {
                        Cell::Num(x) => serde_json::Number::from_f64(*x)
                            .map(serde_json::Value::Number)
                            .unwrap_or(serde_json::Value::Null),
                        Cell::Text(s) => serde_json::Value::String(s.clone()),
                    })
                    .collect()
            })
            .collect();
        let doc = serde_json::json!({
            "comments": self.comments,
            "columns": self.columns,
            "rows": rows,
        });
        writeln!(w, "{}", serde_json::to_string_pretty(&doc)?)
    }
}

/// Unit-convention line repeated in every emitted header.
pub const UNITS_COMMENT: &str = "units: omega0 [omega_sp], d [c/omega_sp], v [c], gamma_c [omega_sp], t [1/Gamma_0], rates [Gamma_0], forces [|F_0|]; F_0 = -(|gamma|^2/4 pi eps0)(omega_sp/c)^4, Gamma_0 = (1/4 pi eps0 hbar)(omega_sp/c)^3 |gamma|^2";

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_formatting() {
        let sheet = Sheet {
            comments: vec!["a".into()],
            columns: vec!["x", "y"],
            rows: vec![
                vec![Cell::Num(0.1), Cell::Num(f64::NAN)],
                vec![Cell::Text("v".into()), Cell::Num(1.0)],
            ],
        };
        let mut buf = Vec::new();
        sheet.write(Format::Csv, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("# a\nx,y\n"));
        assert!(text.contains("1.0000000000000001e-1,nan\n"));
        assert!(!text.contains('\r'));
    }

    #[test]
    fn json_nan_becomes_null() {
        let sheet = Sheet {
            comments: vec![],
            columns: vec!["x"],
            rows: vec![vec![Cell::Num(f64::NAN)]],
        };
        let mut buf = Vec::new();
        sheet.write(Format::Json, &mut buf).unwrap();
        let doc: serde_json::Value = serde_json::from_slice(&buf).unwrap();
        assert!(doc["rows"][0][0].is_null());
    }
}
