//! Matrix text formats: CSV (plain comma-separated rows, no header) and JSON
//! (`{"n": int, "rows": [[...], ...]}`). Floats are written in shortest
//! round-trip form, so parse(write(A)) == A bit-exactly.

use serde_json::{json, Value};

use crate::error::{Error, Result};

use super::SymmetricMatrix;

fn format_entry(x: f64) -> String {
    // shortest round-trip; scientific notation for extreme magnitudes
    if x != 0.0 && (x.abs() < 1e-4 || x.abs() >= 1e16) {
        format!("{x:e}")
    } else {
        format!("{x}")
    }
}

impl SymmetricMatrix {
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for i in 0..self.n() {
            let row: Vec<String> = self.row(i).iter().map(|&x| format_entry(x)).collect();
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        let mut rows = Vec::new();
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let row: Result<Vec<f64>> = line
                .split(',')
                .map(|cell| {
                    cell.trim()
                        .parse::<f64>()
                        .map_err(|e| Error::Parse(format!("bad CSV cell {cell:?}: {e}")))
                })
                .collect();
            rows.push(row?);
        }
        SymmetricMatrix::from_rows(&rows)
    }

    pub fn to_json(&self) -> Value {
        json!({ "n": self.n(), "rows": self.rows() })
    }

    pub fn from_json(value: &Value) -> Result<Self> {
        let n = value
            .get("n")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::Parse("matrix JSON needs an integer field \"n\"".into()))?
            as usize;
        let rows_value = value
            .get("rows")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("matrix JSON needs an array field \"rows\"".into()))?;
        if rows_value.len() != n {
            return Err(Error::DimensionMismatch { left: n, right: rows_value.len() });
        }
        let mut rows = Vec::with_capacity(n);
        for row_value in rows_value {
            let cells = row_value
                .as_array()
                .ok_or_else(|| Error::Parse("matrix rows must be arrays".into()))?;
            let row: Result<Vec<f64>> = cells
                .iter()
                .map(|c| c.as_f64().ok_or_else(|| Error::Parse("matrix entries must be numbers".into())))
                .collect();
            rows.push(row?);
        }
        SymmetricMatrix::from_rows(&rows)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_round_trip_is_exact() {
        let a = SymmetricMatrix::from_rows(&[
            vec![1.0, 0.1 + 0.2],
            vec![0.1 + 0.2, -7.25e-11],
        ])
        .unwrap();
        let back = SymmetricMatrix::from_csv(&a.to_csv()).unwrap();
        assert_eq!(a, back);
    }

    #[test]
    fn json_round_trip_is_exact() {
        let a = SymmetricMatrix::from_rows(&[
            vec![2.0, std::f64::consts::FRAC_1_SQRT_2],
            vec![std::f64::consts::FRAC_1_SQRT_2, 1.0],
        ])
        .unwrap();
        let text = serde_json::to_string(&a.to_json()).unwrap();
        let back = SymmetricMatrix::from_json(&serde_json::from_str(&text).unwrap()).unwrap();
        assert_eq!(a, back);
    }

    #[test]
    fn csv_rejects_garbage() {
        assert!(SymmetricMatrix::from_csv("1,2\nx,1\n").is_err());
    }
}
