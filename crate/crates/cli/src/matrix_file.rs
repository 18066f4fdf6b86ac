//! JSON matrix files: `{"dim": n, "re": [[..]; n], "im": [[..]; n]}` with
//! `im` optional (zero when absent).

use std::path::Path;

use serde_json::Value;
use wentropy_core::CMatrix;

use crate::error::{CliError, Result};

fn shape_error(field: &str, msg: impl std::fmt::Display) -> CliError {
    CliError::Parse(format!("{field}: {msg}"))
}

fn parse_rows(value: &Value, field: &str, dim: usize) -> Result<Vec<f64>> {
    let rows = value
        .as_array()
        .ok_or_else(|| shape_error(field, "expected an array of rows"))?;
    if rows.len() != dim {
        return Err(shape_error(
            field,
            format!("has {} rows, expected {dim}", rows.len()),
        ));
    }
    let mut out = Vec::with_capacity(dim * dim);
    for (i, row) in rows.iter().enumerate() {
        let cols = row
            .as_array()
            .ok_or_else(|| shape_error(&format!("{field}[{i}]"), "row is not an array"))?;
        if cols.len() != dim {
            return Err(shape_error(
                &format!("{field}[{i}]"),
                format!("has {} columns, expected {dim}", cols.len()),
            ));
        }
        for (j, x) in cols.iter().enumerate() {
            let v = x.as_f64().ok_or_else(|| {
                shape_error(&format!("{field}[{i}][{j}]"), format!("not a number: {x}"))
            })?;
            out.push(v);
        }
    }
    Ok(out)
}

/// Parses the JSON text of a matrix file.
pub fn parse_matrix(text: &str) -> Result<CMatrix> {
    let doc: Value =
        serde_json::from_str(text).map_err(|e| CliError::Parse(format!("invalid JSON: {e}")))?;
    let obj = doc
        .as_object()
        .ok_or_else(|| CliError::Parse("matrix file must be a JSON object".into()))?;
    let dim = obj
        .get("dim")
        .and_then(Value::as_u64)
        .filter(|&d| d >= 1)
        .ok_or_else(|| shape_error("dim", "missing or not a positive integer"))?
        as usize;
    let re = parse_rows(
        obj.get("re").ok_or_else(|| shape_error("re", "missing"))?,
        "re",
        dim,
    )?;
    let im = match obj.get("im") {
        None | Some(Value::Null) => None,
        Some(v) => Some(parse_rows(v, "im", dim)?),
    };
    Ok(CMatrix::from_parts(dim, &re, im.as_deref())?)
}

pub fn read_matrix(path: &Path) -> Result<CMatrix> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    parse_matrix(&text).map_err(|e| match e {
        CliError::Parse(msg) => CliError::Parse(format!("{}: {msg}", path.display())),
        other => other,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(m: &CMatrix, i: usize, j: usize) -> (f64, f64) {
        let z = m[(i, j)];
        (z.re, z.im)
    }

    #[test]
    fn parses_real_and_complex() {
        let m = parse_matrix(
            r#"{"dim": 2, "re": [[0.5, 0.1], [0.1, 0.5]], "im": [[0, -0.2], [0.2, 0]]}"#,
        )
        .unwrap();
        assert_eq!(c(&m, 0, 1), (0.1, -0.2));
        assert_eq!(c(&m, 1, 0), (0.1, 0.2));
        let r = parse_matrix(r#"{"dim": 1, "re": [[1]]}"#).unwrap();
        assert_eq!(c(&r, 0, 0), (1.0, 0.0));
    }

    #[test]
    fn reports_positions() {
        let e = parse_matrix(r#"{"dim": 2, "re": [[1, 0], [0, "x"]]}"#).unwrap_err();
        assert!(e.to_string().contains("re[1][1]"), "{e}");
        let e = parse_matrix(r#"{"dim": 2, "re": [[1, 0], [0]]}"#).unwrap_err();
        assert!(e.to_string().contains("re[1]: has 1 columns"), "{e}");
        let e = parse_matrix(r#"{"dim": 3, "re": [[1, 0], [0, 1]]}"#).unwrap_err();
        assert!(e.to_string().contains("re: has 2 rows"), "{e}");
        let e = parse_matrix(r#"{"dim": 2, "re": [[1, 0], [0, 1]], "im": [[0, 0]]}"#).unwrap_err();
        assert!(e.to_string().starts_with("im:"), "{e}");
        assert_eq!(parse_matrix("{").unwrap_err().exit_code(), 5);
        assert_eq!(parse_matrix(r#"{"re": [[1]]}"#).unwrap_err().exit_code(), 5);
    }

    #[test]
    fn serialization_round_trips() {
        let m = parse_matrix(
            r#"{"dim": 2, "re": [[0.25, 0.5], [0.5, 0.75]], "im": [[0, 1e-3], [-1e-3, 0]]}"#,
        )
        .unwrap();
        let text = serde_json::to_string(&m).unwrap();
        assert_eq!(parse_matrix(&text).unwrap(), m);
    }
}
