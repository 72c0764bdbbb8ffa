//! Tensor text format.
//!
//! A tensor file is a JSON object with exactly two fields, optionally preceded
//! by comment lines:
//!
//! ```text
//! file    := comment* object
//! comment := optional spaces, '#', any text up to end of line
//! object  := '{' "shape" ':' [ positive-int, ... ] ',' "data" ':' [ real, ... ] '}'
//! ```
//!
//! Field order is free, unknown fields are rejected, `data` is row-major (last
//! index fastest) and its length must equal the product of `shape`. Comment
//! lines may appear anywhere a whole line fits; they are blanked before JSON
//! parsing so reported line numbers refer to the original file.
//!
//! Writers emit reals in shortest round-trip form, so reading back a written
//! file reproduces the tensor bit for bit.

use std::fs;
use std::path::Path;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::tensor::Tensor;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTensor {
    shape: Vec<usize>,
    data: Vec<f64>,
}

pub fn parse_tensor(text: &str) -> Result<Tensor> {
    let stripped: String = text
        .lines()
        .map(|l| if l.trim_start().starts_with('#') { "" } else { l })
        .collect::<Vec<_>>()
        .join("\n");
    let raw: RawTensor = serde_json::from_str(&stripped).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        message: strip_location(&e.to_string()).to_string(),
    })?;
    Tensor::new(raw.shape, raw.data).map_err(|e| {
        let field = if matches!(&e, Error::InvalidArgument(m) if m.contains("dimension") || m.contains("order")) {
            "shape"
        } else {
            "data"
        };
        let (line, column) = locate_field(&stripped, field);
        Error::Parse {
            line,
            column,
            message: format!("field `{field}`: {e}"),
        }
    })
}

/// Drops serde_json's trailing `at line L column C`, which the error type
/// already carries.
fn strip_location(msg: &str) -> &str {
    msg.rsplit_once(" at line ").map_or(msg, |(head, _)| head)
}

fn locate_field(text: &str, field: &str) -> (usize, usize) {
    let needle = format!("\"{field}\"");
    for (n, line) in text.lines().enumerate() {
        if let Some(col) = line.find(&needle) {
            return (n + 1, col + 1);
        }
    }
    (1, 1)
}

pub fn read_tensor(path: impl AsRef<Path>) -> Result<Tensor> {
    let text = fs::read_to_string(path)?;
    parse_tensor(&text)
}

/// Renders a tensor, prefixing each comment line with `# `.
pub fn format_tensor(t: &Tensor, comments: &[&str]) -> String {
    let mut out = String::new();
    for c in comments {
        out.push_str("# ");
        out.push_str(c);
        out.push('\n');
    }
    let shape: Vec<String> = t.shape().iter().map(|n| n.to_string()).collect();
    let data: Vec<String> = t
        .data()
        .iter()
        .map(|x| serde_json::to_string(x).expect("finite reals serialize"))
        .collect();
    out.push_str("{\n  \"shape\": [");
    out.push_str(&shape.join(", "));
    out.push_str("],\n  \"data\": [");
    out.push_str(&data.join(", "));
    out.push_str("]\n}\n");
    out
}

pub fn write_tensor(path: impl AsRef<Path>, t: &Tensor, comments: &[&str]) -> Result<()> {
    fs::write(path, format_tensor(t, comments))?;
    Ok(())
}

/// Decimal rendering with 15 significant digits, trailing zeros trimmed.
/// Magnitudes outside `[1e-5, 1e15)` use exponent notation.
pub fn format_real(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{x:.14e}");
    let (mantissa, e) = sci.split_once('e').expect("exponent form");
    let exp: i32 = e.parse().expect("integer exponent");
    if !(-5..15).contains(&exp) {
        return format!("{}e{exp}", trim_zeros(mantissa));
    }
    let decimals = (14 - exp) as usize;
    trim_zeros(&format!("{x:.decimals$}")).to_string()
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_with_comments() {
        let text = "# provenance\n  # more\n{\"data\": [1, 2.5, -3, 4e-1], \"shape\": [2, 2]}\n";
        let t = parse_tensor(text).unwrap();
        assert_eq!(t.shape(), &[2, 2]);
        assert_eq!(t.data(), &[1.0, 2.5, -3.0, 0.4]);
    }

    #[test]
    fn syntax_error_reports_original_line() {
        let text = "# c\n# c\n{\"shape\": [2],\n \"data\": [1, ]}";
        match parse_tensor(text) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 4),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn length_mismatch_points_at_data() {
        let text = "{\"shape\": [2, 2],\n\"data\": [1, 2, 3]}";
        match parse_tensor(text) {
            Err(Error::Parse { line, message, .. }) => {
                assert_eq!(line, 2);
                assert!(message.contains("data"));
            }
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn zero_dimension_points_at_shape() {
        match parse_tensor("{\"shape\": [0], \"data\": []}") {
            Err(Error::Parse { message, .. }) => assert!(message.contains("shape")),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn unknown_field_rejected() {
        assert!(parse_tensor("{\"shape\": [1], \"data\": [1], \"x\": 1}").is_err());
        assert!(parse_tensor("{\"shape\": [1]}").is_err());
    }

    #[test]
    fn fifteen_significant_digits() {
        assert_eq!(format_real(2.537118666456933), "2.53711866645693");
        assert_eq!(format_real(15.6755), "15.6755");
        assert_eq!(format_real(-0.5), "-0.5");
        assert_eq!(format_real(0.0), "0");
        assert_eq!(format_real(1252.0), "1252");
        assert_eq!(format_real(9.999999999999999), "10");
        assert_eq!(format_real(1e-20), "1e-20");
        assert_eq!(format_real(0.001234), "0.001234");
    }

    #[test]
    fn write_read_is_bit_exact() {
        let t = Tensor::new(vec![3], vec![0.1, -1.0 / 3.0, 1e-300]).unwrap();
        let text = format_tensor(&t, &["hello"]);
        assert!(text.starts_with("# hello\n"));
        assert_eq!(parse_tensor(&text).unwrap(), t);
    }
}
