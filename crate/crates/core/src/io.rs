//! Series files and the Bratu grid-comparison CSV.
//!
//! A series file is either JSON, `{"order": N, "coeffs": [c0, ..., cN]}`,
//! or CSV lines `k,coefficient` with `k = 0..=N` contiguous (an optional
//! `k,coefficient` header is skipped). Floats are written in shortest
//! round-trip form.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::bratu::GridRow;
use crate::error::{Error, Result};
use crate::series::Series;

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SeriesFile {
    order: usize,
    coeffs: Vec<f64>,
}

/// Reads JSON when the first non-blank character is `{`, CSV otherwise.
pub fn read_series(text: &str) -> Result<Series> {
    if text.trim_start().starts_with('{') {
        read_series_json(text)
    } else {
        read_series_csv(text)
    }
}

pub fn read_series_json(text: &str) -> Result<Series> {
    let file: SeriesFile = serde_json::from_str(text)
        .map_err(|e| Error::InvalidSeries(format!("malformed series JSON: {e}")))?;
    if file.coeffs.len() != file.order + 1 {
        return Err(Error::InvalidSeries(format!(
            "order {} needs {} coefficients, found {}",
            file.order,
            file.order + 1,
            file.coeffs.len()
        )));
    }
    Series::new(file.coeffs)
}

pub fn read_series_csv(text: &str) -> Result<Series> {
    let mut coeffs = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let bad = |msg: String| Error::InvalidSeries(format!("line {}: {msg}", lineno + 1));
        let (k, c) = line
            .split_once(',')
            .ok_or_else(|| bad(format!("expected 'k,coefficient', found '{line}'")))?;
        let (k, c) = (k.trim(), c.trim());
        if coeffs.is_empty() && k.eq_ignore_ascii_case("k") {
            continue;
        }
        let k: usize = k.parse().map_err(|_| bad(format!("bad index '{k}'")))?;
        if k != coeffs.len() {
            return Err(bad(format!("expected index {}, found {k}", coeffs.len())));
        }
        let c: f64 = c
            .parse()
            .map_err(|_| bad(format!("bad coefficient '{c}'")))?;
        coeffs.push(c);
    }
    Series::new(coeffs)
}

pub fn write_series_json(series: &Series) -> String {
    let file = SeriesFile {
        order: series.order(),
        coeffs: series.coeffs().to_vec(),
    };
    serde_json::to_string(&file).expect("finite floats always serialize")
}

pub fn write_series_csv(series: &Series) -> String {
    let mut out = String::from("k,coefficient\n");
    for (k, c) in series.coeffs().iter().enumerate() {
        let _ = writeln!(out, "{k},{c:?}");
    }
    out
}

/// `x,u_dtm,u_analytic,abs_err`, one row per grid point.
pub fn write_comparison_csv(rows: &[GridRow]) -> String {
    let mut out = String::from("x,u_dtm,u_analytic,abs_err\n");
    for r in rows {
        let _ = writeln!(
            out,
            "{:?},{:?},{:?},{:?}",
            r.x, r.u_dtm, r.u_analytic, r.abs_err
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn json_format() {
        let s = read_series(r#"{"order":3,"coeffs":[1,1,0,0]}"#).unwrap();
        assert_eq!(s.coeffs(), &[1.0, 1.0, 0.0, 0.0]);
        assert_eq!(
            write_series_json(&s),
            r#"{"order":3,"coeffs":[1.0,1.0,0.0,0.0]}"#
        );
        assert!(read_series(r#"{"order":2,"coeffs":[1,1,0,0]}"#).is_err());
        assert!(read_series(r#"{"order":0,"coeffs":[]}"#).is_err());
        assert!(read_series(r#"{"order":1,"coeffs":[1,"a"]}"#).is_err());
        assert!(read_series(r#"{"coeffs":[1]}"#).is_err());
    }

    #[test]
    fn csv_format() {
        let s = read_series("k,coefficient\n0,1.5\n1,-2\n\n2,3e-3\n").unwrap();
        assert_eq!(s.coeffs(), &[1.5, -2.0, 0.003]);
        assert_eq!(read_series("0,1\n1,2").unwrap().coeffs(), &[1.0, 2.0]);
        assert!(read_series("0,1\n2,2").is_err());
        assert!(read_series("1,1").is_err());
        assert!(read_series("0;1").is_err());
        assert!(read_series("").is_err());
        assert_eq!(
            write_series_csv(&s),
            "k,coefficient\n0,1.5\n1,-2.0\n2,0.003\n"
        );
    }

    #[test]
    fn comparison_header() {
        let rows = [GridRow {
            x: 0.0,
            u_dtm: 1e-17,
            u_analytic: 0.0,
            abs_err: 1e-17,
        }];
        assert_eq!(
            write_comparison_csv(&rows),
            "x,u_dtm,u_analytic,abs_err\n0.0,1e-17,0.0,1e-17\n"
        );
    }

    proptest! {
        #[test]
        fn files_round_trip(coeffs in prop::collection::vec(-1e300f64..1e300, 1..40)) {
            let s = Series::new(coeffs).unwrap();
            prop_assert_eq!(read_series(&write_series_json(&s)).unwrap(), s.clone());
            prop_assert_eq!(read_series(&write_series_csv(&s)).unwrap(), s);
        }
    }
}
