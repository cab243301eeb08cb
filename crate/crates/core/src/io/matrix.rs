use std::fmt::Write as _;

use crate::distance::Distance;
use crate::error::{Error, Result};
use crate::metric::DistanceMatrix;

use super::parse_value;

/// One row per line, values separated by commas and/or whitespace. Blank
/// lines and `#` comments are skipped.
pub fn parse_matrix_str<T: Distance>(text: &str) -> Result<DistanceMatrix<T>> {
    let mut rows: Vec<Vec<T>> = Vec::new();
    for (no, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let row = line
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| parse_value::<T>(t, || format!("matrix line {}", no + 1)))
            .collect::<Result<Vec<T>>>()?;
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(Error::EmptyGraph);
    }
    DistanceMatrix::from_rows(rows)
}

pub fn format_matrix<T: Distance>(d: &DistanceMatrix<T>) -> String {
    let mut out = String::new();
    for row in d.rows() {
        let line: Vec<String> = row.iter().map(|x| x.to_value().to_string()).collect();
        let _ = writeln!(out, "{}", line.join(" "));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distance::Real;
    use proptest::prelude::*;

    #[test]
    fn comma_separated() {
        let d = parse_matrix_str::<u64>("0,1\n1,0").unwrap();
        assert_eq!(d.n(), 2);
        assert_eq!(d.get(0, 1), 1);
        assert_eq!(d.d_min(0, 1), d.d_max(0, 1));
    }

    #[test]
    fn ragged_and_junk() {
        assert!(matches!(parse_matrix_str::<u64>("0 1\n1"), Err(Error::Shape { .. })));
        assert!(matches!(parse_matrix_str::<u64>("0 a\n1 0"), Err(Error::BadToken { .. })));
        assert!(parse_matrix_str::<u64>("# empty").is_err());
    }

    proptest! {
        #[test]
        fn round_trip_int(n in 1usize..6, vals in proptest::collection::vec(0u64..1_000_000, 36)) {
            let d = DistanceMatrix::from_flat(n, vals[..n * n].to_vec()).unwrap();
            prop_assert_eq!(parse_matrix_str::<u64>(&format_matrix(&d)).unwrap(), d);
        }

        #[test]
        fn round_trip_real(n in 1usize..5, vals in proptest::collection::vec(0.0f64..1e9, 16)) {
            let d = DistanceMatrix::from_flat(n, vals[..n * n].iter().map(|&v| Real::new(v).unwrap()).collect()).unwrap();
            prop_assert_eq!(parse_matrix_str::<Real>(&format_matrix(&d)).unwrap(), d);
        }
    }
}
