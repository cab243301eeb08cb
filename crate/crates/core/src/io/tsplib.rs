use crate::distance::Distance;
use crate::error::{Error, Result};
use crate::metric::{validate_pseudometric, DistanceMatrix};

use super::parse_value;

/// An explicit full-matrix TSPLIB instance.
#[derive(Clone, Debug)]
pub struct TsplibInstance<T> {
    pub name: Option<String>,
    pub matrix: DistanceMatrix<T>,
    pub warnings: Vec<String>,
}

pub fn parse_tsplib_str<T: Distance>(text: &str) -> Result<TsplibInstance<T>> {
    let mut name = None;
    let mut kind = None;
    let mut dimension: Option<usize> = None;
    let mut weight_type = None;
    let mut weight_format = None;
    let mut lines = text.lines().enumerate();
    let mut section_start = None;

    for (no, raw) in lines.by_ref() {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if line == "EOF" {
            break;
        }
        if line.starts_with("EDGE_WEIGHT_SECTION") {
            section_start = Some(no);
            break;
        }
        let Some((key, value)) = line.split_once(':') else {
            return Err(Error::parse(format!("line {}", no + 1), format!("expected `KEY: value`, got `{line}`")));
        };
        let value = value.trim().to_string();
        match key.trim() {
            "NAME" => name = Some(value),
            "TYPE" => kind = Some(value),
            "DIMENSION" => {
                dimension = Some(value.parse().map_err(|_| {
                    Error::parse(format!("line {}", no + 1), format!("bad DIMENSION `{value}`"))
                })?)
            }
            "EDGE_WEIGHT_TYPE" => weight_type = Some(value),
            "EDGE_WEIGHT_FORMAT" => weight_format = Some(value),
            _ => {}
        }
    }

    let ctx = "tsplib";
    match kind.as_deref() {
        Some("ATSP") | Some("TSP") => {}
        other => return Err(Error::parse(ctx, format!("unsupported TYPE {other:?}, expected ATSP"))),
    }
    if weight_type.as_deref() != Some("EXPLICIT") {
        return Err(Error::parse(ctx, format!("unsupported EDGE_WEIGHT_TYPE {weight_type:?}, expected EXPLICIT")));
    }
    if weight_format.as_deref() != Some("FULL_MATRIX") {
        return Err(Error::parse(ctx, format!("unsupported EDGE_WEIGHT_FORMAT {weight_format:?}, expected FULL_MATRIX")));
    }
    let n = dimension.ok_or_else(|| Error::parse(ctx, "missing DIMENSION"))?;
    if n == 0 {
        return Err(Error::parse(ctx, "DIMENSION must be positive"));
    }
    if section_start.is_none() {
        return Err(Error::parse(ctx, "missing EDGE_WEIGHT_SECTION"));
    }

    let mut data = Vec::with_capacity(n * n);
    for (no, raw) in lines {
        let line = raw.trim();
        if line == "EOF" || line.chars().next().is_some_and(|c| c.is_ascii_alphabetic()) {
            break;
        }
        for token in line.split_whitespace() {
            if data.len() == n * n {
                return Err(Error::parse(ctx, format!("more than {n}x{n} weights (line {})", no + 1)));
            }
            data.push(parse_value::<T>(token, || format!("tsplib line {}", no + 1))?);
        }
    }
    if data.len() != n * n {
        return Err(Error::parse(ctx, format!("DIMENSION {n} needs {} weights, found {}", n * n, data.len())));
    }

    let mut warnings = Vec::new();
    let nonzero_diagonal = (0..n).filter(|&i| data[i * n + i] != T::ZERO).count();
    if nonzero_diagonal > 0 {
        warnings.push(format!("{nonzero_diagonal} nonzero diagonal entries set to 0"));
        for i in 0..n {
            data[i * n + i] = T::ZERO;
        }
    }
    let matrix = DistanceMatrix::from_flat(n, data)?;
    let report = validate_pseudometric(&matrix, T::TOLERANCE);
    if report.violation_count > 0 {
        warnings.push(format!(
            "not a pseudometric: {} triangle violations (use the closure step before solving)",
            report.violation_count
        ));
    }
    for w in &warnings {
        log::warn!("{}: {w}", name.as_deref().unwrap_or("tsplib"));
    }
    Ok(TsplibInstance { name, matrix, warnings })
}
