//! Instance files and result records.

mod edgelist;
mod matrix;
mod result;
mod tsplib;

pub use edgelist::parse_edgelist_str;
pub use matrix::{format_matrix, parse_matrix_str};
pub use result::{read_result, result_from_str, result_to_string, write_result, ResultRecord};
pub use tsplib::{parse_tsplib_str, TsplibInstance};

use std::fmt;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::distance::{Distance, Real, TokenError};
use crate::error::{Error, Result};
use crate::metric::{close_matrix, metric_closure, DistanceMatrix, WeightedDigraph};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum InstanceFormat {
    Tsplib,
    Edgelist,
    Matrix,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
}

macro_rules! keyword_enum {
    ($ty:ty, $what:literal, $($variant:path => $name:literal),+) => {
        impl fmt::Display for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(match self { $($variant => $name),+ })
            }
        }

        impl FromStr for $ty {
            type Err = Error;

            fn from_str(s: &str) -> Result<Self> {
                match s.trim().to_ascii_lowercase().as_str() {
                    $($name => Ok($variant),)+
                    _ => Err(Error::parse($what, format!("unknown {} `{s}`", $what))),
                }
            }
        }
    };
}

keyword_enum!(InstanceFormat, "format",
    InstanceFormat::Tsplib => "tsplib",
    InstanceFormat::Edgelist => "edgelist",
    InstanceFormat::Matrix => "matrix");
keyword_enum!(OutputFormat, "output format",
    OutputFormat::Json => "json",
    OutputFormat::Csv => "csv");

pub(crate) fn parse_value<T: Distance>(token: &str, context: impl FnOnce() -> String) -> Result<T> {
    T::parse_token(token).map_err(|kind| Error::BadToken {
        context: context(),
        token: token.to_string(),
        kind,
    })
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::io(path, e))
}

pub fn parse_tsplib<T: Distance>(path: &Path) -> Result<TsplibInstance<T>> {
    parse_tsplib_str(&read(path)?)
}

pub fn parse_edgelist<T: Distance>(path: &Path) -> Result<WeightedDigraph<T>> {
    parse_edgelist_str(&read(path)?)
}

pub fn parse_matrix<T: Distance>(path: &Path) -> Result<DistanceMatrix<T>> {
    parse_matrix_str(&read(path)?)
}

/// A distance space ready for solving.
#[derive(Clone, Debug)]
pub struct Instance<T> {
    pub name: String,
    pub matrix: DistanceMatrix<T>,
    pub warnings: Vec<String>,
    /// Distances were replaced by shortest-path lengths.
    pub closed: bool,
    /// Input vertices outside the largest strongly connected component.
    pub dropped: usize,
}

/// Reads an instance. Edge lists are always metrically closed; matrices
/// only when `close` is set.
pub fn load_instance<T: Distance>(path: &Path, format: InstanceFormat, close: bool) -> Result<Instance<T>> {
    let stem = path.file_stem().map_or_else(|| "instance".into(), |s| s.to_string_lossy().into_owned());
    let text = read(path)?;
    let (name, raw, warnings) = match format {
        InstanceFormat::Tsplib => {
            let t = parse_tsplib_str::<T>(&text)?;
            (t.name.unwrap_or(stem), t.matrix, t.warnings)
        }
        InstanceFormat::Matrix => (stem, parse_matrix_str::<T>(&text)?, Vec::new()),
        InstanceFormat::Edgelist => {
            let g = parse_edgelist_str::<T>(&text)?;
            let matrix = metric_closure(&g)?;
            let dropped = g.n - matrix.n();
            return Ok(Instance {
                name: stem,
                matrix,
                warnings: Vec::new(),
                closed: true,
                dropped,
            });
        }
    };
    let matrix = if close { close_matrix(&raw)? } else { raw };
    Ok(Instance {
        name,
        matrix,
        warnings,
        closed: close,
        dropped: 0,
    })
}

/// An instance in whichever distance type its file needs.
#[derive(Clone, Debug)]
pub enum AnyInstance {
    Int(Instance<u64>),
    Real(Instance<Real>),
}

/// Loads with integer distances, falling back to reals when some value has
/// a fractional part.
pub fn load_auto(path: &Path, format: InstanceFormat, close: bool) -> Result<AnyInstance> {
    match load_instance::<u64>(path, format, close) {
        Ok(i) => Ok(AnyInstance::Int(i)),
        Err(Error::BadToken {
            kind: TokenError::NotIntegral,
            ..
        }) => load_instance::<Real>(path, format, close).map(AnyInstance::Real),
        Err(e) => Err(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn file(text: &str, suffix: &str) -> tempfile::NamedTempFile {
        let mut f = tempfile::Builder::new().suffix(suffix).tempfile().unwrap();
        f.write_all(text.as_bytes()).unwrap();
        f
    }

    #[test]
    fn auto_detects_reals() {
        let f = file("0 1.5\n2 0\n", ".txt");
        assert!(matches!(load_auto(f.path(), InstanceFormat::Matrix, false).unwrap(), AnyInstance::Real(_)));
        let f = file("0 1\n2 0\n", ".txt");
        assert!(matches!(load_auto(f.path(), InstanceFormat::Matrix, false).unwrap(), AnyInstance::Int(_)));
        let f = file("0 -1\n2 0\n", ".txt");
        assert!(load_auto(f.path(), InstanceFormat::Matrix, false).is_err());
    }

    #[test]
    fn edgelist_is_closed_and_labelled() {
        let f = file("a b 1\nb c 1\nc a 5\nd a 1\n", ".txt");
        let inst = load_instance::<u64>(f.path(), InstanceFormat::Edgelist, false).unwrap();
        assert!(inst.closed);
        assert_eq!(inst.dropped, 1);
        assert_eq!(inst.matrix.n(), 3);
        assert_eq!(inst.matrix.get(0, 2), 2);
        assert_eq!(inst.matrix.label(2), "c");
    }

    #[test]
    fn tsplib_name_and_closure() {
        let text = "NAME: tri\nTYPE: ATSP\nDIMENSION: 3\nEDGE_WEIGHT_TYPE: EXPLICIT\n\
            EDGE_WEIGHT_FORMAT: FULL_MATRIX\nEDGE_WEIGHT_SECTION\n0 1 9\n1 0 1\n1 1 0\nEOF\n";
        let f = file(text, ".atsp");
        let raw = load_instance::<u64>(f.path(), InstanceFormat::Tsplib, false).unwrap();
        assert_eq!(raw.name, "tri");
        assert_eq!(raw.matrix.get(0, 2), 9);
        let closed = load_instance::<u64>(f.path(), InstanceFormat::Tsplib, true).unwrap();
        assert_eq!(closed.matrix.get(0, 2), 2);
    }

    #[test]
    fn format_names() {
        assert_eq!("TSPLIB".parse::<InstanceFormat>().unwrap(), InstanceFormat::Tsplib);
        assert_eq!(OutputFormat::Csv.to_string(), "csv");
        assert!("xml".parse::<OutputFormat>().is_err());
    }
}
