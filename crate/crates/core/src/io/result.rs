use std::fs;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::distance::{Distance, DistanceValue};
use crate::error::{Error, Result};
use crate::metric::DistanceMatrix;
use crate::solvers::{Algorithm, SolverResult};

use super::OutputFormat;

/// A solver outcome in portable form: solutions as original labels.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResultRecord {
    pub instance: String,
    pub algorithm: Algorithm,
    pub k: usize,
    pub score: DistanceValue,
    pub solution: Vec<String>,
    pub radius_used: Option<DistanceValue>,
    /// Threshold as `value` or `value/divisor`.
    pub cutoff: Option<String>,
    pub elapsed_ms: f64,
    pub seed: Option<u64>,
    pub feasible: bool,
}

impl ResultRecord {
    pub fn new<T: Distance>(instance: &str, d: &DistanceMatrix<T>, r: &SolverResult<T>, seed: Option<u64>) -> Self {
        ResultRecord {
            instance: instance.to_string(),
            algorithm: r.algorithm,
            k: r.k,
            score: r.score.to_value(),
            solution: r.solution.iter().map(|&v| d.label(v)).collect(),
            radius_used: r.radius.map(Distance::to_value),
            cutoff: r.cutoff.map(|c| c.to_string()),
            elapsed_ms: r.elapsed.as_secs_f64() * 1e3,
            seed,
            feasible: r.feasible,
        }
    }
}

/// Flat CSV shape; the solution is `;`-joined.
#[derive(Serialize, Deserialize)]
struct CsvRow {
    instance: String,
    algorithm: Algorithm,
    k: usize,
    score: String,
    solution: String,
    radius_used: String,
    cutoff: String,
    elapsed_ms: f64,
    seed: Option<u64>,
    feasible: bool,
}

fn value_field(s: &str, field: &str) -> Result<DistanceValue> {
    DistanceValue::from_str(s).map_err(|kind| Error::BadToken {
        context: format!("result field {field}"),
        token: s.to_string(),
        kind,
    })
}

impl From<&ResultRecord> for CsvRow {
    fn from(r: &ResultRecord) -> Self {
        CsvRow {
            instance: r.instance.clone(),
            algorithm: r.algorithm,
            k: r.k,
            score: r.score.to_string(),
            solution: r.solution.join(";"),
            radius_used: r.radius_used.map(|v| v.to_string()).unwrap_or_default(),
            cutoff: r.cutoff.clone().unwrap_or_default(),
            elapsed_ms: r.elapsed_ms,
            seed: r.seed,
            feasible: r.feasible,
        }
    }
}

impl TryFrom<CsvRow> for ResultRecord {
    type Error = Error;

    fn try_from(r: CsvRow) -> Result<Self> {
        Ok(ResultRecord {
            instance: r.instance,
            algorithm: r.algorithm,
            k: r.k,
            score: value_field(&r.score, "score")?,
            solution: if r.solution.is_empty() {
                Vec::new()
            } else {
                r.solution.split(';').map(str::to_string).collect()
            },
            radius_used: (!r.radius_used.is_empty())
                .then(|| value_field(&r.radius_used, "radius_used"))
                .transpose()?,
            cutoff: (!r.cutoff.is_empty()).then_some(r.cutoff),
            elapsed_ms: r.elapsed_ms,
            seed: r.seed,
            feasible: r.feasible,
        })
    }
}

pub fn result_to_string(r: &ResultRecord, format: OutputFormat) -> Result<String> {
    match format {
        OutputFormat::Json => Ok(serde_json::to_string_pretty(r)? + "\n"),
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.serialize(CsvRow::from(r))?;
            let bytes = w.into_inner().map_err(|e| Error::parse("csv", e.to_string()))?;
            Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
        }
    }
}

pub fn result_from_str(text: &str, format: OutputFormat) -> Result<ResultRecord> {
    match format {
        OutputFormat::Json => Ok(serde_json::from_str(text)?),
        OutputFormat::Csv => {
            let mut rd = csv::Reader::from_reader(text.as_bytes());
            let row: CsvRow = rd
                .deserialize()
                .next()
                .ok_or_else(|| Error::parse("csv", "no result row"))??;
            row.try_into()
        }
    }
}

pub fn write_result(r: &ResultRecord, path: &Path, format: OutputFormat) -> Result<()> {
    fs::write(path, result_to_string(r, format)?).map_err(|e| Error::io(path, e))
}

pub fn read_result(path: &Path, format: OutputFormat) -> Result<ResultRecord> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    result_from_str(&text, format)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> ResultRecord {
        ResultRecord {
            instance: "ft70".into(),
            algorithm: Algorithm::Bacr,
            k: 3,
            score: DistanceValue::Int(786),
            solution: vec!["a".into(), "b c".into(), "7".into()],
            radius_used: Some(DistanceValue::Real(2.0)),
            cutoff: Some("1572/20".into()),
            elapsed_ms: 12.5,
            seed: None,
            feasible: true,
        }
    }

    #[test]
    fn round_trips() {
        let dir = tempfile::tempdir().unwrap();
        for format in [OutputFormat::Json, OutputFormat::Csv] {
            let path = dir.path().join(format!("r.{format}"));
            write_result(&sample(), &path, format).unwrap();
            assert_eq!(read_result(&path, format).unwrap(), sample(), "{format}");
        }
        let mut bare = sample();
        bare.radius_used = None;
        bare.cutoff = None;
        bare.seed = Some(7);
        let text = result_to_string(&bare, OutputFormat::Csv).unwrap();
        assert!(text.starts_with("instance,algorithm,k,score,solution,radius_used,cutoff,elapsed_ms,seed,feasible\n"));
        assert_eq!(result_from_str(&text, OutputFormat::Csv).unwrap(), bare);
    }
}
