use std::fmt;

use ammd_core::metric::{
    distinct_distance_count, unique_distances, validate_pseudometric, EpsilonSymmetry, ValidationReport, Violation,
};
use ammd_core::{Distance, DistanceMatrix, DistanceValue};

/// What `ammd validate` prints about a space.
#[derive(Clone, Debug)]
pub struct SpaceSummary {
    pub name: String,
    pub n: usize,
    /// Smallest and largest off-diagonal distance.
    pub range: Option<(DistanceValue, DistanceValue)>,
    /// Distinct off-diagonal values, zero included.
    pub distinct: usize,
    /// Distinct positive values: the candidate radii.
    pub radii: usize,
    pub validation: ValidationReport,
}

impl SpaceSummary {
    pub fn of<T: Distance>(name: &str, d: &DistanceMatrix<T>) -> Self {
        SpaceSummary {
            name: name.to_string(),
            n: d.n(),
            range: d.off_diagonal_range().map(|(lo, hi)| (lo.to_value(), hi.to_value())),
            distinct: distinct_distance_count(d),
            radii: unique_distances(d).len(),
            validation: validate_pseudometric(d, 0.0),
        }
    }
}

fn describe(v: &Violation) -> String {
    match v {
        Violation::Diagonal { i, value } => format!("d({i},{i}) = {value}"),
        Violation::Negative { i, j, value } => format!("d({i},{j}) = {value}"),
        Violation::Triangle { i, w, j, slack } => format!("d({i},{j}) exceeds d({i},{w}) + d({w},{j}) by {}", -slack),
    }
}

impl fmt::Display for SpaceSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "instance: {}", self.name)?;
        writeln!(f, "n: {}", self.n)?;
        match self.range {
            Some((lo, hi)) => {
                writeln!(f, "min distance: {lo}")?;
                writeln!(f, "max distance: {hi}")?;
            }
            None => writeln!(f, "distances: none")?,
        }
        writeln!(f, "distinct distances: {}", self.distinct)?;
        writeln!(f, "positive distances: {}", self.radii)?;
        let v = &self.validation;
        if v.is_pseudometric {
            writeln!(f, "pseudometric: yes")?;
        } else {
            let first = v.violations.first().map(describe).unwrap_or_default();
            writeln!(f, "pseudometric: no ({} violations; first: {first})", v.violation_count)?;
        }
        match v.epsilon_symmetry {
            EpsilonSymmetry::Finite(e) => writeln!(f, "epsilon-symmetry: {e:.6}"),
            EpsilonSymmetry::Unbounded => writeln!(f, "epsilon-symmetry: unbounded"),
        }
    }
}
