use std::fmt;
use std::str::FromStr;

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::distance::Distance;
use crate::error::{Error, Result};
use crate::metric::{diversity, DistanceMatrix};

use super::{check_k, grow_farthest, Algorithm, Candidate, Run, SolverResult};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StartRule {
    /// Smaller endpoint of the maximum-`d_min` pair.
    #[default]
    MaxEdge,
    Fixed(usize),
}

impl fmt::Display for StartRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StartRule::MaxEdge => f.write_str("max-edge"),
            StartRule::Fixed(v) => write!(f, "fixed:{v}"),
        }
    }
}

impl FromStr for StartRule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "max-edge" => Ok(StartRule::MaxEdge),
            other => other
                .strip_prefix("fixed:")
                .and_then(|v| v.trim().parse().ok())
                .map(StartRule::Fixed)
                .ok_or_else(|| Error::parse("start rule", format!("expected max-edge or fixed:ID, got `{s}`"))),
        }
    }
}

/// Repeatedly adds the vertex farthest, by `d_min`, from the chosen set.
pub fn greedy_dmin<T: Distance>(d: &DistanceMatrix<T>, k: usize, start: StartRule) -> Result<SolverResult<T>> {
    check_k(d.n(), k)?;
    let run = Run::start(Algorithm::Greedy, k);
    let first = match start {
        StartRule::MaxEdge => d.max_d_min_pair().map_or(0, |(u, _)| u),
        StartRule::Fixed(v) if v < d.n() => v,
        StartRule::Fixed(v) => return Err(Error::VertexOutOfRange { vertex: v, n: d.n() }),
    };
    let all: Vec<usize> = (0..d.n()).collect();
    let solution = grow_farthest(d, &all, vec![first], k);
    let score = diversity(d, &solution)?;
    let best = Candidate {
        solution,
        score,
        radius: None,
        cutoff: None,
    };
    Ok(run.finish(d, Some(best), None))
}

/// Best of `reps` uniformly random `k`-subsets.
pub fn random_baseline<T: Distance>(d: &DistanceMatrix<T>, k: usize, reps: usize, seed: u64) -> Result<SolverResult<T>> {
    check_k(d.n(), k)?;
    let run = Run::start(Algorithm::Random, k);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best: Option<Candidate<T>> = None;
    for _ in 0..reps.max(1) {
        let mut solution = sample(&mut rng, d.n(), k).into_vec();
        solution.sort_unstable();
        let score = diversity(d, &solution)?;
        // strictly better only, so the earliest draw wins ties
        if best.as_ref().is_none_or(|b| score > b.score) {
            best = Some(Candidate {
                solution,
                score,
                radius: None,
                cutoff: None,
            });
        }
    }
    Ok(run.finish(d, best, None))
}
