//! Cross-product benchmark runs: every instance, algorithm and `k`.

use std::collections::HashMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use ammd_core::io::{load_auto, AnyInstance, Instance, InstanceFormat, OutputFormat};
use ammd_core::metric::unique_distances;
use ammd_core::synth::{random_metric, scale_free_metric, ScaleFree};
use ammd_core::{solve, Algorithm, Distance, DistanceMatrix, DistanceValue, SolveOptions};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::{on_instance, CliError, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceSpec {
    /// Defaults to the file stem or the TSPLIB `NAME`.
    #[serde(default)]
    pub name: Option<String>,
    /// Relative paths are taken from the config file's directory.
    pub path: PathBuf,
    pub format: InstanceFormat,
    /// Replace distances by shortest paths; edge lists are always closed.
    #[serde(default)]
    pub close: bool,
}

/// Generated instances, one per size, always metrically closed.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum SyntheticSpec {
    ScaleFree {
        sizes: Vec<usize>,
        #[serde(default)]
        seed: u64,
        #[serde(default)]
        params: ScaleFree,
    },
    RandomComplete {
        sizes: Vec<usize>,
        /// Arc weights are drawn from `1..max_weight`.
        max_weight: u64,
        #[serde(default)]
        seed: u64,
    },
}

fn default_reps() -> usize {
    10
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BenchConfig {
    #[serde(default)]
    pub instances: Vec<InstanceSpec>,
    #[serde(default)]
    pub synthetic: Vec<SyntheticSpec>,
    pub algorithms: Vec<Algorithm>,
    pub k: Vec<usize>,
    #[serde(default)]
    pub seed: u64,
    /// Draws for the random baseline.
    #[serde(default = "default_reps")]
    pub reps: usize,
    /// Per-cell budget; only the exact solver honors it.
    #[serde(default)]
    pub time_budget_secs: Option<f64>,
    #[serde(default)]
    pub output: Option<PathBuf>,
    #[serde(default)]
    pub output_format: OutputFormat,
    /// Directory for the plot series files.
    #[serde(default)]
    pub series_dir: Option<PathBuf>,
}

impl BenchConfig {
    pub fn from_json(text: &str, base: &Path) -> Result<Self> {
        let mut cfg: BenchConfig = serde_json::from_str(text)?;
        for spec in &mut cfg.instances {
            if spec.path.is_relative() {
                spec.path = base.join(&spec.path);
            }
        }
        for p in [&mut cfg.output, &mut cfg.series_dir].into_iter().flatten() {
            if p.is_relative() {
                *p = base.join(&*p);
            }
        }
        cfg.check()?;
        Ok(cfg)
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|source| CliError::ConfigFile {
            path: path.to_path_buf(),
            source,
        })?;
        Self::from_json(&text, path.parent().unwrap_or(Path::new(".")))
    }

    pub fn check(&self) -> Result<()> {
        let synthetic = self.synthetic.iter().map(|s| match s {
            SyntheticSpec::ScaleFree { sizes, .. } | SyntheticSpec::RandomComplete { sizes, .. } => sizes.len(),
        });
        if self.instances.is_empty() && synthetic.sum::<usize>() == 0 {
            return Err(CliError::Config("no instances".into()));
        }
        if self.algorithms.is_empty() {
            return Err(CliError::Config("no algorithms".into()));
        }
        if self.k.is_empty() {
            return Err(CliError::Config("no k values".into()));
        }
        if let Some(t) = self.time_budget_secs.filter(|t| !(t.is_finite() && *t >= 0.0)) {
            return Err(CliError::Config(format!("bad time budget {t}")));
        }
        Ok(())
    }

    fn solve_options(&self) -> SolveOptions {
        SolveOptions {
            seed: self.seed,
            reps: self.reps,
            time_budget: self.time_budget_secs.map(Duration::from_secs_f64),
            ..SolveOptions::default()
        }
    }
}

/// One (instance, algorithm, k) cell.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BenchRow {
    pub instance: String,
    pub n: usize,
    pub unique_distances: usize,
    pub algorithm: Algorithm,
    pub k: usize,
    pub score: Option<DistanceValue>,
    /// Percent of the exact optimum, when the exact solver ran to completion.
    pub pct_of_opt: Option<f64>,
    /// Set on exact rows: whether the search finished within budget.
    pub proven_optimal: Option<bool>,
    pub elapsed_ms: f64,
    pub error: Option<String>,
}

struct Loaded {
    name: String,
    space: std::result::Result<AnyInstance, String>,
}

impl Loaded {
    fn size(&self) -> (usize, usize) {
        match &self.space {
            Ok(any) => on_instance!(any, i => (i.matrix.n(), unique_distances(&i.matrix).len())),
            Err(_) => (0, 0),
        }
    }
}

fn generated(name: String, matrix: std::result::Result<DistanceMatrix<u64>, String>) -> Loaded {
    let space = matrix.map(|matrix| {
        AnyInstance::Int(Instance {
            name: name.clone(),
            matrix,
            warnings: Vec::new(),
            closed: true,
            dropped: 0,
        })
    });
    Loaded { name, space }
}

fn load_all(cfg: &BenchConfig) -> Vec<Loaded> {
    let mut out = Vec::new();
    for spec in &cfg.instances {
        let space = load_auto(&spec.path, spec.format, spec.close);
        let name = spec.name.clone().unwrap_or_else(|| match &space {
            Ok(any) => on_instance!(any, i => i.name.clone()),
            Err(_) => spec.path.display().to_string(),
        });
        if let Ok(any) = &space {
            on_instance!(any, i => i.warnings.iter().for_each(|w| log::warn!("{name}: {w}")));
        }
        out.push(Loaded {
            name,
            space: space.map_err(|e| e.to_string()),
        });
    }
    for s in &cfg.synthetic {
        match s {
            SyntheticSpec::ScaleFree { sizes, seed, params } => {
                for &n in sizes {
                    out.push(generated(format!("scale-free-n{n}-s{seed}"), scale_free_metric(n, *params, *seed).map_err(|e| e.to_string())));
                }
            }
            SyntheticSpec::RandomComplete { sizes, max_weight, seed } => {
                for &n in sizes {
                    let name = format!("random-complete-n{n}-w{max_weight}-s{seed}");
                    let matrix = if *max_weight < 2 {
                        Err("max_weight must be at least 2".to_string())
                    } else {
                        random_metric(n, *max_weight, *seed).map_err(|e| e.to_string())
                    };
                    out.push(generated(name, matrix));
                }
            }
        }
    }
    out
}

struct Cell {
    score: Option<DistanceValue>,
    proven_optimal: Option<bool>,
    elapsed: Duration,
    error: Option<String>,
}

fn run_cell<T: Distance>(d: &DistanceMatrix<T>, k: usize, alg: Algorithm, opts: &SolveOptions) -> Cell {
    let t = Instant::now();
    match solve(d, k, alg, opts) {
        Ok(r) => Cell {
            score: Some(r.score.to_value()),
            proven_optimal: r.bounds.map(|b| b.complete),
            elapsed: t.elapsed(),
            error: None,
        },
        Err(e) => Cell {
            score: None,
            proven_optimal: None,
            elapsed: t.elapsed(),
            error: Some(e.to_string()),
        },
    }
}

fn percent(score: DistanceValue, opt: DistanceValue) -> f64 {
    let (s, o) = (score.as_f64(), opt.as_f64());
    let p = if o == 0.0 { 100.0 } else { 100.0 * s / o };
    (p * 100.0).round() / 100.0
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct BenchReport {
    /// Ordered by instance, then algorithm, then `k`, each in config order.
    pub rows: Vec<BenchRow>,
}

/// Runs every cell on up to `jobs` threads (0 picks the core count).
pub fn run_bench(cfg: &BenchConfig, jobs: usize) -> Result<BenchReport> {
    cfg.check()?;
    let loaded = load_all(cfg);
    let opts = cfg.solve_options();
    let cells: Vec<(usize, Algorithm, usize)> = (0..loaded.len())
        .flat_map(|i| cfg.algorithms.iter().flat_map(move |&a| cfg.k.iter().map(move |&k| (i, a, k))))
        .collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| CliError::Config(format!("thread pool: {e}")))?;
    let results: Vec<Cell> = pool.install(|| {
        cells
            .par_iter()
            .map(|&(i, alg, k)| match &loaded[i].space {
                Ok(any) => on_instance!(any, inst => run_cell(&inst.matrix, k, alg, &opts)),
                Err(e) => Cell {
                    score: None,
                    proven_optimal: None,
                    elapsed: Duration::ZERO,
                    error: Some(format!("load: {e}")),
                },
            })
            .collect()
    });
    let sizes: Vec<(usize, usize)> = loaded.iter().map(Loaded::size).collect();
    let optimum: HashMap<(usize, usize), DistanceValue> = cells
        .iter()
        .zip(&results)
        .filter(|(&(_, a, _), c)| a == Algorithm::Exact && c.proven_optimal == Some(true))
        .filter_map(|(&(i, _, k), c)| Some(((i, k), c.score?)))
        .collect();
    let rows = cells
        .iter()
        .zip(results)
        .map(|(&(i, algorithm, k), c)| BenchRow {
            instance: loaded[i].name.clone(),
            n: sizes[i].0,
            unique_distances: sizes[i].1,
            algorithm,
            k,
            pct_of_opt: c.score.zip(optimum.get(&(i, k)).copied()).map(|(s, o)| percent(s, o)),
            score: c.score,
            proven_optimal: c.proven_optimal,
            elapsed_ms: c.elapsed.as_secs_f64() * 1e3,
            error: c.error,
        })
        .collect();
    Ok(BenchReport { rows })
}

#[derive(Serialize)]
struct ScoreSeries<'a> {
    instance: &'a str,
    algorithm: Algorithm,
    k: usize,
    score: Option<DistanceValue>,
}

#[derive(Serialize)]
struct RuntimeSeries<'a> {
    instance: &'a str,
    algorithm: Algorithm,
    k: usize,
    n: usize,
    unique_distances: usize,
    elapsed_ms: f64,
}

fn csv_string<S: Serialize>(items: impl IntoIterator<Item = S>) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for item in items {
        w.serialize(item)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Config(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| ammd_core::Error::Io {
        path: path.to_path_buf(),
        source: e,
    })?;
    Ok(())
}

impl BenchReport {
    pub fn render(&self, format: OutputFormat) -> Result<String> {
        match format {
            OutputFormat::Csv => csv_string(&self.rows),
            OutputFormat::Json => Ok(serde_json::to_string_pretty(&self.rows)? + "\n"),
        }
    }

    pub fn write(&self, path: &Path, format: OutputFormat) -> Result<()> {
        write(path, &self.render(format)?)
    }

    /// `score_vs_k.csv` for score-by-k plots and `runtime.csv` for runtime
    /// against size and distinct-distance count.
    pub fn write_series(&self, dir: &Path) -> Result<()> {
        fs::create_dir_all(dir).map_err(|e| ammd_core::Error::Io {
            path: dir.to_path_buf(),
            source: e,
        })?;
        let scores = self.rows.iter().map(|r| ScoreSeries {
            instance: &r.instance,
            algorithm: r.algorithm,
            k: r.k,
            score: r.score,
        });
        write(&dir.join("score_vs_k.csv"), &csv_string(scores)?)?;
        let runtimes = self.rows.iter().filter(|r| r.error.is_none()).map(|r| RuntimeSeries {
            instance: &r.instance,
            algorithm: r.algorithm,
            k: r.k,
            n: r.n,
            unique_distances: r.unique_distances,
            elapsed_ms: r.elapsed_ms,
        });
        write(&dir.join("runtime.csv"), &csv_string(runtimes)?)
    }
}
