//! Monte Carlo harness: runs measurements over sampled complexes across a
//! grid of scales `n`, with per-trial seeds that make every result
//! independent of execution order and worker count.
//!
//! Outputs are a CSV table (one row per `(n, trial, measurement)`), a summary
//! with means, standard deviations, and success fractions, and optional SVG
//! trend lines. Trials that hit a resource limit are recorded as censored
//! rather than failing the run.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::cohomology::{betti_numbers, cup_length, steenrod_nontrivial_on_components};
use crate::collapse::collapse_to_dim;
use crate::complex::{mix64, SimplicialComplex};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::io::{datasets, read_complex_file, write_complex_file};
use crate::models::{lower_closure, upper_closure, ParamVector, SampleSeed};
use crate::params::log_expectation;
use crate::subcount::count_subcomplex_copies;

/// Which closure of the sampled hypergraph to take.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Model {
    Lower,
    Upper,
}

/// One quantity recorded per trial.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Measurement {
    /// All Betti numbers of the sample (one row per dimension).
    Betti,
    /// Longest nonzero product of positive-degree classes.
    CupLength,
    /// Whether the `i`-th Steenrod square into degree `d` is nonzero (0/1).
    Sq { i: usize, d: usize },
    /// Whether random discrete collapses reach dimension `d` (0/1).
    Collapse { d: usize },
    /// Unlabeled copies of a pattern complex; `pattern` is a bundled dataset
    /// name or a file path.
    CopyCount { pattern: String },
}

fn default_field() -> String {
    "q".to_string()
}

fn default_restarts() -> usize {
    16
}

/// Full description of one experiment; serializable as JSON.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub model: Model,
    /// Scales to sweep, strictly ascending.
    pub n: Vec<usize>,
    pub params: ParamVector,
    /// Trials per scale.
    pub trials: u64,
    /// Master seed; trial `t` at scale `n` uses a stream derived from
    /// `(seed, n, t)` only.
    pub seed: u64,
    pub measurements: Vec<Measurement>,
    /// Coefficient field for Betti numbers and cup length.
    #[serde(default = "default_field")]
    pub field: String,
    /// Restart budget for collapse measurements.
    #[serde(default = "default_restarts")]
    pub restarts: usize,
}

impl ExperimentConfig {
    pub fn new(model: Model, n: Vec<usize>, params: ParamVector, trials: u64, seed: u64) -> Self {
        ExperimentConfig {
            model,
            n,
            params,
            trials,
            seed,
            measurements: Vec::new(),
            field: default_field(),
            restarts: default_restarts(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::invalid("trials must be at least 1"));
        }
        if self.n.is_empty() {
            return Err(Error::invalid("at least one scale n is required"));
        }
        if !self.n.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::invalid("scales n must be strictly ascending"));
        }
        self.params.validate()?;
        self.field.parse::<Field>()?;
        for m in &self.measurements {
            match m {
                Measurement::Sq { i, d } if i > d => {
                    return Err(Error::invalid(format!(
                        "square index {i} exceeds target degree {d}"
                    )));
                }
                Measurement::CopyCount { pattern } if pattern.is_empty() => {
                    return Err(Error::invalid("copy_count needs a pattern name or path"));
                }
                _ => {}
            }
        }
        Ok(())
    }

    pub fn from_json(text: &str) -> Result<ExperimentConfig> {
        let config: ExperimentConfig = serde_json::from_str(text)
            .map_err(|e| Error::invalid(format!("bad experiment config: {e}")))?;
        config.validate()?;
        Ok(config)
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("config serializes");
        text.push('\n');
        text
    }

    fn sample(&self, n: usize, trial: u64) -> Result<SimplicialComplex> {
        let seed = SampleSeed::for_trial(self.seed, n, trial);
        match self.model {
            Model::Lower => lower_closure(n, &self.params, seed),
            Model::Upper => upper_closure(n, &self.params, seed),
        }
    }
}

/// One CSV row.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Row {
    pub n: usize,
    pub trial: u64,
    pub measurement: String,
    pub value: f64,
}

/// Statistics for one `(n, measurement)` cell.
#[derive(Debug, Clone, Serialize)]
pub struct MeasurementSummary {
    pub n: usize,
    pub measurement: String,
    /// Number of uncensored trials contributing values.
    pub count: u64,
    pub mean: f64,
    pub sd: f64,
    pub min: f64,
    pub max: f64,
    /// Fraction of values greater than zero; the success fraction for 0/1
    /// measurements.
    pub positive_fraction: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct CensorSummary {
    pub n: usize,
    pub trials: u64,
    pub censored: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ExperimentSummary {
    pub config: ExperimentConfig,
    pub measurements: Vec<MeasurementSummary>,
    pub censoring: Vec<CensorSummary>,
    pub wall_seconds: f64,
    pub workers: Option<usize>,
}

/// Everything an experiment produces.
#[derive(Debug, Clone)]
pub struct ExperimentResult {
    pub rows: Vec<Row>,
    pub summary: ExperimentSummary,
}

impl ExperimentResult {
    /// The full table, one row per `(n, trial, measurement)`. Byte-identical
    /// across runs and worker counts for the same config.
    pub fn csv(&self) -> String {
        let mut out = String::from("n,trial,measurement,value\n");
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{},{}\n",
                r.n,
                r.trial,
                csv_field(&r.measurement),
                r.value
            ));
        }
        out
    }

    pub fn summary_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(&self.summary).expect("summary serializes");
        text.push('\n');
        text
    }

    /// Static SVG of measurement means against `n`.
    pub fn trend_svg(&self) -> String {
        let mut series: BTreeMap<String, Vec<(f64, f64)>> = BTreeMap::new();
        for m in &self.summary.measurements {
            series
                .entry(m.measurement.clone())
                .or_default()
                .push((m.n as f64, m.mean));
        }
        let series: Vec<(String, Vec<(f64, f64)>)> = series.into_iter().collect();
        line_chart_svg("measurement means", "n", "mean", &series)
    }
}

fn csv_field(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Runs `f` over jobs, sequentially or on a rayon pool. `workers = Some(1)`
/// forces the sequential path; `None` uses the default pool. Results come
/// back in job order regardless of scheduling.
pub(crate) fn map_jobs<J, T, F>(jobs: &[J], workers: Option<usize>, f: F) -> Result<Vec<T>>
where
    J: Sync,
    T: Send,
    F: Fn(&J) -> Result<T> + Sync,
{
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        match workers {
            Some(1) => jobs.iter().map(&f).collect(),
            Some(w) => {
                let pool = rayon::ThreadPoolBuilder::new()
                    .num_threads(w)
                    .build()
                    .map_err(|e| Error::invalid(format!("worker pool: {e}")))?;
                pool.install(|| jobs.par_iter().map(&f).collect())
            }
            None => jobs.par_iter().map(&f).collect(),
        }
    }
    #[cfg(not(feature = "parallel"))]
    {
        let _ = workers;
        jobs.iter().map(&f).collect()
    }
}

struct TrialSlot<T> {
    n: usize,
    trial: u64,
    /// `None` when the trial hit a resource limit (censored).
    outcome: Option<T>,
}

/// Samples one complex per `(n, trial)` job and applies `per_trial`,
/// converting resource-limit errors into censored slots.
fn execute<T, F>(
    config: &ExperimentConfig,
    workers: Option<usize>,
    per_trial: F,
) -> Result<Vec<TrialSlot<T>>>
where
    T: Send,
    F: Fn(usize, u64, &SimplicialComplex) -> Result<T> + Sync,
{
    config.validate()?;
    let jobs: Vec<(usize, u64)> = config
        .n
        .iter()
        .flat_map(|&n| (0..config.trials).map(move |t| (n, t)))
        .collect();
    map_jobs(&jobs, workers, |&(n, trial)| {
        let complex = match config.sample(n, trial) {
            Ok(c) => c,
            Err(Error::ResourceLimit(_)) => {
                return Ok(TrialSlot {
                    n,
                    trial,
                    outcome: None,
                })
            }
            Err(e) => return Err(e),
        };
        match per_trial(n, trial, &complex) {
            Ok(v) => Ok(TrialSlot {
                n,
                trial,
                outcome: Some(v),
            }),
            Err(Error::ResourceLimit(_)) => Ok(TrialSlot {
                n,
                trial,
                outcome: None,
            }),
            Err(e) => Err(e),
        }
    })
}

fn censor_table(config: &ExperimentConfig, slots: &[TrialSlot<impl Sized>]) -> Vec<CensorSummary> {
    let mut censored: BTreeMap<usize, u64> = config.n.iter().map(|&n| (n, 0)).collect();
    for slot in slots {
        if slot.outcome.is_none() {
            *censored.get_mut(&slot.n).expect("scale present") += 1;
        }
    }
    censored
        .into_iter()
        .map(|(n, c)| CensorSummary {
            n,
            trials: config.trials,
            censored: c,
        })
        .collect()
}

fn summarize(values: &[f64]) -> (f64, f64, f64, f64, f64) {
    let k = values.len() as f64;
    let mean = values.iter().sum::<f64>() / k;
    let sd = if values.len() > 1 {
        (values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (k - 1.0)).sqrt()
    } else {
        0.0
    };
    let min = values.iter().cloned().fold(f64::INFINITY, f64::min);
    let max = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let positive = values.iter().filter(|v| **v > 0.0).count() as f64 / k;
    (mean, sd, min, max, positive)
}

fn derive_collapse_seed(seed: SampleSeed) -> u64 {
    mix64(seed.master ^ mix64(seed.trial ^ 0xC011_A95E))
}

enum Plan {
    Betti,
    CupLength,
    Sq {
        i: usize,
        d: usize,
    },
    Collapse {
        d: usize,
    },
    CopyCount {
        name: String,
        pattern: SimplicialComplex,
    },
}

/// Resolves a pattern reference: bundled dataset name first, then file path.
pub fn resolve_pattern(reference: &str) -> Result<SimplicialComplex> {
    match datasets::by_name(reference) {
        Some(c) => Ok(c),
        None => read_complex_file(Path::new(reference)),
    }
}

/// Runs the configured measurements over the full `(n, trial)` grid.
/// Deterministic given the master seed, for any worker count.
pub fn run(config: &ExperimentConfig, workers: Option<usize>) -> Result<ExperimentResult> {
    config.validate()?;
    if config.measurements.is_empty() {
        return Err(Error::invalid("experiment has no measurements"));
    }
    let field: Field = config.field.parse()?;
    let plans: Vec<Plan> = config
        .measurements
        .iter()
        .map(|m| {
            Ok(match m {
                Measurement::Betti => Plan::Betti,
                Measurement::CupLength => Plan::CupLength,
                Measurement::Sq { i, d } => Plan::Sq { i: *i, d: *d },
                Measurement::Collapse { d } => Plan::Collapse { d: *d },
                Measurement::CopyCount { pattern } => Plan::CopyCount {
                    name: pattern.clone(),
                    pattern: resolve_pattern(pattern)?,
                },
            })
        })
        .collect::<Result<_>>()?;

    let start = Instant::now();
    let slots = execute(config, workers, |n, trial, complex| {
        let mut values: Vec<(String, f64)> = Vec::new();
        for plan in &plans {
            match plan {
                Plan::Betti => {
                    for (d, b) in betti_numbers(complex, field)?.iter().enumerate() {
                        values.push((format!("betti_{d}"), *b as f64));
                    }
                }
                Plan::CupLength => {
                    values.push(("cup_length".to_string(), cup_length(complex, field)? as f64));
                }
                Plan::Sq { i, d } => {
                    let fired = steenrod_nontrivial_on_components(complex, *i, *d)?;
                    values.push((format!("sq{i}_d{d}"), if fired { 1.0 } else { 0.0 }));
                }
                Plan::Collapse { d } => {
                    let seed = derive_collapse_seed(SampleSeed::for_trial(config.seed, n, trial));
                    let outcome = collapse_to_dim(complex, *d, seed, config.restarts)?;
                    values.push((
                        format!("collapse_d{d}"),
                        if outcome.success { 1.0 } else { 0.0 },
                    ));
                }
                Plan::CopyCount { name, pattern } => {
                    let count = count_subcomplex_copies(pattern, complex)?;
                    values.push((format!("copies_{name}"), count.copies as f64));
                }
            }
        }
        Ok(values)
    })?;
    let wall_seconds = start.elapsed().as_secs_f64();

    let mut rows: Vec<Row> = Vec::new();
    let mut cells: BTreeMap<(usize, String), Vec<f64>> = BTreeMap::new();
    for slot in &slots {
        match &slot.outcome {
            None => {
                rows.push(Row {
                    n: slot.n,
                    trial: slot.trial,
                    measurement: "censored".to_string(),
                    value: 1.0,
                });
            }
            Some(values) => {
                for (name, value) in values {
                    rows.push(Row {
                        n: slot.n,
                        trial: slot.trial,
                        measurement: name.clone(),
                        value: *value,
                    });
                    cells
                        .entry((slot.n, name.clone()))
                        .or_default()
                        .push(*value);
                }
            }
        }
    }
    let measurements = cells
        .into_iter()
        .map(|((n, measurement), values)| {
            let (mean, sd, min, max, positive_fraction) = summarize(&values);
            MeasurementSummary {
                n,
                measurement,
                count: values.len() as u64,
                mean,
                sd,
                min,
                max,
                positive_fraction,
            }
        })
        .collect();
    let censoring = censor_table(config, &slots);
    Ok(ExperimentResult {
        rows,
        summary: ExperimentSummary {
            config: config.clone(),
            measurements,
            censoring,
            wall_seconds,
            workers,
        },
    })
}

/// One scale's copy-count statistics.
#[derive(Debug, Clone, Serialize)]
pub struct ConcentrationPoint {
    pub n: usize,
    pub trials: u64,
    pub censored: u64,
    pub empirical_mean: f64,
    pub sample_sd: f64,
    /// Exponent `e` with expected count of order `n^e`.
    pub log_expectation_exponent: f64,
    /// `n^e` for the exponent above (zero when the exponent is `-inf`).
    pub theoretical_value: f64,
    /// Fraction of trials whose count exceeds half the empirical mean.
    pub fraction_above_half_mean: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConcentrationReport {
    pub pattern: String,
    pub points: Vec<ConcentrationPoint>,
    /// Whether `fraction_above_half_mean` never decreases along `n`.
    pub fraction_non_decreasing: bool,
}

impl ConcentrationReport {
    /// Least-squares slope of `ln(empirical mean)` against `ln n` over the
    /// points with positive mean; `None` with fewer than two such points.
    pub fn log_mean_slope(&self) -> Option<f64> {
        let pts: Vec<(f64, f64)> = self
            .points
            .iter()
            .filter(|p| p.empirical_mean > 0.0)
            .map(|p| ((p.n as f64).ln(), p.empirical_mean.ln()))
            .collect();
        if pts.len() < 2 {
            return None;
        }
        let k = pts.len() as f64;
        let mx = pts.iter().map(|p| p.0).sum::<f64>() / k;
        let my = pts.iter().map(|p| p.1).sum::<f64>() / k;
        let sxx = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum::<f64>();
        let sxy = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum::<f64>();
        Some(sxy / sxx)
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("report serializes");
        text.push('\n');
        text
    }
}

/// Copy counts of `pattern` across the grid, against the predicted order
/// `n^e` from the log-expectation exponent, with the concentration fraction
/// (trials above half the empirical mean) per scale.
pub fn subcount_concentration(
    pattern: &SimplicialComplex,
    pattern_name: &str,
    config: &ExperimentConfig,
    workers: Option<usize>,
) -> Result<ConcentrationReport> {
    if pattern.is_empty() {
        return Err(Error::invalid("pattern complex is empty"));
    }
    let pattern_dim = pattern.dim().expect("non-empty pattern");
    let alphas = config.params.padded_alphas(pattern_dim.max(1));
    let exponent = log_expectation(pattern, &alphas).value;
    let slots = execute(config, workers, |_, _, complex| {
        Ok(count_subcomplex_copies(pattern, complex)?.copies)
    })?;
    let mut points = Vec::new();
    for &n in &config.n {
        let counts: Vec<f64> = slots
            .iter()
            .filter(|s| s.n == n)
            .filter_map(|s| s.outcome)
            .map(|c| c as f64)
            .collect();
        let censored = config.trials - counts.len() as u64;
        let (mean, sd) = if counts.is_empty() {
            (0.0, 0.0)
        } else {
            let (m, s, _, _, _) = summarize(&counts);
            (m, s)
        };
        let above = if counts.is_empty() {
            0.0
        } else {
            counts.iter().filter(|c| **c > mean / 2.0).count() as f64 / counts.len() as f64
        };
        let theoretical_value = if exponent.is_finite() {
            (n as f64).powf(exponent)
        } else {
            0.0
        };
        points.push(ConcentrationPoint {
            n,
            trials: config.trials,
            censored,
            empirical_mean: mean,
            sample_sd: sd,
            log_expectation_exponent: exponent,
            theoretical_value,
            fraction_above_half_mean: above,
        });
    }
    let fraction_non_decreasing = points
        .windows(2)
        .all(|w| w[1].fraction_above_half_mean >= w[0].fraction_above_half_mean);
    Ok(ConcentrationReport {
        pattern: pattern_name.to_string(),
        points,
        fraction_non_decreasing,
    })
}

/// One scale's cup-length distribution.
#[derive(Debug, Clone, Serialize)]
pub struct CupLengthPoint {
    pub n: usize,
    pub trials: u64,
    pub censored: u64,
    /// `(cup length, number of trials)` pairs, ascending.
    pub distribution: Vec<(usize, u64)>,
    pub fraction_at_most_one: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct CupLengthReport {
    pub field: String,
    pub points: Vec<CupLengthPoint>,
    /// Files holding complexes with cup length above one, when a dump
    /// directory was given.
    pub counterexamples: Vec<PathBuf>,
}

impl CupLengthReport {
    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("report serializes");
        text.push('\n');
        text
    }
}

/// Cup-length distribution per scale; the headline is the fraction of trials
/// with cup length at most one. Offending complexes are dumped to
/// `dump_dir` when given.
pub fn cup_length_sweep(
    config: &ExperimentConfig,
    workers: Option<usize>,
    dump_dir: Option<&Path>,
) -> Result<CupLengthReport> {
    let field: Field = config.field.parse()?;
    let slots = execute(config, workers, |_, _, complex| {
        let length = cup_length(complex, field)?;
        let offender = if length > 1 {
            Some(complex.clone())
        } else {
            None
        };
        Ok((length, offender))
    })?;
    let mut counterexamples = Vec::new();
    if let Some(dir) = dump_dir {
        for slot in &slots {
            if let Some((length, Some(complex))) = &slot.outcome {
                let path = dir.join(format!("cuplen{}_n{}_t{}.cplx", length, slot.n, slot.trial));
                write_complex_file(&path, complex)?;
                counterexamples.push(path);
            }
        }
    }
    let mut points = Vec::new();
    for &n in &config.n {
        let lengths: Vec<usize> = slots
            .iter()
            .filter(|s| s.n == n)
            .filter_map(|s| s.outcome.as_ref().map(|(l, _)| *l))
            .collect();
        let censored = config.trials - lengths.len() as u64;
        let mut dist: BTreeMap<usize, u64> = BTreeMap::new();
        for l in &lengths {
            *dist.entry(*l).or_default() += 1;
        }
        let at_most_one = if lengths.is_empty() {
            0.0
        } else {
            lengths.iter().filter(|l| **l <= 1).count() as f64 / lengths.len() as f64
        };
        points.push(CupLengthPoint {
            n,
            trials: config.trials,
            censored,
            distribution: dist.into_iter().collect(),
            fraction_at_most_one: at_most_one,
        });
    }
    Ok(CupLengthReport {
        field: config.field.clone(),
        points,
        counterexamples,
    })
}

/// Per-complex Steenrod scan: whether the square fires, plus how many strong
/// components of the `d`-simplices are isomorphic to `target` (f-vector
/// equality plus an embedding of the target), and the total component count.
pub fn steenrod_scan(
    complex: &SimplicialComplex,
    i: usize,
    d: usize,
    target: Option<&SimplicialComplex>,
) -> Result<(bool, usize, usize)> {
    let fired = steenrod_nontrivial_on_components(complex, i, d)?;
    if d == 0 || complex.dim().is_none_or(|dim| dim < d) {
        return Ok((fired, 0, 0));
    }
    let components = complex.strong_components(d)?;
    let matching = match target {
        None => 0,
        Some(t) => {
            let mut found = 0;
            for c in &components {
                if c.f_vector() == t.f_vector() && count_subcomplex_copies(t, c)?.copies >= 1 {
                    found += 1;
                }
            }
            found
        }
    };
    Ok((fired, matching, components.len()))
}

#[derive(Debug, Clone, Serialize)]
pub struct SteenrodPoint {
    pub n: usize,
    pub trials: u64,
    pub censored: u64,
    /// Fraction of uncensored trials where the square is nonzero.
    pub detector_fraction: f64,
    pub mean_matching_components: f64,
    pub mean_components: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct SteenrodReport {
    pub i: usize,
    pub d: usize,
    pub target: Option<String>,
    /// Exponent `e` with expected copy count of the target of order `n^e`.
    pub target_log_expectation: Option<f64>,
    pub points: Vec<SteenrodPoint>,
}

impl SteenrodReport {
    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("report serializes");
        text.push('\n');
        text
    }
}

/// Sweeps the Steenrod detector for `Sq^i` into degree `d` over the grid,
/// counting strong components isomorphic to `target` when one is given.
pub fn steenrod_search(
    config: &ExperimentConfig,
    i: usize,
    d: usize,
    target: Option<(&str, &SimplicialComplex)>,
    workers: Option<usize>,
) -> Result<SteenrodReport> {
    if i > d {
        return Err(Error::invalid(format!(
            "square index {i} exceeds target degree {d}"
        )));
    }
    let target_log_expectation = match target {
        Some((_, t)) if !t.is_empty() => {
            let alphas = config
                .params
                .padded_alphas(t.dim().expect("non-empty").max(1));
            Some(log_expectation(t, &alphas).value)
        }
        _ => None,
    };
    let slots = execute(config, workers, |_, _, complex| {
        steenrod_scan(complex, i, d, target.map(|(_, t)| t))
    })?;
    let mut points = Vec::new();
    for &n in &config.n {
        let outcomes: Vec<&(bool, usize, usize)> = slots
            .iter()
            .filter(|s| s.n == n)
            .filter_map(|s| s.outcome.as_ref())
            .collect();
        let censored = config.trials - outcomes.len() as u64;
        let k = outcomes.len() as f64;
        let (fired, matching, total) = if outcomes.is_empty() {
            (0.0, 0.0, 0.0)
        } else {
            (
                outcomes.iter().filter(|o| o.0).count() as f64 / k,
                outcomes.iter().map(|o| o.1 as f64).sum::<f64>() / k,
                outcomes.iter().map(|o| o.2 as f64).sum::<f64>() / k,
            )
        };
        points.push(SteenrodPoint {
            n,
            trials: config.trials,
            censored,
            detector_fraction: fired,
            mean_matching_components: matching,
            mean_components: total,
        });
    }
    Ok(SteenrodReport {
        i,
        d,
        target: target.map(|(name, _)| name.to_string()),
        target_log_expectation,
        points,
    })
}

fn fmt_tick(v: f64) -> String {
    let s = format!("{v:.3}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s.is_empty() || s == "-" {
        "0".to_string()
    } else {
        s.to_string()
    }
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

const PALETTE: [&str; 6] = [
    "#1f6fb4", "#c23b3b", "#2c8a4b", "#8a58b4", "#c07f27", "#4b8a8a",
];

/// Hand-rolled line chart: one polyline per series, with axes, ticks, and a
/// legend. Self-contained static SVG.
pub fn line_chart_svg(
    title: &str,
    x_label: &str,
    y_label: &str,
    series: &[(String, Vec<(f64, f64)>)],
) -> String {
    let (width, height) = (760.0, 440.0);
    let (left, right, top, bottom) = (70.0, 200.0, 46.0, 56.0);
    let (pw, ph) = (width - left - right, height - top - bottom);
    let points: Vec<(f64, f64)> = series
        .iter()
        .flat_map(|(_, pts)| pts.iter().cloned())
        .collect();
    let (mut x0, mut x1) = points
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), p| {
            (a.min(p.0), b.max(p.0))
        });
    let (mut y0, mut y1) = points
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), p| {
            (a.min(p.1), b.max(p.1))
        });
    if points.is_empty() {
        (x0, x1, y0, y1) = (0.0, 1.0, 0.0, 1.0);
    }
    if x0 == x1 {
        (x0, x1) = (x0 - 1.0, x1 + 1.0);
    }
    if y0 == y1 {
        (y0, y1) = (y0 - 1.0, y1 + 1.0);
    }
    let pad = (y1 - y0) * 0.05;
    let (y0, y1) = (y0 - pad, y1 + pad);
    let sx = move |x: f64| left + (x - x0) / (x1 - x0) * pw;
    let sy = move |y: f64| top + ph - (y - y0) / (y1 - y0) * ph;

    let mut svg = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {width} {height}\" \
         font-family=\"sans-serif\" font-size=\"12\">\n\
         <rect width=\"{width}\" height=\"{height}\" fill=\"white\"/>\n\
         <text x=\"{left}\" y=\"24\" font-size=\"15\" font-weight=\"bold\">{}</text>\n",
        xml_escape(title)
    );
    // Axes.
    svg.push_str(&format!(
        "<line x1=\"{left}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#333\"/>\n\
         <line x1=\"{left}\" y1=\"{top}\" x2=\"{left}\" y2=\"{}\" stroke=\"#333\"/>\n",
        top + ph,
        left + pw,
        top + ph,
        top + ph
    ));
    for t in 0..=4 {
        let fx = x0 + (x1 - x0) * t as f64 / 4.0;
        let fy = y0 + (y1 - y0) * t as f64 / 4.0;
        svg.push_str(&format!(
            "<line x1=\"{:.2}\" y1=\"{}\" x2=\"{:.2}\" y2=\"{}\" stroke=\"#333\"/>\n\
             <text x=\"{:.2}\" y=\"{}\" text-anchor=\"middle\">{}</text>\n",
            sx(fx),
            top + ph,
            sx(fx),
            top + ph + 5.0,
            sx(fx),
            top + ph + 20.0,
            fmt_tick(fx)
        ));
        svg.push_str(&format!(
            "<line x1=\"{}\" y1=\"{:.2}\" x2=\"{}\" y2=\"{:.2}\" stroke=\"#333\"/>\n\
             <text x=\"{}\" y=\"{:.2}\" text-anchor=\"end\">{}</text>\n",
            left - 5.0,
            sy(fy),
            left,
            sy(fy),
            left - 9.0,
            sy(fy) + 4.0,
            fmt_tick(fy)
        ));
    }
    svg.push_str(&format!(
        "<text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"middle\">{}</text>\n",
        left + pw / 2.0,
        height - 14.0,
        xml_escape(x_label)
    ));
    svg.push_str(&format!(
        "<text x=\"18\" y=\"{:.2}\" text-anchor=\"middle\" transform=\"rotate(-90 18 {:.2})\">{}</text>\n",
        top + ph / 2.0,
        top + ph / 2.0,
        xml_escape(y_label)
    ));
    // Series.
    for (s, (name, pts)) in series.iter().enumerate() {
        let color = PALETTE[s % PALETTE.len()];
        let coords: Vec<String> = pts
            .iter()
            .map(|(x, y)| format!("{:.2},{:.2}", sx(*x), sy(*y)))
            .collect();
        svg.push_str(&format!(
            "<polyline points=\"{}\" fill=\"none\" stroke=\"{color}\" stroke-width=\"2\"/>\n",
            coords.join(" ")
        ));
        for (x, y) in pts {
            svg.push_str(&format!(
                "<circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"3\" fill=\"{color}\"/>\n",
                sx(*x),
                sy(*y)
            ));
        }
        let ly = top + 14.0 + s as f64 * 18.0;
        svg.push_str(&format!(
            "<line x1=\"{:.2}\" y1=\"{ly:.2}\" x2=\"{:.2}\" y2=\"{ly:.2}\" stroke=\"{color}\" stroke-width=\"2\"/>\n\
             <text x=\"{:.2}\" y=\"{:.2}\">{}</text>\n",
            left + pw + 16.0,
            left + pw + 40.0,
            left + pw + 46.0,
            ly + 4.0,
            xml_escape(name)
        ));
    }
    svg.push_str("</svg>\n");
    svg
}
