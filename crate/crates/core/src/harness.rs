//! Seeded Monte-Carlo experiments over the confidence sequences.
//!
//! Replication `r` of a spec with seed `s` draws from `ChaCha8Rng` seeded with
//! `s` on stream `r`, so every replication is reproducible on its own and
//! independent of how replications are scheduled across threads.

use std::fmt;
use std::io::{BufRead, BufReader, Write};
use std::path::PathBuf;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution as _, Gamma};
use rayon::prelude::*;
use serde::Serialize;

use crate::a_co96::ACo96;
use crate::baseline::ClopperPearson;
use crate::bernstein::Bernstein;
use crate::co96::Co96;
use crate::error::{check_delta, check_sample, CsError, Result};
use crate::mixture::Mixture;
use crate::r70::R70;
use crate::sequence::{ConfidenceSequence, DEFAULT_PRECISION};

/// Times at which summary widths are reported.
pub const CHECKPOINTS: [u64; 6] = [1, 10, 100, 1_000, 10_000, 100_000];

/// Horizons above this need binary data unless slow continuous runs are allowed.
pub const CONTINUOUS_HORIZON_LIMIT: u64 = 10_000;

/// Source of the sample stream.
#[derive(Debug, Clone, PartialEq)]
pub enum Distribution {
    Bernoulli(f64),
    Beta(f64, f64),
    /// One sample per line; every replication replays the same file.
    File(PathBuf),
}

impl Distribution {
    /// The true mean, when known.
    pub fn mean(&self) -> Option<f64> {
        match *self {
            Distribution::Bernoulli(p) => Some(p),
            Distribution::Beta(a, b) => Some(a / (a + b)),
            Distribution::File(_) => None,
        }
    }

    pub fn is_binary(&self) -> bool {
        matches!(self, Distribution::Bernoulli(_))
    }

    fn validate(&self) -> Result<()> {
        match *self {
            Distribution::Bernoulli(p) if !(0.0..=1.0).contains(&p) => Err(CsError::Config(
                format!("bernoulli parameter {p} not in [0, 1]"),
            )),
            Distribution::Beta(a, b) if !(a > 0.0 && b > 0.0 && a.is_finite() && b.is_finite()) => {
                Err(CsError::Config(format!(
                    "beta parameters {a}, {b} must be positive"
                )))
            }
            _ => Ok(()),
        }
    }
}

impl FromStr for Distribution {
    type Err = CsError;

    /// Parses `bernoulli:p`, `beta:a,b` or `file:path`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || CsError::Config(format!("cannot parse distribution '{s}'"));
        let (kind, args) = s.split_once(':').ok_or_else(bad)?;
        let num = |v: &str| v.trim().parse::<f64>().map_err(|_| bad());
        let d = match kind.trim().to_ascii_lowercase().as_str() {
            "bernoulli" => Distribution::Bernoulli(num(args)?),
            "beta" => {
                let (a, b) = args.split_once(',').ok_or_else(bad)?;
                Distribution::Beta(num(a)?, num(b)?)
            }
            "file" => Distribution::File(PathBuf::from(args)),
            _ => return Err(bad()),
        };
        d.validate()?;
        Ok(d)
    }
}

impl fmt::Display for Distribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distribution::Bernoulli(p) => write!(f, "bernoulli:{p}"),
            Distribution::Beta(a, b) => write!(f, "beta:{a},{b}"),
            Distribution::File(p) => write!(f, "file:{}", p.display()),
        }
    }
}

/// The confidence sequences the harness can run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Algorithm {
    Co96,
    ACo96,
    R70,
    Bernstein,
    Mix,
    ClopperPearson,
}

impl Algorithm {
    pub const ALL: [Algorithm; 6] = [
        Algorithm::Co96,
        Algorithm::ACo96,
        Algorithm::R70,
        Algorithm::Bernstein,
        Algorithm::Mix,
        Algorithm::ClopperPearson,
    ];

    /// The time-uniform sequences, excluding the pointwise baseline.
    pub const SEQUENTIAL: [Algorithm; 5] = [
        Algorithm::Co96,
        Algorithm::ACo96,
        Algorithm::R70,
        Algorithm::Bernstein,
        Algorithm::Mix,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Co96 => "co96",
            Algorithm::ACo96 => "a_co96",
            Algorithm::R70 => "r70",
            Algorithm::Bernstein => "bernstein",
            Algorithm::Mix => "mix",
            Algorithm::ClopperPearson => "clopper_pearson",
        }
    }

    /// Whether each step evaluates the wealth over all stored samples.
    pub fn scans_samples(self) -> bool {
        matches!(self, Algorithm::Co96 | Algorithm::R70 | Algorithm::Mix)
    }

    pub fn build(self, delta: f64, precision: f64) -> Result<Box<dyn ConfidenceSequence + Send>> {
        Ok(match self {
            Algorithm::Co96 => Box::new(Co96::new(delta)?.with_precision(precision)),
            Algorithm::ACo96 => Box::new(ACo96::new(delta)?.with_precision(precision)),
            Algorithm::R70 => Box::new(R70::new(delta)?.with_precision(precision)),
            Algorithm::Bernstein => Box::new(Bernstein::new(delta)?),
            Algorithm::Mix => Box::new(Mixture::new(delta)?.with_precision(precision)),
            Algorithm::ClopperPearson => Box::new(ClopperPearson::new(delta)?),
        })
    }

    /// Parses a comma-separated list such as `co96,r70`.
    pub fn parse_list(s: &str) -> Result<Vec<Algorithm>> {
        let algos = s
            .split(',')
            .map(str::trim)
            .filter(|a| !a.is_empty())
            .map(str::parse)
            .collect::<Result<Vec<_>>>()?;
        if algos.is_empty() {
            return Err(CsError::Config("no algorithms selected".into()));
        }
        Ok(algos)
    }
}

impl FromStr for Algorithm {
    type Err = CsError;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_lowercase().replace('-', "_");
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == key || (key == "cp" && *a == Algorithm::ClopperPearson))
            .ok_or_else(|| CsError::Config(format!("unknown algorithm '{s}'")))
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Everything needed to reproduce an experiment.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentSpec {
    pub distribution: Distribution,
    pub horizon: u64,
    pub replications: u64,
    pub delta: f64,
    pub algorithms: Vec<Algorithm>,
    pub seed: u64,
    pub precision: f64,
    /// Permit continuous sources beyond [`CONTINUOUS_HORIZON_LIMIT`] for the
    /// sequences whose steps cost O(t).
    pub allow_slow_continuous: bool,
    /// Summarize only the first `n` replications in which no sequence missed
    /// the mean or failed. `None` keeps every replication.
    pub filter_first: Option<usize>,
}

impl ExperimentSpec {
    /// One replication at `delta = 0.05` of every time-uniform sequence.
    pub fn new(distribution: Distribution, horizon: u64) -> Self {
        Self {
            distribution,
            horizon,
            replications: 1,
            delta: 0.05,
            algorithms: Algorithm::SEQUENTIAL.to_vec(),
            seed: 0,
            precision: DEFAULT_PRECISION,
            allow_slow_continuous: false,
            filter_first: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.distribution.validate()?;
        check_delta(self.delta)?;
        if self.horizon == 0 {
            return Err(CsError::Config("horizon must be at least 1".into()));
        }
        if self.replications == 0 {
            return Err(CsError::Config("replications must be at least 1".into()));
        }
        if self.algorithms.is_empty() {
            return Err(CsError::Config("no algorithms selected".into()));
        }
        if !(self.precision > 0.0 && self.precision < 1.0) {
            return Err(CsError::Config(format!(
                "precision {} not in (0, 1)",
                self.precision
            )));
        }
        let slow = self.algorithms.iter().any(|a| a.scans_samples());
        if slow
            && !self.distribution.is_binary()
            && self.horizon > CONTINUOUS_HORIZON_LIMIT
            && !self.allow_slow_continuous
        {
            return Err(CsError::Config(format!(
                "horizon {} with a continuous source costs O(t) per step; allow slow continuous runs to proceed",
                self.horizon
            )));
        }
        Ok(())
    }
}

fn read_samples(path: &PathBuf) -> Result<Vec<f64>> {
    let file = std::fs::File::open(path)?;
    parse_samples(BufReader::new(file))
}

/// Reads one sample per nonblank line, rejecting values outside `[0, 1]`.
pub fn parse_samples<R: BufRead>(reader: R) -> Result<Vec<f64>> {
    let mut xs = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let x: f64 = line
            .parse()
            .map_err(|_| CsError::Config(format!("line {}: cannot parse '{line}'", i + 1)))?;
        check_sample(x)?;
        xs.push(x);
    }
    Ok(xs)
}

/// The sample stream of one replication, truncated to the horizon.
pub fn generate(spec: &ExperimentSpec, replication: u64) -> Result<Vec<f64>> {
    let n = spec.horizon as usize;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    rng.set_stream(replication);
    match spec.distribution {
        Distribution::Bernoulli(p) => Ok((0..n)
            .map(|_| if rng.gen::<f64>() < p { 1.0 } else { 0.0 })
            .collect()),
        Distribution::Beta(a, b) => {
            let ga = Gamma::new(a, 1.0).map_err(|e| CsError::Config(e.to_string()))?;
            let gb = Gamma::new(b, 1.0).map_err(|e| CsError::Config(e.to_string()))?;
            Ok((0..n)
                .map(|_| {
                    let x: f64 = ga.sample(&mut rng);
                    let y: f64 = gb.sample(&mut rng);
                    (x / (x + y)).clamp(0.0, 1.0)
                })
                .collect())
        }
        Distribution::File(ref path) => {
            let mut xs = read_samples(path)?;
            xs.truncate(n);
            Ok(xs)
        }
    }
}

/// One emitted interval.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunRecord {
    pub run: u64,
    pub t: u64,
    pub x: f64,
    pub algo: Algorithm,
    pub lower: f64,
    pub upper: f64,
    /// `None` when the true mean is unknown.
    pub covered: Option<bool>,
}

/// Outcome of one sequence on one replication.
#[derive(Debug, Clone, PartialEq)]
pub struct AlgoRun {
    pub algo: Algorithm,
    /// Whether the mean left the interval at some step; `None` if unknown.
    pub miscovered: Option<bool>,
    /// Width at each of [`CHECKPOINTS`] reached by the horizon.
    pub widths: Vec<Option<f64>>,
    pub error: Option<CsError>,
    pub steps: u64,
}

/// All sequences on one replication.
#[derive(Debug, Clone, PartialEq)]
pub struct Replication {
    pub run: u64,
    pub runs: Vec<AlgoRun>,
}

impl Replication {
    /// No sequence failed numerically or missed the mean.
    pub fn is_clean(&self) -> bool {
        self.runs
            .iter()
            .all(|r| r.error.is_none() && r.miscovered != Some(true))
    }
}

/// Runs every selected sequence over replication `run`, passing each interval
/// to `sink` in `(algo, t)` order.
pub fn run_replication<F: FnMut(RunRecord)>(
    spec: &ExperimentSpec,
    run: u64,
    mut sink: F,
) -> Result<Replication> {
    let xs = generate(spec, run)?;
    let mu = spec.distribution.mean();
    let mut runs = Vec::with_capacity(spec.algorithms.len());
    for &algo in &spec.algorithms {
        let mut cs = algo.build(spec.delta, spec.precision)?;
        let mut out = AlgoRun {
            algo,
            miscovered: mu.map(|_| false),
            widths: vec![None; CHECKPOINTS.len()],
            error: None,
            steps: 0,
        };
        for (i, &x) in xs.iter().enumerate() {
            let t = i as u64 + 1;
            let ci = match cs.push(x) {
                Ok(ci) => ci,
                Err(e) => {
                    out.error = Some(e);
                    break;
                }
            };
            out.steps = t;
            let covered = mu.map(|m| ci.contains(m));
            if covered == Some(false) {
                out.miscovered = Some(true);
            }
            if let Some(k) = CHECKPOINTS.iter().position(|&c| c == t) {
                out.widths[k] = Some(ci.width());
            }
            sink(RunRecord {
                run,
                t,
                x,
                algo,
                lower: ci.lower,
                upper: ci.upper,
                covered,
            });
        }
        runs.push(out);
    }
    Ok(Replication { run, runs })
}

/// A sequence that stopped on a numerical error.
#[derive(Debug, Clone, PartialEq)]
pub struct RunFailure {
    pub run: u64,
    pub algo: Algorithm,
    pub message: String,
}

/// Per-sequence aggregate over replications.
#[derive(Debug, Clone, PartialEq)]
pub struct AlgoSummary {
    pub algo: Algorithm,
    /// Replications that ran to the horizon.
    pub completed: usize,
    /// Fraction of completed replications in which the mean ever left the
    /// interval; `None` if the mean is unknown.
    pub miscoverage: Option<f64>,
    /// Median width at each of [`CHECKPOINTS`].
    pub median_widths: Vec<Option<f64>>,
}

/// Result of [`run_experiment`].
#[derive(Debug, Clone, PartialEq)]
pub struct Summary {
    pub algos: Vec<AlgoSummary>,
    pub failures: Vec<RunFailure>,
    /// Replications the summary is computed from.
    pub replications_used: usize,
}

fn median(mut v: Vec<f64>) -> Option<f64> {
    if v.is_empty() {
        return None;
    }
    v.sort_by(f64::total_cmp);
    let n = v.len();
    Some(if n % 2 == 1 {
        v[n / 2]
    } else {
        0.5 * (v[n / 2 - 1] + v[n / 2])
    })
}

/// Aggregates replications, applying the spec's filter.
pub fn summarize(spec: &ExperimentSpec, reps: &[Replication]) -> Summary {
    let failures = reps
        .iter()
        .flat_map(|r| {
            r.runs.iter().filter_map(move |a| {
                a.error.as_ref().map(|e| RunFailure {
                    run: r.run,
                    algo: a.algo,
                    message: e.to_string(),
                })
            })
        })
        .collect();

    let used: Vec<&Replication> = match spec.filter_first {
        Some(n) => reps.iter().filter(|r| r.is_clean()).take(n).collect(),
        None => reps.iter().collect(),
    };

    let algos = spec
        .algorithms
        .iter()
        .enumerate()
        .map(|(i, &algo)| {
            let done: Vec<&AlgoRun> = used
                .iter()
                .map(|r| &r.runs[i])
                .filter(|a| a.error.is_none())
                .collect();
            let miscoverage = spec.distribution.mean().and_then(|_| {
                (!done.is_empty()).then(|| {
                    done.iter().filter(|a| a.miscovered == Some(true)).count() as f64
                        / done.len() as f64
                })
            });
            let median_widths = (0..CHECKPOINTS.len())
                .map(|k| median(done.iter().filter_map(|a| a.widths[k]).collect()))
                .collect();
            AlgoSummary {
                algo,
                completed: done.len(),
                miscoverage,
                median_widths,
            }
        })
        .collect();

    Summary {
        algos,
        failures,
        replications_used: used.len(),
    }
}

/// Runs all replications, in parallel batches, and summarizes them.
///
/// When `sink` is given it receives every record ordered by `(run, algo, t)`.
/// Numerical failures of single sequences are collected in the summary rather
/// than aborting the batch.
pub fn run_experiment(
    spec: &ExperimentSpec,
    mut sink: Option<&mut dyn FnMut(&RunRecord)>,
) -> Result<Summary> {
    spec.validate()?;
    let batch = (rayon::current_num_threads() * 4).max(1) as u64;
    let keep = sink.is_some();
    let mut reps = Vec::with_capacity(spec.replications as usize);
    let mut start = 0;
    while start < spec.replications {
        let end = (start + batch).min(spec.replications);
        let done: Vec<(Replication, Vec<RunRecord>)> = (start..end)
            .into_par_iter()
            .map(|run| {
                let mut records = Vec::new();
                let rep = run_replication(spec, run, |r| {
                    if keep {
                        records.push(r)
                    }
                })?;
                Ok((rep, records))
            })
            .collect::<Result<_>>()?;
        for (rep, records) in done {
            if let Some(f) = sink.as_mut() {
                records.iter().for_each(f);
            }
            reps.push(rep);
        }
        start = end;
    }
    Ok(summarize(spec, &reps))
}

/// Formats `x` with at most ten significant digits.
pub fn fmt_sig(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    let rounded: f64 = format!("{x:.9e}").parse().expect("formatted float parses");
    rounded.to_string()
}

pub const RECORD_HEADER: [&str; 7] = ["run", "t", "x", "algo", "lower", "upper", "covered"];

/// Writes [`RunRecord`]s as `run,t,x,algo,lower,upper,covered`.
pub struct RecordWriter<W: Write> {
    inner: csv::Writer<W>,
}

impl<W: Write> RecordWriter<W> {
    pub fn new(w: W) -> Result<Self> {
        let mut inner = csv::Writer::from_writer(w);
        inner.write_record(RECORD_HEADER)?;
        Ok(Self { inner })
    }

    pub fn write(&mut self, r: &RunRecord) -> Result<()> {
        let covered = match r.covered {
            Some(true) => "1",
            Some(false) => "0",
            None => "",
        };
        self.inner.write_record([
            r.run.to_string(),
            r.t.to_string(),
            fmt_sig(r.x),
            r.algo.name().to_string(),
            fmt_sig(r.lower),
            fmt_sig(r.upper),
            covered.to_string(),
        ])?;
        Ok(())
    }

    pub fn flush(&mut self) -> Result<()> {
        self.inner.flush()?;
        Ok(())
    }
}

/// Writes `algo,miscoverage,width_t1,...,width_t100000`; unknown cells are empty.
pub fn write_summary<W: Write>(w: W, summary: &Summary) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    let mut header = vec!["algo".to_string(), "miscoverage".to_string()];
    header.extend(CHECKPOINTS.iter().map(|c| format!("width_t{c}")));
    out.write_record(&header)?;
    let cell = |v: Option<f64>| v.map(fmt_sig).unwrap_or_default();
    for a in &summary.algos {
        let mut row = vec![a.algo.name().to_string(), cell(a.miscoverage)];
        row.extend(a.median_widths.iter().map(|&w| cell(w)));
        out.write_record(&row)?;
    }
    out.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_distributions() {
        assert_eq!(
            "bernoulli:0.1".parse::<Distribution>().unwrap(),
            Distribution::Bernoulli(0.1)
        );
        assert_eq!(
            "beta:10,30".parse::<Distribution>().unwrap(),
            Distribution::Beta(10.0, 30.0)
        );
        assert!("beta:0,1".parse::<Distribution>().is_err());
        assert!("bernoulli:2".parse::<Distribution>().is_err());
        assert!("poisson:1".parse::<Distribution>().is_err());
        assert_eq!(Distribution::Beta(10.0, 30.0).mean(), Some(0.25));
    }

    #[test]
    fn parses_algorithms() {
        let list = Algorithm::parse_list("co96, a_co96,r70,bernstein,mix,cp").unwrap();
        assert_eq!(list.len(), 6);
        assert_eq!(list[5], Algorithm::ClopperPearson);
        assert!(Algorithm::parse_list("").is_err());
        assert!(Algorithm::parse_list("nope").is_err());
    }

    #[test]
    fn generation_examples() {
        let mut spec = ExperimentSpec::new(Distribution::Bernoulli(0.0), 500);
        assert!(generate(&spec, 3).unwrap().iter().all(|&x| x == 0.0));

        spec.distribution = Distribution::Beta(1.0, 1.0);
        spec.horizon = 100_000;
        let xs = generate(&spec, 0).unwrap();
        let mean = xs.iter().sum::<f64>() / xs.len() as f64;
        assert!((mean - 0.5).abs() < 0.01);
        assert!(xs.iter().all(|x| (0.0..=1.0).contains(x)));
        assert_eq!(xs, generate(&spec, 0).unwrap());
        assert_ne!(xs, generate(&spec, 1).unwrap());
    }

    #[test]
    fn continuous_long_runs_need_opt_in() {
        let mut spec = ExperimentSpec::new(Distribution::Beta(1.0, 1.0), 100_000);
        assert!(spec.validate().is_err());
        spec.algorithms = vec![Algorithm::ACo96, Algorithm::Bernstein];
        assert!(spec.validate().is_ok());
        spec.algorithms = vec![Algorithm::Co96];
        spec.allow_slow_continuous = true;
        assert!(spec.validate().is_ok());
    }

    #[test]
    fn failures_are_collected() {
        let mut spec = ExperimentSpec::new(Distribution::Beta(2.0, 2.0), 20);
        spec.algorithms = vec![Algorithm::ClopperPearson, Algorithm::Bernstein];
        spec.replications = 3;
        let summary = run_experiment(&spec, None).unwrap();
        assert_eq!(summary.failures.len(), 3);
        assert_eq!(summary.algos[0].completed, 0);
        assert_eq!(summary.algos[1].completed, 3);
    }

    #[test]
    fn summary_is_deterministic_and_ordered() {
        let mut spec = ExperimentSpec::new(Distribution::Bernoulli(0.5), 100);
        spec.replications = 6;
        spec.seed = 11;
        let mut seen = Vec::new();
        let mut sink = |r: &RunRecord| seen.push((r.run, r.algo, r.t));
        let a = run_experiment(&spec, Some(&mut sink)).unwrap();
        let b = run_experiment(&spec, None).unwrap();
        assert_eq!(a, b);
        assert_eq!(seen.len(), 6 * 5 * 100);
        let mut sorted = seen.clone();
        sorted.sort_by_key(|&(run, algo, t)| {
            (run, spec.algorithms.iter().position(|&a| a == algo), t)
        });
        assert_eq!(seen, sorted);
        let co = &a.algos[0];
        assert!((co.median_widths[0].unwrap() - 0.975).abs() < 2e-4);
        assert!(co.median_widths[3].is_none());
    }

    #[test]
    fn csv_output() {
        let mut buf = Vec::new();
        {
            let mut w = RecordWriter::new(&mut buf).unwrap();
            w.write(&RunRecord {
                run: 0,
                t: 1,
                x: 0.3,
                algo: Algorithm::Co96,
                lower: 0.007_499_999_999_9,
                upper: 0.982_500_000_123_456,
                covered: Some(true),
            })
            .unwrap();
            w.flush().unwrap();
        }
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(
            text,
            "run,t,x,algo,lower,upper,covered\n0,1,0.3,co96,0.0075,0.9825000001,1\n"
        );
        assert_eq!(fmt_sig(1.0 / 3.0), "0.3333333333");
    }

    #[test]
    fn filtered_view_takes_clean_runs() {
        let mut spec = ExperimentSpec::new(Distribution::Bernoulli(0.5), 50);
        spec.algorithms = vec![Algorithm::ACo96];
        spec.replications = 40;
        spec.delta = 0.5;
        spec.filter_first = Some(5);
        let s = run_experiment(&spec, None).unwrap();
        assert_eq!(s.replications_used, 5);
        assert_eq!(s.algos[0].miscoverage, Some(0.0));
    }
}
