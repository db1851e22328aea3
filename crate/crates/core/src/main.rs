use std::collections::BTreeMap;
use std::fs::File;
use std::io::{self, BufReader, BufWriter, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use betting_cs::harness::{
    fmt_sig, parse_samples, run_experiment, write_summary, Algorithm, Distribution, ExperimentSpec,
    RecordWriter,
};
use betting_cs::sequence::DEFAULT_PRECISION;
use betting_cs::CsError;

#[derive(Parser)]
#[command(
    version,
    about = "Anytime-valid confidence sequences for bounded means"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run seeded Monte-Carlo replications and write records.csv and summary.csv.
    Simulate {
        /// bernoulli:p, beta:a,b or file:path
        #[arg(long)]
        dist: Distribution,
        /// Horizon
        #[arg(long = "T", default_value_t = 1000)]
        horizon: u64,
        #[arg(long, default_value_t = 1)]
        reps: u64,
        #[arg(long, default_value_t = 0.05)]
        delta: f64,
        /// Comma-separated list, e.g. co96,a_co96,r70,bernstein,mix,cp
        #[arg(long, default_value = "co96,a_co96,r70,bernstein,mix")]
        algos: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_PRECISION)]
        precision: f64,
        #[arg(long, default_value = ".")]
        out: PathBuf,
        /// Permit continuous sources beyond 10^4 steps for the O(t) sequences
        #[arg(long)]
        allow_slow: bool,
        /// Summarize only the first N replications where every sequence covered
        #[arg(long, value_name = "N")]
        filtered: Option<usize>,
        /// Skip the per-step records file
        #[arg(long)]
        no_records: bool,
    },
    /// Read one sample per line and print t,lower,upper after each.
    Track {
        #[arg(long, default_value = "co96")]
        algo: Algorithm,
        #[arg(long, default_value_t = 0.05)]
        delta: f64,
        #[arg(long, default_value_t = DEFAULT_PRECISION)]
        precision: f64,
        /// Input file; standard input when absent
        #[arg(long = "in")]
        input: Option<PathBuf>,
    },
    /// Outer-join track outputs on t into one table.
    Compare {
        /// Track outputs as label=path, or path (labelled by file stem)
        #[arg(required = true)]
        inputs: Vec<String>,
        /// Output file; standard output when absent
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let result = match cli.command {
        Command::Simulate {
            dist,
            horizon,
            reps,
            delta,
            algos,
            seed,
            precision,
            out,
            allow_slow,
            filtered,
            no_records,
        } => Algorithm::parse_list(&algos).and_then(|algorithms| {
            let spec = ExperimentSpec {
                distribution: dist,
                horizon,
                replications: reps,
                delta,
                algorithms,
                seed,
                precision,
                allow_slow_continuous: allow_slow,
                filter_first: filtered,
            };
            simulate(&spec, &out, !no_records)
        }),
        Command::Track {
            algo,
            delta,
            precision,
            input,
        } => track(algo, delta, precision, input.as_deref()),
        Command::Compare { inputs, out } => compare(&inputs, out.as_deref()),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_numerical() { 2 } else { 1 })
        }
    }
}

fn simulate(spec: &ExperimentSpec, out: &Path, records: bool) -> Result<ExitCode, CsError> {
    spec.validate()?;
    std::fs::create_dir_all(out)?;
    let summary = if records {
        let mut writer = RecordWriter::new(BufWriter::new(File::create(out.join("records.csv"))?))?;
        let mut status = Ok(());
        let mut sink = |r: &_| {
            if status.is_ok() {
                status = writer.write(r);
            }
        };
        let summary = run_experiment(spec, Some(&mut sink))?;
        status?;
        writer.flush()?;
        summary
    } else {
        run_experiment(spec, None)?
    };
    write_summary(
        BufWriter::new(File::create(out.join("summary.csv"))?),
        &summary,
    )?;
    for f in &summary.failures {
        eprintln!("run {} {}: {}", f.run, f.algo, f.message);
    }
    Ok(if summary.failures.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(2)
    })
}

fn track(
    algo: Algorithm,
    delta: f64,
    precision: f64,
    input: Option<&Path>,
) -> Result<ExitCode, CsError> {
    let mut cs = algo.build(delta, precision)?;
    let reader: Box<dyn Read> = match input {
        Some(p) => Box::new(File::open(p)?),
        None => Box::new(io::stdin().lock()),
    };
    let xs = parse_samples(BufReader::new(reader))?;
    let mut out = csv::Writer::from_writer(BufWriter::new(io::stdout().lock()));
    out.write_record(["t", "lower", "upper"])?;
    for (i, &x) in xs.iter().enumerate() {
        let ci = cs.push(x)?;
        out.write_record([(i + 1).to_string(), fmt_sig(ci.lower), fmt_sig(ci.upper)])?;
    }
    out.flush()?;
    Ok(ExitCode::SUCCESS)
}

fn compare(inputs: &[String], out: Option<&Path>) -> Result<ExitCode, CsError> {
    let mut labels = Vec::with_capacity(inputs.len());
    let mut rows: BTreeMap<u64, Vec<(String, String)>> = BTreeMap::new();
    for (k, spec) in inputs.iter().enumerate() {
        let (label, path) = match spec.split_once('=') {
            Some((l, p)) => (l.to_string(), PathBuf::from(p)),
            None => {
                let p = PathBuf::from(spec);
                let stem = p.file_stem().map(|s| s.to_string_lossy().into_owned());
                (stem.unwrap_or_else(|| spec.clone()), p)
            }
        };
        let mut reader = csv::Reader::from_path(&path)?;
        let headers = reader.headers()?.clone();
        let col = |name: &str| {
            headers.iter().position(|h| h == name).ok_or_else(|| {
                CsError::Config(format!("{}: missing column '{name}'", path.display()))
            })
        };
        let (ct, cl, cu) = (col("t")?, col("lower")?, col("upper")?);
        for rec in reader.records() {
            let rec = rec?;
            let t: u64 = rec[ct].parse().map_err(|_| {
                CsError::Config(format!("{}: bad t '{}'", path.display(), &rec[ct]))
            })?;
            let row = rows
                .entry(t)
                .or_insert_with(|| vec![Default::default(); inputs.len()]);
            row[k] = (rec[cl].to_string(), rec[cu].to_string());
        }
        labels.push(label);
    }
    let sink: Box<dyn Write> = match out {
        Some(p) => Box::new(File::create(p)?),
        None => Box::new(io::stdout().lock()),
    };
    let mut w = csv::Writer::from_writer(BufWriter::new(sink));
    let mut header = vec!["t".to_string()];
    for l in &labels {
        header.push(format!("{l}_lower"));
        header.push(format!("{l}_upper"));
    }
    w.write_record(&header)?;
    for (t, row) in rows {
        let mut line = vec![t.to_string()];
        for (lo, hi) in row {
            line.push(lo);
            line.push(hi);
        }
        w.write_record(&line)?;
    }
    w.flush()?;
    Ok(ExitCode::SUCCESS)
}
