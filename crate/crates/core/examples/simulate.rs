//! A small seeded Monte-Carlo run, summary printed as CSV.
//!
//! ```text
//! cargo run --release --example simulate
//! ```

use betting_cs::harness::{run_experiment, write_summary, Algorithm, Distribution, ExperimentSpec};

fn main() -> betting_cs::Result<()> {
    let mut spec = ExperimentSpec::new(Distribution::Beta(1.0, 1.0), 1000);
    spec.replications = 20;
    spec.seed = 42;
    spec.algorithms = vec![Algorithm::ACo96, Algorithm::Bernstein, Algorithm::Co96];

    let mut records = 0usize;
    let mut count = |_: &_| records += 1;
    let summary = run_experiment(&spec, Some(&mut count))?;
    println!(
        "{records} records over {} replications",
        summary.replications_used
    );
    write_summary(std::io::stdout().lock(), &summary)
}
