//! Closed-form empirical-Bernstein radius and its running intersection.
//!
//! ```text
//! cargo run --release --example bernstein
//! ```

use betting_cs::bernstein::epsilon_bernstein;
use betting_cs::harness::{generate, Distribution, ExperimentSpec};
use betting_cs::{Bernstein, ConfidenceSequence};

fn main() -> betting_cs::Result<()> {
    for i in [10u64, 100, 1000, 10_000] {
        let n = i as f64;
        println!(
            "i = {i:>5}: eps(v = 0) = {:.5}, eps(v = i/4) = {:.5}",
            epsilon_bernstein(i, 0.0, 0.05),
            epsilon_bernstein(i, n / 4.0, 0.05)
        );
    }

    let mut spec = ExperimentSpec::new(Distribution::Beta(10.0, 30.0), 5000);
    spec.seed = 5;
    let mut cs = Bernstein::new(0.05)?;
    let ci = cs.extend(&generate(&spec, 0)?)?;
    println!(
        "Beta(10, 30) after {} draws: [{:.4}, {:.4}]",
        cs.t(),
        ci.lower,
        ci.upper
    );
    Ok(())
}
