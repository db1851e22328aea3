//! The constant-time-per-step variant against the exact one on Beta(2, 5) draws.
//!
//! ```text
//! cargo run --release --example a_co96
//! ```

use betting_cs::harness::{generate, Distribution, ExperimentSpec};
use betting_cs::{ACo96, Co96, ConfidenceSequence};

fn main() -> betting_cs::Result<()> {
    let mut spec = ExperimentSpec::new(Distribution::Beta(2.0, 5.0), 2000);
    spec.seed = 11;
    let xs = generate(&spec, 0)?;

    let mut exact = Co96::new(0.05)?;
    let mut fast = ACo96::new(0.05)?;
    let mut ranged = ACo96::new(0.05)?.with_range_refinement(true);
    println!(
        "{:>5} {:>18} {:>18} {:>18}",
        "t", "co96", "a_co96", "a_co96 + range"
    );
    for (i, &x) in xs.iter().enumerate() {
        let (a, b, c) = (exact.push(x)?, fast.push(x)?, ranged.push(x)?);
        let t = i + 1;
        if t.is_power_of_two() || t == xs.len() {
            println!(
                "{t:>5} [{:.4}, {:.4}] [{:.4}, {:.4}] [{:.4}, {:.4}]",
                a.lower, a.upper, b.lower, b.upper, c.lower, c.upper
            );
        }
    }
    Ok(())
}
