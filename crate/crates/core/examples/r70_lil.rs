//! Robbins-mixture sequence on a long binary stream, with its closed-form
//! iterated-logarithm bound.
//!
//! ```text
//! cargo run --release --example r70_lil
//! ```

use betting_cs::harness::{generate, Distribution, ExperimentSpec};
use betting_cs::r70::{lil_u, lil_width_bound};
use betting_cs::{Co96, ConfidenceSequence, RunningMoments, R70};

fn main() -> betting_cs::Result<()> {
    let delta = 0.05;
    let mut spec = ExperimentSpec::new(Distribution::Bernoulli(0.5), 100_000);
    spec.seed = 3;
    let xs = generate(&spec, 0)?;

    let mut r70 = R70::new(delta)?;
    let mut co96 = Co96::new(delta)?;
    let mut mo = RunningMoments::new();
    println!(
        "{:>7} {:>10} {:>10} {:>10} {:>8}",
        "t", "r70 width", "co96 width", "lil bound", "U_t"
    );
    for (i, &x) in xs.iter().enumerate() {
        mo.push(x)?;
        let (a, b) = (r70.push(x)?, co96.push(x)?);
        let t = i + 1;
        if [10, 100, 1_000, 10_000, 100_000].contains(&t) {
            println!(
                "{t:>7} {:>10.5} {:>10.5} {:>10.5} {:>8.3}",
                a.width(),
                b.width(),
                lil_width_bound(&mo, delta)?,
                lil_u(&mo, delta)?
            );
        }
    }
    Ok(())
}
