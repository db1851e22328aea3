//! Pointwise exact binomial intervals beside the time-uniform sequence.
//!
//! ```text
//! cargo run --release --example clopper_pearson
//! ```

use betting_cs::harness::{generate, Distribution, ExperimentSpec};
use betting_cs::{clopper_pearson, ClopperPearson, Co96, ConfidenceSequence};

fn main() -> betting_cs::Result<()> {
    for delta in [0.1, 0.05, 0.01] {
        let ci = clopper_pearson(3, 20, delta)?;
        println!(
            "3 of 20 at delta {delta}: [{:.4}, {:.4}]",
            ci.lower, ci.upper
        );
    }

    let mut spec = ExperimentSpec::new(Distribution::Bernoulli(0.1), 1000);
    spec.seed = 2;
    let mut cp = ClopperPearson::new(0.05)?;
    let mut co = Co96::new(0.05)?;
    println!("{:>5} {:>10} {:>10}", "t", "cp width", "co96 width");
    for (i, x) in generate(&spec, 0)?.into_iter().enumerate() {
        let (a, b) = (cp.push(x)?, co.push(x)?);
        if [1, 10, 100, 1000].contains(&(i + 1)) {
            println!("{:>5} {:>10.4} {:>10.4}", i + 1, a.width(), b.width());
        }
    }
    Ok(())
}
