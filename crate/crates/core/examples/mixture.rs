//! Equal-weight mixture of the Dirichlet and Robbins strategies.
//!
//! ```text
//! cargo run --release --example mixture
//! ```

use betting_cs::harness::{generate, Distribution, ExperimentSpec};
use betting_cs::{Co96, ConfidenceSequence, Mixture, R70};

fn main() -> betting_cs::Result<()> {
    let mut spec = ExperimentSpec::new(Distribution::Bernoulli(0.3), 20_000);
    spec.seed = 8;
    let xs = generate(&spec, 0)?;

    let mut seqs: Vec<Box<dyn ConfidenceSequence>> = vec![
        Box::new(Co96::new(0.05)?),
        Box::new(R70::new(0.05)?),
        Box::new(Mixture::new(0.05)?),
        Box::new(Mixture::with_weight(0.05, 0.9)?),
    ];
    for (k, cs) in seqs.iter_mut().enumerate() {
        let ci = cs.extend(&xs)?;
        let label = if k == 3 { "mix (w = 0.9)" } else { cs.name() };
        println!(
            "{label:<14} [{:.5}, {:.5}] width {:.5}",
            ci.lower,
            ci.upper,
            ci.width()
        );
    }
    Ok(())
}
