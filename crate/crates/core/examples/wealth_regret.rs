//! The quantities the sequences are built from: maximal log wealth, its KL
//! lower bound, and the portfolio regret bounds.
//!
//! ```text
//! cargo run --release --example wealth_regret
//! ```

use betting_cs::regret::{side_regret, worst_case_regret, Side};
use betting_cs::special::{kl_bernoulli, ProbPair};
use betting_cs::wealth::{max_log_wealth, mixture_log_wealth};
use betting_cs::{MixturePrior, Samples};

fn main() -> betting_cs::Result<()> {
    let xs = [0.9, 0.2, 0.75, 1.0, 0.6, 0.85, 0.4, 0.95];
    let s = Samples::from_slice(&xs)?;
    let t = s.t() as f64;
    println!("mean {:.4}", s.mean());
    println!(
        "{:>5} {:>9} {:>9} {:>9} {:>9}",
        "m", "beta*", "H(m)", "t KL", "Dirichlet"
    );
    for m in [0.2, 0.4, 0.6, 0.8] {
        let w = max_log_wealth(&s, m);
        let kl = t * kl_bernoulli(ProbPair::new(s.mean(), m)?);
        let mix = mixture_log_wealth(&s, m, MixturePrior::Dirichlet)?;
        println!(
            "{m:>5} {:>9.4} {:>9.4} {kl:>9.4} {mix:>9.4}",
            w.beta_star, w.log_wealth
        );
    }

    for n in [1u64, 10, 100, 1000] {
        println!(
            "t = {n:>4}: worst-case regret {:.4}, lower-side regret at b = 0.2, mean 0.5: {:.4}",
            worst_case_regret(n).value,
            side_regret(Side::Lower, 0.2, 0.5, n).value
        );
    }
    Ok(())
}
