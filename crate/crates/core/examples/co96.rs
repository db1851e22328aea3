//! Exact wealth inversion on a short stream.
//!
//! ```text
//! cargo run --release --example co96
//! ```

use betting_cs::co96::co96_closed_form_t1;
use betting_cs::{Co96, ConfidenceSequence};

fn main() -> betting_cs::Result<()> {
    let delta = 0.05;
    let xs = [0.3, 0.7, 0.45, 0.6, 0.5, 0.55, 0.4, 0.65, 0.5, 0.35];

    println!(
        "closed form at t = 1: {:?}",
        co96_closed_form_t1(xs[0], delta)?
    );

    let mut cs = Co96::new(delta)?;
    println!("{:>3} {:>8} {:>8} {:>8}", "t", "lower", "upper", "width");
    for &x in &xs {
        let ci = cs.push(x)?;
        println!(
            "{:>3} {:>8.4} {:>8.4} {:>8.4}",
            cs.t(),
            ci.lower,
            ci.upper,
            ci.width()
        );
    }
    Ok(())
}
