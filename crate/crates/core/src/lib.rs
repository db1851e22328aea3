//! Anytime-valid confidence sequences for the mean of `[0, 1]`-valued streams.
//!
//! Each sequence bets on the coin `x - m` for every candidate mean `m` and
//! excludes `m` once a proven lower bound on the bettor's wealth reaches
//! `1/delta`. By Ville's inequality the true mean is excluded at any time with
//! probability at most `delta`.
//!
//! | type | wealth bound | cost per step |
//! |------|--------------|---------------|
//! | [`Co96`] | exact maximal wealth minus data-dependent Dirichlet regret | O(t), O(1) on binary data |
//! | [`ACo96`] | closed-form lower bounds, worst-case regret | O(1) |
//! | [`R70`] | Robbins mixture, iterated-logarithm width | O(t), O(1) on binary data |
//! | [`Mixture`] | half of the wealth on each of the two above | O(t), O(1) on binary data |
//! | [`Bernstein`] | explicit empirical Bernstein radius | O(1) |
//!
//! ```
//! use betting_cs::{Co96, ConfidenceSequence};
//!
//! let mut cs = Co96::new(0.05)?;
//! let ci = cs.push(0.3)?;
//! assert!((ci.lower - 0.0075).abs() < 1e-4);
//! assert!((ci.upper - 0.9825).abs() < 1e-4);
//! # Ok::<(), betting_cs::CsError>(())
//! ```

pub mod a_co96;
pub mod baseline;
pub mod bernstein;
pub mod co96;
pub mod error;
pub mod harness;
pub mod mixture;
pub mod moments;
pub mod quadrature;
pub mod r70;
pub mod regret;
pub mod search;
pub mod sequence;
pub mod special;
pub mod wealth;

pub use a_co96::ACo96;
pub use baseline::{clopper_pearson, ClopperPearson};
pub use bernstein::Bernstein;
pub use co96::Co96;
pub use error::{CsError, Result};
pub use mixture::Mixture;
pub use moments::RunningMoments;
pub use r70::{RobbinsPrior, R70};
pub use sequence::{ConfidenceSequence, Interval};
pub use wealth::{MixturePrior, SampleStore, Samples, WealthMax};
